//! The single Φ-line of a reduced affine quadric motive, and reading the
//! Witt indices back from it.
//!
//! cargo run --example affine_phi

use qform::{
    euler_triangle_check, phi_affine_reduced, recover_invariants, ExtensionFamily, FieldDesc, QuadraticForm,
};

fn main() -> qform::Result<()> {
    let q = QuadraticForm::from_ints(FieldDesc::Rationals, &[1, 1, -3, 7])?;
    let fam = ExtensionFamily::default_for(&[&q])?;
    let split = phi_affine_reduced(&q, &fam.split_member().unwrap())?;
    println!("A_q for q = {q}");
    for m in fam.members() {
        let line = phi_affine_reduced(&q, m)?;
        let r = recover_invariants(split, line)?;
        println!(
            "  {m:<4} {line:<12} dim Q = {}, i_W = {}, i_W' = {}, triangle ok: {}",
            r.quadric_dim,
            r.witt_index,
            r.witt_index_prime,
            euler_triangle_check(&q, m)?
        );
    }
    Ok(())
}
