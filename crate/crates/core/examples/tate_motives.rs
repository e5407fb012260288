//! Φ of projective quadric motives and the split quadric motive.
//!
//! cargo run --example tate_motives

use qform::{phi_projective, split_quadric_motive, FieldDesc, QuadraticForm};

fn main() -> qform::Result<()> {
    for m in 0..4 {
        println!("split quadric of dim {m}: {}", split_quadric_motive(m)?);
    }
    let q = QuadraticForm::from_ints(FieldDesc::Rationals, &[1, 1, 1, -1, -7])?;
    for member in [FieldDesc::Rationals, FieldDesc::Reals, FieldDesc::Padic(7), FieldDesc::AlgebraicClosure] {
        let phi = phi_projective(&q, &member)?;
        println!("Φ at {member:<4} of M({q}): rank {}  {phi}", phi.rank());
    }
    Ok(())
}
