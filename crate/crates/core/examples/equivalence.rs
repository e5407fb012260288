//! Projective motivic equivalence versus isometry from affine quadrics.
//!
//! cargo run --example equivalence

use qform::{affine_motive_equiv, motivic_equiv_projective, ExtensionFamily, FieldDesc, QuadraticForm, Verdict};

fn show(v: &Verdict) -> String {
    serde_json::to_string(v).unwrap()
}

fn main() -> qform::Result<()> {
    let f3 = FieldDesc::finite(3)?;
    let fam = ExtensionFamily::finite_degrees(3, 2)?;
    let q = QuadraticForm::from_ints(f3, &[1, 1, 1])?;
    let p = QuadraticForm::from_ints(f3, &[2, 2, 2])?;
    // p = 2·q is similar to q: the projective quadrics agree, the affine ones do not.
    println!("projective: {}", show(&motivic_equiv_projective(&q, &p, &fam)?));
    println!("affine:     {}", show(&affine_motive_equiv(&q, &p, &fam)?));

    let a = QuadraticForm::from_ints(FieldDesc::Rationals, &[1, 2, -5])?;
    let b = QuadraticForm::from_ints(FieldDesc::Rationals, &[2, 1, -5])?;
    let c = QuadraticForm::from_ints(FieldDesc::Rationals, &[1, 1, 1])?;
    let fam = ExtensionFamily::default_for(&[&a, &b, &c])?;
    println!("{a} vs {b}: {}", show(&affine_motive_equiv(&a, &b, &fam)?));
    println!("{a} vs {c}: {}", show(&affine_motive_equiv(&a, &c, &fam)?));
    Ok(())
}
