//! Classification data of a rational form and a few isometry checks.
//!
//! cargo run --example invariants

use qform::{invariants, isometric, represents, FieldDesc, QuadraticForm, Scalar};

fn main() -> qform::Result<()> {
    let q = QuadraticForm::new(
        FieldDesc::Rationals,
        vec![Scalar::from(1), Scalar::new(3, 4)?, Scalar::from(-7)],
    )?;
    let inv = invariants(&q);
    println!("{q}");
    println!("  det   {}", inv.det);
    println!("  det±  {}", inv.det_pm);
    println!("  sign  {:?}", inv.signature.unwrap());
    for (place, h) in &inv.hasse {
        println!("  hasse at {place}: {h:+}");
    }

    let a = QuadraticForm::from_ints(FieldDesc::Rationals, &[1, 1])?;
    let b = QuadraticForm::from_ints(FieldDesc::Rationals, &[2, 2])?;
    let c = QuadraticForm::from_ints(FieldDesc::Rationals, &[3, 3])?;
    println!("{a} ≅ {b}: {}", isometric(&a, &b)?);
    println!("{a} ≅ {c}: {}", isometric(&a, &c)?);
    println!("{a} represents 5: {}", represents(&a, &Scalar::from(5))?);
    println!("{a} represents 3: {}", represents(&a, &Scalar::from(3))?);
    Ok(())
}
