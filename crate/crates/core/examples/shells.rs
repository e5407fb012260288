//! Shells of the projective quadric and of the interleaved affine chain.
//!
//! cargo run --example shells

use qform::{affine_shells, shells, ExtensionFamily, FieldDesc, QuadraticForm};

fn main() -> qform::Result<()> {
    for diag in [vec![1, 1, 1, 1, -3], vec![1, 1, 1, 1, 1, 1], vec![1, -1, 1, -1, 1]] {
        let q = QuadraticForm::from_ints(FieldDesc::Rationals, &diag)?;
        let fam = ExtensionFamily::default_for(&[&q])?;
        println!("{q}");
        println!("  projective shells {:?}", shells(&q, &fam)?.shells);
        let a = affine_shells(&q, &fam)?;
        let rendered: Vec<String> = a
            .shells
            .iter()
            .map(|s| s.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        println!("  affine shells     [{}]", rendered.join(" | "));
        println!("  boundaries        {:?}", a.boundaries);
    }
    Ok(())
}
