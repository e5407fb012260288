//! Witt indices of q and q' = q ⊥ ⟨−1⟩ across an extension family.
//!
//! cargo run --example splitting_profile

use qform::{profile, ExtensionFamily, FieldDesc, QuadraticForm};

fn main() -> qform::Result<()> {
    let q = QuadraticForm::from_ints(FieldDesc::Rationals, &[1, 1, 1, -3, 5])?;
    let fam = ExtensionFamily::default_for(&[&q])?;
    let p = profile(&q, &fam)?;
    println!("{q}");
    println!("{:<6} {:>5} {:>6}", "member", "i_W", "i_W'");
    for e in &p.entries {
        println!("{:<6} {:>5} {:>6}", e.member.to_string(), e.witt_index, e.witt_index_prime);
    }
    println!("splitting pattern over the family: {:?}", p.splitting_pattern());

    let f = ExtensionFamily::finite_degrees(5, 4)?;
    let r = QuadraticForm::from_ints(FieldDesc::finite(5)?, &[1, 2])?;
    let p = profile(&r, &f)?;
    let pattern: Vec<String> = p.entries.iter().map(|e| format!("{}:{}", e.member, e.witt_index)).collect();
    println!("{r}: {}", pattern.join(" "));
    Ok(())
}
