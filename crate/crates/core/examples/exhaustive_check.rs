//! Over F_p, motivic data of affine quadrics separates forms exactly up to isometry.
//!
//! cargo run --release --example exhaustive_check -- 5 4

use qform::oracle::exhaustive_theorem_check;

fn main() -> qform::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let p = args.first().copied().unwrap_or(3);
    let max_dim = args.get(1).copied().unwrap_or(4) as usize;
    let report = exhaustive_theorem_check(p, max_dim)?;
    println!("F_{p}, dim <= {max_dim}: {} forms, {} pairs, {} violations", report.forms, report.pairs, report.violations.len());
    for v in &report.violations {
        println!("  {v}");
    }
    Ok(())
}
