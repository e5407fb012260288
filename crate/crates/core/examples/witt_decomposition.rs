//! q ≅ n·H ⊥ q_an over several fields.
//!
//! cargo run --example witt_decomposition

use qform::{witt_decompose, FieldDesc, QuadraticForm};

fn main() -> qform::Result<()> {
    let cases = [
        (FieldDesc::Rationals, vec![1, 1, -2]),
        (FieldDesc::Rationals, vec![1, 1, -3]),
        (FieldDesc::Rationals, vec![1, 1, 1, 1, -7]),
        (FieldDesc::Rationals, vec![1, 1, 1, 1, 1, 1]),
        (FieldDesc::Reals, vec![1, 1, -1, -1, -1]),
        (FieldDesc::Padic(2), vec![1, 1, 1]),
        (FieldDesc::finite(3)?, vec![1, 1, 1]),
    ];
    for (field, diag) in cases {
        let q = QuadraticForm::from_ints(field, &diag)?;
        let w = witt_decompose(&q);
        println!("{q}: i_W = {}, kernel {}", w.witt_index, w.kernel);
    }
    Ok(())
}
