//! Brute-force answers next to the engine's.
//!
//! cargo run --example oracles

use qform::oracle::{bf_count_affine, bf_isotropic_vector, bf_local_solvable, bf_rational_search, bf_witt_index, SearchBudget};
use qform::{is_isotropic, witt_decompose, FieldDesc, QuadraticForm, Scalar};

fn main() -> qform::Result<()> {
    let budget = SearchBudget::default();
    let q = QuadraticForm::from_ints(FieldDesc::finite(7)?, &[1, 3, 5, 6])?;
    println!("{q}");
    println!("  isotropic vector {:?}", bf_isotropic_vector(&q, &budget)?);
    println!("  Witt index: brute force {}, engine {}", bf_witt_index(&q, &budget)?, witt_decompose(&q).witt_index);
    println!("  #{{q = 0}} = {}, #{{q = 1}} = {}", bf_count_affine(&q, &Scalar::from(0), &budget)?, bf_count_affine(&q, &Scalar::from(1), &budget)?);

    let r = QuadraticForm::from_ints(FieldDesc::Rationals, &[1, 1, -3])?;
    for p in [2, 3, 5] {
        let engine = is_isotropic(&r.base_change(&FieldDesc::Padic(p))?);
        println!("{r} over Q_{p}: brute force {}, engine {engine}", bf_local_solvable(&r, p, None)?);
    }
    for diag in [[3, 5, -7], [3, 5, -17]] {
        let s = QuadraticForm::from_ints(FieldDesc::Rationals, &diag)?;
        println!("{s}: engine isotropic {}, rational zero {:?}", is_isotropic(&s), bf_rational_search(&s, 100)?);
    }
    Ok(())
}
