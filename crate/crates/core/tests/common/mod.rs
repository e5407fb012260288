#![allow(dead_code)]

use qform::{direct_sum, FieldDesc, QuadraticForm, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const GRID_FIELDS: [FieldDesc; 10] = [
    FieldDesc::Rationals,
    FieldDesc::Reals,
    FieldDesc::Padic(2),
    FieldDesc::Padic(3),
    FieldDesc::Padic(5),
    FieldDesc::Padic(7),
    FieldDesc::Finite { p: 3, degree: 1 },
    FieldDesc::Finite { p: 5, degree: 1 },
    FieldDesc::Finite { p: 7, degree: 1 },
    FieldDesc::Finite { p: 3, degree: 2 },
];

pub fn random_scalar(rng: &mut ChaCha8Rng, bound: i64) -> Scalar {
    loop {
        let n = rng.gen_range(-bound..=bound);
        if n == 0 {
            continue;
        }
        let d = if rng.gen_bool(0.2) { rng.gen_range(2..=6) } else { 1 };
        return Scalar::new(n, d).unwrap();
    }
}

/// A random nondegenerate diagonal form over `field`; finite-field entries are
/// redrawn until they are units.
pub fn random_form(rng: &mut ChaCha8Rng, field: FieldDesc, dim: usize, bound: i64) -> QuadraticForm {
    loop {
        let diag: Vec<Scalar> = (0..dim).map(|_| random_scalar(rng, bound)).collect();
        if let Ok(q) = QuadraticForm::new(field, diag) {
            return q;
        }
    }
}

/// Random forms over every grid field, dims 0..=7, some with hyperbolic planes added.
pub fn grid(seed: u64, count: usize) -> Vec<QuadraticForm> {
    let mut r = rng(seed);
    (0..count)
        .map(|i| {
            let field = GRID_FIELDS[i % GRID_FIELDS.len()];
            let dim = r.gen_range(0..=6);
            let mut q = random_form(&mut r, field, dim, 30);
            if dim < 6 && r.gen_bool(0.25) {
                q = direct_sum(&q, &QuadraticForm::hyperbolic(field)).unwrap();
            }
            q
        })
        .collect()
}

pub fn small_primes_dividing(n: &num_bigint::BigInt) -> Vec<u64> {
    use num_traits::{Signed, ToPrimitive, Zero};
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = 2u64;
    while n > num_bigint::BigInt::from(1) {
        let bp = num_bigint::BigInt::from(p);
        if (&n % &bp).is_zero() {
            out.push(p);
            while (&n % &bp).is_zero() {
                n /= &bp;
            }
        }
        p += 1;
        if bp.clone() * &bp > n && n > num_bigint::BigInt::from(1) {
            out.push(n.to_u64().unwrap());
            break;
        }
    }
    out
}
