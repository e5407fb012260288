use proptest::prelude::*;
use qform::oracle::{bf_count_affine, bf_witt_index, bf_witt_index_gram, SearchBudget, SmallField};
use qform::{
    diagonalize, direct_sum, hilbert_symbol, invariants, is_isotropic, isometric, scale, witt_decompose,
    FieldDesc, Place, QuadraticForm, Scalar,
};

fn nonzero(bound: i64) -> impl Strategy<Value = i64> {
    (1..=bound, any::<bool>()).prop_map(|(a, neg)| if neg { -a } else { a })
}

fn rational_form(max_dim: usize) -> impl Strategy<Value = QuadraticForm> {
    prop::collection::vec(nonzero(40), 0..=max_dim)
        .prop_map(|d| QuadraticForm::from_ints(FieldDesc::Rationals, &d).unwrap())
}

fn field_strategy() -> impl Strategy<Value = FieldDesc> {
    prop::sample::select(vec![
        FieldDesc::Rationals,
        FieldDesc::Reals,
        FieldDesc::Padic(2),
        FieldDesc::Padic(3),
        FieldDesc::Padic(5),
        FieldDesc::Finite { p: 5, degree: 1 },
        FieldDesc::Finite { p: 7, degree: 1 },
    ])
}

fn any_form(max_dim: usize) -> impl Strategy<Value = QuadraticForm> {
    (field_strategy(), prop::collection::vec(nonzero(40), 0..=max_dim)).prop_filter_map(
        "entries vanish in the field",
        |(f, d)| QuadraticForm::from_ints(f, &d).ok(),
    )
}

fn finite_form(p: i64, max_dim: usize) -> impl Strategy<Value = QuadraticForm> {
    prop::collection::vec(1..p, 0..=max_dim)
        .prop_map(move |d| QuadraticForm::from_ints(FieldDesc::finite(p as u64).unwrap(), &d).unwrap())
}

fn place_strategy() -> impl Strategy<Value = Place> {
    prop::sample::select(vec![
        Place::Real,
        Place::Prime(2),
        Place::Prime(3),
        Place::Prime(5),
        Place::Prime(7),
        Place::Prime(13),
    ])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn hilbert_symbol_laws(a in nonzero(500), b in nonzero(500), c in nonzero(500), v in place_strategy()) {
        let (a, b, c) = (Scalar::from(a), Scalar::from(b), Scalar::from(c));
        let h = |x: &Scalar, y: &Scalar| hilbert_symbol(x, y, v).unwrap();
        prop_assert_eq!(h(&a, &b), h(&b, &a));
        prop_assert_eq!(h(&a, &(&b * &c)), h(&a, &b) * h(&a, &c));
        prop_assert_eq!(h(&a, &-&a), 1);
        prop_assert_eq!(h(&(&a * &a), &b), 1);
    }

    #[test]
    fn isometry_is_an_equivalence(q in any_form(4), perm_seed in any::<u64>()) {
        prop_assert!(isometric(&q, &q).unwrap());
        let mut d = q.diag().to_vec();
        let n = d.len();
        if n > 1 {
            d.rotate_left((perm_seed as usize) % n);
        }
        let shuffled = QuadraticForm::new(q.field(), d).unwrap();
        prop_assert!(isometric(&q, &shuffled).unwrap());
        prop_assert!(isometric(&shuffled, &q).unwrap());
    }

    #[test]
    fn isometry_is_transitive(a in finite_form(5, 3), b in finite_form(5, 3), c in finite_form(5, 3)) {
        let ab = isometric(&a, &b).unwrap();
        let bc = isometric(&b, &c).unwrap();
        if ab && bc {
            prop_assert!(isometric(&a, &c).unwrap());
        }
    }

    #[test]
    fn signed_determinant_is_a_witt_class_invariant(q in any_form(5)) {
        let with_h = direct_sum(&q, &QuadraticForm::hyperbolic(q.field())).unwrap();
        prop_assert_eq!(invariants(&with_h).det_pm, invariants(&q).det_pm);
        let w = witt_decompose(&q);
        prop_assert_eq!(invariants(&w.kernel).det_pm, invariants(&q).det_pm);
    }

    #[test]
    fn witt_decomposition_ignores_order_and_squares(
        q in any_form(5),
        rotate in 0usize..6,
        scales in prop::collection::vec(1i64..6, 6),
    ) {
        let n = q.dim();
        let mut d: Vec<Scalar> = q.diag().to_vec();
        if n > 0 {
            d.rotate_left(rotate % n);
        }
        let d: Vec<Scalar> = d.iter().zip(&scales).map(|(a, &s)| a * &Scalar::from(s * s)).collect();
        let Ok(other) = QuadraticForm::new(q.field(), d) else { return Ok(()) };
        let (w1, w2) = (witt_decompose(&q), witt_decompose(&other));
        prop_assert_eq!(w1.witt_index, w2.witt_index);
        prop_assert!(isometric(&w1.kernel, &w2.kernel).unwrap());
        prop_assert!(!is_isotropic(&w1.kernel));
    }

    #[test]
    fn rational_kernel_rebuilds_the_form(q in rational_form(6)) {
        let w = witt_decompose(&q);
        let mut rebuilt = w.kernel.clone();
        for _ in 0..w.witt_index {
            rebuilt = direct_sum(&rebuilt, &QuadraticForm::hyperbolic(FieldDesc::Rationals)).unwrap();
        }
        prop_assert!(isometric(&rebuilt, &q).unwrap());
    }

    #[test]
    fn scaling_by_a_square_is_an_isometry(q in any_form(4), s in 1i64..9) {
        let Ok(scaled) = scale(&q, &Scalar::from(s * s)) else { return Ok(()) };
        prop_assert!(isometric(&scaled, &q).unwrap());
    }

    #[test]
    fn diagonalize_recovers_congruent_forms(
        d in prop::collection::vec(nonzero(9), 1..=4),
        entries in prop::collection::vec(-3i64..=3, 16),
    ) {
        let n = d.len();
        let mut p: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| entries[i * 4 + j]).collect()).collect();
        // Unit upper-triangular, hence invertible.
        for i in 0..n {
            for j in 0..n {
                if j < i { p[i][j] = 0; }
                if j == i { p[i][j] = 1; }
            }
        }
        let gram: Vec<Vec<Scalar>> = (0..n)
            .map(|i| (0..n).map(|j| Scalar::from((0..n).map(|k| p[k][i] * d[k] * p[k][j]).sum::<i64>())).collect())
            .collect();
        let diag = diagonalize(&gram, FieldDesc::Rationals).unwrap();
        let original = QuadraticForm::from_ints(FieldDesc::Rationals, &d).unwrap();
        prop_assert!(isometric(&diag, &original).unwrap());
    }

    #[test]
    fn brute_force_witt_index_is_basis_invariant(
        q in finite_form(5, 3),
        entries in prop::collection::vec(0u32..5, 9),
    ) {
        let n = q.dim();
        let f = SmallField::new(5, 1, 2401).unwrap();
        let mut p: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| entries[i * 3 + j]).collect()).collect();
        for (i, row) in p.iter_mut().enumerate() {
            row[i] = 1;
            for x in row.iter_mut().take(i) {
                *x = 0;
            }
        }
        let d: Vec<u32> = q.diag().iter().map(|a| f.embed(a).unwrap()).collect();
        let gram: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(0, |acc, k| f.add(acc, f.mul(f.mul(p[k][i], d[k]), p[k][j]))))
                    .collect()
            })
            .collect();
        prop_assert_eq!(bf_witt_index_gram(&f, &gram), bf_witt_index(&q, &SearchBudget::default()).unwrap());
    }

    #[test]
    fn zero_count_detects_anisotropy(q in finite_form(7, 3)) {
        let zeros = bf_count_affine(&q, &Scalar::from(0), &SearchBudget::default()).unwrap();
        prop_assert!(zeros >= 1);
        prop_assert_eq!(zeros == 1, witt_decompose(&q).witt_index == 0);
    }
}
