//! Isotropy, Witt decomposition, Witt-index profiles over extension families,
//! and the shells of a quadric and of the pair (Q′, Q).
//!
//! Nothing here produces isotropic vectors. Isotropy is decided on the
//! classification invariants, and a hyperbolic plane is split off by
//! updating those invariants. Over ℚ and ℚ_p the anisotropic kernel is then
//! realized by the first diagonal form, in a fixed enumeration order, whose
//! invariants match.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{
    factorize, least_nonresidue, square_class, FieldDesc, Place, Scalar,
};
use crate::form::{invariants, prime_form, relevant_places, InvariantTuple, QuadraticForm};

/// Whether the form has a nontrivial zero. The empty form and ⟨a⟩ are anisotropic.
pub fn is_isotropic(q: &QuadraticForm) -> bool {
    isotropic_from_invariants(&invariants(q))
}

fn minus_det_is_square(inv: &InvariantTuple) -> bool {
    let minus_one = square_class(&Scalar::from(-1), &inv.field).expect("-1 is a unit");
    inv.det.mul(&minus_one).is_square()
}

pub(crate) fn isotropic_from_invariants(inv: &InvariantTuple) -> bool {
    if inv.dim < 2 {
        return false;
    }
    match inv.field {
        FieldDesc::AlgebraicClosure => true,
        FieldDesc::Finite { .. } => inv.dim >= 3 || minus_det_is_square(inv),
        FieldDesc::Reals => {
            let (pos, neg) = inv.signature.expect("real forms carry a signature");
            pos > 0 && neg > 0
        }
        FieldDesc::Padic(p) => padic_isotropic(
            inv.dim,
            &inv.det.representative(),
            inv.hasse_at(Place::Prime(p)),
            p,
        ),
        FieldDesc::Rationals => {
            if inv.dim == 2 {
                return minus_det_is_square(inv);
            }
            let (pos, neg) = inv.signature.expect("rational forms carry a signature");
            if pos == 0 || neg == 0 {
                return false;
            }
            if inv.dim >= 5 {
                return true;
            }
            // Hasse–Minkowski: local isotropy at every place where the
            // invariants are not those of a unimodular form.
            let det = inv.det.representative();
            inv.hasse.keys().all(|place| match *place {
                Place::Real => true,
                Place::Prime(p) => padic_isotropic(inv.dim, &det, inv.hasse_at(*place), p),
            })
        }
    }
}

// Local isotropy from (dim, det, Hasse) with c = ∏_{i<j}(aᵢ,aⱼ):
// dim 2: −d is a square; dim 3: c = (−1,−d); dim 4: d is not a square or
// c = (−1,−1); dim ≥ 5: always.
fn padic_isotropic(dim: usize, det: &Scalar, hasse: i8, p: u64) -> bool {
    use crate::field::hilbert_symbol;
    let field = FieldDesc::Padic(p);
    let place = Place::Prime(p);
    let minus_one = Scalar::from(-1);
    let minus_det = -det;
    match dim {
        0 | 1 => false,
        2 => square_class(&minus_det, &field).expect("nonzero").is_square(),
        3 => hasse == hilbert_symbol(&minus_one, &minus_det, place).expect("nonzero"),
        4 => {
            !square_class(det, &field).expect("nonzero").is_square()
                || hasse == hilbert_symbol(&minus_one, &minus_one, place).expect("nonzero")
        }
        _ => true,
    }
}

/// q ≅ n·H ⊥ kernel with kernel anisotropic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WittDecomposition {
    pub witt_index: usize,
    pub kernel: QuadraticForm,
    pub kernel_invariants: InvariantTuple,
}

pub fn witt_decompose(q: &QuadraticForm) -> WittDecomposition {
    let mut inv = invariants(q);
    let mut witt_index = 0;
    while isotropic_from_invariants(&inv) {
        inv = inv.strip_hyperbolic();
        witt_index += 1;
    }
    let kernel = if witt_index == 0 && q.field() == FieldDesc::Rationals {
        canonical_copy(q)
    } else {
        realize_kernel(&inv)
    };
    WittDecomposition { witt_index, kernel_invariants: invariants(&kernel), kernel }
}

/// Same form with entries replaced by square-class representatives, sorted.
fn canonical_copy(q: &QuadraticForm) -> QuadraticForm {
    let mut diag: Vec<BigInt> = q
        .diag()
        .iter()
        .map(|a| square_class(a, &q.field()).expect("nonzero").representative().numer().clone())
        .collect();
    diag.sort_by_key(|b| (b.abs(), b.is_negative()));
    QuadraticForm::new(q.field(), diag.into_iter().map(Scalar::integer).collect())
        .expect("representatives are nonzero")
}

fn realize_kernel(target: &InvariantTuple) -> QuadraticForm {
    let field = target.field;
    let ints = |v: &[i64]| QuadraticForm::from_ints(field, v).expect("units");
    if target.dim == 0 {
        return QuadraticForm::empty(field);
    }
    match field {
        FieldDesc::AlgebraicClosure => ints(&[1]),
        FieldDesc::Reals => {
            let (pos, neg) = target.signature.expect("signature");
            let mut d = vec![1; pos];
            d.extend(std::iter::repeat(-1).take(neg));
            ints(&d)
        }
        FieldDesc::Finite { .. } => {
            let det = target.det.representative();
            let mut d = vec![Scalar::one(); target.dim - 1];
            d.push(det);
            QuadraticForm::new(field, d).expect("units")
        }
        FieldDesc::Padic(p) => {
            let reps = padic_class_reps(p);
            search_realization(target, &[], &reps).expect("anisotropic local kernels have dim ≤ 4")
        }
        FieldDesc::Rationals => realize_rational(target),
    }
}

fn padic_class_reps(p: u64) -> Vec<Scalar> {
    let units: Vec<i64> = if p == 2 { vec![1, -1, 3, -3] } else { vec![1, least_nonresidue(p) as i64] };
    units
        .iter()
        .flat_map(|&u| [u, u * p as i64])
        .map(Scalar::from)
        .collect()
}

fn realize_rational(target: &InvariantTuple) -> QuadraticForm {
    let (pos, neg) = target.signature.expect("signature");
    // Anisotropic rational forms of dim ≥ 5 are definite; peel off ⟨±1⟩'s
    // (a definite form of dim ≥ 5 represents its sign) down to dim 4.
    let prefix: Vec<Scalar> = if target.dim > 4 {
        assert!(pos == 0 || neg == 0, "anisotropic kernel of dim > 4 must be definite");
        let s = if neg == 0 { 1 } else { -1 };
        vec![Scalar::from(s); target.dim - 4]
    } else {
        Vec::new()
    };
    let mut bound = 16;
    loop {
        let candidates = squarefree_candidates(bound);
        if let Some(q) = search_realization(target, &prefix, &candidates) {
            return q;
        }
        bound *= 2;
        assert!(bound < 1 << 16, "no kernel realization found for {target:?}");
    }
}

/// Squarefree integers by increasing absolute value, positive first.
fn squarefree_candidates(bound: i64) -> Vec<Scalar> {
    let mut out = Vec::new();
    for n in 1..=bound {
        let big = BigInt::from(n);
        if factorize(&big).iter().all(|(_, e)| *e == 1) {
            out.push(Scalar::from(n));
            out.push(Scalar::from(-n));
        }
    }
    out
}

/// First form `prefix ⊥ ⟨b₁,…,b_{m−1}, b_m⟩` (bᵢ drawn in non-decreasing index
/// order from `candidates`, b_m fixed by the determinant) whose invariants are `target`.
fn search_realization(
    target: &InvariantTuple,
    prefix: &[Scalar],
    candidates: &[Scalar],
) -> Option<QuadraticForm> {
    let field = target.field;
    let free = target.dim - prefix.len() - 1;
    let det_rep = target.det.representative();
    let mut idx = vec![0usize; free];
    loop {
        let mut diag: Vec<Scalar> = prefix.to_vec();
        diag.extend(idx.iter().map(|&i| candidates[i].clone()));
        let partial = diag.iter().fold(Scalar::one(), |acc, a| &acc * a);
        let last_class = square_class(&det_rep, &field)
            .expect("nonzero")
            .mul(&square_class(&partial, &field).expect("nonzero"));
        diag.push(last_class.representative());
        let form = QuadraticForm::new(field, diag).expect("nonzero entries");
        if invariants(&form).same_class(target) {
            return Some(form);
        }
        // Next non-decreasing index tuple.
        let mut k = free;
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            if idx[k] + 1 < candidates.len() {
                idx[k] += 1;
                for j in k + 1..free {
                    idx[j] = idx[k];
                }
                break;
            }
        }
    }
}

/// i_W of `q` base-changed to `member`.
pub fn witt_index_over(q: &QuadraticForm, member: &FieldDesc) -> Result<usize> {
    Ok(witt_decompose(&q.base_change(member)?).witt_index)
}

/// The computable stand-in for "all field extensions E/k".
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionFamily {
    base: FieldDesc,
    members: Vec<FieldDesc>,
}

impl ExtensionFamily {
    /// Validates that every member extends `base`, that `base` itself is a
    /// member, and that some member splits every form.
    pub fn new(base: FieldDesc, members: Vec<FieldDesc>) -> Result<Self> {
        if let Some(m) = members.iter().find(|m| !m.extends(&base)) {
            return Err(Error::UnknownExtension(m.to_string(), base.to_string()));
        }
        if !members.contains(&base) {
            return Err(Error::InvalidFamily(format!("{base} is not a member")));
        }
        let fam = ExtensionFamily { base, members };
        if fam.split_member().is_none() {
            return Err(Error::InvalidFamily(
                "no member over which every form splits (add kbar or an even degree)".into(),
            ));
        }
        Ok(fam)
    }

    /// Default family: Q → {Q, R, Q_2, Q_p for p | entries, kbar}; F_p → degrees {1, 2};
    /// R → {R, kbar}; Q_p → {Q_p, kbar}.
    pub fn default_for(forms: &[&QuadraticForm]) -> Result<Self> {
        let base = forms.first().map(|q| q.field()).unwrap_or(FieldDesc::Rationals);
        if let Some(q) = forms.iter().find(|q| q.field() != base) {
            return Err(Error::FieldMismatch(base.to_string(), q.field().to_string()));
        }
        let members = match base {
            FieldDesc::Rationals => {
                let mut places: Vec<Place> = forms.iter().flat_map(|q| relevant_places(q)).collect();
                places.push(Place::Real);
                places.push(Place::Prime(2));
                places.sort();
                places.dedup();
                let mut m = vec![FieldDesc::Rationals];
                m.extend(places.into_iter().map(|v| match v {
                    Place::Real => FieldDesc::Reals,
                    Place::Prime(p) => FieldDesc::Padic(p),
                }));
                m.push(FieldDesc::AlgebraicClosure);
                m
            }
            FieldDesc::Finite { p, degree } => vec![
                FieldDesc::Finite { p, degree },
                FieldDesc::Finite { p, degree: 2 * degree },
            ],
            FieldDesc::AlgebraicClosure => vec![FieldDesc::AlgebraicClosure],
            other => vec![other, FieldDesc::AlgebraicClosure],
        };
        Self::new(base, members)
    }

    /// Finite-field family of degrees 1..=d_max over F_p.
    pub fn finite_degrees(p: u64, d_max: u32) -> Result<Self> {
        let members = (1..=d_max)
            .map(|d| FieldDesc::finite_extension(p, d))
            .collect::<Result<Vec<_>>>()?;
        Self::new(FieldDesc::finite(p)?, members)
    }

    pub fn base(&self) -> FieldDesc {
        self.base
    }

    pub fn members(&self) -> &[FieldDesc] {
        &self.members
    }

    /// A member over which every form of the base is split: kbar, or over a
    /// finite base the first degree in which the prime field becomes all squares.
    pub fn split_member(&self) -> Option<FieldDesc> {
        self.members.iter().copied().find(|m| match (self.base, m) {
            (_, FieldDesc::AlgebraicClosure) => true,
            (FieldDesc::Finite { degree: d0, .. }, FieldDesc::Finite { degree, .. }) => {
                (degree / d0) % 2 == 0
            }
            _ => false,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileEntry {
    pub member: FieldDesc,
    pub witt_index: usize,
    pub witt_index_prime: usize,
}

impl ProfileEntry {
    /// i_W(q_E) > i+1 ⇒ i_W(q′_E) > i+1 ⇒ i_W(q_E) > i ⇒ i_W(q′_E) > i, for every i.
    pub fn implication_chain_holds(&self) -> bool {
        let (a, b) = (self.witt_index, self.witt_index_prime);
        let top = a.max(b) + 1;
        (0..=top).all(|i| {
            let chain = [a > i + 1, b > i + 1, a > i, b > i];
            chain.windows(2).all(|w| !w[0] || w[1])
        })
    }
}

/// E ↦ (i_W(q_E), i_W(q′_E)) over a family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Profile {
    pub entries: Vec<ProfileEntry>,
}

impl Profile {
    pub fn get(&self, member: &FieldDesc) -> Option<&ProfileEntry> {
        self.entries.iter().find(|e| e.member == *member)
    }

    /// Sorted set of the Witt indices of q attained over the family.
    pub fn splitting_pattern(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.entries.iter().map(|e| e.witt_index).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

pub fn profile(q: &QuadraticForm, fam: &ExtensionFamily) -> Result<Profile> {
    if q.field() != fam.base() {
        return Err(Error::FieldMismatch(q.field().to_string(), fam.base().to_string()));
    }
    let qp = prime_form(q);
    let entries = fam
        .members()
        .iter()
        .map(|m| {
            Ok(ProfileEntry {
                member: *m,
                witt_index: witt_index_over(q, m)?,
                witt_index_prime: witt_index_over(&qp, m)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(bad) = entries.iter().find(|e| !e.implication_chain_holds()) {
        return Err(Error::InvariantViolation(format!(
            "implication chain fails at {}: i_W = {}, i_W' = {}",
            bad.member, bad.witt_index, bad.witt_index_prime
        )));
    }
    Ok(Profile { entries })
}

/// Contiguous runs of Grassmannian indices 0..=⌊dim Q/2⌋ with identical
/// predicates E ↦ [i_W(q_E) > i] over the family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShellPartition {
    pub shells: Vec<Vec<usize>>,
}

pub fn shells(q: &QuadraticForm, fam: &ExtensionFamily) -> Result<ShellPartition> {
    let prof = profile(q, fam)?;
    let indices: Vec<usize> = if q.dim() >= 2 { (0..=(q.dim() - 2) / 2).collect() } else { Vec::new() };
    let predicate =
        |i: usize| prof.entries.iter().map(|e| e.witt_index > i).collect::<Vec<bool>>();
    Ok(ShellPartition { shells: group_runs(&indices, predicate) })
}

fn group_runs<T: Copy, K: PartialEq>(nodes: &[T], key: impl Fn(T) -> K) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = Vec::new();
    let mut last: Option<K> = None;
    for &n in nodes {
        let k = key(n);
        match (&last, out.last_mut()) {
            (Some(prev), Some(run)) if *prev == k => run.push(n),
            _ => out.push(vec![n]),
        }
        last = Some(k);
    }
    out
}

/// A node of the interleaved chain Q′₀, Q₀, Q′₁, Q₁, … of quadratic Grassmannians.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TowerNode {
    /// Q′ᵢ, split iff i_W(q′_E) > i.
    Prime(usize),
    /// Qᵢ, split iff i_W(q_E) > i.
    Base(usize),
}

impl fmt::Display for TowerNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TowerNode::Prime(i) => write!(f, "Q'_{i}"),
            TowerNode::Base(i) => write!(f, "Q_{i}"),
        }
    }
}

impl Serialize for TowerNode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoundaryKind {
    /// A shell ending in Q′ᵢ followed by one starting at Qᵢ.
    #[serde(rename = "Q'-Q")]
    PrimeToBase,
    /// A shell ending in Qᵢ followed by one starting at Q′ᵢ₊₁.
    #[serde(rename = "Q-Q'")]
    BaseToPrime,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineShellPartition {
    pub shells: Vec<Vec<TowerNode>>,
    /// `boundaries[t]` separates `shells[t]` from `shells[t + 1]`.
    pub boundaries: Vec<BoundaryKind>,
}

/// The interleaved chain for a form of dimension `dim`: Q′ᵢ for i ≤ ⌊dim Q′/2⌋
/// and Qᵢ for i ≤ ⌊dim Q/2⌋, where dim Q′ = dim − 1 and dim Q = dim − 2.
pub fn tower_nodes(dim: usize) -> Vec<TowerNode> {
    let prime_top = if dim >= 1 { Some((dim - 1) / 2) } else { None };
    let base_top = if dim >= 2 { Some((dim - 2) / 2) } else { None };
    let mut nodes = Vec::new();
    for i in 0..=dim {
        if prime_top.is_some_and(|t| i <= t) {
            nodes.push(TowerNode::Prime(i));
        }
        if base_top.is_some_and(|t| i <= t) {
            nodes.push(TowerNode::Base(i));
        }
    }
    nodes
}

pub fn affine_shells(q: &QuadraticForm, fam: &ExtensionFamily) -> Result<AffineShellPartition> {
    let prof = profile(q, fam)?;
    let predicate = |n: TowerNode| -> Vec<bool> {
        prof.entries
            .iter()
            .map(|e| match n {
                TowerNode::Prime(i) => e.witt_index_prime > i,
                TowerNode::Base(i) => e.witt_index > i,
            })
            .collect()
    };
    let shells = group_runs(&tower_nodes(q.dim()), predicate);
    let boundaries = shells
        .windows(2)
        .map(|w| match w[0].last().expect("shells are nonempty") {
            TowerNode::Prime(_) => BoundaryKind::PrimeToBase,
            TowerNode::Base(_) => BoundaryKind::BaseToPrime,
        })
        .collect();
    Ok(AffineShellPartition { shells, boundaries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::isometric;

    fn form(field: FieldDesc, diag: &[i64]) -> QuadraticForm {
        QuadraticForm::from_ints(field, diag).unwrap()
    }

    fn f(p: u64) -> FieldDesc {
        FieldDesc::finite(p).unwrap()
    }

    #[test]
    fn isotropy_examples() {
        for field in [FieldDesc::Rationals, FieldDesc::Reals, FieldDesc::Padic(2), f(3)] {
            assert!(is_isotropic(&form(field, &[1, -1])));
            assert!(!is_isotropic(&QuadraticForm::empty(field)));
            assert!(!is_isotropic(&form(field, &[1])));
        }
        assert!(!is_isotropic(&form(f(3), &[1, 1])));
        assert!(is_isotropic(&form(FieldDesc::Padic(5), &[1, 1, 1, 1, 1])));
        assert!(!is_isotropic(&form(FieldDesc::Rationals, &[1, 1, 1, 1, 1])));
        // x² + y² − 3z² has no rational zero (obstructed at 3), but x² + y² − 2z² does.
        assert!(!is_isotropic(&form(FieldDesc::Rationals, &[1, 1, -3])));
        assert!(is_isotropic(&form(FieldDesc::Rationals, &[1, 1, -2])));
    }

    #[test]
    fn witt_decompose_examples() {
        let h = witt_decompose(&form(FieldDesc::Rationals, &[1, -1]));
        assert_eq!(h.witt_index, 1);
        assert_eq!(h.kernel.dim(), 0);
        let t = witt_decompose(&form(f(3), &[1, 1, 1]));
        assert_eq!((t.witt_index, t.kernel.dim()), (1, 1));
        let r = witt_decompose(&form(FieldDesc::Reals, &[1, 1, -1]));
        assert_eq!(r.witt_index, 1);
        assert_eq!(r.kernel, form(FieldDesc::Reals, &[1]));
    }

    #[test]
    fn rational_kernel_realizes_stripped_invariants() {
        let cases: &[&[i64]] = &[
            &[1, 1, -2],
            &[1, 2, -3, 5],
            &[3, -5, 7, -11, 2],
            &[1, 1, 1, 1, 1, 1, -1],
            &[2, 3, -1, -6, 7, 7],
        ];
        for diag in cases {
            let q = form(FieldDesc::Rationals, diag);
            let w = witt_decompose(&q);
            assert_eq!(w.kernel.dim() + 2 * w.witt_index, q.dim());
            assert!(!is_isotropic(&w.kernel), "kernel of {q} is isotropic");
            let mut rebuilt = w.kernel.clone();
            for _ in 0..w.witt_index {
                rebuilt = crate::form::direct_sum(&rebuilt, &QuadraticForm::hyperbolic(q.field()))
                    .unwrap();
            }
            assert!(isometric(&rebuilt, &q).unwrap(), "{q} vs {rebuilt}");
        }
    }

    #[test]
    fn witt_index_over_examples() {
        let q = form(f(3), &[1, 1]);
        assert_eq!(witt_index_over(&q, &FieldDesc::finite_extension(3, 2).unwrap()).unwrap(), 1);
        let pd = form(FieldDesc::Rationals, &[1, 1, 1, 1]);
        assert_eq!(witt_index_over(&pd, &FieldDesc::Reals).unwrap(), 0);
        for diag in [&[3i64][..], &[1, 2], &[1, 1, 1], &[5, 7, 11, 13, 17]] {
            let q = form(FieldDesc::Rationals, diag);
            assert_eq!(witt_index_over(&q, &FieldDesc::AlgebraicClosure).unwrap(), q.dim() / 2);
        }
        assert!(matches!(
            witt_index_over(&q, &FieldDesc::Reals),
            Err(Error::UnknownExtension(..))
        ));
    }

    #[test]
    fn profile_examples() {
        let q = form(FieldDesc::Rationals, &[1]);
        let fam = ExtensionFamily::new(
            FieldDesc::Rationals,
            vec![FieldDesc::Rationals, FieldDesc::Reals, FieldDesc::Padic(2), FieldDesc::AlgebraicClosure],
        )
        .unwrap();
        let prof = profile(&q, &fam).unwrap();
        assert!(prof.entries.iter().all(|e| (e.witt_index, e.witt_index_prime) == (0, 1)));

        let r = form(FieldDesc::Reals, &[-1, -1]);
        let prof = profile(&r, &ExtensionFamily::default_for(&[&r]).unwrap()).unwrap();
        assert_eq!(prof.get(&FieldDesc::Reals).map(|e| (e.witt_index, e.witt_index_prime)), Some((0, 0)));
        assert_eq!(
            prof.get(&FieldDesc::AlgebraicClosure).map(|e| (e.witt_index, e.witt_index_prime)),
            Some((1, 1))
        );

        let q = form(f(3), &[1, 1]);
        let prof = profile(&q, &ExtensionFamily::finite_degrees(3, 2).unwrap()).unwrap();
        let pairs: Vec<_> = prof.entries.iter().map(|e| (e.witt_index, e.witt_index_prime)).collect();
        assert_eq!(pairs, vec![(0, 1), (1, 1)]);
        assert_eq!(prof.splitting_pattern(), vec![0, 1]);
    }

    #[test]
    fn family_validation() {
        assert!(matches!(
            ExtensionFamily::new(FieldDesc::Rationals, vec![FieldDesc::Rationals]),
            Err(Error::InvalidFamily(_))
        ));
        assert!(matches!(
            ExtensionFamily::new(FieldDesc::Reals, vec![FieldDesc::Reals, FieldDesc::Padic(3)]),
            Err(Error::UnknownExtension(..))
        ));
        assert!(ExtensionFamily::finite_degrees(3, 1).is_err());
        let q = form(FieldDesc::Rationals, &[5, -10]);
        let fam = ExtensionFamily::default_for(&[&q]).unwrap();
        let names: Vec<String> = fam.members().iter().map(|m| m.to_string()).collect();
        assert_eq!(names, ["Q", "R", "Q_2", "Q_5", "kbar"]);
    }

    #[test]
    fn shells_examples() {
        let kbar_only =
            ExtensionFamily::new(FieldDesc::AlgebraicClosure, vec![FieldDesc::AlgebraicClosure])
                .unwrap();
        for d in 0..7 {
            let q = QuadraticForm::new(FieldDesc::AlgebraicClosure, vec![Scalar::one(); d]).unwrap();
            let aff = affine_shells(&q, &kbar_only).unwrap();
            assert!(aff.shells.len() <= 1);
            assert!(aff.boundaries.is_empty());
            assert!(shells(&q, &kbar_only).unwrap().shells.len() <= 1);
        }

        let q = form(f(3), &[1, 1]);
        let aff = affine_shells(&q, &ExtensionFamily::finite_degrees(3, 2).unwrap()).unwrap();
        assert_eq!(aff.shells, vec![vec![TowerNode::Prime(0)], vec![TowerNode::Base(0)]]);
        assert_eq!(aff.boundaries, vec![BoundaryKind::PrimeToBase]);

        let r = form(FieldDesc::Reals, &[-1, -1]);
        let aff = affine_shells(&r, &ExtensionFamily::default_for(&[&r]).unwrap()).unwrap();
        assert_eq!(aff.shells, vec![vec![TowerNode::Prime(0), TowerNode::Base(0)]]);
    }

    #[test]
    fn tower_node_ranges() {
        assert!(tower_nodes(0).is_empty());
        assert_eq!(tower_nodes(1), vec![TowerNode::Prime(0)]);
        assert_eq!(
            tower_nodes(3),
            vec![TowerNode::Prime(0), TowerNode::Base(0), TowerNode::Prime(1)]
        );
        assert_eq!(tower_nodes(4).len(), 4);
    }

    #[test]
    fn single_shells_follow_splitting_pattern() {
        // ⟨1,1,1,1⟩ over R: i_W = 0 at R, 2 at kbar. Indices 0..=1 form one shell.
        let q = form(FieldDesc::Reals, &[1, 1, 1, 1]);
        let fam = ExtensionFamily::default_for(&[&q]).unwrap();
        assert_eq!(shells(&q, &fam).unwrap().shells, vec![vec![0, 1]]);
        // ⟨1,1,1,−1⟩ over R: i_W = 1 at R, 2 at kbar. Shells {0}, {1}.
        let q = form(FieldDesc::Reals, &[1, 1, 1, -1]);
        assert_eq!(shells(&q, &fam).unwrap().shells, vec![vec![0], vec![1]]);
    }
}
