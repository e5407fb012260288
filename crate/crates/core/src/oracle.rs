//! Brute-force oracles that never consult invariants.
//!
//! Over finite fields everything is decided by enumeration in explicit
//! GF(p^d) tables. Over ℚ_p solvability is searched modulo prime powers, and
//! over ℚ integer vectors are enumerated by height. The exhaustive theorem
//! check at the bottom is the one place that also calls the library, since
//! its job is to compare the two.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{is_prime, least_nonresidue, residue_mod, FieldDesc, Scalar};
use crate::form::{isometric, QuadraticForm};
use crate::motive::{affine_motive_equiv, phi_affine_reduced, TateLine, Verdict};
use crate::witt::{profile, ExtensionFamily};

/// Limits for the oracles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    /// Height bound for the rational search.
    pub height: u64,
    /// Largest field order for which GF(p^d) tables are built.
    pub field_cap: u64,
    /// Largest number of vectors a finite-field enumeration may visit.
    pub max_vectors: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { height: 10_000, field_cap: 2401, max_vectors: 50_000_000 }
    }
}

/// GF(p^d) with elements numbered 0..p^d by their base-p coefficient digits.
/// Indices below p are the prime field.
#[derive(Clone, Debug)]
pub struct SmallField {
    p: u64,
    degree: u32,
    order: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl SmallField {
    pub fn new(p: u64, degree: u32, cap: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        let order = p.checked_pow(degree).filter(|&q| q <= cap).ok_or_else(|| {
            Error::BudgetExceeded(format!("GF({p}^{degree}) exceeds the field cap {cap}"))
        })? as usize;
        let d = degree as usize;
        let digits = |mut x: usize| -> Vec<u64> {
            (0..d)
                .map(|_| {
                    let r = (x as u64) % p;
                    x /= p as usize;
                    r
                })
                .collect()
        };
        let index = |c: &[u64]| -> u32 { c.iter().rev().fold(0u64, |acc, &x| acc * p + x) as u32 };
        let add: Vec<u32> = (0..order * order)
            .map(|k| {
                let (a, b) = (digits(k / order), digits(k % order));
                index(&a.iter().zip(&b).map(|(x, y)| (x + y) % p).collect::<Vec<_>>())
            })
            .collect();
        // Monic modulus x^d + c_{d-1}x^{d-1} + ... + c_0; tried in index order of its tail.
        let mut mul = Vec::new();
        for tail in 0..order.max(1) {
            let c = digits(tail);
            let table: Vec<u32> = (0..order * order)
                .map(|k| {
                    let (a, b) = (digits(k / order), digits(k % order));
                    let mut prod = vec![0u64; 2 * d.max(1)];
                    for (i, x) in a.iter().enumerate() {
                        for (j, y) in b.iter().enumerate() {
                            prod[i + j] = (prod[i + j] + x * y) % p;
                        }
                    }
                    for top in (d..prod.len()).rev() {
                        let t = prod[top];
                        if t != 0 {
                            prod[top] = 0;
                            for (i, ci) in c.iter().enumerate() {
                                let idx = top - d + i;
                                prod[idx] = (prod[idx] + p * p - t * ci % p) % p;
                            }
                        }
                    }
                    index(&prod[..d])
                })
                .collect();
            let no_zero_divisors =
                (1..order).all(|a| (1..order).all(|b| table[a * order + b] != 0));
            if no_zero_divisors {
                mul = table;
                break;
            }
        }
        let neg = (0..order).map(|a| (0..order).find(|&b| add[a * order + b] == 0).unwrap() as u32).collect();
        let inv = (0..order)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..order).find(|&b| mul[a * order + b] == 1).unwrap() as u32
                }
            })
            .collect();
        Ok(SmallField { p, degree, order, add, mul, neg, inv })
    }

    /// The table for the field of definition of a finite-field form.
    pub fn for_form(q: &QuadraticForm, budget: &SearchBudget) -> Result<Self> {
        match q.field() {
            FieldDesc::Finite { p, degree } => SmallField::new(p, degree, budget.field_cap),
            other => Err(Error::FieldMismatch(other.to_string(), "F_p^d".into())),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.order + b as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.order + b as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// Image of a rational scalar in the prime field.
    pub fn embed(&self, a: &Scalar) -> Result<u32> {
        Ok(residue_mod(a, self.p)? as u32)
    }

    /// x ↦ xᵀ G y.
    pub fn bilinear(&self, gram: &[Vec<u32>], x: &[u32], y: &[u32]) -> u32 {
        let mut acc = 0;
        for (i, row) in gram.iter().enumerate() {
            if x[i] == 0 {
                continue;
            }
            for (j, &g) in row.iter().enumerate() {
                if g != 0 && y[j] != 0 {
                    acc = self.add(acc, self.mul(self.mul(x[i], g), y[j]));
                }
            }
        }
        acc
    }
}

fn diag_gram(field: &SmallField, q: &QuadraticForm) -> Result<Vec<Vec<u32>>> {
    let n = q.dim();
    let mut g = vec![vec![0u32; n]; n];
    for (i, a) in q.diag().iter().enumerate() {
        g[i][i] = field.embed(a)?;
    }
    Ok(g)
}

fn check_enumeration(field: &SmallField, dim: usize, budget: &SearchBudget) -> Result<()> {
    let total = (field.order() as u64).checked_pow(dim as u32);
    match total {
        Some(t) if t <= budget.max_vectors => Ok(()),
        _ => Err(Error::BudgetExceeded(format!(
            "{} vectors in dimension {dim} over GF({})",
            field.order(),
            field.order()
        ))),
    }
}

/// Odometer over all of GF(q)^n in lexicographic order.
fn next_vector(v: &mut [u32], order: usize) -> bool {
    for x in v.iter_mut().rev() {
        *x += 1;
        if (*x as usize) < order {
            return true;
        }
        *x = 0;
    }
    false
}

/// First isotropic vector of the Gram matrix, among vectors whose first nonzero
/// coordinate is 1, in lexicographic order.
pub fn bf_isotropic_vector_gram(field: &SmallField, gram: &[Vec<u32>]) -> Option<Vec<u32>> {
    let n = gram.len();
    for lead in 0..n {
        let mut v = vec![0u32; n];
        v[lead] = 1;
        loop {
            if field.bilinear(gram, &v, &v) == 0 {
                return Some(v);
            }
            if !next_vector(&mut v[lead + 1..], field.order()) {
                break;
            }
        }
    }
    None
}

/// Nonzero v with q(v) = 0 over the form's finite field, by enumeration.
pub fn bf_isotropic_vector(q: &QuadraticForm, budget: &SearchBudget) -> Result<Option<Vec<u32>>> {
    let field = SmallField::for_form(q, budget)?;
    check_enumeration(&field, q.dim(), budget)?;
    Ok(bf_isotropic_vector_gram(&field, &diag_gram(&field, q)?))
}

/// Basis of {x : M x = 0} for a k×n matrix.
fn nullspace(field: &SmallField, rows: &[Vec<u32>], n: usize) -> Vec<Vec<u32>> {
    let mut m: Vec<Vec<u32>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, pr);
        let s = field.inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = field.mul(*x, s);
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..n {
                    let t = field.mul(f, m[r][j]);
                    m[i][j] = field.sub(m[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0u32; n];
            v[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(m[row][free]);
            }
            v
        })
        .collect()
}

/// Witt index of a nondegenerate symmetric Gram matrix, by repeatedly splitting
/// off the hyperbolic plane spanned by an isotropic v and a partner w.
pub fn bf_witt_index_gram(field: &SmallField, gram: &[Vec<u32>]) -> usize {
    let n = gram.len();
    let Some(v) = bf_isotropic_vector_gram(field, gram) else { return 0 };
    let basis = |i: usize| -> Vec<u32> { (0..n).map(|j| (i == j) as u32).collect() };
    let w = (0..n)
        .map(basis)
        .find(|e| field.bilinear(gram, &v, e) != 0)
        .expect("nondegenerate form has a partner for every isotropic vector");
    let gv: Vec<u32> = (0..n).map(|j| field.bilinear(gram, &v, &basis(j))).collect();
    let gw: Vec<u32> = (0..n).map(|j| field.bilinear(gram, &w, &basis(j))).collect();
    let complement = nullspace(field, &[gv, gw], n);
    let restricted: Vec<Vec<u32>> = complement
        .iter()
        .map(|x| complement.iter().map(|y| field.bilinear(gram, x, y)).collect())
        .collect();
    1 + bf_witt_index_gram(field, &restricted)
}

pub fn bf_witt_index(q: &QuadraticForm, budget: &SearchBudget) -> Result<usize> {
    let field = SmallField::for_form(q, budget)?;
    check_enumeration(&field, q.dim(), budget)?;
    Ok(bf_witt_index_gram(&field, &diag_gram(&field, q)?))
}

/// #{x ∈ F^n : q(x) = c}.
pub fn bf_count_affine(q: &QuadraticForm, c: &Scalar, budget: &SearchBudget) -> Result<u64> {
    let field = SmallField::for_form(q, budget)?;
    check_enumeration(&field, q.dim(), budget)?;
    let target = field.embed(c)?;
    let diag: Vec<u32> = q.diag().iter().map(|a| field.embed(a)).collect::<Result<_>>()?;
    let squares: Vec<u32> = (0..field.order() as u32).map(|x| field.mul(x, x)).collect();
    let mut v = vec![0u32; q.dim()];
    let mut count = 0;
    loop {
        let value = v
            .iter()
            .zip(&diag)
            .fold(0, |acc, (&x, &a)| field.add(acc, field.mul(a, squares[x as usize])));
        count += (value == target) as u64;
        if !next_vector(&mut v, field.order()) {
            return Ok(count);
        }
    }
}

/// Searches for an orthogonal basis w₁..wₙ of the first form with q₁(wᵢ) = bᵢ,
/// the diagonal entries of the second.
pub fn bf_isometric(q1: &QuadraticForm, q2: &QuadraticForm, budget: &SearchBudget) -> Result<bool> {
    if q1.field() != q2.field() {
        return Err(Error::FieldMismatch(q1.field().to_string(), q2.field().to_string()));
    }
    if q1.dim() != q2.dim() {
        return Ok(false);
    }
    let field = SmallField::for_form(q1, budget)?;
    check_enumeration(&field, q1.dim(), budget)?;
    let diag: Vec<u32> = q1.diag().iter().map(|a| field.embed(a)).collect::<Result<_>>()?;
    let targets: Vec<u32> = q2.diag().iter().map(|b| field.embed(b)).collect::<Result<_>>()?;
    let n = q1.dim();
    let mut all = Vec::with_capacity(field.order().pow(n as u32));
    let mut v = vec![0u32; n];
    loop {
        all.push(v.clone());
        if !next_vector(&mut v, field.order()) {
            break;
        }
    }
    let polar = |x: &[u32], y: &[u32]| -> u32 {
        x.iter()
            .zip(y)
            .zip(&diag)
            .fold(0, |acc, ((&a, &b), &d)| field.add(acc, field.mul(d, field.mul(a, b))))
    };
    let values: Vec<u32> = all.iter().map(|w| polar(w, w)).collect();
    // `pool` holds the vectors orthogonal to everything chosen so far.
    fn extend(
        all: &[Vec<u32>],
        values: &[u32],
        targets: &[u32],
        pool: &[usize],
        polar: &dyn Fn(&[u32], &[u32]) -> u32,
    ) -> bool {
        let Some((&target, rest)) = targets.split_first() else { return true };
        for &w in pool.iter().filter(|&&w| values[w] == target) {
            let next: Vec<usize> =
                pool.iter().copied().filter(|&u| polar(&all[w], &all[u]) == 0).collect();
            if extend(all, values, rest, &next, polar) {
                return true;
            }
        }
        false
    }
    let pool: Vec<usize> = (0..all.len()).collect();
    Ok(extend(&all, &values, &targets, &pool, &polar))
}

fn integral_entries(q: &QuadraticForm) -> Vec<BigInt> {
    q.diag().iter().map(|a| a.numer() * a.denom() * 1).collect()
}

fn valuation(n: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

/// A primitive solution of q(x) ≡ 0 that lifts to ℚ_p, or `None` if q is
/// anisotropic over ℚ_p.
///
/// Entries are made integral (aᵢ·denᵢ²) and stripped of p² factors, so every
/// v(aᵢ) ≤ 1. A primitive x with e = min v(2aᵢxᵢ) and q(x) ≡ 0 mod p^{2e+1}
/// lifts by Hensel's lemma; conversely any primitive zero gives such an x.
/// Since some unit coordinate has v(2aᵢxᵢ) ≤ v(2)+1, only e ≤ v(2)+1 is
/// searched, and only within `exponent` (default 2·v(4∏aᵢ)+3) when given.
pub fn bf_local_solution(q: &QuadraticForm, p: u64, exponent: Option<u32>) -> Result<Option<Vec<u64>>> {
    if !is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    if !matches!(q.field(), FieldDesc::Rationals | FieldDesc::Padic(_)) {
        return Err(Error::FieldMismatch(q.field().to_string(), "Q".into()));
    }
    let pp = BigInt::from(p * p);
    let entries: Vec<BigInt> = integral_entries(q)
        .into_iter()
        .map(|mut a| {
            while (&a % &pp).is_zero() {
                a /= &pp;
            }
            a
        })
        .collect();
    let prod: BigInt = entries.iter().product::<BigInt>() * 4;
    let k = exponent.unwrap_or(2 * valuation(&prod, p) + 3);
    let v2 = (p == 2) as u32;
    for e in 0..=(v2 + 1) {
        if 2 * e + 1 > k {
            break;
        }
        if let Some(x) = solve_mod_power(&entries, p, e) {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

pub fn bf_local_solvable(q: &QuadraticForm, p: u64, exponent: Option<u32>) -> Result<bool> {
    Ok(bf_local_solution(q, p, exponent)?.is_some())
}

/// DP over coordinates for a primitive x mod p^{e+1} with min v(2aᵢxᵢ) = e and
/// Σaᵢxᵢ² ≡ 0 mod p^{2e+1}. State: (residue, primitive so far, min reached).
fn solve_mod_power(entries: &[BigInt], p: u64, e: u32) -> Option<Vec<u64>> {
    let modulus = p.pow(2 * e + 1);
    let range = p.pow(e + 1);
    let m = BigInt::from(modulus);
    let a_mod: Vec<u64> = entries.iter().map(|a| a.mod_floor(&m).to_u64().unwrap()).collect();
    let a_val: Vec<u32> = entries.iter().map(|a| valuation(&(a * 2), p)).collect();
    let states = (modulus as usize) * 4;
    let encode = |r: u64, prim: bool, hit: bool| (r as usize) * 4 + (prim as usize) * 2 + hit as usize;
    let mut layers: Vec<Vec<Option<(usize, u64)>>> = Vec::with_capacity(entries.len());
    let mut reach = vec![false; states];
    reach[encode(0, false, false)] = true;
    for (i, &a) in a_mod.iter().enumerate() {
        let mut next = vec![None; states];
        for s in (0..states).filter(|&s| reach[s]) {
            let (r, prim, hit) = ((s / 4) as u64, s & 2 != 0, s & 1 != 0);
            for x in 0..range {
                let vx = if x == 0 { u32::MAX } else { a_val[i] + x.trailing_zeros_base(p) };
                if vx < e {
                    continue;
                }
                let r2 = ((r as u128 + a as u128 * (x as u128 * x as u128)) % modulus as u128) as u64;
                let t = encode(r2, prim || x % p != 0, hit || vx == e);
                if next[t].is_none() {
                    next[t] = Some((s, x));
                }
            }
        }
        reach = next.iter().map(Option::is_some).collect();
        layers.push(next);
    }
    let goal = encode(0, true, true);
    if entries.is_empty() || !reach[goal] {
        return None;
    }
    let mut x = vec![0; entries.len()];
    let mut s = goal;
    for i in (0..entries.len()).rev() {
        let (prev, xi) = layers[i][s].unwrap();
        x[i] = xi;
        s = prev;
    }
    Some(x)
}

trait BaseValuation {
    fn trailing_zeros_base(self, p: u64) -> u32;
}

impl BaseValuation for u64 {
    fn trailing_zeros_base(mut self, p: u64) -> u32 {
        let mut v = 0;
        while self % p == 0 {
            self /= p;
            v += 1;
        }
        v
    }
}

/// Nonzero primitive integer vector with q(x) = 0 and all |xᵢ| ≤ `height`,
/// searched by increasing max-height over nonnegative coordinates.
pub fn bf_rational_search(q: &QuadraticForm, height: u64) -> Result<Option<Vec<BigInt>>> {
    if q.field() != FieldDesc::Rationals {
        return Err(Error::FieldMismatch(q.field().to_string(), "Q".into()));
    }
    let n = q.dim();
    if n < 2 {
        return Ok(None);
    }
    let entries: Vec<i128> = integral_entries(q)
        .iter()
        .map(|a| a.to_i128().filter(|a| a.abs() < 1 << 40))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::BudgetExceeded("entries too large for the height search".into()))?;
    if height > 1_000_000 {
        return Err(Error::BudgetExceeded(format!("height {height}")));
    }
    let (head, last) = (&entries[..n - 1], entries[n - 1]);
    let h_max = height as i128;
    for h in 0..=h_max {
        let mut found = None;
        each_tuple_with_max(n - 1, h, &mut |t| {
            let s: i128 = t.iter().zip(head).map(|(&x, &a)| a * x * x).sum();
            if (-s) % last != 0 {
                return false;
            }
            let y2 = -s / last;
            if y2 < 0 {
                return false;
            }
            let y = (y2 as u128).sqrt() as i128;
            if y * y != y2 || y > h_max || (h == 0 && y == 0) {
                return false;
            }
            let mut v: Vec<i128> = t.to_vec();
            v.push(y);
            found = Some(v);
            true
        });
        if let Some(v) = found {
            let g = v.iter().fold(0i128, |g, &x| g.gcd(&x));
            return Ok(Some(v.into_iter().map(|x| BigInt::from(x / g)).collect()));
        }
    }
    Ok(None)
}

/// Calls `f` on each tuple in [0,h]^k with maximum exactly h (the zero tuple when h = 0),
/// stopping early when `f` returns true.
fn each_tuple_with_max(k: usize, h: i128, f: &mut dyn FnMut(&[i128]) -> bool) {
    if k == 0 {
        if h == 0 {
            f(&[]);
        }
        return;
    }
    let mut t = vec![0i128; k];
    for first in 0..k {
        // Coordinates before `first` are < h, `first` equals h, the rest are ≤ h.
        if h == 0 && first > 0 {
            return;
        }
        let bounds: Vec<i128> = (0..k).map(|i| if i < first { h - 1 } else { h }).collect();
        if bounds.iter().any(|&b| b < 0) {
            continue;
        }
        t.iter_mut().for_each(|x| *x = 0);
        t[first] = h;
        loop {
            if f(&t) {
                return;
            }
            let mut i = k;
            let advanced = loop {
                if i == 0 {
                    break false;
                }
                i -= 1;
                if i == first {
                    continue;
                }
                if t[i] < bounds[i] {
                    t[i] += 1;
                    break true;
                }
                t[i] = 0;
            };
            if !advanced {
                break;
            }
        }
    }
}

/// Outcome of [`exhaustive_theorem_check`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub p: u64,
    pub max_dim: usize,
    pub forms: usize,
    pub pairs: usize,
    pub violations: Vec<String>,
}

impl TheoremReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// All diagonal forms over F_p with entries in {1, ε} and dim ≤ `max_dim`, and for
/// every same-dimension pair: equal motivic data over F_p, F_{p²} ⟺ isometric,
/// with isometry decided by [`bf_isometric`], and the verdict of
/// [`affine_motive_equiv`] agreeing with both.
pub fn exhaustive_theorem_check(p: u64, max_dim: usize) -> Result<TheoremReport> {
    let eps = least_nonresidue(p) as i64;
    let fam = ExtensionFamily::finite_degrees(p, 2)?;
    let base = fam.base();
    let budget = SearchBudget::default();
    let mut report = TheoremReport { p, max_dim, ..Default::default() };
    type Signature = Vec<(usize, usize, TateLine)>;
    for dim in 0..=max_dim {
        let forms: Vec<QuadraticForm> = (0..=dim)
            .map(|k| {
                let mut d = vec![1i64; dim - k];
                d.extend(std::iter::repeat(eps).take(k));
                QuadraticForm::from_ints(base, &d)
            })
            .collect::<Result<_>>()?;
        let sigs: Vec<Signature> = forms
            .iter()
            .map(|q| -> Result<Signature> {
                let prof = profile(q, &fam)?;
                fam.members()
                    .iter()
                    .map(|m| {
                        let e = prof.get(m).expect("profile covers the family");
                        Ok((e.witt_index, e.witt_index_prime, phi_affine_reduced(q, m)?))
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        report.forms += forms.len();
        for i in 0..forms.len() {
            for j in i..forms.len() {
                report.pairs += 1;
                let (q, r) = (&forms[i], &forms[j]);
                let iso = bf_isometric(q, r, &budget)?;
                let same = sigs[i] == sigs[j];
                if same != iso {
                    report.violations.push(format!(
                        "{q} vs {r}: motivic data equal = {same}, isometric = {iso}"
                    ));
                }
                if isometric(q, r)? != iso {
                    report.violations.push(format!("{q} vs {r}: library isometry disagrees"));
                }
                let verdict = affine_motive_equiv(q, r, &fam)?;
                let consistent = match verdict {
                    Verdict::Isometric { .. } => iso,
                    Verdict::Distinguished { .. } => !iso,
                    _ => false,
                };
                if !consistent {
                    report.violations.push(format!("{q} vs {r}: verdict {verdict:?}"));
                }
            }
        }
    }
    Ok(report)
}
