//! Symbolic ℤ/2 Tate motives: bigraded spaces of Tate lines, the
//! decomposition of split quadrics, the Φ-invariants of projective and
//! affine quadrics, and the equivalence pipelines built on them.
//!
//! Φ is never evaluated on a motive category. Its values are computed from
//! the Witt data of the form: Φ kills anisotropic projective quadrics, fixes
//! Tate lines, and Rost's decomposition
//! M(Q) ≅ ℤ/2 ⊕ M(Q̃)(1)[2] ⊕ ℤ/2(d)[2d] (d = dim Q) peels one hyperbolic
//! plane at a time.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldDesc, SquareClass};
use crate::form::{
    direct_sum, invariants, isometric, prime_form, scale, QuadraticForm, SimilarityWitness,
};
use crate::witt::{is_isotropic, witt_decompose, ExtensionFamily};

/// ℤ/2(twist)[degree].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TateLine {
    pub twist: i64,
    pub degree: i64,
}

impl TateLine {
    pub fn new(twist: i64, degree: i64) -> Self {
        TateLine { twist, degree }
    }

    /// ℤ/2(i)[2i], a pure Tate motive.
    pub fn pure(i: i64) -> Self {
        TateLine::new(i, 2 * i)
    }

    /// Tensor with ℤ/2(k)[2k].
    pub fn tate_twist(self, k: i64) -> Self {
        TateLine::new(self.twist + k, self.degree + 2 * k)
    }

    pub fn shift(self, k: i64) -> Self {
        TateLine::new(self.twist, self.degree + k)
    }
}

impl fmt::Display for TateLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/2({})[{}]", self.twist, self.degree)
    }
}

/// A finite multiset of Tate lines, kept sorted so that equality is multiset equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct BigradedSpace {
    lines: Vec<TateLine>,
}

impl BigradedSpace {
    pub fn new(mut lines: Vec<TateLine>) -> Self {
        lines.sort();
        BigradedSpace { lines }
    }

    pub fn zero() -> Self {
        BigradedSpace::default()
    }

    pub fn lines(&self) -> &[TateLine] {
        &self.lines
    }

    pub fn rank(&self) -> usize {
        self.lines.len()
    }

    pub fn contains(&self, line: TateLine) -> bool {
        self.lines.binary_search(&line).is_ok()
    }

    pub fn direct_sum(&self, other: &BigradedSpace) -> BigradedSpace {
        let mut lines = self.lines.clone();
        lines.extend_from_slice(&other.lines);
        BigradedSpace::new(lines)
    }

    pub fn tensor(&self, other: &BigradedSpace) -> BigradedSpace {
        let lines = self
            .lines
            .iter()
            .flat_map(|a| {
                other.lines.iter().map(move |b| TateLine::new(a.twist + b.twist, a.degree + b.degree))
            })
            .collect();
        BigradedSpace::new(lines)
    }

    pub fn shift(&self, k: i64) -> BigradedSpace {
        BigradedSpace::new(self.lines.iter().map(|l| l.shift(k)).collect())
    }

    /// The (k)[2k] operation applied to every line.
    pub fn tate_twist(&self, k: i64) -> BigradedSpace {
        BigradedSpace::new(self.lines.iter().map(|l| l.tate_twist(k)).collect())
    }

    /// Removes one copy of `line`, if present.
    pub fn remove_one(&self, line: TateLine) -> Option<BigradedSpace> {
        let i = self.lines.binary_search(&line).ok()?;
        let mut lines = self.lines.clone();
        lines.remove(i);
        Some(BigradedSpace { lines })
    }

    pub fn euler_class(&self) -> EulerClass {
        self.lines.iter().map(|&l| EulerClass::of_line(l)).fold(EulerClass::zero(), |a, b| a + b)
    }

    /// Largest twist occurring, i.e. the dimension of a quadric with a rational point.
    pub fn max_twist(&self) -> Option<i64> {
        self.lines.iter().map(|l| l.twist).max()
    }
}

impl fmt::Display for BigradedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lines.is_empty() {
            return write!(f, "0");
        }
        for (i, l) in self.lines.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Σ over lines of (−1)^degree · t^twist, the Euler characteristic graded by twist.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EulerClass(BTreeMap<i64, i64>);

impl EulerClass {
    pub fn zero() -> Self {
        EulerClass::default()
    }

    pub fn of_line(line: TateLine) -> Self {
        let sign = if line.degree.rem_euclid(2) == 0 { 1 } else { -1 };
        EulerClass(BTreeMap::from([(line.twist, sign)]))
    }

    pub fn coefficient(&self, twist: i64) -> i64 {
        self.0.get(&twist).copied().unwrap_or(0)
    }

    fn normalized(mut self) -> Self {
        self.0.retain(|_, c| *c != 0);
        self
    }
}

impl Add for EulerClass {
    type Output = EulerClass;
    fn add(mut self, rhs: EulerClass) -> EulerClass {
        for (t, c) in rhs.0 {
            *self.0.entry(t).or_insert(0) += c;
        }
        self.normalized()
    }
}

impl Neg for EulerClass {
    type Output = EulerClass;
    fn neg(self) -> EulerClass {
        EulerClass(self.0.into_iter().map(|(t, c)| (t, -c)).collect())
    }
}

impl Sub for EulerClass {
    type Output = EulerClass;
    fn sub(self, rhs: EulerClass) -> EulerClass {
        self + (-rhs)
    }
}

/// Motive of a split projective quadric of dimension m over k̄:
/// ⊕_{0≤i≤⌊m/2⌋} ℤ/2(i)[2i] ⊕ ℤ/2(m−i)[2m−2i].
pub fn split_quadric_motive(m: i64) -> Result<BigradedSpace> {
    if m < 0 {
        return Err(Error::NegativeDimension(m));
    }
    let lines = (0..=m / 2).flat_map(|i| [TateLine::pure(i), TateLine::pure(m - i)]).collect();
    Ok(BigradedSpace::new(lines))
}

/// Φ^E(M(Q)) for the projective quadric Q = {q = 0}.
///
/// With q_E ≅ r·H ⊥ q_an, iterating Rost's decomposition gives
/// ⊕_{0≤i<r} ℤ/2(i)[2i] ⊕ ℤ/2(D−i)[2D−2i] ⊕ M(Q_an)(r)[2r] with D = dim Q,
/// and Φ kills the anisotropic remainder, so the rank is exactly 2r.
pub fn phi_projective(q: &QuadraticForm, member: &FieldDesc) -> Result<BigradedSpace> {
    let qe = q.base_change(member)?;
    Ok(phi_projective_split(qe.quadric_dim(), witt_decompose(&qe).witt_index))
}

fn phi_projective_split(quadric_dim: i64, witt_index: usize) -> BigradedSpace {
    let lines = (0..witt_index as i64)
        .flat_map(|i| [TateLine::pure(i), TateLine::pure(quadric_dim - i)])
        .collect();
    BigradedSpace::new(lines)
}

/// Φ^E(M̃(X)) for the reduced motive of the projective quadric of `q`.
///
/// M̃(X) is the fibre of the structure map M(X) → ℤ/2. When X has a rational
/// point Φ of that map is onto one (0)[0] line; otherwise Φ(M(X)) = 0 and the
/// fibre is ℤ/2[−1]. The empty quadric follows the second rule.
pub fn phi_projective_reduced(q: &QuadraticForm, member: &FieldDesc) -> Result<BigradedSpace> {
    let full = phi_projective(q, member)?;
    Ok(match full.remove_one(TateLine::new(0, 0)) {
        Some(reduced) => reduced,
        None => full.direct_sum(&BigradedSpace::new(vec![TateLine::new(0, -1)])),
    })
}

/// Φ^E(M̃(A_q)) for the affine quadric A_q = {q = 1}; always a single line.
///
/// Write q_E ≅ n·H ⊥ q_a. If q_a ⊥ ⟨−1⟩ is anisotropic the line is
/// ℤ/2(n)[2n−1]; otherwise it is ℤ/2(m)[2m] with m = n + dim(q_a) − 1.
pub fn phi_affine_reduced(q: &QuadraticForm, member: &FieldDesc) -> Result<TateLine> {
    let qe = q.base_change(member)?;
    let w = witt_decompose(&qe);
    let n = w.witt_index as i64;
    if is_isotropic(&prime_form(&w.kernel)) {
        Ok(TateLine::pure(n + w.kernel.dim() as i64 - 1))
    } else {
        Ok(TateLine::new(n, 2 * n - 1))
    }
}

/// (dim Q, i_W(q_E), i_W(q′_E)) read back from Φ-lines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RecoveredInvariants {
    pub quadric_dim: i64,
    pub witt_index: usize,
    pub witt_index_prime: usize,
}

/// Inverts [`phi_affine_reduced`]: the k̄ line fixes dim Q, the E line fixes the Witt indices.
pub fn recover_invariants(kbar: TateLine, at_e: TateLine) -> Result<RecoveredInvariants> {
    let malformed = |l: TateLine| Error::MalformedLine(l.to_string());
    let form_dim = if kbar.degree == 2 * kbar.twist - 1 {
        2 * kbar.twist
    } else if kbar.degree == 2 * kbar.twist {
        2 * kbar.twist + 1
    } else {
        return Err(malformed(kbar));
    };
    if kbar.twist < 0 {
        return Err(malformed(kbar));
    }
    let quadric_dim = form_dim - 2;
    let (witt_index, witt_index_prime) = if at_e.degree == 2 * at_e.twist - 1 {
        (at_e.twist, at_e.twist)
    } else if at_e.degree == 2 * at_e.twist {
        let i = quadric_dim - at_e.twist + 1;
        (i, i + 1)
    } else {
        return Err(malformed(at_e));
    };
    if witt_index < 0 || 2 * witt_index > form_dim || 2 * witt_index_prime > form_dim + 1 {
        return Err(Error::MalformedLine(format!(
            "{at_e} is inconsistent with dim Q = {quadric_dim}"
        )));
    }
    Ok(RecoveredInvariants {
        quadric_dim,
        witt_index: witt_index as usize,
        witt_index_prime: witt_index_prime as usize,
    })
}

/// Euler-class check of the triangle M̃(A_q) → M̃(Q′) → M(Q)(1)[2] → M̃(A_q)[1] after Φ^E.
pub fn euler_triangle_check(q: &QuadraticForm, member: &FieldDesc) -> Result<bool> {
    let affine = EulerClass::of_line(phi_affine_reduced(q, member)?);
    let reduced_prime = phi_projective_reduced(&prime_form(q), member)?.euler_class();
    let twisted_base = phi_projective(q, member)?.tate_twist(1).euler_class();
    Ok(affine == reduced_prime - twisted_base)
}

/// Outcome of an equivalence pipeline.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum Verdict {
    /// q ≅ p, with the similarity factor λ = 1.
    Isometric { witness: SimilarityWitness },
    /// Every compared invariant agrees on the family. `complete` is true only
    /// where the family is known to decide the question.
    EquivalentOnFamily { family: Vec<FieldDesc>, complete: bool },
    /// A concrete invariant that differs, and the member where it does
    /// (`None` for dimension).
    Distinguished { member: Option<FieldDesc>, invariant: String, left: String, right: String },
    InconclusiveOnFamily { reason: String },
}

impl Verdict {
    pub fn is_distinguished(&self) -> bool {
        matches!(self, Verdict::Distinguished { .. })
    }
}

fn distinguished(member: Option<FieldDesc>, invariant: &str, l: impl ToString, r: impl ToString) -> Verdict {
    Verdict::Distinguished {
        member,
        invariant: invariant.to_string(),
        left: l.to_string(),
        right: r.to_string(),
    }
}

/// Members in the order they are searched for a distinguishing witness:
/// extensions first (their witnesses are local and easy to check), the base last.
fn witness_order(fam: &ExtensionFamily) -> Vec<FieldDesc> {
    let mut order: Vec<FieldDesc> =
        fam.members().iter().copied().filter(|m| *m != fam.base()).collect();
    order.push(fam.base());
    order
}

fn check_fields(q: &QuadraticForm, p: &QuadraticForm, fam: &ExtensionFamily) -> Result<()> {
    if q.field() != p.field() {
        return Err(Error::FieldMismatch(q.field().to_string(), p.field().to_string()));
    }
    if q.field() != fam.base() {
        return Err(Error::FieldMismatch(q.field().to_string(), fam.base().to_string()));
    }
    Ok(())
}

fn family_is_complete(fam: &ExtensionFamily) -> bool {
    match fam.base() {
        FieldDesc::Finite { p, degree } => {
            fam.members().contains(&FieldDesc::Finite { p, degree })
                && fam.members().contains(&FieldDesc::Finite { p, degree: 2 * degree })
        }
        FieldDesc::AlgebraicClosure => true,
        _ => false,
    }
}

/// M(Q) ≅ M(P) criterion: equal dimension and equal i_W over every member.
pub fn motivic_equiv_projective(
    q: &QuadraticForm,
    p: &QuadraticForm,
    fam: &ExtensionFamily,
) -> Result<Verdict> {
    check_fields(q, p, fam)?;
    if q.dim() != p.dim() {
        return Ok(distinguished(None, "dim", q.dim(), p.dim()));
    }
    for m in witness_order(fam) {
        let (a, b) = (crate::witt::witt_index_over(q, &m)?, crate::witt::witt_index_over(p, &m)?);
        if a != b {
            return Ok(distinguished(Some(m), "witt_index", a, b));
        }
    }
    Ok(Verdict::EquivalentOnFamily {
        family: fam.members().to_vec(),
        complete: family_is_complete(fam),
    })
}

/// Decides q ≅ p from affine-quadric motivic data.
///
/// First compares dim and, at every member, (i_W(q_E), i_W(q′_E)) and the
/// Φ-line of M̃(A_q). If all agree, passes to odd dimension (replacing q by q′
/// and q′ by q ⊥ H when dim q is even), takes the only possible similarity
/// factor λ = det(q)·det(p), and accepts only when λ = 1.
pub fn affine_motive_equiv(
    q: &QuadraticForm,
    p: &QuadraticForm,
    fam: &ExtensionFamily,
) -> Result<Verdict> {
    check_fields(q, p, fam)?;
    if q.dim() != p.dim() {
        return Ok(distinguished(None, "dim", q.dim(), p.dim()));
    }
    let (qp, pp) = (prime_form(q), prime_form(p));
    for m in witness_order(fam) {
        let iq = crate::witt::witt_index_over(q, &m)?;
        let ip = crate::witt::witt_index_over(p, &m)?;
        if iq != ip {
            return Ok(distinguished(Some(m), "witt_index", iq, ip));
        }
        let iq = crate::witt::witt_index_over(&qp, &m)?;
        let ip = crate::witt::witt_index_over(&pp, &m)?;
        if iq != ip {
            return Ok(distinguished(Some(m), "witt_index_prime", iq, ip));
        }
        let (lq, lp) = (phi_affine_reduced(q, &m)?, phi_affine_reduced(p, &m)?);
        if lq != lp {
            return Ok(distinguished(Some(m), "phi_affine", lq, lp));
        }
    }

    let field = q.field();
    let plus_one = QuadraticForm::from_ints(field, &[1])?;
    let (odd_q, odd_p) = if q.dim() % 2 == 0 { (qp.clone(), pp.clone()) } else { (q.clone(), p.clone()) };
    let (partner_q, partner_p) = if q.dim() % 2 == 0 {
        (direct_sum(&qp, &plus_one)?, direct_sum(&pp, &plus_one)?)
    } else {
        (qp, pp)
    };
    let lambda = invariants(&odd_q).det.mul(&invariants(&odd_p).det);
    if !isometric(&scale(&odd_q, &lambda.representative())?, &odd_p)? {
        return Ok(Verdict::InconclusiveOnFamily {
            reason: format!(
                "profiles agree on the family but the forms are not similar (candidate λ = {lambda})"
            ),
        });
    }
    let det_q = invariants(&partner_q).det_pm;
    let det_p = invariants(&partner_p).det_pm;
    if !lambda.is_square() {
        return Ok(Verdict::InconclusiveOnFamily {
            reason: format!(
                "similarity factor λ = {lambda} not excluded by the family \
                 (det±(q') = {det_q}, det±(p') = {det_p})"
            ),
        });
    }
    if !isometric(q, p)? {
        return Err(Error::InvariantViolation(format!(
            "λ = 1 similarity between {odd_q} and {odd_p} but {q} and {p} are not isometric"
        )));
    }
    Ok(Verdict::Isometric {
        witness: SimilarityWitness {
            lambda: SquareClass::one(&field),
            scaled: invariants(q),
            target: invariants(p),
            conclusive: true,
        },
    })
}
