//! Diagonal quadratic forms, their classification invariants, and isometry
//! and similarity tests.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{
    hilbert_symbol, mod_inverse, primes_of, residue_mod, square_class, FieldDesc, Place,
    Scalar, SquareClass,
};
use crate::witt::is_isotropic;

/// A nondegenerate diagonal form ⟨a₁,…,aₙ⟩. The empty form is allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QuadraticForm {
    field: FieldDesc,
    diag: Vec<Scalar>,
}

impl QuadraticForm {
    /// Builds a form, reducing entries modulo `p` over finite fields.
    pub fn new(field: FieldDesc, diag: Vec<Scalar>) -> Result<Self> {
        let diag = diag
            .into_iter()
            .map(|a| normalize_entry(a, &field))
            .collect::<Result<Vec<_>>>()?;
        Ok(QuadraticForm { field, diag })
    }

    pub fn from_ints(field: FieldDesc, diag: &[i64]) -> Result<Self> {
        Self::new(field, diag.iter().map(|&a| Scalar::from(a)).collect())
    }

    pub fn empty(field: FieldDesc) -> Self {
        QuadraticForm { field, diag: Vec::new() }
    }

    /// The hyperbolic plane ⟨1, −1⟩.
    pub fn hyperbolic(field: FieldDesc) -> Self {
        Self::from_ints(field, &[1, -1]).expect("1 and -1 are units everywhere")
    }

    pub fn field(&self) -> FieldDesc {
        self.field
    }

    pub fn diag(&self) -> &[Scalar] {
        &self.diag
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Dimension of the projective quadric {q = 0}, i.e. `dim − 2`.
    pub fn quadric_dim(&self) -> i64 {
        self.diag.len() as i64 - 2
    }

    /// Same entries, read over an extension of the base field.
    pub fn base_change(&self, member: &FieldDesc) -> Result<QuadraticForm> {
        if !member.extends(&self.field) {
            return Err(Error::UnknownExtension(member.to_string(), self.field.to_string()));
        }
        QuadraticForm::new(*member, self.diag.clone())
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, a) in self.diag.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "> over {}", self.field)
    }
}

fn normalize_entry(a: Scalar, field: &FieldDesc) -> Result<Scalar> {
    if a.is_zero() {
        return Err(Error::ZeroScalar);
    }
    match field {
        FieldDesc::Finite { p, .. } => {
            let r = residue_mod(&a, *p)?;
            if r == 0 {
                return Err(Error::ZeroScalar);
            }
            Ok(Scalar::from(r as i64))
        }
        _ => Ok(a),
    }
}

/// q′ = q ⊥ ⟨−1⟩, the form whose projective quadric contains the affine quadric {q = 1}.
pub fn prime_form(q: &QuadraticForm) -> QuadraticForm {
    let mut out = q.clone();
    out.diag.push(normalize_entry(Scalar::from(-1), &q.field).expect("-1 is a unit"));
    out
}

pub fn direct_sum(q1: &QuadraticForm, q2: &QuadraticForm) -> Result<QuadraticForm> {
    if q1.field != q2.field {
        return Err(Error::FieldMismatch(q1.field.to_string(), q2.field.to_string()));
    }
    let mut out = q1.clone();
    out.diag.extend(q2.diag.iter().cloned());
    Ok(out)
}

pub fn scale(q: &QuadraticForm, lambda: &Scalar) -> Result<QuadraticForm> {
    if lambda.is_zero() {
        return Err(Error::ZeroScalar);
    }
    QuadraticForm::new(q.field, q.diag.iter().map(|a| a * lambda).collect())
}

/// Diagonalizes a symmetric Gram matrix by congruence.
pub fn diagonalize(gram: &[Vec<Scalar>], field: FieldDesc) -> Result<QuadraticForm> {
    let n = gram.len();
    if gram.iter().any(|row| row.len() != n) {
        return Err(Error::NotSymmetric);
    }
    for i in 0..n {
        for j in 0..i {
            if gram[i][j] != gram[j][i] {
                return Err(Error::NotSymmetric);
            }
        }
    }
    match field {
        FieldDesc::Finite { p, .. } => {
            let m: Vec<Vec<u64>> = gram
                .iter()
                .map(|row| row.iter().map(|a| residue_mod(a, p)).collect::<Result<_>>())
                .collect::<Result<_>>()?;
            let diag = diagonalize_mod(m, p)?;
            QuadraticForm::new(field, diag.into_iter().map(|a| Scalar::from(a as i64)).collect())
        }
        _ => {
            let m: Vec<Vec<BigRational>> = gram
                .iter()
                .map(|row| row.iter().map(|a| a.value().clone()).collect())
                .collect();
            let diag = diagonalize_rational(m)?;
            QuadraticForm::new(field, diag.into_iter().map(Scalar::from_rational).collect())
        }
    }
}

// Symmetric Gaussian elimination; a zero pivot with a nonzero off-diagonal
// entry in its row is repaired by x_k ← x_k + x_j, which needs char ≠ 2.
fn diagonalize_rational(mut m: Vec<Vec<BigRational>>) -> Result<Vec<BigRational>> {
    let n = m.len();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        if m[k][k].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !m[i][i].is_zero()) {
                m.swap(k, i);
                for row in m.iter_mut() {
                    row.swap(k, i);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !m[k][j].is_zero()) {
                for c in 0..n {
                    let v = m[j][c].clone();
                    m[k][c] += v;
                }
                for r in 0..n {
                    let v = m[r][j].clone();
                    m[r][k] += v;
                }
            } else {
                return Err(Error::DegenerateForm);
            }
        }
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &pivot;
            for c in k..n {
                let v = &f * &m[k][c];
                m[i][c] -= v;
            }
            for r in k..n {
                let v = &f * &m[r][k];
                m[r][i] -= v;
            }
        }
        out.push(pivot);
    }
    Ok(out)
}

fn diagonalize_mod(mut m: Vec<Vec<u64>>, p: u64) -> Result<Vec<u64>> {
    let n = m.len();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        if m[k][k] == 0 {
            if let Some(i) = (k + 1..n).find(|&i| m[i][i] != 0) {
                m.swap(k, i);
                for row in m.iter_mut() {
                    row.swap(k, i);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| m[k][j] != 0) {
                for c in 0..n {
                    m[k][c] = (m[k][c] + m[j][c]) % p;
                }
                for r in 0..n {
                    m[r][k] = (m[r][k] + m[r][j]) % p;
                }
            } else {
                return Err(Error::DegenerateForm);
            }
        }
        let inv = mod_inverse(m[k][k], p).expect("nonzero residue");
        for i in k + 1..n {
            if m[i][k] == 0 {
                continue;
            }
            let f = m[i][k] * inv % p;
            for c in k..n {
                m[i][c] = (m[i][c] + p * p - f * m[k][c] % p) % p;
            }
            for r in k..n {
                m[r][i] = (m[r][i] + p * p - f * m[r][k] % p) % p;
            }
        }
        out.push(m[k][k]);
    }
    Ok(out)
}

/// Classification data of a form. Which fields are populated depends on the base field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantTuple {
    pub field: FieldDesc,
    pub dim: usize,
    pub det: SquareClass,
    /// Signed determinant (−1)^{n(n−1)/2}·det, a Witt-class invariant.
    pub det_pm: SquareClass,
    /// Hasse invariants ∏_{i<j}(aᵢ,aⱼ)_v; places not listed have value +1.
    pub hasse: BTreeMap<Place, i8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signature: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disc: Option<SquareClass>,
}

impl InvariantTuple {
    pub fn hasse_at(&self, place: Place) -> i8 {
        self.hasse.get(&place).copied().unwrap_or(1)
    }

    /// Invariants of the form obtained by splitting off one hyperbolic plane.
    pub(crate) fn strip_hyperbolic(&self) -> InvariantTuple {
        assert!(self.dim >= 2, "cannot strip a hyperbolic plane from dim {}", self.dim);
        let minus_one = square_class(&Scalar::from(-1), &self.field).expect("-1 is a unit");
        let det = self.det.mul(&minus_one);
        let dim = self.dim - 2;
        let d1 = det.representative();
        let hasse = self
            .hasse
            .iter()
            .map(|(&v, &c)| {
                let s = hilbert_symbol(&d1, &Scalar::from(-1), v).expect("nonzero");
                (v, c * s)
            })
            .collect();
        InvariantTuple {
            field: self.field,
            dim,
            det_pm: signed_det(&det, dim, &self.field),
            disc: self.disc.as_ref().map(|_| det.clone()),
            det,
            hasse,
            signature: self.signature.map(|(p, n)| (p - 1, n - 1)),
        }
    }

    /// Equality as classification data (missing Hasse entries count as +1).
    pub fn same_class(&self, other: &InvariantTuple) -> bool {
        if self.field != other.field || self.dim != other.dim {
            return false;
        }
        match self.field {
            FieldDesc::AlgebraicClosure => true,
            FieldDesc::Reals => self.signature == other.signature,
            FieldDesc::Finite { .. } => self.det == other.det,
            FieldDesc::Padic(_) | FieldDesc::Rationals => {
                self.det == other.det
                    && self.signature == other.signature
                    && self
                        .hasse
                        .keys()
                        .chain(other.hasse.keys())
                        .all(|&v| self.hasse_at(v) == other.hasse_at(v))
            }
        }
    }
}

fn signed_det(det: &SquareClass, dim: usize, field: &FieldDesc) -> SquareClass {
    if (dim * dim.saturating_sub(1) / 2) % 2 == 1 {
        det.mul(&square_class(&Scalar::from(-1), field).expect("-1 is a unit"))
    } else {
        det.clone()
    }
}

/// Places at which the invariants of `q` can differ from those of the split form.
///
/// Over ℚ this is {ℝ, ℚ₂} together with every prime dividing the squarefree
/// part of some entry; Hilbert symbols of the entries are +1 everywhere else.
pub fn relevant_places(q: &QuadraticForm) -> Vec<Place> {
    match q.field {
        FieldDesc::Rationals => {
            let mut places = vec![Place::Real, Place::Prime(2)];
            places.extend(primes_of(&q.diag).into_iter().filter(|&p| p != 2).map(Place::Prime));
            places
        }
        FieldDesc::Reals => vec![Place::Real],
        FieldDesc::Padic(p) => vec![Place::Prime(p)],
        _ => Vec::new(),
    }
}

pub fn invariants(q: &QuadraticForm) -> InvariantTuple {
    let field = q.field;
    let one = SquareClass::one(&field);
    let det = q
        .diag
        .iter()
        .map(|a| square_class(a, &field).expect("entries are nonzero"))
        .fold(one, |acc, c| acc.mul(&c));
    let places = relevant_places(q);
    let hasse = if matches!(field, FieldDesc::Rationals | FieldDesc::Padic(_)) {
        places
            .iter()
            .map(|&v| {
                // c(q ⊥ ⟨a⟩) = c(q)·(det q, a)
                let mut c = 1i8;
                let mut running = Scalar::one();
                for a in &q.diag {
                    c *= hilbert_symbol(&running, a, v).expect("nonzero");
                    running = &running * a;
                }
                (v, c)
            })
            .collect()
    } else {
        BTreeMap::new()
    };
    let signature = match field {
        FieldDesc::Rationals | FieldDesc::Reals => {
            let neg = q.diag.iter().filter(|a| a.is_negative()).count();
            Some((q.dim() - neg, neg))
        }
        _ => None,
    };
    InvariantTuple {
        field,
        dim: q.dim(),
        det_pm: signed_det(&det, q.dim(), &field),
        disc: matches!(field, FieldDesc::Finite { .. }).then(|| det.clone()),
        det,
        hasse,
        signature,
    }
}

pub fn isometric(q1: &QuadraticForm, q2: &QuadraticForm) -> Result<bool> {
    if q1.field != q2.field {
        return Err(Error::FieldMismatch(q1.field.to_string(), q2.field.to_string()));
    }
    Ok(invariants(q1).same_class(&invariants(q2)))
}

/// Whether `q` takes the value `c` on some vector.
pub fn represents(q: &QuadraticForm, c: &Scalar) -> Result<bool> {
    if c.is_zero() {
        return Err(Error::ZeroScalar);
    }
    match q.dim() {
        0 => Ok(false),
        1 => Ok(square_class(&q.diag[0], &q.field)? == square_class(c, &q.field)?),
        _ => {
            let minus_c = QuadraticForm::new(q.field, vec![-c])?;
            Ok(is_isotropic(&direct_sum(q, &minus_c)?))
        }
    }
}

/// Evidence that λ·q ≅ p.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimilarityWitness {
    pub lambda: SquareClass,
    pub scaled: InvariantTuple,
    pub target: InvariantTuple,
    /// False when the search came from the (incomplete) even-dimensional candidate set.
    pub conclusive: bool,
}

/// Finds a square class λ with λ·q ≅ p.
///
/// In odd dimension λⁿ ~ λ forces λ = det(p)·det(q), so a `None` is conclusive.
/// In even dimension only the candidates {1} ∪ {pᵢ·qⱼ} are tried.
pub fn similar_factor(q: &QuadraticForm, p: &QuadraticForm) -> Result<Option<SimilarityWitness>> {
    if q.field != p.field {
        return Err(Error::FieldMismatch(q.field.to_string(), p.field.to_string()));
    }
    if q.dim() != p.dim() {
        return Err(Error::DimMismatch(q.dim(), p.dim()));
    }
    let field = q.field;
    let target = invariants(p);
    let odd = q.dim() % 2 == 1;
    let candidates: Vec<SquareClass> = if odd {
        vec![invariants(q).det.mul(&target.det)]
    } else {
        let mut c = vec![SquareClass::one(&field)];
        for a in &p.diag {
            for b in &q.diag {
                let class = square_class(&(a * b), &field)?;
                if !c.contains(&class) {
                    c.push(class);
                }
            }
        }
        c
    };
    for lambda in candidates {
        let scaled = invariants(&scale(q, &lambda.representative())?);
        if scaled.same_class(&target) {
            return Ok(Some(SimilarityWitness { lambda, scaled, target, conclusive: odd }));
        }
    }
    Ok(None)
}
