//! Field descriptors, exact scalars, square classes and local symbols.
//!
//! Every scalar is an exact rational. A [`FieldDesc`] decides how that
//! rational is read: as itself over ℚ and ℝ, through its valuation and unit
//! residue over ℚ_p, and as a residue modulo `p` over a finite field.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// The base fields (and extension members) the library knows how to handle.
///
/// `Finite { p, degree }` is F_{p^degree}; forms over it always carry
/// coefficients from the prime field F_p, which is all that base change
/// from F_p ever produces. `AlgebraicClosure` is the formal k̄ member over
/// which every form splits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldDesc {
    Rationals,
    Reals,
    Padic(u64),
    Finite { p: u64, degree: u32 },
    AlgebraicClosure,
}

impl FieldDesc {
    pub fn finite(p: u64) -> Result<Self> {
        Self::finite_extension(p, 1)
    }

    pub fn finite_extension(p: u64, degree: u32) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        if degree == 0 {
            return Err(Error::Parse("finite field degree must be positive".into()));
        }
        Ok(FieldDesc::Finite { p, degree })
    }

    pub fn padic(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(FieldDesc::Padic(p))
    }

    /// Whether `self` is a field extension of `base` the library can base-change into.
    pub fn extends(&self, base: &FieldDesc) -> bool {
        use FieldDesc::*;
        match (base, self) {
            (_, AlgebraicClosure) => true,
            (Rationals, Rationals | Reals | Padic(_)) => true,
            (Reals, Reals) => true,
            (Padic(p), Padic(r)) => p == r,
            (Finite { p, degree }, Finite { p: r, degree: e }) => p == r && e % degree == 0,
            _ => false,
        }
    }

    /// Parses a family member name: `Q`, `R`, `Q_5`, `F_3`, `F_3^2`, `kbar`.
    pub fn parse_member(s: &str) -> Result<Self> {
        s.parse()
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDesc::Rationals => write!(f, "Q"),
            FieldDesc::Reals => write!(f, "R"),
            FieldDesc::Padic(p) => write!(f, "Q_{p}"),
            FieldDesc::Finite { p, degree: 1 } => write!(f, "F_{p}"),
            FieldDesc::Finite { p, degree } => write!(f, "F_{p}^{degree}"),
            FieldDesc::AlgebraicClosure => write!(f, "kbar"),
        }
    }
}

impl FromStr for FieldDesc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unknown field member `{s}`"));
        match s {
            "Q" => return Ok(FieldDesc::Rationals),
            "R" => return Ok(FieldDesc::Reals),
            "kbar" => return Ok(FieldDesc::AlgebraicClosure),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("Q_") {
            let p = rest.parse().map_err(|_| bad())?;
            return FieldDesc::padic(p);
        }
        if let Some(rest) = s.strip_prefix("F_") {
            let (p, d) = match rest.split_once('^') {
                Some((p, d)) => (p, d.parse().map_err(|_| bad())?),
                None => (rest, 1),
            };
            return FieldDesc::finite_extension(p.parse().map_err(|_| bad())?, d);
        }
        Err(bad())
    }
}

impl Serialize for FieldDesc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// An exact scalar. Over finite fields the rational is read modulo `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Scalar(BigRational::new(num.into(), den)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar(r)
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Scalar(BigRational::from_integer(n.into()))
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::integer(n)
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar(&self.0 * &rhs.0)
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid scalar `{s}`"));
        match s.split_once('/') {
            Some((n, d)) => Scalar::new(
                n.trim().parse::<BigInt>().map_err(|_| bad())?,
                d.trim().parse::<BigInt>().map_err(|_| bad())?,
            ),
            None => Ok(Scalar::integer(s.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A completion of ℚ at which Hilbert symbols are evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Real,
    Prime(u64),
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Real, Place::Real) => Ordering::Equal,
            (Place::Real, Place::Prime(_)) => Ordering::Less,
            (Place::Prime(_), Place::Real) => Ordering::Greater,
            (Place::Prime(p), Place::Prime(q)) => p.cmp(q),
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "R"),
            Place::Prime(p) => write!(f, "Q_{p}"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A class in k*/(k*)², stored by its canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SquareClass {
    /// Squarefree integer.
    Rational(BigInt),
    /// +1 or -1.
    Real(i8),
    /// 1 or the least quadratic nonresidue mod `p` (always 1 for even degree).
    Finite { p: u64, degree: u32, rep: u64 },
    /// Unit class (1 or ε for odd p, a residue in {1,3,5,7} for p = 2) and valuation parity.
    Padic { p: u64, unit: u64, odd_valuation: bool },
    /// The only class over an algebraically closed field.
    Trivial,
}

impl SquareClass {
    pub fn one(field: &FieldDesc) -> SquareClass {
        square_class(&Scalar::one(), field).expect("1 is a unit in every field")
    }

    pub fn is_square(&self) -> bool {
        match self {
            SquareClass::Rational(n) => n.is_one(),
            SquareClass::Real(s) => *s == 1,
            SquareClass::Finite { rep, .. } => *rep == 1,
            SquareClass::Padic { unit, odd_valuation, .. } => *unit == 1 && !odd_valuation,
            SquareClass::Trivial => true,
        }
    }

    /// Product of two classes of the same field, re-canonicalized.
    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        use SquareClass::*;
        match (self, other) {
            (Rational(a), Rational(b)) => {
                let g = a.gcd(b);
                Rational((a * b) / (&g * &g))
            }
            (Real(a), Real(b)) => Real(a * b),
            (Finite { p, degree, rep: a }, Finite { rep: b, .. }) => {
                let rep = if *a == *b { 1 } else { (*a).max(*b) };
                Finite { p: *p, degree: *degree, rep }
            }
            (
                Padic { p, unit: u1, odd_valuation: v1 },
                Padic { unit: u2, odd_valuation: v2, .. },
            ) => {
                let unit = if *p == 2 {
                    (u1 * u2) % 8
                } else if u1 == u2 {
                    1
                } else {
                    (*u1).max(*u2)
                };
                Padic { p: *p, unit, odd_valuation: v1 ^ v2 }
            }
            (Trivial, Trivial) => Trivial,
            (a, b) => panic!("square classes from different fields: {a:?} * {b:?}"),
        }
    }

    /// The canonical representative as a scalar.
    pub fn representative(&self) -> Scalar {
        match self {
            SquareClass::Rational(n) => Scalar::integer(n.clone()),
            SquareClass::Real(s) => Scalar::from(*s as i64),
            SquareClass::Finite { rep, .. } => Scalar::from(*rep as i64),
            SquareClass::Padic { p, unit, odd_valuation } => {
                let u = if *p == 2 && *unit == 7 { -1 } else { *unit as i64 };
                if *odd_valuation {
                    Scalar::from(u * *p as i64)
                } else {
                    Scalar::from(u)
                }
            }
            SquareClass::Trivial => Scalar::one(),
        }
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.representative())
    }
}

impl Serialize for SquareClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u128 % m as u128;
    let mut b = base as u128 % m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m as u128;
        }
        b = b * b % m as u128;
        exp >>= 1;
    }
    acc as u64
}

pub(crate) fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (g, x, _) = ext_gcd(a as i128 % m as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as u64)
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}

fn big_mod(a: &BigInt, m: u64) -> u64 {
    a.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits in u64")
}

/// Least positive quadratic nonresidue modulo an odd prime.
pub fn least_nonresidue(p: u64) -> u64 {
    (2..p)
        .find(|&a| mod_pow(a, (p - 1) / 2, p) == p - 1)
        .expect("odd primes have nonresidues")
}

/// Legendre symbol (a/p) for an odd prime `p`.
pub fn legendre_symbol(a: &BigInt, p: u64) -> Result<i8> {
    if p < 3 || !is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    Ok(legendre_u64(big_mod(a, p), p))
}

pub(crate) fn legendre_u64(a: u64, p: u64) -> i8 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if mod_pow(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Reads a rational as an element of F_p.
pub fn residue_mod(a: &Scalar, p: u64) -> Result<u64> {
    let den = big_mod(a.denom(), p);
    let inv = mod_inverse(den, p)
        .ok_or_else(|| Error::NotInField(a.to_string(), format!("F_{p}")))?;
    Ok((big_mod(a.numer(), p) as u128 * inv as u128 % p as u128) as u64)
}

/// p-adic valuation of a nonzero integer together with the cofactor.
pub(crate) fn int_valuation(n: &BigInt, p: u64) -> (i64, BigInt) {
    let pb = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return (v, n);
        }
        n = q;
        v += 1;
    }
}

/// Valuation and unit residue (mod `p` for odd `p`, mod 8 for `p = 2`) of a nonzero rational.
pub(crate) fn padic_parts(a: &Scalar, p: u64) -> (i64, u64) {
    let (vn, un) = int_valuation(a.numer(), p);
    let (vd, ud) = int_valuation(a.denom(), p);
    let m = if p == 2 { 8 } else { p };
    let n = big_mod(&un, m);
    let d = big_mod(&ud, m);
    let inv = mod_inverse(d, m).expect("unit part is invertible");
    (vn - vd, (n as u128 * inv as u128 % m as u128) as u64)
}

/// Prime factorization of |n| by trial division.
pub(crate) fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    if let Some(small) = n.to_u64() {
        let mut m = small;
        let mut d = 2u64;
        while d.saturating_mul(d) <= m {
            let mut e = 0;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            if e > 0 {
                out.push((BigInt::from(d), e));
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if m > 1 {
            out.push((BigInt::from(m), 1));
        }
        return out;
    }
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        let mut e = 0;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += 1;
    }
    if !n.is_one() {
        out.push((n, 1));
    }
    out
}

/// Signed squarefree part of a nonzero integer.
pub(crate) fn squarefree_part(n: &BigInt) -> BigInt {
    let mut out = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    for (prime, e) in factorize(n) {
        if e % 2 == 1 {
            out *= prime;
        }
    }
    out
}

/// Canonical square class of a nonzero scalar over `field`.
pub fn square_class(a: &Scalar, field: &FieldDesc) -> Result<SquareClass> {
    if a.is_zero() {
        return Err(Error::ZeroScalar);
    }
    match *field {
        FieldDesc::Rationals => Ok(SquareClass::Rational(squarefree_part(
            &(a.numer() * a.denom()),
        ))),
        FieldDesc::Reals => Ok(SquareClass::Real(if a.is_negative() { -1 } else { 1 })),
        FieldDesc::Finite { p, degree } => {
            let r = residue_mod(a, p)?;
            if r == 0 {
                return Err(Error::ZeroScalar);
            }
            let rep = if degree % 2 == 0 || legendre_u64(r, p) == 1 {
                1
            } else {
                least_nonresidue(p)
            };
            Ok(SquareClass::Finite { p, degree, rep })
        }
        FieldDesc::Padic(p) => {
            let (v, u) = padic_parts(a, p);
            let unit = if p == 2 {
                u
            } else if legendre_u64(u, p) == 1 {
                1
            } else {
                least_nonresidue(p)
            };
            Ok(SquareClass::Padic { p, unit, odd_valuation: v.rem_euclid(2) == 1 })
        }
        FieldDesc::AlgebraicClosure => Ok(SquareClass::Trivial),
    }
}

/// Hilbert symbol (a, b)_v at the real place or at a prime.
pub fn hilbert_symbol(a: &Scalar, b: &Scalar, place: Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroScalar);
    }
    match place {
        Place::Real => Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Prime(p) => {
            if !is_prime(p) {
                return Err(Error::InvalidPrime(p));
            }
            let (alpha, u) = padic_parts(a, p);
            let (beta, v) = padic_parts(b, p);
            let (alpha, beta) = (alpha.rem_euclid(2) as u64, beta.rem_euclid(2) as u64);
            if p == 2 {
                let eps = |x: u64| ((x - 1) / 2) % 2;
                let omega = |x: u64| ((x * x - 1) / 8) % 2;
                let e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
                Ok(if e % 2 == 0 { 1 } else { -1 })
            } else {
                let mut s: i8 = if (alpha * beta * ((p - 1) / 2)) % 2 == 1 { -1 } else { 1 };
                if beta == 1 {
                    s *= legendre_u64(u, p);
                }
                if alpha == 1 {
                    s *= legendre_u64(v, p);
                }
                Ok(s)
            }
        }
    }
}

/// Primes dividing the squarefree part of any of the given scalars.
pub(crate) fn primes_of(entries: &[Scalar]) -> Vec<u64> {
    let mut primes: Vec<u64> = entries
        .iter()
        .flat_map(|a| factorize(&squarefree_part(&(a.numer() * a.denom()))))
        .filter_map(|(p, _)| p.to_u64())
        .collect();
    primes.sort_unstable();
    primes.dedup();
    primes
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from(n)
    }

    #[test]
    fn square_class_examples() {
        let q = FieldDesc::Rationals;
        assert_eq!(square_class(&s(4), &q).unwrap(), SquareClass::Rational(1.into()));
        assert_eq!(square_class(&s(-8), &q).unwrap(), SquareClass::Rational((-2).into()));
        let f3 = FieldDesc::finite(3).unwrap();
        assert_eq!(
            square_class(&s(2), &f3).unwrap(),
            SquareClass::Finite { p: 3, degree: 1, rep: 2 }
        );
        assert_eq!(square_class(&s(0), &q), Err(Error::ZeroScalar));
        assert_eq!(square_class(&s(3), &f3), Err(Error::ZeroScalar));
    }

    #[test]
    fn square_class_of_fraction() {
        let q = FieldDesc::Rationals;
        let a = Scalar::new(3, 12).unwrap();
        assert!(square_class(&a, &q).unwrap().is_square());
        let b: Scalar = "5/2".parse().unwrap();
        assert_eq!(square_class(&b, &q).unwrap(), SquareClass::Rational(10.into()));
    }

    #[test]
    fn padic_two_classes() {
        let q2 = FieldDesc::Padic(2);
        let c = square_class(&s(-12), &q2).unwrap();
        assert_eq!(c, SquareClass::Padic { p: 2, unit: 5, odd_valuation: false });
        assert!(square_class(&s(17), &q2).unwrap().is_square());
        assert!(square_class(&s(-7), &q2).unwrap().is_square());
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_symbol(&1.into(), 7).unwrap(), 1);
        assert_eq!(legendre_symbol(&2.into(), 5).unwrap(), -1);
        assert_eq!(legendre_symbol(&10.into(), 5).unwrap(), 0);
        assert_eq!(legendre_symbol(&(-1).into(), 4), Err(Error::InvalidPrime(4)));
        assert_eq!(legendre_symbol(&(-1).into(), 2), Err(Error::InvalidPrime(2)));
    }

    #[test]
    fn legendre_matches_squaring_below_100() {
        for p in (3..100).filter(|&p| is_prime(p)) {
            let squares: Vec<u64> = (1..p).map(|x| x * x % p).collect();
            for a in -3 * p as i64..3 * p as i64 {
                let r = a.rem_euclid(p as i64) as u64;
                let expected = if r == 0 {
                    0
                } else if squares.contains(&r) {
                    1
                } else {
                    -1
                };
                assert_eq!(legendre_symbol(&a.into(), p).unwrap(), expected, "({a}/{p})");
            }
        }
    }

    #[test]
    fn hilbert_examples() {
        for place in [Place::Real, Place::Prime(2), Place::Prime(3), Place::Prime(5)] {
            assert_eq!(hilbert_symbol(&s(1), &s(-7), place).unwrap(), 1);
        }
        assert_eq!(hilbert_symbol(&s(-1), &s(-1), Place::Real).unwrap(), -1);
        assert_eq!(hilbert_symbol(&s(2), &s(5), Place::Prime(5)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&s(-1), &s(-1), Place::Prime(2)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&s(0), &s(1), Place::Real), Err(Error::ZeroScalar));
    }

    #[test]
    fn square_class_products_recanonicalize() {
        let fields = [
            FieldDesc::Rationals,
            FieldDesc::Reals,
            FieldDesc::Padic(2),
            FieldDesc::Padic(3),
            FieldDesc::finite(7).unwrap(),
        ];
        for f in &fields {
            for a in [-30i64, -6, -1, 2, 3, 5, 12, 45] {
                for b in [-10i64, -3, 1, 6, 11, 18] {
                    let ca = square_class(&s(a), f).unwrap();
                    let cb = square_class(&s(b), f).unwrap();
                    let direct = square_class(&s(a * b), f).unwrap();
                    assert_eq!(ca.mul(&cb), direct, "{a}*{b} over {f}");
                    let again = square_class(&ca.representative(), f).unwrap();
                    assert_eq!(again, ca, "idempotent for {a} over {f}");
                }
            }
        }
    }

    #[test]
    fn member_names_round_trip() {
        for name in ["Q", "R", "Q_2", "Q_7", "F_3", "F_5^2", "kbar"] {
            let f: FieldDesc = name.parse().unwrap();
            assert_eq!(f.to_string(), name);
        }
        assert!("F_2".parse::<FieldDesc>().is_err());
        assert!("Q_9".parse::<FieldDesc>().is_err());
    }
}
