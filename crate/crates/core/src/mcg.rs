//! Mapping classes of the torus as integer matrices of determinant one,
//! taken modulo `±I`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::exact;
use crate::hyp2::{BoundaryPoint, Geodesic, Mobius};
use crate::torus_model::Slope;

/// Dynamical type of a class, decided by `|trace|` against 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Elliptic,
    Parabolic,
    PseudoAnosov,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Elliptic => "elliptic",
            Classification::Parabolic => "parabolic",
            Classification::PseudoAnosov => "pseudo_anosov",
        })
    }
}

/// `[[a, b], [c, d]]` with `ad - bc = 1`, sign-normalized so that the first
/// nonzero entry is positive. Equality is projective equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MappingClass {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl MappingClass {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        let (a, b, c, d) = (a.into(), b.into(), c.into(), d.into());
        if &a * &d - &b * &c != BigInt::one() {
            return Err(Error::InvalidInput(format!("determinant of {a},{b},{c},{d} is not 1")));
        }
        Ok(Self::canonical(a, b, c, d))
    }

    fn canonical(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        let first = [&a, &b, &c, &d].into_iter().find(|v| !v.is_zero()).expect("det 1 matrix is nonzero");
        if first.is_negative() {
            MappingClass { a: -a, b: -b, c: -c, d: -d }
        } else {
            MappingClass { a, b, c, d }
        }
    }

    pub fn identity() -> Self {
        MappingClass { a: BigInt::one(), b: BigInt::zero(), c: BigInt::zero(), d: BigInt::one() }
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// Trace of the canonical representative; only `|trace|` is projective.
    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn abs_trace(&self) -> BigInt {
        self.trace().abs()
    }

    pub fn inverse(&self) -> Self {
        Self::canonical(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    pub fn pow(&self, n: u64) -> Self {
        let mut result = Self::identity();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        result
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_one()
    }

    /// `m1 m2 m1⁻¹ m2⁻¹`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(&(self * other) * &self.inverse()) * &other.inverse()
    }

    pub fn conjugate_by(&self, g: &Self) -> Self {
        &(g * self) * &g.inverse()
    }

    pub fn classify(&self) -> Classification {
        let t = self.abs_trace();
        let two = BigInt::from(2);
        match t.cmp(&two) {
            std::cmp::Ordering::Less => Classification::Elliptic,
            std::cmp::Ordering::Equal => Classification::Parabolic,
            std::cmp::Ordering::Greater => Classification::PseudoAnosov,
        }
    }

    pub fn require_pseudo_anosov(&self) -> Result<()> {
        match self.classify() {
            Classification::PseudoAnosov => Ok(()),
            class => Err(Error::NotPseudoAnosov { class, matrix: self.to_string() }),
        }
    }

    /// Floating point action on the upper half-plane. Entries beyond the
    /// `f64` range are rescaled by a common power of two first.
    pub fn to_mobius(&self) -> Mobius {
        let max_bits = [&self.a, &self.b, &self.c, &self.d].iter().map(|v| v.bits()).max().unwrap_or(0);
        let shift = max_bits.saturating_sub(900);
        let f = |v: &BigInt| (v >> shift).to_f64().expect("rescaled entry fits");
        Mobius::normalized(f(&self.a), f(&self.b), f(&self.c), f(&self.d)).expect("integer matrix with det 1")
    }

    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::InvalidInput(format!("matrix '{s}' must have four comma separated entries")));
        }
        let mut v = Vec::with_capacity(4);
        for p in parts {
            let n = BigInt::from_str(p).map_err(|_| Error::InvalidInput(format!("matrix entry '{p}' is not an integer")))?;
            v.push(n);
        }
        let d = v.pop().unwrap();
        let c = v.pop().unwrap();
        let b = v.pop().unwrap();
        let a = v.pop().unwrap();
        Self::new(a, b, c, d)
    }

    /// Coefficients `(c, d - a, -b)` of the fixed point quadratic
    /// `c x² + (d - a) x - b = 0`.
    pub fn fixed_point_quadratic(&self) -> [BigInt; 3] {
        [self.c.clone(), &self.d - &self.a, -&self.b]
    }
}

impl fmt::Display for MappingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.a, self.b, self.c, self.d)
    }
}

impl FromStr for MappingClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl std::ops::Mul for &MappingClass {
    type Output = MappingClass;
    fn mul(self, o: &MappingClass) -> MappingClass {
        MappingClass::canonical(
            &self.a * &o.a + &self.b * &o.c,
            &self.a * &o.b + &self.b * &o.d,
            &self.c * &o.a + &self.d * &o.c,
            &self.c * &o.b + &self.d * &o.d,
        )
    }
}

impl serde::Serialize for MappingClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub fn classify(m: &MappingClass) -> Classification {
    m.classify()
}

/// The invariant geodesic of a pseudo-Anosov class.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisData {
    /// Oriented from the repelling to the attracting fixed point, based at
    /// the summit of the semicircle.
    pub axis: Geodesic,
    pub repelling: BoundaryPoint,
    pub attracting: BoundaryPoint,
    /// `Tr = log λ`.
    pub translation: f64,
    /// The eigenvalue `λ > 1`.
    pub dilatation: f64,
}

pub fn axis(m: &MappingClass) -> Result<AxisData> {
    m.require_pseudo_anosov()?;
    let [a, b, c, d] = m.entries().map(|v| v.to_f64().unwrap_or(f64::NAN));
    let tr = m.trace();
    let (attracting, repelling) = if a.is_finite() && b.is_finite() && c.is_finite() && d.is_finite() && tr.bits() < 500 {
        fixed_points_f64(a, b, c, d, tr.is_negative())
    } else {
        fixed_points_scaled(m)
    };
    // integer pseudo-Anosov matrices have c != 0, so both endpoints are finite
    let axis = Geodesic::from_endpoints(BoundaryPoint::Finite(repelling), BoundaryPoint::Finite(attracting))?;
    let translation = translation_distance(m)?;
    Ok(AxisData {
        axis,
        repelling: BoundaryPoint::Finite(repelling),
        attracting: BoundaryPoint::Finite(attracting),
        translation,
        dilatation: translation.exp(),
    })
}

/// Roots of `c x² + (d - a) x - b`. The attracting root is the eigenvector
/// `(x, 1)` with eigenvalue `(tr + sgn(tr)·√Δ)/2`, i.e. the root taking the
/// sign of the trace in the quadratic formula.
fn fixed_points_f64(a: f64, b: f64, c: f64, d: f64, negative_trace: bool) -> (f64, f64) {
    let bq = d - a;
    let disc = ((a + d) * (a + d) - 4.0).max(0.0).sqrt();
    let s = if negative_trace { -1.0 } else { 1.0 };
    // root_s = ((a - d) + s·√Δ)/(2c); evaluate the non-cancelling one directly
    let attracting_direct = (-bq + s * disc) / (2.0 * c);
    let repelling_direct = (-bq - s * disc) / (2.0 * c);
    // product of roots is -b/c
    let prod = -b / c;
    if (-bq) * s >= 0.0 {
        (attracting_direct, if attracting_direct != 0.0 { prod / attracting_direct } else { repelling_direct })
    } else {
        (if repelling_direct != 0.0 { prod / repelling_direct } else { attracting_direct }, repelling_direct)
    }
}

fn fixed_points_scaled(m: &MappingClass) -> (f64, f64) {
    let [a, b, c, d] = m.entries();
    let max_bits = [a, b, c, d].iter().map(|v| v.bits()).max().unwrap_or(0);
    let shift = max_bits.saturating_sub(500);
    let f = |v: &BigInt| (v >> shift).to_f64().unwrap();
    let (fa, fb, fc, fd) = (f(a), f(b), f(c), f(d));
    let tr = fa + fd;
    // det is ~4^-shift after scaling; the discriminant is tr² - 4 det ≈ tr²
    let det = fa * fd - fb * fc;
    let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
    let s = if m.trace().is_negative() { -1.0 } else { 1.0 };
    let bq = fd - fa;
    let att = (-bq + s * disc) / (2.0 * fc);
    let rep = (-bq - s * disc) / (2.0 * fc);
    (att, rep)
}

/// `Tr = log λ = arccosh(|trace|/2)`.
pub fn translation_distance(m: &MappingClass) -> Result<f64> {
    m.require_pseudo_anosov()?;
    let t = m.abs_trace();
    Ok(match t.to_f64() {
        Some(v) if v < 1e150 => (0.5 * v).acosh(),
        _ => exact::ln_bigint(&t),
    })
}

/// Whether two pseudo-Anosov classes have disjoint fixed point sets.
///
/// Decided by the exact commutator; cross-checked against proportionality
/// of the fixed point quadratics (equal axes). Irreducible integer quadratics
/// share both roots or none, so a mismatch means a one-point intersection,
/// which is reported instead of classified.
pub fn independent(m1: &MappingClass, m2: &MappingClass) -> Result<bool> {
    m1.require_pseudo_anosov()?;
    m2.require_pseudo_anosov()?;
    let commute = m1.commutator(m2).is_identity();
    let [p0, p1, p2] = m1.fixed_point_quadratic();
    let [q0, q1, q2] = m2.fixed_point_quadratic();
    let proportional =
        (&p0 * &q1 - &p1 * &q0).is_zero() && (&p0 * &q2 - &p2 * &q0).is_zero() && (&p1 * &q2 - &p2 * &q1).is_zero();
    if commute != proportional {
        return Err(Error::FixedPointDichotomy(m1.to_string(), m2.to_string()));
    }
    Ok(!commute)
}

pub fn require_independent(m1: &MappingClass, m2: &MappingClass) -> Result<()> {
    if independent(m1, m2)? {
        Ok(())
    } else {
        Err(Error::NotIndependent(m1.to_string(), m2.to_string()))
    }
}

/// Smallest translation distance in the group: `log((3 + √5)/2)`, realized
/// by trace 3.
pub fn min_translation() -> f64 {
    1.5f64.acosh()
}

/// The slope fixed by a parabolic class (the identity fixes `1/0` by
/// convention), `None` otherwise.
///
/// Slopes transform by the conjugated matrix `J m J`, `J = diag(1, -1)`
/// (see [`crate::torus_model::act_on_slope`]), so this is the eigenvector of
/// that matrix.
pub fn fixed_slope_test(m: &MappingClass) -> Option<Slope> {
    if m.abs_trace() != BigInt::from(2) {
        return None;
    }
    let eps = if m.trace().is_negative() { -BigInt::one() } else { BigInt::one() };
    let [a, b, c, d] = m.entries();
    // kernel of [[a - ε, -b], [-c, d - ε]]
    let (p, q) = if !(a - &eps).is_zero() || !b.is_zero() {
        (b.clone(), a - &eps)
    } else if !c.is_zero() || !(d - &eps).is_zero() {
        (d - &eps, c.clone())
    } else {
        (BigInt::one(), BigInt::zero())
    };
    let g = p.gcd(&q);
    let (p, q) = (p / &g, q / &g);
    Slope::from_any_sign(p.to_i64()?, q.to_i64()?).ok()
}

/// A random pseudo-Anosov class with `3 <= |trace| <= max_trace`, built as
/// a random product of the elementary generators and rejected until the
/// trace lands in range.
pub fn random_pseudo_anosov<R: Rng + ?Sized>(rng: &mut R, max_trace: u64) -> MappingClass {
    assert!(max_trace >= 3);
    let u = MappingClass::new(1, 1, 0, 1).unwrap();
    let l = MappingClass::new(1, 0, 1, 1).unwrap();
    let gens = [u.clone(), u.inverse(), l.clone(), l.inverse()];
    loop {
        let len = rng.gen_range(2..=8);
        let mut m = MappingClass::identity();
        for _ in 0..len {
            m = &m * &gens[rng.gen_range(0..4)];
        }
        let t = m.abs_trace();
        if t >= BigInt::from(3) && t <= BigInt::from(max_trace) {
            return m;
        }
    }
}
