//! Curves on the torus and their lengths over the model plane.
//!
//! A slope `p/q` is the curve in the homology class `(p, q)`; on the flat
//! unit-area torus `C / (Z + τZ)` (rescaled) its geodesic length is
//! `|p + qτ| / √(Im τ)`, and its extremal length is the square of that.
//! These are flat lengths, not hyperbolic ones: Wolpert's inequality holds
//! for them with the single exponent `e^d`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact;
use crate::hyp2::{dist, Point};
use crate::mcg::{self, MappingClass};
use crate::numeric::golden_min;

/// A primitive pair `(p, q)` in canonical sign: `q > 0`, or `(1, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    /// Rejects anything that is not already primitive and canonical.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if q < 0 || (q == 0 && p != 1) {
            return Err(Error::InvalidInput(format!("slope {p}/{q} is not in canonical sign")));
        }
        if p.gcd(&q) != 1 {
            return Err(Error::InvalidInput(format!("slope {p}/{q} is not primitive")));
        }
        Ok(Slope { p, q })
    }

    /// Accepts either sign of a primitive pair.
    pub fn from_any_sign(p: i64, q: i64) -> Result<Self> {
        if q < 0 || (q == 0 && p < 0) {
            Slope::new(p.checked_neg().ok_or_else(overflow)?, q.checked_neg().ok_or_else(overflow)?)
        } else {
            Slope::new(p, q)
        }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }
}

fn overflow() -> Error {
    Error::InvalidInput("slope coordinates overflow".into())
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (p, q) = s
            .split_once('/')
            .ok_or_else(|| Error::InvalidInput(format!("slope '{s}' must look like p/q")))?;
        let parse = |v: &str| {
            v.trim().parse::<i64>().map_err(|_| Error::InvalidInput(format!("slope '{s}' has a non-integer part")))
        };
        Slope::new(parse(p)?, parse(q)?)
    }
}

impl serde::Serialize for Slope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Image of a slope under a mapping class. Curves transform by `J m J`,
/// `J = diag(1, -1)`, which makes `curve_length(act(m⁻¹, s), τ)` equal
/// `curve_length(s, m·τ)`.
pub fn act_on_slope(m: &MappingClass, s: Slope) -> Result<Slope> {
    let [a, b, c, d] = m.entries().map(|v| v.to_i128());
    let (a, b, c, d) = match (a, b, c, d) {
        (Some(a), Some(b), Some(c), Some(d)) => (a, b, c, d),
        _ => return Err(overflow()),
    };
    let (p, q) = (s.p as i128, s.q as i128);
    let np = a.checked_mul(p).zip(b.checked_mul(q)).and_then(|(x, y)| x.checked_sub(y)).ok_or_else(overflow)?;
    let nq = d.checked_mul(q).zip(c.checked_mul(p)).and_then(|(x, y)| x.checked_sub(y)).ok_or_else(overflow)?;
    let np = i64::try_from(np).map_err(|_| overflow())?;
    let nq = i64::try_from(nq).map_err(|_| overflow())?;
    Slope::from_any_sign(np, nq)
}

/// Flat length `|p + qτ| / √(Im τ)` on the unit-area torus.
pub fn curve_length(s: Slope, tau: Point) -> f64 {
    let re = s.p as f64 + s.q as f64 * tau.x();
    let im = s.q as f64 * tau.y();
    re.hypot(im) / tau.y().sqrt()
}

/// `|p + qτ|² / Im τ`, without the square root of `curve_length`.
pub fn extremal_length(s: Slope, tau: Point) -> f64 {
    let re = s.p as f64 + s.q as f64 * tau.x();
    let im = s.q as f64 * tau.y();
    (re * re + im * im) / tau.y()
}

/// Teichmüller distance; in the model this is the halved hyperbolic metric.
pub fn teich_dist(tau1: Point, tau2: Point) -> f64 {
    dist(tau1, tau2)
}

fn farey_box(depth: u32) -> Arc<Vec<Slope>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<Slope>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&depth) {
        return v.clone();
    }
    let n = depth as i64;
    let mut v = vec![Slope { p: 1, q: 0 }];
    for q in 1..=n {
        for p in -n..=n {
            if p.gcd(&q) == 1 {
                v.push(Slope { p, q });
            }
        }
    }
    let v = Arc::new(v);
    cache.lock().unwrap().insert(depth, v.clone());
    v
}

/// Kerckhoff's formula restricted to slopes with `|p|, |q| <= depth`:
/// `½ log max Ext(s, τ2) / Ext(s, τ1)`. Increases to `teich_dist` with depth.
pub fn kerckhoff_dist(tau1: Point, tau2: Point, farey_depth: u32) -> Result<f64> {
    if farey_depth == 0 {
        return Err(Error::InvalidInput("farey depth must be at least 1".into()));
    }
    let slopes = farey_box(farey_depth);
    let ratio = |s: &Slope| extremal_length(*s, tau2) / extremal_length(*s, tau1);
    let best = slopes.par_iter().map(ratio).reduce(|| 0.0, f64::max);
    Ok(0.5 * best.ln())
}

/// Largest length ratio `ℓ(s, τ2) / ℓ(s, τ1)` over the given slopes.
pub fn wolpert_check(tau1: Point, tau2: Point, slopes: &[Slope]) -> Result<f64> {
    if slopes.is_empty() {
        return Err(Error::InvalidInput("wolpert_check needs at least one slope".into()));
    }
    Ok(slopes.iter().map(|s| curve_length(*s, tau2) / curve_length(*s, tau1)).fold(0.0, f64::max))
}

/// `|p1 q2 - q1 p2|`.
pub fn intersection_number(s1: Slope, s2: Slope) -> u64 {
    let det = s1.p as i128 * s2.q as i128 - s1.q as i128 * s2.p as i128;
    det.unsigned_abs() as u64
}

/// Relative slack for "length at most R" so that curves exactly at the
/// bound survive rounding.
const LENGTH_SLACK: f64 = 1e-12;

/// Every slope of length at most `r` at `tau`, sorted by `(q, p)`.
pub fn short_curves(tau: Point, r: f64) -> Vec<Slope> {
    if !(r > 0.0) {
        return Vec::new();
    }
    let (x, y) = (tau.x(), tau.y());
    let bound2 = r * r * y * (1.0 + LENGTH_SLACK);
    // |Im(p + qτ)| = q y ≤ r √y
    let qmax = (bound2.sqrt() / y).floor() as i64;
    let mut out: Vec<Slope> = (0..=qmax)
        .into_par_iter()
        .flat_map_iter(|q| {
            let rest = (bound2 - (q as f64 * y).powi(2)).max(0.0).sqrt();
            let centre = -(q as f64) * x;
            let lo = (centre - rest).floor() as i64;
            let hi = (centre + rest).ceil() as i64;
            (lo..=hi).filter_map(move |p| {
                let s = if q == 0 { (p == 1).then_some(Slope { p: 1, q: 0 })? } else { Slope { p, q } };
                if s.p.gcd(&s.q) != 1 {
                    return None;
                }
                let re = s.p as f64 + s.q as f64 * x;
                let im = s.q as f64 * y;
                (re * re + im * im <= bound2).then_some(s)
            })
        })
        .collect();
    out.sort_by_key(|s| (s.q, s.p));
    out
}

/// Moves `tau` into the standard fundamental domain `|x| <= ½, |τ| >= 1`.
pub fn reduce_to_fundamental(tau: Point) -> Point {
    let (mut x, mut y) = (tau.x(), tau.y());
    for _ in 0..10_000 {
        x -= x.round();
        let n = x * x + y * y;
        if n >= 1.0 {
            break;
        }
        x = -x / n;
        y /= n;
    }
    Point::new(x, y).expect("reduction stays in the upper half-plane")
}

/// Length of the shortest curve. After reduction the shortest lattice
/// vector is `1`, of length `1/√y`.
pub fn systole(tau: Point) -> f64 {
    let r = reduce_to_fundamental(tau);
    // the reduction can stop marginally inside the unit circle
    let s1 = 1.0 / r.y().sqrt();
    let s2 = r.x().hypot(r.y()) / r.y().sqrt();
    s1.min(s2)
}

pub fn is_thick(tau: Point, epsilon: f64) -> bool {
    systole(tau) >= epsilon
}

/// Shortest curve `α` and shortest curve `β` crossing it, both of length at
/// most `f`.
pub fn marking(tau: Point, f: f64) -> Result<(Slope, Slope)> {
    let mut curves = short_curves(tau, f);
    curves.sort_by(|s, t| curve_length(*s, tau).total_cmp(&curve_length(*t, tau)).then((s.q, s.p).cmp(&(t.q, t.p))));
    let alpha = *curves.first().ok_or_else(|| Error::FViolation {
        bound: f,
        detail: format!("no curve of length <= {f} at {tau}"),
    })?;
    let beta = curves.iter().copied().find(|s| intersection_number(alpha, *s) >= 1).ok_or_else(|| {
        Error::FViolation { bound: f, detail: format!("no curve crossing {alpha} of length <= {f} at {tau}") }
    })?;
    Ok((alpha, beta))
}

/// Constants of the thick part attached to a translation bound `L`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ThickParams {
    /// Lower bound for the systole along every axis with `Tr <= L`.
    pub epsilon: f64,
    /// Every thick point has a marking of length at most `F`.
    #[serde(rename = "F")]
    pub f: f64,
    /// `|short_curves(τ, R)| <= coeff · R²` on the thick part.
    pub short_curve_coeff: f64,
    /// Number of conjugacy classes met by the enumeration.
    pub classes: usize,
    pub max_trace: u64,
    pub grid: usize,
}

impl ThickParams {
    pub fn short_curve_bound(&self, r: f64) -> BigUint {
        exact::ceil_nonneg(&(exact::rational_of(self.short_curve_coeff) * exact::rational_of(r * r)))
    }
}

/// Classes enumerated beyond this trace are refused.
pub const MAX_ENUMERATED_TRACE: u64 = 2_000;

const MARGIN: f64 = 1.05;
const GRID: usize = 48;

/// Conjugacy classes of hyperbolic elements with `2 < trace <= max_trace`,
/// one representative each: positive words in `R = [[1,1],[0,1]]` and
/// `L = [[1,0],[1,1]]` that use both letters, up to cyclic rotation.
pub fn hyperbolic_classes(max_trace: u64) -> Result<Vec<MappingClass>> {
    if max_trace > MAX_ENUMERATED_TRACE {
        return Err(Error::ConstantDerivation(format!(
            "class enumeration horizon: trace bound {max_trace} exceeds {MAX_ENUMERATED_TRACE}"
        )));
    }
    let t = max_trace as i128;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    // words start with R and end with L; any completion W·X·L of a prefix W
    // has trace at least tr(W·L)
    let mut stack: Vec<(Vec<u8>, [i128; 4])> = vec![(vec![b'R'], [1, 1, 0, 1])];
    while let Some((word, [a, b, c, d])) = stack.pop() {
        let wl = [a + b, b, c + d, d];
        if wl[0] + wl[3] > t {
            continue;
        }
        let mut full = word.clone();
        full.push(b'L');
        let key = min_rotation(&full);
        if seen.insert(key) {
            out.push(MappingClass::new(wl[0], wl[1], wl[2], wl[3]).expect("det 1"));
        }
        stack.push((full, wl));
        let mut wr = word;
        wr.push(b'R');
        stack.push((wr, [a, a + b, c, c + d]));
    }
    out.sort_by_key(|m| (m.abs_trace(), m.to_string()));
    Ok(out)
}

fn min_rotation(w: &[u8]) -> Vec<u8> {
    (0..w.len()).map(|i| [&w[i..], &w[..i]].concat()).min().expect("non-empty word")
}

/// Smallest systole along the axis of `m`, over one translation period.
pub fn axis_min_systole(m: &MappingClass) -> Result<f64> {
    let ax = mcg::axis(m)?;
    let period = ax.translation;
    let f = |t: f64| systole(ax.axis.point_at(t));
    let n = 256;
    let h = period / n as f64;
    let (i_best, _) =
        (0..n).map(|i| (i, f(i as f64 * h))).fold((0, f64::INFINITY), |b, (i, v)| if v < b.1 { (i, v) } else { b });
    let centre = i_best as f64 * h;
    let (_, v) = golden_min(f, centre - h, centre + h, 1e-12);
    let grid_min = (0..n).map(|i| f(i as f64 * h)).fold(f64::INFINITY, f64::min);
    Ok(v.min(grid_min))
}

/// Points of the thick fundamental domain used to derive `F` and the
/// short-curve coefficient: `0 <= x <= ½` (the reflection `x ↦ -x` permutes
/// slopes), `√(1 - x²) <= y <= 1/ε²`.
fn thick_grid(epsilon: f64) -> Vec<Point> {
    let y_top = 1.0 / (epsilon * epsilon);
    let mut pts = Vec::with_capacity((GRID + 1) * (GRID + 1));
    for i in 0..=GRID {
        let x = 0.5 * i as f64 / GRID as f64;
        let y_lo = (1.0 - x * x).sqrt();
        if y_lo > y_top {
            continue;
        }
        for j in 0..=GRID {
            let y = y_lo + (y_top - y_lo) * j as f64 / GRID as f64;
            pts.push(Point::new(x, y).expect("grid point"));
        }
    }
    pts
}

/// Derives ε, F and the short-curve coefficient for axes with `Tr <= L`.
pub fn derive_thick_params(l: f64) -> Result<ThickParams> {
    if !(l >= mcg::min_translation() - 1e-12) || !l.is_finite() {
        return Err(Error::InvalidInput(format!("L = {l} is below the minimal translation distance")));
    }
    let max_trace = (2.0 * l.cosh() + 1e-9).floor() as u64;
    let classes = hyperbolic_classes(max_trace)?;
    if classes.is_empty() {
        return Err(Error::ConstantDerivation(format!("no classes with translation <= {l}")));
    }
    let epsilon = classes
        .par_iter()
        .map(axis_min_systole)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    let grid = thick_grid(epsilon);
    let r_max = 8.0f64.max(4.0 / epsilon);
    let per_point: Vec<(f64, f64)> = grid
        .par_iter()
        .map(|&tau| {
            let mut lengths: Vec<f64> = short_curves(tau, r_max).into_iter().map(|s| curve_length(s, tau)).collect();
            lengths.sort_by(f64::total_cmp);
            let density =
                lengths.iter().enumerate().map(|(k, l)| (k + 1) as f64 / (l * l)).fold(0.0, f64::max);
            let beta = lengths_marking(tau);
            (beta, density)
        })
        .collect();
    let f = MARGIN * per_point.iter().map(|p| p.0).fold(0.0, f64::max);
    let coeff = MARGIN * per_point.iter().map(|p| p.1).fold(0.0, f64::max);
    if !(f.is_finite() && coeff.is_finite() && epsilon > 0.0) {
        return Err(Error::ConstantDerivation(format!("non-finite thick constants for L = {l}")));
    }
    Ok(ThickParams { epsilon, f, short_curve_coeff: coeff, classes: classes.len(), max_trace, grid: grid.len() })
}

/// Length of the longer marking curve at a point of the fundamental domain.
fn lengths_marking(tau: Point) -> f64 {
    // α = 1/0 on the reduced domain; β is among the next few lattice vectors
    let bound = 2.0 * tau.x().hypot(tau.y()).max(1.0) / tau.y().sqrt() + 1.0;
    let (_, beta) = marking(tau, bound).expect("fundamental domain points have a short marking");
    curve_length(beta, tau)
}

/// Thick-part constants at the smallest translation distance, derived once.
pub fn default_thick_params() -> &'static ThickParams {
    static P: OnceLock<ThickParams> = OnceLock::new();
    P.get_or_init(|| derive_thick_params(mcg::min_translation()).expect("thick constants at the minimal translation"))
}

/// `B(R) = ceil(coeff · R²)` with the default thick constants.
pub fn short_curve_bound(r: f64) -> BigUint {
    default_thick_params().short_curve_bound(r)
}
