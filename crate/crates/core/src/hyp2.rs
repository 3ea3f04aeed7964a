//! Upper half-plane geometry with the metric scaled by one half.
//!
//! The model Teichmüller space of the torus is the upper half-plane `H`, and
//! the Teichmüller distance is half of the curvature `-1` hyperbolic
//! distance. Every distance, parameter and radius in this crate is measured
//! in that halved metric, so a unit-speed geodesic `c(t)` covers hyperbolic
//! length `2t`.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// Default tolerance for "lies on a geodesic" style checks.
pub const TOLERANCE: f64 = 1e-9;

/// A point `x + iy` of the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    x: f64,
    y: f64,
}

impl Point {
    pub const I: Point = Point { x: 0.0, y: 1.0 };

    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !x.is_finite() || !y.is_finite() {
            return Err(Error::InvalidInput(format!("non-finite point ({x}, {y})")));
        }
        if y <= 0.0 {
            return Err(Error::InvalidInput(format!("point ({x}, {y}) is not in the upper half-plane")));
        }
        Ok(Point { x, y })
    }

    /// Construction without validation, for values produced by isometries.
    pub(crate) fn raw(x: f64, y: f64) -> Self {
        debug_assert!(y > 0.0 && x.is_finite(), "bad point ({x}, {y})");
        Point { x, y }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn abs(&self) -> f64 {
        self.x.hypot(self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}i", self.x, self.y)
    }
}

/// A point of the ideal boundary `R ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryPoint {
    Finite(f64),
    Infinity,
}

impl BoundaryPoint {
    pub fn finite(self) -> Option<f64> {
        match self {
            BoundaryPoint::Finite(v) => Some(v),
            BoundaryPoint::Infinity => None,
        }
    }

    fn approx_eq(self, other: BoundaryPoint) -> bool {
        match (self, other) {
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => true,
            (BoundaryPoint::Finite(a), BoundaryPoint::Finite(b)) => (a - b).abs() <= 1e-12 * (1.0 + a.abs().max(b.abs())),
            _ => false,
        }
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryPoint::Finite(v) => write!(f, "{v}"),
            BoundaryPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// A real Möbius transformation `z ↦ (az + b)/(cz + d)` with `ad - bc = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mobius {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl Mobius {
    pub const IDENTITY: Mobius = Mobius { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    /// Builds a transformation whose determinant is 1 up to rounding.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        let scale = (a * d).abs().max((b * c).abs()).max(1.0);
        if ![a, b, c, d].iter().all(|v| v.is_finite()) || (det - 1.0).abs() > 1e-12 * scale {
            return Err(Error::InvalidInput(format!("determinant {det} is not 1")));
        }
        Ok(Mobius { a, b, c, d })
    }

    /// Rescales an orientation preserving matrix (`det > 0`) to determinant 1.
    pub fn normalized(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !(det > 0.0) || !det.is_finite() {
            return Err(Error::InvalidInput(format!("determinant {det} is not positive")));
        }
        let s = det.sqrt().recip();
        Ok(Mobius { a: a * s, b: b * s, c: c * s, d: d * s })
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn inverse(&self) -> Mobius {
        Mobius { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn apply(&self, z: Point) -> Point {
        let (x, y) = (z.x, z.y);
        let re_den = self.c * x + self.d;
        let im_den = self.c * y;
        let den = re_den * re_den + im_den * im_den;
        let re = ((self.a * x + self.b) * re_den + self.a * self.c * y * y) / den;
        // det = 1 makes the imaginary part exactly y / |cz + d|^2
        Point::raw(re, y / den)
    }

    pub fn apply_boundary(&self, p: BoundaryPoint) -> BoundaryPoint {
        match p {
            BoundaryPoint::Infinity => {
                if self.c == 0.0 {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite(self.a / self.c)
                }
            }
            BoundaryPoint::Finite(x) => {
                let den = self.c * x + self.d;
                if den == 0.0 {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite((self.a * x + self.b) / den)
                }
            }
        }
    }
}

impl Mul for Mobius {
    type Output = Mobius;

    fn mul(self, o: Mobius) -> Mobius {
        Mobius {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

/// Model distance: half the hyperbolic distance.
///
/// Uses `d_hyp = 2 asinh(|z - w| / (2 sqrt(y_z y_w)))`, which avoids the
/// cancellation of `arccosh` near 1.
pub fn dist(z: Point, w: Point) -> f64 {
    let chord = (z.x - w.x).hypot(z.y - w.y);
    (chord / (2.0 * (z.y * w.y).sqrt())).asinh()
}

pub fn apply(m: &Mobius, z: Point) -> Point {
    m.apply(z)
}

/// An oriented, unit-speed geodesic `c: R → H`.
///
/// Internally every geodesic carries the isometry (`frame`) that sends it to
/// the imaginary axis with `neg ↦ 0`, `pos ↦ ∞` and `c(0) ↦ i`; then
/// `c(t) = frame⁻¹(i e^{2t})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geodesic {
    neg: BoundaryPoint,
    pos: BoundaryPoint,
    origin: Point,
    frame: Mobius,
}

impl Geodesic {
    pub fn new(neg: BoundaryPoint, pos: BoundaryPoint, origin: Point) -> Result<Self> {
        if neg.approx_eq(pos) {
            return Err(Error::Degenerate(format!("geodesic endpoints coincide at {neg}")));
        }
        if let Some(v) = neg.finite().into_iter().chain(pos.finite()).find(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite endpoint {v}")));
        }
        let s = match (neg, pos) {
            (BoundaryPoint::Finite(u), BoundaryPoint::Finite(v)) => {
                if u > v {
                    Mobius::normalized(1.0, -u, 1.0, -v)?
                } else {
                    Mobius::normalized(-1.0, u, 1.0, -v)?
                }
            }
            (BoundaryPoint::Infinity, BoundaryPoint::Finite(v)) => Mobius { a: 0.0, b: -1.0, c: 1.0, d: -v },
            (BoundaryPoint::Finite(u), BoundaryPoint::Infinity) => Mobius { a: 1.0, b: -u, c: 0.0, d: 1.0 },
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => unreachable!(),
        };
        let w = s.apply(origin);
        let off = 0.5 * (w.x.abs() / w.y).asinh();
        if off > TOLERANCE {
            return Err(Error::InvalidInput(format!(
                "origin {origin} is at distance {off:e} from the geodesic {neg} -> {pos}"
            )));
        }
        let h = w.abs();
        let scale = Mobius { a: h.sqrt().recip(), b: 0.0, c: 0.0, d: h.sqrt() };
        let frame = scale * s;
        let origin = frame.inverse().apply(Point::I);
        Ok(Geodesic { neg, pos, origin, frame })
    }

    /// The geodesic with the given endpoints, based at its summit (or at
    /// height 1 for a vertical line).
    pub fn from_endpoints(neg: BoundaryPoint, pos: BoundaryPoint) -> Result<Self> {
        let origin = match (neg, pos) {
            (BoundaryPoint::Finite(u), BoundaryPoint::Finite(v)) => {
                Point::new(0.5 * (u + v), 0.5 * (u - v).abs())?
            }
            (BoundaryPoint::Finite(u), BoundaryPoint::Infinity) | (BoundaryPoint::Infinity, BoundaryPoint::Finite(u)) => {
                Point::new(u, 1.0)?
            }
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => {
                return Err(Error::Degenerate("geodesic endpoints coincide at inf".into()))
            }
        };
        Geodesic::new(neg, pos, origin)
    }

    /// The imaginary axis, oriented upward, with origin `i`.
    pub fn standard() -> Self {
        Geodesic {
            neg: BoundaryPoint::Finite(0.0),
            pos: BoundaryPoint::Infinity,
            origin: Point::I,
            frame: Mobius::IDENTITY,
        }
    }

    pub fn endpoint_neg(&self) -> BoundaryPoint {
        self.neg
    }

    pub fn endpoint_pos(&self) -> BoundaryPoint {
        self.pos
    }

    pub fn origin(&self) -> Point {
        self.origin
    }

    /// The normalizing isometry onto the standard geodesic.
    pub fn frame(&self) -> &Mobius {
        &self.frame
    }

    pub fn point_at(&self, t: f64) -> Point {
        self.frame.inverse().apply(Point::raw(0.0, (2.0 * t).exp()))
    }

    /// Nearest point projection: the foot and its parameter.
    pub fn project(&self, z: Point) -> (Point, f64) {
        let t = self.project_param(z);
        (self.point_at(t), t)
    }

    pub fn project_param(&self, z: Point) -> f64 {
        0.5 * self.frame.apply(z).abs().ln()
    }

    pub fn dist_to(&self, z: Point) -> f64 {
        let w = self.frame.apply(z);
        0.5 * (w.x.abs() / w.y).asinh()
    }

    /// Projection parameter of an ideal point (the foot of the perpendicular
    /// from it), or `None` for the geodesic's own endpoints.
    pub fn project_boundary_param(&self, p: BoundaryPoint) -> Option<f64> {
        match self.frame.apply_boundary(p) {
            BoundaryPoint::Finite(s) if s != 0.0 && s.is_finite() => Some(0.5 * s.abs().ln()),
            _ => None,
        }
    }

    /// Image under an isometry; parameters are preserved.
    pub fn transport(&self, m: &Mobius) -> Geodesic {
        Geodesic {
            neg: m.apply_boundary(self.neg),
            pos: m.apply_boundary(self.pos),
            origin: m.apply(self.origin),
            frame: self.frame * m.inverse(),
        }
    }

    /// Same point set and origin, opposite orientation.
    pub fn reversed(&self) -> Geodesic {
        let flip = Mobius { a: 0.0, b: -1.0, c: 1.0, d: 0.0 };
        Geodesic { neg: self.pos, pos: self.neg, origin: self.origin, frame: flip * self.frame }
    }

    /// Whether `other` has the same endpoint set (ignoring orientation).
    pub fn same_line(&self, other: &Geodesic) -> bool {
        (self.neg.approx_eq(other.neg) && self.pos.approx_eq(other.pos))
            || (self.neg.approx_eq(other.pos) && self.pos.approx_eq(other.neg))
    }
}

/// The geodesic through `z` and `w`, oriented from `z` toward `w`, with
/// origin `z`.
pub fn geodesic_through(z: Point, w: Point) -> Result<Geodesic> {
    if z == w {
        return Err(Error::Degenerate(format!("cannot draw a geodesic through {z} twice")));
    }
    let dx = w.x - z.x;
    let scale = 1.0 + z.abs().max(w.abs());
    if dx.abs() <= 1e-14 * scale {
        let x = 0.5 * (z.x + w.x);
        let (neg, pos) = if w.y > z.y {
            (BoundaryPoint::Finite(x), BoundaryPoint::Infinity)
        } else {
            (BoundaryPoint::Infinity, BoundaryPoint::Finite(x))
        };
        return Geodesic::new(neg, pos, Point::raw(x, z.y));
    }
    let center = ((w.x * w.x + w.y * w.y) - (z.x * z.x + z.y * z.y)) / (2.0 * dx);
    let radius = (z.x - center).hypot(z.y);
    let (lo, hi) = (BoundaryPoint::Finite(center - radius), BoundaryPoint::Finite(center + radius));
    let (neg, pos) = if dx > 0.0 { (lo, hi) } else { (hi, lo) };
    Geodesic::new(neg, pos, z)
}

pub fn point_at(c: &Geodesic, t: f64) -> Point {
    c.point_at(t)
}

pub fn project(c: &Geodesic, z: Point) -> (Point, f64) {
    c.project(z)
}

pub fn dist_to_geodesic(c: &Geodesic, z: Point) -> f64 {
    c.dist_to(z)
}
