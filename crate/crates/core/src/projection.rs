//! Nearest-point projections between axes: the contraction constant `b`,
//! the Morse constant, pair geometry, divergence profiles and
//! fast-divergence thresholds.

use std::f64::consts::{FRAC_PI_2, PI};
use std::io::Write;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyp2::{dist, BoundaryPoint, Geodesic, Point};
use crate::mcg::{self, MappingClass};
use crate::numeric::{fmt_sig, golden_min, unimodal_min};

/// Safety factor applied to numerically maximized constants.
pub const CONSTANT_MARGIN: f64 = 1.05;

/// Constants of the model plane, derived once per process.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelConstants {
    pub b: f64,
    pub delta: f64,
    /// `((K, κ), M(K, κ))`.
    pub morse_table: Vec<((f64, f64), f64)>,
}

pub fn model_constants() -> &'static ModelConstants {
    static C: OnceLock<ModelConstants> = OnceLock::new();
    C.get_or_init(|| {
        let b = derive_contraction_b().expect("contraction constant");
        let mut morse_table = Vec::new();
        for k in [1.0, 2.0, 3.0] {
            for kappa in [0.0, 0.5, 1.0, 2.0, 5.0] {
                morse_table.push(((k, kappa), derive_morse(k, kappa).expect("valid Morse arguments")));
            }
        }
        ModelConstants { b, delta: thin_triangle_delta(), morse_table }
    })
}

/// Thin-triangle constant of the plane in the halved metric: `½ log(1 + √2)`.
pub fn thin_triangle_delta() -> f64 {
    0.5 * (1.0 + 2f64.sqrt()).ln()
}

/// Diameter of `π_c(B(x, d(x, c)))`, maximized over a dense sample of the
/// ball's boundary and refined by golden-section search.
pub fn ball_projection_diameter(c: &Geodesic, x: Point) -> f64 {
    let r = c.dist_to(x);
    if r == 0.0 {
        return 0.0;
    }
    let (cy, er) = (x.y() * (2.0 * r).cosh(), x.y() * (2.0 * r).sinh());
    let param = |a: f64| {
        let p = Point::new(x.x() + er * a.cos(), (cy + er * a.sin()).max(f64::MIN_POSITIVE)).expect("ball point");
        c.project_param(p)
    };
    let n = 512;
    let h = 2.0 * PI / n as f64;
    let vals: Vec<f64> = (0..n).map(|k| param(k as f64 * h)).collect();
    let (imax, _) = vals.iter().enumerate().fold((0, f64::NEG_INFINITY), |b, (i, &v)| if v > b.1 { (i, v) } else { b });
    let (imin, _) = vals.iter().enumerate().fold((0, f64::INFINITY), |b, (i, &v)| if v < b.1 { (i, v) } else { b });
    let a_max = imax as f64 * h;
    let a_min = imin as f64 * h;
    let (_, neg_max) = golden_min(|a| -param(a), a_max - h, a_max + h, 1e-12);
    let (_, min) = golden_min(param, a_min - h, a_min + h, 1e-12);
    (-neg_max).max(vals[imax]) - min.min(vals[imin])
}

/// `b`: the supremum over the normalized family `x = e^{iθ}` of the ball
/// projection diameter onto the imaginary axis, plus a 5% margin. Every
/// configuration is isometric to one of these.
pub fn derive_contraction_b() -> Result<f64> {
    let c = Geodesic::standard();
    let f = |theta: f64| ball_projection_diameter(&c, Point::new(theta.cos(), theta.sin()).expect("unit circle"));
    let lo = 1e-6;
    let n = 200;
    let h = (FRAC_PI_2 - lo) / n as f64;
    let grid: Vec<(f64, f64)> = (0..=n).map(|k| lo + k as f64 * h).map(|t| (t, f(t))).collect();
    let (t_best, _) = grid.iter().copied().fold((lo, f64::NEG_INFINITY), |b, p| if p.1 > b.1 { p } else { b });
    let (_, neg) = golden_min(|t| -f(t), (t_best - h).max(lo), (t_best + h).min(FRAC_PI_2), 1e-10);
    let best = grid.iter().map(|p| p.1).fold(-neg, f64::max);
    if !(best.is_finite() && best > 0.0) {
        return Err(Error::ConstantDerivation(format!("ball projection diameter maximization returned {best}")));
    }
    Ok(CONSTANT_MARGIN * best)
}

/// Stability constant for `(K, κ)`-quasi-geodesics in the model.
///
/// In the curvature `-1` plane a path with `d ≥ |Δs|/K - κ` stays within
/// `(1 + K) arccosh K + Kκ/2 + K(π/2 - atan √(K² - 1))` of the geodesic
/// joining its endpoints (projection onto the geodesic contracts far-away
/// segments by `1/cosh r`). The model metric halves distances and doubles
/// `κ` in hyperbolic units. `M(1, 0) = 0`.
pub fn derive_morse(k: f64, kappa: f64) -> Result<f64> {
    if !(k >= 1.0) || !(kappa >= 0.0) || !k.is_finite() || !kappa.is_finite() {
        return Err(Error::InvalidInput(format!("Morse constant needs K >= 1 and kappa >= 0, got ({k}, {kappa})")));
    }
    if k == 1.0 && kappa == 0.0 {
        return Ok(0.0);
    }
    let kappa_h = 2.0 * kappa;
    let m_h = (1.0 + k) * k.acosh() + k * kappa_h / 2.0 + k * (FRAC_PI_2 - (k * k - 1.0).sqrt().atan());
    Ok(0.5 * m_h)
}

/// Nearest-point data for two distinct axes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairGeometry {
    #[serde(rename = "D")]
    pub d: f64,
    #[serde(skip)]
    pub o: Point,
    #[serde(skip)]
    pub o_prime: Point,
    pub t_o: f64,
    pub s_o: f64,
    pub crossing: bool,
}

pub fn pair_geometry(m1: &MappingClass, m2: &MappingClass) -> Result<PairGeometry> {
    mcg::require_independent(m1, m2)?;
    geodesic_pair_geometry(&mcg::axis(m1)?.axis, &mcg::axis(m2)?.axis)
}

/// Endpoints of `c2` in the frame of `c1` (where `c1` is the positive
/// imaginary axis).
fn endpoints_in_frame(c1: &Geodesic, c2: &Geodesic) -> Result<(f64, f64)> {
    let f = c1.frame();
    match (f.apply_boundary(c2.endpoint_neg()), f.apply_boundary(c2.endpoint_pos())) {
        (BoundaryPoint::Finite(u), BoundaryPoint::Finite(v)) if u != 0.0 && v != 0.0 => Ok((u, v)),
        _ => Err(Error::Degenerate("geodesics share an endpoint".into())),
    }
}

pub fn geodesic_pair_geometry(c1: &Geodesic, c2: &Geodesic) -> Result<PairGeometry> {
    if c1.same_line(c2) {
        return Err(Error::Degenerate("the two geodesics coincide".into()));
    }
    let (u, v) = endpoints_in_frame(c1, c2)?;
    if u * v < 0.0 {
        // the circle through u, v meets the imaginary axis at i√(-uv)
        let t_o = 0.25 * (-u * v).ln();
        let o = c1.point_at(t_o);
        let s_o = c2.project_param(o);
        return Ok(PairGeometry { d: 0.0, o, o_prime: o, t_o, s_o, crossing: true });
    }
    let f = |t: f64| c2.dist_to(c1.point_at(t));
    let guess = 0.25 * (u * v).ln();
    let (t_o, _) = unimodal_min(f, guess, 1e3, 1e-11)
        .ok_or_else(|| Error::ConstantDerivation("common perpendicular search did not bracket".into()))?;
    let o = c1.point_at(t_o);
    let s_o = c2.project_param(o);
    let o_prime = c2.point_at(s_o);
    Ok(PairGeometry { d: dist(o, o_prime), o, o_prime, t_o, s_o, crossing: false })
}

/// Parameter range on `target` containing the projection of `source`: the
/// feet of the perpendiculars from the ideal endpoints of `source`.
pub fn projection_interval(target: &Geodesic, source: &Geodesic) -> Result<(f64, f64)> {
    if target.same_line(source) {
        return Err(Error::Degenerate("projection of a geodesic onto itself".into()));
    }
    let a = target.project_boundary_param(source.endpoint_neg());
    let b = target.project_boundary_param(source.endpoint_pos());
    match (a, b) {
        (Some(a), Some(b)) => Ok((a.min(b), a.max(b))),
        _ => Err(Error::Degenerate("geodesics share an endpoint; projection is unbounded".into())),
    }
}

/// One sample of a divergence profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileRow {
    pub t: f64,
    pub s_star: f64,
    pub d_min: f64,
}

fn grid(t_min: f64, t_max: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(t_max >= t_min) || !t_min.is_finite() || !t_max.is_finite() {
        return Err(Error::InvalidInput(format!("bad profile range [{t_min}, {t_max}] step {step}")));
    }
    let n = ((t_max - t_min) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|k| t_min + k as f64 * step).collect())
}

/// `t ↦ min_s d(c1(t), c2(s))` on a grid, with both axes re-based at the
/// nearest points `O = c1(0)`, `O' = c2(0)`. The inner minimizer is the
/// nearest-point projection onto the second axis.
pub fn divergence_profile(m1: &MappingClass, m2: &MappingClass, t_min: f64, t_max: f64, step: f64) -> Result<Vec<ProfileRow>> {
    let (c1, c2) = based_axes(m1, m2)?;
    geodesic_profile(&c1, &c2, t_min, t_max, step)
}

/// The two axes with origins moved to the nearest-point pair `(O, O')`.
pub fn based_axes(m1: &MappingClass, m2: &MappingClass) -> Result<(Geodesic, Geodesic)> {
    mcg::require_independent(m1, m2)?;
    let c1 = mcg::axis(m1)?.axis;
    let c2 = mcg::axis(m2)?.axis;
    let pg = geodesic_pair_geometry(&c1, &c2)?;
    Ok((rebase(&c1, pg.t_o)?, rebase(&c2, pg.s_o)?))
}

/// Same oriented geodesic with origin `c(t)`.
pub fn rebase(c: &Geodesic, t: f64) -> Result<Geodesic> {
    Geodesic::new(c.endpoint_neg(), c.endpoint_pos(), c.point_at(t))
}

pub fn geodesic_profile(c1: &Geodesic, c2: &Geodesic, t_min: f64, t_max: f64, step: f64) -> Result<Vec<ProfileRow>> {
    let ts = grid(t_min, t_max, step)?;
    Ok(ts
        .par_iter()
        .map(|&t| {
            let x = c1.point_at(t);
            let s_star = c2.project_param(x);
            ProfileRow { t, s_star, d_min: c2.dist_to(x) }
        })
        .collect())
}

pub const PROFILE_HEADER: &str = "t,s_star,d_min";

pub fn write_profile_csv<W: Write>(rows: &[ProfileRow], mut w: W) -> Result<()> {
    writeln!(w, "{PROFILE_HEADER}")?;
    for r in rows {
        writeln!(w, "{},{},{}", fmt_sig(r.t, 12), fmt_sig(r.s_star, 12), fmt_sig(r.d_min, 12))?;
    }
    Ok(())
}

/// Smallest grid value `T` such that `min_s d(c1(t), c2(s)) >= delta` at
/// every sampled `|t| >= T` up to `horizon` (parameters measured from the
/// origin of `c1`).
pub fn properness_threshold(c1: &Geodesic, c2: &Geodesic, delta: f64, horizon: f64, step: f64) -> Result<f64> {
    let rows = geodesic_profile(c1, c2, -horizon, horizon, step)?;
    let ends = [rows.first().expect("non-empty"), rows.last().expect("non-empty")];
    if ends.iter().any(|r| r.d_min < delta) {
        return Err(Error::HorizonExceeded {
            horizon,
            detail: format!("distance to the second axis stays below {delta}"),
        });
    }
    let last_bad = rows.iter().filter(|r| r.d_min < delta).map(|r| r.t.abs()).fold(f64::NEG_INFINITY, f64::max);
    Ok(if last_bad.is_finite() { last_bad + step } else { 0.0 })
}

/// Settings of the grid certification of fast-divergence thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdConfig {
    pub step: f64,
    pub margin: f64,
    pub horizon: f64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for ThresholdConfig {
    fn default() -> Self {
        ThresholdConfig { step: 0.01, margin: 0.1, horizon: 20.0, samples: 10_000, seed: 0 }
    }
}

/// Axis parameters beyond which `d(x, y) > max{d(O, x), d(O', y)}` holds
/// for `x = c(t)`, `y = c'(s)`, with `t` beyond `P±` and `s` beyond `Q±`
/// (all four sign combinations).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Thresholds {
    #[serde(rename = "P_plus")]
    pub p_plus: f64,
    #[serde(rename = "P_minus")]
    pub p_minus: f64,
    #[serde(rename = "Q_plus")]
    pub q_plus: f64,
    #[serde(rename = "Q_minus")]
    pub q_minus: f64,
    pub t_o: f64,
    pub s_o: f64,
    /// Grid pairs inside the thresholds where the inequality fails; they
    /// locate the thresholds. None survive beyond them.
    pub inner_violations: u64,
    pub samples_checked: usize,
    pub config: ThresholdConfig,
}

pub fn fast_divergence_thresholds(m1: &MappingClass, m2: &MappingClass, config: &ThresholdConfig) -> Result<Thresholds> {
    mcg::require_independent(m1, m2)?;
    geodesic_thresholds(&mcg::axis(m1)?.axis, &mcg::axis(m2)?.axis, config)
}

fn violates(x: Point, y: Point, a: f64, b: f64) -> bool {
    dist(x, y) <= a.max(b)
}

pub fn geodesic_thresholds(c1: &Geodesic, c2: &Geodesic, config: &ThresholdConfig) -> Result<Thresholds> {
    let pg = geodesic_pair_geometry(c1, c2)?;
    let step = config.step;
    let n = (config.horizon / step + 1e-9).floor() as usize;
    let side = |c: &Geodesic, origin: f64, sign: f64| -> Vec<Point> {
        (0..=n).map(|k| c.point_at(origin + sign * k as f64 * step)).collect()
    };
    let xs = [side(c1, pg.t_o, 1.0), side(c1, pg.t_o, -1.0)];
    let ys = [side(c2, pg.s_o, 1.0), side(c2, pg.s_o, -1.0)];
    // quadrant (i, j): largest min(a, b) over violating grid pairs
    let mut worst = [[0.0f64; 2]; 2];
    let mut violations = 0u64;
    for (i, xsi) in xs.iter().enumerate() {
        for (j, ysj) in ys.iter().enumerate() {
            let (w, cnt) = (0..=n)
                .into_par_iter()
                .map(|ka| {
                    let a = ka as f64 * step;
                    let mut w = f64::NEG_INFINITY;
                    let mut cnt = 0u64;
                    for kb in 0..=n {
                        let b = kb as f64 * step;
                        if violates(xsi[ka], ysj[kb], a, b) {
                            w = w.max(a.min(b));
                            cnt += 1;
                        }
                    }
                    (w, cnt)
                })
                .reduce(|| (f64::NEG_INFINITY, 0), |p, q| (p.0.max(q.0), p.1 + q.1));
            violations += cnt;
            let t = if w.is_finite() { w + step } else { step };
            if t + step > 0.5 * config.horizon {
                return Err(Error::HorizonExceeded {
                    horizon: config.horizon,
                    detail: format!("fast-divergence violations persist up to offset {w}"),
                });
            }
            worst[i][j] = t;
        }
    }
    let k = 1.0 + config.margin;
    let p_plus_off = k * worst[0][0].max(worst[0][1]);
    let p_minus_off = k * worst[1][0].max(worst[1][1]);
    let q_plus_off = k * worst[0][0].max(worst[1][0]);
    let q_minus_off = k * worst[0][1].max(worst[1][1]);
    let th = Thresholds {
        p_plus: pg.t_o + p_plus_off,
        p_minus: pg.t_o - p_minus_off,
        q_plus: pg.s_o + q_plus_off,
        q_minus: pg.s_o - q_minus_off,
        t_o: pg.t_o,
        s_o: pg.s_o,
        inner_violations: violations,
        samples_checked: config.samples,
        config: *config,
    };
    // random pairs beyond the thresholds
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for _ in 0..config.samples {
        let (si, sj) = (rng.gen_bool(0.5), rng.gen_bool(0.5));
        let a_lo = if si { p_plus_off } else { p_minus_off };
        let b_lo = if sj { q_plus_off } else { q_minus_off };
        let a = rng.gen_range(a_lo..=config.horizon.max(a_lo));
        let b = rng.gen_range(b_lo..=config.horizon.max(b_lo));
        let x = c1.point_at(pg.t_o + if si { a } else { -a });
        let y = c2.point_at(pg.s_o + if sj { b } else { -b });
        if violates(x, y, a, b) {
            return Err(Error::CertificateInvalid {
                check: "fast_divergence".into(),
                witness: format!("x={x} y={y}"),
            });
        }
    }
    Ok(th)
}
