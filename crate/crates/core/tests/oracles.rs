//! Derived values checked against independent computations: brute force,
//! dense sampling or closed forms that share no code with the library.

use std::f64::consts::{FRAC_PI_4, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use teich_pingpong::hyp2::{dist, geodesic_through};
use teich_pingpong::pingpong::{self, CertifyConfig};
use teich_pingpong::projection::{self, ball_projection_diameter, derive_morse, model_constants};
use teich_pingpong::torus_model::{self, Slope};
use teich_pingpong::{mcg, BoundaryPoint, Geodesic, MappingClass, Mobius, Point};

fn m(s: &str) -> MappingClass {
    s.parse().unwrap()
}

fn p(x: f64, y: f64) -> Point {
    Point::new(x, y).unwrap()
}

/// Model distance from the cosh formula, with no shared code.
fn cosh_dist(z: Point, w: Point) -> f64 {
    let num = (z.x() - w.x()).powi(2) + (z.y() - w.y()).powi(2);
    0.5 * (1.0 + num / (2.0 * z.y() * w.y())).acosh()
}

/// Projection parameter onto a geodesic by brute-force minimization over a
/// fine grid and local refinement.
fn brute_project(c: &Geodesic, z: Point) -> f64 {
    let mut best = (f64::INFINITY, 0.0);
    let mut t = -12.0;
    while t <= 12.0 {
        let d = cosh_dist(z, c.point_at(t));
        if d < best.0 {
            best = (d, t);
        }
        t += 1e-3;
    }
    let (mut lo, mut hi) = (best.1 - 1e-3, best.1 + 1e-3);
    for _ in 0..100 {
        let (a, b) = (lo + (hi - lo) / 3.0, hi - (hi - lo) / 3.0);
        if cosh_dist(z, c.point_at(a)) < cosh_dist(z, c.point_at(b)) {
            hi = b;
        } else {
            lo = a;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn distances_against_cosh_formula() {
    assert!((dist(Point::I, p(1.0, 1.0)) - 0.5 * 1.5f64.acosh()).abs() < 1e-15);
    assert!((dist(Point::I, p(1.0, 1.0)) - 0.48121182505960347).abs() < 1e-12);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let z = p(rng.gen_range(-5.0..5.0), rng.gen_range(0.1..5.0));
        let w = p(rng.gen_range(-5.0..5.0), rng.gen_range(0.1..5.0));
        assert!((dist(z, w) - cosh_dist(z, w)).abs() < 1e-9);
    }
}

#[test]
fn mobius_action_by_complex_division() {
    let z = Mobius::new(2.0, 1.0, 1.0, 1.0).unwrap().apply(Point::I);
    // (2i + 1)/(i + 1) = (2i + 1)(1 - i)/2 = (3 + i)/2
    assert!((z.x() - 1.5).abs() < 1e-15 && (z.y() - 0.5).abs() < 1e-15);
}

#[test]
fn geodesic_through_circle_oracle() {
    let c = geodesic_through(Point::I, p(1.0, 1.0)).unwrap();
    let ends = [c.endpoint_neg(), c.endpoint_pos()].map(|e| e.finite().unwrap());
    let mut ends = ends.to_vec();
    ends.sort_by(f64::total_cmp);
    assert!((ends[0] - (0.5 - 5f64.sqrt() / 2.0)).abs() < 1e-12);
    assert!((ends[1] - (0.5 + 5f64.sqrt() / 2.0)).abs() < 1e-12);
}

#[test]
fn projection_against_brute_force() {
    let c = Geodesic::standard();
    let (foot, _) = c.project(p(3.0, 4.0));
    assert!(dist(foot, p(0.0, 5.0)) < 1e-12);
    assert!((c.dist_to(p(1.0, 1.0)) - 0.5 * 1f64.asinh()).abs() < 1e-15);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let a: f64 = rng.gen_range(-3.0..3.0);
        let c = Geodesic::from_endpoints(BoundaryPoint::Finite(a), BoundaryPoint::Finite(a + rng.gen_range(0.2..4.0))).unwrap();
        let z = p(rng.gen_range(-4.0..4.0), rng.gen_range(0.1..3.0));
        assert!((c.project_param(z) - brute_project(&c, z)).abs() < 1e-6);
    }
}

/// Diameter of the projection of the ball's boundary circle, by dense
/// sampling alone.
fn sampled_ball_diameter(c: &Geodesic, x: Point, n: usize) -> f64 {
    let r = c.dist_to(x);
    let (cy, er) = (x.y() * (2.0 * r).cosh(), x.y() * (2.0 * r).sinh());
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for k in 0..n {
        let a = 2.0 * PI * k as f64 / n as f64;
        let q = p(x.x() + er * a.cos(), (cy + er * a.sin()).max(1e-300));
        // the boundary circle is at distance r from x
        let t = brute_free_project(c, q);
        lo = lo.min(t);
        hi = hi.max(t);
    }
    hi - lo
}

/// Projection onto the imaginary axis by the defining minimization, using
/// only the cosh distance: `t ↦ d(q, i e^{2t})` is minimized at `½ log |q|`.
fn brute_free_project(c: &Geodesic, q: Point) -> f64 {
    assert!(c.endpoint_pos() == BoundaryPoint::Infinity);
    let (mut lo, mut hi) = (-30.0, 30.0);
    for _ in 0..200 {
        let (a, b) = (lo + (hi - lo) / 3.0, hi - (hi - lo) / 3.0);
        let f = |t: f64| cosh_dist(q, p(0.0, (2.0 * t).exp()));
        if f(a) < f(b) {
            hi = b;
        } else {
            lo = a;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn contraction_constant_against_sampling() {
    let c = Geodesic::standard();
    let x = p(FRAC_PI_4.cos(), FRAC_PI_4.sin());
    let sampled = sampled_ball_diameter(&c, x, 4000);
    assert!((ball_projection_diameter(&c, x) - sampled).abs() < 1e-5, "{sampled}");
    assert!((sampled - FRAC_PI_4.cos().asinh()).abs() < 1e-5);
    // the supremum sits at θ → 0 where the diameter tends to asinh 1
    let b = model_constants().b;
    assert!((b - 0.925442).abs() < 1e-6, "{b}");
    assert!((b / 1.05 - 1f64.asinh()).abs() < 1e-9);
    let near = sampled_ball_diameter(&c, p(1e-3f64.cos(), 1e-3f64.sin()), 4000);
    assert!(near <= b && near > 0.99 * b / 1.05);
}

/// Largest distance from a sampled path to the geodesic segment between
/// its endpoints.
fn path_deviation(path: &[Point]) -> f64 {
    let (x, y) = (path[0], *path.last().unwrap());
    let seg = geodesic_through(x, y).unwrap();
    let len = dist(x, y);
    path.iter()
        .map(|&q| {
            let t = seg.project_param(q).clamp(0.0, len);
            dist(q, seg.point_at(t))
        })
        .fold(0.0, f64::max)
}

#[test]
fn morse_constant_contains_sampled_quasi_geodesics() {
    assert_eq!(derive_morse(1.0, 0.0).unwrap(), 0.0);
    assert!((derive_morse(2.0, 0.0).unwrap() - 2.4990356).abs() < 1e-6);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let phi = m("2,1,1,1");
    for (k, psi) in [(0, m("1,1,1,2")), (4, phi.conjugate_by(&m("1,4,0,1"))), (16, phi.conjugate_by(&m("1,16,0,1")))] {
        let (c1, c2) = projection::based_axes(&phi, &psi).unwrap();
        let d = dist(c1.origin(), c2.origin());
        let bound = derive_morse(2.0, d).unwrap();
        for _ in 0..50 {
            let (t, s) = (rng.gen_range(0.5..4.0), rng.gen_range(0.5..4.0));
            // c(t) -> O along c, O -> O' across, O' -> c'(s) along c'
            let mut path: Vec<Point> = (0..=100).map(|i| c1.point_at(t * (1.0 - i as f64 / 100.0))).collect();
            if d > 0.0 {
                let bridge = geodesic_through(c1.origin(), c2.origin()).unwrap();
                path.extend((1..100).map(|i| bridge.point_at(d * i as f64 / 100.0)));
            }
            path.extend((0..=100).map(|i| c2.point_at(s * i as f64 / 100.0)));
            let dev = path_deviation(&path);
            assert!(dev <= bound, "k={k} t={t} s={s}: {dev} > {bound}");
        }
    }
}

#[test]
fn common_perpendicular_closed_form() {
    // (0, ∞) and the semicircle over [a, b]: the perpendicular runs along |z| = √(ab)
    // and cosh(2D) = (b + a)/(b - a) in the halved metric
    let c1 = Geodesic::standard();
    let c2 = Geodesic::from_endpoints(BoundaryPoint::Finite(1.0), BoundaryPoint::Finite(4.0)).unwrap();
    let g = projection::geodesic_pair_geometry(&c1, &c2).unwrap();
    let closed = 0.5 * ((4.0 + 1.0) / (4.0 - 1.0f64)).acosh();
    assert!((closed - 0.5 * 3f64.ln()).abs() < 1e-15);
    assert!((g.d - closed).abs() < 1e-9, "{} vs {closed}", g.d);
    assert!(!g.crossing);
}

#[test]
fn crossing_axes_meet_at_i() {
    let g = projection::pair_geometry(&m("2,1,1,1"), &m("1,1,1,2")).unwrap();
    assert_eq!(g.d, 0.0);
    assert!(dist(g.o, Point::I) < 1e-12 && dist(g.o_prime, Point::I) < 1e-12);
    let rows = projection::divergence_profile(&m("2,1,1,1"), &m("1,1,1,2"), -6.0, 6.0, 0.5).unwrap();
    let zero = rows.iter().find(|r| r.t == 0.0).unwrap();
    assert!(zero.d_min < 1e-12);
    assert!(rows.iter().any(|r| r.d_min > 5.0));
}

#[test]
fn thresholds_shrink_as_axes_separate() {
    let phi = m("2,1,1,1");
    let mut last = f64::INFINITY;
    for k in [1, 4, 16] {
        let psi = phi.conjugate_by(&MappingClass::new(1, k, 0, 1).unwrap());
        let th = projection::fast_divergence_thresholds(&phi, &psi, &Default::default()).unwrap();
        let widest = (th.p_plus - th.t_o).max(th.t_o - th.p_minus).max(th.q_plus - th.s_o).max(th.s_o - th.q_minus);
        assert!(th.p_minus < th.t_o && th.t_o < th.p_plus && th.q_minus < th.s_o && th.s_o < th.q_plus);
        assert!(widest <= last + 1e-12, "k={k}: {widest} > {last}");
        last = widest;
    }
}

#[test]
fn kerckhoff_two_slope_evaluation() {
    let d = torus_model::kerckhoff_dist(Point::I, p(0.0, 2.0), 1).unwrap();
    assert!((d - 0.5 * 2f64.ln()).abs() < 1e-15);
    let r = torus_model::wolpert_check(Point::I, p(0.0, 2.0), &[Slope::new(1, 0).unwrap(), Slope::new(0, 1).unwrap()]).unwrap();
    assert!((r - 2f64.sqrt()).abs() < 1e-15);
}

/// Primitive slopes of length at most `r` at `tau`, by scanning a box.
fn lattice_brute_force(tau: Point, r: f64) -> Vec<Slope> {
    let bound = (r / tau.y().sqrt()).ceil() as i64 + 2;
    let qmax = (r / tau.y().sqrt()).ceil() as i64 + 1;
    let pmax = bound + (qmax as f64 * tau.x().abs()).ceil() as i64 + 2;
    let mut out = Vec::new();
    for q in 0..=qmax {
        for pp in -pmax..=pmax {
            if num_integer::gcd(pp, q) != 1 || (q == 0 && pp != 1) {
                continue;
            }
            let (re, im) = (pp as f64 + q as f64 * tau.x(), q as f64 * tau.y());
            if re * re + im * im <= r * r * tau.y() * (1.0 + 1e-12) {
                out.push(Slope::new(pp, q).unwrap());
            }
        }
    }
    out.sort_by_key(|s| (s.q(), s.p()));
    out
}

#[test]
fn short_curves_match_lattice_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut taus = vec![Point::I, p(0.5, 3f64.sqrt() / 2.0)];
    taus.extend((0..8).map(|_| p(rng.gen_range(-0.5..0.5), rng.gen_range(0.9..1.1))));
    for tau in taus {
        for r in [0.5, 1.0, 1.5, 5.0, 10.0, 23.7] {
            assert_eq!(torus_model::short_curves(tau, r), lattice_brute_force(tau, r), "{tau} R={r}");
        }
    }
}

#[test]
fn thick_constants() {
    let tp = torus_model::default_thick_params();
    assert!((tp.epsilon - 0.945742).abs() < 1e-6, "{}", tp.epsilon);
    assert!((tp.f - 1.216207).abs() < 1e-6, "{}", tp.f);
    assert!((tp.short_curve_coeff - 2.727980).abs() < 1e-6, "{}", tp.short_curve_coeff);
    // ε is the smallest systole along the trace-three axis: dense scan of a period
    let ax = mcg::axis(&m("2,1,1,1")).unwrap();
    let scan = (0..20_000)
        .map(|i| {
            let z = ax.axis.point_at(ax.translation * i as f64 / 20_000.0);
            lattice_brute_force(z, 3.0).iter().map(|s| torus_model::curve_length(*s, z)).fold(f64::INFINITY, f64::min)
        })
        .fold(f64::INFINITY, f64::min);
    assert!((scan - tp.epsilon).abs() < 1e-6, "{scan}");
    // the hexagonal marking is a lower witness for F
    assert!(tp.f >= (2.0 / 3f64.sqrt()).sqrt());
    assert!(torus_model::short_curve_bound(1.0) >= 2u32.into());
}

#[test]
fn radius_never_grows_as_axes_separate() {
    let phi = m("2,1,1,1");
    let b = model_constants().b;
    let mut last = f64::INFINITY;
    for k in [1, 2, 4, 8, 16] {
        let psi = phi.conjugate_by(&MappingClass::new(1, k, 0, 1).unwrap());
        let axes = [mcg::axis(&phi).unwrap().axis, mcg::axis(&psi).unwrap().axis];
        let r = pingpong::certified_radius_for_axes(&axes, b).unwrap();
        // the extent itself moves with the summits; only the radius is monotone
        assert!(r.r_cert <= last, "k={k}");
        last = r.r_cert;
    }
}

#[test]
fn certified_pair_end_to_end() {
    let cert = pingpong::certify(&[m("2,1,1,1"), m("1,1,1,2")], &CertifyConfig::default()).unwrap();
    assert_eq!(cert.n, 12u32.into());
    assert!((cert.r_cert - 0.0105).abs() < 1e-15);
    assert_eq!(cert.verification.empirical.violations, 0);
    assert_eq!(cert.verification.disjointness.violations, 0);
}
