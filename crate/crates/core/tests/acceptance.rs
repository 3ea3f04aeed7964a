//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.
//! Tolerances and budgets are fixed here.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use teich_pingpong::exact::Frac;
use teich_pingpong::hyp2::dist;
use teich_pingpong::oracle::{self, FreeCheckConfig};
use teich_pingpong::pingpong::{self, CertifyConfig, Mode};
use teich_pingpong::projection::{self, model_constants, ThresholdConfig};
use teich_pingpong::torus_model::{self, Slope};
use teich_pingpong::{mcg, BoundaryPoint, Geodesic, MappingClass, Point};

const C1_WALL: Duration = Duration::from_secs(120);
const C3_WALL: Duration = Duration::from_secs(30);
const C4_TOL: f64 = 1e-6;
const C5_TOL: f64 = 1e-12;
const C8_TOL: f64 = 1e-10;

type Outcome = Result<String, String>;

fn m(a: i64, b: i64, c: i64, d: i64) -> MappingClass {
    MappingClass::new(a, b, c, d).unwrap()
}

fn phi_psi() -> [MappingClass; 2] {
    [m(2, 1, 1, 1), m(1, 1, 1, 2)]
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn independent_pair(rng: &mut ChaCha8Rng, max_trace: u64) -> [MappingClass; 2] {
    loop {
        let a = mcg::random_pseudo_anosov(rng, max_trace);
        let b = mcg::random_pseudo_anosov(rng, max_trace);
        if mcg::independent(&a, &b).unwrap() {
            return [a, b];
        }
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let config = CertifyConfig { samples: 10_000, ..Default::default() };
    let (mut max_n, mut words) = (BigUint::from(0u32), BigUint::from(0u32));
    for k in 0..20 {
        let gens = independent_pair(&mut rng, 30);
        let cert = pingpong::certify(&gens, &config).map_err(|e| format!("pair {k} {gens:?}: {e}"))?;
        let v = &cert.verification;
        ensure(v.passed && v.analytic.iter().all(|a| a.passed) && v.empirical.ran && v.empirical.violations == 0, || {
            format!("pair {k}: verification failed")
        })?;
        let report = oracle::cross_validate_report(&cert, 6, FreeCheckConfig::default()).map_err(|e| e.to_string())?;
        ensure(report.is_free(), || format!("pair {k}: {:?}", report.violations.first()))?;
        max_n = max_n.max(cert.n.clone());
        words += report.words_checked.0;
    }
    let t = start.elapsed();
    ensure(t <= C1_WALL, || format!("took {t:?} > {C1_WALL:?}"))?;
    Ok(format!("20 pairs certified and free to length 6 ({words} words), max N={max_n}, {t:.1?}"))
}

fn criterion_2() -> Outcome {
    for (b, l, want) in [(3, 1.0, 8u32), (4, 2.0, 52)] {
        let r = pingpong::paper_radius(b, l);
        ensure(r == BigUint::from(want), || format!("B={b} L={l}: R={r}, want {want}"))?;
    }
    let n = pingpong::power_bound_f64(8.0, 0.5, 0.96242);
    ensure(n == BigUint::from(23u32), || format!("(8, 0.5, 0.96242) -> N={n}, want 23"))?;

    let start = Instant::now();
    let gens = phi_psi();
    let cert = pingpong::certify(&gens, &CertifyConfig { mode: Mode::PaperFormula, ..Default::default() })
        .map_err(|e| e.to_string())?;
    let pc = cert.paper.as_ref().ok_or("no paper constants")?;
    let b = pc.b_count.to_u64().ok_or("B does not fit u64")?;
    ensure(b >= 1, || "B = 0".into())?;
    ensure(pc.l < 1.0, || format!("L = {}", pc.l))?;
    let r = &pc.r_paper.0;
    // L < 1, so R = B! + 2: it is 2 modulo every prime up to B
    for p in [2u64, 3, 1_000_003, 4_000_037] {
        if p <= b {
            let rem = r % BigUint::from(p);
            ensure(rem == BigUint::from(2u32 % p as u32), || format!("R mod {p} = {rem}"))?;
        }
    }
    // digit count of B! + 2 from Stirling
    let bf = b as f64;
    let log10 = (bf * bf.ln() - bf + 0.5 * (2.0 * std::f64::consts::PI * bf).ln() + 1.0 / (12.0 * bf)) / std::f64::consts::LN_10;
    let stirling_digits = log10.floor() as u64 + 1;
    ensure(pc.r_paper.digits() == stirling_digits, || format!("R has {} digits, Stirling says {stirling_digits}", pc.r_paper.digits()))?;
    ensure(cert.r_cert <= r.to_f64().unwrap_or(f64::INFINITY), || "R_paper < R_cert".into())?;
    // N·ℓ_lo > 2R + 12b >= (N-1)·ℓ_lo, exactly
    let l_lo = Frac::from_ratio(&pingpong::min_translation_lower());
    let rhs = Frac::int(BigInt::from(r.clone())).scale(2).add(&Frac::from_f64(cert.b).scale(12));
    let n = Frac::int(BigInt::from(pc.n_paper.0.clone()));
    ensure(n.mul(&l_lo) > rhs, || "N_paper·ℓ_min <= 2R+12b".into())?;
    ensure(n.sub(&Frac::int(1)).mul(&l_lo) <= rhs, || "N_paper is not the least bound".into())?;
    ensure(cert.verification.analytic.iter().all(|a| a.passed), || "analytic check failed".into())?;
    Ok(format!(
        "B={} R_paper: {} digits, N_paper: {} digits, R_cert={}; synthetic 8, 52, 23 ({:.1?})",
        pc.b_count,
        pc.r_paper.digits(),
        pc.n_paper.digits(),
        cert.r_cert,
        start.elapsed()
    ))
}

fn random_point(rng: &mut ChaCha8Rng) -> Point {
    Point::new(rng.gen_range(-10.0..10.0), rng.gen_range(-3.0f64..3.0).exp()).unwrap()
}

fn random_geodesic(rng: &mut ChaCha8Rng) -> Geodesic {
    let u = rng.gen_range(-5.0..5.0);
    let pos = if rng.gen_bool(0.1) { BoundaryPoint::Infinity } else { BoundaryPoint::Finite(u + rng.gen_range(0.05..5.0)) };
    let c = Geodesic::from_endpoints(BoundaryPoint::Finite(u), pos).unwrap();
    if rng.gen_bool(0.5) {
        c.reversed()
    } else {
        c
    }
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let b = model_constants().b;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut worst_ball, mut worst_pair) = (0.0f64, f64::NEG_INFINITY);
    for k in 0..100_000 {
        let c = random_geodesic(&mut rng);
        let (x, y) = (random_point(&mut rng), random_point(&mut rng));
        let diam = projection::ball_projection_diameter(&c, x);
        ensure(diam <= b, || format!("config {k}: ball diameter {diam} > b = {b}"))?;
        worst_ball = worst_ball.max(diam);
        let spread = (c.project_param(x) - c.project_param(y)).abs();
        let excess = spread - dist(x, y);
        ensure(excess <= 4.0 * b, || format!("config {k}: projection spread exceeds d + 4b"))?;
        worst_pair = worst_pair.max(excess);
    }
    let t = start.elapsed();
    ensure(t <= C3_WALL, || format!("took {t:?} > {C3_WALL:?}"))?;
    Ok(format!("1e5 configs, max ball diameter {worst_ball:.6} <= b={b:.6}, max spread - d = {worst_pair:.3e}, {t:.1?}"))
}

fn thick_point(rng: &mut ChaCha8Rng) -> Point {
    let eps = torus_model::default_thick_params().epsilon;
    loop {
        let z = Point::new(rng.gen_range(-3.0..3.0), rng.gen_range(-1.5f64..1.5).exp()).unwrap();
        if torus_model::is_thick(z, eps) {
            return z;
        }
    }
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    for k in 0..100 {
        let (a, b) = (thick_point(&mut rng), thick_point(&mut rng));
        let diff = (torus_model::kerckhoff_dist(a, b, 500).map_err(|e| e.to_string())? - torus_model::teich_dist(a, b)).abs();
        ensure(diff <= C4_TOL, || format!("pair {k} ({a}, {b}): |kerckhoff - teich| = {diff:e}"))?;
        worst = worst.max(diff);
    }
    let two_i = Point::new(0.0, 2.0).unwrap();
    let k1 = torus_model::kerckhoff_dist(Point::I, two_i, 1).map_err(|e| e.to_string())?;
    let half_log2 = 0.5 * 2f64.ln();
    ensure(k1 == half_log2 && torus_model::teich_dist(Point::I, two_i) == half_log2, || format!("(i, 2i): {k1} vs {half_log2}"))?;
    Ok(format!("100 thick pairs, max |kerckhoff - teich| = {worst:.2e}; (i, 2i) depth 1 = ½ log 2 exactly"))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for k in 0..1000 {
        let (a, b) = (random_point(&mut rng), random_point(&mut rng));
        let s = loop {
            let (p, q) = (rng.gen_range(-50i64..=50), rng.gen_range(0i64..=50));
            if let Ok(s) = Slope::new(p, q) {
                break s;
            }
        };
        let d = torus_model::teich_dist(a, b);
        let ratio = torus_model::wolpert_check(a, b, &[s]).map_err(|e| e.to_string())?;
        ensure(ratio <= (2.0 * d).exp() + C5_TOL, || format!("draw {k}: ratio {ratio} > e^(2d)"))?;
        ensure(ratio <= d.exp() + C5_TOL * d.exp().max(1.0), || format!("draw {k}: ratio {ratio} > e^d = {}", d.exp()))?;
        worst = worst.max(ratio / d.exp());
    }
    Ok(format!("1000 draws, max ratio / e^d = {worst:.15}"))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut pairs = vec![phi_psi()];
    pairs.extend((0..5).map(|_| independent_pair(&mut rng, 30)));
    let config = ThresholdConfig { horizon: 10.0, ..Default::default() };
    let mut summary = Vec::new();
    let mut beyond_checked = 0u64;
    for (k, [m1, m2]) in pairs.iter().enumerate() {
        let (c1, c2) = (mcg::axis(m1).unwrap().axis, mcg::axis(m2).unwrap().axis);
        let mut ts = Vec::new();
        for delta in [1.0, 2.0, 5.0] {
            let t = projection::properness_threshold(&c1, &c2, delta, 20.0, 0.01).map_err(|e| format!("pair {k} Δ={delta}: {e}"))?;
            ensure(t.is_finite(), || format!("pair {k} Δ={delta}: T infinite"))?;
            // every sampled |t| >= T keeps distance >= Δ, checked by the profile itself
            let rows = projection::geodesic_profile(&c1, &c2, -20.0, 20.0, 0.01).unwrap();
            ensure(rows.iter().filter(|r| r.t.abs() >= t).all(|r| r.d_min >= delta), || format!("pair {k} Δ={delta}: dips below"))?;
            ts.push(t);
        }
        let th = projection::fast_divergence_thresholds(m1, m2, &config).map_err(|e| format!("pair {k}: {e}"))?;
        // independent re-scan of the grid beyond the thresholds
        let pg = projection::geodesic_pair_geometry(&c1, &c2).unwrap();
        let (o, o2) = (pg.o, pg.o_prime);
        let n = (config.horizon / config.step).round() as i64;
        for (sx, px) in [(1.0, th.p_plus - th.t_o), (-1.0, th.t_o - th.p_minus)] {
            for (sy, qy) in [(1.0, th.q_plus - th.s_o), (-1.0, th.s_o - th.q_minus)] {
                for ka in 0..=n {
                    let a = ka as f64 * config.step;
                    if a < px {
                        continue;
                    }
                    let x = c1.point_at(th.t_o + sx * a);
                    for kb in 0..=n {
                        let bb = kb as f64 * config.step;
                        if bb < qy {
                            continue;
                        }
                        let y = c2.point_at(th.s_o + sy * bb);
                        beyond_checked += 1;
                        ensure(dist(x, y) > dist(o, x).max(dist(o2, y)), || format!("pair {k}: violation beyond thresholds at ({a}, {bb})"))?;
                    }
                }
            }
        }
        summary.push(format!("T={:.2}/{:.2}/{:.2}", ts[0], ts[1], ts[2]));
    }
    Ok(format!("6 pairs; {}; {beyond_checked} grid pairs beyond thresholds, 0 violations", summary.join(" ")))
}

fn criterion_7() -> Outcome {
    let mut ratios = Vec::new();
    for r in [1.0, 1.5, 5.0, 10.0, 50.0] {
        let got = torus_model::short_curves(Point::I, r);
        // at τ = i the length of (p, q) is √(p² + q²); 2R is an integer here
        let r2x4 = ((2.0 * r) as i64).pow(2);
        let rmax = r.ceil() as i64;
        let mut want = Vec::new();
        for q in 0..=rmax {
            for p in -rmax..=rmax {
                if num_integer::gcd(p, q) == 1 && (q > 0 || p == 1) && 4 * (p * p + q * q) <= r2x4 {
                    want.push(Slope::new(p, q).unwrap());
                }
            }
        }
        want.sort_by_key(|s| (s.q(), s.p()));
        ensure(got == want, || format!("R={r}: {} curves vs {} by lattice scan", got.len(), want.len()))?;
        let bound = torus_model::short_curve_bound(r);
        ensure(BigUint::from(got.len()) <= bound, || format!("R={r}: {} > bound {bound}", got.len()))?;
        ratios.push(got.len() as f64 / (r * r));
    }
    let coeff = torus_model::default_thick_params().short_curve_coeff;
    ensure(ratios.iter().all(|&q| q <= coeff), || format!("count/R² {ratios:?} exceeds {coeff}"))?;
    // primitive vectors in a half disc: 3R²/π asymptotically
    let asym = 3.0 / std::f64::consts::PI;
    let last = *ratios.last().unwrap();
    ensure((last / asym - 1.0).abs() < 0.05, || format!("count/R² at R=50 is {last}, expected ≈ {asym}"))?;
    Ok(format!("counts match lattice scan; count/R² = {ratios:.3?} <= {coeff:.3}"))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for k in 0..100 {
        let g = mcg::random_pseudo_anosov(&mut rng, 60);
        let h = mcg::random_pseudo_anosov(&mut rng, 20);
        let tr = mcg::translation_distance(&g).unwrap();
        let tr2 = mcg::translation_distance(&g.pow(2)).unwrap();
        let trc = mcg::translation_distance(&g.conjugate_by(&h)).unwrap();
        ensure((tr2 - 2.0 * tr).abs() <= C8_TOL && (trc - tr).abs() <= C8_TOL, || format!("class {k} {g}: {tr} {tr2} {trc}"))?;
    }
    let sanov = oracle::free_check(&[m(1, 2, 0, 1), m(1, 0, 2, 1)], 1, 8, FreeCheckConfig::default()).unwrap();
    ensure(sanov.is_free(), || format!("Sanov pair: {:?}", sanov.violations.first()))?;
    let ell = oracle::free_check(&[m(0, -1, 1, 0)], 1, 2, FreeCheckConfig::default()).unwrap();
    let first = ell.violations.first().ok_or("elliptic: no violation")?;
    ensure(first.word == "g1.g1", || format!("elliptic: first violation {}", first.word))?;
    let sq = m(2, 1, 1, 1);
    let pair = [sq.pow(2), sq.pow(3)];
    let at3 = oracle::free_check(&pair, 1, 3, FreeCheckConfig::default()).unwrap();
    ensure(at3.is_free(), || format!("commuting pair already fails at 3: {:?}", at3.violations.first()))?;
    let at4 = oracle::free_check(&pair, 1, 4, FreeCheckConfig::default()).unwrap();
    ensure(at4.violations.iter().any(|v| v.word == "g1.g2.g1^-1.g2^-1"), || "commutator not found at length 4".into())?;
    Ok(format!(
        "100 classes exact to {C8_TOL:e}; Sanov free over {} words; elliptic g1.g1; commuting pair clean at 3, {} relations at 4",
        sanov.words_checked.0,
        at4.violations.len()
    ))
}

fn bin(dir: &Path, args: &[&str]) -> Result<(), String> {
    let o = Command::new(env!("CARGO_BIN_EXE_teich-pingpong")).current_dir(dir).args(args).output().map_err(|e| e.to_string())?;
    ensure(o.status.success(), || format!("{args:?}: {}", String::from_utf8_lossy(&o.stderr)))
}

fn criterion_9() -> Outcome {
    let gens = phi_psi();
    let config = CertifyConfig { samples: 5_000, seed: 9, ..Default::default() };
    let pool = |n| rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap();
    let certs: Vec<String> = [1, 4]
        .into_iter()
        .map(|t| pool(t).install(|| pingpong::certify(&gens, &config).unwrap().to_json()))
        .collect();
    ensure(certs[0] == certs[1], || "certificates differ across thread counts".into())?;
    ensure(certs[0] == pingpong::certify(&gens, &config).unwrap().to_json(), || "certificates differ across runs".into())?;
    let reports: Vec<String> = [false, true]
        .into_iter()
        .map(|parallel| oracle::free_check(&gens, 12, 6, FreeCheckConfig { parallel, budget: None }).unwrap().to_json())
        .collect();
    ensure(reports[0] == reports[1], || "reports differ sequential vs parallel".into())?;
    let csv = |t| {
        pool(t).install(|| {
            let rows = projection::divergence_profile(&gens[0], &gens[1], -3.0, 3.0, 0.05).unwrap();
            let mut buf = Vec::new();
            projection::write_profile_csv(&rows, &mut buf).unwrap();
            buf
        })
    };
    ensure(csv(1) == csv(3), || "CSV differs across thread counts".into())?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let d = dir.path();
    let gen = ["--gen", "2,1,1,1", "--gen", "1,1,1,2", "--samples", "5000", "--seed", "9"];
    let profile = ["profile", "--m1", "2,1,1,1", "--m2", "1,1,1,2", "--step", "0.1"];
    let mut files = Vec::new();
    for (tag, threads) in [("a", "1"), ("b", "4")] {
        let out = |name: &str| format!("{name}-{tag}");
        bin(d, &[&["--threads", threads, "pingpong"][..], &gen, &["--out", &out("cert")]].concat())?;
        bin(d, &[&["--threads", threads, "certify-free"][..], &gen, &["--out", &out("report")]].concat())?;
        bin(d, &[&["--threads", threads][..], &profile, &["--csv", &out("profile")]].concat())?;
        files.push(["cert", "report", "profile"].map(|n| std::fs::read(d.join(out(n))).unwrap()));
    }
    for (i, name) in ["certificate", "report", "CSV"].iter().enumerate() {
        ensure(files[0][i] == files[1][i], || format!("CLI {name} differs between runs"))?;
    }
    Ok("certificates, reports and CSV byte-identical across runs and thread counts (library and binary)".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("oracle agreement", criterion_1),
        ("literal formula fidelity", criterion_2),
        ("projection contraction", criterion_3),
        ("metric cross-check", criterion_4),
        ("Wolpert bound", criterion_5),
        ("properness and fast divergence", criterion_6),
        ("short curves", criterion_7),
        ("group-theory exacts", criterion_8),
        ("determinism", criterion_9),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|v| v.parse().ok());
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        if only.is_some_and(|k| k != i + 1) {
            continue;
        }
        match std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into())) {
            Ok(detail) => println!("criterion {} [{name}]: PASS ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} [{name}]: FAIL ({detail})", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("acceptance: {failed} criteria failed");
        std::process::exit(1);
    }
    println!("acceptance: all criteria passed");
}
