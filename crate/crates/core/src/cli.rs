//! The `teich-pingpong` command line: argument parsing, the constants cache
//! and exit codes (0 success, 1 failed verification, 2 invalid input).

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::hyp2::Point;
use crate::mcg::{self, Classification, MappingClass};
use crate::numeric::fmt_sig;
use crate::oracle::{self, FreeCheckConfig};
use crate::pingpong::{self, CertifyConfig, Mode};
use crate::projection::{self, CONSTANT_MARGIN};
use crate::torus_model::{self, Slope, ThickParams};

pub const DEFAULT_CACHE_FILE: &str = ".teich-pingpong-constants.json";

#[derive(Debug, Parser)]
#[command(name = "teich-pingpong", version, about = "Quantitative ping-pong for torus mapping classes")]
struct Cli {
    /// Worker threads for sampling and enumeration; results do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Recompute derived constants instead of reading the cache file.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Location of the derived-constants cache.
    #[arg(long, global = true, default_value = DEFAULT_CACHE_FILE)]
    cache: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Certified,
    Paper,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Certified => Mode::CertifiedSearch,
            ModeArg::Paper => Mode::PaperFormula,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Elliptic, parabolic or pseudo-Anosov, with the translation distance.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Fixed points, axis and translation distance of a pseudo-Anosov.
    Axis {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Independence and nearest points of two axes.
    Pair {
        #[arg(long, allow_hyphen_values = true)]
        m1: String,
        #[arg(long, allow_hyphen_values = true)]
        m2: String,
        /// Also certify the fast-divergence thresholds.
        #[arg(long)]
        thresholds: bool,
    },
    /// Divergence profile t -> min_s d(c(t), c'(s)) as CSV.
    Profile {
        #[arg(long, allow_hyphen_values = true)]
        m1: String,
        #[arg(long, allow_hyphen_values = true)]
        m2: String,
        #[arg(long, default_value_t = -5.0, allow_hyphen_values = true)]
        t_min: f64,
        #[arg(long, default_value_t = 5.0, allow_hyphen_values = true)]
        t_max: f64,
        #[arg(long, default_value_t = 0.05)]
        step: f64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Build and verify a ping-pong certificate.
    Pingpong {
        /// Generator matrix a,b,c,d; repeat for each generator.
        #[arg(long = "gen", required = true, allow_hyphen_values = true)]
        generators: Vec<String>,
        #[arg(long, value_enum, default_value = "certified")]
        mode: ModeArg,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Use the smallest input translation distance instead of the global one.
        #[arg(long)]
        input_translation: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify, then search all short words in the N-th powers for relations.
    CertifyFree {
        #[arg(long = "gen", required = true, allow_hyphen_values = true)]
        generators: Vec<String>,
        #[arg(long, value_enum, default_value = "certified")]
        mode: ModeArg,
        #[arg(long, default_value_t = oracle::DEFAULT_MAX_WORD_LENGTH)]
        max_word_len: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Skip the certificate and search the powers g^N directly; the
        /// generators may then be arbitrary.
        #[arg(long)]
        power: Option<u64>,
        /// Stop after this many words.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Teichmüller distance of two tori, closed form against Kerckhoff's formula.
    Teich {
        /// Point x,y of the upper half-plane.
        #[arg(long, allow_hyphen_values = true)]
        tau1: String,
        #[arg(long, allow_hyphen_values = true)]
        tau2: String,
        #[arg(long, default_value_t = 500)]
        farey_depth: u32,
        /// Slopes p/q for the length-ratio check.
        #[arg(long = "slope", allow_hyphen_values = true)]
        slopes: Vec<String>,
        /// List the curves of length at most R at tau1.
        #[arg(long)]
        short_radius: Option<f64>,
    },
}

/// Runs the command line with `argv[0]` the program name; returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let first = e.to_string().lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
            let _ = writeln!(err, "error: kind=usage detail={first}");
            return 2;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads.max(1)).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: kind=invalid_input detail=thread pool: {e}");
            return 2;
        }
    };
    // output is buffered so the work can move onto the pool's threads
    let (mut obuf, mut ebuf) = (Vec::new(), Vec::new());
    let result = pool.install(|| execute(&cli, &mut obuf, &mut ebuf));
    let _ = out.write_all(&obuf);
    let _ = err.write_all(&ebuf);
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: kind={} detail={}", e.kind(), one_line(&e.to_string()));
            exit_code(&e)
        }
    }
}

fn one_line(s: &str) -> String {
    s.replace('\n', " ")
}

/// 1 for failed checks, 2 for inputs the pipeline does not accept.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CertificateInvalid { .. }
        | Error::FViolation { .. }
        | Error::HorizonExceeded { .. }
        | Error::ConstantDerivation(_)
        | Error::Io(_) => 1,
        Error::InvalidInput(_)
        | Error::Degenerate(_)
        | Error::NotPseudoAnosov { .. }
        | Error::NotIndependent(..)
        | Error::FixedPointDichotomy(..)
        | Error::Refused(_) => 2,
    }
}

fn parse_point(s: &str) -> Result<Point> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| Error::InvalidInput(format!("point '{s}' must look like x,y")))?;
    let num = |v: &str| {
        v.trim().parse::<f64>().map_err(|_| Error::InvalidInput(format!("point '{s}' has a non-numeric coordinate")))
    };
    Point::new(num(x)?, num(y)?)
}

fn parse_generators(gens: &[String]) -> Result<Vec<MappingClass>> {
    let gens: Vec<MappingClass> = gens.iter().map(|g| MappingClass::parse(g)).collect::<Result<_>>()?;
    if gens.len() < 2 {
        return Err(Error::InvalidInput("at least two generators are needed".into()));
    }
    Ok(gens)
}

fn pt(p: Point) -> String {
    format!("{}+{}i", fmt_sig(p.x(), 12), fmt_sig(p.y(), 12))
}

fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn execute(cli: &Cli, out: &mut Vec<u8>, err: &mut Vec<u8>) -> Result<i32> {
    match &cli.command {
        Command::Classify { matrix } => {
            let m = MappingClass::parse(matrix)?;
            let class = m.classify();
            let mut line = format!("{class} trace={}", m.abs_trace());
            if class == Classification::PseudoAnosov {
                line += &format!(" Tr={}", fmt_sig(mcg::translation_distance(&m)?, 5));
            }
            writeln!(out, "{line}")?;
        }
        Command::Axis { matrix } => {
            let m = MappingClass::parse(matrix)?;
            let a = mcg::axis(&m)?;
            writeln!(
                out,
                "repelling={} attracting={} origin={} Tr={} dilatation={}",
                boundary(a.repelling),
                boundary(a.attracting),
                pt(a.axis.origin()),
                fmt_sig(a.translation, 12),
                fmt_sig(a.dilatation, 12)
            )?;
            if let Some(s) = mcg::fixed_slope_test(&m) {
                writeln!(out, "fixed_slope={s}")?;
            }
        }
        Command::Pair { m1, m2, thresholds } => {
            let (m1, m2) = (MappingClass::parse(m1)?, MappingClass::parse(m2)?);
            m1.require_pseudo_anosov()?;
            m2.require_pseudo_anosov()?;
            if !mcg::independent(&m1, &m2)? {
                writeln!(out, "independent=false")?;
                return Ok(0);
            }
            let g = projection::pair_geometry(&m1, &m2)?;
            writeln!(
                out,
                "independent=true D={} crossing={} O={} O'={} t_O={} s_O={}",
                fmt_sig(g.d, 12),
                g.crossing,
                pt(g.o),
                pt(g.o_prime),
                fmt_sig(g.t_o, 12),
                fmt_sig(g.s_o, 12)
            )?;
            if *thresholds {
                let t = projection::fast_divergence_thresholds(&m1, &m2, &Default::default())?;
                writeln!(
                    out,
                    "P_plus={} P_minus={} Q_plus={} Q_minus={} inner_violations={} beyond_samples={} beyond_violations=0",
                    fmt_sig(t.p_plus, 12),
                    fmt_sig(t.p_minus, 12),
                    fmt_sig(t.q_plus, 12),
                    fmt_sig(t.q_minus, 12),
                    t.inner_violations,
                    t.samples_checked
                )?;
            }
        }
        Command::Profile { m1, m2, t_min, t_max, step, csv } => {
            let (m1, m2) = (MappingClass::parse(m1)?, MappingClass::parse(m2)?);
            if !(step.is_finite() && *step > 0.0 && t_min.is_finite() && t_max.is_finite() && t_min <= t_max) {
                return Err(Error::InvalidInput("profile needs t_min <= t_max and step > 0".into()));
            }
            let rows = projection::divergence_profile(&m1, &m2, *t_min, *t_max, *step)?;
            let mut buf = Vec::new();
            projection::write_profile_csv(&rows, &mut buf)?;
            emit(csv.as_deref(), &String::from_utf8(buf).expect("ascii csv"), out)?;
        }
        Command::Pingpong { generators, mode, samples, seed, input_translation, out: path } => {
            let gens = parse_generators(generators)?;
            let config = certify_config(cli, &gens, (*mode).into(), *samples, *seed, *input_translation)?;
            let cert = pingpong::certify(&gens, &config)?;
            emit(path.as_deref(), &cert.to_json(), out)?;
            if path.is_some() {
                writeln!(out, "certificate valid mode={} N_digits={}", cert.mode, crate::exact::decimal_digits(&cert.n))?;
            }
        }
        Command::CertifyFree { generators, mode, max_word_len, samples, seed, power, budget, out: path } => {
            let gens: Vec<MappingClass> = generators.iter().map(|g| MappingClass::parse(g)).collect::<Result<_>>()?;
            let fc = FreeCheckConfig { budget: *budget, parallel: cli.threads > 1 };
            let (text, report) = match power {
                Some(n) => {
                    let report = oracle::free_check(&gens, *n, *max_word_len, fc)?;
                    (report.to_json(), report)
                }
                None => {
                    let mode: Mode = (*mode).into();
                    if mode == Mode::PaperFormula {
                        return Err(Error::Refused(
                            "paper-formula N has millions of digits and cannot be exponentiated; use --mode certified".into(),
                        ));
                    }
                    let gens = parse_generators(generators)?;
                    let config = certify_config(cli, &gens, mode, *samples, *seed, false)?;
                    let cert = pingpong::certify(&gens, &config)?;
                    let report = oracle::cross_validate_report(&cert, *max_word_len, fc)?;
                    let doc = CombinedReport { certificate: &cert, free_check: &report };
                    (serde_json::to_string_pretty(&doc).expect("report serializes") + "\n", report)
                }
            };
            emit(path.as_deref(), &text, out)?;
            if let Some(v) = report.violations.first() {
                writeln!(err, "violation: word={} reduced={} product={}", v.word, v.reduced, v.product)?;
                return Ok(1);
            }
            if !report.complete {
                writeln!(err, "incomplete: checked {} of {} words", report.words_checked.0, report.words_expected.0)?;
                return Ok(1);
            }
            if path.is_some() {
                writeln!(out, "free up to length {}: {} words checked", report.max_word_length, report.words_checked.0)?;
            }
        }
        Command::Teich { tau1, tau2, farey_depth, slopes, short_radius } => {
            let (t1, t2) = (parse_point(tau1)?, parse_point(tau2)?);
            let slopes: Vec<Slope> = slopes.iter().map(|s| s.parse()).collect::<Result<_>>()?;
            let d = torus_model::teich_dist(t1, t2);
            let k = torus_model::kerckhoff_dist(t1, t2, *farey_depth)?;
            writeln!(
                out,
                "teich_dist={} kerckhoff_dist={} farey_depth={} difference={}",
                fmt_sig(d, 12),
                fmt_sig(k, 12),
                farey_depth,
                fmt_sig(d - k, 3)
            )?;
            if !slopes.is_empty() {
                let ratio = torus_model::wolpert_check(t1, t2, &slopes)?;
                writeln!(
                    out,
                    "length_ratio_max={} bound_exp_2d={} bound_exp_d={}",
                    fmt_sig(ratio, 12),
                    fmt_sig((2.0 * d).exp(), 12),
                    fmt_sig(d.exp(), 12)
                )?;
            }
            if let Some(r) = short_radius {
                let curves = torus_model::short_curves(t1, *r);
                let names: Vec<String> = curves.iter().map(|s| s.to_string()).collect();
                writeln!(out, "short_curves count={} slopes={}", curves.len(), names.join(" "))?;
            }
        }
    }
    Ok(0)
}

fn boundary(p: crate::hyp2::BoundaryPoint) -> String {
    match p.finite() {
        Some(v) => fmt_sig(v, 12),
        None => "inf".into(),
    }
}

#[derive(serde::Serialize)]
struct CombinedReport<'a> {
    certificate: &'a pingpong::PingPongCertificate,
    free_check: &'a oracle::WordReport,
}

fn certify_config(
    cli: &Cli,
    gens: &[MappingClass],
    mode: Mode,
    samples: usize,
    seed: u64,
    input_translation: bool,
) -> Result<CertifyConfig> {
    let mut cache = ConstantsCache::open(&cli.cache, cli.no_cache);
    let b = cache.contraction_b()?;
    let thick = match mode {
        Mode::PaperFormula => {
            let l = gens.iter().map(mcg::translation_distance).collect::<Result<Vec<_>>>()?.into_iter().fold(0.0, f64::max);
            Some(cache.thick_params(l)?)
        }
        Mode::CertifiedSearch => None,
    };
    cache.save()?;
    Ok(CertifyConfig {
        mode,
        samples,
        disjoint_samples: samples,
        seed,
        use_input_translation: input_translation,
        b: Some(b),
        thick,
        ..Default::default()
    })
}

/// Derived constants stored as shortest round-trip decimal strings, keyed by
/// their derivation parameters.
struct ConstantsCache {
    path: PathBuf,
    enabled: bool,
    dirty: bool,
    entries: BTreeMap<String, Vec<String>>,
}

impl ConstantsCache {
    fn open(path: &Path, no_cache: bool) -> Self {
        let entries = if no_cache {
            BTreeMap::new()
        } else {
            fs::read_to_string(path).ok().and_then(|s| serde_json::from_str(&s).ok()).unwrap_or_default()
        };
        ConstantsCache { path: path.to_path_buf(), enabled: !no_cache, dirty: false, entries }
    }

    fn floats(&self, key: &str, n: usize) -> Option<Vec<f64>> {
        let v = self.entries.get(key)?;
        let parsed: Vec<f64> = v.iter().map(|s| s.parse().ok()).collect::<Option<_>>()?;
        (parsed.len() == n).then_some(parsed)
    }

    fn store(&mut self, key: String, values: &[f64]) {
        self.entries.insert(key, values.iter().map(|v| format!("{v:e}")).collect());
        self.dirty = true;
    }

    fn contraction_b(&mut self) -> Result<f64> {
        let key = format!("b;margin={CONSTANT_MARGIN:e};v{}", env!("CARGO_PKG_VERSION"));
        if let Some(v) = self.floats(&key, 1) {
            return Ok(v[0]);
        }
        let b = projection::derive_contraction_b()?;
        self.store(key, &[b]);
        Ok(b)
    }

    fn thick_params(&mut self, l: f64) -> Result<ThickParams> {
        let key = format!("thick;L={l:e};v{}", env!("CARGO_PKG_VERSION"));
        if let Some(v) = self.floats(&key, 6) {
            return Ok(ThickParams {
                epsilon: v[0],
                f: v[1],
                short_curve_coeff: v[2],
                classes: v[3] as usize,
                max_trace: v[4] as u64,
                grid: v[5] as usize,
            });
        }
        let t = torus_model::derive_thick_params(l)?;
        let values = [t.epsilon, t.f, t.short_curve_coeff, t.classes as f64, t.max_trace as f64, t.grid as f64];
        self.store(key, &values);
        Ok(t)
    }

    fn save(&self) -> Result<()> {
        if self.enabled && self.dirty {
            let text = serde_json::to_string_pretty(&self.entries).expect("cache serializes") + "\n";
            fs::write(&self.path, text)?;
        }
        Ok(())
    }
}
