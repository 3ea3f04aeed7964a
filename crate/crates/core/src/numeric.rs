//! Small one-dimensional search routines shared by the geometry modules.

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for the minimum of a unimodal `f` on `[lo, hi]`.
///
/// Returns `(argmin, min)` once the bracket is narrower than `tol`.
pub fn golden_min(mut f: impl FnMut(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut iters = 0;
    while hi - lo > tol && iters < 400 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
        iters += 1;
    }
    let mid = 0.5 * (lo + hi);
    let fm = f(mid);
    // the interior probes can be marginally better than the midpoint
    [(x1, f1), (x2, f2), (mid, fm)]
        .into_iter()
        .fold((mid, fm), |best, c| if c.1 < best.1 { c } else { best })
}

/// Minimizes a unimodal function on the whole line: expands a bracket
/// around `guess` until the function turns upward on both sides, then runs
/// golden-section search. Returns `None` if no bracket is found within
/// `max_radius` of the guess.
pub fn unimodal_min(
    mut f: impl FnMut(f64) -> f64,
    guess: f64,
    max_radius: f64,
    tol: f64,
) -> Option<(f64, f64)> {
    let f0 = f(guess);
    let mut step = 0.5;
    let (mut lo, mut hi);
    // find a downhill direction
    let fr = f(guess + step);
    let fl = f(guess - step);
    if fl >= f0 && fr >= f0 {
        lo = guess - step;
        hi = guess + step;
    } else {
        let dir = if fr < fl { 1.0 } else { -1.0 };
        let mut a = guess;
        let mut b = guess + dir * step;
        let mut fb = f(b);
        loop {
            step *= 2.0;
            if step > max_radius {
                return None;
            }
            let c = b + dir * step;
            let fc = f(c);
            if fc >= fb {
                lo = a.min(c);
                hi = a.max(c);
                break;
            }
            a = b;
            b = c;
            fb = fc;
        }
    }
    if lo > hi {
        std::mem::swap(&mut lo, &mut hi);
    }
    Some(golden_min(f, lo, hi, tol))
}

/// Formats a float with `sig` significant digits in the style of C's `%g`.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sig = sig.max(1);
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= sig as i32 {
        let m = trim_zeros(mantissa);
        format!("{m}e{exp}")
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `%.17e`-style rendering used for floats in certificates and reports.
pub fn fmt_f17(x: f64) -> String {
    format!("{:.16e}", x)
}
