//! Exact integer helpers: floating logarithms of huge integers, rigorous
//! rational lower bounds for logarithms, and decimal summaries of integers
//! too large to print.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// Natural logarithm of a positive integer of any size.
pub fn ln_biguint(n: &BigUint) -> f64 {
    assert!(!n.is_zero(), "log of zero");
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().expect("finite").ln();
    }
    let shift = bits - 64;
    let top: BigUint = n >> shift;
    top.to_f64().expect("finite").ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn ln_bigint(n: &BigInt) -> f64 {
    ln_biguint(n.magnitude())
}

/// `floor(x * 10^prec)` rounded toward zero for the atanh series, every term
/// truncated downward, so the result is a lower bound of
/// `2 atanh(y) * 10^prec` where `y = y_fixed / 10^prec` and `0 <= y <= 1/3`.
fn atanh2_lower_fixed(y_fixed: &BigUint, scale: &BigUint, prec: u32) -> BigUint {
    let y2 = (y_fixed * y_fixed) / scale;
    let mut power = y_fixed.clone();
    let mut sum = BigUint::zero();
    let mut k = 0u64;
    // |y| <= 1/3 so every term shrinks by at least 9
    let terms = (prec as f64 * std::f64::consts::LN_10 / 9f64.ln()) as u64 + 4;
    while k < terms && !power.is_zero() {
        sum += &power / BigUint::from(2 * k + 1);
        power = (&power * &y2) / scale;
        k += 1;
    }
    sum * 2u32
}

/// A rational `q <= ln(num/den)` with absolute error about `10^-digits`.
/// Requires `num >= den > 0`.
pub fn ln_lower(num: &BigUint, den: &BigUint, digits: u32) -> BigRational {
    assert!(num >= den && !den.is_zero(), "ln_lower needs a ratio >= 1");
    let prec = digits + 10;
    let scale = BigUint::from(10u32).pow(prec);
    // reduce into [1, 2): x = 2^k * m
    let mut k = num.bits() as i64 - den.bits() as i64;
    let (mut mn, mut md) = if k >= 0 { (num.clone(), den << k as u64) } else { (num << (-k) as u64, den.clone()) };
    if mn < md {
        mn <<= 1u32;
        k -= 1;
    }
    if mn >= (&md << 1u32) {
        md <<= 1u32;
        k += 1;
    }
    debug_assert!(k >= 0);
    // ln m = 2 atanh((m - 1)/(m + 1)), and (m-1)/(m+1) <= 1/3 on [1, 2)
    let y_fixed = ((&mn - &md) * &scale) / (&mn + &md);
    let ln_m = atanh2_lower_fixed(&y_fixed, &scale, prec);
    let ln2 = atanh2_lower_fixed(&(&scale / 3u32), &scale, prec);
    let total = ln2 * BigUint::from(k as u64) + ln_m;
    BigRational::new(BigInt::from(total), BigInt::from(scale))
}

/// Rigorous lower bound for the translation distance `acosh(|tr|/2)` of a
/// class with integer trace `|tr| >= 3`.
pub fn translation_lower_bound(abs_trace: &BigUint, digits: u32) -> BigRational {
    assert!(*abs_trace >= BigUint::from(3u32), "needs |trace| >= 3");
    let prec = digits + 10;
    let scale = BigUint::from(10u32).pow(prec);
    let disc = abs_trace * abs_trace - 4u32;
    let root = (disc * &scale * &scale).sqrt();
    // lambda >= (t S + floor(sqrt(t^2 - 4) S)) / (2 S)
    let num = abs_trace * &scale + root;
    let den = &scale * 2u32;
    ln_lower(&num, &den, digits)
}

/// Exact rational value of a finite float.
pub fn rational_of(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

/// `floor(q) + 1` for a nonnegative rational.
pub fn floor_plus_one(q: &BigRational) -> BigUint {
    let f = q.numer().div_floor(q.denom());
    (f + BigInt::one()).to_biguint().expect("nonnegative")
}

/// `ceil(q)` for a nonnegative rational.
pub fn ceil_nonneg(q: &BigRational) -> BigUint {
    let c = q.numer().div_ceil(q.denom());
    c.to_biguint().expect("nonnegative")
}

/// An unreduced fraction `n / d` with `d > 0`.
///
/// `BigRational` normalizes by a gcd after every operation, which is
/// quadratic in the operand size; the factorial-sized radii need linear
/// arithmetic only (products with small numbers and comparisons).
#[derive(Debug, Clone)]
pub struct Frac {
    pub n: BigInt,
    pub d: BigInt,
}

impl Frac {
    pub fn new(n: BigInt, d: BigInt) -> Self {
        assert!(d.is_positive(), "denominator must be positive");
        Frac { n, d }
    }

    pub fn int(n: impl Into<BigInt>) -> Self {
        Frac { n: n.into(), d: BigInt::one() }
    }

    pub fn from_f64(x: f64) -> Self {
        Self::from_ratio(&rational_of(x))
    }

    pub fn from_ratio(q: &BigRational) -> Self {
        Frac::new(q.numer().clone(), q.denom().clone())
    }

    pub fn add(&self, o: &Frac) -> Frac {
        Frac { n: &self.n * &o.d + &o.n * &self.d, d: &self.d * &o.d }
    }

    pub fn sub(&self, o: &Frac) -> Frac {
        Frac { n: &self.n * &o.d - &o.n * &self.d, d: &self.d * &o.d }
    }

    pub fn mul(&self, o: &Frac) -> Frac {
        Frac { n: &self.n * &o.n, d: &self.d * &o.d }
    }

    /// Requires a positive divisor.
    pub fn div(&self, o: &Frac) -> Frac {
        assert!(o.n.is_positive(), "division by a non-positive fraction");
        Frac { n: &self.n * &o.d, d: &self.d * &o.n }
    }

    pub fn scale(&self, k: i64) -> Frac {
        Frac { n: &self.n * k, d: self.d.clone() }
    }

    pub fn floor(&self) -> BigInt {
        self.n.div_floor(&self.d)
    }

    pub fn ceil(&self) -> BigInt {
        self.n.div_ceil(&self.d)
    }

    pub fn is_positive(&self) -> bool {
        self.n.is_positive()
    }

    /// Nearest float, saturating to infinities for huge values.
    pub fn to_f64(&self) -> f64 {
        if self.n.is_zero() {
            return 0.0;
        }
        if self.n.bits() < 1000 && self.d.bits() < 1000 {
            return self.n.to_f64().unwrap() / self.d.to_f64().unwrap();
        }
        let mag = (ln_bigint(&self.n) - ln_bigint(&self.d)).exp();
        if self.n.is_negative() {
            -mag
        } else {
            mag
        }
    }
}

impl PartialEq for Frac {
    fn eq(&self, o: &Frac) -> bool {
        &self.n * &o.d == &o.n * &self.d
    }
}

impl PartialOrd for Frac {
    fn partial_cmp(&self, o: &Frac) -> Option<std::cmp::Ordering> {
        Some((&self.n * &o.d).cmp(&(&o.n * &self.d)))
    }
}

/// Number of decimal digits of `n` (1 for zero).
pub fn decimal_digits(n: &BigUint) -> u64 {
    if n.is_zero() {
        return 1;
    }
    // 2^(bits-1) <= n < 2^bits pins the count to one of two values
    let bits = n.bits();
    let lo = (bits - 1) as f64 * std::f64::consts::LOG10_2;
    let hi = bits as f64 * std::f64::consts::LOG10_2;
    let near_integer = |v: f64| (v - v.round()).abs() < 1e-6;
    if lo.floor() == hi.floor() && !near_integer(lo) && !near_integer(hi) {
        return lo.floor() as u64 + 1;
    }
    let est = lo.floor() as u64;
    let ten = BigUint::from(10u32);
    if *n >= ten.pow((est + 1) as u32) {
        est + 2
    } else {
        est + 1
    }
}

/// Integers with at most this many digits are serialized in full.
pub const FULL_DECIMAL_LIMIT: u64 = 20_000;

/// An exact nonnegative integer as it appears in certificates: the full
/// decimal string when it is printable, otherwise its digit count, bit
/// length and last twenty digits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactInt(pub BigUint);

impl ExactInt {
    pub fn digits(&self) -> u64 {
        decimal_digits(&self.0)
    }

    pub fn decimal(&self) -> Option<String> {
        (self.digits() <= FULL_DECIMAL_LIMIT).then(|| self.0.to_str_radix(10))
    }

    pub fn trailing_digits(&self, k: u32) -> String {
        let m = BigUint::from(10u32).pow(k);
        let r = &self.0 % &m;
        let s = r.to_str_radix(10);
        let width = (k as u64).min(self.digits()) as usize;
        format!("{:0>width$}", s, width = width)
    }
}

impl From<BigUint> for ExactInt {
    fn from(v: BigUint) -> Self {
        ExactInt(v)
    }
}

impl From<u64> for ExactInt {
    fn from(v: u64) -> Self {
        ExactInt(BigUint::from(v))
    }
}

impl Serialize for ExactInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.decimal() {
            Some(dec) => s.serialize_str(&dec),
            None => {
                let mut st = s.serialize_struct("ExactInt", 3)?;
                st.serialize_field("digits", &self.digits())?;
                st.serialize_field("bits", &self.0.bits())?;
                st.serialize_field("trailing_digits", &self.trailing_digits(20))?;
                st.end()
            }
        }
    }
}

/// Sign-aware conversion used by the mapping class code.
pub fn to_biguint_abs(n: &BigInt) -> BigUint {
    n.magnitude().clone()
}

pub fn is_negative(n: &BigInt) -> bool {
    n.sign() == Sign::Minus
}

pub fn abs(n: &BigInt) -> BigInt {
    n.abs()
}
