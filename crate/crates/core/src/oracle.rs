//! Exhaustive relation search among the N-th powers of the generators.
//!
//! Letters are `g_i^{±N}`; a reduced word never follows a letter by its own
//! inverse. A word whose product is `±I` is a relation. The search refutes
//! freeness; it cannot prove it (the ping-pong certificate does that).

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::ExactInt;
use crate::mcg::MappingClass;
use crate::pingpong::{Mode, PingPongCertificate};

pub const DEFAULT_MAX_WORD_LENGTH: usize = 6;

/// Number of reduced words of length exactly `k` on `n` generators:
/// `2n (2n-1)^(k-1)`.
pub fn count_reduced_words(n: u64, k: u64) -> BigUint {
    if n == 0 || k == 0 {
        return BigUint::zero();
    }
    BigUint::from(2 * n) * BigUint::from(2 * n - 1).pow((k - 1) as u32)
}

/// Reduced words of length `1..=max_len`.
pub fn total_reduced_words(n: u64, max_len: u64) -> BigUint {
    (1..=max_len).map(|k| count_reduced_words(n, k)).sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Letter by letter, e.g. `g1.g2^-1.g1`.
    pub word: String,
    /// Syllable form, e.g. `g1^2 g2^-1`.
    pub reduced: String,
    /// The product, `1,0,0,1` up to sign.
    pub product: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WordReport {
    pub n_generators: usize,
    #[serde(rename = "N")]
    pub n: ExactInt,
    pub max_word_length: usize,
    pub words_checked: ExactInt,
    pub words_expected: ExactInt,
    pub complete: bool,
    pub violations: Vec<Violation>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl WordReport {
    /// No relation among all words of the configured length.
    pub fn is_free(&self) -> bool {
        self.complete && self.violations.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct FreeCheckConfig {
    /// Stop after this many words; the report is then flagged incomplete.
    pub budget: Option<u64>,
    /// Enumerate first-letter subtrees on the rayon pool.
    pub parallel: bool,
}

fn letter_name(letter: usize) -> String {
    let g = letter / 2 + 1;
    if letter % 2 == 0 {
        format!("g{g}")
    } else {
        format!("g{g}^-1")
    }
}

fn describe(word: &[usize]) -> (String, String) {
    let letters: Vec<String> = word.iter().map(|&l| letter_name(l)).collect();
    let mut syllables: Vec<(usize, i64)> = Vec::new();
    for &l in word {
        let e = if l % 2 == 0 { 1 } else { -1 };
        match syllables.last_mut() {
            Some((g, exp)) if *g == l / 2 => *exp += e,
            _ => syllables.push((l / 2, e)),
        }
    }
    let reduced = syllables
        .iter()
        .map(|&(g, e)| if e == 1 { format!("g{}", g + 1) } else { format!("g{}^{e}", g + 1) })
        .collect::<Vec<_>>()
        .join(" ");
    (letters.join("."), reduced)
}

struct Search<'a> {
    letters: &'a [MappingClass],
    max_len: usize,
    budget: u64,
    checked: u64,
    word: Vec<usize>,
    violations: Vec<Violation>,
}

impl Search<'_> {
    fn visit(&mut self, product: &MappingClass) -> bool {
        if self.checked >= self.budget {
            return false;
        }
        self.checked += 1;
        if product.is_identity() {
            let (word, reduced) = describe(&self.word);
            self.violations.push(Violation { word, reduced, product: product.to_string() });
        }
        if self.word.len() == self.max_len {
            return true;
        }
        let last = *self.word.last().expect("nonempty word");
        for l in 0..self.letters.len() {
            if l == last ^ 1 {
                continue;
            }
            self.word.push(l);
            let next = product * &self.letters[l];
            let more = self.visit(&next);
            self.word.pop();
            if !more {
                return false;
            }
        }
        true
    }
}

/// All reduced words of length at most `max_len` in `g_i^{±N}`, depth first
/// (generator index, then inverse). The powers are taken once by repeated
/// squaring; each word then costs one multiplication on top of its prefix.
pub fn free_check(generators: &[MappingClass], n: u64, max_len: usize, config: FreeCheckConfig) -> Result<WordReport> {
    if generators.is_empty() {
        return Err(Error::InvalidInput("free_check needs at least one generator".into()));
    }
    if n == 0 {
        return Err(Error::InvalidInput("free_check needs N >= 1".into()));
    }
    let start = Instant::now();
    let letters: Vec<MappingClass> = generators
        .iter()
        .flat_map(|g| {
            let p = g.pow(n);
            let inv = p.inverse();
            [p, inv]
        })
        .collect();
    let ng = generators.len() as u64;
    let expected = total_reduced_words(ng, max_len as u64);
    let budget = config.budget.unwrap_or(u64::MAX);
    // each first-letter subtree has the same size, so a sequential budget
    // splits into per-subtree budgets independent of scheduling
    let subtree = (&expected / BigUint::from(2 * ng)).to_u64().unwrap_or(u64::MAX);
    let run = |first: usize| {
        let offset = subtree.saturating_mul(first as u64);
        let mut s = Search {
            letters: &letters,
            max_len,
            budget: budget.saturating_sub(offset),
            checked: 0,
            word: vec![first],
            violations: Vec::new(),
        };
        if max_len > 0 {
            s.visit(&letters[first]);
        }
        (s.checked, s.violations)
    };
    let parts: Vec<(u64, Vec<Violation>)> = if config.parallel {
        (0..letters.len()).into_par_iter().map(run).collect()
    } else {
        (0..letters.len()).map(run).collect()
    };
    let checked: BigUint = parts.iter().map(|(c, _)| BigUint::from(*c)).sum();
    let violations = parts.into_iter().flat_map(|(_, v)| v).collect();
    Ok(WordReport {
        n_generators: generators.len(),
        n: ExactInt(BigUint::from(n)),
        max_word_length: max_len,
        complete: checked == expected,
        words_checked: ExactInt(checked),
        words_expected: ExactInt(expected),
        violations,
        wall_time: start.elapsed(),
    })
}

/// `free_check` with the N of a certified-search certificate.
pub fn cross_validate_report(cert: &PingPongCertificate, max_len: usize, config: FreeCheckConfig) -> Result<WordReport> {
    if cert.mode == Mode::PaperFormula {
        return Err(Error::Refused(
            "paper-formula certificates carry an N with millions of digits; powers cannot be exponentiated".into(),
        ));
    }
    if cert.n.is_zero() {
        return Err(Error::Refused("certificate has N = 0, which generates nothing".into()));
    }
    let n = cert
        .n
        .to_u64()
        .ok_or_else(|| Error::Refused(format!("N = {} is too large to exponentiate", cert.n)))?;
    free_check(&cert.generators, n, max_len, config)
}

/// True iff no relation of length at most `max_len` holds among the
/// certificate's powers.
pub fn cross_validate(cert: &PingPongCertificate, max_len: usize) -> Result<bool> {
    Ok(cross_validate_report(cert, max_len, FreeCheckConfig::default())?.is_free())
}
