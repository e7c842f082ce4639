//! Length functions on `Q^×`, the prefix distance on words, bounded-variation scans and
//! prime-support probes.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::DiagnosticsError;
use crate::factor::factorize;
use crate::rep::LinearRep;
use crate::scalar::{Field, Scalar};
use crate::wfa::Wfa;
use crate::word::Word;

/// Sign and `p`-adic valuations of a nonzero rational.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Valuations {
    negative: bool,
    exps: BTreeMap<BigUint, i64>,
}

fn valuations(r: &BigRational) -> Valuations {
    let mut exps: BTreeMap<BigUint, i64> = BTreeMap::new();
    for (p, e) in factorize(r.numer().magnitude()) {
        *exps.entry(p).or_insert(0) += e as i64;
    }
    for (p, e) in factorize(r.denom().magnitude()) {
        *exps.entry(p).or_insert(0) -= e as i64;
    }
    Valuations { negative: r.is_negative(), exps }
}

/// `ℓ(a/b)` from the valuations of `a` and `b`.
fn ratio_length(a: &Valuations, b: &Valuations) -> u64 {
    let primes: BTreeSet<&BigUint> = a.exps.keys().chain(b.exps.keys()).collect();
    let get = |v: &Valuations, p: &BigUint| v.exps.get(p).copied().unwrap_or(0);
    primes.into_iter().map(|p| (get(a, p) - get(b, p)).unsigned_abs()).sum::<u64>() + (a.negative != b.negative) as u64
}

fn rational(g: &Scalar) -> Result<&BigRational, DiagnosticsError> {
    g.as_rational().ok_or(DiagnosticsError::NonRationalField)
}

/// `ℓ(g) = Σ_p |v_p(g)| + [g < 0]`.
pub fn length_q(g: &Scalar) -> Result<u64, DiagnosticsError> {
    let r = rational(g)?;
    if r.is_zero() {
        return Err(DiagnosticsError::ZeroValue);
    }
    let one = Valuations { negative: false, exps: BTreeMap::new() };
    Ok(ratio_length(&valuations(r), &one))
}

/// `|u| + |v| − 2|lcp(u, v)|`.
pub fn word_distance(u: &Word, v: &Word) -> usize {
    u.len() + v.len() - 2 * u.common_prefix_len(v)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariationReport {
    pub c: usize,
    pub maxlen: usize,
    pub max: u64,
    /// Least pair in length-then-alphabet order among those reaching `max`.
    pub witness: Option<(Word, Word)>,
}

impl fmt::Display for VariationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "variation c={} maxlen={} max={}", self.c, self.maxlen, self.max)?;
        if let Some((u, v)) = &self.witness {
            write!(f, " witness {} {}", u, v)?;
        }
        Ok(())
    }
}

/// Largest `ℓ(S(u)/S(v))` over nonzero coefficients with `|u|, |v| ≤ maxlen` and
/// `d(u, v) ≤ c`. Empirical: nothing is claimed beyond the scanned words.
pub fn variation_report(src: &LinearRep, c: usize, maxlen: usize) -> Result<VariationReport, DiagnosticsError> {
    if src.field() != Field::Rational {
        return Err(DiagnosticsError::NonRationalField);
    }
    let alphabet = src.alphabet();
    let coeffs = src.coefficients(maxlen);
    let index: BTreeMap<&Word, usize> = coeffs.iter().enumerate().map(|(i, (w, _))| (w, i)).collect();
    let vals: Vec<Option<Valuations>> = coeffs.iter().map(|(_, s)| s.as_rational().filter(|r| !r.is_zero()).map(valuations)).collect();
    // Shortlex order, so extensions come shortest first.
    let ext = alphabet.words_up_to(c.min(maxlen));
    let mut best: Option<(u64, usize, usize)> = None;
    for (i, (u, _)) in coeffs.iter().enumerate() {
        let Some(vu) = &vals[i] else { continue };
        let mut seen = BTreeSet::new();
        for j in u.len().saturating_sub(c)..=u.len() {
            let room = c - (u.len() - j);
            let prefix = u.prefix(j);
            for e in ext.iter().take_while(|e| e.len() <= room && j + e.len() <= maxlen) {
                let v = prefix.concat(e);
                let k = index[&v];
                if !seen.insert(k) || word_distance(u, &v) > c {
                    continue;
                }
                let Some(vv) = &vals[k] else { continue };
                let l = ratio_length(vu, vv);
                let better = match best {
                    None => true,
                    Some((m, bi, bk)) => l > m || (l == m && (i, k) < (bi, bk)),
                };
                if better {
                    best = Some((l, i, k));
                }
            }
        }
    }
    Ok(VariationReport {
        c,
        maxlen,
        max: best.map_or(0, |b| b.0),
        witness: best.map(|(_, i, k)| (coeffs[i].0.clone(), coeffs[k].0.clone())),
    })
}

/// Largest `ℓ` of an edge or terminal weight; the constant in the variation bound of a
/// deterministic automaton.
pub fn max_weight_length(w: &Wfa) -> Result<u64, DiagnosticsError> {
    let terminal = (0..w.num_states()).map(|q| w.terminal(q)).filter(|t| !t.is_zero());
    let mut m = 0;
    for s in w.edges().map(|(_, s)| s).chain(terminal) {
        m = m.max(length_q(s)?);
    }
    Ok(m)
}

/// Primes dividing some nonzero coefficient, and whether a negative coefficient occurs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrimeSupport {
    pub primes: BTreeSet<BigUint>,
    pub negative: bool,
}

impl fmt::Display for PrimeSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "polya-support")?;
        if self.negative {
            write!(f, " -1")?;
        }
        for p in &self.primes {
            write!(f, " {}", p)?;
        }
        Ok(())
    }
}

/// The union of the prime supports of all coefficients on words of length `≤ maxlen`.
pub fn polya_check_q(src: &LinearRep, maxlen: usize) -> Result<PrimeSupport, DiagnosticsError> {
    if src.field() != Field::Rational {
        return Err(DiagnosticsError::NonRationalField);
    }
    let mut out = PrimeSupport::default();
    for (_, s) in src.coefficients(maxlen) {
        let r = rational(&s)?;
        if r.is_zero() {
            continue;
        }
        let v = valuations(r);
        out.negative |= v.negative;
        out.primes.extend(v.exps.into_keys());
    }
    Ok(out)
}
