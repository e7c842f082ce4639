//! One-letter series: rational functions, and the arithmetic-progression form of
//! unambiguous unary automata.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::error::UnivariateError;
use crate::hull::HullConfig;
use crate::matrix::Matrix;
use crate::rep::LinearRep;
use crate::scalar::{Field, Scalar};
use crate::transform::disambiguate;
use crate::wfa::Wfa;
use crate::word::Alphabet;

/// `P(x) / Q(x)` over `Q` with `Q(0) = 1` after normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    numerator: Vec<Scalar>,
    denominator: Vec<Scalar>,
}

fn trim_poly(mut p: Vec<Scalar>) -> Vec<Scalar> {
    while p.last().is_some_and(Scalar::is_zero) {
        p.pop();
    }
    p
}

impl RationalFunction {
    /// Coefficients are listed from the constant term up.
    pub fn new(numerator: Vec<Scalar>, denominator: Vec<Scalar>) -> Result<RationalFunction, UnivariateError> {
        if numerator.iter().chain(&denominator).any(|c| c.field() != Field::Rational) {
            return Err(UnivariateError::NonRationalField);
        }
        let q0 = denominator.first().filter(|c| !c.is_zero()).ok_or(UnivariateError::QZeroAtOrigin)?.clone();
        let numerator = trim_poly(numerator.iter().map(|c| c / &q0).collect());
        let denominator = trim_poly(denominator.iter().map(|c| c / &q0).collect());
        Ok(RationalFunction { numerator, denominator })
    }

    pub fn from_i64(numerator: &[i64], denominator: &[i64]) -> Result<RationalFunction, UnivariateError> {
        let f = Field::Rational;
        RationalFunction::new(numerator.iter().map(|&c| f.from_i64(c)).collect(), denominator.iter().map(|&c| f.from_i64(c)).collect())
    }

    pub fn numerator(&self) -> &[Scalar] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[Scalar] {
        &self.denominator
    }

    /// The first `len` power-series coefficients.
    pub fn series(&self, len: usize) -> Vec<Scalar> {
        let f = Field::Rational;
        let mut s: Vec<Scalar> = Vec::with_capacity(len);
        for n in 0..len {
            let mut c = self.numerator.get(n).cloned().unwrap_or_else(|| f.zero());
            for j in 1..self.denominator.len().min(n + 1) {
                c = &c - &(&self.denominator[j] * &s[n - j]);
            }
            s.push(c);
        }
        s
    }
}

/// Companion-style representation over the alphabet `{x}`.
///
/// The state after reading `x^n` is `(s(n), …, s(n+N−1))` with `N = max(deg P + 1, deg Q)`.
pub fn rep_from_ratfun(f: &RationalFunction) -> LinearRep {
    let field = Field::Rational;
    let alphabet = Alphabet::new(vec!['x']).expect("one letter");
    let deg_p1 = f.numerator.len();
    let deg_q = f.denominator.len().saturating_sub(1);
    let n = deg_p1.max(deg_q);
    let u = f.series(n);
    let mut m = Matrix::zeros(field, n, n);
    for k in 0..n.saturating_sub(1) {
        m.set(k + 1, k, field.one());
    }
    for j in 1..=deg_q {
        m.set(n - j, n - 1, -&f.denominator[j]);
    }
    let mut v = vec![field.zero(); n];
    if n > 0 {
        v[0] = field.one();
    }
    LinearRep::new(alphabet, field, u, vec![m], v).expect("consistent shapes")
}

/// `s(kd + r) = α_r β_r^k` for all `k ≥ 0`, except at the finitely many indices in `exceptions`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct APForm {
    pub d: usize,
    pub alpha: Vec<Scalar>,
    pub beta: Vec<Scalar>,
    pub exceptions: BTreeMap<usize, Scalar>,
}

impl APForm {
    pub fn eval(&self, n: usize) -> Scalar {
        if let Some(s) = self.exceptions.get(&n) {
            return s.clone();
        }
        let (k, r) = n.div_rem(&self.d);
        &self.alpha[r] * &self.beta[r].pow(k as i64)
    }
}

impl fmt::Display for APForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "apform d={}", self.d)?;
        for r in 0..self.d {
            writeln!(f, "residue {} alpha {} beta {}", r, self.alpha[r], self.beta[r])?;
        }
        for (n, s) in &self.exceptions {
            writeln!(f, "exception {} {}", n, s)?;
        }
        Ok(())
    }
}

/// Lengths `n <= bound` of paths from each initial state `p` to each terminal state `q`.
pub fn path_length_sets(w: &Wfa, bound: usize) -> BTreeMap<(usize, usize), Vec<usize>> {
    let n = w.num_states();
    let mut succ = vec![Vec::new(); n];
    for (&(s, _, d), _) in w.edges() {
        succ[s].push(d);
    }
    let mut out = BTreeMap::new();
    for p in (0..n).filter(|&p| !w.initial(p).is_zero()) {
        let mut cur = vec![false; n];
        cur[p] = true;
        let mut lens: Vec<Vec<usize>> = vec![Vec::new(); n];
        for len in 0..=bound {
            for q in 0..n {
                if cur[q] && !w.terminal(q).is_zero() {
                    lens[q].push(len);
                }
            }
            let mut next = vec![false; n];
            for s in (0..n).filter(|&s| cur[s]) {
                for &d in &succ[s] {
                    next[d] = true;
                }
            }
            cur = next;
        }
        for (q, l) in lens.into_iter().enumerate() {
            if !l.is_empty() {
                out.insert((p, q), l);
            }
        }
    }
    out
}

/// Lengths of the simple cycles of a unary automaton in which every strongly connected
/// component is a single cycle, or `None` if some component is not.
fn cycle_lengths(w: &Wfa) -> Option<Vec<usize>> {
    let n = w.num_states();
    let mut reach = vec![vec![false; n]; n];
    for (s, row) in reach.iter_mut().enumerate() {
        let mut stack = vec![s];
        while let Some(a) = stack.pop() {
            for (_, b, _) in w.edges_from(a) {
                if !row[b] {
                    row[b] = true;
                    stack.push(b);
                }
            }
        }
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] || !reach[s][s] {
            continue;
        }
        let comp: Vec<usize> = (0..n).filter(|&r| reach[s][r] && reach[r][s]).collect();
        let inner = comp.iter().map(|&a| w.edges_from(a).filter(|(_, b, _)| reach[*b][s] && reach[s][*b]).count()).sum::<usize>();
        if inner != comp.len() {
            return None;
        }
        for &r in &comp {
            seen[r] = true;
        }
        out.push(comp.len());
    }
    Some(out)
}

/// The form with period `d` read off from `s` on `[start, start + 2d)`.
fn form_from_window(s: &[Scalar], start: usize, d: usize, field: Field) -> Option<APForm> {
    let mut alpha = vec![field.zero(); d];
    let mut beta = vec![field.one(); d];
    for n in start..start + d {
        let r = n % d;
        if s[n].is_zero() {
            continue;
        }
        let b = s[n + d].checked_div(&s[n])?;
        if b.is_zero() {
            return None;
        }
        alpha[r] = &s[n] * &b.pow(-((n / d) as i64));
        beta[r] = b;
    }
    Some(APForm { d, alpha, beta, exceptions: BTreeMap::new() })
}

/// The arithmetic-progression form of an unambiguous automaton over one letter.
///
/// After trimming, every strongly connected component is a simple cycle and an accepting
/// path meets at most one of them, so with `L` the lcm of the cycle lengths and `N` the
/// number of states, `s(n + L) / s(n)` depends only on `n mod L` once `n >= N`. The
/// returned period is the least divisor of `L` reproducing the series on two full
/// periods from `N`; the indices below `N` that disagree are stored as exceptions.
pub fn extract_ap_form(w: &Wfa) -> Result<APForm, UnivariateError> {
    if w.alphabet().len() != 1 {
        return Err(UnivariateError::NotUnary);
    }
    if let Some(word) = w.ambiguity_witness() {
        return Err(UnivariateError::AmbiguousInput(word));
    }
    let f = w.field();
    let t = w.trim();
    let start = t.num_states();
    let period = cycle_lengths(&t).ok_or(UnivariateError::NotProgression)?.into_iter().fold(1usize, |acc, c| acc.lcm(&c));
    let series: Vec<Scalar> = t.to_rep().coefficients(start + 2 * period).into_iter().map(|(_, c)| c).collect();
    let window = start..start + 2 * period;
    let mut form = (1..=period)
        .filter(|d| period % d == 0)
        .filter_map(|d| form_from_window(&series, start, d, f))
        .find(|form| window.clone().all(|n| form.eval(n) == series[n]))
        .ok_or(UnivariateError::NotProgression)?;
    for (n, c) in series.iter().enumerate().take(start) {
        if form.eval(n) != *c {
            form.exceptions.insert(n, c.clone());
        }
    }
    Ok(form)
}

/// `P/Q` → representation → unambiguous automaton → progression form.
pub fn univariate_polya_pipeline(f: &RationalFunction, config: &HullConfig) -> Result<APForm, UnivariateError> {
    let rep = rep_from_ratfun(f);
    let w = disambiguate(&rep, config)?;
    extract_ap_form(&w)
}
