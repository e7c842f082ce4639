//! Exponent formulas `S(w) = λ₁^{a₁(w)} ⋯ λ_k^{a_k(w)}` for unambiguous expressions over `Q`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::ExprError;
use crate::expr::{rep_poly, rep_product, rep_sum, ExprNode, RatExpr};
use crate::factor::factorize;
use crate::matrix::Matrix;
use crate::nfa::Nfa;
use crate::rep::LinearRep;
use crate::scalar::{Field, Scalar};
use crate::wfa::Wfa;
use crate::word::{Alphabet, Word};

/// `λ₁ = −1` followed by primes; `exponents[i]` are integer-weighted representations
/// vanishing outside `support`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentFormula {
    pub lambdas: Vec<Scalar>,
    pub exponents: Vec<LinearRep>,
    pub support: Nfa,
    /// `|a_i(w)| ≤ bound·|w|` for nonempty `w`.
    pub bound: BigUint,
}

impl ExponentFormula {
    pub fn exponent(&self, i: usize, w: &Word) -> Result<BigInt, ExprError> {
        let s = self.exponents[i].eval(w)?;
        let r = s.as_rational().expect("rational weights");
        debug_assert!(r.is_integer());
        Ok(r.to_integer())
    }

    /// `∏ λ_i^{a_i(w)}` on the support, `0` elsewhere.
    pub fn evaluate(&self, w: &Word) -> Result<Scalar, ExprError> {
        let f = Field::Rational;
        if !self.support.accepts_word(w) {
            self.support.alphabet().indices(w)?;
            return Ok(f.zero());
        }
        let mut acc = f.one();
        for (i, l) in self.lambdas.iter().enumerate() {
            let e = self.exponent(i, w)?;
            let e: i64 = if i == 0 { e.is_odd() as i64 } else { i64::try_from(e).expect("exponent fits in i64") };
            acc = &acc * &l.pow(e);
        }
        Ok(acc)
    }
}

fn valuation(n: &BigUint, p: &BigUint) -> i64 {
    let mut n = n.clone();
    let mut k = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        k += 1;
    }
    k
}

/// The 0/1 representation of a deterministic automaton's language.
pub fn char_rep(d: &Nfa) -> LinearRep {
    debug_assert!(d.is_deterministic());
    let f = Field::Rational;
    let n = d.num_states();
    let mut mu = alloc::vec![Matrix::zeros(f, n, n); d.alphabet().len()];
    for q in 0..n {
        for (x, m) in mu.iter_mut().enumerate() {
            for &t in d.successors(q, x) {
                m.set(q, t, f.one());
            }
        }
    }
    let u = (0..n).map(|q| if d.is_initial(q) { f.one() } else { f.zero() }).collect();
    let v = (0..n).map(|q| if d.is_accepting(q) { f.one() } else { f.zero() }).collect();
    LinearRep::new(d.alphabet().clone(), f, u, mu, v).expect("consistent shapes")
}

fn trimmed(r: LinearRep) -> LinearRep {
    Wfa::from_rep(&r).trim().to_rep()
}

struct Builder<'a> {
    alphabet: &'a Alphabet,
    primes: Vec<BigUint>,
}

impl Builder<'_> {
    /// Exponent of `λ_i` in a nonzero rational.
    fn atom(&self, i: usize, c: &Scalar) -> i64 {
        let r = c.as_rational().expect("rational field");
        if i == 0 {
            return r.is_negative() as i64;
        }
        let p = &self.primes[i - 1];
        valuation(r.numer().magnitude(), p) - valuation(r.denom().magnitude(), p)
    }

    fn build(&self, e: &RatExpr) -> Vec<LinearRep> {
        let f = Field::Rational;
        let k = self.primes.len() + 1;
        match e.node() {
            ExprNode::Poly(m) => (0..k)
                .map(|i| {
                    let terms: BTreeMap<Word, Scalar> = m.iter().map(|(w, c)| (w.clone(), f.from_i64(self.atom(i, c)))).filter(|(_, a)| !a.is_zero()).collect();
                    rep_poly(self.alphabet, f, &terms)
                })
                .collect(),
            ExprNode::Sum(a, b) => self.build(a).iter().zip(self.build(b).iter()).map(|(x, y)| trimmed(rep_sum(x, y))).collect(),
            ExprNode::Prod(a, b) => {
                let one_l = char_rep(a.support());
                let one_k = char_rep(b.support());
                self.build(a)
                    .iter()
                    .zip(self.build(b).iter())
                    .map(|(x, y)| trimmed(rep_sum(&rep_product(x, &one_k), &rep_product(&one_l, y))))
                    .collect()
            }
            ExprNode::Star(a) => {
                let one_star = char_rep(e.support());
                self.build(a).iter().map(|x| trimmed(rep_product(&rep_product(&one_star, x), &one_star))).collect()
            }
        }
    }
}

/// Writes every coefficient of an unambiguous expression as a product of powers of `−1`
/// and the primes occurring in its polynomial coefficients.
///
/// `a_i` is assembled from the leaves: additively over disjoint sums, as `A·1_K + 1_L·B`
/// over products, and as `1_{L*}·A·1_{L*}` over stars of codes.
pub fn extract_formula(e: &RatExpr) -> Result<ExponentFormula, ExprError> {
    if e.field() != Field::Rational {
        return Err(ExprError::NonRationalField);
    }
    if !e.is_unambiguous() {
        return Err(ExprError::NotUnambiguous);
    }
    let mut primes: BTreeSet<BigUint> = BTreeSet::new();
    let mut coeffs: Vec<Scalar> = Vec::new();
    e.visit(&mut |n| {
        if let ExprNode::Poly(m) = n.node() {
            for c in m.values() {
                let r = c.as_rational().expect("rational field");
                for part in [r.numer(), r.denom()] {
                    primes.extend(factorize(part.magnitude()).into_keys());
                }
                coeffs.push(c.clone());
            }
        }
    });
    let f = Field::Rational;
    let primes: Vec<BigUint> = primes.into_iter().collect();
    let mut lambdas = alloc::vec![f.from_i64(-1)];
    lambdas.extend(primes.iter().map(|p| f.from_bigint(&BigInt::from_biguint(Sign::Plus, p.clone()))));
    let builder = Builder { alphabet: e.alphabet(), primes };
    let largest = coeffs
        .iter()
        .flat_map(|c| (0..lambdas.len()).map(|i| builder.atom(i, c).unsigned_abs()).collect::<Vec<_>>())
        .max()
        .unwrap_or(0);
    let bound = BigUint::from(largest) * BigUint::from(e.poly_leaves());
    let exponents = builder.build(e);
    Ok(ExponentFormula { lambdas, exponents, support: e.support().clone(), bound })
}
