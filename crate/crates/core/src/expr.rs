//! Rational expressions over polynomials with exact unambiguity certificates, and
//! state elimination from unambiguous automata.

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{ExprError, SeriesError};
use crate::matrix::{dot, Matrix};
use crate::nfa::Nfa;
use crate::rep::LinearRep;
use crate::scalar::{Field, Scalar};
use crate::wfa::Wfa;
use crate::word::{Alphabet, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprNode {
    /// Finitely many words with nonzero coefficients.
    Poly(BTreeMap<Word, Scalar>),
    Sum(Rc<RatExpr>, Rc<RatExpr>),
    Prod(Rc<RatExpr>, Rc<RatExpr>),
    Star(Rc<RatExpr>),
}

/// An expression tree. Every node caches its constant term and the minimal automaton of
/// its structural support, which is the exact support when the subtree is unambiguous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatExpr {
    alphabet: Alphabet,
    field: Field,
    node: ExprNode,
    unambiguous: bool,
    constant: Scalar,
    support: Nfa,
}

/// Outcome of the code test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeCheck {
    Code,
    /// A word with two factorizations.
    NotCode(Word),
}

/// Decides whether a language without the empty word is a code.
///
/// Sardinas–Patterson decides; the witness is the least word with two accepting paths in
/// the flower automaton. The two must agree.
pub fn is_code(l: &Nfa) -> Result<CodeCheck, ExprError> {
    if l.accepts_empty() {
        return Err(ExprError::EmptyWord);
    }
    let sp = l.sardinas_patterson();
    let witness = l.minimal_dfa().star().to_wfa_unit().ambiguity_witness();
    assert_eq!(sp, witness.is_none(), "residual test and flower automaton disagree");
    Ok(match witness {
        None => CodeCheck::Code,
        Some(w) => CodeCheck::NotCode(w),
    })
}

impl RatExpr {
    pub fn poly(alphabet: Alphabet, field: Field, terms: impl IntoIterator<Item = (Word, Scalar)>) -> Result<RatExpr, ExprError> {
        let mut map: BTreeMap<Word, Scalar> = BTreeMap::new();
        for (w, c) in terms {
            if c.field() != field {
                return Err(SeriesError::FieldMismatch.into());
            }
            alphabet.indices(&w)?;
            let e = map.entry(w).or_insert_with(|| field.zero());
            *e = &*e + &c;
        }
        map.retain(|_, c| !c.is_zero());
        let constant = map.get(&Word::empty()).cloned().unwrap_or_else(|| field.zero());
        let idx: Vec<Vec<usize>> = map.keys().map(|w| alphabet.indices(w).expect("checked")).collect();
        let support = Nfa::from_words(alphabet.clone(), idx.iter().map(|v| v.as_slice())).minimal_dfa();
        Ok(RatExpr { alphabet, field, node: ExprNode::Poly(map), unambiguous: true, constant, support })
    }

    /// The zero series.
    pub fn zero(alphabet: Alphabet, field: Field) -> RatExpr {
        RatExpr::poly(alphabet, field, []).expect("no terms")
    }

    /// `c·ε`.
    pub fn constant(alphabet: Alphabet, c: Scalar) -> RatExpr {
        let field = c.field();
        RatExpr::poly(alphabet, field, [(Word::empty(), c)]).expect("empty word is valid")
    }

    fn check_compatible(&self, other: &RatExpr) -> Result<(), ExprError> {
        if self.alphabet != other.alphabet {
            return Err(SeriesError::AlphabetMismatch.into());
        }
        if self.field != other.field {
            return Err(SeriesError::FieldMismatch.into());
        }
        Ok(())
    }

    /// Unambiguous when both operands are and their supports are disjoint.
    pub fn sum(a: RatExpr, b: RatExpr) -> Result<RatExpr, ExprError> {
        a.check_compatible(&b)?;
        let unambiguous = a.unambiguous && b.unambiguous && a.support.intersection(&b.support, false).is_empty();
        let support = a.support.union(&b.support).minimal_dfa();
        let constant = &a.constant + &b.constant;
        Ok(RatExpr { alphabet: a.alphabet.clone(), field: a.field, node: ExprNode::Sum(Rc::new(a), Rc::new(b)), unambiguous, constant, support })
    }

    /// Unambiguous when both operands are and every product word splits once.
    pub fn prod(a: RatExpr, b: RatExpr) -> Result<RatExpr, ExprError> {
        a.check_compatible(&b)?;
        let unambiguous = a.unambiguous && b.unambiguous && a.support.unique_concat(&b.support);
        let support = a.support.concat(&b.support).minimal_dfa();
        let constant = &a.constant * &b.constant;
        Ok(RatExpr { alphabet: a.alphabet.clone(), field: a.field, node: ExprNode::Prod(Rc::new(a), Rc::new(b)), unambiguous, constant, support })
    }

    /// Requires a zero constant term; unambiguous when the child is and its support is a code.
    pub fn star(a: RatExpr) -> Result<RatExpr, ExprError> {
        if !a.constant.is_zero() {
            return Err(ExprError::StarOnNonproper);
        }
        let unambiguous = a.unambiguous && is_code(&a.support)? == CodeCheck::Code;
        let support = a.support.star().minimal_dfa();
        let constant = a.field.one();
        Ok(RatExpr { alphabet: a.alphabet.clone(), field: a.field, node: ExprNode::Star(Rc::new(a)), unambiguous, constant, support })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn node(&self) -> &ExprNode {
        &self.node
    }

    /// Whether every operation node in the subtree is certified unambiguous.
    pub fn is_unambiguous(&self) -> bool {
        self.unambiguous
    }

    pub fn constant_term(&self) -> &Scalar {
        &self.constant
    }

    /// Minimal automaton of the support; exact for unambiguous subtrees, a superset otherwise.
    pub fn support(&self) -> &Nfa {
        &self.support
    }

    /// Number of polynomial leaves, counted along every path of the tree.
    pub fn poly_leaves(&self) -> usize {
        match &self.node {
            ExprNode::Poly(_) => 1,
            ExprNode::Sum(a, b) | ExprNode::Prod(a, b) => a.poly_leaves() + b.poly_leaves(),
            ExprNode::Star(a) => a.poly_leaves(),
        }
    }

    /// Visits every node, children before parents.
    pub fn visit(&self, f: &mut dyn FnMut(&RatExpr)) {
        match &self.node {
            ExprNode::Poly(_) => {}
            ExprNode::Sum(a, b) | ExprNode::Prod(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            ExprNode::Star(a) => a.visit(f),
        }
        f(self);
    }

    /// Direct evaluation from the definitions of sum, product and star.
    pub fn eval(&self, w: &Word) -> Result<Scalar, ExprError> {
        let idx = self.alphabet.indices(w)?;
        let mut memo = BTreeMap::new();
        Ok(self.eval_range(&idx, 0, idx.len(), &mut memo))
    }

    fn eval_range(&self, w: &[usize], i: usize, j: usize, memo: &mut BTreeMap<(usize, usize, usize), Scalar>) -> Scalar {
        let key = (self as *const RatExpr as usize, i, j);
        if let Some(s) = memo.get(&key) {
            return s.clone();
        }
        let f = self.field;
        let s = match &self.node {
            ExprNode::Poly(m) => m.get(&self.alphabet.word_from_indices(&w[i..j])).cloned().unwrap_or_else(|| f.zero()),
            ExprNode::Sum(a, b) => &a.eval_range(w, i, j, memo) + &b.eval_range(w, i, j, memo),
            ExprNode::Prod(a, b) => {
                let mut acc = f.zero();
                for k in i..=j {
                    let l = a.eval_range(w, i, k, memo);
                    if !l.is_zero() {
                        acc = &acc + &(&l * &b.eval_range(w, k, j, memo));
                    }
                }
                acc
            }
            ExprNode::Star(a) => {
                if i == j {
                    f.one()
                } else {
                    let mut acc = f.zero();
                    for k in i + 1..=j {
                        let l = a.eval_range(w, i, k, memo);
                        if !l.is_zero() {
                            acc = &acc + &(&l * &self.eval_range(w, k, j, memo));
                        }
                    }
                    acc
                }
            }
        };
        memo.insert(key, s.clone());
        s
    }
}

impl fmt::Display for RatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.node {
            ExprNode::Poly(m) => {
                write!(f, "(poly")?;
                for (w, c) in m {
                    write!(f, " ({} {})", w, c)?;
                }
                write!(f, ")")
            }
            ExprNode::Sum(a, b) => write!(f, "(+ {} {})", a, b),
            ExprNode::Prod(a, b) => write!(f, "(. {} {})", a, b),
            ExprNode::Star(a) => write!(f, "(* {})", a),
        }
    }
}

/// Direct sum: recognizes `S + T`.
pub fn rep_sum(a: &LinearRep, b: &LinearRep) -> LinearRep {
    let f = a.field();
    let (n, m) = (a.dim(), b.dim());
    let u = a.u().iter().chain(b.u()).cloned().collect();
    let v = a.v().iter().chain(b.v()).cloned().collect();
    let mu = (0..a.alphabet().len())
        .map(|x| {
            let mut mx = Matrix::zeros(f, n + m, n + m);
            copy_block(&mut mx, a.mu(x), 0, 0);
            copy_block(&mut mx, b.mu(x), n, n);
            mx
        })
        .collect();
    LinearRep::new(a.alphabet().clone(), f, u, mu, v).expect("consistent shapes")
}

/// Cauchy product: recognizes `S·T`.
///
/// `u = (u₁, S(ε)u₂)`, `μ(x) = [[μ₁(x), μ₁(x)v₁u₂], [0, μ₂(x)]]`, `v = (0, v₂)`.
pub fn rep_product(a: &LinearRep, b: &LinearRep) -> LinearRep {
    let f = a.field();
    let (n, m) = (a.dim(), b.dim());
    let s_eps = dot(a.u(), a.v(), f);
    let mut u: Vec<Scalar> = a.u().to_vec();
    u.extend(b.u().iter().map(|c| &s_eps * c));
    let mut v = vec![f.zero(); n];
    v.extend(b.v().iter().cloned());
    let mu = (0..a.alphabet().len())
        .map(|x| {
            let mut mx = Matrix::zeros(f, n + m, n + m);
            copy_block(&mut mx, a.mu(x), 0, 0);
            copy_block(&mut mx, b.mu(x), n, n);
            let ends = a.mu(x).right_apply(a.v());
            for (i, e) in ends.iter().enumerate().filter(|(_, e)| !e.is_zero()) {
                for (j, c) in b.u().iter().enumerate() {
                    mx.set(i, n + j, e * c);
                }
            }
            mx
        })
        .collect();
    LinearRep::new(a.alphabet().clone(), f, u, mu, v).expect("consistent shapes")
}

/// Star of a series with zero constant term, with one extra boundary state in front.
///
/// `u = (1, 0)`, `μ(x) = [[u₁μ₁(x)v₁, u₁μ₁(x)], [μ₁(x)v₁, μ₁(x)]]`, `v = (1, 0)`.
pub fn rep_star(a: &LinearRep) -> Result<LinearRep, ExprError> {
    let f = a.field();
    if !dot(a.u(), a.v(), f).is_zero() {
        return Err(ExprError::StarOnNonproper);
    }
    let n = a.dim();
    let mut u = vec![f.zero(); n + 1];
    u[0] = f.one();
    let mut v = vec![f.zero(); n + 1];
    v[0] = f.one();
    let mu = (0..a.alphabet().len())
        .map(|x| {
            let m1 = a.mu(x);
            let row = m1.left_apply(a.u());
            let col = m1.right_apply(a.v());
            let mut mx = Matrix::zeros(f, n + 1, n + 1);
            mx.set(0, 0, dot(&row, a.v(), f));
            for j in 0..n {
                mx.set(0, j + 1, row[j].clone());
                mx.set(j + 1, 0, col[j].clone());
            }
            copy_block(&mut mx, m1, 1, 1);
            mx
        })
        .collect();
    Ok(LinearRep::new(a.alphabet().clone(), f, u, mu, v).expect("consistent shapes"))
}

fn copy_block(dst: &mut Matrix, src: &Matrix, r: usize, c: usize) {
    for i in 0..src.rows() {
        for j in 0..src.cols() {
            let e = src.get(i, j);
            if !e.is_zero() {
                dst.set(r + i, c + j, e.clone());
            }
        }
    }
}

/// A polynomial as a prefix tree: one state per prefix of a support word.
pub fn rep_poly(alphabet: &Alphabet, field: Field, terms: &BTreeMap<Word, Scalar>) -> LinearRep {
    let mut prefixes: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    prefixes.insert(Vec::new(), 0);
    for w in terms.keys() {
        let idx = alphabet.indices(w).expect("letters were checked");
        for l in 1..=idx.len() {
            let len = prefixes.len();
            prefixes.entry(idx[..l].to_vec()).or_insert(len);
        }
    }
    let n = if terms.is_empty() { 0 } else { prefixes.len() };
    let mut u = vec![field.zero(); n];
    let mut v = vec![field.zero(); n];
    let mut mu = vec![Matrix::zeros(field, n, n); alphabet.len()];
    if n > 0 {
        u[0] = field.one();
        for (p, &i) in &prefixes {
            if let Some((&x, head)) = p.split_last() {
                mu[x].set(prefixes[head], i, field.one());
            }
        }
        for (w, c) in terms {
            v[prefixes[&alphabet.indices(w).expect("checked")]] = c.clone();
        }
    }
    LinearRep::new(alphabet.clone(), field, u, mu, v).expect("consistent shapes")
}

/// A representation of the series denoted by `e`.
pub fn expr_to_rep(e: &RatExpr) -> LinearRep {
    match &e.node {
        ExprNode::Poly(m) => rep_poly(&e.alphabet, e.field, m),
        ExprNode::Sum(a, b) => rep_sum(&expr_to_rep(a), &expr_to_rep(b)),
        ExprNode::Prod(a, b) => rep_product(&expr_to_rep(a), &expr_to_rep(b)),
        ExprNode::Star(a) => rep_star(&expr_to_rep(a)).expect("star nodes have proper children"),
    }
}

/// An unambiguous expression for the series of an unambiguous automaton.
///
/// Eliminates states in order: `S[p][q] += S[p][r]·S[r][r]*·S[r][q]`, then assembles
/// `Σ I(p)·S[p][q]·T(q) + Σ I(p)T(p)`.
pub fn state_elimination(a: &Wfa) -> Result<RatExpr, ExprError> {
    if let Some(w) = a.ambiguity_witness() {
        return Err(ExprError::AmbiguousInput(w));
    }
    let t = a.trim();
    let (alphabet, f) = (t.alphabet().clone(), t.field());
    let n = t.num_states();
    let mut s: Vec<Vec<Option<RatExpr>>> = vec![vec![None; n]; n];
    let mut letters: BTreeMap<(usize, usize), Vec<(Word, Scalar)>> = BTreeMap::new();
    for (&(p, x, q), w) in t.edges() {
        letters.entry((p, q)).or_default().push((alphabet.word_from_indices(&[x]), w.clone()));
    }
    for ((p, q), terms) in letters {
        s[p][q] = Some(RatExpr::poly(alphabet.clone(), f, terms)?);
    }
    for r in 0..n {
        let old = s.clone();
        for p in 0..n {
            for q in 0..n {
                let (Some(to_r), Some(from_r)) = (&old[p][r], &old[r][q]) else { continue };
                let through = match &old[r][r] {
                    Some(loop_r) => RatExpr::prod(to_r.clone(), RatExpr::prod(RatExpr::star(loop_r.clone())?, from_r.clone())?)?,
                    None => RatExpr::prod(to_r.clone(), from_r.clone())?,
                };
                s[p][q] = Some(match &old[p][q] {
                    Some(direct) => RatExpr::sum(direct.clone(), through)?,
                    None => through,
                });
            }
        }
    }
    let mut terms: Vec<RatExpr> = Vec::new();
    let mut eps = f.zero();
    for p in (0..n).filter(|&p| !t.initial(p).is_zero()) {
        eps = &eps + &(t.initial(p) * t.terminal(p));
        for q in (0..n).filter(|&q| !t.terminal(q).is_zero()) {
            if let Some(e) = &s[p][q] {
                let left = RatExpr::constant(alphabet.clone(), t.initial(p).clone());
                let right = RatExpr::constant(alphabet.clone(), t.terminal(q).clone());
                terms.push(RatExpr::prod(left, RatExpr::prod(e.clone(), right)?)?);
            }
        }
    }
    if !eps.is_zero() {
        terms.push(RatExpr::constant(alphabet.clone(), eps));
    }
    let mut it = terms.into_iter();
    let Some(first) = it.next() else { return Ok(RatExpr::zero(alphabet, f)) };
    let out = it.try_fold(first, RatExpr::sum)?;
    if !out.is_unambiguous() {
        return Err(ExprError::NotUnambiguous);
    }
    Ok(out)
}
