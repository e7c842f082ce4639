//! Weighted finite automata.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::SeriesError;
use crate::matrix::Matrix;
use crate::rep::LinearRep;
use crate::scalar::{Field, Scalar};
use crate::word::{Alphabet, Word};

/// A weighted automaton `(Q, I, E, T)`. Zero-weight edges are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wfa {
    alphabet: Alphabet,
    field: Field,
    names: Vec<String>,
    initial: Vec<Scalar>,
    terminal: Vec<Scalar>,
    edges: BTreeMap<(usize, usize, usize), Scalar>,
}

impl Wfa {
    pub fn new(alphabet: Alphabet, field: Field) -> Wfa {
        Wfa { alphabet, field, names: Vec::new(), initial: Vec::new(), terminal: Vec::new(), edges: BTreeMap::new() }
    }

    pub fn add_state(&mut self, name: &str) -> Result<usize, SeriesError> {
        if self.names.iter().any(|n| n == name) {
            return Err(SeriesError::DuplicateState(String::from(name)));
        }
        self.names.push(String::from(name));
        self.initial.push(self.field.zero());
        self.terminal.push(self.field.zero());
        Ok(self.names.len() - 1)
    }

    fn check_state(&self, s: usize) -> Result<(), SeriesError> {
        if s >= self.names.len() {
            return Err(SeriesError::UnknownState(s));
        }
        Ok(())
    }

    fn check_field(&self, w: &Scalar) -> Result<(), SeriesError> {
        if w.field() != self.field {
            return Err(SeriesError::FieldMismatch);
        }
        Ok(())
    }

    pub fn set_initial(&mut self, s: usize, w: Scalar) -> Result<(), SeriesError> {
        self.check_state(s)?;
        self.check_field(&w)?;
        self.initial[s] = w;
        Ok(())
    }

    pub fn set_terminal(&mut self, s: usize, w: Scalar) -> Result<(), SeriesError> {
        self.check_state(s)?;
        self.check_field(&w)?;
        self.terminal[s] = w;
        Ok(())
    }

    /// Sets `E(src, letter, dst)`; the weight must be nonzero.
    pub fn set_edge(&mut self, src: usize, letter: usize, dst: usize, w: Scalar) -> Result<(), SeriesError> {
        self.check_state(src)?;
        self.check_state(dst)?;
        self.check_field(&w)?;
        if letter >= self.alphabet.len() {
            return Err(SeriesError::AlphabetMismatch);
        }
        if w.is_zero() {
            return Err(SeriesError::ZeroWeight);
        }
        self.edges.insert((src, letter, dst), w);
        Ok(())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn state_name(&self, s: usize) -> &str {
        &self.names[s]
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn initial(&self, s: usize) -> &Scalar {
        &self.initial[s]
    }

    pub fn terminal(&self, s: usize) -> &Scalar {
        &self.terminal[s]
    }

    pub fn edge(&self, src: usize, letter: usize, dst: usize) -> Option<&Scalar> {
        self.edges.get(&(src, letter, dst))
    }

    /// All edges as `((src, letter, dst), weight)`.
    pub fn edges(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Scalar)> {
        self.edges.iter()
    }

    /// Edges leaving `src`.
    pub fn edges_from(&self, src: usize) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.edges.range((src, 0, 0)..(src + 1, 0, 0)).map(|(&(_, x, d), w)| (x, d, w))
    }

    fn successors(&self) -> Vec<Vec<Vec<usize>>> {
        let mut succ = vec![vec![Vec::new(); self.alphabet.len()]; self.num_states()];
        for &(s, x, d) in self.edges.keys() {
            succ[s][x].push(d);
        }
        succ
    }

    /// `S(w)`, summing over all paths.
    pub fn eval(&self, w: &Word) -> Result<Scalar, SeriesError> {
        let idx = self.alphabet.indices(w)?;
        Ok(self.eval_indices(&idx))
    }

    pub fn eval_indices(&self, w: &[usize]) -> Scalar {
        let mut row = self.initial.clone();
        for &x in w {
            let mut next = vec![self.field.zero(); self.num_states()];
            for (&(s, y, d), wt) in &self.edges {
                if y == x && !row[s].is_zero() {
                    next[d] = &next[d] + &(&row[s] * wt);
                }
            }
            row = next;
        }
        let mut acc = self.field.zero();
        for (r, t) in row.iter().zip(&self.terminal) {
            acc = &acc + &(r * t);
        }
        acc
    }

    /// Keeps only states that are both accessible and coaccessible, in their original order.
    pub fn trim(&self) -> Wfa {
        let n = self.num_states();
        let mut fwd = vec![Vec::new(); n];
        let mut bwd = vec![Vec::new(); n];
        for &(s, _, d) in self.edges.keys() {
            fwd[s].push(d);
            bwd[d].push(s);
        }
        let acc = reach(&fwd, (0..n).filter(|&s| !self.initial[s].is_zero()));
        let coacc = reach(&bwd, (0..n).filter(|&s| !self.terminal[s].is_zero()));
        let keep: Vec<usize> = (0..n).filter(|&s| acc[s] && coacc[s]).collect();
        self.restrict(&keep)
    }

    fn restrict(&self, keep: &[usize]) -> Wfa {
        let mut map = vec![usize::MAX; self.num_states()];
        for (i, &s) in keep.iter().enumerate() {
            map[s] = i;
        }
        let mut out = Wfa::new(self.alphabet.clone(), self.field);
        for &s in keep {
            out.names.push(self.names[s].clone());
            out.initial.push(self.initial[s].clone());
            out.terminal.push(self.terminal[s].clone());
        }
        for (&(s, x, d), w) in &self.edges {
            if map[s] != usize::MAX && map[d] != usize::MAX {
                out.edges.insert((map[s], x, map[d]), w.clone());
            }
        }
        out
    }

    /// At most one initial state and at most one edge per `(state, letter)`.
    pub fn is_deterministic(&self) -> bool {
        if self.initial.iter().filter(|x| !x.is_zero()).count() > 1 {
            return false;
        }
        let mut last: Option<(usize, usize)> = None;
        for &(s, x, _) in self.edges.keys() {
            if last == Some((s, x)) {
                return false;
            }
            last = Some((s, x));
        }
        true
    }

    pub fn is_unambiguous(&self) -> bool {
        self.ambiguity_witness().is_none()
    }

    /// The shortest word with two distinct accepting paths, least in alphabet order among
    /// words of that length; `None` when the automaton is unambiguous.
    pub fn ambiguity_witness(&self) -> Option<Word> {
        let n = self.num_states();
        let k = self.alphabet.len();
        let succ = self.successors();
        let node = |p: usize, q: usize, f: bool| (p * n + q) * 2 + f as usize;
        let total = n * n * 2;
        // Backward distances to accepting pairs that have diverged.
        let mut pred: Vec<Vec<usize>> = vec![Vec::new(); total];
        for p in 0..n {
            for q in 0..n {
                for f in [false, true] {
                    for x in 0..k {
                        for &p2 in &succ[p][x] {
                            for &q2 in &succ[q][x] {
                                pred[node(p2, q2, f || p2 != q2)].push(node(p, q, f));
                            }
                        }
                    }
                }
            }
        }
        let mut dist = vec![usize::MAX; total];
        let mut queue = VecDeque::new();
        for p in 0..n {
            for q in 0..n {
                if !self.terminal[p].is_zero() && !self.terminal[q].is_zero() {
                    dist[node(p, q, true)] = 0;
                    queue.push_back(node(p, q, true));
                }
            }
        }
        while let Some(a) = queue.pop_front() {
            for &b in &pred[a] {
                if dist[b] == usize::MAX {
                    dist[b] = dist[a] + 1;
                    queue.push_back(b);
                }
            }
        }
        let mut current: Vec<(usize, usize, bool)> = Vec::new();
        for p in 0..n {
            for q in 0..n {
                if !self.initial[p].is_zero() && !self.initial[q].is_zero() {
                    current.push((p, q, p != q));
                }
            }
        }
        let mut best = current.iter().map(|&(p, q, f)| dist[node(p, q, f)]).min()?;
        if best == usize::MAX {
            return None;
        }
        current.retain(|&(p, q, f)| dist[node(p, q, f)] == best);
        let mut word = Vec::new();
        while best > 0 {
            let mut chosen = None;
            for x in 0..k {
                let mut next = Vec::new();
                for &(p, q, f) in &current {
                    for &p2 in &succ[p][x] {
                        for &q2 in &succ[q][x] {
                            let t = (p2, q2, f || p2 != q2);
                            if dist[node(t.0, t.1, t.2)] == best - 1 && !next.contains(&t) {
                                next.push(t);
                            }
                        }
                    }
                }
                if !next.is_empty() {
                    chosen = Some((x, next));
                    break;
                }
            }
            let (x, next) = chosen.expect("distance labels are consistent");
            word.push(x);
            current = next;
            best -= 1;
        }
        Some(self.alphabet.word_from_indices(&word))
    }

    /// Numbers states `0..n` in stored order: `u = I`, `μ(x)_{k,l} = E(k,x,l)`, `v = T`.
    pub fn to_rep(&self) -> LinearRep {
        let n = self.num_states();
        let mut mu = vec![Matrix::zeros(self.field, n, n); self.alphabet.len()];
        for (&(s, x, d), w) in &self.edges {
            mu[x].set(s, d, w.clone());
        }
        LinearRep::new(self.alphabet.clone(), self.field, self.initial.clone(), mu, self.terminal.clone()).expect("consistent shapes")
    }

    /// One state per coordinate, named `1..n`.
    pub fn from_rep(rep: &LinearRep) -> Wfa {
        let n = rep.dim();
        let mut w = Wfa::new(rep.alphabet().clone(), rep.field());
        for i in 0..n {
            w.names.push(format!("{}", i + 1));
        }
        w.initial = rep.u().to_vec();
        w.terminal = rep.v().to_vec();
        for (x, m) in rep.mus().iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    let e = m.get(i, j);
                    if !e.is_zero() {
                        w.edges.insert((i, x, j), e.clone());
                    }
                }
            }
        }
        w
    }

    /// Renames states, e.g. for display. Names must be distinct.
    pub fn with_state_names(mut self, names: Vec<String>) -> Result<Wfa, SeriesError> {
        if names.len() != self.names.len() {
            return Err(SeriesError::DimensionMismatch { expected: self.names.len(), found: names.len() });
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(SeriesError::DuplicateState(n.clone()));
            }
        }
        self.names = names;
        Ok(self)
    }

    /// Applies `f` to every initial, edge and terminal weight; zero results are dropped.
    pub fn map_weights(&self, f: impl Fn(&Scalar) -> Scalar) -> Wfa {
        let mut out = self.clone();
        for x in out.initial.iter_mut().chain(out.terminal.iter_mut()) {
            if !x.is_zero() {
                *x = f(x);
            }
        }
        out.edges = self.edges.iter().map(|(k, w)| (*k, f(w))).filter(|(_, w)| !w.is_zero()).collect();
        out
    }
}

fn reach(adj: &[Vec<usize>], start: impl Iterator<Item = usize>) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut stack: Vec<usize> = Vec::new();
    for s in start {
        if !seen[s] {
            seen[s] = true;
            stack.push(s);
        }
    }
    while let Some(s) = stack.pop() {
        for &d in &adj[s] {
            if !seen[d] {
                seen[d] = true;
                stack.push(d);
            }
        }
    }
    seen
}
