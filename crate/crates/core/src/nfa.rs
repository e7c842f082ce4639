//! Unweighted ε-free automata for support languages.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::wfa::Wfa;
use crate::word::{Alphabet, Word};

/// A nondeterministic automaton without ε-transitions. `trans[q][x]` is sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    initial: Vec<bool>,
    accepting: Vec<bool>,
    trans: Vec<Vec<Vec<usize>>>,
}

impl Nfa {
    pub fn new(alphabet: Alphabet) -> Nfa {
        Nfa { alphabet, initial: Vec::new(), accepting: Vec::new(), trans: Vec::new() }
    }

    /// The empty language.
    pub fn empty(alphabet: Alphabet) -> Nfa {
        Nfa::new(alphabet)
    }

    /// A finite language.
    pub fn from_words<'a>(alphabet: Alphabet, words: impl IntoIterator<Item = &'a [usize]>) -> Nfa {
        let mut a = Nfa::new(alphabet);
        let root = a.add_state();
        a.initial[root] = true;
        let mut children: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for w in words {
            let mut q = root;
            for &x in w {
                q = match children.get(&(q, x)) {
                    Some(&c) => c,
                    None => {
                        let c = a.add_state();
                        a.add_transition(q, x, c);
                        children.insert((q, x), c);
                        c
                    }
                };
            }
            a.accepting[q] = true;
        }
        a
    }

    /// The language of accepting paths of a weighted automaton; equal to its support
    /// when the automaton is unambiguous.
    pub fn from_wfa(w: &Wfa) -> Nfa {
        let mut a = Nfa::new(w.alphabet().clone());
        for q in 0..w.num_states() {
            a.add_state();
            a.initial[q] = !w.initial(q).is_zero();
            a.accepting[q] = !w.terminal(q).is_zero();
        }
        for (&(s, x, d), _) in w.edges() {
            a.add_transition(s, x, d);
        }
        a
    }

    pub fn add_state(&mut self) -> usize {
        self.initial.push(false);
        self.accepting.push(false);
        self.trans.push(vec![Vec::new(); self.alphabet.len()]);
        self.trans.len() - 1
    }

    pub fn add_transition(&mut self, src: usize, letter: usize, dst: usize) {
        let t = &mut self.trans[src][letter];
        if let Err(pos) = t.binary_search(&dst) {
            t.insert(pos, dst);
        }
    }

    pub fn set_initial(&mut self, q: usize, on: bool) {
        self.initial[q] = on;
    }

    pub fn set_accepting(&mut self, q: usize, on: bool) {
        self.accepting[q] = on;
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.trans.len()
    }

    pub fn is_initial(&self, q: usize) -> bool {
        self.initial[q]
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn successors(&self, q: usize, letter: usize) -> &[usize] {
        &self.trans[q][letter]
    }

    fn initials(&self) -> Vec<usize> {
        (0..self.num_states()).filter(|&q| self.initial[q]).collect()
    }

    pub fn accepts(&self, w: &[usize]) -> bool {
        let mut cur: BTreeSet<usize> = self.initials().into_iter().collect();
        for &x in w {
            cur = cur.iter().flat_map(|&q| self.trans[q][x].iter().copied()).collect();
        }
        cur.iter().any(|&q| self.accepting[q])
    }

    pub fn accepts_word(&self, w: &Word) -> bool {
        self.alphabet.indices(w).map(|idx| self.accepts(&idx)).unwrap_or(false)
    }

    pub fn accepts_empty(&self) -> bool {
        (0..self.num_states()).any(|q| self.initial[q] && self.accepting[q])
    }

    /// Deterministic when at most one initial state and one successor per letter.
    pub fn is_deterministic(&self) -> bool {
        self.initials().len() <= 1 && self.trans.iter().all(|t| t.iter().all(|d| d.len() <= 1))
    }

    /// Copies `other`'s states after ours; returns the offset.
    fn absorb(&mut self, other: &Nfa) -> usize {
        let off = self.num_states();
        for q in 0..other.num_states() {
            self.add_state();
            for x in 0..self.alphabet.len() {
                for &d in &other.trans[q][x] {
                    self.trans[off + q][x].push(off + d);
                }
            }
        }
        off
    }

    pub fn union(&self, other: &Nfa) -> Nfa {
        let mut a = self.clone();
        let off = a.absorb(other);
        for q in 0..other.num_states() {
            a.initial[off + q] = other.initial[q];
            a.accepting[off + q] = other.accepting[q];
        }
        a
    }

    pub fn concat(&self, other: &Nfa) -> Nfa {
        let mut a = self.clone();
        let off = a.absorb(other);
        let eps_left = self.accepts_empty();
        let eps_right = other.accepts_empty();
        for q in 0..other.num_states() {
            a.initial[off + q] = eps_left && other.initial[q];
            a.accepting[off + q] = other.accepting[q];
        }
        for q in 0..self.num_states() {
            a.accepting[q] = eps_right && self.accepting[q];
        }
        let entries = other.initials();
        for q in 0..self.num_states() {
            for x in 0..self.alphabet.len() {
                if self.trans[q][x].iter().any(|&d| self.accepting[d]) {
                    for &i in &entries {
                        a.add_transition(q, x, off + i);
                    }
                }
            }
        }
        a
    }

    /// Kleene star, with one fresh state marking the factor boundaries.
    ///
    /// When `self` is deterministic, accepting paths of the result correspond one to one
    /// with factorizations into words of the language.
    pub fn star(&self) -> Nfa {
        let mut a = Nfa::new(self.alphabet.clone());
        let b = a.add_state();
        a.initial[b] = true;
        a.accepting[b] = true;
        let off = a.absorb(self);
        let mut ends = Vec::new();
        for q in 0..self.num_states() {
            for x in 0..self.alphabet.len() {
                if self.trans[q][x].iter().any(|&d| self.accepting[d]) {
                    ends.push((off + q, x));
                }
            }
        }
        for (q, x) in ends {
            a.add_transition(q, x, b);
        }
        for i in self.initials() {
            for x in 0..self.alphabet.len() {
                for &d in &self.trans[i][x] {
                    a.add_transition(b, x, off + d);
                }
                if self.trans[i][x].iter().any(|&d| self.accepting[d]) {
                    a.add_transition(b, x, b);
                }
            }
        }
        a
    }

    /// Subset construction over reachable subsets, numbered in breadth-first order.
    pub fn determinize(&self) -> Nfa {
        let k = self.alphabet.len();
        let start: Vec<usize> = self.initials();
        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut sets = vec![start.clone()];
        index.insert(start, 0);
        let mut out = Nfa::new(self.alphabet.clone());
        out.add_state();
        out.initial[0] = true;
        let mut i = 0;
        while i < sets.len() {
            let set = sets[i].clone();
            out.accepting[i] = set.iter().any(|&q| self.accepting[q]);
            for x in 0..k {
                let next: BTreeSet<usize> = set.iter().flat_map(|&q| self.trans[q][x].iter().copied()).collect();
                if next.is_empty() {
                    continue;
                }
                let next: Vec<usize> = next.into_iter().collect();
                let j = match index.get(&next) {
                    Some(&j) => j,
                    None => {
                        let j = sets.len();
                        index.insert(next.clone(), j);
                        sets.push(next);
                        out.add_state();
                        j
                    }
                };
                out.add_transition(i, x, j);
            }
            i += 1;
        }
        out
    }

    fn coaccessible(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut pred = vec![Vec::new(); n];
        for q in 0..n {
            for t in &self.trans[q] {
                for &d in t {
                    pred[d].push(q);
                }
            }
        }
        let mut seen = self.accepting.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&q| seen[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &pred[q] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// The minimal trim deterministic automaton, numbered in breadth-first order from the
    /// initial state. Two automata for the same language give identical values.
    pub fn minimal_dfa(&self) -> Nfa {
        let d = self.determinize();
        let n = d.num_states();
        let k = self.alphabet.len();
        let live = d.coaccessible();
        if !live.first().copied().unwrap_or(false) {
            return Nfa::empty(self.alphabet.clone());
        }
        // Dead states join the implicit sink, class 0.
        let step = |q: usize, x: usize| d.trans[q][x].first().copied().filter(|&t| live[t]);
        let mut class: Vec<usize> = (0..n).map(|q| if !live[q] { 0 } else if d.accepting[q] { 1 } else { 2 }).collect();
        loop {
            let mut sigs: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
            let mut next = vec![0; n];
            for q in (0..n).filter(|&q| live[q]) {
                let sig: Vec<usize> = (0..k).map(|x| step(q, x).map_or(0, |t| class[t])).collect();
                let len = sigs.len();
                next[q] = *sigs.entry((class[q], sig)).or_insert(len + 1);
            }
            let before = class.iter().filter(|&&c| c != 0).collect::<BTreeSet<_>>().len();
            if sigs.len() == before {
                break;
            }
            class = next;
        }
        let mut out = Nfa::new(self.alphabet.clone());
        let mut number: BTreeMap<usize, usize> = BTreeMap::new();
        let mut queue = VecDeque::new();
        number.insert(class[0], 0);
        out.add_state();
        out.initial[0] = true;
        queue.push_back(0usize);
        while let Some(q) = queue.pop_front() {
            let from = number[&class[q]];
            out.accepting[from] = d.accepting[q];
            for x in 0..k {
                if let Some(t) = step(q, x) {
                    let to = match number.get(&class[t]) {
                        Some(&to) => to,
                        None => {
                            let to = out.add_state();
                            number.insert(class[t], to);
                            queue.push_back(t);
                            to
                        }
                    };
                    out.add_transition(from, x, to);
                }
            }
        }
        out
    }

    /// The least word (shortest, then alphabet order) accepted, if any.
    pub fn shortest_word(&self) -> Option<Word> {
        let n = self.num_states();
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = self.initial.clone();
        let mut queue: VecDeque<usize> = self.initials().into_iter().collect();
        while let Some(q) = queue.pop_front() {
            if self.accepting[q] {
                let mut w = Vec::new();
                let mut at = q;
                while let Some((p, x)) = prev[at] {
                    w.push(x);
                    at = p;
                }
                w.reverse();
                return Some(self.alphabet.word_from_indices(&w));
            }
            for x in 0..self.alphabet.len() {
                for &d in &self.trans[q][x] {
                    if !seen[d] {
                        seen[d] = true;
                        prev[d] = Some((q, x));
                        queue.push_back(d);
                    }
                }
            }
        }
        None
    }

    pub fn is_empty(&self) -> bool {
        self.shortest_word().is_none()
    }

    /// Product automaton; with `nonempty` it accepts only nonempty words.
    pub fn intersection(&self, other: &Nfa, nonempty: bool) -> Nfa {
        let k = self.alphabet.len();
        let mut out = Nfa::new(self.alphabet.clone());
        let mut index: BTreeMap<(usize, usize, bool), usize> = BTreeMap::new();
        let mut queue = VecDeque::new();
        for p in self.initials() {
            for q in other.initials() {
                let s = out.add_state();
                out.initial[s] = true;
                index.insert((p, q, false), s);
                queue.push_back((p, q, false));
            }
        }
        while let Some((p, q, moved)) = queue.pop_front() {
            let s = index[&(p, q, moved)];
            out.accepting[s] = self.accepting[p] && other.accepting[q] && (moved || !nonempty);
            for x in 0..k {
                for &p2 in &self.trans[p][x] {
                    for &q2 in &other.trans[q][x] {
                        let key = (p2, q2, true);
                        let t = match index.get(&key) {
                            Some(&t) => t,
                            None => {
                                let t = out.add_state();
                                index.insert(key, t);
                                queue.push_back(key);
                                t
                            }
                        };
                        out.add_transition(s, x, t);
                    }
                }
            }
        }
        out
    }

    /// Left quotient `A⁻¹B = { t : a·t ∈ B for some a ∈ A }` of `other` by `self`:
    /// the states of `other` reachable by words of `self`, as a set.
    fn quotient_states(&self, other: &Nfa, nonempty: bool) -> BTreeSet<usize> {
        let k = self.alphabet.len();
        let mut seen: BTreeSet<(usize, usize, bool)> = BTreeSet::new();
        let mut stack: Vec<(usize, usize, bool)> = Vec::new();
        for a in self.initials() {
            for b in other.initials() {
                if seen.insert((a, b, false)) {
                    stack.push((a, b, false));
                }
            }
        }
        let mut out = BTreeSet::new();
        while let Some((a, b, moved)) = stack.pop() {
            if self.accepting[a] && (moved || !nonempty) {
                out.insert(b);
            }
            for x in 0..k {
                for &a2 in &self.trans[a][x] {
                    for &b2 in &other.trans[b][x] {
                        if seen.insert((a2, b2, true)) {
                            stack.push((a2, b2, true));
                        }
                    }
                }
            }
        }
        out
    }

    /// `self` with its initial states replaced.
    fn restart(&self, initial: &BTreeSet<usize>) -> Nfa {
        let mut a = self.clone();
        for q in 0..a.num_states() {
            a.initial[q] = initial.contains(&q);
        }
        a
    }

    /// Whether every word of `self·other` splits in exactly one way.
    ///
    /// Two splits `l·k = l'·k'` with `l' = l·t`, `t ≠ ε`, exist exactly when
    /// `(L⁻¹L ∖ ε) ∩ K·K⁻¹` is nonempty.
    pub fn unique_concat(&self, other: &Nfa) -> bool {
        let l = self.minimal_dfa();
        let k = other.minimal_dfa();
        let quotient = l.restart(&l.quotient_states(&l, false));
        // q is useful when some word of K leads from q to acceptance.
        let mut prefixes = k.clone();
        for q in 0..k.num_states() {
            let from_q = k.restart(&core::iter::once(q).collect());
            prefixes.accepting[q] = !k.intersection(&from_q, false).is_empty();
        }
        quotient.intersection(&prefixes, true).is_empty()
    }

    /// Sardinas–Patterson on residual item sets: whether the language is a code.
    /// The language must not contain the empty word.
    pub fn sardinas_patterson(&self) -> bool {
        let d = self.minimal_dfa();
        let n = d.num_states();
        if n == 0 {
            return true;
        }
        // Item (q, nonempty) stands for the right language of q, minus ε if flagged.
        let start: Vec<(usize, bool)> = d.quotient_states(&d, false).into_iter().map(|q| (q, true)).collect();
        let mut seen: BTreeSet<(usize, bool)> = start.iter().copied().collect();
        let mut stack = start;
        while let Some((q, flag)) = stack.pop() {
            if d.accepting[q] && !flag {
                return false;
            }
            let from_q = d.restart(&core::iter::once(q).collect());
            // L⁻¹U: states reached from q by a word of L.
            let mut next: Vec<(usize, bool)> = d.quotient_states(&from_q, false).into_iter().map(|r| (r, false)).collect();
            // U⁻¹L: states of L's automaton reached by a (nonempty if flagged) word of U.
            next.extend(from_q.quotient_states(&d, flag).into_iter().map(|r| (r, false)));
            for item in next {
                if seen.insert(item) {
                    stack.push(item);
                }
            }
        }
        true
    }

    /// The same automaton with every weight 1 over `Q`.
    pub fn to_wfa_unit(&self) -> Wfa {
        let f = crate::scalar::Field::Rational;
        let mut w = Wfa::new(self.alphabet.clone(), f);
        for q in 0..self.num_states() {
            w.add_state(&alloc::format!("{}", q)).expect("fresh name");
            if self.initial[q] {
                w.set_initial(q, f.one()).expect("state exists");
            }
            if self.accepting[q] {
                w.set_terminal(q, f.one()).expect("state exists");
            }
        }
        for q in 0..self.num_states() {
            for x in 0..self.alphabet.len() {
                for &d in &self.trans[q][x] {
                    w.set_edge(q, x, d, f.one()).expect("state exists");
                }
            }
        }
        w
    }
}
