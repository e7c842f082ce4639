//! The linear hull: the least finite union of subspaces that contains `u` and is
//! stable under every `μ(x)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::HullError;
use crate::matrix::{dot, is_zero_vec, normalize_direction};
use crate::rep::LinearRep;
use crate::scalar::{Field, Scalar};
use crate::subspace::{Subspace, UnionOfSubspaces};
use crate::word::Word;

pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HullConfig {
    /// Maximum number of distinct vectors (or union pieces) any enumeration may hold.
    pub budget: usize,
    /// Maximum number of search nodes per sample depth.
    pub search_nodes: usize,
}

impl Default for HullConfig {
    fn default() -> Self {
        HullConfig { budget: DEFAULT_BUDGET, search_nodes: DEFAULT_BUDGET }
    }
}

impl HullConfig {
    pub fn with_budget(budget: usize) -> HullConfig {
        HullConfig { budget, ..HullConfig::default() }
    }
}

fn over_budget(needed: usize, budget: usize) -> HullError {
    HullError::BudgetExceeded { needed: needed as u128, budget: budget as u128 }
}

/// Distinct orbit vectors `u μ(w)` for `|w| <= depth`, each with the first word reaching it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSample {
    pub depth: usize,
    pub entries: Vec<(Word, Vec<Scalar>)>,
    /// True when no new vector appeared at the last layer, so the sample is the whole orbit.
    pub exhausted: bool,
}

pub fn orbit_sample(rep: &LinearRep, depth: usize, budget: usize) -> Result<OrbitSample, HullError> {
    let k = rep.alphabet().len();
    let mut seen: BTreeSet<Vec<Scalar>> = BTreeSet::new();
    let mut entries = Vec::new();
    let mut frontier: Vec<(Vec<usize>, Vec<Scalar>)> = vec![(Vec::new(), rep.u().to_vec())];
    seen.insert(rep.u().to_vec());
    entries.push((Word::empty(), rep.u().to_vec()));
    let mut exhausted = false;
    for _ in 0..depth {
        let mut next = Vec::new();
        for (w, row) in &frontier {
            for x in 0..k {
                let img = rep.mu(x).left_apply(row);
                if seen.insert(img.clone()) {
                    if seen.len() > budget {
                        return Err(over_budget(seen.len(), budget));
                    }
                    let mut w2 = w.clone();
                    w2.push(x);
                    entries.push((rep.alphabet().word_from_indices(&w2), img.clone()));
                    next.push((w2, img));
                }
            }
        }
        if next.is_empty() {
            exhausted = true;
            break;
        }
        frontier = next;
    }
    Ok(OrbitSample { depth, entries, exhausted })
}

/// `k^(alpha·(m−1)) + 1`.
///
/// Fails when enumerating `N·alpha^N` words would exceed `budget`. For `m = 0` the
/// exponent is taken as zero.
pub fn containment_bound(k: u64, alpha: u64, m: u64, budget: u128) -> Result<u128, HullError> {
    let too_big = || HullError::BudgetExceeded { needed: u128::MAX, budget };
    let exp = alpha.checked_mul(m.saturating_sub(1)).ok_or_else(too_big)?;
    let exp = u32::try_from(exp).map_err(|_| too_big())?;
    let n = (k as u128).checked_pow(exp).and_then(|p| p.checked_add(1)).ok_or_else(too_big)?;
    let words = u32::try_from(n).ok().and_then(|e| (alpha as u128).checked_pow(e)).and_then(|p| p.checked_mul(n)).ok_or_else(too_big)?;
    if words > budget {
        return Err(HullError::BudgetExceeded { needed: words, budget });
    }
    Ok(n)
}

fn check_shape(rep: &LinearRep, y: &UnionOfSubspaces) -> Result<(), HullError> {
    if y.ambient() != rep.dim() {
        return Err(HullError::DimensionMismatch { expected: rep.dim(), found: y.ambient() });
    }
    if y.field() != rep.field() {
        return Err(HullError::FieldMismatch);
    }
    Ok(())
}

/// Whether every `u μ(w)` with `|w| <= depth` lies in `y`.
pub fn orbit_within(rep: &LinearRep, y: &UnionOfSubspaces, depth: usize, budget: usize) -> Result<bool, HullError> {
    check_shape(rep, y)?;
    let sample = orbit_sample(rep, depth, budget)?;
    Ok(sample.entries.iter().all(|(_, v)| y.contains_vector(v)))
}

/// Target map `f(i, x)`: the first component containing `V_i · μ(x)`, if every image has one.
pub fn target_map(rep: &LinearRep, y: &UnionOfSubspaces) -> Option<Vec<Vec<usize>>> {
    y.components()
        .iter()
        .map(|c| (0..rep.alphabet().len()).map(|x| y.component_containing(&c.image(rep.mu(x)))).collect())
        .collect()
}

/// Exact test of `Ω ⊆ y` together with a depth `N` such that `Ω_{≤N} ⊆ y` already implies it.
///
/// Over `Q` this computes the largest invariant closed subset of `y`, the limit of
/// `Z_0 = y`, `Z_{t+1} = Z_t ∩ ⋂_x μ(x)^{-1}(Z_t)`, and tests `u ∈ Z_T`; then
/// `Ω_{≤T} ⊆ y` is equivalent to `Ω ⊆ y`. Over `F_p` the finite orbit is enumerated.
pub fn containment_depth(rep: &LinearRep, y: &UnionOfSubspaces, config: &HullConfig) -> Result<Option<usize>, HullError> {
    check_shape(rep, y)?;
    let n = rep.dim();
    if y.components().iter().any(Subspace::is_full) {
        return Ok(Some(0));
    }
    if y.is_empty() {
        return Ok(None);
    }
    if n == 0 {
        return Ok(Some(0));
    }
    if let Field::Prime(_) = rep.field() {
        let mut depth = 1;
        loop {
            let s = orbit_sample(rep, depth, config.budget)?;
            if s.entries.iter().any(|(_, v)| !y.contains_vector(v)) {
                return Ok(None);
            }
            if s.exhausted {
                return Ok(Some(depth));
            }
            depth *= 2;
        }
    }
    if target_map(rep, y).is_some() {
        return Ok(y.contains_vector(rep.u()).then_some(0));
    }
    let mut z = y.clone();
    let mut t = 0;
    loop {
        let mut pieces: Vec<Subspace> = z.components().to_vec();
        for m in rep.mus() {
            let pre: Vec<Subspace> = z.components().iter().map(|c| c.preimage(m)).collect();
            let mut next = Vec::new();
            for a in &pieces {
                for b in &pre {
                    next.push(a.intersection(b));
                    if next.len() > config.budget {
                        return Err(over_budget(next.len(), config.budget));
                    }
                }
            }
            pieces = UnionOfSubspaces::normalize(rep.field(), n, next).expect("consistent shapes").components().to_vec();
        }
        let z2 = UnionOfSubspaces::normalize(rep.field(), n, pieces).expect("consistent shapes");
        if z2 == z {
            return Ok(z.contains_vector(rep.u()).then_some(t));
        }
        z = z2;
        t += 1;
    }
}

/// `true` iff the whole orbit of `u` lies in `y`. See [`containment_depth`].
pub fn certify_containment(rep: &LinearRep, y: &UnionOfSubspaces, config: &HullConfig) -> Result<bool, HullError> {
    Ok(containment_depth(rep, y, config)?.is_some())
}

/// Evidence accompanying a hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullCertificate {
    pub hull: UnionOfSubspaces,
    /// A depth `N` with `Ω_{≤N} ⊆ Y ⇒ Ω ⊆ Y` for this `Y`.
    pub bound: usize,
    /// `targets[i][x]` is the component containing `V_i · μ(x)`.
    pub targets: Vec<Vec<usize>>,
    /// Orbit sample depth at which the search settled.
    pub depth: usize,
}

impl HullCertificate {
    /// Checks `u ∈ Y` and the target map against `rep`.
    pub fn verify(&self, rep: &LinearRep) -> bool {
        let y = &self.hull;
        if y.ambient() != rep.dim() || y.field() != rep.field() {
            return false;
        }
        if rep.dim() == 0 {
            return self.targets.is_empty();
        }
        if !y.contains_vector(rep.u()) || self.targets.len() != y.components().len() {
            return false;
        }
        y.components().iter().zip(&self.targets).all(|(c, ts)| {
            ts.len() == rep.alphabet().len()
                && ts.iter().enumerate().all(|(x, &j)| j < y.components().len() && y.components()[j].contains(&c.image(rep.mu(x))))
        })
    }
}

/// Computes the hull with a certificate.
///
/// Over `F_p` the hull is the union of lines through the finitely many reachable vectors.
/// Over `Q` the search runs at increasing sample depths `D = n, 2n, …`; at each depth
/// it finds the union of sample-spanned subspaces with the least dimension profile
/// (component counts compared from the top dimension down) that contains `u` and is
/// stable under `μ`. A result is accepted once it repeats at the next depth and every
/// component is spanned by sample vectors that lie in no other component.
pub fn linear_hull(rep: &LinearRep, config: &HullConfig) -> Result<(UnionOfSubspaces, HullCertificate), HullError> {
    let n = rep.dim();
    let f = rep.field();
    if n == 0 {
        let hull = UnionOfSubspaces::empty(f, 0);
        let cert = HullCertificate { hull: hull.clone(), bound: 0, targets: Vec::new(), depth: 0 };
        return Ok((hull, cert));
    }
    let (hull, depth) = match f {
        Field::Prime(_) => finite_hull(rep, config)?,
        Field::Rational => searched_hull(rep, config)?,
    };
    let bound = containment_depth(rep, &hull, config)?.expect("hull contains the orbit");
    let targets = target_map(rep, &hull).expect("hull is invariant");
    let cert = HullCertificate { hull: hull.clone(), bound, targets, depth };
    Ok((hull, cert))
}

fn finite_hull(rep: &LinearRep, config: &HullConfig) -> Result<(UnionOfSubspaces, usize), HullError> {
    let n = rep.dim();
    let f = rep.field();
    let mut depth = n.max(1);
    let sample = loop {
        let s = orbit_sample(rep, depth, config.budget)?;
        if s.exhausted {
            break s;
        }
        depth *= 2;
    };
    let mut lines = Vec::new();
    for (_, v) in &sample.entries {
        if !is_zero_vec(v) {
            lines.push(Subspace::span(f, n, core::slice::from_ref(v)).expect("consistent shapes"));
        }
    }
    if lines.is_empty() {
        lines.push(Subspace::zero(f, n));
    }
    Ok((UnionOfSubspaces::normalize(f, n, lines).expect("consistent shapes"), depth))
}

fn searched_hull(rep: &LinearRep, config: &HullConfig) -> Result<(UnionOfSubspaces, usize), HullError> {
    let n = rep.dim();
    let f = rep.field();
    if is_zero_vec(rep.u()) {
        let y = UnionOfSubspaces::normalize(f, n, vec![Subspace::zero(f, n)]).expect("consistent shapes");
        return Ok((y, 0));
    }
    let step = n;
    let mut depth = n;
    let mut previous: Option<UnionOfSubspaces> = None;
    loop {
        let sample = orbit_sample(rep, depth, config.budget)?;
        let points = directions(&sample);
        let y = Search::new(rep, points.clone(), config.search_nodes).run()?;
        let dense = is_dense(&y, &points);
        if dense && (sample.exhausted || previous.as_ref() == Some(&y)) {
            return Ok((y, depth));
        }
        previous = dense.then_some(y);
        depth += step;
    }
}

/// Distinct nonzero sample vectors scaled to have leading entry one, in sample order.
fn directions(sample: &OrbitSample) -> Vec<Vec<Scalar>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (_, v) in &sample.entries {
        if let Some(d) = normalize_direction(v) {
            if seen.insert(d.clone()) {
                out.push(d);
            }
        }
    }
    out
}

/// Every component is spanned by the points lying in it and in no other component.
pub fn is_dense(y: &UnionOfSubspaces, points: &[Vec<Scalar>]) -> bool {
    let comps = y.components();
    comps.iter().enumerate().all(|(i, c)| {
        let own: Vec<Vec<Scalar>> = points
            .iter()
            .filter(|p| c.contains_vector(p) && !comps.iter().enumerate().any(|(j, d)| j != i && d.contains_vector(p)))
            .cloned()
            .collect();
        if c.dim() == 0 {
            return true;
        }
        Subspace::span(y.field(), y.ambient(), &own).map(|s| s == *c).unwrap_or(false)
    })
}

/// Branch-and-bound over unions of flats: subspaces `H` with `H = span(P ∩ H)`.
struct Search<'a> {
    rep: &'a LinearRep,
    points: Vec<Vec<Scalar>>,
    cap: usize,
    flat: BTreeMap<Subspace, bool>,
    dead: BTreeMap<Subspace, bool>,
    hosts: BTreeMap<Subspace, Vec<Subspace>>,
    best: Option<(Vec<usize>, UnionOfSubspaces)>,
    nodes: usize,
    node_budget: usize,
}

impl<'a> Search<'a> {
    fn new(rep: &'a LinearRep, points: Vec<Vec<Scalar>>, node_budget: usize) -> Search<'a> {
        Search {
            rep,
            points,
            cap: 0,
            flat: BTreeMap::new(),
            dead: BTreeMap::new(),
            hosts: BTreeMap::new(),
            best: None,
            nodes: 0,
            node_budget,
        }
    }

    fn run(mut self) -> Result<UnionOfSubspaces, HullError> {
        let n = self.rep.dim();
        let f = self.rep.field();
        let top = Subspace::span(f, n, &self.points).expect("consistent shapes");
        let start = Subspace::span(f, n, &[self.rep.u().to_vec()]).expect("consistent shapes");
        for cap in 1..top.dim() {
            self.cap = cap;
            self.dead.clear();
            self.hosts.clear();
            self.best = None;
            self.nodes = 0;
            for h in self.hosts_of(&start) {
                if self.is_dead(&h) {
                    continue;
                }
                let mut family = vec![h];
                self.dfs(&mut family, 0)?;
            }
            if let Some((_, y)) = self.best.take() {
                return Ok(y);
            }
        }
        Ok(UnionOfSubspaces::normalize(f, n, vec![top]).expect("consistent shapes"))
    }

    fn is_flat(&mut self, h: &Subspace) -> bool {
        if let Some(&b) = self.flat.get(h) {
            return b;
        }
        let f = h.field();
        let normals = h.annihilator();
        let inside: Vec<Vec<Scalar>> = self.points.iter().filter(|p| normals.iter().all(|c| dot(c, p, f).is_zero())).cloned().collect();
        let b = inside.len() >= h.dim() && Subspace::span(f, h.ambient(), &inside).map(|s| s == *h).unwrap_or(false);
        self.flat.insert(h.clone(), b);
        b
    }

    /// A flat that lies in no admissible family: for some letter, every host of its image
    /// is dead. Flats under evaluation count as alive, so the test only errs towards alive.
    fn is_dead(&mut self, h: &Subspace) -> bool {
        if let Some(&b) = self.dead.get(h) {
            return b;
        }
        self.dead.insert(h.clone(), false);
        for x in 0..self.rep.alphabet().len() {
            let img = h.image(self.rep.mu(x));
            if img.dim() == 0 {
                continue;
            }
            let hosts = self.hosts_of(&img);
            if hosts.iter().all(|g| self.is_dead(g)) {
                self.dead.insert(h.clone(), true);
                return true;
            }
        }
        false
    }

    /// Flats of dimension at most `cap` containing `i`, smallest first.
    fn hosts_of(&mut self, i: &Subspace) -> Vec<Subspace> {
        if let Some(h) = self.hosts.get(i) {
            return h.clone();
        }
        let mut all: BTreeSet<Subspace> = BTreeSet::new();
        let mut level: BTreeSet<Subspace> = BTreeSet::new();
        if i.dim() <= self.cap {
            level.insert(i.clone());
        }
        while !level.is_empty() {
            let mut next = BTreeSet::new();
            for h in &level {
                all.insert(h.clone());
                if h.dim() == self.cap {
                    continue;
                }
                for p in &self.points {
                    if !h.contains_vector(p) {
                        let g = h.extend(p);
                        if !all.contains(&g) {
                            next.insert(g);
                        }
                    }
                }
            }
            level = next;
        }
        if self.is_flat(i) {
            for h in &all {
                self.flat.insert(h.clone(), true);
            }
        }
        let mut out: Vec<Subspace> = all.into_iter().filter(|h| self.is_flat(h)).collect();
        out.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.basis().cmp(b.basis())));
        self.hosts.insert(i.clone(), out.clone());
        out
    }

    fn profile(&self, family: &[Subspace]) -> Vec<usize> {
        let n = self.rep.dim();
        UnionOfSubspaces::normalize(self.rep.field(), n, family.to_vec()).expect("consistent shapes").profile()
    }

    fn beaten(&self, family: &[Subspace]) -> bool {
        match &self.best {
            Some((p, _)) => self.profile(family) >= *p,
            None => false,
        }
    }

    fn dfs(&mut self, family: &mut Vec<Subspace>, from: usize) -> Result<(), HullError> {
        self.nodes += 1;
        if self.nodes > self.node_budget {
            return Err(over_budget(self.nodes, self.node_budget));
        }
        if self.beaten(family) {
            return Ok(());
        }
        let k = self.rep.alphabet().len();
        let mut idx = from;
        loop {
            let (member, x) = (idx / k, idx % k);
            if member >= family.len() {
                let y = UnionOfSubspaces::normalize(self.rep.field(), self.rep.dim(), family.clone()).expect("consistent shapes");
                let p = y.profile();
                if self.best.as_ref().map_or(true, |(b, _)| p < *b) {
                    self.best = Some((p, y));
                }
                return Ok(());
            }
            let img = family[member].image(self.rep.mu(x));
            if img.dim() == 0 || family.iter().any(|c| c.contains(&img)) {
                idx += 1;
                continue;
            }
            for h in self.hosts_of(&img) {
                if self.is_dead(&h) {
                    continue;
                }
                family.push(h);
                self.dfs(family, idx + 1)?;
                family.pop();
            }
            return Ok(());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    fn unary() -> Alphabet {
        Alphabet::from_str_letters("x").unwrap()
    }

    fn q() -> Field {
        Field::Rational
    }

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| q().from_i64(x)).collect()
    }

    fn lines(n: usize, dirs: &[&[i64]]) -> UnionOfSubspaces {
        let parts = dirs.iter().map(|d| Subspace::span(q(), n, &[v(d)]).unwrap()).collect();
        UnionOfSubspaces::normalize(q(), n, parts).unwrap()
    }

    fn r2() -> LinearRep {
        LinearRep::from_i64(unary(), q(), &[1, 0], &[&[&[0, 1], &[1, 0]]], &[2, 3]).unwrap()
    }

    fn r4() -> LinearRep {
        LinearRep::from_i64(unary(), q(), &[1, 1], &[&[&[2, 0], &[0, 3]]], &[1, 1]).unwrap()
    }

    #[test]
    fn bound_values() {
        assert_eq!(containment_bound(2, 1, 2, u128::MAX).unwrap(), 3);
        assert_eq!(containment_bound(1, 3, 1, u128::MAX).unwrap(), 2);
        assert_eq!(containment_bound(3, 2, 3, u128::MAX).unwrap(), 82);
        assert!(matches!(containment_bound(3, 2, 3, 1_000_000), Err(HullError::BudgetExceeded { .. })));
    }

    #[test]
    fn certify_examples() {
        let cfg = HullConfig::default();
        assert!(certify_containment(&r2(), &lines(2, &[&[1, 0], &[0, 1]]), &cfg).unwrap());
        assert!(!certify_containment(&r4(), &lines(2, &[&[1, 1], &[2, 3]]), &cfg).unwrap());
        let full = UnionOfSubspaces::normalize(q(), 2, vec![Subspace::full(q(), 2)]).unwrap();
        assert!(certify_containment(&r4(), &full, &cfg).unwrap());
    }

    #[test]
    fn short_orbit_prefix_does_not_certify() {
        // Three orbit lines contain the first three orbit vectors but not the fourth.
        let y = lines(2, &[&[1, 1], &[2, 3], &[4, 9]]);
        let n = containment_bound(3, 1, 1, u128::MAX).unwrap() as usize;
        assert!(orbit_within(&r4(), &y, n, DEFAULT_BUDGET).unwrap());
        assert!(!orbit_within(&r4(), &y, 3, DEFAULT_BUDGET).unwrap());
        assert!(!certify_containment(&r4(), &y, &HullConfig::default()).unwrap());
    }

    #[test]
    fn hull_examples() {
        let cfg = HullConfig::default();
        let r1 = LinearRep::from_i64(unary(), q(), &[1], &[&[&[2]]], &[1]).unwrap();
        let (y, cert) = linear_hull(&r1, &cfg).unwrap();
        assert_eq!(y.components(), &[Subspace::full(q(), 1)]);
        assert!(cert.verify(&r1));
        let (y, cert) = linear_hull(&r2(), &cfg).unwrap();
        assert_eq!(y, lines(2, &[&[1, 0], &[0, 1]]));
        assert!(cert.verify(&r2()));
        let (y, _) = linear_hull(&r4(), &cfg).unwrap();
        assert_eq!(y.components(), &[Subspace::full(q(), 2)]);
    }

    #[test]
    fn zero_and_empty() {
        let cfg = HullConfig::default();
        let z = LinearRep::zero(unary(), q());
        let (y, _) = linear_hull(&z, &cfg).unwrap();
        assert!(y.is_empty());
        let r = LinearRep::from_i64(unary(), q(), &[0, 0], &[&[&[1, 2], &[3, 4]]], &[1, 1]).unwrap();
        let (y, _) = linear_hull(&r, &cfg).unwrap();
        assert_eq!(y.components(), &[Subspace::zero(q(), 2)]);
    }

    #[test]
    fn order_six_map_gives_three_lines() {
        // μ^3 = -I, so the orbit meets exactly three lines.
        let r = LinearRep::from_i64(unary(), q(), &[1, 0], &[&[&[1, 1], &[-1, 0]]], &[1, 0]).unwrap();
        let (y, cert) = linear_hull(&r, &HullConfig::default()).unwrap();
        assert_eq!(y.dimension(), Some(1));
        assert_eq!(y.components().len(), 3);
        assert!(cert.verify(&r));
    }

    #[test]
    fn finite_field_hull_is_lines() {
        let f5 = Field::prime(5).unwrap();
        let r = LinearRep::from_i64(unary(), f5, &[1, 1], &[&[&[2, 0], &[0, 3]]], &[1, 1]).unwrap();
        let (y, cert) = linear_hull(&r, &HullConfig::default()).unwrap();
        assert_eq!(y.dimension(), Some(1));
        assert!(cert.verify(&r));
        // 3/2 = 4 has order 2 in F_5^*, so two lines.
        assert_eq!(y.components().len(), 2);
    }
}
