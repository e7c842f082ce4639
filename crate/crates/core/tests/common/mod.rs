//! Shared fixtures for the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use polya_core::hull::{orbit_sample, target_map};
use polya_core::{Alphabet, Field, LinearRep, RationalFunction, Scalar, Subspace, UnionOfSubspaces, Wfa, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn q() -> Field {
    Field::Rational
}

pub fn unary() -> Alphabet {
    Alphabet::from_str_letters("x").unwrap()
}

pub fn xn(n: usize) -> Word {
    Word::new(vec!['x'; n])
}

pub fn int(n: i64) -> Scalar {
    q().from_i64(n)
}

pub fn r1() -> LinearRep {
    LinearRep::from_i64(unary(), q(), &[1], &[&[&[2]]], &[1]).unwrap()
}

pub fn r2() -> LinearRep {
    LinearRep::from_i64(unary(), q(), &[1, 0], &[&[&[0, 1], &[1, 0]]], &[2, 3]).unwrap()
}

/// `2^n + 3^n`.
pub fn r4() -> LinearRep {
    LinearRep::from_i64(unary(), q(), &[1, 1], &[&[&[2, 0], &[0, 3]]], &[1, 1]).unwrap()
}

pub fn fibonacci() -> LinearRep {
    LinearRep::from_i64(unary(), q(), &[1, 0], &[&[&[0, 1], &[1, 1]]], &[0, 1]).unwrap()
}

/// `1/(1−2x²) + x/(1−3x²)`: `s(2k) = 2^k`, `s(2k+1) = 3^k`.
pub fn s_mix_ratfun() -> RationalFunction {
    RationalFunction::from_i64(&[1, 1, -3, -2], &[1, 0, -5, 0, 6]).unwrap()
}

pub fn s_mix() -> LinearRep {
    polya_core::rep_from_ratfun(&s_mix_ratfun())
}

pub fn s_mix_value(n: usize) -> Scalar {
    if n % 2 == 0 {
        int(2).pow((n / 2) as i64)
    } else {
        int(3).pow((n / 2) as i64)
    }
}

/// Two disjoint 2-cycles with weights 2 and 3, terminal at opposite phases.
pub fn u_mix() -> Wfa {
    let mut w = Wfa::new(unary(), q());
    let a0 = w.add_state("a0").unwrap();
    let a1 = w.add_state("a1").unwrap();
    let b0 = w.add_state("b0").unwrap();
    let b1 = w.add_state("b1").unwrap();
    w.set_initial(a0, int(1)).unwrap();
    w.set_initial(b0, int(1)).unwrap();
    w.set_terminal(a0, int(1)).unwrap();
    w.set_terminal(b1, int(1)).unwrap();
    w.set_edge(a0, 0, a1, int(1)).unwrap();
    w.set_edge(a1, 0, a0, int(2)).unwrap();
    w.set_edge(b0, 0, b1, int(1)).unwrap();
    w.set_edge(b1, 0, b0, int(3)).unwrap();
    w
}

/// A random representation of dimension 1..=3 over one or two letters, entries in [−3, 3].
pub fn random_rep(rng: &mut ChaCha8Rng) -> LinearRep {
    let n = rng.gen_range(1..=3);
    let letters = if rng.gen_bool(0.5) { "x" } else { "ab" };
    let alphabet = Alphabet::from_str_letters(letters).unwrap();
    let mut entry = || int(rng.gen_range(-3..=3));
    let u: Vec<Scalar> = (0..n).map(|_| entry()).collect();
    let v: Vec<Scalar> = (0..n).map(|_| entry()).collect();
    let mu = (0..alphabet.len())
        .map(|_| {
            let rows = (0..n).map(|_| (0..n).map(|_| entry()).collect()).collect();
            polya_core::Matrix::from_rows(q(), n, rows).unwrap()
        })
        .collect();
    LinearRep::new(alphabet, q(), u, mu, v).unwrap()
}

pub fn random_reps(seed: u64, count: usize) -> Vec<LinearRep> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_rep(&mut rng)).collect()
}

/// A random trim automaton over `F_5` with at most three states.
pub fn random_f5_wfa(rng: &mut ChaCha8Rng) -> Wfa {
    let f5 = Field::prime(5).unwrap();
    loop {
        let n = rng.gen_range(1..=3);
        let alphabet = Alphabet::from_str_letters(if rng.gen_bool(0.5) { "x" } else { "ab" }).unwrap();
        let k = alphabet.len();
        let mut w = Wfa::new(alphabet, f5);
        for i in 0..n {
            w.add_state(&format!("q{}", i)).unwrap();
        }
        for s in 0..n {
            if rng.gen_bool(0.5) {
                w.set_initial(s, f5.from_i64(rng.gen_range(1..5))).unwrap();
            }
            if rng.gen_bool(0.5) {
                w.set_terminal(s, f5.from_i64(rng.gen_range(1..5))).unwrap();
            }
            for x in 0..k {
                for d in 0..n {
                    if rng.gen_bool(0.4) {
                        w.set_edge(s, x, d, f5.from_i64(rng.gen_range(1..5))).unwrap();
                    }
                }
            }
        }
        let t = w.trim();
        if t.num_states() > 0 {
            return t;
        }
    }
}

/// Whether two series agree on every word up to `maxlen`.
pub fn agree(a: impl Fn(&Word) -> Scalar, b: impl Fn(&Word) -> Scalar, alphabet: &Alphabet, maxlen: usize) -> Result<(), Word> {
    for w in alphabet.words_up_to(maxlen) {
        if a(&w) != b(&w) {
            return Err(w);
        }
    }
    Ok(())
}

/// Rank by plain Gaussian elimination over `Q`, independent of the library's echelon code.
pub fn rank_oracle(rows: &[Vec<Scalar>]) -> usize {
    use num_rational::BigRational;
    use num_traits::Zero;
    let mut m: Vec<Vec<BigRational>> = rows.iter().map(|r| r.iter().map(|s| s.as_rational().unwrap().clone()).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let k = &m[i][c] / &m[rank][c];
                for j in c..cols {
                    let t = &k * &m[rank][j];
                    m[i][j] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Number of accepting paths labelled `w`, by explicit enumeration.
pub fn count_paths(a: &Wfa, w: &[usize]) -> usize {
    let n = a.num_states();
    let mut counts: Vec<usize> = (0..n).map(|q| (!a.initial(q).is_zero()) as usize).collect();
    for &x in w {
        let mut next = vec![0; n];
        for ((s, l, d), _) in a.edges() {
            if *l == x {
                next[*d] += counts[*s];
            }
        }
        counts = next;
    }
    (0..n).filter(|&q| !a.terminal(q).is_zero()).map(|q| counts[q]).sum()
}

/// Unions of at most three flats spanned by pool points, strictly inside `y`, that contain
/// `u` and are invariant. A minimal hull admits none.
pub fn smaller_invariant_union(rep: &LinearRep, y: &UnionOfSubspaces, pool: &[Vec<Scalar>]) -> Option<UnionOfSubspaces> {
    let n = rep.dim();
    let mut flats: BTreeSet<Subspace> = BTreeSet::new();
    for i in 0..pool.len() {
        flats.insert(Subspace::span(q(), n, &[pool[i].clone()]).unwrap());
        for j in i + 1..pool.len() {
            flats.insert(Subspace::span(q(), n, &[pool[i].clone(), pool[j].clone()]).unwrap());
        }
    }
    let flats: Vec<Subspace> = flats.into_iter().filter(|f| f.dim() < n && y.contains_subspace(f)).collect();
    let k = flats.len();
    let mut choices: Vec<Vec<usize>> = (0..k).map(|i| vec![i]).collect();
    for i in 0..k {
        for j in i + 1..k {
            choices.push(vec![i, j]);
            for l in j + 1..k {
                choices.push(vec![i, j, l]);
            }
        }
    }
    for c in choices {
        let z = UnionOfSubspaces::normalize(q(), n, c.iter().map(|&i| flats[i].clone()).collect()).unwrap();
        if z != *y && pool.iter().all(|v| z.contains_vector(v)) && z.contains_vector(rep.u()) && target_map(rep, &z).is_some() {
            return Some(z);
        }
    }
    None
}

/// The first `limit` pairwise non-proportional nonzero orbit vectors in breadth-first order,
/// the pool for [`smaller_invariant_union`].
pub fn orbit_pool(rep: &LinearRep, limit: usize) -> Vec<Vec<Scalar>> {
    let mut depth = 1;
    loop {
        let sample = orbit_sample(rep, depth, 100_000).unwrap();
        let mut seen = BTreeSet::new();
        let pool: Vec<Vec<Scalar>> = sample
            .entries
            .into_iter()
            .filter_map(|(_, v)| polya_core::matrix::normalize_direction(&v).filter(|d| seen.insert(d.clone())).map(|_| v))
            .take(limit)
            .collect();
        if pool.len() == limit || sample.exhausted || depth >= 3 * limit {
            return pool;
        }
        depth += 1;
    }
}
