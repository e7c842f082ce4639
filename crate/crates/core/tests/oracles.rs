//! Library results checked against brute-force oracles and hand-derived values.

mod common;

use std::collections::BTreeSet;

use common::*;
use polya_core::*;

fn suite() -> Vec<(&'static str, LinearRep)> {
    vec![("R1", r1()), ("R2", r2()), ("R4", r4()), ("S_mix", s_mix()), ("Fibonacci", fibonacci())]
}

fn hankel_oracle(rep: &LinearRep, l: usize) -> usize {
    let words = rep.alphabet().words_up_to(l);
    let rows: Vec<Vec<Scalar>> = words.iter().map(|u| words.iter().map(|v| rep.eval(&u.concat(v)).unwrap()).collect()).collect();
    rank_oracle(&rows)
}

#[test]
fn minimal_dimension_is_hankel_rank() {
    let mut reps = suite();
    reps.extend(random_reps(11, 40).into_iter().map(|r| ("random", r)));
    for (name, r) in reps {
        let (m, _) = minimal_rep(&r);
        assert_eq!(m.dim(), hankel_oracle(&r, r.dim()), "{}", name);
        assert_eq!(m.dim(), hankel_rank(r.alphabet(), r.field(), r.dim(), |w| r.eval(w).unwrap()), "{}", name);
    }
}

#[test]
fn hankel_examples() {
    // R1 next to an unreachable copy of itself.
    let padded = LinearRep::from_i64(unary(), q(), &[1, 0], &[&[&[2, 0], &[0, 2]]], &[1, 1]).unwrap();
    assert_eq!(minimal_rep(&padded).0.dim(), 1);
    assert_eq!(minimal_rep(&fibonacci()).0.dim(), 2);
    assert_eq!(hankel_oracle(&s_mix(), 3), 4);
    assert_eq!(minimal_rep(&s_mix()).0.dim(), 4);
}

#[test]
fn ambiguity_witness_matches_path_count() {
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(5);
    for _ in 0..60 {
        let a = {
            use rand::Rng;
            let n = rng.gen_range(1..=3);
            let alphabet = Alphabet::from_str_letters("ab").unwrap();
            let mut w = Wfa::new(alphabet, q());
            for i in 0..n {
                w.add_state(&i.to_string()).unwrap();
            }
            for s in 0..n {
                if rng.gen_bool(0.5) {
                    w.set_initial(s, int(1)).unwrap();
                }
                if rng.gen_bool(0.5) {
                    w.set_terminal(s, int(1)).unwrap();
                }
                for x in 0..2 {
                    for d in 0..n {
                        if rng.gen_bool(0.35) {
                            w.set_edge(s, x, d, int(rng.gen_range(1..4))).unwrap();
                        }
                    }
                }
            }
            w
        };
        let alphabet = a.alphabet().clone();
        let brute = alphabet.words_up_to(6).into_iter().find(|w| count_paths(&a, &alphabet.indices(w).unwrap()) >= 2);
        match (brute, a.ambiguity_witness()) {
            (Some(b), w) => assert_eq!(w, Some(b)),
            (None, Some(w)) => {
                assert!(w.len() > 6);
                assert!(count_paths(&a, &alphabet.indices(&w).unwrap()) >= 2);
            }
            (None, None) => {}
        }
    }
}

#[test]
fn parallel_paths_witness() {
    let mut w = Wfa::new(Alphabet::from_str_letters("a").unwrap(), q());
    for name in ["p", "q", "t"] {
        w.add_state(name).unwrap();
    }
    w.set_initial(0, int(1)).unwrap();
    w.set_initial(1, int(1)).unwrap();
    w.set_terminal(2, int(1)).unwrap();
    w.set_edge(0, 0, 2, int(1)).unwrap();
    w.set_edge(1, 0, 2, int(1)).unwrap();
    assert_eq!(w.ambiguity_witness(), Some(Word::parse("a")));
    assert!(u_mix().is_unambiguous());
}

#[test]
fn hulls_are_minimal_among_small_unions() {
    let mut reps = suite();
    reps.extend(random_reps(3, 25).into_iter().filter(|r| r.dim() <= 3 && r.alphabet().len() == 1).map(|r| ("random", r)));
    for (name, r) in reps {
        let (m, _) = minimal_rep(&r);
        if m.dim() == 0 || m.dim() > 3 {
            continue;
        }
        let (y, cert) = linear_hull(&m, &HullConfig::default()).unwrap();
        assert!(cert.verify(&m), "{}", name);
        assert!(certify_containment(&m, &y, &HullConfig::default()).unwrap(), "{}", name);
        assert_eq!(smaller_invariant_union(&m, &y, &orbit_pool(&m, 10)), None, "{}", name);
    }
}

#[test]
fn known_hulls() {
    let cfg = HullConfig::default();
    let s = s_mix();
    let (y, _) = linear_hull(&s, &cfg).unwrap();
    let span = |rows: &[&[i64]]| Subspace::span(q(), 4, &rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect::<Vec<_>>()).unwrap();
    let even = span(&[&[1, 0, 2, 0], &[0, 1, 0, 3]]);
    let odd = span(&[&[1, 0, 3, 0], &[0, 1, 0, 2]]);
    assert_eq!(y, UnionOfSubspaces::normalize(q(), 4, vec![even, odd]).unwrap());
    let (fy, _) = linear_hull(&fibonacci(), &cfg).unwrap();
    assert_eq!(fy.dimension(), Some(2));
    let (r2y, _) = linear_hull(&r2(), &cfg).unwrap();
    assert_eq!(r2y.components().len(), 2);
}

#[test]
fn s_mix_expansion_is_unambiguous_but_not_deterministic() {
    let cfg = HullConfig::default();
    let g = good_basis(&minimal_rep(&s_mix()).0).unwrap();
    let (_, cert) = linear_hull(&g, &cfg).unwrap();
    let (e, blocks) = expand_rep(&g, &cert).unwrap();
    assert_eq!(blocks.ranges.iter().map(|r| r.len()).sum::<usize>(), e.dim());
    assert_eq!(check_cover_conditions(&e, &blocks), Ok(()));
    let w = Wfa::from_rep(&e);
    assert!(w.is_unambiguous());
    assert!(!w.trim().is_deterministic());
    for n in 0..=10 {
        assert_eq!(e.eval(&xn(n)).unwrap(), s_mix_value(n));
    }
    match determinize(&s_mix(), &cfg) {
        Err(TransformError::HullDimensionExceeded(h)) => assert_eq!(h.dimension(), Some(2)),
        other => panic!("unexpected {:?}", other),
    }
}

#[test]
fn fibonacci_is_rejected() {
    let cfg = HullConfig::default();
    match disambiguate(&fibonacci(), &cfg) {
        Err(TransformError::CoverConditionViolated(v)) => assert_eq!(v.condition, 3),
        other => panic!("unexpected {:?}", other),
    }
    let f = RationalFunction::from_i64(&[0, 1], &[1, -1, -1]).unwrap();
    assert_eq!(f.series(6), [0, 1, 1, 2, 3, 5].map(int));
    assert!(matches!(univariate_polya_pipeline(&f, &cfg), Err(UnivariateError::Transform(_))));
}

#[test]
fn progression_forms() {
    let ap = extract_ap_form(&u_mix()).unwrap();
    assert_eq!((ap.d, ap.alpha.clone(), ap.beta.clone()), (2, vec![int(1), int(1)], vec![int(2), int(3)]));
    assert!(ap.exceptions.is_empty());

    let ap = univariate_polya_pipeline(&s_mix_ratfun(), &HullConfig::default()).unwrap();
    assert_eq!((ap.d, ap.alpha.clone(), ap.beta.clone()), (2, vec![int(1), int(1)], vec![int(2), int(3)]));
    for n in 0..=20 {
        assert_eq!(ap.eval(n), s_mix_value(n));
    }

    let loop2 = Wfa::from_rep(&r1());
    let ap = extract_ap_form(&loop2).unwrap();
    assert_eq!((ap.d, ap.alpha.clone(), ap.beta.clone()), (1, vec![int(1)], vec![int(2)]));

    let geo = univariate_polya_pipeline(&RationalFunction::from_i64(&[1], &[1, -2]).unwrap(), &HullConfig::default()).unwrap();
    assert_eq!(geo.to_string(), "apform d=1\nresidue 0 alpha 1 beta 2\n");
}

#[test]
fn hadamard_on_u_mix() {
    let inv = hadamard_subinverse(&u_mix()).unwrap();
    let cycles: BTreeSet<Scalar> = inv.edges().map(|(_, w)| w.clone()).collect();
    assert!(cycles.contains(&q().parse_scalar("1/2").unwrap()) && cycles.contains(&q().parse_scalar("1/3").unwrap()));
    for n in 0..=10 {
        assert_eq!(&inv.eval(&xn(n)).unwrap() * &u_mix().eval(&xn(n)).unwrap(), int(1));
    }
}

fn factorizations(w: &[char], code: &[Vec<char>]) -> usize {
    if w.is_empty() {
        return 1;
    }
    code.iter().filter(|c| w.starts_with(c)).map(|c| factorizations(&w[c.len()..], code)).sum()
}

#[test]
fn code_test_matches_double_factorization() {
    use rand::Rng;
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(17);
    let ab = Alphabet::from_str_letters("ab").unwrap();
    let candidates: Vec<Word> = ab.words_up_to(3).into_iter().filter(|w| !w.is_empty()).collect();
    for _ in 0..200 {
        let size = rng.gen_range(1..=4);
        let mut words: BTreeSet<Word> = BTreeSet::new();
        while words.len() < size {
            words.insert(candidates[rng.gen_range(0..candidates.len())].clone());
        }
        let code: Vec<Vec<char>> = words.iter().map(|w| w.letters().to_vec()).collect();
        let e = RatExpr::poly(ab.clone(), q(), words.iter().map(|w| (w.clone(), int(1)))).unwrap();
        let brute = ab.words_up_to(6).into_iter().find(|w| factorizations(w.letters(), &code) >= 2);
        match (is_code(e.support()).unwrap(), brute) {
            (CodeCheck::NotCode(w), Some(b)) => assert_eq!(w, b),
            (CodeCheck::NotCode(w), None) => assert!(w.len() > 6 && factorizations(w.letters(), &code) >= 2),
            (CodeCheck::Code, None) => {}
            (CodeCheck::Code, Some(b)) => panic!("{:?} has two factorizations of {}", words, b),
        }
    }
}

#[test]
fn state_elimination_reproduces_series() {
    let cfg = HullConfig::default();
    let mut automata = vec![Wfa::from_rep(&r1()), Wfa::from_rep(&r2()), u_mix(), disambiguate(&s_mix(), &cfg).unwrap()];
    automata.push(determinize(&r2(), &cfg).unwrap());
    for a in automata {
        let e = state_elimination(&a).unwrap();
        assert!(e.is_unambiguous());
        let back = expr_to_rep(&e);
        assert_eq!(agree(|w| back.eval(w).unwrap(), |w| a.eval(w).unwrap(), a.alphabet(), 8), Ok(()));
        e.visit(&mut |node| {
            if let ExprNode::Star(child) = node.node() {
                assert_eq!(is_code(child.support()), Ok(CodeCheck::Code));
            }
        });
    }
}

#[test]
fn exponent_formula_on_constant_and_product() {
    let ab = Alphabet::from_str_letters("ab").unwrap();
    let geo = |c: char, k: i64| RatExpr::star(RatExpr::poly(ab.clone(), q(), [(Word::new(vec![c]), int(k))]).unwrap()).unwrap();
    let e = RatExpr::prod(geo('a', 2), geo('b', 3)).unwrap();
    let fm = extract_formula(&e).unwrap();
    assert_eq!(fm.evaluate(&Word::parse("aab")).unwrap(), int(12));
    assert_eq!(fm.evaluate(&Word::parse("ba")).unwrap(), int(0));
}
