//! End-to-end runs of the binary against frozen outputs.

use std::path::PathBuf;
use std::process::{Command, Output};

use polya::{parse_rep, parse_wfa, write_expr, write_wfa};
use polya_core::{disambiguate, minimal_rep, state_elimination, HullConfig};

fn dir(sub: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join(sub)
}

fn polya(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polya")).args(args).current_dir(dir("data")).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const GOLDEN: &[(&str, &[&str], i32)] = &[
    ("eval_r1", &["eval", "r1.rep", "xxx"], 0),
    ("determinize_r4", &["determinize", "r4.rep"], 2),
    ("apform_geometric", &["apform", "--ratfun", "1/(1-2x)"], 0),
    ("apform_s_mix", &["apform", "--ratfun", "(1+x-3x^2-2x^3)/(1-5x^2+6x^4)"], 0),
    ("apform_u_mix", &["apform", "u_mix.wfa"], 0),
    ("apform_fib", &["apform", "fib.rep"], 2),
    ("coeffs_fib", &["coeffs", "fib.rep", "--maxlen", "5"], 0),
    ("minimize_r4", &["minimize", "r4.rep"], 0),
    ("hull_r2", &["hull", "r2.rep"], 0),
    ("determinize_r2", &["determinize", "r2.rep"], 0),
    ("determinize_f5", &["determinize", "f5.wfa"], 0),
    ("determinize_two_letters", &["determinize", "two_letters.rep"], 0),
    ("disambiguate_fib", &["disambiguate", "fib.rep"], 2),
    ("disambiguate_u_mix", &["disambiguate", "u_mix.wfa"], 0),
    ("to_expr_u_mix", &["to-expr", "u_mix.wfa"], 0),
    ("to_expr_ambiguous", &["to-expr", "ambiguous.wfa"], 2),
    ("hadamard_u_mix", &["hadamard-inverse", "u_mix.wfa"], 0),
    ("formula_stars", &["extract-formula", "stars.expr"], 0),
    ("check_unambiguous_no", &["check", "unambiguous", "ambiguous.wfa"], 2),
    ("check_unambiguous_yes", &["check", "unambiguous", "u_mix.wfa"], 0),
    ("check_deterministic_no", &["check", "deterministic", "u_mix.wfa"], 2),
    ("check_polya_fib", &["check", "polya", "fib.rep", "--maxlen", "12"], 0),
    ("check_variation_r4", &["check", "variation", "r4.rep", "--c", "2", "--maxlen", "6"], 0),
];

#[test]
fn golden_outputs() {
    for (name, args, code) in GOLDEN {
        let o = polya(args);
        let expected = std::fs::read_to_string(dir("golden").join(format!("{}.out", name))).unwrap();
        assert_eq!(o.status.code(), Some(*code), "{}: {}", name, String::from_utf8_lossy(&o.stderr));
        assert_eq!(stdout(&o), expected, "{}", name);
    }
}

#[test]
fn documented_examples() {
    let o = polya(&["eval", "r1.rep", "xxx"]);
    assert_eq!((stdout(&o).as_str(), o.status.code()), ("8\n", Some(0)));
    let o = polya(&["determinize", "r4.rep"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("hull dim 2"));
    let o = polya(&["apform", "--ratfun", "1/(1-2x)"]);
    assert_eq!(stdout(&o), "apform d=1\nresidue 0 alpha 1 beta 2\n");
}

#[test]
fn output_matches_library_serialization() {
    let data = dir("data");
    let u_mix = parse_wfa(&std::fs::read_to_string(data.join("u_mix.wfa")).unwrap()).unwrap();
    assert_eq!(stdout(&polya(&["to-expr", "u_mix.wfa"])), write_expr(&state_elimination(&u_mix).unwrap()));
    let r2 = parse_rep(&std::fs::read_to_string(data.join("r2.rep")).unwrap()).unwrap();
    assert_eq!(stdout(&polya(&["disambiguate", "r2.rep"])), write_wfa(&disambiguate(&r2, &HullConfig::default()).unwrap()));
}

#[test]
fn minimize_then_eval_round_trip() {
    let tmp = std::env::temp_dir().join(format!("polya-min-{}.rep", std::process::id()));
    let tmp_s = tmp.to_str().unwrap();
    for file in ["r1.rep", "r2.rep", "r4.rep", "fib.rep", "two_letters.rep", "u_mix.wfa", "f5.wfa"] {
        let o = polya(&["minimize", file, "--out", tmp_s]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
        let original = polya_source(file);
        let min = parse_rep(&std::fs::read_to_string(&tmp).unwrap()).unwrap();
        assert_eq!(min.dim(), minimal_rep(&original).0.dim());
        for w in original.alphabet().words_up_to(4) {
            let word = w.to_string();
            let direct = stdout(&polya(&["eval", file, &word]));
            let reduced = stdout(&polya(&["eval", tmp_s, &word]));
            assert_eq!(direct, reduced, "{} on {}", file, word);
        }
    }
    let _ = std::fs::remove_file(tmp);
}

fn polya_source(file: &str) -> polya_core::LinearRep {
    polya::parse_source(&std::fs::read_to_string(dir("data").join(file)).unwrap()).unwrap().rep()
}

#[test]
fn usage_and_parse_errors_exit_one() {
    for args in [&["eval", "bad.wfa", "a"][..], &["eval", "r1.rep", "y"], &["eval"], &["frobnicate"], &["hull", "missing.rep"], &["apform", "--ratfun", "1/x"]] {
        let o = polya(args);
        assert_eq!(o.status.code(), Some(1), "{:?}", args);
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(polya(&["--help"]).status.code(), Some(0));
}

#[test]
fn budget_flag_is_honored() {
    let o = polya(&["determinize", "two_letters.rep", "--budget", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("budget-exceeded"));
    assert_eq!(stdout(&polya(&["eval", "r1.rep", "_"])), "1\n");
}
