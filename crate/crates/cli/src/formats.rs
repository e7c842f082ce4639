//! Line-oriented text formats for automata and linear representations.
//!
//! ```text
//! wfa                          rep
//! field Q                      field F5
//! alphabet a b                 alphabet x
//! state p initial 1            dim 2
//! state q terminal 3/2         u 1 0
//! edge p a q 2                 v 0 1
//!                              mu x
//!                              0 1
//!                              1 1
//! ```
//!
//! `#` starts a comment; blank lines are ignored.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use polya_core::{Alphabet, Field, LinearRep, Matrix, Scalar, Wfa};

use crate::error::ParseError;

/// A parsed input file.
#[derive(Clone, Debug)]
pub enum Source {
    Wfa(Wfa),
    Rep(LinearRep),
}

impl Source {
    pub fn rep(&self) -> LinearRep {
        match self {
            Source::Wfa(w) => w.to_rep(),
            Source::Rep(r) => r.clone(),
        }
    }

    pub fn wfa(&self) -> Wfa {
        match self {
            Source::Wfa(w) => w.clone(),
            Source::Rep(r) => Wfa::from_rep(r),
        }
    }
}

/// Non-empty lines with comments removed, numbered from 1.
pub(crate) fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

pub(crate) fn parse_field(line: usize, words: &[&str]) -> Result<Field, ParseError> {
    let bad = || ParseError::at(line, "expected `field Q` or `field F<p>`");
    match words {
        ["field", "Q"] => Ok(Field::Rational),
        ["field", f] => {
            let p: u64 = f.strip_prefix('F').and_then(|p| p.parse().ok()).ok_or_else(bad)?;
            Field::prime(p).map_err(|e| ParseError::at(line, e.to_string()))
        }
        _ => Err(bad()),
    }
}

pub(crate) fn parse_alphabet(line: usize, words: &[&str]) -> Result<Alphabet, ParseError> {
    let bad = || ParseError::at(line, "expected `alphabet` followed by single-character letters");
    if words.first() != Some(&"alphabet") || words.len() < 2 {
        return Err(bad());
    }
    let mut letters = Vec::new();
    for w in &words[1..] {
        let mut cs = w.chars();
        match (cs.next(), cs.next()) {
            (Some(c), None) if c != '_' => letters.push(c),
            _ => return Err(bad()),
        }
    }
    Alphabet::new(letters).map_err(|e| ParseError::at(line, e.to_string()))
}

pub(crate) fn parse_scalar(line: usize, field: Field, text: &str) -> Result<Scalar, ParseError> {
    field.parse_scalar(text).map_err(|_| ParseError::at(line, format!("bad scalar `{}`", text)))
}

fn letter_index(line: usize, alphabet: &Alphabet, text: &str) -> Result<usize, ParseError> {
    let mut cs = text.chars();
    match (cs.next(), cs.next()) {
        (Some(c), None) => alphabet.index(c).ok_or_else(|| ParseError::at(line, format!("unknown letter `{}`", text))),
        _ => Err(ParseError::at(line, format!("unknown letter `{}`", text))),
    }
}

/// Reads either format, dispatching on the first line.
pub fn parse_source(text: &str) -> Result<Source, ParseError> {
    let lines = content_lines(text);
    match lines.first().map(|l| l.1) {
        Some("wfa") => parse_wfa(text).map(Source::Wfa),
        Some("rep") => parse_rep(text).map(Source::Rep),
        _ => Err(ParseError::at(lines.first().map_or(1, |l| l.0), "expected `wfa` or `rep`")),
    }
}

fn header(lines: &[(usize, &str)], keyword: &str) -> Result<(Field, Alphabet), ParseError> {
    let at = |i: usize| lines.get(i).map_or(0, |l: &(usize, &str)| l.0);
    if lines.first().map(|l| l.1) != Some(keyword) {
        return Err(ParseError::at(at(0), format!("expected `{}`", keyword)));
    }
    let words = |i: usize| -> Vec<&str> { lines.get(i).map_or(Vec::new(), |l| l.1.split_whitespace().collect()) };
    let field = parse_field(at(1), &words(1))?;
    let alphabet = parse_alphabet(at(2), &words(2))?;
    Ok((field, alphabet))
}

pub fn parse_wfa(text: &str) -> Result<Wfa, ParseError> {
    let lines = content_lines(text);
    let (field, alphabet) = header(&lines, "wfa")?;
    let mut w = Wfa::new(alphabet.clone(), field);
    let mut seen_edge = false;
    let mut edges = BTreeSet::new();
    for &(no, line) in &lines[3..] {
        let words: Vec<&str> = line.split_whitespace().collect();
        match words[0] {
            "state" => {
                if seen_edge {
                    return Err(ParseError::at(no, "state lines must precede edge lines"));
                }
                let name = words.get(1).ok_or_else(|| ParseError::at(no, "missing state name"))?;
                let s = w.add_state(name).map_err(|_| ParseError::at(no, format!("duplicate state `{}`", name)))?;
                let mut rest = &words[2..];
                let mut seen = BTreeSet::new();
                while let [key, value, tail @ ..] = rest {
                    if !seen.insert(*key) {
                        return Err(ParseError::at(no, format!("repeated `{}`", key)));
                    }
                    let c = parse_scalar(no, field, value)?;
                    match *key {
                        "initial" => w.set_initial(s, c),
                        "terminal" => w.set_terminal(s, c),
                        _ => return Err(ParseError::at(no, format!("unknown attribute `{}`", key))),
                    }
                    .map_err(|e| ParseError::at(no, e.to_string()))?;
                    rest = tail;
                }
                if !rest.is_empty() {
                    return Err(ParseError::at(no, "expected `initial <scalar>` or `terminal <scalar>`"));
                }
            }
            "edge" => {
                seen_edge = true;
                let [_, src, letter, dst, weight] = words[..] else {
                    return Err(ParseError::at(no, "expected `edge <src> <letter> <dst> <scalar>`"));
                };
                let state = |name: &str| w.state_index(name).ok_or_else(|| ParseError::at(no, format!("unknown state `{}`", name)));
                let (s, d) = (state(src)?, state(dst)?);
                let x = letter_index(no, &alphabet, letter)?;
                let c = parse_scalar(no, field, weight)?;
                if c.is_zero() {
                    return Err(ParseError::at(no, "edge weight must be nonzero"));
                }
                if !edges.insert((s, x, d)) {
                    return Err(ParseError::at(no, "duplicate edge"));
                }
                w.set_edge(s, x, d, c).map_err(|e| ParseError::at(no, e.to_string()))?;
            }
            other => return Err(ParseError::at(no, format!("unexpected `{}`", other))),
        }
    }
    Ok(w)
}

pub fn parse_rep(text: &str) -> Result<LinearRep, ParseError> {
    let lines = content_lines(text);
    let (field, alphabet) = header(&lines, "rep")?;
    let mut it = lines[3..].iter();
    let mut next = |what: &str| it.next().copied().ok_or_else(|| ParseError::at(lines.last().map_or(0, |l| l.0), format!("missing {}", what)));
    let (no, line) = next("`dim`")?;
    let n: usize = match line.split_whitespace().collect::<Vec<_>>()[..] {
        ["dim", d] => d.parse().map_err(|_| ParseError::at(no, "bad dimension"))?,
        _ => return Err(ParseError::at(no, "expected `dim <n>`")),
    };
    let vector = |no: usize, line: &str, key: &str| -> Result<Vec<Scalar>, ParseError> {
        let words: Vec<&str> = line.split_whitespace().collect();
        if words.first() != Some(&key) || words.len() != n + 1 {
            return Err(ParseError::at(no, format!("expected `{}` and {} scalars", key, n)));
        }
        words[1..].iter().map(|w| parse_scalar(no, field, w)).collect()
    };
    let (no, line) = next("`u`")?;
    let u = vector(no, line, "u")?;
    let (no, line) = next("`v`")?;
    let v = vector(no, line, "v")?;
    let mut mu: Vec<Option<Matrix>> = vec![None; alphabet.len()];
    for _ in 0..alphabet.len() {
        let (no, line) = next("`mu` block")?;
        let x = match line.split_whitespace().collect::<Vec<_>>()[..] {
            ["mu", letter] => letter_index(no, &alphabet, letter)?,
            _ => return Err(ParseError::at(no, "expected `mu <letter>`")),
        };
        if mu[x].is_some() {
            return Err(ParseError::at(no, "duplicate `mu` block"));
        }
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let (no, line) = next("matrix row")?;
            let row: Vec<Scalar> = line.split_whitespace().map(|w| parse_scalar(no, field, w)).collect::<Result<_, _>>()?;
            if row.len() != n {
                return Err(ParseError::at(no, format!("expected {} scalars", n)));
            }
            rows.push(row);
        }
        mu[x] = Some(Matrix::from_rows(field, n, rows).map_err(|e| ParseError::at(no, e.to_string()))?);
    }
    if let Some((no, _)) = next("").ok() {
        return Err(ParseError::at(no, "trailing content"));
    }
    let mu = mu.into_iter().map(|m| m.expect("every letter read")).collect();
    LinearRep::new(alphabet, field, u, mu, v).map_err(|e| ParseError::at(0, e.to_string()))
}

fn alphabet_line(alphabet: &Alphabet) -> String {
    let letters: Vec<String> = alphabet.letters().iter().map(char::to_string).collect();
    format!("alphabet {}", letters.join(" "))
}

fn scalars(v: &[Scalar]) -> String {
    v.iter().map(|c| format!(" {}", c)).collect()
}

pub fn write_wfa(w: &Wfa) -> String {
    let mut out = format!("wfa\nfield {}\n{}\n", w.field(), alphabet_line(w.alphabet()));
    for s in 0..w.num_states() {
        out.push_str("state ");
        out.push_str(w.state_name(s));
        if !w.initial(s).is_zero() {
            let _ = write!(out, " initial {}", w.initial(s));
        }
        if !w.terminal(s).is_zero() {
            let _ = write!(out, " terminal {}", w.terminal(s));
        }
        out.push('\n');
    }
    for (&(s, x, d), c) in w.edges() {
        let _ = writeln!(out, "edge {} {} {} {}", w.state_name(s), w.alphabet().letter(x), w.state_name(d), c);
    }
    out
}

pub fn write_rep(r: &LinearRep) -> String {
    let mut out = format!("rep\nfield {}\n{}\ndim {}\n", r.field(), alphabet_line(r.alphabet()), r.dim());
    let _ = writeln!(out, "u{}", scalars(r.u()));
    let _ = writeln!(out, "v{}", scalars(r.v()));
    for (x, m) in r.mus().iter().enumerate() {
        let _ = writeln!(out, "mu {}", r.alphabet().letter(x));
        for row in m.to_rows() {
            let _ = writeln!(out, "{}", scalars(&row).trim_start());
        }
    }
    out
}
