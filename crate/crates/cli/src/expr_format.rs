//! Prefix notation for rational expressions.
//!
//! ```text
//! field Q            # optional, defaults to Q
//! alphabet a b       # optional, defaults to the letters that occur
//! (. (* (poly (a 2))) (* (poly (b 3))))
//! ```
//!
//! `(poly (<word> <scalar>) ...)` with `_` for the empty word, `(+ e1 e2 ...)`,
//! `(. e1 e2 ...)` and `(* e)`. Sums and products of more than two terms associate
//! to the left.

use std::collections::BTreeSet;

use polya_core::{Alphabet, Field, RatExpr, Word};

use crate::error::ParseError;
use crate::formats::{content_lines, parse_alphabet, parse_field, parse_scalar};

#[derive(Debug)]
enum Sexp {
    Atom(String, usize),
    List(Vec<Sexp>, usize),
}

impl Sexp {
    fn line(&self) -> usize {
        match self {
            Sexp::Atom(_, l) | Sexp::List(_, l) => *l,
        }
    }
}

fn tokenize(lines: &[(usize, &str)]) -> Vec<(String, usize)> {
    let mut out = Vec::new();
    for &(no, line) in lines {
        let spaced = line.replace('(', " ( ").replace(')', " ) ");
        out.extend(spaced.split_whitespace().map(|t| (t.to_string(), no)));
    }
    out
}

fn read(tokens: &[(String, usize)], pos: &mut usize) -> Result<Sexp, ParseError> {
    let last = tokens.last().map_or(0, |t| t.1);
    let (tok, no) = tokens.get(*pos).ok_or_else(|| ParseError::at(last, "unexpected end of expression"))?;
    *pos += 1;
    match tok.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos) {
                    None => return Err(ParseError::at(last, "unclosed `(`")),
                    Some((t, _)) if t == ")" => {
                        *pos += 1;
                        return Ok(Sexp::List(items, *no));
                    }
                    Some(_) => items.push(read(tokens, pos)?),
                }
            }
        }
        ")" => Err(ParseError::at(*no, "unexpected `)`")),
        _ => Ok(Sexp::Atom(tok.clone(), *no)),
    }
}

fn collect_letters(s: &Sexp, out: &mut BTreeSet<char>) {
    if let Sexp::List(items, _) = s {
        if let [Sexp::Atom(head, _), terms @ ..] = &items[..] {
            if head == "poly" {
                for t in terms {
                    if let Sexp::List(pair, _) = t {
                        if let Some(Sexp::Atom(w, _)) = pair.first() {
                            out.extend(w.chars().filter(|&c| c != '_'));
                        }
                    }
                }
                return;
            }
        }
        for i in items {
            collect_letters(i, out);
        }
    }
}

fn build(s: &Sexp, field: Field, alphabet: &Alphabet) -> Result<RatExpr, ParseError> {
    let Sexp::List(items, no) = s else {
        return Err(ParseError::at(s.line(), "expected `(`"));
    };
    let no = *no;
    let wrap = |e: polya_core::ExprError| ParseError::at(no, e.to_string());
    let Some(Sexp::Atom(head, _)) = items.first() else {
        return Err(ParseError::at(no, "expected an operator"));
    };
    let args = &items[1..];
    match head.as_str() {
        "poly" => {
            let mut terms = Vec::new();
            for t in args {
                let Sexp::List(pair, pno) = t else {
                    return Err(ParseError::at(t.line(), "expected `(<word> <scalar>)`"));
                };
                let [Sexp::Atom(w, _), Sexp::Atom(c, _)] = &pair[..] else {
                    return Err(ParseError::at(*pno, "expected `(<word> <scalar>)`"));
                };
                let word = if w == "_" { Word::empty() } else { Word::new(w.chars().collect()) };
                for &c in word.letters() {
                    if alphabet.index(c).is_none() {
                        return Err(ParseError::at(*pno, format!("unknown letter `{}`", c)));
                    }
                }
                terms.push((word, parse_scalar(*pno, field, c)?));
            }
            RatExpr::poly(alphabet.clone(), field, terms).map_err(wrap)
        }
        "+" | "." => {
            if args.len() < 2 {
                return Err(ParseError::at(no, format!("`{}` needs at least two operands", head)));
            }
            let mut acc = build(&args[0], field, alphabet)?;
            for a in &args[1..] {
                let b = build(a, field, alphabet)?;
                acc = if head == "+" { RatExpr::sum(acc, b) } else { RatExpr::prod(acc, b) }.map_err(wrap)?;
            }
            Ok(acc)
        }
        "*" => {
            let [a] = args else {
                return Err(ParseError::at(no, "`*` takes one operand"));
            };
            RatExpr::star(build(a, field, alphabet)?).map_err(wrap)
        }
        other => Err(ParseError::at(no, format!("unknown operator `{}`", other))),
    }
}

pub fn parse_expr(text: &str) -> Result<RatExpr, ParseError> {
    let lines = content_lines(text);
    let mut field = Field::Rational;
    let mut alphabet = None;
    let mut body = 0;
    while let Some(&(no, line)) = lines.get(body) {
        let words: Vec<&str> = line.split_whitespace().collect();
        match words[0] {
            "field" => field = parse_field(no, &words)?,
            "alphabet" => alphabet = Some(parse_alphabet(no, &words)?),
            _ => break,
        }
        body += 1;
    }
    let tokens = tokenize(&lines[body..]);
    let mut pos = 0;
    let sexp = read(&tokens, &mut pos)?;
    if let Some((_, no)) = tokens.get(pos) {
        return Err(ParseError::at(*no, "trailing content after expression"));
    }
    let alphabet = match alphabet {
        Some(a) => a,
        None => {
            let mut letters = BTreeSet::new();
            collect_letters(&sexp, &mut letters);
            if letters.is_empty() {
                return Err(ParseError::at(sexp.line(), "no letters occur; add an `alphabet` line"));
            }
            Alphabet::new(letters.into_iter().collect()).map_err(|e| ParseError::at(0, e.to_string()))?
        }
    };
    build(&sexp, field, &alphabet)
}

/// Header lines followed by the expression on one line.
pub fn write_expr(e: &RatExpr) -> String {
    let letters: Vec<String> = e.alphabet().letters().iter().map(char::to_string).collect();
    format!("field {}\nalphabet {}\n{}\n", e.field(), letters.join(" "), e)
}
