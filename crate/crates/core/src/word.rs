//! Alphabets and words.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::SeriesError;

/// A finite ordered alphabet of single-character letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Alphabet {
    pub fn new(letters: Vec<char>) -> Result<Alphabet, SeriesError> {
        if letters.is_empty() {
            return Err(SeriesError::EmptyAlphabet);
        }
        for (i, c) in letters.iter().enumerate() {
            if letters[..i].contains(c) {
                return Err(SeriesError::DuplicateLetter(*c));
            }
            if *c == '_' || c.is_whitespace() || "()#;".contains(*c) {
                return Err(SeriesError::UnknownLetter(*c));
            }
        }
        Ok(Alphabet { letters })
    }

    /// Convenience constructor from a string of letters, e.g. `"ab"`.
    pub fn from_str_letters(s: &str) -> Result<Alphabet, SeriesError> {
        Alphabet::new(s.chars().collect())
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn letter(&self, i: usize) -> char {
        self.letters[i]
    }

    pub fn index(&self, c: char) -> Option<usize> {
        self.letters.iter().position(|&l| l == c)
    }

    /// Letter indices of `w`, or an error if it uses a foreign letter.
    pub fn indices(&self, w: &Word) -> Result<Vec<usize>, SeriesError> {
        w.letters.iter().map(|&c| self.index(c).ok_or(SeriesError::AlphabetMismatch)).collect()
    }

    pub fn word_from_indices(&self, idx: &[usize]) -> Word {
        Word { letters: idx.iter().map(|&i| self.letters[i]).collect() }
    }

    /// Length first, then lexicographic in alphabet order.
    pub fn cmp_words(&self, a: &Word, b: &Word) -> Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            let ia = a.letters.iter().map(|&c| self.index(c));
            let ib = b.letters.iter().map(|&c| self.index(c));
            ia.cmp(ib)
        })
    }

    /// All words of length at most `maxlen`, in length-then-lexicographic order.
    pub fn words_up_to(&self, maxlen: usize) -> Vec<Word> {
        let mut out = alloc::vec![Word::empty()];
        let mut start = 0;
        for _ in 0..maxlen {
            let end = out.len();
            for i in start..end {
                for &c in &self.letters {
                    let mut w = out[i].clone();
                    w.letters.push(c);
                    out.push(w);
                }
            }
            start = end;
        }
        out
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", c)?;
        }
        Ok(())
    }
}

/// A word over some alphabet. Displays as its letters, or `_` when empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<char>,
}

impl Word {
    pub fn empty() -> Word {
        Word { letters: Vec::new() }
    }

    pub fn new(letters: Vec<char>) -> Word {
        Word { letters }
    }

    /// Parses a word; `_` and the empty string denote the empty word.
    pub fn parse(s: &str) -> Word {
        let s = s.trim();
        if s == "_" {
            return Word::empty();
        }
        Word { letters: s.chars().collect() }
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn push(&mut self, c: char) {
        self.letters.push(c);
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word { letters: self.letters[..len].to_vec() }
    }

    /// Length of the longest common prefix.
    pub fn common_prefix_len(&self, other: &Word) -> usize {
        self.letters.iter().zip(&other.letters).take_while(|(a, b)| a == b).count()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "_");
        }
        for c in &self.letters {
            write!(f, "{}", c)?;
        }
        Ok(())
    }
}
