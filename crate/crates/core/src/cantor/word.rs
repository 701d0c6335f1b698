use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Swaps the two ternary digits of the Cantor alphabet.
#[inline]
pub fn flip(digit: u8) -> u8 {
    2 - digit
}

/// A finite word over `{0, 2}`.
///
/// Words are ordered lexicographically by `Ord`; the length-lexicographic
/// order used by the enumerations is exposed through
/// [`Word::length_lex_index`] and [`Word::from_length_lex`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(digits: Vec<u8>) -> Result<Self> {
        if let Some(&d) = digits.iter().find(|&&d| d != 0 && d != 2) {
            return Err(Error::InvalidDigit(char::from(b'0' + d.min(9))));
        }
        Ok(Word(digits))
    }

    pub(crate) fn from_digits(digits: Vec<u8>) -> Self {
        debug_assert!(digits.iter().all(|&d| d == 0 || d == 2));
        Word(digits)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    pub fn into_digits(self) -> Vec<u8> {
        self.0
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn child(&self, digit: u8) -> Word {
        let mut digits = self.0.clone();
        digits.push(digit);
        Word::from_digits(digits)
    }

    pub fn parent(&self) -> Option<Word> {
        let (_, init) = self.0.split_last()?;
        Some(Word(init.to_vec()))
    }

    pub fn sibling(&self) -> Option<Word> {
        let (&last, init) = self.0.split_last()?;
        let mut digits = init.to_vec();
        digits.push(flip(last));
        Some(Word(digits))
    }

    pub fn truncate(&self, len: usize) -> Word {
        Word(self.0[..len.min(self.len())].to_vec())
    }

    pub fn common_prefix(&self, other: &Word) -> Word {
        let n = self
            .0
            .iter()
            .zip(&other.0)
            .take_while(|(a, b)| a == b)
            .count();
        self.truncate(n)
    }

    /// Nonempty prefixes, shortest first (the word itself included).
    pub fn nonempty_prefixes(&self) -> impl Iterator<Item = Word> + '_ {
        (1..=self.len()).map(move |k| self.truncate(k))
    }

    /// Index in the order ε, 0, 2, 00, 02, 20, 22, 000, ...
    pub fn length_lex_index(&self) -> usize {
        let rank = self
            .0
            .iter()
            .fold(0usize, |acc, &d| (acc << 1) | usize::from(d == 2));
        (1usize << self.len()) - 1 + rank
    }

    pub fn from_length_lex(index: usize) -> Word {
        // Words of length L occupy indices 2^L - 1 .. 2^(L+1) - 2.
        let len = (usize::BITS - 1 - (index + 1).leading_zeros()) as usize;
        let rank = index + 1 - (1usize << len);
        let digits = (0..len)
            .map(|k| if (rank >> (len - 1 - k)) & 1 == 1 { 2 } else { 0 })
            .collect();
        Word(digits)
    }

    /// All words of exactly the given length, in lexicographic order.
    pub fn all_of_length(len: usize) -> impl Iterator<Item = Word> {
        let first = (1usize << len) - 1;
        (first..first + (1usize << len)).map(Word::from_length_lex)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for &d in &self.0 {
            f.write_str(if d == 0 { "0" } else { "2" })?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "ε" || s == "e" {
            return Ok(Word::empty());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '2' => Ok(2),
                other => Err(Error::InvalidDigit(other)),
            })
            .collect::<Result<Vec<u8>>>()
            .map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_lex_roundtrip() {
        let expected = ["ε", "0", "2", "00", "02", "20", "22", "000"];
        for (k, text) in expected.iter().enumerate() {
            let w = Word::from_length_lex(k);
            assert_eq!(w.to_string(), *text);
            assert_eq!(w.length_lex_index(), k);
        }
        for k in 0..5000 {
            assert_eq!(Word::from_length_lex(k).length_lex_index(), k);
        }
    }

    #[test]
    fn parse_rejects_other_digits() {
        assert_eq!("021".parse::<Word>(), Err(Error::InvalidDigit('1')));
        assert_eq!("ε".parse::<Word>(), Ok(Word::empty()));
        assert!(Word::new(vec![0, 1]).is_err());
    }

    #[test]
    fn prefix_helpers() {
        let w: Word = "0220".parse().unwrap();
        assert_eq!(w.sibling().unwrap().to_string(), "0222");
        assert_eq!(w.parent().unwrap().to_string(), "022");
        assert_eq!(w.common_prefix(&"0200".parse().unwrap()).to_string(), "02");
        let prefixes: Vec<String> = w.nonempty_prefixes().map(|p| p.to_string()).collect();
        assert_eq!(prefixes, ["0", "02", "022", "0220"]);
        assert_eq!(Word::all_of_length(2).count(), 4);
    }
}
