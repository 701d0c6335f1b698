use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::word::Word;
use crate::error::{Error, Result};

/// An eventually periodic point of the Cantor set, `prefix · cycle^ω`.
///
/// Values are always kept in normal form: the cycle is primitive and the
/// prefix cannot be shortened by rotating the cycle. Two points are equal
/// exactly when their digit sequences are equal, so the derived `Eq` and
/// `Hash` are semantic. The derived `Ord` is structural, not numeric.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CantorPoint {
    prefix: Word,
    cycle: Word,
}

fn primitive_root(cycle: &[u8]) -> &[u8] {
    let n = cycle.len();
    (1..=n)
        .filter(|p| n.is_multiple_of(*p))
        .find(|&p| (p..n).all(|k| cycle[k] == cycle[k - p]))
        .map(|p| &cycle[..p])
        .unwrap_or(cycle)
}

fn base3(digits: &[u8]) -> BigInt {
    digits
        .iter()
        .fold(BigInt::zero(), |acc, &d| acc * 3 + BigInt::from(d))
}

fn pow3(exp: usize) -> BigInt {
    num_traits::pow(BigInt::from(3), exp)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl CantorPoint {
    pub fn new(prefix: Word, cycle: Word) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::EmptyCycle);
        }
        let mut cycle = primitive_root(cycle.digits()).to_vec();
        let mut prefix = prefix.into_digits();
        while let (Some(&p), Some(&c)) = (prefix.last(), cycle.last()) {
            if p != c {
                break;
            }
            prefix.pop();
            cycle.rotate_right(1);
        }
        Ok(CantorPoint {
            prefix: Word::from_digits(prefix),
            cycle: Word::from_digits(cycle),
        })
    }

    pub(crate) fn from_digits(prefix: Vec<u8>, cycle: Vec<u8>) -> Self {
        Self::new(Word::from_digits(prefix), Word::from_digits(cycle))
            .expect("cycle is nonempty")
    }

    /// `word · 0^ω`, the canonical representative of the cylinder `word`.
    pub fn zero_tail(word: &Word) -> Self {
        Self::from_digits(word.digits().to_vec(), vec![0])
    }

    pub fn prefix(&self) -> &Word {
        &self.prefix
    }

    pub fn cycle(&self) -> &Word {
        &self.cycle
    }

    pub fn digit(&self, k: usize) -> u8 {
        let p = self.prefix.digits();
        if k < p.len() {
            p[k]
        } else {
            let c = self.cycle.digits();
            c[(k - p.len()) % c.len()]
        }
    }

    /// The first `len` digits.
    pub fn head(&self, len: usize) -> Word {
        Word::from_digits((0..len).map(|k| self.digit(k)).collect())
    }

    pub fn in_cylinder(&self, word: &Word) -> bool {
        word.digits()
            .iter()
            .enumerate()
            .all(|(k, &d)| self.digit(k) == d)
    }

    /// `Σ_k digit_k · 3^-(k+1)` in closed form.
    pub fn value(&self) -> BigRational {
        let p = self.prefix.len();
        let c = self.cycle.len();
        let head = BigRational::new(base3(self.prefix.digits()), pow3(p));
        let tail = BigRational::new(
            base3(self.cycle.digits()),
            pow3(p) * (pow3(c) - BigInt::one()),
        );
        head + tail
    }

    pub fn distance(&self, other: &CantorPoint) -> BigRational {
        (self.value() - other.value()).abs()
    }

    /// Index of the first digit where the two points differ.
    pub fn separation_depth(&self, other: &CantorPoint) -> Result<usize> {
        if self == other {
            return Err(Error::EqualPoints);
        }
        let (c1, c2) = (self.cycle.len(), other.cycle.len());
        let bound = self.prefix.len().max(other.prefix.len()) + c1 / gcd(c1, c2) * c2;
        (0..bound)
            .find(|&k| self.digit(k) != other.digit(k))
            .ok_or(Error::EqualPoints)
    }
}

impl fmt::Display for CantorPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.prefix.is_empty() {
            write!(f, "{}", self.prefix)?;
        }
        write!(f, "^({})", self.cycle)
    }
}

impl FromStr for CantorPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (prefix, rest) = s
            .split_once("^(")
            .ok_or_else(|| Error::Parse(format!("expected prefix^(cycle), got {s:?}")))?;
        let cycle = rest
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("unterminated cycle in {s:?}")))?;
        let prefix = if prefix.is_empty() {
            Word::empty()
        } else {
            prefix.parse()?
        };
        CantorPoint::new(prefix, cycle.parse()?)
    }
}

impl Serialize for CantorPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CantorPoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> CantorPoint {
        s.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn values() {
        assert_eq!(pt("^(0)").value(), q(0, 1));
        assert_eq!(pt("2^(0)").value(), q(2, 3));
        assert_eq!(pt("^(02)").value(), q(1, 4));
        assert_eq!(pt("^(2)").value(), q(1, 1));
    }

    #[test]
    fn geometric_series_matches_truncated_sum() {
        // 40 exact terms of 0 2 0 2 ... bracket the closed form within 3^-40.
        let p = pt("^(02)");
        let partial: BigRational = (0..40)
            .map(|k| q(p.digit(k).into(), 1) / BigRational::from_integer(pow3(k + 1)))
            .sum();
        let v = p.value();
        let slack = BigRational::new(BigInt::one(), pow3(40));
        assert!(partial <= v && v <= partial + slack);
    }

    #[test]
    fn normal_form() {
        assert_eq!(pt("0^(0)"), pt("^(0)"));
        assert_eq!(pt("^(0202)"), pt("^(02)"));
        assert_eq!(pt("02^(02)"), pt("^(02)"));
        assert_eq!(pt("20^(20)").to_string(), "^(20)");
        assert_eq!(pt("0^(20)").to_string(), "^(02)");
        assert_ne!(pt("^(02)"), pt("^(20)"));
        assert!(CantorPoint::new(Word::empty(), Word::empty()).is_err());
    }

    #[test]
    fn distance_examples() {
        let x = pt("02^(220)");
        assert_eq!(x.distance(&x), q(0, 1));
        assert_eq!(pt("^(0)").distance(&pt("2^(0)")), q(2, 3));
    }

    #[test]
    fn separation() {
        assert_eq!(pt("^(0)").separation_depth(&pt("2^(0)")), Ok(0));
        assert_eq!(pt("02^(0)").separation_depth(&pt("^(0)")), Ok(1));
        assert_eq!(pt("^(02)").separation_depth(&pt("^(02)")), Err(Error::EqualPoints));
        // Agreement far past both prefixes with cycles of coprime lengths.
        let a = pt("^(002)");
        let b = pt("002002002002^(00)");
        assert_eq!(a.separation_depth(&b), Ok(14));
        let k = a.separation_depth(&b).unwrap();
        assert!(!b.in_cylinder(&a.head(k + 1)));
    }

    #[test]
    fn text_roundtrip() {
        for s in ["02^(20)", "^(0)", "2222^(02)"] {
            let p = pt(s);
            assert_eq!(pt(&p.to_string()), p);
        }
        assert!("02".parse::<CantorPoint>().is_err());
        assert!("1^(0)".parse::<CantorPoint>().is_err());
    }
}
