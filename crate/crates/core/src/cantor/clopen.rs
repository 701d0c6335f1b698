use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::point::CantorPoint;
use super::word::Word;
use crate::error::{Error, Result};

/// Closed interval with exact rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RationalInterval {
    pub fn length(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// The basic clopen set of points whose digits start with `word`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cylinder(pub Word);

impl Cylinder {
    pub fn word(&self) -> &Word {
        &self.0
    }

    /// The segment of the ternary construction that the cylinder lives in.
    pub fn interval(&self) -> RationalInterval {
        let scale = num_traits::pow(BigInt::from(3), self.0.len());
        let numer = self
            .0
            .digits()
            .iter()
            .fold(BigInt::zero(), |acc, &d| acc * 3 + BigInt::from(d));
        let lo = BigRational::new(numer.clone(), scale.clone());
        let hi = BigRational::new(numer + 1, scale);
        RationalInterval { lo, hi }
    }
}

/// The `2^n` closed intervals of the `n`-th stage, left to right.
pub fn cantor_stage(n: usize) -> Vec<RationalInterval> {
    Word::all_of_length(n)
        .map(|w| Cylinder(w).interval())
        .collect()
}

/// A clopen subset of the Cantor set as a finite union of cylinders.
///
/// The word list is kept canonical: sorted, prefix-free, and with no pair of
/// siblings `w0`, `w2` (those are merged into `w`). Equal sets therefore
/// have equal word lists.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClopenSet {
    words: Vec<Word>,
}

impl ClopenSet {
    pub fn empty() -> Self {
        ClopenSet { words: Vec::new() }
    }

    pub fn whole() -> Self {
        ClopenSet {
            words: vec![Word::empty()],
        }
    }

    pub fn cylinder(word: Word) -> Self {
        ClopenSet { words: vec![word] }
    }

    pub fn from_words<I: IntoIterator<Item = Word>>(words: I) -> Self {
        let mut sorted: Vec<Word> = words.into_iter().collect();
        sorted.sort();
        sorted.dedup();
        let mut antichain: Vec<Word> = Vec::with_capacity(sorted.len());
        for w in sorted {
            // In lexicographic order a covering prefix is the last word kept.
            if antichain.last().is_some_and(|u| u.is_prefix_of(&w)) {
                continue;
            }
            antichain.push(w);
        }
        let mut set: BTreeSet<Word> = antichain.into_iter().collect();
        loop {
            let merge = set.iter().find_map(|w| {
                let sib = w.sibling()?;
                set.contains(&sib).then(|| (w.clone(), sib))
            });
            match merge {
                Some((w, sib)) => {
                    set.remove(&w);
                    set.remove(&sib);
                    set.insert(w.parent().expect("siblings have a parent"));
                }
                None => break,
            }
        }
        ClopenSet {
            words: set.into_iter().collect(),
        }
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.words.len() == 1 && self.words[0].is_empty()
    }

    /// Length of the longest word, `0` for the empty set.
    pub fn depth(&self) -> usize {
        self.words.iter().map(Word::len).max().unwrap_or(0)
    }

    pub fn contains(&self, p: &CantorPoint) -> bool {
        self.words.iter().any(|w| p.in_cylinder(w))
    }

    /// Whether the whole cylinder `word` lies in the set.
    pub fn contains_cylinder(&self, word: &Word) -> bool {
        self.words.iter().any(|w| w.is_prefix_of(word))
    }

    pub fn meets_cylinder(&self, word: &Word) -> bool {
        self.words
            .iter()
            .any(|w| w.is_prefix_of(word) || word.is_prefix_of(w))
    }

    pub fn union(&self, other: &ClopenSet) -> ClopenSet {
        ClopenSet::from_words(self.words.iter().chain(&other.words).cloned())
    }

    pub fn intersect(&self, other: &ClopenSet) -> ClopenSet {
        let mut out = Vec::new();
        for u in &self.words {
            for v in &other.words {
                if u.is_prefix_of(v) {
                    out.push(v.clone());
                } else if v.is_prefix_of(u) {
                    out.push(u.clone());
                }
            }
        }
        ClopenSet::from_words(out)
    }

    pub fn complement(&self) -> ClopenSet {
        fn rec(words: &[&Word], at: Word, out: &mut Vec<Word>) {
            if words.iter().any(|w| w.len() == at.len()) {
                return;
            }
            if words.is_empty() {
                out.push(at);
                return;
            }
            for d in [0, 2] {
                let child = at.child(d);
                let below: Vec<&Word> = words
                    .iter()
                    .copied()
                    .filter(|w| child.is_prefix_of(w))
                    .collect();
                rec(&below, child, out);
            }
        }
        let mut out = Vec::new();
        let all: Vec<&Word> = self.words.iter().collect();
        rec(&all, Word::empty(), &mut out);
        ClopenSet::from_words(out)
    }

    pub fn difference(&self, other: &ClopenSet) -> ClopenSet {
        self.intersect(&other.complement())
    }

    pub fn is_subset(&self, other: &ClopenSet) -> bool {
        self.words.iter().all(|w| other.contains_cylinder(w))
    }

    pub fn is_disjoint(&self, other: &ClopenSet) -> bool {
        self.intersect(other).is_empty()
    }

    /// Diameter in the metric of `[0, 1]`, from the interval hull of the
    /// cylinders. Cylinder endpoints are Cantor points, so the hull
    /// endpoints are attained.
    pub fn diam(&self) -> Result<BigRational> {
        let mut intervals = self.words.iter().map(|w| Cylinder(w.clone()).interval());
        let first = intervals.next().ok_or(Error::EmptySet)?;
        let (lo, hi) = intervals.fold((first.lo, first.hi), |(lo, hi), iv| {
            (lo.min(iv.lo), hi.max(iv.hi))
        });
        Ok(hi - lo)
    }

    /// Union of the depth-`depth` cylinders that meet the set.
    pub fn outer_hull(&self, depth: usize) -> ClopenSet {
        ClopenSet::from_words(self.words.iter().map(|w| w.truncate(depth)))
    }

    /// Depth-`depth` words whose representative `w·0^ω` lies in the set.
    pub fn trace(&self, depth: usize) -> BTreeSet<Word> {
        Word::all_of_length(depth)
            .filter(|w| self.contains_cylinder(w) || self.contains(&CantorPoint::zero_tail(w)))
            .collect()
    }

    /// Some point of the set, `None` when empty.
    pub fn representative(&self) -> Option<CantorPoint> {
        self.words.first().map(CantorPoint::zero_tail)
    }
}

impl fmt::Display for ClopenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.words.is_empty() {
            return f.write_str("∅");
        }
        for (k, w) in self.words.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl FromStr for ClopenSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "∅" {
            return Ok(ClopenSet::empty());
        }
        let words = s
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<Word>>>()?;
        Ok(ClopenSet::from_words(words))
    }
}

impl Serialize for ClopenSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ClopenSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> ClopenSet {
        s.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn cylinder_intervals() {
        let iv = |s: &str| Cylinder(s.parse().unwrap()).interval();
        assert_eq!(iv("00"), RationalInterval { lo: q(0, 1), hi: q(1, 9) });
        assert_eq!(iv("ε"), RationalInterval { lo: q(0, 1), hi: q(1, 1) });
        assert_eq!(iv("20"), RationalInterval { lo: q(2, 3), hi: q(7, 9) });
    }

    #[test]
    fn stages() {
        assert_eq!(cantor_stage(0), vec![RationalInterval { lo: q(0, 1), hi: q(1, 1) }]);
        let p1: Vec<(BigRational, BigRational)> =
            cantor_stage(1).into_iter().map(|iv| (iv.lo, iv.hi)).collect();
        assert_eq!(p1, vec![(q(0, 1), q(1, 3)), (q(2, 3), q(1, 1))]);
        let p2: Vec<(BigRational, BigRational)> =
            cantor_stage(2).into_iter().map(|iv| (iv.lo, iv.hi)).collect();
        assert_eq!(
            p2,
            vec![
                (q(0, 1), q(1, 9)),
                (q(2, 9), q(1, 3)),
                (q(2, 3), q(7, 9)),
                (q(8, 9), q(1, 1))
            ]
        );
    }

    #[test]
    fn membership() {
        let p: CantorPoint = "^(02)".parse().unwrap();
        assert!(ClopenSet::whole().contains(&p));
        assert!(!set("0").contains(&"2^(0)".parse().unwrap()));
        assert!(set("02").contains(&p));
    }

    #[test]
    fn algebra_examples() {
        assert_eq!(set("0").union(&set("2")), ClopenSet::whole());
        assert_eq!(set("00").complement(), set("02,2"));
        assert_eq!(set("00").complement().to_string(), "02,2");
        assert!(set("00").is_subset(&set("0")));
        assert!(!set("0").is_subset(&set("00")));
        assert_eq!(set("000,002,02"), set("0"));
        assert_eq!(set("0,00,022"), set("0"));
        assert_eq!(set("00,22").intersect(&set("0")), set("00"));
        assert!(ClopenSet::whole().complement().is_empty());
        assert_eq!(ClopenSet::empty().complement(), ClopenSet::whole());
    }

    #[test]
    fn diameters() {
        assert_eq!(ClopenSet::whole().diam(), Ok(q(1, 1)));
        assert_eq!(set("00").diam(), Ok(q(1, 9)));
        assert_eq!(set("0,2").diam(), Ok(q(1, 1)));
        assert_eq!(set("00,02").diam(), Ok(q(1, 3)));
        assert_eq!(ClopenSet::empty().diam(), Err(Error::EmptySet));
    }

    #[test]
    fn diam_of_00_matches_endpoint_points() {
        let lo: CantorPoint = "00^(0)".parse().unwrap();
        let hi: CantorPoint = "00^(2)".parse().unwrap();
        assert_eq!(lo.distance(&hi), set("00").diam().unwrap());
    }

    #[test]
    fn text_forms() {
        assert_eq!(ClopenSet::empty().to_string(), "∅");
        assert_eq!(ClopenSet::whole().to_string(), "ε");
        assert_eq!(set("∅"), ClopenSet::empty());
        assert_eq!(set("2,00"), set("00,2"));
    }
}
