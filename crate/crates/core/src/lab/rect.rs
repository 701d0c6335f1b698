use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cantor::{CantorPoint, ClopenSet};
use crate::error::{Error, Result};

/// A clopen rectangle `W × V` of `C×C`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Rect {
    pub w: ClopenSet,
    pub v: ClopenSet,
}

impl Rect {
    pub fn new(w: ClopenSet, v: ClopenSet) -> Self {
        Rect { w, v }
    }

    pub fn whole() -> Self {
        Rect::new(ClopenSet::whole(), ClopenSet::whole())
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty() || self.v.is_empty()
    }

    pub fn contains(&self, x: &CantorPoint, y: &CantorPoint) -> bool {
        self.w.contains(x) && self.v.contains(y)
    }

    pub fn intersect(&self, other: &Rect) -> Rect {
        Rect::new(self.w.intersect(&other.w), self.v.intersect(&other.v))
    }

    pub fn is_subset(&self, other: &Rect) -> bool {
        self.is_empty() || (self.w.is_subset(&other.w) && self.v.is_subset(&other.v))
    }
}

impl fmt::Display for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}×{}", self.w, self.v)
    }
}

impl FromStr for Rect {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (w, v) = s
            .split_once('×')
            .or_else(|| s.split_once('x'))
            .ok_or_else(|| Error::Parse(format!("expected W×V, got {s:?}")))?;
        let (w, v) = (w.trim(), v.trim());
        if w.is_empty() || v.is_empty() {
            return Err(Error::Parse(format!("rectangle side missing in {s:?}")));
        }
        Ok(Rect::new(w.parse()?, v.parse()?))
    }
}

/// A finitely presented open subset `⋃ W_j × V_j` of `C×C`.
///
/// Empty rectangles are dropped on construction; the rectangle order is
/// kept since it is meaningful for streams.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RectUnion {
    rects: Vec<Rect>,
}

impl RectUnion {
    pub fn new<I: IntoIterator<Item = Rect>>(rects: I) -> Self {
        RectUnion {
            rects: rects.into_iter().filter(|r| !r.is_empty()).collect(),
        }
    }

    pub fn empty() -> Self {
        RectUnion::default()
    }

    pub fn whole() -> Self {
        RectUnion::new([Rect::whole()])
    }

    pub fn rects(&self) -> &[Rect] {
        &self.rects
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }

    pub fn contains(&self, x: &CantorPoint, y: &CantorPoint) -> bool {
        self.rects.iter().any(|r| r.contains(x, y))
    }

    pub fn intersect_rect(&self, rect: &Rect) -> RectUnion {
        RectUnion::new(self.rects.iter().map(|r| r.intersect(rect)))
    }

    pub fn intersect(&self, other: &RectUnion) -> RectUnion {
        let mut out: Vec<Rect> = Vec::new();
        for a in &self.rects {
            for b in &other.rects {
                let r = a.intersect(b);
                if !r.is_empty() && !out.contains(&r) {
                    out.push(r);
                }
            }
        }
        RectUnion::new(out)
    }

    pub fn is_disjoint_from(&self, rect: &Rect) -> bool {
        self.rects.iter().all(|r| r.intersect(rect).is_empty())
    }

    /// `C×C` minus the union, again as a finite union of rectangles.
    pub fn complement(&self) -> RectUnion {
        self.rects.iter().fold(RectUnion::whole(), |acc, r| {
            let outside = RectUnion::new([
                Rect::new(r.w.complement(), ClopenSet::whole()),
                Rect::new(r.w.clone(), r.v.complement()),
            ]);
            acc.intersect(&outside)
        })
    }

    pub fn push(&mut self, rect: Rect) {
        if !rect.is_empty() {
            self.rects.push(rect);
        }
    }
}

impl fmt::Display for RectUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rects.is_empty() {
            return f.write_str("∅");
        }
        for (k, r) in self.rects.iter().enumerate() {
            if k > 0 {
                f.write_str(";")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl FromStr for RectUnion {
    type Err = Error;

    /// Rectangles `W×V` separated by `;` or `+`; `∅` is the empty union.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty rectangle-union literal".into()));
        }
        if s == "∅" {
            return Ok(RectUnion::empty());
        }
        let rects = s
            .split([';', '+'])
            .map(str::parse)
            .collect::<Result<Vec<Rect>>>()?;
        Ok(RectUnion::new(rects))
    }
}

impl Serialize for RectUnion {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RectUnion {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
