use serde::{Deserialize, Serialize};

use super::image::{stable_index, ImagePiece, ImageSet};
use crate::cantor::{CantorPoint, ClopenSet, Word};
use crate::construction::Construction;
use crate::error::{Error, Result};

/// A point of `D` with a cylinder that isolates it from the rest of `D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscretePoint {
    pub n: usize,
    pub point: CantorPoint,
    pub separator: Word,
}

/// `π(U ∩ X) = S ∪ D` with `S` open, `D` finite and discrete, `S ∩ D = ∅`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub open: ImagePiece,
    pub discrete: Vec<DiscretePoint>,
}

fn fail(msg: String) -> Error {
    Error::Certification(msg)
}

impl Decomposition {
    pub fn contains(&self, con: &Construction, x: &CantorPoint) -> bool {
        self.open.contains(con, x) || self.discrete.iter().any(|d| d.point == *x)
    }

    /// `S ∪ D` agrees with `img` at every probe point.
    pub fn reconstructs(
        &self,
        con: &Construction,
        img: &ImageSet,
        probes: &[CantorPoint],
    ) -> Result<()> {
        match probes
            .iter()
            .find(|x| self.contains(con, x) != img.contains(con, x))
        {
            Some(x) => Err(fail(format!("S ∪ D differs from the image at {x}"))),
            None => Ok(()),
        }
    }

    fn certify(&self, con: &Construction, img: &ImageSet) -> Result<()> {
        if !self.open.is_open() {
            return Err(fail("S keeps the limit of a removed tail".into()));
        }
        for d in &self.discrete {
            if !img.contains(con, &d.point) {
                return Err(fail(format!("D point {} is not in the image", d.point)));
            }
            if self.open.contains(con, &d.point) {
                return Err(fail(format!("S ∩ D contains {}", d.point)));
            }
            if !d.point.in_cylinder(&d.separator) {
                return Err(fail(format!("separator {} misses {}", d.separator, d.point)));
            }
            if let Some(other) = self
                .discrete
                .iter()
                .find(|e| e.n != d.n && e.point.in_cylinder(&d.separator))
            {
                return Err(fail(format!(
                    "separator {} of {} also holds {}",
                    d.separator, d.point, other.point
                )));
            }
            // Non-interiority: the separator holds a removed tail point.
            let tail = img
                .canonical
                .removal(d.n)
                .and_then(|t| t.tail_from)
                .ok_or_else(|| fail(format!("no removed tail converges to {}", d.point)))?;
            let i = tail.max(stable_index(d.n, d.separator.len()));
            let p = con.approximant(d.n, i).point;
            if !p.in_cylinder(&d.separator) || img.contains(con, &p) {
                return Err(fail(format!("separator of {} meets no removed point", d.point)));
            }
        }
        self.reconstructs(con, img, &certificate_points(con, img))
    }
}

/// Points where a decomposition is most likely to go wrong: the limits,
/// the early and tail members of every removal, and hull representatives.
pub fn certificate_points(con: &Construction, img: &ImageSet) -> Vec<CantorPoint> {
    let depth = img.hull().depth();
    let mut out: Vec<CantorPoint> = img
        .hull()
        .words()
        .iter()
        .map(CantorPoint::zero_tail)
        .collect();
    for piece in std::iter::once(&img.canonical).chain(&img.pieces) {
        for t in &piece.removals {
            out.push(con.dense_pair(t.n).a);
            let upto = stable_index(t.n, depth).max(t.tail_from.unwrap_or(0)) + 3;
            out.extend((0..upto).map(|i| con.approximant(t.n, i).point));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Splits the image into its open part and the finitely many limits of
/// removed tails, and certifies the split.
pub fn decompose(con: &Construction, img: &ImageSet) -> Result<Decomposition> {
    let mut open = img.canonical.clone();
    let mut limits = Vec::new();
    for t in &mut open.removals {
        if t.is_infinite() {
            if !t.limit_in_hull {
                return Err(fail(format!("tail {} converges outside its hull", t.n)));
            }
            t.limit_removed = true;
            limits.push((t.n, con.dense_pair(t.n).a));
        }
    }
    let hull_depth = open.hull.depth();
    let mut discrete = Vec::with_capacity(limits.len());
    for (n, point) in &limits {
        let mut depth = hull_depth;
        for (m, other) in &limits {
            if m != n {
                depth = depth.max(point.separation_depth(other)? + 1);
            }
        }
        discrete.push(DiscretePoint {
            n: *n,
            point: point.clone(),
            separator: point.head(depth),
        });
    }
    let dec = Decomposition { open, discrete };
    dec.certify(con, img)?;
    Ok(dec)
}

/// `π(U ∩ X) = L1 ∪ L2` with `L1 = S` open and `L2 = O2 ∩ F2`, `O2` clopen
/// and `F2` a finite, hence closed, point set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lc2Certificate {
    pub open: ImagePiece,
    pub o2: ClopenSet,
    pub f2: Vec<CantorPoint>,
}

impl Lc2Certificate {
    pub fn contains(&self, con: &Construction, x: &CantorPoint) -> bool {
        self.open.contains(con, x) || (self.o2.contains(x) && self.f2.contains(x))
    }

    /// Checks openness of `L1` and `L1 ∪ L2 = img` on the certificate
    /// points, the depth-`hull+2` trace and the extra probes.
    pub fn check(&self, con: &Construction, img: &ImageSet, probes: &[CantorPoint]) -> Result<()> {
        if !self.open.is_open() {
            return Err(fail("L1 is not open".into()));
        }
        let depth = img.hull().depth() + 2;
        let trace = Word::all_of_length(depth).map(|w| CantorPoint::zero_tail(&w));
        let relevant = certificate_points(con, img);
        for x in relevant.iter().cloned().chain(trace).chain(probes.iter().cloned()) {
            if self.contains(con, &x) != img.contains(con, &x) {
                return Err(fail(format!("L1 ∪ L2 differs from the image at {x}")));
            }
        }
        Ok(())
    }
}

pub fn lc2_certificate(con: &Construction, img: &ImageSet) -> Result<Lc2Certificate> {
    let dec = decompose(con, img)?;
    let o2 = ClopenSet::from_words(dec.discrete.iter().map(|d| d.separator.clone()));
    let cert = Lc2Certificate {
        open: dec.open,
        o2,
        f2: dec.discrete.into_iter().map(|d| d.point).collect(),
    };
    cert.check(con, img, &[])?;
    Ok(cert)
}
