//! Independent checker for [`WitnessCertificate`]s.
//!
//! Only point, clopen and construction operations are used here; none of
//! the image machinery that produced the certificate.

use std::fmt;

use num_rational::BigRational;

use super::witness::WitnessCertificate;
use crate::cantor::{CantorPoint, ClopenSet};
use crate::construction::Construction;

/// The clauses of a witness certificate, in checking order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Clause {
    IndexOrder,
    RectNonempty,
    RectInsidePiece,
    PrimeBaseInsideV,
    BasesNested,
    DiameterGap,
    BaseWordsMatch,
    PrimePoint,
    WitnessPoint,
    SampleCount,
    SampleIsApproximant,
    SampleInW,
    SampleExcluded,
    EvidenceInPrimeBase,
    EvidenceOutsideDoublePrimeBase,
    EvidenceInX,
    EvidenceInPiece,
    SamplesConverge,
}

impl Clause {
    pub fn name(self) -> &'static str {
        match self {
            Clause::IndexOrder => "n″ > n′",
            Clause::RectNonempty => "W×V nonempty",
            Clause::RectInsidePiece => "W×V ⊆ P",
            Clause::PrimeBaseInsideV => "B_{n′} ⊆ V",
            Clause::BasesNested => "B_{n″} ⊆ B_{n′}",
            Clause::DiameterGap => "2·diam B_{n″} < diam B_{n′}",
            Clause::BaseWordsMatch => "base words match the enumeration",
            Clause::PrimePoint => "(a_{n′}, b_{n′}) ∈ (W×B_{n′}) ∩ X",
            Clause::WitnessPoint => "(a_{n″}, b_{n″}) ∈ (W×B_{n″}) ∩ X",
            Clause::SampleCount => "at least K samples",
            Clause::SampleIsApproximant => "sample is a_{n″,i}",
            Clause::SampleInW => "a_{n″,i} ∈ W",
            Clause::SampleExcluded => "a_{n″,i} ∉ π((W×B_{n″}) ∩ X)",
            Clause::EvidenceInPrimeBase => "y_i ∈ B_{n′}",
            Clause::EvidenceOutsideDoublePrimeBase => "y_i ∉ B_{n″}",
            Clause::EvidenceInX => "(a_{n″,i}, y_i) ∈ X",
            Clause::EvidenceInPiece => "(a_{n″,i}, y_i) ∈ P",
            Clause::SamplesConverge => "a_{n″,i} → a_{n″}",
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub failed: Option<Clause>,
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        self.failed.is_none()
    }
}

fn ensure(ok: bool, clause: Clause) -> Result<(), Clause> {
    if ok {
        Ok(())
    } else {
        Err(clause)
    }
}

pub fn verify_witness(con: &Construction, cert: &WitnessCertificate, k: usize) -> Verdict {
    Verdict {
        failed: check(con, cert, k).err(),
    }
}

fn check(con: &Construction, cert: &WitnessCertificate, k: usize) -> Result<(), Clause> {
    let (n1, n2) = (cert.n_prime, cert.n_double_prime);
    let w = &cert.rect.w;
    let v = &cert.rect.v;
    let b1 = ClopenSet::cylinder(cert.base_prime.clone());
    let b2 = ClopenSet::cylinder(cert.base_double_prime.clone());

    ensure(n2 > n1, Clause::IndexOrder)?;
    ensure(!w.is_empty() && !v.is_empty(), Clause::RectNonempty)?;
    ensure(
        cert.complement
            .rects()
            .iter()
            .all(|r| r.w.is_disjoint(w) || r.v.is_disjoint(v)),
        Clause::RectInsidePiece,
    )?;
    ensure(b1.is_subset(v), Clause::PrimeBaseInsideV)?;
    ensure(b2.is_subset(&b1), Clause::BasesNested)?;
    let diam = |s: &ClopenSet| s.diam().unwrap_or_else(|_| BigRational::from_integer(0.into()));
    ensure(
        diam(&b2) * BigRational::from_integer(2.into()) < diam(&b1),
        Clause::DiameterGap,
    )?;
    ensure(
        con.base_word(n1) == cert.base_prime && con.base_word(n2) == cert.base_double_prime,
        Clause::BaseWordsMatch,
    )?;

    let in_rect_x = |x: &CantorPoint, y: &CantorPoint, base: &ClopenSet| {
        w.contains(x) && base.contains(y) && con.in_x(x, y)
    };
    let p1 = con.dense_pair(n1);
    ensure(
        cert.prime_point.x == p1.a
            && cert.prime_point.y == p1.b
            && in_rect_x(&p1.a, &p1.b, &b1),
        Clause::PrimePoint,
    )?;
    let p2 = con.dense_pair(n2);
    ensure(
        cert.witness.x == p2.a && cert.witness.y == p2.b && in_rect_x(&p2.a, &p2.b, &b2),
        Clause::WitnessPoint,
    )?;

    ensure(cert.samples.len() >= k, Clause::SampleCount)?;
    let b2_probe = CantorPoint::zero_tail(&cert.base_double_prime);
    for s in &cert.samples {
        ensure(
            con.recognize(&s.point) == Some((n2, s.i)),
            Clause::SampleIsApproximant,
        )?;
        ensure(w.contains(&s.point), Clause::SampleInW)?;
        // The removed fiber over a_{n″,i} is B_{n″} itself, so no y in the
        // neighbourhood's second factor keeps it in X.
        ensure(
            con.base_word(n2).is_prefix_of(&cert.base_double_prime)
                && !con.in_x(&s.point, &p2.b)
                && !con.in_x(&s.point, &b2_probe),
            Clause::SampleExcluded,
        )?;
        ensure(b1.contains(&s.evidence), Clause::EvidenceInPrimeBase)?;
        ensure(!b2.contains(&s.evidence), Clause::EvidenceOutsideDoublePrimeBase)?;
        ensure(con.in_x(&s.point, &s.evidence), Clause::EvidenceInX)?;
        ensure(
            cert.rect.contains(&s.point, &s.evidence)
                && !cert.complement.contains(&s.point, &s.evidence),
            Clause::EvidenceInPiece,
        )?;
    }
    let distances: Vec<BigRational> = cert
        .samples
        .iter()
        .map(|s| s.point.distance(&p2.a))
        .collect();
    ensure(
        cert.samples.windows(2).all(|p| p[0].i < p[1].i)
            && distances.windows(2).all(|d| d[1] < d[0]),
        Clause::SamplesConverge,
    )?;
    Ok(())
}
