//! JSON documents: the family export and certificate files.
//!
//! Certificate files share an envelope:
//!
//! ```json
//! { "schema_version": 1, "scheme_params": {...}, "type": "witness", "payload": {...} }
//! ```
//!
//! Points, words, clopen sets and rectangle unions use their textual forms
//! (`02^(20)`, `0220`, `00,2`, `0×ε;2×02`).

use serde::{Deserialize, Serialize};

use crate::cantor::{CantorPoint, Word};
use crate::construction::{Construction, SchemeParams};
use crate::error::{Error, Result};
use crate::lab::{Decomposition, ImagePiece, Lc2Certificate, RectUnion, ScatteredReport, WitnessCertificate};
use num_rational::BigRational;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensePairRecord {
    pub n: usize,
    pub a: CantorPoint,
    pub b: CantorPoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproximantRecord {
    pub n: usize,
    pub i: usize,
    pub point: CantorPoint,
    #[serde(rename = "D")]
    pub depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationRecord {
    pub n: usize,
    pub word: Word,
}

/// Outcome of each construction constraint over the exported window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyChecks {
    pub distinct_a: bool,
    pub distinct_b: bool,
    pub distinct_approximants: bool,
    pub approximants_avoid_dense: bool,
    pub distance_below_one_over_n_plus_one: bool,
    pub b_in_base: bool,
}

impl FamilyChecks {
    pub fn all(&self) -> bool {
        self.distinct_a
            && self.distinct_b
            && self.distinct_approximants
            && self.approximants_avoid_dense
            && self.distance_below_one_over_n_plus_one
            && self.b_in_base
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyExport {
    pub schema_version: u32,
    pub scheme_params: SchemeParams,
    pub n_max: usize,
    pub i_max: usize,
    pub dense_pairs: Vec<DensePairRecord>,
    pub approximants: Vec<ApproximantRecord>,
    pub enumeration: Vec<EnumerationRecord>,
    pub checks: FamilyChecks,
}

fn all_distinct<T: Ord + Clone>(items: &[T]) -> bool {
    let mut sorted = items.to_vec();
    sorted.sort();
    sorted.windows(2).all(|w| w[0] != w[1])
}

/// Dense pairs and enumeration for `n < n_max`, approximants for
/// `n < n_max`, `i < i_max`.
pub fn family_export(con: &Construction, n_max: usize, i_max: usize) -> FamilyExport {
    let pairs = con.dense_pairs(n_max);
    let dense_pairs: Vec<DensePairRecord> = pairs
        .iter()
        .map(|p| DensePairRecord {
            n: p.n,
            a: p.a.clone(),
            b: p.b.clone(),
        })
        .collect();
    let approximants: Vec<ApproximantRecord> = (0..n_max)
        .flat_map(|n| (0..i_max).map(move |i| (n, i)))
        .map(|(n, i)| {
            let ap = con.approximant(n, i);
            ApproximantRecord {
                n,
                i,
                point: ap.point,
                depth: ap.depth,
            }
        })
        .collect();
    let enumeration: Vec<EnumerationRecord> = (0..n_max)
        .map(|n| EnumerationRecord {
            n,
            word: con.base_word(n),
        })
        .collect();

    let a: Vec<CantorPoint> = pairs.iter().map(|p| p.a.clone()).collect();
    let b: Vec<CantorPoint> = pairs.iter().map(|p| p.b.clone()).collect();
    let ap: Vec<CantorPoint> = approximants.iter().map(|r| r.point.clone()).collect();
    let checks = FamilyChecks {
        distinct_a: all_distinct(&a),
        distinct_b: all_distinct(&b),
        distinct_approximants: all_distinct(&ap),
        approximants_avoid_dense: ap.iter().all(|p| !a.contains(p)),
        distance_below_one_over_n_plus_one: approximants.iter().all(|r| {
            r.point.distance(&a[r.n]) < BigRational::new(1.into(), (r.n as i64 + 1).into())
        }),
        b_in_base: enumeration.iter().all(|e| b[e.n].in_cylinder(&e.word)),
    };
    FamilyExport {
        schema_version: SCHEMA_VERSION,
        scheme_params: con.params(),
        n_max,
        i_max,
        dense_pairs,
        approximants,
        enumeration,
        checks,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionPayload {
    pub rect_union: RectUnion,
    pub image: ImagePiece,
    pub decomposition: Decomposition,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lc2Payload {
    pub rect_union: RectUnion,
    pub image: ImagePiece,
    pub certificate: Lc2Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", content = "payload", rename_all = "lowercase")]
pub enum Certificate {
    Witness(WitnessCertificate),
    Lc2(Lc2Payload),
    Decomposition(DecompositionPayload),
    Scattered(ScatteredReport),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub schema_version: u32,
    pub scheme_params: SchemeParams,
    #[serde(flatten)]
    pub body: Certificate,
}

impl CertificateFile {
    pub fn new(body: Certificate) -> Self {
        CertificateFile {
            schema_version: SCHEMA_VERSION,
            scheme_params: SchemeParams::default(),
            body,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    /// Parses a certificate and rejects files written for another scheme.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: CertificateFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "unsupported schema_version {}",
                file.schema_version
            )));
        }
        if file.scheme_params != SchemeParams::default() {
            return Err(Error::Parse("certificate was built with a different scheme".into()));
        }
        Ok(file)
    }
}
