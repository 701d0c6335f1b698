use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::decompose::decompose;
use super::image::project_union;
use super::rect::{Rect, RectUnion};
use crate::cantor::{CantorPoint, Word};
use crate::construction::Construction;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizationStep {
    pub prefix_len: usize,
    /// Depth-`d` trace of the open part `S`.
    pub trace: BTreeSet<Word>,
    pub discrete: Vec<CantorPoint>,
    /// Points of the previous `D` that now lie in `S`.
    pub migrated: Vec<CantorPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizationReport {
    pub depth: usize,
    pub steps: Vec<StabilizationStep>,
}

impl StabilizationReport {
    pub fn final_trace(&self) -> BTreeSet<Word> {
        self.steps.last().map(|s| s.trace.clone()).unwrap_or_default()
    }
}

/// Follows `π(U_k ∩ X)` for the unions `U_k` of the first `k ≤ max_len`
/// rectangles of `stream`. Images of growing open sets grow, so the
/// `S`-trace must be monotone and every `D` point must survive.
pub fn stabilization_probe(
    con: &Construction,
    stream: &[Rect],
    depth: usize,
    max_len: usize,
) -> Result<StabilizationReport> {
    let mut steps: Vec<StabilizationStep> = Vec::new();
    let mut union = RectUnion::empty();
    for (k, rect) in stream.iter().take(max_len).enumerate() {
        union.push(rect.clone());
        let img = project_union(con, &union);
        let dec = decompose(con, &img)?;
        let trace = dec.open.trace(con, depth);
        let discrete: Vec<CantorPoint> = dec.discrete.iter().map(|d| d.point.clone()).collect();
        let mut migrated = Vec::new();
        if let Some(prev) = steps.last() {
            if let Some(w) = prev.trace.difference(&trace).next() {
                return Err(Error::NonMonotone {
                    step: k + 1,
                    detail: format!("cylinder {w} left the S-trace"),
                });
            }
            for d in &prev.discrete {
                if dec.open.contains(con, d) {
                    migrated.push(d.clone());
                } else if !discrete.contains(d) {
                    return Err(Error::NonMonotone {
                        step: k + 1,
                        detail: format!("{d} left the image"),
                    });
                }
            }
        }
        steps.push(StabilizationStep {
            prefix_len: k + 1,
            trace,
            discrete,
            migrated,
        });
    }
    Ok(StabilizationReport { depth, steps })
}
