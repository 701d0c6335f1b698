//! Images of open sets under the projection `π|X`, their decompositions,
//! and the certificates showing `π|X` is open-resolvable but not
//! piecewise open.

mod decompose;
mod image;
pub mod oracle;
mod piecewise;
mod rect;
mod resolvable;
mod scattered;
mod stabilize;
mod verify;
mod witness;

pub use decompose::{certificate_points, decompose, lc2_certificate, Decomposition, DiscretePoint, Lc2Certificate};
pub use image::{
    covering_bases, project_rect, project_rect_in, project_union, project_union_in, stable_index,
    ImagePiece, ImageSet, TailSet,
};
pub use piecewise::{piecewise_open_check, OpennessViolation, PiecewiseReport};
pub use rect::{Rect, RectUnion};
pub use resolvable::{resolvable_probe, Closure, ResolvabilityProbe};
pub use scattered::{scattered_check, Isolation, ScatteredReport, MAX_FAMILY};
pub use stabilize::{stabilization_probe, StabilizationReport, StabilizationStep};
pub use verify::{verify_witness, Clause, Verdict};
pub use witness::{falsify_restriction, MissingSample, PointPair, WitnessCertificate, DEFAULT_BUDGET};
