//! Points, cylinders and clopen sets of the Cantor set `C ⊂ [0, 1]`.

mod clopen;
mod point;
mod word;

pub use clopen::{cantor_stage, ClopenSet, Cylinder, RationalInterval};
pub use point::CantorPoint;
pub use word::{flip, Word};
