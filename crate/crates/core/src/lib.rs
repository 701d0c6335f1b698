//! Exact computations on the middle-thirds Cantor set and a certified
//! counterexample about the first-coordinate projection.
//!
//! The crate is organised in layers:
//!
//! - [`cantor`]: eventually periodic points, cylinders, the clopen algebra
//!   and the exact rational metric inherited from `[0, 1]`.
//! - [`construction`]: a deterministic dense family `(a_n, b_n)`, the
//!   approximating sequences `a_{n,i} -> a_n`, an enumeration of the cylinder
//!   base with `b_n ∈ B_n`, and decidable membership in the space
//!   `X = C×C \ ⋃ {a_{n,i}} × B_n`.
//! - [`lab`]: exact images `π(U ∩ X)` of finitely presented open sets, their
//!   open-plus-discrete and locally-closed decompositions, resolvability
//!   probes, non-openness witnesses with an independent verifier, and
//!   checkers for scattered and piecewise-open covers.
//! - [`cert`]: stable JSON documents for the family export and certificates.
//! - [`suite`]: the invariant suites behind `cantor check`.

pub mod cantor;
pub mod cert;
pub mod construction;
mod error;
pub mod lab;
pub mod suite;

pub use cantor::{cantor_stage, CantorPoint, ClopenSet, Cylinder, RationalInterval, Word};
pub use construction::{Approximant, Construction, DensePair, Fiber, Space};
pub use error::{Error, Result};
