//! Exact computation of intersection homology for finite filtered
//! simplicial complexes: traditional, super- and loose perversities,
//! stratified (`G0`) and constant (`Full`) coefficient modes, constant or
//! local coefficient systems, over ℤ, ℚ and prime fields.
//!
//! Every value is immutable after construction and every computation is a
//! pure function of its inputs, so complexes, coefficient systems and
//! results can be shared freely across threads.

pub mod builtins;
pub mod chains;
pub mod cli;
pub mod coefficients;
pub mod complex;
pub mod error;
pub mod homology;
pub mod json;
pub mod linalg;
pub mod localcalc;
pub mod perversity;

pub use coefficients::{CoefficientSystem, Mode, RingSpec};
pub use complex::{FilteredComplex, Graph1, Simplex};
pub use error::{Error, Result};
pub use homology::{
    intersection_homology, les_check, relative_intersection_homology, HomologyResult,
};
pub use perversity::{Perversity, PerversityFamily, PerversityKind};
