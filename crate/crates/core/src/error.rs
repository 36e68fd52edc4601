use thiserror::Error;

use crate::complex::Simplex;

/// Errors surfaced by constructors, validators and the computation pipeline.
///
/// `InternalInvariant` is reserved for conditions that indicate a bug or a
/// corrupted coefficient system (`∂̃² ≠ 0`, unsolvable exact systems); all
/// other variants are rejections of user input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input: a non-empty complex is required")]
    EmptyComplex,

    #[error("simplex {0} is not a face of the complex")]
    NotInComplex(Simplex),

    #[error("vertex {0} is not a vertex of the complex")]
    VertexNotInComplex(u32),

    #[error("skeleton level {level} exceeds the formal dimension {formal_dim}")]
    SkeletonLevelOutOfRange { level: usize, formal_dim: usize },

    #[error("skeleton assignment violates face monotonicity: skel({face}) = {face_level} > skel({simplex}) = {level}")]
    MonotonicityViolation {
        face: Simplex,
        face_level: usize,
        simplex: Simplex,
        level: usize,
    },

    #[error("complex is not closed under faces: {0} is missing")]
    NotClosed(Simplex),

    #[error("a simplicial cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),

    #[error("{0} is not a subcomplex of the ambient complex")]
    NotASubcomplex(Simplex),

    #[error("perversity must be defined for k = 1..{needed}, got {got} values")]
    PerversityTooShort { needed: usize, got: usize },

    #[error("perversity index n must be at least 1")]
    PerversityEmptyRange,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("stalk rank must be at least 1")]
    ZeroRank,

    #[error("transport on ({simplex}, {facet}) is not invertible over {ring}")]
    NonInvertibleTransport {
        simplex: Simplex,
        facet: Simplex,
        ring: String,
    },

    #[error("transport incidence ({simplex}, {facet}) is not a regular codimension-1 incidence")]
    BadTransportIncidence { simplex: Simplex, facet: Simplex },

    #[error("transport matrix on ({simplex}, {facet}) is not {rank}x{rank}")]
    BadTransportShape {
        simplex: Simplex,
        facet: Simplex,
        rank: usize,
    },

    #[error("cocycle violation at {simplex} over codim-2 face {face} via facets {facet_a} and {facet_b}")]
    CocycleViolation {
        simplex: Simplex,
        face: Simplex,
        facet_a: Simplex,
        facet_b: Simplex,
    },

    #[error("full mode only supports constant coefficients (identity transports)")]
    FullModeLocalSystem,

    #[error("unknown builtin complex {0:?}")]
    UnknownBuiltin(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violation: {0}")]
    InternalInvariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code class used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::UnknownBuiltin(_) => 2,
            Error::InternalInvariant(_) => 4,
            _ => 3,
        }
    }
}
