use thiserror::Error;

/// Errors surfaced by the exact-algebra kernels.
///
/// Most operations in this crate are total on their documented domains; the
/// variants below mark the places where a caller can actually violate a
/// precondition (or where an internal invariant would be broken by corrupted
/// input).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    /// Exact polynomial division left a nonzero remainder. For the divided
    /// differences this signals a broken (anti)symmetry assumption upstream.
    #[error("exact division left a nonzero remainder")]
    NonzeroRemainder,

    /// A Laurent-series coefficient outside the exact window was requested.
    /// The caller must recompute with a wider truncation budget.
    #[error("series window [{lo}, {hi}] does not cover exponent {needed}")]
    WindowTooNarrow { needed: i64, lo: i64, hi: i64 },

    /// Input expected to be symmetric is not invariant under an adjacent
    /// transposition.
    #[error("polynomial is not symmetric")]
    NotSymmetric,

    /// Input (or an asserted output) fails the antisymmetry check.
    #[error("polynomial is not antisymmetric")]
    NotAntisymmetric,

    /// A wedge cut was requested for a partition longer than the cut size.
    #[error("partition has {len} parts, more than the cut size {cut}")]
    PartitionTooLong { len: usize, cut: usize },

    /// Literal input could not be parsed.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, CoreError>;
