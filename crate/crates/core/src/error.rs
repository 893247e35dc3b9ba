use thiserror::Error;

/// Unified error type for the solver.
///
/// Overflow during time stepping is *not* represented here: a solution that
/// leaves the finite range is a reported result (a stop reason), not a
/// failure of the library. `NonFinite` is reserved for operations whose
/// input is already unusable (e.g. transforming a field that contains NaN).
#[derive(Debug, Error)]
pub enum KpError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("shape mismatch: expected {expected:?}, got {got:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        got: (usize, usize),
    },

    #[error("non-finite values encountered in {0}")]
    NonFinite(String),

    #[error("relative mass change is undefined: reference mass is zero")]
    UndefinedDelta,

    #[error("lump fit requires a positive peak height, got {0}")]
    FitHeight(f64),

    #[error(
        "estimated working set {needed_mib} MiB exceeds the memory budget {budget_mib} MiB; \
         raise `memory_budget_mb` in [output] (or pass --mem-budget-mb) to run this grid"
    )]
    MemoryBudget { needed_mib: u64, budget_mib: u64 },

    #[error("snapshot format error: {0}")]
    Format(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, KpError>;

impl KpError {
    pub fn config(msg: impl Into<String>) -> Self {
        KpError::Config(msg.into())
    }
}
