use thiserror::Error;

/// Error type shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A surface `(g, n)` that does not satisfy `2g - 2 + n > 0`.
    #[error("unstable surface type (g = {g}, n = {n})")]
    Unstable { g: u32, n: u32 },

    /// Exponent sum does not match the dimension `3g - 3 + n`.
    #[error("dimension mismatch: |d| = {got} but 3g - 3 + n = {expected}")]
    DimensionMismatch { got: i64, expected: i64 },

    /// Input outside the defined domain of a combinatorial function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A complexity guard refused the computation. Guards are overridable
    /// where the CLI documents a flag for it.
    #[error("size guard exceeded: {0}")]
    Guard(String),

    /// A chart failed validation (row sums, zero column, ...).
    #[error("invalid chart: {0}")]
    InvalidChart(String),

    /// A scenario failed validation.
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    /// A polynomial substitution was missing a variable.
    #[error("no substitution given for variable `{0}`")]
    MissingSubstitution(String),

    /// Polynomial variables not contained in the integration domain.
    #[error("variable `{0}` does not name a coordinate of the domain")]
    VariableMismatch(String),

    /// Flip slice whose positive cone is not an orthant in lattice
    /// coordinates; such slices are outside the supported geometry.
    #[error("unsupported flip-slice geometry: {0}")]
    UnsupportedSlice(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
