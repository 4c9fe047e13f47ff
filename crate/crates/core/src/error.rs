use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("even dimension required (got d = {0})")]
    OddDimension(usize),

    #[error("lattice too coarse: N = {0}, need N >= 2")]
    LatticeTooCoarse(usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid flux matrix: {0}")]
    InvalidFlux(String),

    #[error("matrix is not Hermitian (deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("matrix is not unitary (deviation {0:.3e})")]
    NotUnitary(f64),

    #[error("invariant undefined for singular A ({0} eigenvalues within tolerance of zero)")]
    Singular(usize),

    #[error("singular operator: shrink a or change m ({zero_modes} near-zero eigenvalues at mu = {mu})")]
    SingularOperator { zero_modes: usize, mu: f64 },

    #[error("invariant undefined at this (tuple, m); tuple may be too far from commuting")]
    AcmSingular,

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("oracle requires translation invariance (field is not trivial)")]
    NotTranslationInvariant,

    #[error("mass lies on a window boundary (mu = {0}); the symbol map is undefined there")]
    WindowBoundary(f64),

    #[error("could not certify a regular value after {0} perturbations")]
    DegreeNotCertified(usize),

    #[error("symbol degree differs between resolutions ({coarse} vs {fine})")]
    DegreeUnstable { coarse: i64, fine: i64 },

    #[error("iterative eigensolver did not converge in {0} iterations")]
    NoConvergence(usize),

    #[error("malformed {format} file: {msg}")]
    Format { format: &'static str, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
