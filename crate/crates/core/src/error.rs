use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Every failure the library can report.
///
/// Variants fall in two groups: domain errors caused by the input (bad graph,
/// `n` out of range, not enough floating precision), and
/// [`Error::InvariantViolation`] / [`Error::StructureViolation`], which mean a
/// mathematical identity the computation relies on did not hold.
#[derive(Debug, Clone, PartialEq)]
#[non_exhaustive]
pub enum Error {
    /// The base graph has no vertices.
    EmptyBase,
    /// A row of the multiplicity matrix has the wrong length.
    NotSquare {
        rows: usize,
        row: usize,
        len: usize,
    },
    LoopInBase {
        vertex: usize,
    },
    AsymmetricBase {
        i: usize,
        j: usize,
    },
    DisconnectedBase,
    FiberCountMismatch {
        vertices: usize,
        fibers: usize,
    },
    NonIncreasingJumps {
        jumps: String,
    },
    ZeroJump,
    /// `n` must exceed twice the largest jump for the graph to exist.
    JumpTooLargeForN {
        n: u64,
        max_jump: u32,
    },
    /// `n` must be at least one.
    InvalidN,
    UnknownFamily {
        name: String,
    },
    /// A parameter is outside the range its position accepts.
    ValueOutOfRange {
        detail: String,
    },
    BadArity {
        family: &'static str,
        expected: &'static str,
        found: usize,
    },
    ZeroPolynomial,
    NonIntegerCoefficient {
        degree: usize,
    },
    DegreeBoundExceeded {
        bound: usize,
    },
    ConstantPolynomial,
    ConvergenceFailure {
        iterations: usize,
    },
    UnitCircleRoot {
        re: f64,
        im: f64,
    },
    QuadratureNonconvergence {
        nodes: usize,
    },
    PrecisionInsufficient {
        detail: String,
    },
    FactorizationTimeout {
        remaining: String,
    },
    /// An internal identity failed; indicates a bug rather than bad input.
    InvariantViolation {
        detail: String,
    },
    /// `f(n) / (p f(H))` was not an integer square.
    StructureViolation {
        n: u64,
        detail: String,
    },
}

impl Error {
    /// True for failures that falsify a proven identity rather than reject input.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(
            self,
            Error::InvariantViolation { .. } | Error::StructureViolation { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyBase => write!(f, "base graph has no vertices"),
            Error::NotSquare { rows, row, len } => {
                write!(f, "matrix row {row} has {len} entries, expected {rows}")
            }
            Error::LoopInBase { vertex } => {
                write!(f, "base graph has a loop at vertex {}", vertex + 1)
            }
            Error::AsymmetricBase { i, j } => write!(
                f,
                "multiplicity matrix is not symmetric at ({}, {})",
                i + 1,
                j + 1
            ),
            Error::DisconnectedBase => write!(f, "base graph is not connected"),
            Error::FiberCountMismatch { vertices, fibers } => write!(
                f,
                "base graph has {vertices} vertices but {fibers} fibers were given"
            ),
            Error::NonIncreasingJumps { jumps } => {
                write!(f, "jumps must be strictly increasing, got {jumps}")
            }
            Error::ZeroJump => write!(f, "jumps must be positive"),
            Error::JumpTooLargeForN { n, max_jump } => write!(
                f,
                "n = {n} is too small for jump {max_jump} (need n > {})",
                2 * u64::from(*max_jump)
            ),
            Error::InvalidN => write!(f, "n must be at least 1"),
            Error::UnknownFamily { name } => write!(f, "unknown family `{name}`"),
            Error::ValueOutOfRange { detail } => write!(f, "value out of range: {detail}"),
            Error::BadArity {
                family,
                expected,
                found,
            } => {
                write!(f, "{family} expects {expected}, got {found}")
            }
            Error::ZeroPolynomial => write!(f, "zero polynomial"),
            Error::NonIntegerCoefficient { degree } => write!(
                f,
                "interpolated determinant has a non-integer coefficient at degree {degree}"
            ),
            Error::DegreeBoundExceeded { bound } => {
                write!(f, "determinant degree exceeds the bound {bound}")
            }
            Error::ConstantPolynomial => write!(f, "polynomial is constant and has no roots"),
            Error::ConvergenceFailure { iterations } => {
                write!(
                    f,
                    "root iteration did not converge after {iterations} steps"
                )
            }
            Error::UnitCircleRoot { re, im } => write!(
                f,
                "characteristic polynomial has a root on the unit circle near {re} + {im}i"
            ),
            Error::QuadratureNonconvergence { nodes } => {
                write!(f, "quadrature did not converge with {nodes} nodes")
            }
            Error::PrecisionInsufficient { detail } => {
                write!(f, "floating precision insufficient: {detail}")
            }
            Error::FactorizationTimeout { remaining } => {
                write!(f, "factorization budget exhausted on cofactor {remaining}")
            }
            Error::InvariantViolation { detail } => write!(f, "invariant violated: {detail}"),
            Error::StructureViolation { n, detail } => {
                write!(f, "square structure fails at n = {n}: {detail}")
            }
        }
    }
}

impl core::error::Error for Error {}
