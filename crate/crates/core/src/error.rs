use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("could not parse scalar {0:?}")]
    ParseScalar(String),

    #[error("malformed input: {0}")]
    Input(String),

    #[error("duplicate abscissa at positions {0} and {1}")]
    DuplicateAbscissa(usize, usize),

    #[error("matrix has full column rank; no nontrivial nullspace")]
    FullRank,

    #[error("need ≥ {need} samples, got {got}")]
    TooFewSamples { need: usize, got: usize },

    #[error("grid values at positions {0} and {1} coincide")]
    Degenerate(usize, usize),

    #[error("samples do not lie on a symmetric conic (worst residual {residual:e})")]
    NotConic { residual: f64 },

    #[error("samples do not lie on any symmetric bi-quadratic curve")]
    NotBiquadratic,

    #[error("modulus q for xi = {xi} is not representable ({reason})")]
    UnrepresentableModulus { xi: String, reason: &'static str },

    #[error("invalid grid parameters: {0}")]
    InvalidGrid(String),

    #[error("seed point is not on the curve (residual {0})")]
    NotOnCurve(String),

    #[error("curve step degenerates at step {step}: leading coefficient A2(z) vanishes")]
    StepDegenerate { step: usize },

    #[error("walk repeats a value at step {step}")]
    DistinctnessViolated { step: usize },

    #[error("invalid seed: {0}")]
    InvalidSeed(String),

    #[error("spectrum degenerate: lambda_{n} = lambda_{m}")]
    SpectrumDegenerate { n: usize, m: usize },

    #[error("R_{n} lost its leading coefficient")]
    DegreeCollapse { n: usize },

    #[error("defining equations are dependent (pi6 = 0); the ladder is proportional and the operator is reducible")]
    IrreducibilityViolated,

    #[error("degenerate window: the two neighbours coincide")]
    DegenerateWindow,

    #[error("three-point window at s = {s} is degenerate")]
    WindowDegenerate { s: i64 },

    #[error("need {need} admissible nodes in the window, found {got}")]
    WindowTooSmall { need: usize, got: usize },

    #[error("operator image of degree {n} is not a polynomial of degree {n} (residual {residual})")]
    NotPolynomial { n: usize, residual: String },

    #[error("operator matrix column {column} is not upper triangular")]
    NotTriangular { column: usize },

    #[error("operator matrix diagonal entry {k} disagrees with lambda_{k}")]
    DiagonalMismatch { k: usize },

    #[error("zero factor in tridiagonal data at index {index}")]
    ZeroFactor { index: usize },

    #[error("value is not an eigenvalue: closing residual {residual}")]
    NotEigenvalue { residual: String },

    #[error("spectrum could not be certified: {0}")]
    UncertifiedSpectrum(String),

    #[error("bilinear norm h_{n} vanishes")]
    NullNorm { n: usize },

    #[error("inconsistent Jacobi data: {0}")]
    Shape(String),
}
