use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorusError {
    #[error("skew forms differ (ranks {left} and {right})")]
    FormMismatch { left: usize, right: usize },
    #[error("rank {0} exceeds the supported maximum of 64")]
    RankTooLarge(usize),
    #[error("form is not skew-symmetric at ({i}, {j})")]
    NotSkewSymmetric { i: usize, j: usize },
    #[error("exponent vector has length {got}, expected {expected}")]
    ExponentLength { expected: usize, got: usize },
    #[error("element is not an invertible monomial")]
    NotInvertible,
    #[error("right division is not exact")]
    NotDivisible,
    #[error("division by zero element")]
    DivisionByZero,
    #[error("malformed torus element: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeedError {
    #[error(transparent)]
    Torus(#[from] TorusError),
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("mutable block is not skew-symmetric at ({i}, {j})")]
    NotSkewSymmetric { i: usize, j: usize },
    #[error("index {index} out of range (mutable count {mutable})")]
    IndexOutOfRange { index: usize, mutable: usize },
    #[error("index {0} is frozen")]
    Frozen(usize),
    #[error("seed is not compatible: B^T Lambda is not (d I | 0)")]
    Incompatible,
    #[error("Lambda mutation depends on the sign choice")]
    SignDependent,
    #[error("frozen variable {0} has negative exponent but is not an invertible monomial")]
    FrozenNotInvertible(usize),
    #[error("negative exponent requested at mutable vertex {0}")]
    NegativeMutableExponent(usize),
    #[error("exchange matrix has rank {rank} < {mutable} columns")]
    RankDeficient { rank: usize, mutable: usize },
    #[error("quiver needs n >= 2, got {0}")]
    QuiverRank(usize),
    #[error("integer overflow in linear algebra")]
    Overflow,
    #[error("seed file: {0}")]
    Format(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error("quiver is not acyclic")]
    Cyclic,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoulombError {
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Torus(#[from] TorusError),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error("no loop-shift exponent is consistent with the relations")]
    NoConsistentShift,
    #[error("loop-shift exponent is ambiguous: candidates {0:?} (in units of v)")]
    AmbiguousShift(Vec<i64>),
    #[error("no consistent convention for the rank-one seed")]
    NoConsistentConvention,
    #[error("registry inconsistency at {label}: {reason}")]
    Registry { label: String, reason: String },
    #[error("labels missing from registry: {0:?}")]
    Coverage(Vec<String>),
    #[error("cluster {0} not found within the explored depth")]
    Depth(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharError {
    #[error("truncation unsafe: {0}")]
    TruncationUnsafe(String),
    #[error("generator has cohomological degree {0}; expected 0 or -1")]
    Degree(i64),
    #[error("bad window: {0}")]
    Window(String),
    #[error("no monomial twist solves the identity; residual {0}")]
    NoTwist(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairsError {
    #[error("length mismatch: lambda has {0} entries, mu has {1}")]
    LengthMismatch(usize, usize),
    #[error("box too large for brute force ({0} configurations)")]
    SizeGuard(u128),
    #[error("empty box: lo {lo} > hi {hi}")]
    EmptyBox { lo: i64, hi: i64 },
}
