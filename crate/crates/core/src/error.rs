use thiserror::Error;

/// Errors produced anywhere in the analysis pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("conductor must be at least 1")]
    ZeroConductor,
    #[error("conductor {sub} does not divide {sup}")]
    NonDivisibleConductors { sub: u64, sup: u64 },
    #[error("element does not lie in the requested subfield Q(zeta_{target})")]
    NotInSubfield { target: u64 },
    #[error("division by zero in Q(zeta_{conductor})")]
    DivisionByZero { conductor: u64 },
    #[error("matrix dimensions {0}x{1} and {2}x{3} are incompatible")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix order exceeds cap {cap}")]
    OrderExceedsCap { cap: u64 },

    #[error("group enumeration exceeded cap {cap}")]
    CapExceeded { cap: usize },
    #[error("generator {index} is not invertible")]
    NonInvertibleGenerator { index: usize },
    #[error("group of order {order} is not a {p}-group")]
    NotAPGroup { order: usize, p: u64 },
    #[error("subgroup is not normal (witness conjugate of element {element} by element {by})")]
    NotNormal { element: usize, by: usize },

    #[error("character average over subgroup is not a nonnegative integer: {value}")]
    NonIntegerAverage { value: String },
    #[error("representation is not faithful (element {element} acts trivially)")]
    NotFaithful { element: usize },
    #[error("fixity check {context}: character route gave {character_route}, kernel route gave {kernel_route}")]
    FixedDimMismatch {
        context: String,
        character_route: usize,
        kernel_route: usize,
    },
    #[error("crosscheck precondition violated: fixity {fixity} >= p {p}")]
    PreconditionViolation { fixity: i64, p: u64 },

    #[error("family parameter out of range: {0}")]
    FamilyParameter(String),
    #[error("generator matrices violate relation {index}: {relation}")]
    RelationFailure { index: usize, relation: String },
    #[error("character search exhausted after {tried} candidates")]
    SearchExhausted { tried: usize },
    #[error("character values do not define a homomorphism on the subgroup")]
    NonHomomorphism,
    #[error("subgroup of order {order} has no subgroup of order {p}")]
    NoCentralOrderP { order: usize, p: u64 },
    #[error("free-action certificate failed at element {element}")]
    CertificateFailure { element: usize },
    #[error("word references generator {index} but only {count} generators exist")]
    MalformedWord { index: usize, count: usize },

    #[error("mapping cone of a degree-zero map is rejected")]
    DegreeZero,
    #[error("graded group has infinite homology in degree {degree}")]
    InfiniteHomology { degree: usize },
    #[error("{numerator}/{denominator} is not a unit modulo {modulus}")]
    NotAUnit {
        numerator: String,
        denominator: String,
        modulus: u64,
    },
    #[error("torsion Euler characteristic cross-check failed at stage {stage}: {lhs} vs {rhs}")]
    ChiTorMismatch {
        stage: u32,
        lhs: String,
        rhs: String,
    },
    #[error("cross-check mismatch in {context}: {lhs} vs {rhs}")]
    RouteMismatch {
        context: String,
        lhs: String,
        rhs: String,
    },
    #[error("isotropy tower invariant violated: {0:?}")]
    TowerInvariant(Vec<usize>),
    #[error("stage index out of range: n={n}, k={k}")]
    StageRange { n: u32, k: u32 },

    #[error("schema error: {0}")]
    Schema(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
