use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the word-sized limit")]
    ModulusTooLarge(u64),
    #[error("unknown field {0:?} (expected \"Q\" or \"F<p>\")")]
    UnknownField(String),
    #[error("malformed scalar {0:?}")]
    BadScalar(String),
    #[error("denominator of {0:?} vanishes in the field")]
    DenominatorVanishes(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("scalar does not belong to the matrix field")]
    ForeignScalar,
    #[error("subquotient requested for B not contained in Z")]
    NotNested,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("duplicate generator id {0:?}")]
    DuplicateGenerator(String),
    #[error("unknown generator id {0:?}")]
    UnknownGenerator(String),
    #[error("differential entry {source_id:?} -> {target_id:?} does not raise degree by one")]
    DegreeJump { source_id: String, target_id: String },
    #[error("differential block at degree {degree} has the wrong shape")]
    BlockShape { degree: i64 },
    #[error("d^{next} after d^{degree} is nonzero", next = degree + 1)]
    NotDifferential { degree: i64 },
    #[error("complexes live over different fields")]
    FieldMismatch,
    #[error("map does not commute with the differentials in degree {degree}")]
    NotChainMap { degree: i64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecSeqError {
    #[error("F_0 is not the whole complex in degree {degree}")]
    NotExhaustive { degree: i64 },
    #[error("last filtration level is not zero in degree {degree}")]
    NotSeparated { degree: i64 },
    #[error("filtration is not decreasing at p = {p}, degree {degree}")]
    NotDecreasing { p: usize, degree: i64 },
    #[error("differential leaves F_{p} in degree {degree}")]
    NotCompatible { p: usize, degree: i64 },
    #[error("filtration level {p} in degree {degree} has the wrong ambient dimension")]
    LevelShape { p: usize, degree: i64 },
    #[error("generator {0:?} has no filtration block")]
    MissingBlock(String),
    #[error("differential lowers the filtration from {source_id:?} to {target_id:?}")]
    LowersFiltration { source_id: String, target_id: String },
    #[error("vector is not supported in a single block and degree: {0}")]
    Support(String),
    #[error("map does not preserve the filtration at p = {p}, degree {degree}")]
    FiltrationNotPreserved { p: usize, degree: i64 },
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalSystemError {
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown edge {0:?}")]
    UnknownEdge(String),
    #[error("duplicate id {0:?}")]
    DuplicateId(String),
    #[error("path is not composable at step {step}")]
    NotComposable { step: usize },
    #[error("relation {0} is not a closed loop")]
    OpenRelation(usize),
    #[error("transport on {0:?} is not an invertible matrix of the fiber rank")]
    BadTransport(String),
    #[error("transport around relation {word} is not the identity")]
    HomotopyViolated { word: String },
    #[error("extension does not restrict to the subsystem along {word}")]
    RestrictionMismatch { word: String },
    #[error("path {0} leaves the carrier of the subsystem")]
    OutsideCarrier(String),
    #[error("support of the local subsystem is not connected")]
    DisconnectedSupport,
    #[error("base graph is not connected")]
    DisconnectedBase,
    #[error("local subsystem has empty carrier")]
    EmptyCarrier,
    #[error("local systems live over different fields")]
    FieldMismatch,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorseError {
    #[error("unknown critical point or cell {0:?}")]
    UnknownPoint(String),
    #[error("duplicate id {0:?}")]
    DuplicateId(String),
    #[error("critical point or cell {0:?} has negative index")]
    NegativeIndex(String),
    #[error("cell {0:?} has no filtration level")]
    MissingLevel(String),
    #[error("trajectory {0:?} has sign other than +1/-1")]
    BadSign(String),
    #[error("transport word of {0:?} does not run between the right base points")]
    WrongEndpoints(String),
    #[error("{0:?} needs a transport word to be twisted")]
    MissingWord(String),
    #[error("squared differential is nonzero from {from:?} to {to:?}")]
    NotDifferential { from: String, to: String },
    #[error("untwisted incidence complex fails d^2 = 0 from {from:?} to {to:?}")]
    IncidenceNotDifferential { from: String, to: String },
    #[error("fiber transport on edge {0:?} is not a chain isomorphism of the fiber")]
    BadFiberAction(String),
    #[error("correction from {from:?} to {to:?} must raise the base index by at least 2")]
    BadCorrection { from: String, to: String },
    #[error("assembled differential squares to nonzero; lowest failing bidegree ({p}, {q})")]
    AssembledNotDifferential { p: i64, q: i64 },
    #[error("cohomology-level transport around relation {word} is not the identity")]
    CohomologyMonodromy { word: String },
    #[error("E_2 table disagrees with page 2 at ({p}, {q}): {table} vs {page}")]
    E2Mismatch {
        p: i64,
        q: i64,
        table: usize,
        page: usize,
    },
    #[error("total cohomology disagrees: {left:?} vs {right:?}")]
    TotalCohomologyDisagrees {
        left: Vec<(i64, usize)>,
        right: Vec<(i64, usize)>,
    },
    #[error("paths are not composable: {0}")]
    NotComposable(String),
    #[error("path {gamma} is not declared homotopic to the composite")]
    NotHomotopic { gamma: String },
    #[error("action values must strictly decrease along the differential ({source_id:?} -> {target_id:?})")]
    ActionNotDecreasing { source_id: String, target_id: String },
    #[error("window [{from_lo}, {from_hi}) cannot map to [{to_lo}, {to_hi})")]
    BadWindows {
        from_lo: i64,
        from_hi: i64,
        to_lo: i64,
        to_hi: i64,
    },
    #[error(transparent)]
    LocalSystem(#[from] LocalSystemError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    SpecSeq(#[from] SpecSeqError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Any failure raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    SpecSeq(#[from] SpecSeqError),
    #[error(transparent)]
    LocalSystem(#[from] LocalSystemError),
    #[error(transparent)]
    Morse(#[from] MorseError),
}
