use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("empty table")]
    Empty,
    #[error("row {row} has {len} entries, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("{names} names given for a table of order {order}")]
    NamesMismatch { names: usize, order: usize },
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),
    #[error("entry {value} at row {row}, column {col} is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("table is not a Latin square: {line} {index} repeats an element")]
    NotLatinSquare { line: &'static str, index: usize },
    #[error("table has no two-sided identity")]
    NoIdentity,
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("mask is not a subgroup")]
    NotASubgroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("map has length {len}, group has order {order}")]
    WrongLength { len: usize, order: usize },
    #[error("not an anti-homomorphism: ({g}{h})* != {h}* {g}*")]
    NotAntiHomomorphism { g: String, h: String },
    #[error("not of order two: ({0}*)* != {0}")]
    NotInvolutive(String),
    #[error("sign map is not a homomorphism at ({g}, {h})")]
    NotHomomorphism { g: String, h: String },
    #[error("involution and orientation live on different groups")]
    GroupMismatch,
    #[error("incompatible: {witness} * {witness}^* is outside the kernel")]
    Incompatible { witness: String },
    #[error("group is not SLC-shaped: {0}")]
    NotSlcShaped(String),
    #[error("enumeration refused: order {order} exceeds bound {bound}")]
    BoundExceeded { order: usize, bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not an odd prime")]
    InvalidModulus(u64),
    #[error("operands belong to different groups")]
    GroupMismatch,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("bracket needs at least two elements, got {0}")]
    TooFewElements(usize),
    #[error("standard polynomial of degree {expected} given {got} arguments")]
    ArityMismatch { expected: usize, got: usize },
    #[error("standard polynomial degree {0} exceeds the supported maximum of 6")]
    DegreeTooLarge(usize),
    #[error("element {0:?} not in group")]
    UnknownElement(String),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("not applicable: {0}")]
    NotApplicable(&'static str),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{context}: parse error at line {line}, column {column}: {message}")]
    Parse { context: String, line: usize, column: usize, message: String },
    #[error("{context}: field `{field}`: {message}")]
    Schema { context: String, field: &'static str, message: String },
    #[error("{context}: {source}")]
    Validation { context: String, source: GroupError },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
