use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension must be 2 or 3, got {0}")]
    InvalidDimension(u32),
    #[error("maximum level {level} out of range 1..={max} for this dimension")]
    MaxLevelOutOfRange { level: u32, max: u32 },
    #[error("level {level} exceeds the maximum level {max}")]
    LevelOutOfRange { level: u32, max: u32 },
    #[error("simplex type {0} out of range for this dimension")]
    TypeOutOfRange(u8),
    #[error("child index {0} out of range for this dimension")]
    ChildOutOfRange(u8),
    #[error("cube-id {0} out of range for this dimension")]
    CubeIdOutOfRange(u8),
    #[error("face {0} out of range for this dimension")]
    FaceOutOfRange(u8),
    #[error("cube-id level {query} must satisfy 1 <= q <= {level}")]
    CubeIdLevel { query: u32, level: u32 },
    #[error("the root simplex has no parent")]
    RootHasNoParent,
    #[error("cannot refine beyond the maximum level {0}")]
    LevelOverflow(u32),
    #[error("linear index {index} out of range for level {level}")]
    LinearIndexOutOfRange { index: u64, level: u32 },
    #[error("element lies outside the root simplex")]
    OutsideRoot,
    #[error("operation is only defined in three dimensions")]
    NotThreeDimensional,
    #[error("rank {rank} out of range for {ranks} ranks")]
    RankOutOfRange { rank: u32, ranks: u32 },
    #[error("a coarse mesh needs at least one tree")]
    EmptyCoarseMesh,
    #[error("malformed input at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("expected {expected} bytes, got {got}")]
    ByteLength { expected: usize, got: usize },
    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
