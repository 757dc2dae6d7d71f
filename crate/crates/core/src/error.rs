use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(
        "triangle {triangle} references vertex {index}, but the mesh has {vertex_count} vertices"
    )]
    TriangleIndexOutOfRange {
        triangle: usize,
        index: usize,
        vertex_count: usize,
    },

    #[error("triangle {triangle} is degenerate (repeated vertex index)")]
    DegenerateTriangle { triangle: usize },

    #[error("proxy mesh subdivisions must be in 0..=4, got {0}")]
    SubdivisionsOutOfRange(u32),

    #[error("invalid level sizes: {0}")]
    InvalidLevels(String),

    #[error("level size {level} exceeds vertex count {vertex_count}")]
    LevelExceedsVertexCount { level: usize, vertex_count: usize },

    #[error("length mismatch for {what}: expected {expected}, got {actual}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no samples")]
    NoSamples,

    #[error("sample {index} has {actual} vertices, expected {expected}")]
    MixedVertexCount {
        index: usize,
        expected: usize,
        actual: usize,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("score {score} lies outside the bin range [{low}, {high}]")]
    ScoreOutOfRange { score: f64, low: f64, high: f64 },

    #[error("all sampling bins are empty")]
    AllBinsEmpty,

    #[error("training diverged at step {step}: loss is not finite")]
    Diverged { step: usize },

    #[error("invalid model file: {0}")]
    InvalidModel(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(
        path: impl std::fmt::Display,
        line: usize,
        message: impl Into<String>,
    ) -> Self {
        Error::Parse {
            path: path.to_string(),
            line,
            message: message.into(),
        }
    }
}

pub(crate) fn check_len(what: &'static str, expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::LengthMismatch {
            what,
            expected,
            actual,
        });
    }
    Ok(())
}
