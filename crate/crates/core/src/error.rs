use std::path::PathBuf;

/// Errors raised across the toolkit.
///
/// The CLI maps every variant to exit status 1; usage errors are handled by
/// the argument parser before any of these can occur.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid UTF-8 in {source_name} at byte offset {offset}")]
    Decode { source_name: String, offset: usize },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("{file}: row {row}, column `{column}`: {message}")]
    Validation {
        file: String,
        row: usize,
        column: String,
        message: String,
    },

    #[error("data error: {0}")]
    Data(String),

    #[error("agreement statistics need exactly 2 coders, found {0}")]
    UnsupportedRoster(usize),

    #[error("degenerate marginals for `{0}`: every assignment falls in one category, so 1 - P(E) = 0")]
    DegenerateMarginals(String),

    #[error("chi-square undefined: marginal `{0}` is zero")]
    UndefinedStatistic(&'static str),

    #[error("tree parse error at node path {path}: {message}")]
    TreeParse { path: String, message: String },

    #[error("{}: {source}", file.display())]
    InFile {
        file: PathBuf,
        #[source]
        source: Box<Error>,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{file}: {source}")]
    Csv {
        file: String,
        #[source]
        source: csv::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn csv(file: impl Into<String>, source: csv::Error) -> Self {
        Error::Csv {
            file: file.into(),
            source,
        }
    }
}
