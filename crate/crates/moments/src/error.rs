use std::path::PathBuf;

use zeta_moments_core::Error as CoreError;

pub type Result<T, E = AppError> = std::result::Result<T, E>;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const DATA: i32 = 2;
    pub const PRECISION: i32 = 3;
    pub const USAGE: i32 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {reason}")]
    Format { path: PathBuf, reason: String },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Check(String),
}

impl AppError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        AppError::Io { path: path.into(), source }
    }

    /// With the location of the offending file, for data errors.
    pub fn in_file(self, path: impl Into<PathBuf>) -> Self {
        match self {
            AppError::Core(e @ CoreError::Data { .. }) => AppError::Format {
                path: path.into(),
                reason: e.to_string(),
            },
            other => other,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Core(e) => core_code(e),
            AppError::Io { .. } | AppError::Format { .. } => exit::DATA,
            AppError::Usage(_) => exit::USAGE,
            AppError::Check(_) => exit::PRECISION,
        }
    }
}

fn core_code(e: &CoreError) -> i32 {
    match e {
        CoreError::Data { .. } => exit::DATA,
        CoreError::Precision { .. } | CoreError::Refinement { .. } => exit::PRECISION,
        CoreError::AtOrdinate { source, .. } => core_code(source),
        CoreError::InvalidArgument(_)
        | CoreError::OutOfRange { .. }
        | CoreError::Unsupported(_)
        | CoreError::DivisionByZero(_)
        | CoreError::Pole => exit::USAGE,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes() {
        assert_eq!(
            AppError::from(CoreError::Data {
                line: 3,
                reason: "x".into()
            })
            .exit_code(),
            2
        );
        assert_eq!(
            AppError::from(CoreError::Precision {
                requested_bits: 128,
                achieved_bits: 60
            })
            .exit_code(),
            3
        );
        let nested = CoreError::AtOrdinate {
            gamma: "14.1".into(),
            source: Box::new(CoreError::Precision {
                requested_bits: 1,
                achieved_bits: 0,
            }),
        };
        assert_eq!(AppError::from(nested).exit_code(), 3);
        assert_eq!(AppError::Usage("bad".into()).exit_code(), 4);
        assert_eq!(AppError::io("x", std::io::Error::other("gone")).exit_code(), 2);
        let e = AppError::from(CoreError::Data {
            line: 7,
            reason: "dup".into(),
        })
        .in_file("z.txt");
        assert_eq!(e.to_string(), "z.txt: data error at line 7: dup");
    }
}
