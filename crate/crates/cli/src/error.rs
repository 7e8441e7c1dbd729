use std::fmt;

use ratcrit::criterion::{LemmaError, ProfileError, StreamError};
use ratcrit::rational::{ExpandError, ParseError};
use ratcrit::GroupError;

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Config(String),
    /// Carries the rendered report so it still reaches stdout.
    IdentityViolation {
        residual: String,
        report: String,
    },
    Truncated(String),
    NotExpandable(String),
    Internal(String),
    /// A run that completed but found inconsistencies.
    Failed {
        message: String,
        report: String,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Internal(_) | CliError::Failed { .. } => 1,
            CliError::Parse(_) => 2,
            CliError::Config(_) => 3,
            CliError::IdentityViolation { .. } => 4,
            CliError::Truncated(_) => 5,
            CliError::NotExpandable(_) => 6,
        }
    }

    pub fn report(&self) -> Option<&str> {
        match self {
            CliError::IdentityViolation { report, .. } | CliError::Failed { report, .. } => Some(report),
            _ => None,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Config(m) => write!(f, "invalid configuration: {m}"),
            CliError::IdentityViolation { residual, .. } => write!(f, "a·t - s·b = {residual} is not zero"),
            CliError::Truncated(m) => write!(f, "stream truncated: {m}"),
            CliError::NotExpandable(m) => write!(f, "cannot expand: {m}"),
            CliError::Internal(m) | CliError::Failed { message: m, .. } => write!(f, "{m}"),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<StreamError> for CliError {
    fn from(e: StreamError) -> Self {
        match e {
            StreamError::Truncated { .. } => CliError::Truncated(e.to_string()),
            StreamError::BadData(_) | StreamError::Group(_) => CliError::Parse(e.to_string()),
            StreamError::NoAugmentation => CliError::Config(e.to_string()),
        }
    }
}

impl From<ProfileError> for CliError {
    fn from(e: ProfileError) -> Self {
        match e {
            ProfileError::Stream(s) => s.into(),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<ExpandError> for CliError {
    fn from(e: ExpandError) -> Self {
        match e {
            ExpandError::BadTolerance(_) => CliError::Config(e.to_string()),
            ExpandError::NotPolynomial => CliError::Parse(format!("{e}; expected a group algebra element")),
            ExpandError::RankUnsupported { .. } => CliError::Config(e.to_string()),
            _ => CliError::NotExpandable(e.to_string()),
        }
    }
}

impl From<LemmaError> for CliError {
    fn from(e: LemmaError) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}
