use std::fmt;

use serde::Serialize;

/// What went wrong, which fixes the exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Io,
    Config,
    Budget,
    Model,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub kind: Kind,
    pub message: String,
}

impl CliError {
    pub fn io(msg: impl fmt::Display) -> Self {
        CliError { kind: Kind::Io, message: msg.to_string() }
    }

    pub fn config(msg: impl fmt::Display) -> Self {
        CliError { kind: Kind::Config, message: msg.to_string() }
    }

    /// A model error that is not a budget problem.
    pub fn model(e: rcurves::Error) -> Self {
        match e {
            rcurves::Error::BudgetExceeded { .. } | rcurves::Error::Overflow(_) => e.into(),
            _ => CliError { kind: Kind::Model, message: e.to_string() },
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            Kind::Io => 1,
            Kind::Config => 2,
            Kind::Budget => 3,
            Kind::Model => 4,
        }
    }

    /// One-line JSON record for stderr.
    pub fn record(&self) -> String {
        #[derive(Serialize)]
        struct Rec<'a> {
            schema: &'a str,
            kind: Kind,
            exit_code: i32,
            message: &'a str,
        }
        serde_json::to_string(&Rec {
            schema: "rcurves-error/1",
            kind: self.kind,
            exit_code: self.exit_code(),
            message: &self.message,
        })
        .expect("plain record")
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.kind, self.message)
    }
}

impl std::error::Error for CliError {}

impl From<rcurves::Error> for CliError {
    fn from(e: rcurves::Error) -> Self {
        use rcurves::Error as E;
        let kind = match &e {
            E::BudgetExceeded { .. } | E::Overflow(_) => Kind::Budget,
            E::InvalidModel(_) => Kind::Model,
            _ => Kind::Config,
        };
        CliError { kind, message: e.to_string() }
    }
}
