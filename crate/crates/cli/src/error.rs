use std::fmt;

use fibseq::error::{ComplexError, Error, LocalSystemError, MorseError, SpecSeqError};

pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn parse(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }

    pub fn parse_at(line: usize, column: usize, message: impl Into<String>) -> Self {
        let message = message.into();
        // serde_json already appends the position; keep one copy of it
        let bare = message.split(" at line ").next().unwrap_or(&message).to_string();
        CliError::parse(format!("line {line}, column {column}: {bare}"))
    }

    pub fn invariant(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INVARIANT,
            message: message.into(),
        }
    }

    pub fn precondition(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_PRECONDITION,
            message: message.into(),
        }
    }

    pub fn mismatch(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_MISMATCH,
            message: message.into(),
        }
    }

    pub fn from_lib<E: Into<Error>>(e: E) -> Self {
        let e = e.into();
        CliError {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

fn complex_code(e: &ComplexError) -> i32 {
    match e {
        ComplexError::DuplicateGenerator(_) | ComplexError::UnknownGenerator(_) | ComplexError::BlockShape { .. } => {
            EXIT_PARSE
        }
        _ => EXIT_INVARIANT,
    }
}

fn local_code(e: &LocalSystemError) -> i32 {
    use LocalSystemError::*;
    match e {
        UnknownVertex(_) | UnknownEdge(_) | DuplicateId(_) | NotComposable { .. } | OpenRelation(_) => EXIT_PARSE,
        DisconnectedSupport | DisconnectedBase | EmptyCarrier | OutsideCarrier(_) => EXIT_PRECONDITION,
        RestrictionMismatch { .. } => EXIT_MISMATCH,
        _ => EXIT_INVARIANT,
    }
}

/// Exit code for a library failure: malformed references are parse errors,
/// broken mathematical invariants are invariant errors, inputs outside a
/// command's scope are precondition errors, and internal cross-checks that
/// disagree are oracle mismatches.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Field(_) => EXIT_PARSE,
        Error::Linalg(_) => EXIT_PARSE,
        Error::Complex(c) => complex_code(c),
        Error::SpecSeq(SpecSeqError::Inconsistent(_)) => EXIT_MISMATCH,
        Error::SpecSeq(SpecSeqError::Complex(c)) => complex_code(c),
        Error::SpecSeq(SpecSeqError::MissingBlock(_)) => EXIT_PARSE,
        Error::SpecSeq(_) => EXIT_INVARIANT,
        Error::LocalSystem(l) => local_code(l),
        Error::Morse(m) => match m {
            MorseError::UnknownPoint(_)
            | MorseError::DuplicateId(_)
            | MorseError::WrongEndpoints(_)
            | MorseError::MissingWord(_)
            | MorseError::MissingLevel(_) => EXIT_PARSE,
            MorseError::E2Mismatch { .. } => EXIT_MISMATCH,
            MorseError::TotalCohomologyDisagrees { .. }
            | MorseError::NotComposable(_)
            | MorseError::NotHomotopic { .. }
            | MorseError::BadWindows { .. } => EXIT_PRECONDITION,
            MorseError::LocalSystem(l) => local_code(l),
            MorseError::Complex(c) => complex_code(c),
            MorseError::SpecSeq(s) => exit_code(&Error::SpecSeq(s.clone())),
            MorseError::Linalg(_) => EXIT_PARSE,
            _ => EXIT_INVARIANT,
        },
    }
}
