use std::fmt;

/// Exit status contract: 0 success / property holds, 1 property fails,
/// 2 usage or parse error, 3 not a codeword.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    NotACodeword(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::NotACodeword(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::NotACodeword(msg) => write!(f, "not a codeword: {msg}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("i/o error: {e}"))
    }
}

impl From<ssa_core::dna::DnaError> for CliError {
    fn from(e: ssa_core::dna::DnaError) -> Self {
        CliError::Usage(e.to_string())
    }
}
