//! CLI failure type: every error carries the exit-code category and emits a
//! single machine-parsable JSON line on stderr.

use std::fmt;

/// Exit-code classes. Validation covers everything wrong with the request
/// (unreadable file, unknown key, parameter outside its physical domain);
/// verification means the oracle suite ran and found failing checks;
/// non-convergence means an adaptive numeric routine hit its budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Category {
    Validation,
    Verification,
    NonConvergence,
}

impl Category {
    pub fn exit_code(self) -> i32 {
        match self {
            Category::Validation => 1,
            Category::Verification => 2,
            Category::NonConvergence => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Category::Validation => "validation",
            Category::Verification => "verification",
            Category::NonConvergence => "non_convergence",
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub category: Category,
    pub message: String,
}

impl CliError {
    pub fn validation(message: impl Into<String>) -> Self {
        Self {
            category: Category::Validation,
            message: message.into(),
        }
    }

    pub fn verification(message: impl Into<String>) -> Self {
        Self {
            category: Category::Verification,
            message: message.into(),
        }
    }

    /// One line on stderr, JSON so scripts never have to guess at quoting.
    pub fn emit(&self) {
        eprintln!(
            "{}",
            serde_json::json!({ "error": self.category.label(), "message": self.message })
        );
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.category.label(), self.message)
    }
}

impl std::error::Error for CliError {}

impl From<pathamp::Error> for CliError {
    fn from(e: pathamp::Error) -> Self {
        let category = match e {
            pathamp::Error::QuadratureDidNotConverge { .. } => Category::NonConvergence,
            _ => Category::Validation,
        };
        Self {
            category,
            message: e.to_string(),
        }
    }
}
