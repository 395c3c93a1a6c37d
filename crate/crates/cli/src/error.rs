//! Error classification for exit codes.

use std::fmt;

/// A command failure, classified by exit code: semantic validation
/// failures exit 1, parse/reference problems exit 2, exhausted search
/// budgets exit 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Semantic(String),
    Reference(String),
    Budget(String),
}

impl CliError {
    /// Wraps a library error, routing budget-style messages to the
    /// budget exit code. Every search bound in the library reports
    /// through one of two stable phrases.
    pub fn semantic(err: impl fmt::Display) -> CliError {
        let message = err.to_string();
        if message.contains("budget exceeded") || message.contains("exceeds bound") {
            CliError::Budget(message)
        } else {
            CliError::Semantic(message)
        }
    }

    pub fn reference(message: impl Into<String>) -> CliError {
        CliError::Reference(message.into())
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Semantic(m) | CliError::Reference(m) | CliError::Budget(m) => m,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Semantic(_) => 1,
            CliError::Reference(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.message())
    }
}

impl std::error::Error for CliError {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_messages_are_reclassified() {
        assert_eq!(
            CliError::semantic("enumeration budget exceeded: space needs 40 bits").exit_code(),
            3
        );
        assert_eq!(
            CliError::semantic("automorphism enumeration: size 20 exceeds bound 16").exit_code(),
            3
        );
        assert_eq!(CliError::semantic("not a group: identity fails").exit_code(), 1);
        assert_eq!(CliError::reference("no such object").exit_code(), 2);
    }
}
