use serde::Serialize;
use serde_json::Value;

use lndfilt::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;
pub const EXIT_NEGATIVE: i32 = 5;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: msg.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse { .. } | Error::UnknownIdentifier(_) | Error::InvalidContext(_) => EXIT_PARSE,
            Error::BudgetExhausted(_) | Error::BoundExceeded { .. } | Error::SystemTooLarge { .. } => EXIT_BUDGET,
            _ => EXIT_PRECONDITION,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// Result payload of a successful command.
pub struct Output {
    pub result: Value,
    pub text: String,
    /// `EXIT_OK`, or `EXIT_NEGATIVE` for a negative verdict.
    pub status: i32,
}

impl Output {
    pub fn new(result: impl Serialize, text: String) -> Self {
        Self {
            result: serde_json::to_value(result).expect("serializable payload"),
            text,
            status: EXIT_OK,
        }
    }

    pub fn negative(mut self, negative: bool) -> Self {
        if negative {
            self.status = EXIT_NEGATIVE;
        }
        self
    }
}

/// One command's report in its stable JSON shape.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub status: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Checks that ran and the bounds they used.
    pub notes: Vec<String>,
    #[serde(skip)]
    pub text: String,
}

impl Report {
    pub fn render(&self, json: bool) -> String {
        if json {
            return serde_json::to_string_pretty(self).expect("serializable report");
        }
        match &self.error {
            Some(e) => format!("error: {e}"),
            None => self.text.clone(),
        }
    }
}
