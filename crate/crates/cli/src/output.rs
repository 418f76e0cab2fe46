use std::process::ExitCode;

use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    /// A property was refuted or an input failed validation.
    Failed,
    Usage,
}

impl Outcome {
    fn code(self) -> u8 {
        match self {
            Outcome::Ok => 0,
            Outcome::Failed => 1,
            Outcome::Usage => 2,
        }
    }
}

/// One JSON document on stdout plus diagnostics on stderr.
#[derive(Debug)]
pub struct Report {
    command: &'static str,
    outcome: Outcome,
    ok: bool,
    payload: Value,
    pub diagnostics: Vec<String>,
}

impl Report {
    pub fn ok(command: &'static str, payload: Value) -> Self {
        Report {
            command,
            outcome: Outcome::Ok,
            ok: true,
            payload,
            diagnostics: Vec::new(),
        }
    }

    /// A well-formed result whose property does not hold.
    pub fn refuted(command: &'static str, payload: Value) -> Self {
        Report {
            outcome: Outcome::Failed,
            ok: false,
            ..Report::ok(command, payload)
        }
    }

    pub fn error(
        command: &'static str,
        code: &str,
        message: impl Into<String>,
        outcome: Outcome,
    ) -> Self {
        Report::error_with(command, code, message, Value::Null, outcome)
    }

    pub fn error_with(
        command: &'static str,
        code: &str,
        message: impl Into<String>,
        details: Value,
        outcome: Outcome,
    ) -> Self {
        let mut payload = json!({ "code": code, "message": message.into() });
        if !details.is_null() {
            payload["details"] = details;
        }
        Report {
            command,
            outcome,
            ok: false,
            payload,
            diagnostics: Vec::new(),
        }
    }

    pub fn emit(self) -> ExitCode {
        for line in &self.diagnostics {
            eprintln!("{line}");
        }
        let document = json!({
            "schema": format!("projlink/{}/v1", self.command),
            "status": if self.ok { "ok" } else { "error" },
            "payload": self.payload,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&document).expect("JSON values serialize")
        );
        ExitCode::from(self.outcome.code())
    }
}
