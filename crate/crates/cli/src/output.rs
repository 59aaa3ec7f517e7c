use std::io::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::args::Command;

/// Provenance block embedded in every JSON output.
#[derive(Debug, Serialize)]
pub struct Manifest {
    pub subcommand: &'static str,
    pub argv: Vec<String>,
    pub config: Value,
    pub tool_version: &'static str,
    pub master_seed: Option<u64>,
    pub started_at: String,
    pub finished_at: Option<String>,
}

fn now() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true)
}

impl Manifest {
    pub fn start(command: &Command, argv: &[String]) -> Self {
        let config = serde_json::to_value(command)
            .ok()
            .and_then(|v| v.as_object().and_then(|o| o.values().next().cloned()))
            .unwrap_or(Value::Null);
        Manifest {
            subcommand: command.name(),
            argv: argv.to_vec(),
            config,
            tool_version: env!("CARGO_PKG_VERSION"),
            master_seed: command.master_seed(),
            started_at: now(),
            finished_at: None,
        }
    }

    fn finish(mut self) -> Self {
        self.finished_at = Some(now());
        self
    }
}

pub enum Body {
    Json(Value),
    /// Emitted verbatim (edge lists, CSV).
    Text(String),
}

pub struct Output {
    pub body: Body,
    pub exit_code: u8,
}

impl Output {
    pub fn json(value: Value) -> Self {
        Output {
            body: Body::Json(value),
            exit_code: 0,
        }
    }

    pub fn text(text: String) -> Self {
        Output {
            body: Body::Text(text),
            exit_code: 0,
        }
    }

    pub fn with_exit_code(mut self, code: u8) -> Self {
        self.exit_code = code;
        self
    }

    pub fn emit(self, manifest: Manifest) {
        match self.body {
            Body::Json(mut v) => {
                if let Value::Object(map) = &mut v {
                    map.insert(
                        "manifest".into(),
                        serde_json::to_value(manifest.finish()).unwrap(),
                    );
                }
                write_stdout(&format!("{}\n", serde_json::to_string_pretty(&v).unwrap()));
            }
            Body::Text(t) => write_stdout(&t),
        }
    }
}

/// A closed pipe (e.g. `| head`) is not an error worth a panic.
pub fn write_stdout(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

pub fn failure(err: &anyhow::Error, manifest: Manifest) -> String {
    let kind = err
        .downcast_ref::<upset_core::Error>()
        .map(|e| e.kind())
        .or_else(|| err.downcast_ref::<std::io::Error>().map(|_| "Io"))
        .or_else(|| err.downcast_ref::<serde_json::Error>().map(|_| "Json"))
        .unwrap_or("Error");
    let v = json!({
        "error": { "kind": kind, "message": format!("{err:#}") },
        "manifest": manifest.finish(),
    });
    format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
}
