use std::fs;
use std::io::Write;
use std::path::Path;

use serde_json::Value;

use crate::error::CliError;

/// Version of every JSON document the tool writes.
pub const SCHEMA_VERSION: u32 = 1;

pub fn document(kind: &str, body: Value) -> Value {
    let mut doc = serde_json::json!({
        "schema": format!("kunzwilf.{kind}"),
        "schema_version": SCHEMA_VERSION,
    });
    if let (Value::Object(doc), Value::Object(body)) = (&mut doc, body) {
        doc.extend(body);
    }
    doc
}

pub fn to_json(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

/// Writes `bytes` to `path`, or to standard output.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(CliError::io(p)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)
                .and_then(|_| out.flush())
                .map_err(CliError::io("<stdout>"))
        }
    }
}
