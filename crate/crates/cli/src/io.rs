use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;

/// Structured stderr diagnostic: `{"code", "message", "location"}`.
#[derive(Debug, Serialize)]
pub struct Diagnostic {
    pub code: String,
    pub message: String,
    pub location: String,
}

impl Diagnostic {
    pub fn new(code: &str, message: impl ToString, location: impl ToString) -> Self {
        Self {
            code: code.into(),
            message: message.to_string(),
            location: location.to_string(),
        }
    }

    pub fn emit(&self) {
        eprintln!("{}", serde_json::to_string(self).expect("diagnostic serializes"));
    }
}

pub fn location(path: Option<&Path>) -> String {
    match path {
        Some(p) if p != Path::new("-") => p.display().to_string(),
        _ => "<stdin>".into(),
    }
}

pub fn read_text(path: Option<&Path>) -> Result<String, Diagnostic> {
    let mut text = String::new();
    let result = match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p).map(|t| text = t),
        _ => io::stdin().read_to_string(&mut text).map(drop),
    };
    result.map_err(|e| Diagnostic::new("IoError", e, location(path)))?;
    Ok(text)
}

pub fn read_json<T: DeserializeOwned>(path: Option<&Path>) -> Result<T, Diagnostic> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| {
        Diagnostic::new(
            "ParseError",
            &e,
            format!("{}:{}:{}", location(path), e.line(), e.column()),
        )
    })
}

pub fn write_json<T: Serialize>(path: Option<&PathBuf>, value: &T) -> Result<(), Diagnostic> {
    let mut text = serde_json::to_string_pretty(value).expect("output serializes");
    text.push('\n');
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Diagnostic::new("IoError", e, p.display())),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| Diagnostic::new("IoError", e, "<stdout>")),
    }
}
