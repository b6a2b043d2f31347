//! Per-declaration results of `cubnf check`, as text or JSON.

use std::fmt::Write as _;

use serde::Serialize;

use crate::nf::{CheckError, Warning};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Status {
    Ok,
    Warning { warnings: Vec<Warning> },
    Error { kind: String, path: String, message: String },
}

impl Status {
    pub fn error(kind: impl Into<String>, path: impl Into<String>, message: impl Into<String>) -> Status {
        Status::Error { kind: kind.into(), path: path.into(), message: message.into() }
    }

    pub fn from_check(e: CheckError) -> Status {
        Status::error(e.kind.as_str(), e.path, e.message)
    }

    pub fn from_warnings(warnings: Vec<Warning>) -> Status {
        if warnings.is_empty() {
            Status::Ok
        } else {
            Status::Warning { warnings }
        }
    }

    pub fn is_error(&self) -> bool {
        matches!(self, Status::Error { .. })
    }

    /// The error kind, if this is an error.
    pub fn kind(&self) -> Option<&str> {
        match self {
            Status::Error { kind, .. } => Some(kind),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeclReport {
    pub label: String,
    pub line: usize,
    pub col: usize,
    #[serde(flatten)]
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FileReport {
    pub file: String,
    pub decls: Vec<DeclReport>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub ok: usize,
    pub warnings: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub files: Vec<FileReport>,
    pub summary: Summary,
}

impl Report {
    pub fn new(files: Vec<FileReport>) -> Report {
        let mut summary = Summary::default();
        for d in files.iter().flat_map(|f| &f.decls) {
            match d.status {
                Status::Ok => summary.ok += 1,
                Status::Warning { .. } => summary.warnings += 1,
                Status::Error { .. } => summary.errors += 1,
            }
        }
        Report { files, summary }
    }

    /// 0 when everything passed, 1 on any error, 2 when there are only
    /// warnings.
    pub fn exit_code(&self) -> i32 {
        if self.summary.errors > 0 {
            1
        } else if self.summary.warnings > 0 {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for f in &self.files {
            for d in &f.decls {
                let at = format!("{}:{}:{} {}", f.file, d.line, d.col, d.label);
                match &d.status {
                    Status::Ok => writeln!(out, "{at}: ok"),
                    Status::Warning { warnings } => {
                        let mut r = Ok(());
                        for w in warnings {
                            r = writeln!(out, "{at}: warning: side-condition-unknown at {}: {}", w.path, w.message);
                        }
                        r
                    }
                    Status::Error { kind, path, message } => writeln!(out, "{at}: error: {kind} at {path}: {message}"),
                }
                .expect("writing to a string");
            }
        }
        let s = self.summary;
        writeln!(out, "{} ok, {} with warnings, {} errors", s.ok, s.warnings, s.errors).expect("writing to a string");
        out
    }
}
