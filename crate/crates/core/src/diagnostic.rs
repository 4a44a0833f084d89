use std::fmt;

use crate::ir::NodePath;
use crate::parser::SpanMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Code {
    AmbiguousTmc,
    TailcallNotSatisfiable,
    UselessMark,
    MisplacedHole,
    DuplicateParam,
    DuplicateFunction,
    DuplicateBinder,
    UnboundName,
    EmptyMatch,
    BadIndex,
    NoParams,
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: Code,
    pub path: NodePath,
    pub message: String,
    /// For `AmbiguousTmc`: the competing candidate calls.
    pub candidate_paths: Vec<NodePath>,
}

impl Diagnostic {
    pub fn error(code: Code, path: NodePath, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            severity: Severity::Error,
            code,
            path,
            message: message.into(),
            candidate_paths: Vec::new(),
        }
    }

    pub fn warning(code: Code, path: NodePath, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            severity: Severity::Warning,
            ..Diagnostic::error(code, path, message)
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }

    /// One line: `SEVERITY CODE file:line:col message`.
    pub fn render(&self, file: &str, spans: Option<&SpanMap>) -> String {
        let (line, col) = spans
            .and_then(|s| s.lookup(&self.path))
            .map(|sp| (sp.line, sp.column))
            .unwrap_or((0, 0));
        let sev = match self.severity {
            Severity::Error => "ERROR",
            Severity::Warning => "WARNING",
        };
        let mut out = format!("{sev} {} {file}:{line}:{col} {}", self.code, self.message);
        if !self.candidate_paths.is_empty() {
            let locs: Vec<String> = self
                .candidate_paths
                .iter()
                .map(|p| match spans.and_then(|s| s.lookup(p)) {
                    Some(sp) => format!("{}:{}", sp.line, sp.column),
                    None => p.to_string(),
                })
                .collect();
            out.push_str(&format!(" [candidates: {}]", locs.join(", ")));
        }
        out
    }
}

pub fn has_errors(diags: &[Diagnostic]) -> bool {
    diags.iter().any(Diagnostic::is_error)
}
