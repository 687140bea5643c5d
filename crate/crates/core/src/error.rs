use std::fmt;

use thiserror::Error;

use crate::ast::SourceSpan;

#[derive(Debug, Error)]
pub enum VfError {
    #[error("duplicate rule id `{0}`")]
    DuplicateRuleId(String),
    #[error("unknown rule id `{0}`")]
    UnknownRuleId(String),
    #[error("config line {line}: {reason}")]
    ConfigSyntax { line: usize, reason: String },
    #[error("rule `{rule}` has no property `{key}`")]
    UnknownProperty { rule: String, key: String },
    #[error("unknown language `{0}`")]
    UnknownLanguage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("xml at byte {position}: {reason}")]
    XmlSchema { position: u64, reason: String },
}

pub type Result<T, E = VfError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DiagnosticKind {
    Lex,
    Parse,
    UndeclaredObject,
    DuplicateDeclaration,
    Io,
}

impl DiagnosticKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagnosticKind::Lex => "lex",
            DiagnosticKind::Parse => "parse",
            DiagnosticKind::UndeclaredObject => "undeclared-object",
            DiagnosticKind::DuplicateDeclaration => "duplicate-declaration",
            DiagnosticKind::Io => "io",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "lex" => DiagnosticKind::Lex,
            "parse" => DiagnosticKind::Parse,
            "undeclared-object" => DiagnosticKind::UndeclaredObject,
            "duplicate-declaration" => DiagnosticKind::DuplicateDeclaration,
            "io" => DiagnosticKind::Io,
            _ => return None,
        })
    }

    /// Fatal diagnostics leave the unit without an AST.
    pub fn is_fatal(self) -> bool {
        !matches!(self, DiagnosticKind::DuplicateDeclaration)
    }
}

/// A problem with an input unit (as opposed to a guideline finding).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Diagnostic {
    pub span: SourceSpan,
    pub kind: DiagnosticKind,
    pub message: String,
}

impl Diagnostic {
    /// Diagnostics locate a position; the span is reduced to its start.
    pub fn new(kind: DiagnosticKind, span: SourceSpan, message: impl Into<String>) -> Self {
        let span = SourceSpan::point(span.file, span.row, span.col);
        Diagnostic { span, kind, message: message.into() }
    }

    pub fn is_fatal(&self) -> bool {
        self.kind.is_fatal()
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} error: {}", self.span, self.kind.as_str(), self.message)
    }
}
