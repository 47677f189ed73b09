use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::model::{SourceSpan, TextEdit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Severity {
    Error,
    Warning,
    Info,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Error => "Error",
            Severity::Warning => "Warning",
            Severity::Info => "Info",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
            Severity::Info => "info",
        }
    }
}

impl FromStr for Severity {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "Error" => Ok(Severity::Error),
            "Warning" => Ok(Severity::Warning),
            "Info" => Ok(Severity::Info),
            _ => Err(()),
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Diagnostic code catalog.
pub mod codes {
    /// Unknown top-level declaration.
    pub const UNKNOWN_DECLARATION: &str = "RSL-S001";
    /// Unexpected token.
    pub const UNEXPECTED_TOKEN: &str = "RSL-S002";
    pub const UNTERMINATED_STRING: &str = "RSL-S003";
    pub const INVALID_CHARACTER: &str = "RSL-S004";
    pub const UNKNOWN_POS: &str = "RSL-S005";
    pub const UNKNOWN_KIND: &str = "RSL-S006";
    pub const EMPTY_ALTERNATION: &str = "RSL-S007";
    pub const DUPLICATE_FIELD: &str = "RSL-S008";
    /// A value outside its closed vocabulary (data type, severity, ...).
    pub const INVALID_VALUE: &str = "RSL-S009";
    pub const MISSING_FIELD: &str = "RSL-S010";

    pub const UNRESOLVED_REFERENCE: &str = "RSL-R001";
    pub const UNKNOWN_SYSTEM: &str = "RSL-R002";
    pub const UNKNOWN_ELEMENT: &str = "RSL-R003";
    pub const CIRCULAR_INCLUDE: &str = "RSL-R004";

    pub const DUPLICATE_ID: &str = "RSL-V001";
    pub const GLOSSARY_TERM: &str = "RSL-V002";
    pub const HIERARCHY_CYCLE: &str = "RSL-V003";
    pub const DUPLICATE_ATTRIBUTE: &str = "RSL-V004";
    pub const MULTIPLE_PRIMARY_KEYS: &str = "RSL-V005";

    pub const LINGUISTIC_RULE: &str = "RSL-L001";
    pub const INLINE_INCLUDE: &str = "RSL-I001";

    pub const SYNONYM_CONFLICT: &str = "RSL-C001";
    pub const MAIN_WORD_AS_SYNONYM: &str = "RSL-C002";
    pub const UNKNOWN_FRAGMENT: &str = "RSL-C003";
    pub const MISSING_LEXICON: &str = "RSL-C004";
    pub const DUPLICATE_LANGUAGE: &str = "RSL-C005";

    /// True iff `code` matches `RSL-[A-Z]\d{3}`.
    pub fn is_well_formed(code: &str) -> bool {
        let b = code.as_bytes();
        b.len() == 8
            && code.starts_with("RSL-")
            && b[4].is_ascii_uppercase()
            && b[5..].iter().all(u8::is_ascii_digit)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelatedInfo {
    pub span: SourceSpan,
    pub note: String,
}

/// A machine-applicable correction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuickFix {
    pub title: String,
    /// Non-overlapping, sorted by offset.
    pub edits: Vec<TextEdit>,
}

impl QuickFix {
    pub fn new(title: impl Into<String>, mut edits: Vec<TextEdit>) -> Self {
        edits.sort_by_key(|e| (e.span.byte_offset, e.span.byte_length));
        QuickFix {
            title: title.into(),
            edits,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: &'static str,
    pub message: String,
    pub span: SourceSpan,
    pub related: Vec<RelatedInfo>,
    pub fixes: Vec<QuickFix>,
}

impl Diagnostic {
    pub fn new(
        severity: Severity,
        code: &'static str,
        message: impl Into<String>,
        span: SourceSpan,
    ) -> Self {
        let message = message.into();
        debug_assert!(codes::is_well_formed(code), "{code}");
        debug_assert!(!message.is_empty());
        Diagnostic {
            severity,
            code,
            message,
            span,
            related: Vec::new(),
            fixes: Vec::new(),
        }
    }

    pub fn error(code: &'static str, message: impl Into<String>, span: SourceSpan) -> Self {
        Self::new(Severity::Error, code, message, span)
    }

    pub fn warning(code: &'static str, message: impl Into<String>, span: SourceSpan) -> Self {
        Self::new(Severity::Warning, code, message, span)
    }

    pub fn info(code: &'static str, message: impl Into<String>, span: SourceSpan) -> Self {
        Self::new(Severity::Info, code, message, span)
    }

    pub fn with_fix(mut self, fix: QuickFix) -> Self {
        self.fixes.push(fix);
        self
    }

    pub fn with_related(mut self, span: SourceSpan, note: impl Into<String>) -> Self {
        self.related.push(RelatedInfo {
            span,
            note: note.into(),
        });
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

/// Sorts by (file, byte offset, code) and drops repeats of the same
/// code, span and message.
pub fn sort_diagnostics(diags: &mut Vec<Diagnostic>) {
    diags.sort_by(|a, b| {
        (&a.span.file, a.span.byte_offset, a.code, a.span.byte_length, &a.message).cmp(&(
            &b.span.file,
            b.span.byte_offset,
            b.code,
            b.span.byte_length,
            &b.message,
        ))
    });
    diags.dedup_by(|a, b| a.code == b.code && a.span == b.span && a.message == b.message);
}
