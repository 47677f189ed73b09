//! Document model, diagnostics and text edits shared by every pass.

mod diagnostic;
mod edit;
mod element;
mod printer;
mod span;

pub use diagnostic::{codes, sort_diagnostics, Diagnostic, QuickFix, RelatedInfo, Severity};
pub use edit::{apply_edits, EditError, TextEdit};
pub use element::*;
pub use printer::{print_element, print_include, print_model};
pub use span::{LineIndex, SourceSpan};
