//! Toolchain for a subset of the RSL requirements specification language.
//!
//! The pipeline is batch oriented: documents are parsed into a [`Model`],
//! bound against a [`Workspace`] of other systems, validated by grammar,
//! semantic and linguistic checks, and finally rendered to JSON, structured
//! text or user supplied templates once no error remains.

pub mod cli;
pub mod docgen;
pub mod linguistic;
pub mod model;
pub mod parser;
pub mod validators;
pub mod workspace;

pub use model::{
    apply_edits, print_model, Diagnostic, EditError, Element, ElementKind, Identifier, Model,
    QuickFix, Severity, SourceSpan, TextEdit,
};
pub use parser::parse;
pub use workspace::{resolve, Document, ResolvedModel, Workspace};

