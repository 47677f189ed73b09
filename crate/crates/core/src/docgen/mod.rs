//! Document generation from valid specifications: JSON, structured text and
//! tag templates, all over the same serialized view of the model.

pub mod expr;
mod json;
pub mod template;
mod text;

use std::fmt;

pub use json::*;
pub use template::{parse_template, render, Mode, TemplateDocument, TemplateError};
pub use text::generate_text;

use crate::model::{Diagnostic, Severity};
use crate::workspace::ResolvedModel;

/// Generation refused because the specification has errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refusal {
    pub error_count: usize,
    /// The first three error messages.
    pub first_messages: Vec<String>,
}

impl fmt::Display for Refusal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "the specification has {} error(s); fix them before generating documents",
            self.error_count
        )?;
        for m in &self.first_messages {
            write!(f, "\n  - {}", m.lines().next().unwrap_or_default())?;
        }
        Ok(())
    }
}

impl std::error::Error for Refusal {}

/// Generation is allowed only when no diagnostic is an error.
pub fn ensure_valid(diags: &[Diagnostic]) -> Result<(), Refusal> {
    let errors: Vec<&Diagnostic> = diags.iter().filter(|d| d.severity == Severity::Error).collect();
    if errors.is_empty() {
        return Ok(());
    }
    Err(Refusal {
        error_count: errors.len(),
        first_messages: errors.iter().take(3).map(|d| d.message.clone()).collect(),
    })
}

/// The value templates are evaluated against: the JSON view, with the
/// element arrays also reachable at top level (`{#useCases}`).
pub fn template_data(rm: &ResolvedModel) -> serde_json::Value {
    let mut root = JsonModelDocument::build(rm).to_value();
    let elements = root["elements"].as_object().cloned().unwrap_or_default();
    let obj = root.as_object_mut().expect("view is an object");
    for (k, v) in elements {
        obj.entry(k).or_insert(v);
    }
    root
}

pub fn render_template(
    tpl: &TemplateDocument,
    rm: &ResolvedModel,
    mode: Mode,
) -> Result<String, TemplateError> {
    render(tpl, &template_data(rm), mode)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::model::codes;
    use crate::workspace::{resolve, Workspace};

    pub(crate) fn resolve_one(src: &str) -> ResolvedModel {
        let mut ws = Workspace::new();
        ws.add_source("S", "s.rsl", src);
        resolve(ws.system("S").unwrap(), &ws)
    }

    #[test]
    fn validity_gate() {
        let at = crate::model::SourceSpan::default;
        assert!(ensure_valid(&[]).is_ok());
        let warn = Diagnostic::warning(codes::GLOSSARY_TERM, "w", at());
        assert!(ensure_valid(std::slice::from_ref(&warn)).is_ok());
        let errs: Vec<Diagnostic> = (0..5)
            .map(|i| Diagnostic::error(codes::DUPLICATE_ID, format!("e{i}"), at()))
            .chain([warn])
            .collect();
        let r = ensure_valid(&errs).unwrap_err();
        assert_eq!(r.error_count, 5);
        assert_eq!(r.first_messages, ["e0", "e1", "e2"]);
    }

    #[test]
    fn template_over_model() {
        let rm = resolve_one(include_str!("../../tests/fixtures/invoice_browse.rsl"));
        let tpl = parse_template(
            "{#useCases}{id}: {primaryActor.name} [{join(actions, ' ')}]{/useCases} {length(dataEntities)} {elements.actors[0].nameAlias}",
        )
        .unwrap();
        assert_eq!(
            render_template(&tpl, &rm, Mode::Strict).unwrap(),
            "uc_2_BrowseInvoicesToApprove: Manager [aClose aSearch aFilter] 1 Manager"
        );
    }
}
