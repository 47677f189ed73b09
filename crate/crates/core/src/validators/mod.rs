//! Semantic checks and the pipeline that runs every pass over a document.

mod glossary;
mod hierarchy;
mod structure;
mod unique_ids;

pub use glossary::{check_glossary, GlossaryEntry, GlossaryIndex, GlossaryOptions};
pub use hierarchy::{check_hierarchy_cycles, cycle_nodes, strongly_connected};
pub use structure::{check_attributes, check_language_declarations};
pub use unique_ids::check_unique_ids;

use crate::linguistic::rules::check_linguistics;
use crate::linguistic::{Lexicon, LexiconSet};
use crate::model::{sort_diagnostics, Diagnostic};
use crate::workspace::{inline_include_fixes, resolve, Document, ResolvedModel, Workspace};

#[derive(Debug, Clone, Default)]
pub struct CheckOptions {
    pub lexicons: LexiconSet,
    pub glossary: GlossaryOptions,
}

/// Grammar, resolution, custom and linguistic diagnostics of one resolved
/// document, sorted by (file, offset, code) without repeats.
pub fn run_all_checks(rm: &ResolvedModel, options: &CheckOptions) -> Vec<Diagnostic> {
    let mut out = rm.parse_diagnostics.clone();
    out.extend(rm.diagnostics.iter().cloned());
    out.extend(check_unique_ids(rm));

    let (index, config) = GlossaryIndex::build(rm);
    out.extend(config);
    let lex = options
        .lexicons
        .get(rm.language())
        .unwrap_or_else(|| Lexicon::new(rm.language().tag()).into());
    out.extend(check_glossary(rm, &index, &lex, options.glossary));

    out.extend(check_hierarchy_cycles(rm));
    out.extend(check_attributes(rm));
    out.extend(check_language_declarations(rm));
    out.extend(check_linguistics(rm, &options.lexicons));
    out.extend(inline_include_fixes(rm));
    sort_diagnostics(&mut out);
    out
}

/// Resolves `doc` against `ws` and runs every check.
pub fn check_document(doc: &Document, ws: &Workspace, options: &CheckOptions) -> (ResolvedModel, Vec<Diagnostic>) {
    let rm = resolve(doc, ws);
    let diags = run_all_checks(&rm, options);
    (rm, diags)
}
