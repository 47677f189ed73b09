use std::collections::{BTreeMap, BTreeSet};

use crate::linguistic::analyze::{analyze, words};
use crate::linguistic::Lexicon;
use crate::model::*;
use crate::workspace::ResolvedModel;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlossaryEntry {
    /// The term's main word, as written.
    pub main: String,
    pub term: Identifier,
    /// Lowercased words of the synonym.
    pub words: Vec<String>,
}

/// Synonyms of every `Term`, keyed by their lowercase text.
#[derive(Debug, Clone, Default)]
pub struct GlossaryIndex {
    pub entries: BTreeMap<String, GlossaryEntry>,
}

fn lower_words(text: &str) -> Vec<String> {
    words(text)
        .into_iter()
        .map(|w| text[w.range].to_lowercase())
        .collect()
}

impl GlossaryIndex {
    /// Builds the index, reporting `RSL-C001` for a synonym claimed by two
    /// different main words and `RSL-C002` for a main word listed as a
    /// synonym. Conflicting synonyms are left out.
    pub fn build(rm: &ResolvedModel) -> (Self, Vec<Diagnostic>) {
        let terms: Vec<_> = rm
            .effective
            .iter()
            .filter_map(|e| match &e.element.body {
                ElementBody::Term(t) => Some((e, t)),
                _ => None,
            })
            .collect();
        let main_of = |e: &Element| e.name().unwrap_or(e.id.as_str()).to_string();
        let mains: BTreeMap<String, String> = terms
            .iter()
            .map(|(e, _)| (main_of(&e.element).to_lowercase(), main_of(&e.element)))
            .collect();

        let mut index = GlossaryIndex::default();
        let mut rejected: BTreeSet<String> = BTreeSet::new();
        let mut diags = Vec::new();
        for (e, term) in &terms {
            let main = main_of(&e.element);
            for syn in &term.synonyms {
                let key = syn.value.trim().to_lowercase();
                let words = lower_words(&key);
                if words.is_empty() {
                    continue;
                }
                let span = if e.is_local() { syn.span.clone() } else { e.anchor().clone() };
                if let Some(other) = mains.get(&key).filter(|m| m.to_lowercase() != main.to_lowercase()) {
                    diags.push(Diagnostic::error(
                        codes::MAIN_WORD_AS_SYNONYM,
                        format!("'{}' is a main word of the glossary and cannot be a synonym of '{main}'", other),
                        span,
                    ));
                    continue;
                }
                if rejected.contains(&key) {
                    continue;
                }
                match index.entries.get(&key) {
                    Some(prev) if prev.main.to_lowercase() != main.to_lowercase() => {
                        diags.push(Diagnostic::error(
                            codes::SYNONYM_CONFLICT,
                            format!(
                                "Synonym '{}' is defined for both '{}' and '{main}'",
                                syn.value, prev.main
                            ),
                            span,
                        ));
                        index.entries.remove(&key);
                        rejected.insert(key);
                    }
                    Some(_) => {}
                    None => {
                        index.entries.insert(
                            key,
                            GlossaryEntry {
                                main: main.clone(),
                                term: e.element.id.clone(),
                                words,
                            },
                        );
                    }
                }
            }
        }
        (index, diags)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct GlossaryOptions {
    /// Also scan element ids (off by default: ids are code-like).
    pub scan_ids: bool,
}

/// The main word in the capitalization of the text it replaces.
fn replacement(main: &str, found: &str) -> String {
    if found.chars().next().is_some_and(char::is_uppercase) {
        let mut chars = main.chars();
        match chars.next() {
            Some(c) => c.to_uppercase().chain(chars).collect(),
            None => String::new(),
        }
    } else {
        main.to_string()
    }
}

/// `RSL-V002`: names and descriptions must use a term's main word rather
/// than one of its synonyms. Matching is per token, on surface or lemma.
pub fn check_glossary(
    rm: &ResolvedModel,
    index: &GlossaryIndex,
    lex: &Lexicon,
    options: GlossaryOptions,
) -> Vec<Diagnostic> {
    if index.is_empty() {
        return Vec::new();
    }
    let mut fragments = vec![Fragment::Name, Fragment::Description];
    if options.scan_ids {
        fragments.push(Fragment::Id);
    }
    let mut out = Vec::new();
    // the glossary's own entries naturally mention their synonyms
    for e in rm.local_elements().filter(|e| e.kind() != ElementKind::Term) {
        for &f in &fragments {
            let Some((text, literal)) = e.fragment(f) else {
                continue;
            };
            let tokens = analyze(text, lex);
            let mut i = 0;
            while i < tokens.len() {
                let hit = index
                    .entries
                    .values()
                    .filter(|g| {
                        g.words.len() <= tokens.len() - i
                            && g.words.iter().zip(&tokens[i..]).all(|(w, t)| {
                                t.surface.to_lowercase() == *w || t.lemma == *w
                            })
                    })
                    .max_by_key(|g| g.words.len());
                let Some(g) = hit else {
                    i += 1;
                    continue;
                };
                let range = tokens[i].range.start..tokens[i + g.words.len() - 1].range.end;
                let found = &text[range.clone()];
                let span = rm.sub_span(literal, range);
                out.push(
                    Diagnostic::warning(
                        codes::GLOSSARY_TERM,
                        format!("Replace the word '{found}' by the main word '{}'", g.main),
                        span.clone(),
                    )
                    .with_fix(QuickFix::new(
                        format!("Replace '{found}' by '{}'", g.main),
                        vec![TextEdit::new(span, replacement(&g.main, found))],
                    )),
                );
                i += g.words.len();
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validators::tests::resolve_one;

    const TERM: &str = "Term t_Customer \"Customer\" : Noun [synonyms \"Client\"]\n\n";

    fn run(src: &str) -> (ResolvedModel, Vec<Diagnostic>) {
        let rm = resolve_one(src);
        let (index, mut diags) = GlossaryIndex::build(&rm);
        let lex = Lexicon::builtin(Language::English).unwrap();
        diags.extend(check_glossary(&rm, &index, &lex, GlossaryOptions::default()));
        (rm, diags)
    }

    #[test]
    fn client_in_description() {
        let src = format!("{TERM}Actor a_User \"User\" : User [description \"User that is a client\"]\n");
        let (rm, d) = run(&src);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].severity, Severity::Warning);
        assert_eq!(d[0].message, "Replace the word 'client' by the main word 'Customer'");
        let fixed = apply_edits(&rm.source, &d[0].fixes[0].edits).unwrap();
        assert!(fixed.contains("\"User that is a Customer\""));
        assert!(run(&fixed).1.is_empty());
    }

    #[test]
    fn main_word_is_fine() {
        let src = format!("{TERM}Actor a_User \"User\" : User [description \"Customer pays invoice\"]\n");
        assert!(run(&src).1.is_empty());
    }

    #[test]
    fn plural_matches_through_lemma() {
        let lex = Lexicon::builtin(Language::English).unwrap();
        assert!(lex.lookup("clients").iter().any(|e| e.lemma == "client"));
        let src = format!("{TERM}Actor a_User \"User\" : User [description \"Clients pay\"]\n");
        let (_, d) = run(&src);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].message, "Replace the word 'Clients' by the main word 'Customer'");
    }

    #[test]
    fn substrings_do_not_match() {
        let src = format!("{TERM}Actor a_User \"User\" : User [description \"Our clientele grows\"]\n");
        assert!(run(&src).1.is_empty());
    }

    #[test]
    fn capitalized_occurrence_in_name() {
        let src = format!("{TERM}Actor a_C \"Client\" : User\n");
        let (rm, d) = run(&src);
        let fixed = apply_edits(&rm.source, &d[0].fixes[0].edits).unwrap();
        assert!(fixed.contains("Actor a_C \"Customer\""));
    }

    #[test]
    fn conflicting_synonyms_are_reported_and_skipped() {
        let src = "Term t_C \"Customer\" : Noun [synonyms \"Client\"]\nTerm t_P \"Patron\" : Noun [synonyms \"Client\", \"Customer\"]\nActor a \"A\" : User [description \"a client\"]\n";
        let (_, d) = run(src);
        let codes: Vec<_> = d.iter().map(|d| d.code).collect();
        assert_eq!(codes, [codes::SYNONYM_CONFLICT, codes::MAIN_WORD_AS_SYNONYM]);
    }

    #[test]
    fn multi_word_synonym() {
        let src = "Term t_C \"Customer\" : Noun [synonyms \"end user\"]\nActor a \"A\" : User [description \"The End Users pay\"]\n";
        let (rm, d) = run(src);
        assert_eq!(d.len(), 1);
        let fixed = apply_edits(&rm.source, &d[0].fixes[0].edits).unwrap();
        assert!(fixed.contains("\"The Customer pay\""));
    }

    #[test]
    fn ids_only_on_request() {
        let rm = resolve_one(&format!("{TERM}Actor client \"A\" : User\n"));
        let (index, _) = GlossaryIndex::build(&rm);
        let lex = Lexicon::builtin(Language::English).unwrap();
        assert!(check_glossary(&rm, &index, &lex, GlossaryOptions::default()).is_empty());
        let on = GlossaryOptions { scan_ids: true };
        assert_eq!(check_glossary(&rm, &index, &lex, on).len(), 1);
    }
}
