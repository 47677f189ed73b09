//! Applies `LinguisticRule` elements to the fragments they target.

use std::collections::BTreeSet;

use crate::linguistic::analyze::{analyze, analyze_sentences};
use crate::linguistic::lexicon::{Lexicon, LexiconSet};
use crate::linguistic::matcher::{match_pattern, Expectation, FragmentIndex, MatchResult};
use crate::model::*;
use crate::workspace::{EffectiveElement, ResolvedModel};

/// Rules in effect for a model: its own and included ones, in effective order.
pub fn effective_rules(rm: &ResolvedModel) -> Vec<&EffectiveElement> {
    rm.effective
        .iter()
        .filter(|e| e.element.kind() == ElementKind::LinguisticRule)
        .collect()
}

/// Runs the effective rules with the lexicon of the document's language.
/// Reports `RSL-C004` and skips the rules when no lexicon is available.
pub fn check_linguistics(rm: &ResolvedModel, lexicons: &LexiconSet) -> Vec<Diagnostic> {
    let rules = effective_rules(rm);
    if rules.is_empty() {
        return Vec::new();
    }
    let language = rm.language();
    match lexicons.get(language) {
        Some(lex) => check_linguistic_rules(rm, &rules, &lex),
        None => {
            let span = rm
                .model
                .language_decl()
                .map_or_else(|| rm.end_of_file(), |(e, _)| e.span.clone());
            vec![Diagnostic::error(
                codes::MISSING_LEXICON,
                format!("No lexicon available for {language}; linguistic rules were not checked"),
                span,
            )]
        }
    }
}

pub fn check_linguistic_rules(
    rm: &ResolvedModel,
    rules: &[&EffectiveElement],
    lex: &Lexicon,
) -> Vec<Diagnostic> {
    let index = FragmentIndex::new(rm.visible().map(|e| &e.element));
    let mut out = Vec::new();
    for rule_el in rules {
        let Some(rule) = rule_el.element.as_rule() else {
            continue;
        };
        let prop = &rule.property;
        if !prop.target.has_fragment(prop.fragment) {
            let span = if rule_el.is_local() {
                prop.span.clone()
            } else {
                rule_el.anchor().clone()
            };
            out.push(Diagnostic::error(
                codes::UNKNOWN_FRAGMENT,
                format!(
                    "{} has no '{}' fragment; rule '{}' cannot be applied",
                    prop.target, prop.fragment, rule_el.element.id
                ),
                span,
            ));
            continue;
        }
        for target in rm.local_elements().filter(|e| e.kind() == prop.target) {
            let Some((text, literal)) = target.fragment(prop.fragment) else {
                continue;
            };
            let sentences = if prop.fragment == Fragment::Description {
                analyze_sentences(text, lex)
            } else {
                vec![analyze(text, lex)]
            };
            for tokens in &sentences {
                let MatchResult::Failed { expected, .. } = match_pattern(&rule.pattern, tokens, &index)
                else {
                    continue;
                };
                let span = match (tokens.first(), tokens.last()) {
                    (Some(a), Some(b)) if sentences.len() > 1 => {
                        rm.sub_span(literal, a.range.start..b.range.end)
                    }
                    _ => literal.clone(),
                };
                out.push(violation(rm, rule, &expected, span));
            }
        }
    }
    out
}

fn violation(
    rm: &ResolvedModel,
    rule: &LinguisticRuleDecl,
    expected: &Expectation,
    span: SourceSpan,
) -> Diagnostic {
    let message = format!(
        "This text must follow the pattern '{}'\n{expected}",
        rule.pattern
    );
    let d = Diagnostic::new(rule.severity, codes::LINGUISTIC_RULE, message, span);
    match expected {
        Expectation::Fragment {
            kind,
            fragment: Fragment::Name,
            candidate: Some(candidate),
        } => match create_element_fix(rm, *kind, candidate) {
            Some(fix) => d.with_fix(fix),
            None => d,
        },
        _ => d,
    }
}

/// `Invoice` → `Invoice`, `sales order` → `SalesOrder`, `Fatura Única` → `FaturaUnica`.
pub fn camel_case(text: &str) -> String {
    deunicode::deunicode(text)
        .split(|c: char| !c.is_ascii_alphanumeric())
        .filter(|w| !w.is_empty())
        .map(|w| {
            let mut chars = w.chars();
            let first = chars.next().unwrap().to_ascii_uppercase();
            std::iter::once(first).chain(chars).collect::<String>()
        })
        .collect()
}

/// A fresh id for a new element of `kind` named `name`.
pub fn fresh_id(kind: ElementKind, name: &str, taken: &BTreeSet<&str>) -> Identifier {
    let mut camel = camel_case(name);
    if camel.is_empty() {
        camel = "Element".into();
    }
    let base = format!("{}_{camel}", kind.id_prefix());
    let mut id = base.clone();
    let mut n = 2;
    while taken.contains(id.as_str()) {
        id = format!("{base}_{n}");
        n += 1;
    }
    Identifier::new(id).expect("generated ids are well formed")
}

/// Smallest element of `kind` that can be printed and parsed back.
pub fn minimal_element(kind: ElementKind, id: Identifier, name: &str) -> Option<Element> {
    let other = || Identifier::new("Other").unwrap();
    let body = match kind {
        ElementKind::DataEntity => ElementBody::DataEntity(DataEntity {
            entity_type: other(),
            attributes: Vec::new(),
            is_a: None,
            part_of: None,
        }),
        ElementKind::Actor => ElementBody::Actor(Actor {
            actor_type: other(),
            is_a: None,
        }),
        ElementKind::UseCase => ElementBody::UseCase(UseCase {
            uc_type: other(),
            primary_actor: None,
            data_entity: None,
            actions: Vec::new(),
            extension_points: Vec::new(),
            extends: None,
            precondition: None,
        }),
        ElementKind::Term => ElementBody::Term(Term {
            pos: crate::linguistic::PosCategory::Noun,
            synonyms: Vec::new(),
        }),
        ElementKind::Stakeholder => ElementBody::Stakeholder(Stakeholder {
            stakeholder_type: other(),
            sub_type: None,
        }),
        ElementKind::FunctionalRequirement => {
            ElementBody::FunctionalRequirement(FunctionalRequirement { fr_type: other() })
        }
        ElementKind::LinguisticRule | ElementKind::LinguisticLanguage => return None,
    };
    Some(Element::new(id, Some(name), body))
}

/// Quick fix appending a new `kind` element named `name` to the document.
pub fn create_element_fix(rm: &ResolvedModel, kind: ElementKind, name: &str) -> Option<QuickFix> {
    let taken: BTreeSet<&str> = rm.visible().map(|e| e.element.id.as_str()).collect();
    let element = minimal_element(kind, fresh_id(kind, name, &taken), name)?;
    let sep = if rm.source.is_empty() {
        ""
    } else if rm.source.ends_with('\n') {
        "\n"
    } else {
        "\n\n"
    };
    let text = format!("{sep}{}\n", print_element(&element));
    Some(QuickFix::new(
        format!("Create '{kind}' with name '{name}'"),
        vec![TextEdit::new(rm.end_of_file(), text)],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workspace::{resolve, Workspace};

    const RULE: &str = r#"LinguisticRule l_r_UseCase_Name "Use case names" : Syntax [
  property UseCase.name
  pattern (Verb) + (DataEntity.name)
  severity Error
]
"#;

    fn check(src: &str) -> (ResolvedModel, Vec<Diagnostic>) {
        let mut ws = Workspace::new();
        ws.add_source("S", "s.rsl", src);
        let rm = resolve(ws.system("S").unwrap(), &ws);
        let d = check_linguistics(&rm, &LexiconSet::new());
        (rm, d)
    }

    #[test]
    fn missing_entity_gets_create_fix() {
        let src = format!("{RULE}\nUseCase uc_1 \"Print Invoice\" : EntitiesPrint\n");
        let (rm, d) = check(&src);
        assert_eq!(d.len(), 1);
        let lines: Vec<&str> = d[0].message.lines().collect();
        assert_eq!(
            lines,
            [
                "This text must follow the pattern '(Verb) + (DataEntity.name)'",
                "The word 'Invoice' is expected to be the name of a/an 'DataEntity'"
            ]
        );
        assert_eq!(d[0].severity, Severity::Error);
        assert_eq!(&src[d[0].span.range()], "\"Print Invoice\"");
        let fix = &d[0].fixes[0];
        assert_eq!(fix.title, "Create 'DataEntity' with name 'Invoice'");
        let fixed = apply_edits(&rm.source, &fix.edits).unwrap();
        assert!(fixed.ends_with("\nDataEntity ec_Invoice \"Invoice\" : Other []\n"));
        let (_, after) = check(&fixed);
        assert!(after.is_empty(), "{after:?}");
    }

    #[test]
    fn compliant_use_case_passes() {
        let src = format!("{RULE}\nDataEntity e_Invoice \"Invoice\" : Document []\n\nUseCase uc_1 \"Print Invoice\" : EntitiesPrint\n");
        assert!(check(&src).1.is_empty());
    }

    #[test]
    fn pos_failure_has_no_fix() {
        let rule = "LinguisticRule l_a \"Actors\" : Syntax [\n  property Actor.name\n  pattern (Noun | ProperNoun)\n  severity Info\n]\n";
        let (_, ok) = check(&format!("{rule}Actor a_M \"Manager\" : User\n"));
        assert!(ok.is_empty());
        let (_, bad) = check(&format!("{rule}Actor a_M \"The Operator\" : User\n"));
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].severity, Severity::Info);
        assert!(bad[0].message.ends_with("Expected one of (Noun | ProperNoun)"));
        assert!(bad[0].fixes.is_empty());
    }

    #[test]
    fn portuguese_dispatch() {
        let src = "LinguisticLanguage l_Portuguese : Portuguese\n\nLinguisticRule l_r \"r\" : Syntax [\n  property UseCase.name\n  pattern (Verb) + (DataEntity.name)\n]\n\nUseCase uc_1 \"Criar Fatura\" : EntitiesCreate\n";
        let (rm, d) = check(src);
        assert_eq!(d.len(), 1, "{d:?}");
        assert_eq!(d[0].fixes[0].title, "Create 'DataEntity' with name 'Fatura'");
        // "Criar" is unknown to the English lexicon; under English the first
        // part fails instead, so dispatch is observable
        let en = check_linguistic_rules(
            &rm,
            &effective_rules(&rm),
            &Lexicon::builtin(Language::English).unwrap(),
        );
        assert!(en[0].message.ends_with("Expected a Verb"));
    }

    #[test]
    fn missing_lexicon_skips_rules() {
        let src = format!("LinguisticLanguage l_De : German\n{RULE}UseCase uc_1 \"Rechnung drucken\" : X\n");
        let (_, d) = check(&src);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].code, codes::MISSING_LEXICON);
    }

    #[test]
    fn unknown_fragment_is_a_configuration_error() {
        let src = "LinguisticRule l_r \"r\" : Syntax [\n  property LinguisticLanguage.name\n  pattern (Noun)\n]\n";
        let (_, d) = check(src);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].code, codes::UNKNOWN_FRAGMENT);
    }

    #[test]
    fn description_sentences_are_checked_separately() {
        let rule = "LinguisticRule l_fr \"FRs\" : Syntax [\n  property FunctionalRequirement.description\n  pattern \"System\" + \"shall\" + (Verb) + (DataEntity.name)\n  severity Warning\n]\n\nDataEntity e_Invoice \"Invoice\" : Document []\n\n";
        let src = format!("{rule}FunctionalRequirement fr_1 \"Print\" : Functional [\n  description \"System shall print Invoice. System shall print Receipt.\"\n]\n");
        let (_, d) = check(&src);
        assert_eq!(d.len(), 1);
        assert_eq!(&src[d[0].span.range()], "System shall print Receipt");
        assert_eq!(d[0].fixes[0].title, "Create 'DataEntity' with name 'Receipt'");
    }

    #[test]
    fn ids_are_camel_cased_and_unique() {
        let taken = BTreeSet::from(["ec_SalesOrder"]);
        assert_eq!(fresh_id(ElementKind::DataEntity, "sales order", &taken).as_str(), "ec_SalesOrder_2");
        assert_eq!(fresh_id(ElementKind::Actor, "Fatura Única", &taken).as_str(), "a_FaturaUnica");
        assert_eq!(fresh_id(ElementKind::Term, "!!", &taken).as_str(), "el_Element");
    }
}
