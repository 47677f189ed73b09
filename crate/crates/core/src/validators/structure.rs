use std::collections::BTreeMap;

use crate::model::*;
use crate::workspace::ResolvedModel;

/// `RSL-V004` repeated attribute ids within an entity and `RSL-V005` more
/// than one primary key.
pub fn check_attributes(rm: &ResolvedModel) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for e in rm.local_elements() {
        let ElementBody::DataEntity(d) = &e.body else {
            continue;
        };
        let mut seen: BTreeMap<&str, &Attribute> = BTreeMap::new();
        for a in &d.attributes {
            if let Some(first) = seen.insert(a.id.as_str(), a) {
                out.push(
                    Diagnostic::error(
                        codes::DUPLICATE_ATTRIBUTE,
                        format!("Attribute '{}' is defined more than once in DataEntity '{}'", a.id, e.id),
                        a.span.clone(),
                    )
                    .with_related(first.span.clone(), "first definition"),
                );
            }
        }
        let keys: Vec<&Attribute> = d
            .attributes
            .iter()
            .filter(|a| a.constraints.contains(&Constraint::PrimaryKey))
            .collect();
        for a in keys.iter().skip(1) {
            out.push(
                Diagnostic::error(
                    codes::MULTIPLE_PRIMARY_KEYS,
                    format!("DataEntity '{}' declares more than one PrimaryKey attribute", e.id),
                    a.span.clone(),
                )
                .with_related(keys[0].span.clone(), "first primary key"),
            );
        }
    }
    out
}

/// `RSL-C005`: a document declares its language at most once.
pub fn check_language_declarations(rm: &ResolvedModel) -> Vec<Diagnostic> {
    let decls: Vec<&Element> = rm
        .model
        .elements_of(ElementKind::LinguisticLanguage)
        .collect();
    decls
        .iter()
        .skip(1)
        .map(|e| {
            Diagnostic::error(
                codes::DUPLICATE_LANGUAGE,
                "Only one LinguisticLanguage may be declared per document; this one is ignored",
                e.span.clone(),
            )
            .with_related(decls[0].span.clone(), "language declared here")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validators::tests::resolve_one;

    #[test]
    fn attribute_invariants() {
        let src = "DataEntity e \"E\" : Document [\n  attribute a \"A\" : Integer [constraints (PrimaryKey)]\n  attribute a \"A2\" : Integer\n  attribute b \"B\" : Integer [constraints (PrimaryKey)]\n]\n";
        let codes: Vec<_> = check_attributes(&resolve_one(src)).iter().map(|d| d.code).collect();
        assert_eq!(codes, [codes::DUPLICATE_ATTRIBUTE, codes::MULTIPLE_PRIMARY_KEYS]);
        assert!(check_attributes(&resolve_one(include_str!("../../tests/fixtures/invoice_browse.rsl"))).is_empty());
    }

    #[test]
    fn one_language_per_document() {
        let src = "LinguisticLanguage l_1 : English\nLinguisticLanguage l_2 : Portuguese\n";
        let rm = resolve_one(src);
        let d = check_language_declarations(&rm);
        assert_eq!(d.len(), 1);
        assert_eq!(rm.language(), Language::English);
    }
}
