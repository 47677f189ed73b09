use std::fmt::Write;

use crate::model::*;
use crate::workspace::ResolvedModel;

fn reference(rm: &ResolvedModel, kind: ElementKind, id: &Identifier) -> String {
    match rm.lookup(kind, id.as_str()).and_then(|e| e.name()) {
        Some(name) => format!("{name} ({id})"),
        None => id.to_string(),
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

/// One `== Kind: name (id) ==` block per element, fields as `key: value`
/// lines, blocks separated by a blank line.
pub fn generate_text(rm: &ResolvedModel) -> String {
    let blocks: Vec<String> = rm.elements().map(|e| block(rm, e)).collect();
    blocks.join("\n")
}

fn block(rm: &ResolvedModel, e: &Element) -> String {
    let mut fields: Vec<(&str, String)> = Vec::new();
    let mut field = |k: &'static str, v: String| fields.push((k, v));
    match &e.body {
        ElementBody::DataEntity(d) => {
            field("type", d.entity_type.to_string());
            if let Some(r) = &d.is_a {
                field("isA", reference(rm, ElementKind::DataEntity, &r.target.id));
            }
            if let Some(r) = &d.part_of {
                field("partOf", reference(rm, ElementKind::DataEntity, &r.target.id));
            }
            for a in &d.attributes {
                let mut v = format!("{} ({}): {}", a.name.value, a.id, a.data_type);
                if !a.constraints.is_empty() {
                    write!(v, " [{}]", join(&a.constraints)).unwrap();
                }
                if let Some(d) = &a.default_value {
                    write!(v, " = \"{}\"", d.value).unwrap();
                }
                field("attribute", v);
            }
        }
        ElementBody::Actor(a) => {
            field("type", a.actor_type.to_string());
            if let Some(r) = &a.is_a {
                field("isA", reference(rm, ElementKind::Actor, &r.target.id));
            }
        }
        ElementBody::UseCase(u) => {
            field("type", u.uc_type.to_string());
            if let Some(r) = &u.primary_actor {
                field("primaryActor", reference(rm, ElementKind::Actor, &r.id));
            }
            if let Some(r) = &u.data_entity {
                field("dataEntity", reference(rm, ElementKind::DataEntity, &r.id));
            }
            if !u.actions.is_empty() {
                field("actions", join(&u.actions));
            }
            if !u.extension_points.is_empty() {
                field("extensionPoints", join(&u.extension_points));
            }
            if let Some(x) = &u.extends {
                field(
                    "extends",
                    format!(
                        "{} on {}",
                        reference(rm, ElementKind::UseCase, &x.use_case.id),
                        x.extension_point.id
                    ),
                );
            }
            if let Some(p) = &u.precondition {
                field("precondition", p.value.clone());
            }
        }
        ElementBody::Term(t) => {
            field("type", t.pos.to_string());
            if !t.synonyms.is_empty() {
                let s: Vec<&str> = t.synonyms.iter().map(|s| s.value.as_str()).collect();
                field("synonyms", join(&s));
            }
        }
        ElementBody::LinguisticRule(r) => {
            field("type", r.rule_kind.to_string());
            field("property", format!("{}.{}", r.property.target, r.property.fragment));
            field("pattern", r.pattern.to_string());
            field("severity", r.severity.as_str().to_string());
        }
        ElementBody::LinguisticLanguage(l) => field("language", l.language.to_string()),
        ElementBody::Stakeholder(s) => {
            field("type", s.stakeholder_type.to_string());
            if let Some(sub) = &s.sub_type {
                field("subType", sub.to_string());
            }
        }
        ElementBody::FunctionalRequirement(f) => field("type", f.fr_type.to_string()),
    }
    if let Some(d) = e.description() {
        fields.insert(1.min(fields.len()), ("description", d.to_string()));
    }
    let mut out = format!("== {}: {} ({}) ==\n", e.kind(), e.name().unwrap_or(e.id.as_str()), e.id);
    for (k, v) in fields {
        writeln!(out, "{k}: {v}").unwrap();
    }
    out
}
