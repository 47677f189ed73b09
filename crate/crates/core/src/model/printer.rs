use std::fmt::Write;

use crate::linguistic::pattern::escape;
use crate::model::{Element, ElementBody, IncludeDecl, IncludeMode, Model, Text};

const INDENT: &str = "  ";

/// Prints a model in canonical concrete syntax.
///
/// Includes come first, then elements in document order separated by
/// blank lines. Parsing the result yields a structurally equal model.
pub fn print_model(model: &Model) -> String {
    let mut out = String::new();
    for inc in &model.includes {
        out.push_str(&print_include(inc));
        out.push('\n');
    }
    for (i, e) in model.elements.iter().enumerate() {
        if i > 0 || !model.includes.is_empty() {
            out.push('\n');
        }
        out.push_str(&print_element(e));
        out.push('\n');
    }
    out
}

pub fn print_include(inc: &IncludeDecl) -> String {
    let mut s = String::from(inc.mode.keyword());
    if let Some(k) = inc.element_kind {
        write!(s, " {k}").unwrap();
    }
    write!(s, " fromSystem {}", inc.from_system).unwrap();
    if let Some(id) = &inc.element_id {
        write!(s, " element {id}").unwrap();
    }
    debug_assert!(inc.mode != IncludeMode::Include || inc.element_id.is_some());
    s
}

fn quoted(t: &Text) -> String {
    format!("\"{}\"", escape(&t.value))
}

/// Prints one element without a trailing newline.
pub fn print_element(e: &Element) -> String {
    let mut head = format!("{} {}", e.kind(), e.id);
    if let Some(name) = &e.name {
        write!(head, " {}", quoted(name)).unwrap();
    }
    let mut items: Vec<String> = Vec::new();
    let type_token = match &e.body {
        ElementBody::DataEntity(d) => {
            for a in &d.attributes {
                let mut line = format!(
                    "attribute {} {} : {}",
                    a.id,
                    quoted(&a.name),
                    a.data_type
                );
                let mut extra = Vec::new();
                if !a.constraints.is_empty() {
                    let cs: Vec<_> = a.constraints.iter().map(|c| c.as_str()).collect();
                    extra.push(format!("constraints ({})", cs.join(", ")));
                }
                if let Some(d) = &a.default_value {
                    extra.push(format!("defaultValue {}", quoted(d)));
                }
                if !extra.is_empty() {
                    write!(line, " [{}]", extra.join(" ")).unwrap();
                }
                items.push(line);
            }
            if let Some(r) = &d.is_a {
                items.push(format!("isA {}", r.target.id));
            }
            if let Some(r) = &d.part_of {
                items.push(format!("partOf {}", r.target.id));
            }
            d.entity_type.to_string()
        }
        ElementBody::Actor(a) => {
            if let Some(r) = &a.is_a {
                items.push(format!("isA {}", r.target.id));
            }
            a.actor_type.to_string()
        }
        ElementBody::UseCase(u) => {
            if let Some(r) = &u.primary_actor {
                items.push(format!("primaryActor {}", r.id));
            }
            if let Some(r) = &u.data_entity {
                items.push(format!("dataEntity {}", r.id));
            }
            if !u.actions.is_empty() {
                let xs: Vec<_> = u.actions.iter().map(|a| a.as_str()).collect();
                items.push(format!("actions {}", xs.join(", ")));
            }
            if !u.extension_points.is_empty() {
                let xs: Vec<_> = u.extension_points.iter().map(|a| a.as_str()).collect();
                items.push(format!("extensionPoints {}", xs.join(", ")));
            }
            if let Some(x) = &u.extends {
                items.push(format!(
                    "extends {} onExtensionPoint {}",
                    x.use_case.id, x.extension_point.id
                ));
            }
            if let Some(p) = &u.precondition {
                items.push(format!("precondition {}", quoted(p)));
            }
            u.uc_type.to_string()
        }
        ElementBody::Term(t) => {
            if !t.synonyms.is_empty() {
                let xs: Vec<_> = t.synonyms.iter().map(quoted).collect();
                items.push(format!("synonyms {}", xs.join(", ")));
            }
            t.pos.to_string()
        }
        ElementBody::LinguisticRule(r) => {
            items.push(format!(
                "property {}.{}",
                r.property.target, r.property.fragment
            ));
            items.push(format!("pattern {}", r.pattern));
            items.push(format!("severity {}", r.severity));
            r.rule_kind.to_string()
        }
        ElementBody::LinguisticLanguage(l) => l.language.to_string(),
        ElementBody::Stakeholder(s) => match &s.sub_type {
            Some(sub) => format!("{}.{}", s.stakeholder_type, sub),
            None => s.stakeholder_type.to_string(),
        },
        ElementBody::FunctionalRequirement(f) => f.fr_type.to_string(),
    };
    if let Some(d) = &e.description {
        items.push(format!("description {}", quoted(d)));
    }
    write!(head, " : {type_token}").unwrap();
    if items.is_empty() {
        if matches!(e.body, ElementBody::DataEntity(_)) {
            head.push_str(" []");
        }
        return head;
    }
    head.push_str(" [\n");
    for item in items {
        head.push_str(INDENT);
        head.push_str(&item);
        head.push('\n');
    }
    head.push(']');
    head
}
