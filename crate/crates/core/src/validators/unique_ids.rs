use std::collections::{BTreeMap, BTreeSet};

use crate::model::*;
use crate::workspace::{EffectiveElement, ResolvedModel};

/// `RSL-V001`: element ids must be unique across the document, whatever the
/// element kind. Every occurrence is reported and linked to its siblings;
/// all but one occurrence are offered a rename.
pub fn check_unique_ids(rm: &ResolvedModel) -> Vec<Diagnostic> {
    let mut groups: BTreeMap<&str, Vec<&EffectiveElement>> = BTreeMap::new();
    for e in &rm.effective {
        groups.entry(e.element.id.as_str()).or_default().push(e);
    }
    let mut taken: BTreeSet<String> = rm.visible().map(|e| e.element.id.to_string()).collect();
    let mut out = Vec::new();
    for (id, group) in groups {
        if group.len() < 2 {
            continue;
        }
        let spans: Vec<SourceSpan> = group.iter().map(|e| id_anchor(e)).collect();
        // An included occurrence cannot be renamed here, so it keeps the id.
        let keeper = group.iter().position(|e| !e.is_local()).unwrap_or(0);
        let mut n = 2;
        for (i, e) in group.iter().enumerate() {
            let mut d = Diagnostic::error(
                codes::DUPLICATE_ID,
                format!(
                    "Duplicate ID '{id}': {} elements share this ID; IDs must be unique",
                    group.len()
                ),
                spans[i].clone(),
            );
            for (j, s) in spans.iter().enumerate() {
                if j != i {
                    let other = &group[j].element;
                    d = d.with_related(s.clone(), format!("{} '{id}' is also defined here", other.kind()));
                }
            }
            if i != keeper && e.is_local() {
                let new_id = loop {
                    let candidate = format!("{id}_{n}");
                    n += 1;
                    if !taken.contains(&candidate) {
                        break candidate;
                    }
                };
                taken.insert(new_id.clone());
                d = d.with_fix(QuickFix::new(
                    format!("Rename to '{new_id}'"),
                    vec![TextEdit::new(e.element.id_span.clone(), new_id)],
                ));
            }
            out.push(d);
        }
    }
    out
}

fn id_anchor(e: &EffectiveElement) -> SourceSpan {
    if e.is_local() {
        e.element.id_span.clone()
    } else {
        e.anchor().clone()
    }
}
