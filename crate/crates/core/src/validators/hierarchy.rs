use std::collections::{BTreeMap, BTreeSet};

use crate::model::*;
use crate::workspace::{EffectiveElement, ResolvedModel};

/// Strongly connected components (Tarjan), each listed in discovery order.
pub fn strongly_connected(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
    }
    struct State {
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        next: usize,
        out: Vec<Vec<usize>>,
    }
    let mut st = State {
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        next: 0,
        out: Vec::new(),
    };
    // iterative to stay safe on long chains
    for root in 0..n {
        if st.index[root].is_some() {
            continue;
        }
        let mut work: Vec<(usize, usize)> = vec![(root, 0)];
        while let Some(&mut (v, ref mut child)) = work.last_mut() {
            if *child == 0 && st.index[v].is_none() {
                st.index[v] = Some(st.next);
                st.low[v] = st.next;
                st.next += 1;
                st.stack.push(v);
                st.on_stack[v] = true;
            }
            if let Some(&w) = adj[v].get(*child) {
                *child += 1;
                match st.index[w] {
                    None => work.push((w, 0)),
                    Some(iw) if st.on_stack[w] => st.low[v] = st.low[v].min(iw),
                    Some(_) => {}
                }
                continue;
            }
            work.pop();
            if let Some(&(parent, _)) = work.last() {
                st.low[parent] = st.low[parent].min(st.low[v]);
            }
            if Some(st.low[v]) == st.index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = st.stack.pop().unwrap();
                    st.on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.reverse();
                st.out.push(comp);
            }
        }
    }
    st.out
}

/// Nodes lying on at least one cycle (self-loops included).
pub fn cycle_nodes(n: usize, edges: &[(usize, usize)]) -> BTreeSet<usize> {
    let loops: BTreeSet<usize> = edges.iter().filter(|(a, b)| a == b).map(|&(a, _)| a).collect();
    let mut out = BTreeSet::new();
    for comp in strongly_connected(n, edges) {
        if comp.len() > 1 || loops.contains(&comp[0]) {
            out.extend(comp);
        }
    }
    out
}

/// Deletes `span`; when nothing but whitespace would remain on its line the
/// whole line goes.
fn removal(source: &str, span: &SourceSpan, index: &LineIndex) -> TextEdit {
    let line_start = source[..span.byte_offset].rfind('\n').map_or(0, |i| i + 1);
    let line_end = source[span.end_offset()..]
        .find('\n')
        .map_or(source.len(), |i| span.end_offset() + i + 1);
    let before = &source[line_start..span.byte_offset];
    let after = &source[span.end_offset()..line_end];
    if before.trim().is_empty() && after.trim().is_empty() {
        return TextEdit::new(SourceSpan::new(span.file.clone(), index, line_start, line_end), "");
    }
    // drop one neighbouring space so that `[isA x]` becomes `[]`
    let (mut s, e) = (span.byte_offset, span.end_offset());
    if source[..s].ends_with(' ') && !source[e..].starts_with(']') {
        s -= 1;
    }
    TextEdit::new(SourceSpan::new(span.file.clone(), index, s, e), "")
}

/// `RSL-V003`: `isA` (per kind) and `partOf` relations must not loop. Each
/// local element on a cycle gets an error at its relation.
///
/// Every diagnostic of a cycle carries the same fix: drop the relation of the
/// cycle's last element in document order, which breaks that cycle.
pub fn check_hierarchy_cycles(rm: &ResolvedModel) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let graphs = [
        (ElementKind::Actor, RelationKind::IsA),
        (ElementKind::DataEntity, RelationKind::IsA),
        (ElementKind::DataEntity, RelationKind::PartOf),
    ];
    for (kind, rel_kind) in graphs {
        let nodes: Vec<&EffectiveElement> =
            rm.effective.iter().filter(|e| e.element.kind() == kind).collect();
        let mut by_id: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
        for (i, e) in nodes.iter().enumerate() {
            by_id.entry(e.element.id.as_str()).or_default().push(i);
        }
        let mut edges = Vec::new();
        for (i, e) in nodes.iter().enumerate() {
            for (k, rel) in e.element.relations() {
                if k == rel_kind {
                    for &j in by_id.get(rel.target.id.as_str()).into_iter().flatten() {
                        edges.push((i, j));
                    }
                }
            }
        }
        for comp in strongly_connected(nodes.len(), &edges) {
            let cyclic = comp.len() > 1 || edges.contains(&(comp[0], comp[0]));
            if !cyclic {
                continue;
            }
            let members: BTreeSet<usize> = comp.iter().copied().collect();
            let relation_in_cycle = |i: usize| {
                nodes[i].element.relations().into_iter().find(|(k, r)| {
                    *k == rel_kind
                        && by_id
                            .get(r.target.id.as_str())
                            .is_some_and(|js| js.iter().any(|j| members.contains(j)))
                })
            };
            let breaker = members
                .iter()
                .copied()
                .filter(|&i| nodes[i].is_local())
                .max_by_key(|&i| nodes[i].element.span.byte_offset)
                .and_then(|i| relation_in_cycle(i).map(|(_, r)| (i, r)));
            let fix = breaker.map(|(i, r)| {
                let e = &nodes[i].element;
                QuickFix::new(
                    format!(
                        "Remove '{} {}' from {kind} '{}'",
                        rel_kind.keyword(),
                        r.target.id,
                        e.id
                    ),
                    vec![removal(&rm.source, &r.span, &rm.index)],
                )
            });
            for &i in &members {
                let e = nodes[i];
                if !e.is_local() {
                    continue;
                }
                let Some((_, rel)) = relation_in_cycle(i) else {
                    continue;
                };
                let mut d = Diagnostic::error(
                    codes::HIERARCHY_CYCLE,
                    format!("Cycle in hierarchy of {kind} '{}'", e.element.id),
                    rel.span.clone(),
                );
                if let Some(f) = &fix {
                    d = d.with_fix(f.clone());
                }
                out.push(d);
            }
        }
    }
    out
}
