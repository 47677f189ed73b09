#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rsl::validators::{check_document, CheckOptions};
use rsl::docgen::{generate_json, JsonModelDocument};
use rsl::{parse, print_model, resolve, Diagnostic, Model, ResolvedModel, Severity, Workspace};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn fixture_src(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap()
}

/// `.rsl` files of the fixture corpus.
pub fn corpus() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(fixture(""))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "rsl"))
        .collect();
    v.sort();
    v
}

/// Checks `main` (system `Main`) next to the named library systems.
pub fn check_with(main: &str, libs: &[(&str, &str)]) -> (ResolvedModel, Vec<Diagnostic>) {
    let mut ws = Workspace::new();
    let i = ws.add_source("Main", "main.rsl", main);
    for (name, src) in libs {
        ws.add_source(name, format!("{name}.rsl"), src);
    }
    check_document(ws.document(i), &ws, &CheckOptions::default())
}

pub fn check(src: &str) -> (ResolvedModel, Vec<Diagnostic>) {
    check_with(src, &[])
}

/// The fixture corpus as a workspace: `SystemRules` is the shared library.
pub fn check_fixture(name: &str) -> (ResolvedModel, Vec<Diagnostic>) {
    let rules = fixture_src("system_rules.rsl");
    check_with(&fixture_src(name), &[("SystemRules", &rules)])
}

pub fn count(diags: &[Diagnostic], code: &str) -> usize {
    diags.iter().filter(|d| d.code == code).count()
}

pub fn serious(diags: &[Diagnostic]) -> Vec<&Diagnostic> {
    diags.iter().filter(|d| d.severity != Severity::Info).collect()
}

pub struct CliRun {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn cli<S: AsRef<str>>(args: &[S]) -> CliRun {
    let mut argv = vec!["rsl".to_string()];
    argv.extend(args.iter().map(|s| s.as_ref().to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = rsl::cli::run(argv, &mut out, &mut err);
    CliRun {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

// ---- random specifications ----

const WORDS: &[&str] = &[
    "Invoice", "customer", "print", "Order", "approve", "the", "new", "product", "line", "pay",
    "Manager", "report", "São", "fatura", "x1", "2024",
];

fn ident() -> impl Strategy<Value = String> {
    "[a-z][a-zA-Z0-9_]{0,6}"
}

fn words() -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(WORDS), 0..4).prop_map(|w| w.join(" "))
}

fn text() -> impl Strategy<Value = String> {
    prop_oneof![
        4 => words(),
        1 => "[ -~]{0,12}",
        1 => Just("with \"quotes\" and \\ slash".to_string()),
    ]
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn opt<T: std::fmt::Debug + Clone + 'static>(s: impl Strategy<Value = T> + 'static) -> BoxedStrategy<Option<T>> {
    prop::option::of(s).boxed()
}

fn items(parts: Vec<Option<String>>) -> String {
    let parts: Vec<String> = parts.into_iter().flatten().collect();
    if parts.is_empty() {
        String::new()
    } else {
        format!(" [\n  {}\n]", parts.join("\n  "))
    }
}

fn list(xs: &[String]) -> Option<String> {
    (!xs.is_empty()).then(|| xs.join(", "))
}

fn attribute(i: usize) -> impl Strategy<Value = String> {
    (
        text(),
        prop::sample::select(&["Integer", "Decimal", "String", "Boolean", "Date", "DateTime"][..]),
        prop::sample::subsequence(vec!["PrimaryKey", "NotNull", "Unique"], 0..3),
        opt(text()),
    )
        .prop_map(move |(name, ty, cs, def)| {
            let mut extra = Vec::new();
            if !cs.is_empty() {
                extra.push(format!("constraints ({})", cs.join(", ")));
            }
            if let Some(d) = def {
                extra.push(format!("defaultValue {}", quote(&d)));
            }
            let tail = if extra.is_empty() { String::new() } else { format!(" [{}]", extra.join(" ")) };
            format!("attribute at{i} {} : {ty}{tail}", quote(&name))
        })
}

fn pattern() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        prop::sample::select(&["(Verb)", "(Noun)", "(ProperNoun)", "(Adjective)", "(Determiner)"][..])
            .prop_map(String::from),
        prop::sample::select(&["\"System\"", "\"shall\""][..]).prop_map(String::from),
        prop::sample::select(&["(DataEntity.name)", "(Actor.name)", "(UseCase.id)"][..])
            .prop_map(String::from),
        Just("(Noun | ProperNoun)".to_string()),
    ];
    prop::collection::vec(leaf, 1..4).prop_map(|v| v.join(" + "))
}

fn element(i: usize) -> BoxedStrategy<String> {
    let name = opt(text());
    let desc = opt(text())
        .prop_map(|d| d.map(|d| format!("description {}", quote(&d))))
        .boxed();
    let named = move |kind: &str, prefix: &str, n: &Option<String>| {
        let n = n.as_ref().map(|n| format!(" {}", quote(n))).unwrap_or_default();
        format!("{kind} {prefix}{i}{n}")
    };
    prop_oneof![
        (name.clone(), ident(), prop::collection::vec(attribute(i), 0..3), opt(ident()), opt(ident()), desc.clone())
            .prop_map(move |(n, ty, attrs, isa, part, d)| {
                let mut parts: Vec<Option<String>> = attrs.into_iter().map(Some).collect();
                parts.push(isa.map(|x| format!("isA {x}")));
                parts.push(part.map(|x| format!("partOf {x}")));
                parts.push(d);
                let body = items(parts);
                let body = if body.is_empty() { " []".to_string() } else { body };
                format!("{} : {ty}{body}", named("DataEntity", "e_", &n))
            }),
        (name.clone(), ident(), opt(ident()), desc.clone()).prop_map(move |(n, ty, isa, d)| {
            format!("{} : {ty}{}", named("Actor", "a_", &n), items(vec![isa.map(|x| format!("isA {x}")), d]))
        }),
        (
            name.clone(),
            ident(),
            opt(ident()),
            opt(ident()),
            prop::collection::vec(ident(), 0..3),
            prop::collection::vec(ident(), 0..2),
            opt((ident(), ident())),
            opt(text()),
            desc.clone()
        )
            .prop_map(move |(n, ty, pa, de, acts, xps, ext, pre, d)| {
                let parts = vec![
                    pa.map(|x| format!("primaryActor {x}")),
                    de.map(|x| format!("dataEntity {x}")),
                    list(&acts).map(|x| format!("actions {x}")),
                    list(&xps).map(|x| format!("extensionPoints {x}")),
                    ext.map(|(u, p)| format!("extends {u} onExtensionPoint {p}")),
                    pre.map(|p| format!("precondition {}", quote(&p))),
                    d,
                ];
                format!("{} : {ty}{}", named("UseCase", "uc_", &n), items(parts))
            }),
        (name.clone(), prop::sample::select(&["Noun", "Verb", "Adjective"][..]), prop::collection::vec(words(), 0..3), desc.clone())
            .prop_map(move |(n, pos, syn, d)| {
                let syn: Vec<String> = syn.iter().map(|s| quote(s)).collect();
                let parts = vec![list(&syn).map(|x| format!("synonyms {x}")), d];
                format!("{} : {pos}{}", named("Term", "t_", &n), items(parts))
            }),
        (
            name.clone(),
            prop::sample::select(&["DataEntity.name", "Actor.name", "UseCase.name", "FunctionalRequirement.description", "UseCase.id"][..]),
            pattern(),
            prop::sample::select(&["Error", "Warning", "Info"][..])
        )
            .prop_map(move |(n, prop, pat, sev)| {
                let parts = vec![
                    Some(format!("property {prop}")),
                    Some(format!("pattern {pat}")),
                    Some(format!("severity {sev}")),
                ];
                format!("{} : Syntax{}", named("LinguisticRule", "l_r_", &n), items(parts))
            }),
        (name.clone(), ident(), opt(ident()), desc.clone()).prop_map(move |(n, ty, sub, d)| {
            let ty = match sub {
                Some(s) => format!("{ty}.{s}"),
                None => ty,
            };
            format!("{} : {ty}{}", named("Stakeholder", "stk_", &n), items(vec![d]))
        }),
        (name, ident(), desc).prop_map(move |(n, ty, d)| {
            format!("{} : {ty}{}", named("FunctionalRequirement", "fr_", &n), items(vec![d]))
        }),
    ]
    .boxed()
}

fn include() -> impl Strategy<Value = String> {
    prop_oneof![
        (ident(), ident()).prop_map(|(s, e)| format!("Include Actor fromSystem {s} element {e}")),
        (opt(prop::sample::select(&["Actor", "LinguisticRule", "DataEntity"][..])), ident())
            .prop_map(|(k, s)| match k {
                Some(k) => format!("IncludeAll {k} fromSystem {s}"),
                None => format!("IncludeAll fromSystem {s}"),
            }),
        (ident(), opt(ident())).prop_map(|(s, e)| match e {
            Some(e) => format!("Import DataEntity fromSystem {s} element {e}"),
            None => format!("Import fromSystem {s}"),
        }),
    ]
}

/// Source text of a random, syntactically valid specification.
pub fn arb_document() -> impl Strategy<Value = String> {
    (
        prop::collection::vec(include(), 0..3),
        opt(prop::sample::select(&["English", "Portuguese", "German"][..])),
        (0usize..10).prop_flat_map(|n| (0..n).map(element).collect::<Vec<_>>()),
    )
        .prop_map(|(incs, lang, elems)| {
            let mut s = String::new();
            for i in incs {
                s.push_str(&i);
                s.push('\n');
            }
            if let Some(l) = lang {
                s.push_str(&format!("LinguisticLanguage l_Lang : {l}\n"));
            }
            for e in elems {
                s.push('\n');
                s.push_str(&e);
                s.push('\n');
            }
            s
        })
}

// ---- round trips ----

fn parse_clean(src: &str) -> Result<Model, String> {
    let (m, d) = parse(src, "t.rsl");
    if d.is_empty() {
        Ok(m)
    } else {
        Err(format!("{src}\n{d:#?}"))
    }
}

fn resolve_alone(src: &str) -> ResolvedModel {
    let mut ws = Workspace::new();
    let i = ws.add_source("S", "t.rsl", src);
    resolve(ws.document(i), &ws)
}

/// parse/print and JSON generate/parse round trips of one source text.
pub fn round_trip(src: &str) -> Result<(), String> {
    let m = parse_clean(src)?;
    let printed = print_model(&m);
    let again = parse_clean(&printed)?;
    if again.structure() != m.structure() {
        return Err(format!("reparsed model differs; printed:\n{printed}"));
    }
    if print_model(&again) != printed {
        return Err(format!("printing is not stable:\n{printed}"));
    }
    let rm = resolve_alone(src);
    let json = generate_json(&rm);
    let back: JsonModelDocument = serde_json::from_str(&json).map_err(|e| e.to_string())?;
    if back != JsonModelDocument::build(&rm) {
        return Err(format!("JSON does not read back:\n{json}"));
    }
    if generate_json(&resolve_alone(&printed)) != json {
        return Err(format!("JSON changes after printing:\n{printed}"));
    }
    Ok(())
}

// ---- graphs ----

/// Nodes lying on some simple cycle, found by trying every ordered vertex
/// sequence as a cycle. Exponential; only for small graphs.
pub fn enumerated_cycle_nodes(n: usize, edges: &[(usize, usize)]) -> BTreeSet<usize> {
    let has = |a: usize, b: usize| edges.contains(&(a, b));
    let mut out = BTreeSet::new();
    fn extend(
        path: &mut Vec<usize>,
        n: usize,
        has: &dyn Fn(usize, usize) -> bool,
        out: &mut BTreeSet<usize>,
    ) {
        let (first, last) = (path[0], *path.last().unwrap());
        if has(last, first) {
            out.extend(path.iter().copied());
        }
        // canonical form: the first vertex is the smallest of the cycle
        for v in first + 1..n {
            if !path.contains(&v) && has(last, v) {
                path.push(v);
                extend(path, n, has, out);
                path.pop();
            }
        }
    }
    for s in 0..n {
        extend(&mut vec![s], n, &has, &mut out);
    }
    out
}

/// A simple cycle through `v`: `v`, then a shortest path back from one of
/// its successors. Shortest paths never repeat a node, so the cycle is
/// simple by construction; it is still verified edge by edge.
pub fn witness_cycle(n: usize, edges: &[(usize, usize)], v: usize) -> Option<Vec<usize>> {
    let succ = |x: usize| edges.iter().filter(move |e| e.0 == x).map(|e| e.1);
    for u in succ(v) {
        let mut parent: Vec<Option<usize>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = std::collections::VecDeque::from([u]);
        seen[u] = true;
        while let Some(x) = queue.pop_front() {
            if x == v {
                let mut path = vec![v];
                let mut cur = v;
                while cur != u {
                    cur = parent[cur].unwrap();
                    path.push(cur);
                }
                path.reverse();
                // path = u .. v; the cycle starts at v
                let mut cycle = vec![v];
                cycle.extend(&path[..path.len() - 1]);
                assert!(is_simple_cycle(&cycle, edges), "{cycle:?}");
                return Some(cycle);
            }
            for y in succ(x) {
                if !std::mem::replace(&mut seen[y], true) {
                    parent[y] = Some(x);
                    queue.push_back(y);
                }
            }
        }
    }
    None
}

pub fn is_simple_cycle(cycle: &[usize], edges: &[(usize, usize)]) -> bool {
    let distinct: BTreeSet<usize> = cycle.iter().copied().collect();
    !cycle.is_empty()
        && distinct.len() == cycle.len()
        && (0..cycle.len()).all(|i| edges.contains(&(cycle[i], cycle[(i + 1) % cycle.len()])))
}

/// Nodes with a verified simple-cycle witness.
pub fn witness_cycle_nodes(n: usize, edges: &[(usize, usize)]) -> BTreeSet<usize> {
    (0..n).filter(|&v| witness_cycle(n, edges, v).is_some()).collect()
}

pub fn random_digraph(rng: &mut ChaCha8Rng, max_nodes: usize) -> (usize, Vec<(usize, usize)>) {
    let n = rng.gen_range(1..=max_nodes);
    let density: f64 = rng.gen_range(0.0..=0.5);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if rng.gen_bool(density) {
                edges.push((a, b));
            }
        }
    }
    (n, edges)
}

pub fn random_dag(rng: &mut ChaCha8Rng) -> (usize, Vec<(usize, usize)>) {
    let n = rng.gen_range(1..=12);
    let density: f64 = rng.gen_range(0.0..=0.8);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                edges.push((order[i], order[j]));
            }
        }
    }
    (n, edges)
}
