//! One PASS/FAIL line per acceptance criterion; exits non-zero on failure.

mod common;

use std::path::Path;
use std::time::{Duration, Instant};

use common::*;
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rsl::docgen::{generate_json, parse_template, render, render_template, Mode, TemplateError};
use rsl::model::{codes, ClearSpans, Language};
use rsl::validators::cycle_nodes;
use rsl::workspace::inline_include_fixes;
use rsl::{apply_edits, Element, QuickFix, Severity, TextEdit};
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn s(p: &Path) -> String {
    p.display().to_string()
}

fn json_diagnostics(run: &CliRun) -> Result<Vec<Value>, String> {
    let v: Value = serde_json::from_str(&run.stdout).map_err(|e| format!("report is not JSON: {e}"))?;
    Ok(v["files"][0]["diagnostics"].as_array().cloned().unwrap_or_default())
}

fn c1_billing_corpus() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("billing_defects.rsl");
    std::fs::write(&path, fixture_src("billing_defects.rsl")).map_err(|e| e.to_string())?;
    let file = s(&path);

    let started = Instant::now();
    let run = cli(&["check", "--format", "json", &file]);
    let diags = json_diagnostics(&run)?;
    let of = |code: &str| diags.iter().filter(|d| d["code"] == code).collect::<Vec<_>>();
    let message = |d: &&Value| d["message"].as_str().unwrap_or_default().to_string();

    let v001 = of(codes::DUPLICATE_ID);
    ensure!(v001.len() >= 3, "{} RSL-V001", v001.len());
    ensure!(v001.iter().all(|d| message(d).contains("'user'")), "V001 not about 'user'");
    let v002 = of(codes::GLOSSARY_TERM);
    ensure!(
        v002.iter().any(|d| message(d) == "Replace the word 'client' by the main word 'Customer'"),
        "no client/Customer RSL-V002 in {v002:?}"
    );
    let v003 = of(codes::HIERARCHY_CYCLE);
    ensure!(v003.len() == 2, "{} RSL-V003", v003.len());
    ensure!(
        v003.iter().any(|d| message(d) == "Cycle in hierarchy of Actor 'a_CustomerVIP'"),
        "missing a_CustomerVIP cycle"
    );
    let l001 = of(codes::LINGUISTIC_RULE);
    let actor = l001.iter().filter(|d| message(d).contains("'(Noun | ProperNoun)'")).count();
    let fr = l001
        .iter()
        .filter(|d| message(d).contains("'\"System\" + \"shall\" + (Verb) + (DataEntity.name)'"))
        .count();
    ensure!(actor >= 1 && fr >= 1, "L001 actor={actor} fr={fr}");
    ensure!(run.code == 1, "check exit code {}", run.code);

    let fixed = cli(&["fix", "--apply", "--create-missing", &file]);
    let recheck = cli(&["check", "--format", "json", &file]);
    let elapsed = started.elapsed();
    let after = json_diagnostics(&recheck)?;
    let serious: Vec<&Value> = after.iter().filter(|d| d["severity"] != "info").collect();
    ensure!(fixed.code == 0 && serious.is_empty(), "after fix: {serious:?}");
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!(
        "V001={} V002={} V003={} L001={} -> {} error/warning after fix, {} info; {elapsed:.0?}",
        v001.len(),
        v002.len(),
        v003.len(),
        l001.len(),
        serious.len(),
        after.len()
    ))
}

fn c2_missing_entity() -> Outcome {
    let (_, diags) = check(&fixture_src("print_invoice.rsl"));
    let d = diags
        .iter()
        .find(|d| d.code == codes::LINGUISTIC_RULE)
        .ok_or("no RSL-L001")?;
    let lines: Vec<&str> = d.message.lines().collect();
    ensure!(
        lines
            == [
                "This text must follow the pattern '(Verb) + (DataEntity.name)'",
                "The word 'Invoice' is expected to be the name of a/an 'DataEntity'",
            ],
        "message {lines:?}"
    );
    let titles: Vec<&str> = d.fixes.iter().map(|f| f.title.as_str()).collect();
    ensure!(titles == ["Create 'DataEntity' with name 'Invoice'"], "fixes {titles:?}");
    Ok("message lines and create fix match".into())
}

fn c3_portuguese() -> Outcome {
    let (rm, diags) = check(&fixture_src("faturacao.rsl"));
    ensure!(rm.language() == Language::Portuguese, "language {:?}", rm.language());
    let d = diags
        .iter()
        .find(|d| d.code == codes::LINGUISTIC_RULE)
        .ok_or("no RSL-L001")?;
    ensure!(
        d.fixes.iter().any(|f| f.title == "Create 'DataEntity' with name 'Fatura'"),
        "fixes {:?}",
        d.fixes
    );
    ensure!(diags.len() == 1, "other diagnostics: {diags:?}");
    Ok("create 'Fatura' suggested under the Portuguese lexicon".into())
}

fn c4_cycle_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut flagged, mut enumerated) = (0, 0);
    for _ in 0..1000 {
        let (n, edges) = random_digraph(&mut rng, 12);
        let got = cycle_nodes(n, &edges);
        ensure!(got == witness_cycle_nodes(n, &edges), "mismatch on {n} {edges:?}");
        if n <= 8 {
            ensure!(got == enumerated_cycle_nodes(n, &edges), "enumeration mismatch on {n} {edges:?}");
            enumerated += 1;
        }
        flagged += got.len();
    }
    for _ in 0..1000 {
        let (n, edges) = random_dag(&mut rng);
        ensure!(cycle_nodes(n, &edges).is_empty(), "false positive on DAG {edges:?}");
    }
    Ok(format!(
        "1000 digraphs ({flagged} flagged nodes, {enumerated} also by full enumeration), 1000 DAGs clean"
    ))
}

fn c5_round_trip() -> Outcome {
    let fixtures = corpus();
    for path in &fixtures {
        let src = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
        round_trip(&src).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    let mut runner = TestRunner::deterministic();
    let strategy = arb_document();
    let mut elements = 0;
    for _ in 0..500 {
        let src = strategy.new_tree(&mut runner).map_err(|e| e.to_string())?.current();
        elements += rsl::parse(&src, "t.rsl").0.elements.len();
        round_trip(&src)?;
    }
    Ok(format!("{} fixtures + 500 random models ({elements} elements)", fixtures.len()))
}

fn c6_templates() -> Outcome {
    let mut runner = TestRunner::deterministic();
    for _ in 0..256 {
        let text = "[^{]*".new_tree(&mut runner).map_err(|e| e.to_string())?.current();
        let tpl = parse_template(&text).map_err(|e| e.to_string())?;
        ensure!(render(&tpl, &Value::Null, Mode::Strict).as_deref() == Ok(text.as_str()), "identity broken on {text:?}");
    }

    let (rm, diags) = check(&fixture_src("billing.rsl"));
    ensure!(diags.is_empty(), "fixture not clean: {diags:?}");
    let json: Value = serde_json::from_str(&generate_json(&rm)).map_err(|e| e.to_string())?;

    let tpl = parse_template(&fixture_src("stakeholders.tpl")).map_err(|e| e.to_string())?;
    let out = render_template(&tpl, &rm, Mode::Strict).map_err(|e| e.to_string())?;
    let stakeholders = json["elements"]["stakeholders"].as_array().ok_or("no stakeholders")?;
    for st in stakeholders {
        let line = format!("Stakeholder {} is a {}", st["name"].as_str().unwrap_or(""), st["type"]["type"].as_str().unwrap_or(""));
        ensure!(out.lines().any(|l| l == line), "missing line {line:?}");
    }

    let tpl = parse_template(&fixture_src("usecases.tpl")).map_err(|e| e.to_string())?;
    let table = render_template(&tpl, &rm, Mode::Strict).map_err(|e| e.to_string())?;
    let use_cases = json["elements"]["useCases"].as_array().ok_or("no use cases")?;
    let blocks: Vec<&str> = table.trim_end().split("\n\n").collect();
    ensure!(blocks.len() == use_cases.len(), "{} tables for {} use cases", blocks.len(), use_cases.len());
    for (block, uc) in blocks.iter().zip(use_cases) {
        let actions: Vec<&str> = uc["actions"].as_array().into_iter().flatten().filter_map(Value::as_str).collect();
        let expected = [
            format!("| Use case | {} |", uc["name"].as_str().unwrap_or("")),
            format!("| Type | {} |", uc["type"]["type"].as_str().unwrap_or("")),
            format!("| Primary actor | {} |", uc["primaryActor"]["name"].as_str().unwrap_or("")),
            format!("| Actions | {} |", actions.join(", ")),
        ];
        ensure!(block.lines().eq(expected.iter().map(String::as_str)), "table differs from JSON:\n{block}");
    }

    let tpl = parse_template("{#stakeholders}{nameAlias} {budget}\n{/stakeholders}").map_err(|e| e.to_string())?;
    match render_template(&tpl, &rm, Mode::Strict) {
        Err(TemplateError::UnresolvedTags(tags)) if !tags.is_empty() && tags.iter().all(|t| t.tag == "budget") => {}
        other => return Err(format!("strict mode: {other:?}")),
    }
    Ok(format!(
        "identity x256, {} stakeholder lines, {} use-case tables, unknown tag rejected",
        stakeholders.len(),
        use_cases.len()
    ))
}

fn c7_validity_gate() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let rules = format!("--system=SystemRules={}", s(&fixture("system_rules.rsl")));
    let mut refused = 0;
    for path in corpus() {
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        let (_, diags) = check_fixture(&name);
        if !diags.iter().any(|d| d.severity == Severity::Error) {
            continue;
        }
        for kind in ["json", "text", "template"] {
            let out = dir.path().join(format!("{name}.{kind}"));
            let run = cli(&[
                "gen", kind, &rules, &s(&path), "-o", &s(&out),
                "--template", &s(&fixture("stakeholders.tpl")),
            ]);
            ensure!(run.code == 1, "{name} gen {kind}: exit {}", run.code);
            ensure!(!out.exists(), "{name} gen {kind}: output written");
            refused += 1;
        }
    }
    ensure!(refused > 0, "no fixture with errors");
    Ok(format!("{refused} generations refused without output"))
}

/// Offered V001/V002 fixes that do not overlap, applied together.
fn apply_rename_and_glossary_fixes(src: &str) -> Result<(String, usize), String> {
    let (_, diags) = check(src);
    let mut chosen: Vec<&QuickFix> = Vec::new();
    for d in diags.iter().filter(|d| d.code == codes::DUPLICATE_ID || d.code == codes::GLOSSARY_TERM) {
        for f in &d.fixes {
            let clash = chosen.iter().flat_map(|c| &c.edits).any(|c| f.edits.iter().any(|e| c.overlaps(e)));
            if !clash && !chosen.contains(&f) {
                chosen.push(f);
            }
        }
    }
    let edits: Vec<TextEdit> = chosen.iter().flat_map(|f| f.edits.iter().cloned()).collect();
    Ok((apply_edits(src, &edits).map_err(|e| e.to_string())?, chosen.len()))
}

fn c8_fix_fixpoint() -> Outcome {
    let mut total = 0;
    for name in ["billing_defects.rsl", "billing.rsl"] {
        let src = fixture_src(name);
        let (once, n1) = apply_rename_and_glossary_fixes(&src)?;
        let (twice, n2) = apply_rename_and_glossary_fixes(&once)?;
        ensure!(twice == once && n2 == 0, "{name}: second pass applied {n2} fix(es)");
        let (_, diags) = check(&once);
        let left = count(&diags, codes::DUPLICATE_ID) + count(&diags, codes::GLOSSARY_TERM);
        ensure!(left == 0, "{name}: {left} V001/V002 left");
        ensure!((once != src) == (n1 > 0), "{name}: first pass inconsistent");
        total += n1;
    }
    Ok(format!("{total} fixes on the first pass, none on the second"))
}

fn effective(rm: &rsl::ResolvedModel) -> Vec<Element> {
    rm.elements()
        .map(|e| {
            let mut e = e.clone();
            e.clear_spans();
            e
        })
        .collect()
}

fn c9_include_inlining() -> Outcome {
    let rules = fixture_src("system_rules.rsl");
    let src = fixture_src("billing_include.rsl");
    let (before, _) = check_with(&src, &[("SystemRules", &rules)]);
    let offers = inline_include_fixes(&before);
    ensure!(!offers.is_empty(), "no RSL-I001");
    ensure!(
        offers.iter().all(|d| d.code == codes::INLINE_INCLUDE && d.severity == Severity::Info),
        "unexpected offers {offers:?}"
    );
    let edits: Vec<TextEdit> = offers.iter().flat_map(|d| d.fixes[0].edits.iter().cloned()).collect();
    let inlined = apply_edits(&src, &edits).map_err(|e| e.to_string())?;
    let (after, diags) = check_with(&inlined, &[("SystemRules", &rules)]);
    ensure!(effective(&after) == effective(&before), "effective elements differ");
    ensure!(after.model.includes.is_empty(), "include declarations remain");
    ensure!(diags.is_empty(), "diagnostics after inlining: {diags:?}");
    Ok(format!("{} include(s) inlined, {} effective elements unchanged", offers.len(), effective(&after).len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("billing corpus defects and fix to clean", c1_billing_corpus),
        ("create-element fix for missing Invoice", c2_missing_entity),
        ("Portuguese lexicon dispatch", c3_portuguese),
        ("cycle detector vs oracles", c4_cycle_oracle),
        ("parse/print and JSON round trips", c5_round_trip),
        ("template suite", c6_templates),
        ("validity gate for generation", c7_validity_gate),
        ("V001/V002 fix idempotence", c8_fix_fixpoint),
        ("include inlining preserves the model", c9_include_inlining),
    ];
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS - {title}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL - {title}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
