mod common;

use common::{check, fixture_src};
use proptest::prelude::*;
use rsl::docgen::{generate_json, parse_template, render, render_template, template_data, Mode, TemplateError};
use serde_json::Value;

fn billing() -> rsl::ResolvedModel {
    let (rm, diags) = check(&fixture_src("billing.rsl"));
    assert!(diags.is_empty(), "{diags:?}");
    rm
}

#[test]
fn stakeholder_sentences() {
    let rm = billing();
    let tpl = parse_template(&fixture_src("stakeholders.tpl")).unwrap();
    let out = render_template(&tpl, &rm, Mode::Strict).unwrap();
    let json: Value = serde_json::from_str(&generate_json(&rm)).unwrap();
    let expected: Vec<String> = json["elements"]["stakeholders"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| format!("Stakeholder {} is a {}", s["name"].as_str().unwrap(), s["type"]["type"].as_str().unwrap()))
        .collect();
    assert_eq!(expected.len(), 3);
    let lines: Vec<&str> = out.lines().filter(|l| l.starts_with("Stakeholder ")).collect();
    assert_eq!(lines, expected);
    assert!(out.contains("Stakeholder Customer is a Organization\n"));
}

#[test]
fn use_case_table_agrees_with_json() {
    let rm = billing();
    let tpl = parse_template(&fixture_src("usecases.tpl")).unwrap();
    let out = render_template(&tpl, &rm, Mode::Strict).unwrap();
    let json: Value = serde_json::from_str(&generate_json(&rm)).unwrap();
    let mut expected = String::new();
    for uc in json["elements"]["useCases"].as_array().unwrap() {
        let actions: Vec<&str> = uc["actions"].as_array().unwrap().iter().map(|a| a.as_str().unwrap()).collect();
        expected.push_str(&format!(
            "| Use case | {} |\n| Type | {} |\n| Primary actor | {} |\n| Actions | {} |\n\n",
            uc["name"].as_str().unwrap(),
            uc["type"]["type"].as_str().unwrap(),
            uc["primaryActor"]["name"].as_str().unwrap(),
            actions.join(", ")
        ));
    }
    // the newline after the closing tag
    expected.push('\n');
    assert_eq!(out, expected);
}

#[test]
fn template_view_is_the_json_view() {
    let rm = billing();
    let json: Value = serde_json::from_str(&generate_json(&rm)).unwrap();
    let data = template_data(&rm);
    for (key, value) in json["elements"].as_object().unwrap() {
        assert_eq!(&data[key], value, "{key}");
    }
    assert_eq!(data["language"], json["language"]);
}

#[test]
fn strict_mode_lists_unknown_tags() {
    let rm = billing();
    let tpl = parse_template("{#stakeholders}{nameAlias}: {budget}\n{/stakeholders}").unwrap();
    match render_template(&tpl, &rm, Mode::Strict) {
        Err(TemplateError::UnresolvedTags(tags)) => {
            assert!(tags.iter().all(|t| t.tag == "budget"), "{tags:?}");
            assert!(!tags.is_empty());
        }
        other => panic!("{other:?}"),
    }
    let lenient = render_template(&tpl, &rm, Mode::Lenient).unwrap();
    assert!(lenient.starts_with("Customer: \n"));
}

#[test]
fn malformed_templates_are_syntax_errors() {
    for bad in ["{#a}x", "{/a}", "{#a}{/b}", "{unclosed", "{1 +}"] {
        assert!(matches!(parse_template(bad), Err(TemplateError::Syntax { .. })), "{bad}");
    }
}

proptest! {
    #[test]
    fn tag_free_templates_are_identity(text in "[^{]*") {
        let tpl = parse_template(&text).unwrap();
        prop_assert_eq!(render(&tpl, &Value::Null, Mode::Strict).unwrap(), text);
    }
}
