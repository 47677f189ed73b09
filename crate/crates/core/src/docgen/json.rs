use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::model::*;
use crate::workspace::{Origin, ResolvedModel};

/// `{ "type": "<token>" }`, plus the sub type for stakeholders.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TypeRef {
    #[serde(rename = "type")]
    pub type_: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sub_type: Option<String>,
}

impl TypeRef {
    fn new(token: impl ToString) -> Self {
        TypeRef {
            type_: token.to_string(),
            sub_type: None,
        }
    }
}

/// A reference with the target's display name (null when unresolved).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonRef {
    pub id: String,
    pub name: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct JsonSystem {
    /// `main`, `included` or `imported`.
    pub role: String,
    pub elements: Vec<String>,
}

/// Fields every element carries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Common {
    pub id: String,
    pub name: Option<String>,
    pub name_alias: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(rename = "type")]
    pub type_: TypeRef,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct JsonAttribute {
    pub id: String,
    pub name: String,
    #[serde(rename = "type")]
    pub type_: TypeRef,
    pub constraints: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub default_value: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct JsonDataEntity {
    #[serde(flatten)]
    pub common: Common,
    pub attributes: Vec<JsonAttribute>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub is_a: Option<JsonRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub part_of: Option<JsonRef>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct JsonActor {
    #[serde(flatten)]
    pub common: Common,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub is_a: Option<JsonRef>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct JsonExtends {
    pub use_case: JsonRef,
    pub extension_point: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct JsonUseCase {
    #[serde(flatten)]
    pub common: Common,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primary_actor: Option<JsonRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data_entity: Option<JsonRef>,
    pub actions: Vec<String>,
    pub extension_points: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extends: Option<JsonExtends>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precondition: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct JsonTerm {
    #[serde(flatten)]
    pub common: Common,
    pub synonyms: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct JsonStakeholder {
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct JsonRequirement {
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct JsonRule {
    #[serde(flatten)]
    pub common: Common,
    /// `Kind.fragment`
    pub property: String,
    pub pattern: String,
    pub severity: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct JsonElements {
    pub data_entities: Vec<JsonDataEntity>,
    pub actors: Vec<JsonActor>,
    pub use_cases: Vec<JsonUseCase>,
    pub terms: Vec<JsonTerm>,
    pub stakeholders: Vec<JsonStakeholder>,
    pub functional_requirements: Vec<JsonRequirement>,
    pub linguistic_rules: Vec<JsonRule>,
}

/// The serialized view of a resolved document shared by every generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct JsonModelDocument {
    pub language: String,
    pub systems: BTreeMap<String, JsonSystem>,
    pub elements: JsonElements,
}

fn reference(rm: &ResolvedModel, kind: ElementKind, id: &Identifier) -> JsonRef {
    JsonRef {
        id: id.to_string(),
        name: rm
            .lookup(kind, id.as_str())
            .and_then(|e| e.name())
            .map(str::to_string),
    }
}

fn common(e: &Element, type_: TypeRef) -> Common {
    Common {
        id: e.id.to_string(),
        name: e.name().map(str::to_string),
        name_alias: e.name().map(str::to_string),
        description: e.description().map(str::to_string),
        type_,
    }
}

impl JsonModelDocument {
    pub fn build(rm: &ResolvedModel) -> Self {
        let mut systems: BTreeMap<String, JsonSystem> = BTreeMap::new();
        if let Some(s) = &rm.system {
            systems.insert(
                s.clone(),
                JsonSystem {
                    role: "main".into(),
                    elements: rm.local_elements().map(|e| e.id.to_string()).collect(),
                },
            );
        }
        for (list, role) in [(&rm.effective, "included"), (&rm.imported, "imported")] {
            for e in list.iter() {
                if let Origin::Included { system, .. } = &e.origin {
                    systems
                        .entry(system.clone())
                        .or_insert_with(|| JsonSystem {
                            role: role.into(),
                            elements: Vec::new(),
                        })
                        .elements
                        .push(e.element.id.to_string());
                }
            }
        }

        let mut els = JsonElements::default();
        for e in rm.elements() {
            match &e.body {
                ElementBody::DataEntity(d) => els.data_entities.push(JsonDataEntity {
                    common: common(e, TypeRef::new(&d.entity_type)),
                    attributes: d
                        .attributes
                        .iter()
                        .map(|a| JsonAttribute {
                            id: a.id.to_string(),
                            name: a.name.value.clone(),
                            type_: TypeRef::new(a.data_type),
                            constraints: a.constraints.iter().map(|c| c.to_string()).collect(),
                            default_value: a.default_value.as_ref().map(|t| t.value.clone()),
                        })
                        .collect(),
                    is_a: d.is_a.as_ref().map(|r| reference(rm, ElementKind::DataEntity, &r.target.id)),
                    part_of: d
                        .part_of
                        .as_ref()
                        .map(|r| reference(rm, ElementKind::DataEntity, &r.target.id)),
                }),
                ElementBody::Actor(a) => els.actors.push(JsonActor {
                    common: common(e, TypeRef::new(&a.actor_type)),
                    is_a: a.is_a.as_ref().map(|r| reference(rm, ElementKind::Actor, &r.target.id)),
                }),
                ElementBody::UseCase(u) => els.use_cases.push(JsonUseCase {
                    common: common(e, TypeRef::new(&u.uc_type)),
                    primary_actor: u
                        .primary_actor
                        .as_ref()
                        .map(|r| reference(rm, ElementKind::Actor, &r.id)),
                    data_entity: u
                        .data_entity
                        .as_ref()
                        .map(|r| reference(rm, ElementKind::DataEntity, &r.id)),
                    actions: u.actions.iter().map(|a| a.to_string()).collect(),
                    extension_points: u.extension_points.iter().map(|a| a.to_string()).collect(),
                    extends: u.extends.as_ref().map(|x| JsonExtends {
                        use_case: reference(rm, ElementKind::UseCase, &x.use_case.id),
                        extension_point: x.extension_point.id.to_string(),
                    }),
                    precondition: u.precondition.as_ref().map(|t| t.value.clone()),
                }),
                ElementBody::Term(t) => els.terms.push(JsonTerm {
                    common: common(e, TypeRef::new(t.pos.as_str())),
                    synonyms: t.synonyms.iter().map(|s| s.value.clone()).collect(),
                }),
                ElementBody::Stakeholder(s) => els.stakeholders.push(JsonStakeholder {
                    common: common(
                        e,
                        TypeRef {
                            type_: s.stakeholder_type.to_string(),
                            sub_type: s.sub_type.as_ref().map(|t| t.to_string()),
                        },
                    ),
                }),
                ElementBody::FunctionalRequirement(f) => {
                    els.functional_requirements.push(JsonRequirement {
                        common: common(e, TypeRef::new(&f.fr_type)),
                    })
                }
                ElementBody::LinguisticRule(r) => els.linguistic_rules.push(JsonRule {
                    common: common(e, TypeRef::new(&r.rule_kind)),
                    property: format!("{}.{}", r.property.target, r.property.fragment),
                    pattern: r.pattern.to_string(),
                    severity: r.severity.as_str().to_string(),
                }),
                ElementBody::LinguisticLanguage(_) => {}
            }
        }
        JsonModelDocument {
            language: rm.language().to_string(),
            systems,
            elements: els,
        }
    }

    pub fn to_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("model view serializes")
    }
}

/// The document as pretty JSON (2-space indent) with a trailing newline.
pub fn generate_json(rm: &ResolvedModel) -> String {
    let doc = JsonModelDocument::build(rm);
    let mut out = serde_json::to_string_pretty(&doc).expect("model view serializes");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::docgen::tests::resolve_one;

    #[test]
    fn invoice_fixture() {
        let rm = resolve_one(include_str!("../../tests/fixtures/invoice_browse.rsl"));
        let text = generate_json(&rm);
        assert!(text.ends_with("}\n"));
        assert!(text.contains("\n  \"language\": \"English\""));
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let e = &v["elements"]["dataEntities"][0];
        assert_eq!(e["id"], "e_Invoice");
        assert_eq!(e["attributes"][0]["constraints"], serde_json::json!(["PrimaryKey"]));
        assert_eq!(e["type"], serde_json::json!({"type": "Document"}));
        let uc = &v["elements"]["useCases"][0];
        assert_eq!(uc["primaryActor"], serde_json::json!({"id": "a_Manager", "name": "Manager"}));
        assert_eq!(uc["name"], serde_json::Value::Null);
        assert_eq!(v["elements"]["actors"][0]["nameAlias"], "Manager");
    }

    #[test]
    fn empty_model_shape() {
        let v: serde_json::Value = serde_json::from_str(&generate_json(&resolve_one(""))).unwrap();
        assert_eq!(
            v,
            serde_json::json!({
                "language": "English",
                "systems": {"S": {"role": "main", "elements": []}},
                "elements": {
                    "dataEntities": [], "actors": [], "useCases": [], "terms": [],
                    "stakeholders": [], "functionalRequirements": [], "linguisticRules": []
                }
            })
        );
    }

    #[test]
    fn round_trip() {
        let rm = resolve_one(include_str!("../../tests/fixtures/invoice_browse.rsl"));
        let back: JsonModelDocument = serde_json::from_str(&generate_json(&rm)).unwrap();
        assert_eq!(back, JsonModelDocument::build(&rm));
    }
}
