use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::linguistic::pattern::PatternExpr;
use crate::linguistic::pos::PosCategory;
use crate::model::{Severity, SourceSpan};

/// An element identifier: `[A-Za-z_][A-Za-z0-9_]*`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Identifier(String);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid identifier '{0}'")]
pub struct InvalidIdentifier(pub String);

impl Identifier {
    pub fn new(text: impl Into<String>) -> Result<Self, InvalidIdentifier> {
        let text = text.into();
        if Self::is_valid(&text) {
            Ok(Identifier(text))
        } else {
            Err(InvalidIdentifier(text))
        }
    }

    pub fn is_valid(text: &str) -> bool {
        let mut chars = text.chars();
        match chars.next() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return false,
        }
        chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Identifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl PartialEq<str> for Identifier {
    fn eq(&self, other: &str) -> bool {
        self.0 == other
    }
}

macro_rules! token_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => stringify!($variant)),+
                }
            }
        }

        impl FromStr for $name {
            type Err = ();

            fn from_str(s: &str) -> Result<Self, ()> {
                match s {
                    $(stringify!($variant) => Ok($name::$variant),)+
                    _ => Err(()),
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }
    };
}

token_enum!(
    /// The element kinds of the supported language subset.
    ElementKind {
        DataEntity,
        Actor,
        UseCase,
        Term,
        LinguisticRule,
        LinguisticLanguage,
        Stakeholder,
        FunctionalRequirement,
    }
);

token_enum!(DataType {
    Integer,
    Decimal,
    String,
    Boolean,
    Date,
    DateTime,
});

token_enum!(Constraint {
    PrimaryKey,
    NotNull,
    Unique,
});

token_enum!(Language {
    English,
    Spanish,
    German,
    French,
    Italian,
    Portuguese,
    Japanese,
});

impl ElementKind {
    /// Id prefix used when synthesizing new elements.
    pub fn id_prefix(self) -> &'static str {
        match self {
            ElementKind::DataEntity => "ec",
            ElementKind::Actor => "a",
            ElementKind::UseCase => "uc",
            _ => "el",
        }
    }

    pub fn has_fragment(self, fragment: Fragment) -> bool {
        match fragment {
            Fragment::Id => true,
            Fragment::Name | Fragment::Description => self != ElementKind::LinguisticLanguage,
        }
    }
}

impl Language {
    /// Tag used for lexicon selection (`en`, `pt`, ...).
    pub fn tag(self) -> &'static str {
        match self {
            Language::English => "en",
            Language::Spanish => "es",
            Language::German => "de",
            Language::French => "fr",
            Language::Italian => "it",
            Language::Portuguese => "pt",
            Language::Japanese => "ja",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Language> {
        Language::ALL
            .iter()
            .copied()
            .find(|l| l.tag().eq_ignore_ascii_case(tag) || l.as_str().eq_ignore_ascii_case(tag))
    }
}

/// The textual fragments of an element that linguistic rules can target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Fragment {
    Id,
    Name,
    Description,
}

impl Fragment {
    pub fn as_str(self) -> &'static str {
        match self {
            Fragment::Id => "id",
            Fragment::Name => "name",
            Fragment::Description => "description",
        }
    }
}

impl FromStr for Fragment {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "id" => Ok(Fragment::Id),
            "name" => Ok(Fragment::Name),
            "description" => Ok(Fragment::Description),
            _ => Err(()),
        }
    }
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A quoted string literal and where it was written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Text {
    pub value: String,
    /// Span of the literal including its quotes.
    pub span: SourceSpan,
}

impl Text {
    pub fn new(value: impl Into<String>) -> Self {
        Text {
            value: value.into(),
            span: SourceSpan::default(),
        }
    }
}

/// A reference to another element by id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reference {
    pub id: Identifier,
    pub span: SourceSpan,
}

impl Reference {
    pub fn new(id: Identifier) -> Self {
        Reference {
            id,
            span: SourceSpan::default(),
        }
    }
}

/// An `isA` / `partOf` relation: the target plus the span of the whole clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub target: Reference,
    pub span: SourceSpan,
}

impl Relation {
    pub fn new(id: Identifier) -> Self {
        Relation {
            target: Reference::new(id),
            span: SourceSpan::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub id: Identifier,
    pub id_span: SourceSpan,
    pub name: Option<Text>,
    pub description: Option<Text>,
    pub span: SourceSpan,
    pub body: ElementBody,
}

impl Element {
    pub fn new(id: Identifier, name: Option<&str>, body: ElementBody) -> Self {
        Element {
            id,
            id_span: SourceSpan::default(),
            name: name.map(Text::new),
            description: None,
            span: SourceSpan::default(),
            body,
        }
    }

    pub fn kind(&self) -> ElementKind {
        self.body.kind()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_ref().map(|t| t.value.as_str())
    }

    pub fn description(&self) -> Option<&str> {
        self.description.as_ref().map(|t| t.value.as_str())
    }

    /// Text of a fragment, with the span of its literal (the id span for ids).
    pub fn fragment(&self, fragment: Fragment) -> Option<(&str, &SourceSpan)> {
        match fragment {
            Fragment::Id => Some((self.id.as_str(), &self.id_span)),
            Fragment::Name => self.name.as_ref().map(|t| (t.value.as_str(), &t.span)),
            Fragment::Description => self
                .description
                .as_ref()
                .map(|t| (t.value.as_str(), &t.span)),
        }
    }

    /// `isA` and `partOf` relations of this element.
    pub fn relations(&self) -> Vec<(RelationKind, &Relation)> {
        let mut out = Vec::new();
        match &self.body {
            ElementBody::DataEntity(e) => {
                out.extend(e.is_a.iter().map(|r| (RelationKind::IsA, r)));
                out.extend(e.part_of.iter().map(|r| (RelationKind::PartOf, r)));
            }
            ElementBody::Actor(a) => out.extend(a.is_a.iter().map(|r| (RelationKind::IsA, r))),
            _ => {}
        }
        out
    }

    pub fn as_rule(&self) -> Option<&LinguisticRuleDecl> {
        match &self.body {
            ElementBody::LinguisticRule(r) => Some(r),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationKind {
    IsA,
    PartOf,
}

impl RelationKind {
    pub fn keyword(self) -> &'static str {
        match self {
            RelationKind::IsA => "isA",
            RelationKind::PartOf => "partOf",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementBody {
    DataEntity(DataEntity),
    Actor(Actor),
    UseCase(UseCase),
    Term(Term),
    LinguisticRule(LinguisticRuleDecl),
    LinguisticLanguage(LinguisticLanguageDecl),
    Stakeholder(Stakeholder),
    FunctionalRequirement(FunctionalRequirement),
}

impl ElementBody {
    pub fn kind(&self) -> ElementKind {
        match self {
            ElementBody::DataEntity(_) => ElementKind::DataEntity,
            ElementBody::Actor(_) => ElementKind::Actor,
            ElementBody::UseCase(_) => ElementKind::UseCase,
            ElementBody::Term(_) => ElementKind::Term,
            ElementBody::LinguisticRule(_) => ElementKind::LinguisticRule,
            ElementBody::LinguisticLanguage(_) => ElementKind::LinguisticLanguage,
            ElementBody::Stakeholder(_) => ElementKind::Stakeholder,
            ElementBody::FunctionalRequirement(_) => ElementKind::FunctionalRequirement,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataEntity {
    pub entity_type: Identifier,
    pub attributes: Vec<Attribute>,
    pub is_a: Option<Relation>,
    pub part_of: Option<Relation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attribute {
    pub id: Identifier,
    pub name: Text,
    pub data_type: DataType,
    /// Kept in declaration order without repeats.
    pub constraints: Vec<Constraint>,
    pub default_value: Option<Text>,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Actor {
    pub actor_type: Identifier,
    pub is_a: Option<Relation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UseCase {
    pub uc_type: Identifier,
    pub primary_actor: Option<Reference>,
    pub data_entity: Option<Reference>,
    pub actions: Vec<Identifier>,
    pub extension_points: Vec<Identifier>,
    pub extends: Option<Extends>,
    pub precondition: Option<Text>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extends {
    pub use_case: Reference,
    pub extension_point: Reference,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub pos: PosCategory,
    pub synonyms: Vec<Text>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Property {
    pub target: ElementKind,
    pub fragment: Fragment,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinguisticRuleDecl {
    pub rule_kind: Identifier,
    pub property: Property,
    pub pattern: PatternExpr,
    pub severity: Severity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinguisticLanguageDecl {
    pub language: Language,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stakeholder {
    pub stakeholder_type: Identifier,
    pub sub_type: Option<Identifier>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionalRequirement {
    pub fr_type: Identifier,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IncludeMode {
    Import,
    Include,
    IncludeAll,
}

impl IncludeMode {
    pub fn keyword(self) -> &'static str {
        match self {
            IncludeMode::Import => "Import",
            IncludeMode::Include => "Include",
            IncludeMode::IncludeAll => "IncludeAll",
        }
    }
}

/// `Import` / `Include` / `IncludeAll` declaration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncludeDecl {
    pub mode: IncludeMode,
    pub element_kind: Option<ElementKind>,
    pub from_system: Identifier,
    pub element_id: Option<Identifier>,
    pub span: SourceSpan,
}

/// A parsed document.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Model {
    pub includes: Vec<IncludeDecl>,
    /// Elements in document order, including `LinguisticLanguage` declarations.
    pub elements: Vec<Element>,
    pub resolved: bool,
}

impl Model {
    /// The document's language declaration (the first one, if repeated).
    pub fn language_decl(&self) -> Option<(&Element, &LinguisticLanguageDecl)> {
        self.elements.iter().find_map(|e| match &e.body {
            ElementBody::LinguisticLanguage(l) => Some((e, l)),
            _ => None,
        })
    }

    pub fn language(&self) -> Language {
        self.language_decl()
            .map(|(_, l)| l.language)
            .unwrap_or(Language::English)
    }

    pub fn elements_of(&self, kind: ElementKind) -> impl Iterator<Item = &Element> {
        self.elements.iter().filter(move |e| e.kind() == kind)
    }

    /// Copy with every span reset, for structural comparison.
    pub fn structure(&self) -> Model {
        let mut m = self.clone();
        m.clear_spans();
        m.resolved = false;
        m
    }
}

/// Resets source positions so that trees can be compared structurally.
pub trait ClearSpans {
    fn clear_spans(&mut self);
}

impl<T: ClearSpans> ClearSpans for Option<T> {
    fn clear_spans(&mut self) {
        if let Some(t) = self {
            t.clear_spans();
        }
    }
}

impl<T: ClearSpans> ClearSpans for Vec<T> {
    fn clear_spans(&mut self) {
        self.iter_mut().for_each(ClearSpans::clear_spans);
    }
}

impl ClearSpans for SourceSpan {
    fn clear_spans(&mut self) {
        *self = SourceSpan::default();
    }
}

impl ClearSpans for Text {
    fn clear_spans(&mut self) {
        self.span.clear_spans();
    }
}

impl ClearSpans for Reference {
    fn clear_spans(&mut self) {
        self.span.clear_spans();
    }
}

impl ClearSpans for Relation {
    fn clear_spans(&mut self) {
        self.span.clear_spans();
        self.target.clear_spans();
    }
}

impl ClearSpans for Attribute {
    fn clear_spans(&mut self) {
        self.span.clear_spans();
        self.name.clear_spans();
        self.default_value.clear_spans();
    }
}

impl ClearSpans for Element {
    fn clear_spans(&mut self) {
        self.span.clear_spans();
        self.id_span.clear_spans();
        self.name.clear_spans();
        self.description.clear_spans();
        match &mut self.body {
            ElementBody::DataEntity(e) => {
                e.attributes.clear_spans();
                e.is_a.clear_spans();
                e.part_of.clear_spans();
            }
            ElementBody::Actor(a) => a.is_a.clear_spans(),
            ElementBody::UseCase(u) => {
                u.primary_actor.clear_spans();
                u.data_entity.clear_spans();
                if let Some(x) = &mut u.extends {
                    x.use_case.clear_spans();
                    x.extension_point.clear_spans();
                }
                u.precondition.clear_spans();
            }
            ElementBody::Term(t) => t.synonyms.clear_spans(),
            ElementBody::LinguisticRule(r) => r.property.span.clear_spans(),
            ElementBody::LinguisticLanguage(_)
            | ElementBody::Stakeholder(_)
            | ElementBody::FunctionalRequirement(_) => {}
        }
    }
}

impl ClearSpans for IncludeDecl {
    fn clear_spans(&mut self) {
        self.span.clear_spans();
    }
}

impl ClearSpans for Model {
    fn clear_spans(&mut self) {
        self.includes.clear_spans();
        self.elements.clear_spans();
    }
}
