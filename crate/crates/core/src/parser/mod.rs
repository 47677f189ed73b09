//! Recursive-descent parser for the language subset.
//!
//! The parser never aborts: a malformed declaration produces an `RSL-S`
//! diagnostic and parsing resumes at the next declaration keyword, so the
//! remaining elements still reach the later passes. The accepted grammar is
//! documented in `docs/grammar.md` next to this crate.

mod lexer;

use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

pub use lexer::{is_keyword, literal_offset, tokenize, RslToken, TokenKind, TOP_LEVEL_KEYWORDS};

use crate::linguistic::pattern::{PatternExpr, PatternPart};
use crate::linguistic::pos::PosCategory;
use crate::model::*;

/// Parses a document. Returns every element that parsed plus diagnostics.
pub fn parse(source: &str, file: impl AsRef<Path>) -> (Model, Vec<Diagnostic>) {
    let file: Arc<Path> = Arc::from(file.as_ref());
    let index = LineIndex::new(source);
    let (tokens, mut diags) = tokenize(source, &file, &index);
    let mut p = Parser {
        tokens,
        pos: 0,
        diags: Vec::new(),
    };
    let model = p.document();
    diags.append(&mut p.diags);
    sort_diagnostics(&mut diags);
    (model, diags)
}

/// Parses a pattern expression on its own (the text after `pattern`).
pub fn parse_pattern(source: &str) -> Result<PatternExpr, Vec<Diagnostic>> {
    let file: Arc<Path> = Arc::from(Path::new("<pattern>"));
    let index = LineIndex::new(source);
    let (tokens, mut diags) = tokenize(source, &file, &index);
    let mut p = Parser {
        tokens,
        pos: 0,
        diags: Vec::new(),
    };
    let result = p.pattern();
    if result.is_ok() && p.peek().kind != TokenKind::End {
        let t = p.peek().clone();
        p.unexpected(&t, "end of pattern");
    }
    diags.append(&mut p.diags);
    match result {
        Ok(pattern) if diags.is_empty() => Ok(pattern),
        _ => Err(diags),
    }
}

/// Marker for "a diagnostic was recorded; resynchronize".
struct Stop;

type PResult<T> = Result<T, Stop>;

struct Parser {
    tokens: Vec<RslToken>,
    pos: usize,
    diags: Vec<Diagnostic>,
}

fn describe(t: &RslToken) -> String {
    match t.kind {
        TokenKind::End => "end of input".to_string(),
        TokenKind::QuotedString => "string literal".to_string(),
        _ => format!("'{}'", t.text),
    }
}

impl Parser {
    fn peek(&self) -> &RslToken {
        &self.tokens[self.pos]
    }

    fn peek_at(&self, n: usize) -> &RslToken {
        &self.tokens[(self.pos + n).min(self.tokens.len() - 1)]
    }

    fn bump(&mut self) -> RslToken {
        let t = self.tokens[self.pos].clone();
        if t.kind != TokenKind::End {
            self.pos += 1;
        }
        t
    }

    fn prev_span(&self) -> SourceSpan {
        self.tokens[self.pos.saturating_sub(1)].span.clone()
    }

    fn at_punct(&self, c: char) -> bool {
        self.peek().kind == TokenKind::Punct(c)
    }

    fn at_keyword(&self, kw: &str) -> bool {
        let t = self.peek();
        t.kind == TokenKind::Keyword && t.text == kw
    }

    fn eat_punct(&mut self, c: char) -> bool {
        if self.at_punct(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn unexpected(&mut self, t: &RslToken, expected: &str) {
        self.diags.push(Diagnostic::error(
            codes::UNEXPECTED_TOKEN,
            format!("expected {expected}, found {}", describe(t)),
            t.span.clone(),
        ));
    }

    fn fail<T>(&mut self, expected: &str) -> PResult<T> {
        let t = self.peek().clone();
        self.unexpected(&t, expected);
        Err(Stop)
    }

    fn expect_punct(&mut self, c: char) -> PResult<SourceSpan> {
        if self.at_punct(c) {
            Ok(self.bump().span)
        } else {
            self.fail(&format!("'{c}'"))
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> PResult<SourceSpan> {
        if self.at_keyword(kw) {
            Ok(self.bump().span)
        } else {
            self.fail(&format!("'{kw}'"))
        }
    }

    /// An identifier. Body keywords are contextual and accepted here.
    fn ident(&mut self, what: &str) -> PResult<(Identifier, SourceSpan)> {
        let t = self.peek().clone();
        let usable = match t.kind {
            TokenKind::Identifier => true,
            TokenKind::Keyword => !t.is_top_level_keyword(),
            _ => false,
        };
        if !usable {
            return self.fail(what);
        }
        self.bump();
        match Identifier::new(t.text.clone()) {
            Ok(id) => Ok((id, t.span)),
            Err(e) => {
                self.diags.push(Diagnostic::error(
                    codes::UNEXPECTED_TOKEN,
                    e.to_string(),
                    t.span,
                ));
                Err(Stop)
            }
        }
    }

    fn string(&mut self, what: &str) -> PResult<Text> {
        if self.peek().kind == TokenKind::QuotedString {
            let t = self.bump();
            Ok(Text {
                value: t.text,
                span: t.span,
            })
        } else {
            self.fail(what)
        }
    }

    /// A word from a closed vocabulary, e.g. a data type or severity.
    fn closed<T: FromStr>(&mut self, what: &str, choices: &[&str]) -> PResult<T> {
        let t = self.peek().clone();
        if !matches!(t.kind, TokenKind::Identifier | TokenKind::Keyword) {
            return self.fail(what);
        }
        self.bump();
        t.text.parse::<T>().map_err(|_| {
            self.diags.push(Diagnostic::error(
                codes::INVALID_VALUE,
                format!(
                    "'{}' is not a valid {what}; expected one of {}",
                    t.text,
                    choices.join(", ")
                ),
                t.span.clone(),
            ));
            Stop
        })
    }

    /// Like [`Self::closed`], but an unknown word is reported and skipped
    /// without abandoning the enclosing declaration.
    fn closed_or_skip<T: FromStr>(&mut self, what: &str, choices: &[&str]) -> PResult<Option<T>> {
        let before = self.diags.len();
        match self.closed(what, choices) {
            Ok(v) => Ok(Some(v)),
            Err(_) if self.diags.len() > before && self.diags[before].code == codes::INVALID_VALUE => Ok(None),
            Err(e) => Err(e),
        }
    }

    fn synchronize(&mut self) {
        while self.peek().kind != TokenKind::End && !self.peek().is_top_level_keyword() {
            self.bump();
        }
    }

    fn document(&mut self) -> Model {
        let mut model = Model::default();
        loop {
            let t = self.peek().clone();
            match t.kind {
                TokenKind::End => break,
                _ if t.is_top_level_keyword() => {
                    let start = self.pos;
                    let result = match t.text.as_str() {
                        "Include" | "IncludeAll" | "Import" => {
                            self.include().map(|i| model.includes.push(i))
                        }
                        _ => self.element().map(|e| model.elements.push(e)),
                    };
                    if result.is_err() {
                        if self.pos == start {
                            self.bump();
                        }
                        self.synchronize();
                    }
                }
                _ => {
                    let msg = match t.kind {
                        TokenKind::Identifier | TokenKind::Keyword => {
                            format!("unknown declaration '{}'", t.text)
                        }
                        _ => format!("unexpected {} at top level", describe(&t)),
                    };
                    self.diags
                        .push(Diagnostic::error(codes::UNKNOWN_DECLARATION, msg, t.span));
                    self.bump();
                    self.synchronize();
                }
            }
        }
        model
    }

    fn include(&mut self) -> PResult<IncludeDecl> {
        let kw = self.bump();
        let mode = match kw.text.as_str() {
            "Include" => IncludeMode::Include,
            "IncludeAll" => IncludeMode::IncludeAll,
            _ => IncludeMode::Import,
        };
        let element_kind = if self.at_keyword("fromSystem") {
            None
        } else {
            Some(self.element_kind()?)
        };
        self.expect_keyword("fromSystem")?;
        let (from_system, _) = self.ident("system name")?;
        let element_id = if self.at_keyword("element") && mode != IncludeMode::IncludeAll {
            self.bump();
            Some(self.ident("element id")?.0)
        } else {
            None
        };
        let span = kw.span.to(&self.prev_span());
        if mode == IncludeMode::Include && (element_kind.is_none() || element_id.is_none()) {
            self.diags.push(Diagnostic::error(
                codes::MISSING_FIELD,
                "Include requires an element kind and an 'element' id",
                span,
            ));
            return Err(Stop);
        }
        if mode == IncludeMode::Import && element_id.is_some() && element_kind.is_none() {
            self.diags.push(Diagnostic::error(
                codes::MISSING_FIELD,
                "Import of a single element requires its kind",
                span,
            ));
            return Err(Stop);
        }
        Ok(IncludeDecl {
            mode,
            element_kind,
            from_system,
            element_id,
            span,
        })
    }

    fn element_kind(&mut self) -> PResult<ElementKind> {
        let t = self.peek().clone();
        if !matches!(t.kind, TokenKind::Identifier | TokenKind::Keyword) {
            return self.fail("element kind");
        }
        self.bump();
        t.text.parse::<ElementKind>().map_err(|_| {
            self.diags.push(Diagnostic::error(
                codes::UNKNOWN_KIND,
                format!("unknown element kind '{}'", t.text),
                t.span.clone(),
            ));
            Stop
        })
    }

    fn element(&mut self) -> PResult<Element> {
        let kw = self.bump();
        let kind: ElementKind = kw.text.parse().expect("top-level keyword is an element kind");
        let (id, id_span) = self.ident("element id")?;
        let name = if self.peek().kind == TokenKind::QuotedString {
            Some(self.string("name")?)
        } else {
            None
        };
        self.expect_punct(':')?;
        let mut builder = BodyBuilder::new(kind, self.type_token(kind)?);

        if self.eat_punct('[') {
            while !self.at_punct(']') {
                self.body_item(&mut builder)?;
            }
            self.bump();
        }
        let span = kw.span.to(&self.prev_span());
        let (body, description) = builder.finish(self, &span)?;
        Ok(Element {
            id,
            id_span,
            name,
            description,
            span,
            body,
        })
    }

    fn type_token(&mut self, kind: ElementKind) -> PResult<TypeToken> {
        Ok(match kind {
            ElementKind::Term => TypeToken::Pos(self.closed(
                "part-of-speech category",
                &PosCategory::ALL.map(|c| c.as_str()),
            )?),
            ElementKind::LinguisticLanguage => TypeToken::Language(
                self.closed("language", &Language::ALL.iter().map(|l| l.as_str()).collect::<Vec<_>>())?,
            ),
            ElementKind::LinguisticRule => {
                let (id, span) = self.ident("rule kind")?;
                if id.as_str() != "Syntax" {
                    self.diags.push(Diagnostic::error(
                        codes::INVALID_VALUE,
                        format!("unsupported linguistic rule kind '{id}'; only Syntax is supported"),
                        span,
                    ));
                    return Err(Stop);
                }
                TypeToken::Word(id, None)
            }
            ElementKind::Stakeholder => {
                let (id, _) = self.ident("stakeholder type")?;
                let sub = if self.eat_punct('.') {
                    Some(self.ident("stakeholder subtype")?.0)
                } else {
                    None
                };
                TypeToken::Word(id, sub)
            }
            _ => TypeToken::Word(self.ident("element type")?.0, None),
        })
    }

    fn body_item(&mut self, b: &mut BodyBuilder) -> PResult<()> {
        let t = self.peek().clone();
        let allowed = b.allows(&t);
        if !allowed {
            let what = format!("{} body item or ']'", b.kind);
            return self.fail(&what);
        }
        let kw = self.bump();
        match kw.text.as_str() {
            "description" => {
                let text = self.string("description text")?;
                b.set_description(&mut self.diags, &kw, text);
            }
            "attribute" => {
                let a = self.attribute(&kw)?;
                b.attributes.push(a);
            }
            "isA" | "partOf" => {
                let (id, span) = self.ident("element id")?;
                let rel = Relation {
                    target: Reference { id, span: span.clone() },
                    span: kw.span.to(&span),
                };
                let slot = if kw.text == "isA" { &mut b.is_a } else { &mut b.part_of };
                set_once(&mut self.diags, slot, rel, &kw);
            }
            "primaryActor" | "dataEntity" => {
                let (id, span) = self.ident("element id")?;
                let r = Reference { id, span };
                let slot = if kw.text == "primaryActor" {
                    &mut b.primary_actor
                } else {
                    &mut b.data_entity
                };
                set_once(&mut self.diags, slot, r, &kw);
            }
            "actions" | "extensionPoints" => {
                let mut ids = vec![self.ident("identifier")?.0];
                while self.eat_punct(',') {
                    ids.push(self.ident("identifier")?.0);
                }
                let slot = if kw.text == "actions" {
                    &mut b.actions
                } else {
                    &mut b.extension_points
                };
                set_once(&mut self.diags, slot, ids, &kw);
            }
            "extends" => {
                let (uc, uc_span) = self.ident("use case id")?;
                self.expect_keyword("onExtensionPoint")?;
                let (xp, xp_span) = self.ident("extension point")?;
                let x = Extends {
                    use_case: Reference { id: uc, span: uc_span },
                    extension_point: Reference { id: xp, span: xp_span },
                };
                set_once(&mut self.diags, &mut b.extends, x, &kw);
            }
            "precondition" => {
                let text = self.string("precondition text")?;
                set_once(&mut self.diags, &mut b.precondition, text, &kw);
            }
            "synonyms" => {
                let mut xs = vec![self.string("synonym")?];
                while self.eat_punct(',') {
                    xs.push(self.string("synonym")?);
                }
                set_once(&mut self.diags, &mut b.synonyms, xs, &kw);
            }
            "property" => {
                let target = self.element_kind()?;
                self.expect_punct('.')?;
                let frag_tok = self.peek().clone();
                let fragment = self.closed::<Fragment>("fragment", &["id", "name", "description"])?;
                let p = Property {
                    target,
                    fragment,
                    span: kw.span.to(&frag_tok.span),
                };
                set_once(&mut self.diags, &mut b.property, p, &kw);
            }
            "pattern" => {
                let p = self.pattern()?;
                set_once(&mut self.diags, &mut b.pattern, p, &kw);
            }
            "severity" => {
                let s = self.closed::<Severity>("severity", &["Error", "Warning", "Info"])?;
                set_once(&mut self.diags, &mut b.severity, s, &kw);
            }
            _ => unreachable!("allows() admitted an unknown keyword"),
        }
        Ok(())
    }

    fn attribute(&mut self, kw: &RslToken) -> PResult<Attribute> {
        let (id, _) = self.ident("attribute id")?;
        let name = self.string("attribute name")?;
        self.expect_punct(':')?;
        let data_type: DataType =
            self.closed("data type", &DataType::ALL.iter().map(|d| d.as_str()).collect::<Vec<_>>())?;
        let mut constraints = Vec::new();
        let mut default_value = None;
        if self.eat_punct('[') {
            while !self.eat_punct(']') {
                if self.at_keyword("constraints") {
                    self.bump();
                    self.expect_punct('(')?;
                    loop {
                        let c: Option<Constraint> = self.closed_or_skip(
                            "constraint",
                            &Constraint::ALL.iter().map(|c| c.as_str()).collect::<Vec<_>>(),
                        )?;
                        if let Some(c) = c.filter(|c| !constraints.contains(c)) {
                            constraints.push(c);
                        }
                        if !self.eat_punct(',') {
                            break;
                        }
                    }
                    self.expect_punct(')')?;
                } else if self.at_keyword("defaultValue") {
                    let k = self.bump();
                    let v = self.string("default value")?;
                    set_once(&mut self.diags, &mut default_value, v, &k);
                } else {
                    return self.fail("'constraints', 'defaultValue' or ']'");
                }
            }
        }
        Ok(Attribute {
            id,
            name,
            data_type,
            constraints,
            default_value,
            span: kw.span.to(&self.prev_span()),
        })
    }

    /// pattern := part ("+" part)*
    fn pattern(&mut self) -> PResult<PatternExpr> {
        let mut parts = vec![self.pattern_part()?];
        while self.eat_punct('+') {
            parts.push(self.pattern_part()?);
        }
        Ok(PatternExpr { parts })
    }

    /// part := "(" alt ")" | atom ; alt := atom ("|" atom)*
    fn pattern_part(&mut self) -> PResult<PatternPart> {
        if !self.at_punct('(') {
            return self.pattern_atom();
        }
        let open = self.bump();
        if self.at_punct(')') {
            let close = self.bump();
            self.diags.push(Diagnostic::error(
                codes::EMPTY_ALTERNATION,
                "empty alternation in pattern",
                open.span.to(&close.span),
            ));
            return Err(Stop);
        }
        let mut members = vec![self.pattern_atom()?];
        while self.eat_punct('|') {
            members.push(self.pattern_atom()?);
        }
        self.expect_punct(')')?;
        Ok(if members.len() == 1 {
            members.pop().unwrap()
        } else {
            PatternPart::Alt(members)
        })
    }

    /// atom := PosCategoryName | ElementKind "." fragment | quotedLiteral
    fn pattern_atom(&mut self) -> PResult<PatternPart> {
        let t = self.peek().clone();
        match t.kind {
            TokenKind::QuotedString => {
                self.bump();
                if t.text.trim().is_empty() {
                    self.diags.push(Diagnostic::error(
                        codes::INVALID_VALUE,
                        "empty literal in pattern",
                        t.span,
                    ));
                    return Err(Stop);
                }
                Ok(PatternPart::Lit(t.text))
            }
            TokenKind::Identifier | TokenKind::Keyword
                if self.peek_at(1).kind == TokenKind::Punct('.') =>
            {
                let kind = self.element_kind()?;
                self.bump();
                let fragment =
                    self.closed::<Fragment>("fragment", &["id", "name", "description"])?;
                Ok(PatternPart::FragmentRef(kind, fragment))
            }
            TokenKind::Identifier => {
                self.bump();
                match t.text.parse::<PosCategory>() {
                    Ok(c) => Ok(PatternPart::Pos(c)),
                    Err(()) => {
                        self.diags.push(Diagnostic::error(
                            codes::UNKNOWN_POS,
                            format!("unknown part-of-speech category '{}'", t.text),
                            t.span,
                        ));
                        Err(Stop)
                    }
                }
            }
            _ => self.fail("pattern part"),
        }
    }
}

fn set_once<T>(diags: &mut Vec<Diagnostic>, slot: &mut Option<T>, value: T, kw: &RslToken) {
    if slot.is_some() {
        diags.push(Diagnostic::error(
            codes::DUPLICATE_FIELD,
            format!("'{}' given more than once", kw.text),
            kw.span.clone(),
        ));
    } else {
        *slot = Some(value);
    }
}

enum TypeToken {
    Word(Identifier, Option<Identifier>),
    Pos(PosCategory),
    Language(Language),
}

/// Collects body items before they are checked against the element kind.
struct BodyBuilder {
    kind: ElementKind,
    type_token: Option<TypeToken>,
    description: Option<Text>,
    attributes: Vec<Attribute>,
    is_a: Option<Relation>,
    part_of: Option<Relation>,
    primary_actor: Option<Reference>,
    data_entity: Option<Reference>,
    actions: Option<Vec<Identifier>>,
    extension_points: Option<Vec<Identifier>>,
    extends: Option<Extends>,
    precondition: Option<Text>,
    synonyms: Option<Vec<Text>>,
    property: Option<Property>,
    pattern: Option<PatternExpr>,
    severity: Option<Severity>,
}

impl BodyBuilder {
    fn new(kind: ElementKind, type_token: TypeToken) -> Self {
        BodyBuilder {
            kind,
            type_token: Some(type_token),
            description: None,
            attributes: Vec::new(),
            is_a: None,
            part_of: None,
            primary_actor: None,
            data_entity: None,
            actions: None,
            extension_points: None,
            extends: None,
            precondition: None,
            synonyms: None,
            property: None,
            pattern: None,
            severity: None,
        }
    }

    fn allows(&self, t: &RslToken) -> bool {
        if t.kind != TokenKind::Keyword {
            return false;
        }
        let kw = t.text.as_str();
        if kw == "description" {
            return true;
        }
        let allowed: &[&str] = match self.kind {
            ElementKind::DataEntity => &["attribute", "isA", "partOf"],
            ElementKind::Actor => &["isA"],
            ElementKind::UseCase => &[
                "primaryActor",
                "dataEntity",
                "actions",
                "extensionPoints",
                "extends",
                "precondition",
            ],
            ElementKind::Term => &["synonyms"],
            ElementKind::LinguisticRule => &["property", "pattern", "severity"],
            _ => &[],
        };
        allowed.contains(&kw)
    }

    fn set_description(&mut self, diags: &mut Vec<Diagnostic>, kw: &RslToken, text: Text) {
        set_once(diags, &mut self.description, text, kw);
    }

    fn finish(&mut self, p: &mut Parser, span: &SourceSpan) -> PResult<(ElementBody, Option<Text>)> {
        let type_token = self.type_token.take().expect("type token set once");
        let word = |t: TypeToken| match t {
            TypeToken::Word(w, _) => w,
            _ => unreachable!(),
        };
        let body = match self.kind {
            ElementKind::DataEntity => ElementBody::DataEntity(DataEntity {
                entity_type: word(type_token),
                attributes: std::mem::take(&mut self.attributes),
                is_a: self.is_a.take(),
                part_of: self.part_of.take(),
            }),
            ElementKind::Actor => ElementBody::Actor(Actor {
                actor_type: word(type_token),
                is_a: self.is_a.take(),
            }),
            ElementKind::UseCase => ElementBody::UseCase(UseCase {
                uc_type: word(type_token),
                primary_actor: self.primary_actor.take(),
                data_entity: self.data_entity.take(),
                actions: self.actions.take().unwrap_or_default(),
                extension_points: self.extension_points.take().unwrap_or_default(),
                extends: self.extends.take(),
                precondition: self.precondition.take(),
            }),
            ElementKind::Term => ElementBody::Term(Term {
                pos: match type_token {
                    TypeToken::Pos(c) => c,
                    _ => unreachable!(),
                },
                synonyms: self.synonyms.take().unwrap_or_default(),
            }),
            ElementKind::LinguisticRule => {
                let (Some(property), Some(pattern)) = (self.property.take(), self.pattern.take())
                else {
                    p.diags.push(Diagnostic::error(
                        codes::MISSING_FIELD,
                        "LinguisticRule requires 'property' and 'pattern'",
                        span.clone(),
                    ));
                    return Err(Stop);
                };
                ElementBody::LinguisticRule(LinguisticRuleDecl {
                    rule_kind: word(type_token),
                    property,
                    pattern,
                    severity: self.severity.take().unwrap_or(Severity::Error),
                })
            }
            ElementKind::LinguisticLanguage => ElementBody::LinguisticLanguage(LinguisticLanguageDecl {
                language: match type_token {
                    TypeToken::Language(l) => l,
                    _ => unreachable!(),
                },
            }),
            ElementKind::Stakeholder => match type_token {
                TypeToken::Word(w, sub) => ElementBody::Stakeholder(Stakeholder {
                    stakeholder_type: w,
                    sub_type: sub,
                }),
                _ => unreachable!(),
            },
            ElementKind::FunctionalRequirement => {
                ElementBody::FunctionalRequirement(FunctionalRequirement {
                    fr_type: word(type_token),
                })
            }
        };
        Ok((body, self.description.take()))
    }
}
