//! Multi-document workspaces: include/import resolution and reference binding.

use std::collections::BTreeMap;
use std::ops::Range;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::model::*;
use crate::parser::{self, literal_offset};

/// Includes are followed transitively up to this many hops.
pub const MAX_INCLUDE_DEPTH: usize = 16;

/// A parsed source file, optionally bound to a system name.
#[derive(Debug, Clone)]
pub struct Document {
    pub system: Option<String>,
    pub path: Arc<Path>,
    pub source: String,
    pub index: LineIndex,
    pub model: Model,
    pub diagnostics: Vec<Diagnostic>,
}

impl Document {
    pub fn parse(system: Option<&str>, path: impl AsRef<Path>, source: impl Into<String>) -> Self {
        let source = source.into();
        let path: Arc<Path> = Arc::from(path.as_ref());
        let (model, diagnostics) = parser::parse(&source, &path);
        Document {
            system: system.map(str::to_string),
            index: LineIndex::new(&source),
            path,
            source,
            model,
            diagnostics,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum WorkspaceError {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}:{line}: {message}", path.display())]
    Manifest {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("system '{0}' is defined more than once")]
    DuplicateSystem(String),
}

/// The documents of every known system.
#[derive(Debug, Default)]
pub struct Workspace {
    documents: Vec<Document>,
    systems: BTreeMap<String, usize>,
    /// Problems met while loading; they never abort the remaining files.
    pub errors: Vec<WorkspaceError>,
}

impl Workspace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reads and parses every `(system, path)` pair.
    pub fn load(files: &[(String, PathBuf)]) -> Self {
        let mut ws = Workspace::new();
        for (system, path) in files {
            match std::fs::read_to_string(path) {
                Ok(source) => {
                    ws.add(Document::parse(Some(system), path, source));
                }
                Err(source) => ws.errors.push(WorkspaceError::Io {
                    path: path.clone(),
                    source,
                }),
            }
        }
        ws
    }

    /// Adds a document and returns its position.
    pub fn add(&mut self, doc: Document) -> usize {
        let i = self.documents.len();
        if let Some(system) = &doc.system {
            if self.systems.contains_key(system) {
                self.errors.push(WorkspaceError::DuplicateSystem(system.clone()));
            } else {
                self.systems.insert(system.clone(), i);
            }
        }
        self.documents.push(doc);
        i
    }

    pub fn add_source(&mut self, system: &str, path: impl AsRef<Path>, source: &str) -> usize {
        self.add(Document::parse(Some(system), path, source))
    }

    pub fn system(&self, name: &str) -> Option<&Document> {
        self.systems.get(name).map(|&i| &self.documents[i])
    }

    pub fn documents(&self) -> &[Document] {
        &self.documents
    }

    pub fn document(&self, i: usize) -> &Document {
        &self.documents[i]
    }

    pub fn system_names(&self) -> impl Iterator<Item = &str> {
        self.systems.keys().map(String::as_str)
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }
}

/// Shorthand for [`Workspace::load`].
pub fn load_workspace(files: &[(String, PathBuf)]) -> Workspace {
    Workspace::load(files)
}

/// Reads a manifest of `systemId=relative/path.rsl` lines. Paths are
/// relative to the manifest's directory; blank lines and `#` comments are
/// ignored.
pub fn load_manifest(path: impl AsRef<Path>) -> Result<Vec<(String, PathBuf)>, WorkspaceError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| WorkspaceError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let base = path.parent().unwrap_or(Path::new(""));
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: &str| WorkspaceError::Manifest {
            path: path.to_path_buf(),
            line: i + 1,
            message: message.to_string(),
        };
        let (system, file) = line.split_once('=').ok_or_else(|| err("expected systemId=path"))?;
        let (system, file) = (system.trim(), file.trim());
        if !Identifier::is_valid(system) {
            return Err(err("invalid system id"));
        }
        if file.is_empty() {
            return Err(err("missing path"));
        }
        out.push((system.to_string(), base.join(file)));
    }
    Ok(out)
}

/// Where an effective element comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Origin {
    Local,
    /// Pulled in by `model.includes[include]` from `system`.
    Included {
        system: String,
        include: usize,
        anchor: SourceSpan,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EffectiveElement {
    pub element: Element,
    pub origin: Origin,
}

impl EffectiveElement {
    pub fn is_local(&self) -> bool {
        self.origin == Origin::Local
    }

    /// Position used for ordering and for diagnostics: the element itself
    /// when local, the include declaration otherwise.
    pub fn anchor(&self) -> &SourceSpan {
        match &self.origin {
            Origin::Local => &self.element.span,
            Origin::Included { anchor, .. } => anchor,
        }
    }
}

/// A bound cross-reference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Binding {
    pub span: SourceSpan,
    pub kind: ElementKind,
    pub id: Identifier,
}

/// A model after include resolution and reference binding.
#[derive(Debug, Clone)]
pub struct ResolvedModel {
    pub system: Option<String>,
    pub file: Arc<Path>,
    pub source: String,
    pub index: LineIndex,
    pub model: Model,
    pub parse_diagnostics: Vec<Diagnostic>,
    /// Local elements plus included ones, ordered by anchor.
    pub effective: Vec<EffectiveElement>,
    /// Elements visible through `Import` only.
    pub imported: Vec<EffectiveElement>,
    pub bindings: Vec<Binding>,
    /// `RSL-R` diagnostics.
    pub diagnostics: Vec<Diagnostic>,
}

impl ResolvedModel {
    pub fn elements(&self) -> impl Iterator<Item = &Element> {
        self.effective.iter().map(|e| &e.element)
    }

    pub fn local_elements(&self) -> impl Iterator<Item = &Element> {
        self.effective
            .iter()
            .filter(|e| e.is_local())
            .map(|e| &e.element)
    }

    /// Effective elements first, then imported ones.
    pub fn visible(&self) -> impl Iterator<Item = &EffectiveElement> {
        self.effective.iter().chain(&self.imported)
    }

    pub fn lookup(&self, kind: ElementKind, id: &str) -> Option<&Element> {
        self.visible()
            .map(|e| &e.element)
            .find(|e| e.kind() == kind && e.id.as_str() == id)
    }

    pub fn language(&self) -> Language {
        self.model.language()
    }

    /// Span of `range`, a byte range into the decoded text of the fragment
    /// whose literal is at `literal`.
    pub fn sub_span(&self, literal: &SourceSpan, range: Range<usize>) -> SourceSpan {
        let quoted = self.source.as_bytes().get(literal.byte_offset) == Some(&b'"');
        let map = |o: usize| {
            if quoted {
                literal_offset(&self.source, literal, o)
            } else {
                literal.byte_offset + o
            }
        };
        SourceSpan::new(literal.file.clone(), &self.index, map(range.start), map(range.end))
    }

    /// Span of the whole text: an empty span at end of file.
    pub fn end_of_file(&self) -> SourceSpan {
        let n = self.source.len();
        SourceSpan::new(self.file.clone(), &self.index, n, n)
    }
}

enum Failure {
    UnknownSystem,
    UnknownElement,
    Cycle(Vec<String>),
    TooDeep,
}

/// The effective elements of a document, with includes expanded. Failures of
/// nested includes other than cycles are the nested document's concern and
/// are skipped.
fn expand(
    doc_model: &Model,
    ws: &Workspace,
    stack: &mut Vec<String>,
) -> Result<Vec<(Element, Option<usize>)>, Failure> {
    let mut out: Vec<(usize, Element, Option<usize>)> = doc_model
        .elements
        .iter()
        .map(|e| (e.span.byte_offset, e.clone(), None))
        .collect();
    for (i, inc) in doc_model.includes.iter().enumerate() {
        if inc.mode == IncludeMode::Import {
            continue;
        }
        match pull(inc, ws, stack) {
            Ok(elems) => out.extend(elems.into_iter().map(|e| (inc.span.byte_offset, e, Some(i)))),
            Err(f @ (Failure::Cycle(_) | Failure::TooDeep)) => return Err(f),
            Err(_) => {}
        }
    }
    out.sort_by_key(|(offset, _, _)| *offset);
    Ok(out.into_iter().map(|(_, e, i)| (e, i)).collect())
}

/// Elements selected by one include declaration.
fn pull(inc: &IncludeDecl, ws: &Workspace, stack: &mut Vec<String>) -> Result<Vec<Element>, Failure> {
    let system = inc.from_system.as_str();
    if let Some(start) = stack.iter().position(|s| s == system) {
        let mut cycle = stack[start..].to_vec();
        cycle.push(system.to_string());
        return Err(Failure::Cycle(cycle));
    }
    if stack.len() > MAX_INCLUDE_DEPTH {
        return Err(Failure::TooDeep);
    }
    let doc = ws.system(system).ok_or(Failure::UnknownSystem)?;
    stack.push(system.to_string());
    let expanded = expand(&doc.model, ws, stack);
    stack.pop();
    let candidates = expanded?.into_iter().map(|(e, _)| e).filter(|e| {
        inc.element_kind.is_none_or(|k| e.kind() == k)
    });
    match &inc.element_id {
        Some(id) => candidates
            .filter(|e| e.id == *id)
            .take(1)
            .map(|e| vec![e])
            .next()
            .ok_or(Failure::UnknownElement),
        None => Ok(candidates
            .filter(|e| e.kind() != ElementKind::LinguisticLanguage)
            .collect()),
    }
}

fn include_failure(inc: &IncludeDecl, failure: Failure) -> Diagnostic {
    let span = inc.span.clone();
    match failure {
        Failure::UnknownSystem => Diagnostic::error(
            codes::UNKNOWN_SYSTEM,
            format!("Unknown system '{}'", inc.from_system),
            span,
        ),
        Failure::UnknownElement => {
            let what = inc.element_kind.map_or("element".to_string(), |k| k.to_string());
            let id = inc.element_id.as_ref().map_or("", |i| i.as_str());
            Diagnostic::error(
                codes::UNKNOWN_ELEMENT,
                format!("Unknown {what} '{id}' in system '{}'", inc.from_system),
                span,
            )
        }
        Failure::Cycle(path) => Diagnostic::error(
            codes::CIRCULAR_INCLUDE,
            format!("Circular include: {}", path.join(" -> ")),
            span,
        ),
        Failure::TooDeep => Diagnostic::error(
            codes::CIRCULAR_INCLUDE,
            format!("Includes nested deeper than {MAX_INCLUDE_DEPTH} levels"),
            span,
        ),
    }
}

/// Resolves includes and imports of `doc` against `ws` and binds references
/// of its own elements.
pub fn resolve(doc: &Document, ws: &Workspace) -> ResolvedModel {
    let mut diagnostics = Vec::new();
    let mut stack: Vec<String> = doc.system.iter().cloned().collect();
    let mut effective: Vec<EffectiveElement> = doc
        .model
        .elements
        .iter()
        .map(|e| EffectiveElement {
            element: e.clone(),
            origin: Origin::Local,
        })
        .collect();
    let mut imported = Vec::new();

    for (i, inc) in doc.model.includes.iter().enumerate() {
        match pull(inc, ws, &mut stack) {
            Ok(elems) => {
                let target = if inc.mode == IncludeMode::Import {
                    &mut imported
                } else {
                    &mut effective
                };
                target.extend(elems.into_iter().map(|element| EffectiveElement {
                    element,
                    origin: Origin::Included {
                        system: inc.from_system.to_string(),
                        include: i,
                        anchor: inc.span.clone(),
                    },
                }));
            }
            Err(f) => diagnostics.push(include_failure(inc, f)),
        }
    }
    effective.sort_by_key(|e| e.anchor().byte_offset);

    let mut model = doc.model.clone();
    model.resolved = true;
    let mut rm = ResolvedModel {
        system: doc.system.clone(),
        file: doc.path.clone(),
        source: doc.source.clone(),
        index: doc.index.clone(),
        model,
        parse_diagnostics: doc.diagnostics.clone(),
        effective,
        imported,
        bindings: Vec::new(),
        diagnostics: Vec::new(),
    };
    let (bindings, mut unresolved) = bind_references(&rm);
    rm.bindings = bindings;
    diagnostics.append(&mut unresolved);
    sort_diagnostics(&mut diagnostics);
    rm.diagnostics = diagnostics;
    rm
}

fn bind_references(rm: &ResolvedModel) -> (Vec<Binding>, Vec<Diagnostic>) {
    let mut bindings = Vec::new();
    let mut diags = Vec::new();
    let mut ep_diags = Vec::new();
    let mut bind = |kind: ElementKind, r: &Reference| -> bool {
        if rm.lookup(kind, r.id.as_str()).is_some() {
            bindings.push(Binding {
                span: r.span.clone(),
                kind,
                id: r.id.clone(),
            });
            true
        } else {
            diags.push(Diagnostic::error(
                codes::UNRESOLVED_REFERENCE,
                format!("Unresolved reference to {kind} '{}'", r.id),
                r.span.clone(),
            ));
            false
        }
    };
    for e in rm.local_elements() {
        for (_, rel) in e.relations() {
            let kind = e.kind();
            bind(kind, &rel.target);
        }
        if let ElementBody::UseCase(uc) = &e.body {
            if let Some(r) = &uc.primary_actor {
                bind(ElementKind::Actor, r);
            }
            if let Some(r) = &uc.data_entity {
                bind(ElementKind::DataEntity, r);
            }
            if let Some(ext) = &uc.extends {
                if bind(ElementKind::UseCase, &ext.use_case) {
                    let target = rm.lookup(ElementKind::UseCase, ext.use_case.id.as_str());
                    let ep = &ext.extension_point;
                    let known = matches!(
                        target.map(|t| &t.body),
                        Some(ElementBody::UseCase(t)) if t.extension_points.contains(&ep.id)
                    );
                    if !known {
                        ep_diags.push(Diagnostic::error(
                            codes::UNRESOLVED_REFERENCE,
                            format!(
                                "Unresolved reference to extension point '{}' of UseCase '{}'",
                                ep.id, ext.use_case.id
                            ),
                            ep.span.clone(),
                        ));
                    }
                }
            }
        }
    }
    diags.append(&mut ep_diags);
    (bindings, diags)
}

/// Offers to replace a resolvable `Include`/`IncludeAll` declaration with
/// the printed elements it pulls in.
pub fn inline_include_fix(rm: &ResolvedModel, include: usize) -> Option<Diagnostic> {
    let inc = rm.model.includes.get(include)?;
    if inc.mode == IncludeMode::Import {
        return None;
    }
    let pulled: Vec<&Element> = rm
        .effective
        .iter()
        .filter(|e| matches!(&e.origin, Origin::Included { include: i, .. } if *i == include))
        .map(|e| &e.element)
        .collect();
    let first = pulled.first()?;
    let uniform = pulled.iter().all(|e| e.kind() == first.kind());
    let title = if uniform {
        format!(
            "Replace this include specification by the {} element specification itself.",
            first.kind()
        )
    } else {
        "Replace this include specification by the included element specifications themselves."
            .to_string()
    };
    let text = pulled
        .iter()
        .map(|e| print_element(e))
        .collect::<Vec<_>>()
        .join("\n\n");
    let message = match &inc.element_id {
        Some(id) => format!(
            "{} '{id}' is included from system '{}'",
            first.kind(),
            inc.from_system
        ),
        None => format!(
            "{} element(s) are included from system '{}'",
            pulled.len(),
            inc.from_system
        ),
    };
    Some(
        Diagnostic::info(codes::INLINE_INCLUDE, message, inc.span.clone())
            .with_fix(QuickFix::new(title, vec![TextEdit::new(inc.span.clone(), text)])),
    )
}

/// [`inline_include_fix`] for every include of the model.
pub fn inline_include_fixes(rm: &ResolvedModel) -> Vec<Diagnostic> {
    (0..rm.model.includes.len())
        .filter_map(|i| inline_include_fix(rm, i))
        .collect()
}
