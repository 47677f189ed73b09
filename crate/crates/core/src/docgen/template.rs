//! Plain-text templates with `{expr}` tags, `{#expr}…{/expr}` sections and
//! `{^expr}…{/expr}` inverted sections. `{{` stands for a literal `{`.

use std::fmt;

use serde_json::Value;

use crate::docgen::expr::{eval, parse_expr, stringify, truthy, Expr, Scope};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Static(String),
    Tag {
        source: String,
        expr: Expr,
        at: Position,
    },
    Section {
        source: String,
        expr: Expr,
        inverted: bool,
        body: Vec<Node>,
        at: Position,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TemplateDocument {
    pub nodes: Vec<Node>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnresolvedTag {
    pub tag: String,
    pub at: Position,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TemplateError {
    #[error("template syntax error at {at}: {message}")]
    Syntax { at: Position, message: String },
    #[error("unresolved tags: {}", list(.0))]
    UnresolvedTags(Vec<UnresolvedTag>),
    #[error("type error in tag {{{tag}}} at {at}: {message}")]
    Type {
        tag: String,
        at: Position,
        message: String,
    },
}

fn list(tags: &[UnresolvedTag]) -> String {
    tags.iter()
        .map(|t| format!("{{{}}} at {}", t.tag, t.at))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Renders unresolved tags as errors (strict) or as empty text (lenient).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Strict,
    Lenient,
}

fn position(chars: &[char], upto: usize) -> Position {
    let mut p = Position { line: 1, col: 1 };
    for &c in &chars[..upto] {
        if c == '\n' {
            p.line += 1;
            p.col = 1;
        } else {
            p.col += 1;
        }
    }
    p
}

struct Open {
    label: String,
    expr: Expr,
    inverted: bool,
    at: Position,
    nodes: Vec<Node>,
}

/// End of the tag opened at `start` (index of the closing `}`), skipping
/// quoted strings inside the expression.
fn tag_end(chars: &[char], start: usize) -> Option<usize> {
    let mut i = start + 1;
    let mut quote: Option<char> = None;
    while i < chars.len() {
        let c = chars[i];
        match quote {
            Some(_) if c == '\\' => i += 1,
            Some(q) if c == q => quote = None,
            Some(_) => {}
            None if c == '"' || c == '\'' => quote = Some(c),
            None if c == '}' => return Some(i),
            None if c == '{' || c == '\n' => return None,
            None => {}
        }
        i += 1;
    }
    None
}

pub fn parse_template(text: &str) -> Result<TemplateDocument, TemplateError> {
    let chars: Vec<char> = text.chars().collect();
    let mut stack: Vec<Open> = vec![Open {
        label: String::new(),
        expr: Expr::Current,
        inverted: false,
        at: Position { line: 1, col: 1 },
        nodes: Vec::new(),
    }];
    let mut buf = String::new();
    let mut i = 0;
    let syntax = |at: usize, message: String| TemplateError::Syntax {
        at: position(&chars, at),
        message,
    };
    while i < chars.len() {
        let c = chars[i];
        if c != '{' {
            buf.push(c);
            i += 1;
            continue;
        }
        if chars.get(i + 1) == Some(&'{') {
            buf.push('{');
            i += 2;
            continue;
        }
        let end = tag_end(&chars, i).ok_or_else(|| syntax(i, "unclosed tag".into()))?;
        let inner: String = chars[i + 1..end].iter().collect();
        let at = position(&chars, i);
        let top = stack.last_mut().unwrap();
        if !buf.is_empty() {
            top.nodes.push(Node::Static(std::mem::take(&mut buf)));
        }
        let (sigil, body) = match inner.chars().next() {
            Some(s @ ('#' | '^' | '/')) => (Some(s), inner[1..].trim().to_string()),
            _ => (None, inner.trim().to_string()),
        };
        if body.is_empty() {
            return Err(syntax(i, "empty tag".into()));
        }
        let parse = |src: &str| {
            parse_expr(src).map_err(|e| TemplateError::Syntax {
                at,
                message: format!("in {{{inner}}}: {} (at offset {})", e.message, e.offset),
            })
        };
        match sigil {
            Some('/') => {
                if stack.len() == 1 {
                    return Err(syntax(i, format!("'{{/{body}}}' closes no section")));
                }
                let open = stack.pop().unwrap();
                if open.label != body {
                    return Err(syntax(
                        i,
                        format!("'{{/{body}}}' does not match open section '{}' at {}", open.label, open.at),
                    ));
                }
                stack.last_mut().unwrap().nodes.push(Node::Section {
                    source: open.label,
                    expr: open.expr,
                    inverted: open.inverted,
                    body: open.nodes,
                    at: open.at,
                });
            }
            Some(s) => {
                let expr = parse(&body)?;
                stack.push(Open {
                    label: body,
                    expr,
                    inverted: s == '^',
                    at,
                    nodes: Vec::new(),
                });
            }
            None => {
                let expr = parse(&body)?;
                top.nodes.push(Node::Tag {
                    source: body,
                    expr,
                    at,
                });
            }
        }
        i = end + 1;
    }
    if stack.len() > 1 {
        let open = stack.pop().unwrap();
        return Err(TemplateError::Syntax {
            at: open.at,
            message: format!("section '{}' is never closed", open.label),
        });
    }
    let mut root = stack.pop().unwrap();
    if !buf.is_empty() {
        root.nodes.push(Node::Static(buf));
    }
    Ok(TemplateDocument { nodes: root.nodes })
}

struct Frame {
    value: Value,
    index: Option<usize>,
}

struct Context {
    frames: Vec<Frame>,
}

impl Scope for Context {
    fn lookup(&self, name: &str) -> Value {
        for f in self.frames.iter().rev() {
            if name == "@index" {
                if let Some(i) = f.index {
                    return Value::from(i);
                }
                continue;
            }
            if let Some(v) = f.value.get(name) {
                return v.clone();
            }
        }
        Value::Null
    }

    fn current(&self) -> Value {
        self.frames.last().map_or(Value::Null, |f| f.value.clone())
    }
}

struct Renderer {
    mode: Mode,
    out: String,
    unresolved: Vec<UnresolvedTag>,
}

impl Renderer {
    fn eval(&self, ctx: &Context, source: &str, expr: &Expr, at: Position) -> Result<Value, TemplateError> {
        eval(expr, ctx).map_err(|e| TemplateError::Type {
            tag: source.to_string(),
            at,
            message: e.0,
        })
    }

    fn nodes(&mut self, nodes: &[Node], ctx: &mut Context) -> Result<(), TemplateError> {
        for n in nodes {
            match n {
                Node::Static(s) => self.out.push_str(s),
                Node::Tag { source, expr, at } => {
                    let v = self.eval(ctx, source, expr, *at)?;
                    if v.is_null() && self.mode == Mode::Strict {
                        self.unresolved.push(UnresolvedTag {
                            tag: source.clone(),
                            at: *at,
                        });
                    }
                    self.out.push_str(&stringify(&v));
                }
                Node::Section {
                    source,
                    expr,
                    inverted,
                    body,
                    at,
                } => {
                    let v = self.eval(ctx, source, expr, *at)?;
                    if *inverted {
                        if !truthy(&v) {
                            self.nodes(body, ctx)?;
                        }
                        continue;
                    }
                    let items: Vec<(Value, Option<usize>)> = match v {
                        Value::Array(items) => items
                            .into_iter()
                            .enumerate()
                            .map(|(i, v)| (v, Some(i)))
                            .collect(),
                        v if truthy(&v) => vec![(v, None)],
                        _ => Vec::new(),
                    };
                    for (value, index) in items {
                        ctx.frames.push(Frame { value, index });
                        let r = self.nodes(body, ctx);
                        ctx.frames.pop();
                        r?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Renders `tpl` over `data`. In strict mode every tag that evaluates to
/// null is collected and reported together.
pub fn render(tpl: &TemplateDocument, data: &Value, mode: Mode) -> Result<String, TemplateError> {
    let mut ctx = Context {
        frames: vec![Frame {
            value: data.clone(),
            index: None,
        }],
    };
    let mut r = Renderer {
        mode,
        out: String::new(),
        unresolved: Vec::new(),
    };
    r.nodes(&tpl.nodes, &mut ctx)?;
    if !r.unresolved.is_empty() {
        return Err(TemplateError::UnresolvedTags(r.unresolved));
    }
    Ok(r.out)
}
