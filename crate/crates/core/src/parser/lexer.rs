use std::path::Path;
use std::sync::Arc;

use crate::model::{codes, Diagnostic, LineIndex, SourceSpan};

/// Declaration keywords; parsing resynchronizes on these after an error.
pub const TOP_LEVEL_KEYWORDS: &[&str] = &[
    "DataEntity",
    "Actor",
    "UseCase",
    "Term",
    "LinguisticRule",
    "LinguisticLanguage",
    "Stakeholder",
    "FunctionalRequirement",
    "Include",
    "IncludeAll",
    "Import",
];

/// Keywords that only introduce items inside a body or declaration.
pub const BODY_KEYWORDS: &[&str] = &[
    "attribute",
    "constraints",
    "defaultValue",
    "description",
    "isA",
    "partOf",
    "primaryActor",
    "dataEntity",
    "actions",
    "extensionPoints",
    "extends",
    "onExtensionPoint",
    "precondition",
    "synonyms",
    "property",
    "pattern",
    "severity",
    "fromSystem",
    "element",
];

pub const PUNCTUATION: &[char] = &[':', '[', ']', '(', ')', ',', '+', '|', '.'];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Keyword,
    Identifier,
    QuotedString,
    Punct(char),
    End,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RslToken {
    pub kind: TokenKind,
    /// Word text, punctuation character, or decoded string contents.
    pub text: String,
    pub span: SourceSpan,
}

impl RslToken {
    pub fn is_top_level_keyword(&self) -> bool {
        self.kind == TokenKind::Keyword && TOP_LEVEL_KEYWORDS.contains(&self.text.as_str())
    }
}

pub fn is_keyword(word: &str) -> bool {
    TOP_LEVEL_KEYWORDS.contains(&word) || BODY_KEYWORDS.contains(&word)
}

/// Splits a document into tokens. Always ends with an `End` token.
pub fn tokenize(source: &str, file: &Arc<Path>, index: &LineIndex) -> (Vec<RslToken>, Vec<Diagnostic>) {
    let mut tokens = Vec::new();
    let mut diags = Vec::new();
    let bytes = source.as_bytes();
    let mut chars = source.char_indices().peekable();

    while let Some(&(start, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c == '/' && bytes.get(start + 1) == Some(&b'/') {
            while let Some(&(_, c)) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
            }
            continue;
        }
        if c.is_ascii_alphanumeric() || c == '_' {
            let mut end = start;
            while let Some(&(i, c)) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    end = i + c.len_utf8();
                    chars.next();
                } else {
                    break;
                }
            }
            let text = &source[start..end];
            let kind = if is_keyword(text) {
                TokenKind::Keyword
            } else {
                TokenKind::Identifier
            };
            tokens.push(RslToken {
                kind,
                text: text.to_string(),
                span: index.span(file, start, end),
            });
            continue;
        }
        if c == '"' {
            chars.next();
            let mut value = String::new();
            let mut end = None;
            while let Some((i, c)) = chars.next() {
                match c {
                    '"' => {
                        end = Some(i + 1);
                        break;
                    }
                    '\\' => match chars.peek() {
                        Some(&(_, n)) if n == '"' || n == '\\' => {
                            value.push(n);
                            chars.next();
                        }
                        _ => value.push('\\'),
                    },
                    c => value.push(c),
                }
            }
            let end = match end {
                Some(e) => e,
                None => {
                    diags.push(Diagnostic::error(
                        codes::UNTERMINATED_STRING,
                        "unterminated string literal",
                        index.span(file, start, source.len()),
                    ));
                    source.len()
                }
            };
            tokens.push(RslToken {
                kind: TokenKind::QuotedString,
                text: value,
                span: index.span(file, start, end),
            });
            continue;
        }
        chars.next();
        let end = start + c.len_utf8();
        if PUNCTUATION.contains(&c) {
            tokens.push(RslToken {
                kind: TokenKind::Punct(c),
                text: c.to_string(),
                span: index.span(file, start, end),
            });
        } else {
            diags.push(Diagnostic::error(
                codes::INVALID_CHARACTER,
                format!("invalid character '{}'", c.escape_debug()),
                index.span(file, start, end),
            ));
        }
    }
    tokens.push(RslToken {
        kind: TokenKind::End,
        text: String::new(),
        span: index.span(file, source.len(), source.len()),
    });
    (tokens, diags)
}

/// Maps an offset into a decoded string literal back to the source.
///
/// `literal` is the span of the literal including its quotes.
pub fn literal_offset(source: &str, literal: &SourceSpan, decoded: usize) -> usize {
    let raw = &source[literal.range()];
    let mut decoded_pos = 0;
    let mut iter = raw.char_indices().skip(1).peekable();
    while let Some((i, c)) = iter.next() {
        if decoded_pos >= decoded {
            return literal.byte_offset + i;
        }
        match c {
            '"' => return literal.byte_offset + i,
            '\\' => match iter.peek() {
                Some(&(_, n)) if n == '"' || n == '\\' => {
                    iter.next();
                    decoded_pos += 1;
                }
                _ => decoded_pos += 1,
            },
            c => decoded_pos += c.len_utf8(),
        }
    }
    literal.end_offset()
}
