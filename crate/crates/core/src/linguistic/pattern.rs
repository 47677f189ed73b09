use std::fmt;

use crate::linguistic::pos::PosCategory;
use crate::model::{ElementKind, Fragment};

/// A compiled linguistic pattern: parts matched left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternExpr {
    pub parts: Vec<PatternPart>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternPart {
    Pos(PosCategory),
    Lit(String),
    FragmentRef(ElementKind, Fragment),
    /// Never nested; members are atoms.
    Alt(Vec<PatternPart>),
}

impl PatternPart {
    fn fmt_atom(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternPart::Pos(c) => write!(f, "{c}"),
            PatternPart::Lit(s) => write!(f, "\"{}\"", escape(s)),
            PatternPart::FragmentRef(k, frag) => write!(f, "{k}.{frag}"),
            PatternPart::Alt(members) => {
                for (i, m) in members.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" | ")?;
                    }
                    m.fmt_atom(f)?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for PatternPart {
    /// Parenthesized rendering used in messages and by the printer.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternPart::Lit(_) => self.fmt_atom(f),
            _ => {
                f.write_str("(")?;
                self.fmt_atom(f)?;
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for PatternExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

pub(crate) fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out
}
