use std::collections::BTreeMap;
use std::fmt;

use crate::linguistic::analyze::{words, Token};
use crate::linguistic::pattern::{PatternExpr, PatternPart};
use crate::linguistic::pos::PosCategory;
use crate::model::{Element, ElementKind, Fragment};

/// Lowercased word sequences of every element fragment, by (kind, fragment).
#[derive(Debug, Clone, Default)]
pub struct FragmentIndex {
    map: BTreeMap<(ElementKind, Fragment), Vec<Vec<String>>>,
}

impl FragmentIndex {
    pub fn new<'a>(elements: impl IntoIterator<Item = &'a Element>) -> Self {
        let mut index = FragmentIndex::default();
        for e in elements {
            for f in [Fragment::Id, Fragment::Name, Fragment::Description] {
                if let Some((text, _)) = e.fragment(f) {
                    index.insert(e.kind(), f, text);
                }
            }
        }
        index
    }

    pub fn insert(&mut self, kind: ElementKind, fragment: Fragment, text: &str) {
        let seq: Vec<String> = words(text)
            .into_iter()
            .map(|w| text[w.range].to_lowercase())
            .collect();
        if seq.is_empty() {
            return;
        }
        let slot = self.map.entry((kind, fragment)).or_default();
        if !slot.contains(&seq) {
            slot.push(seq);
        }
    }

    /// Length of the longest run starting at `tokens[0]` that spells some
    /// fragment. Each token may match by surface or by lemma.
    fn longest_run(&self, kind: ElementKind, fragment: Fragment, tokens: &[Token]) -> usize {
        let Some(seqs) = self.map.get(&(kind, fragment)) else {
            return 0;
        };
        seqs.iter()
            .filter(|seq| {
                seq.len() <= tokens.len()
                    && seq.iter().zip(tokens).all(|(w, t)| {
                        t.surface.to_lowercase() == *w || t.lemma == *w
                    })
            })
            .map(Vec::len)
            .max()
            .unwrap_or(0)
    }
}

/// What the failing pattern part wanted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expectation {
    Pos(PosCategory),
    Word(String),
    OneOf(Vec<PatternPart>),
    Fragment {
        kind: ElementKind,
        fragment: Fragment,
        /// Suggested element text taken from the unmatched tokens.
        candidate: Option<String>,
    },
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expectation::Pos(c) => write!(f, "Expected a {c}"),
            Expectation::Word(w) => write!(f, "Expected the word '{w}'"),
            Expectation::OneOf(parts) => {
                write!(f, "Expected one of {}", PatternPart::Alt(parts.clone()))
            }
            Expectation::Fragment {
                kind,
                fragment,
                candidate: Some(c),
            } => write!(
                f,
                "The word '{c}' is expected to be the {fragment} of a/an '{kind}'"
            ),
            Expectation::Fragment {
                kind,
                fragment,
                candidate: None,
            } => write!(f, "Expected the {fragment} of a/an '{kind}'"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchResult {
    /// The pattern consumed this many leading tokens.
    Matched(usize),
    /// Part `part` (0-based) failed at token `token` (0-based, may equal the
    /// token count when the text ran out).
    Failed {
        part: usize,
        token: usize,
        expected: Expectation,
    },
}

impl MatchResult {
    pub fn is_match(&self) -> bool {
        matches!(self, MatchResult::Matched(_))
    }
}

/// Tokens consumed by a single atom at the head of `tokens`, 0 if it fails.
fn consume(part: &PatternPart, tokens: &[Token], index: &FragmentIndex) -> usize {
    match part {
        PatternPart::Pos(c) => usize::from(tokens.first().is_some_and(|t| t.has(c.upos()))),
        PatternPart::Lit(s) => usize::from(
            tokens
                .first()
                .is_some_and(|t| t.surface.to_lowercase() == s.to_lowercase()),
        ),
        PatternPart::FragmentRef(k, f) => index.longest_run(*k, *f, tokens),
        PatternPart::Alt(members) => members
            .iter()
            .map(|m| consume(m, tokens, index))
            .max()
            .unwrap_or(0),
    }
}

/// Up to three tokens, first letters uppercased, joined by spaces.
pub fn candidate_name(tokens: &[Token]) -> Option<String> {
    if tokens.is_empty() {
        return None;
    }
    let words: Vec<String> = tokens
        .iter()
        .take(3)
        .map(|t| {
            let mut chars = t.surface.chars();
            let first = chars.next().map(|c| c.to_uppercase().collect::<String>());
            first.unwrap_or_default() + chars.as_str()
        })
        .collect();
    Some(words.join(" "))
}

/// Greedy left-to-right prefix match; trailing tokens are allowed.
pub fn match_pattern(pattern: &PatternExpr, tokens: &[Token], index: &FragmentIndex) -> MatchResult {
    let mut pos = 0;
    for (i, part) in pattern.parts.iter().enumerate() {
        let n = consume(part, &tokens[pos..], index);
        if n == 0 {
            let expected = match part {
                PatternPart::Pos(c) => Expectation::Pos(*c),
                PatternPart::Lit(s) => Expectation::Word(s.clone()),
                PatternPart::Alt(members) => Expectation::OneOf(members.clone()),
                PatternPart::FragmentRef(kind, fragment) => Expectation::Fragment {
                    kind: *kind,
                    fragment: *fragment,
                    candidate: candidate_name(&tokens[pos..]),
                },
            };
            return MatchResult::Failed {
                part: i,
                token: pos,
                expected,
            };
        }
        pos += n;
    }
    MatchResult::Matched(pos)
}
