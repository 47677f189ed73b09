//! Lexicon-based tagging and pattern matching for linguistic rules.

pub mod analyze;
pub mod lexicon;
pub mod matcher;
pub mod pattern;
pub mod pos;
pub mod rules;

pub use analyze::{analyze, analyze_sentences, Token};
pub use lexicon::{Lexicon, LexiconError, LexiconSet};
pub use matcher::{match_pattern, Expectation, FragmentIndex, MatchResult};
pub use pattern::{PatternExpr, PatternPart};
pub use pos::{PosCategory, Upos};
