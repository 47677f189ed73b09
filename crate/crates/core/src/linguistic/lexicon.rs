use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock};

use crate::linguistic::pos::Upos;
use crate::model::Language;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexEntry {
    pub upos: Upos,
    pub lemma: String,
}

/// Out-of-vocabulary rule: words ending in `suffix` get `upos`, and their
/// lemma is the word with `strip` removed and `append` added.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixRule {
    pub suffix: String,
    pub upos: Upos,
    pub strip: String,
    pub append: String,
}

impl SuffixRule {
    /// Lemma for `word` if the rule applies. The stem must keep at least two
    /// characters so that short words are not mangled.
    pub fn apply(&self, word: &str) -> Option<String> {
        if !word.ends_with(&self.suffix) || word.chars().count() < self.suffix.chars().count() + 2 {
            return None;
        }
        let base = word.strip_suffix(&self.strip)?;
        Some(format!("{base}{}", self.append))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatIssue {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, thiserror::Error)]
pub enum LexiconError {
    #[error("cannot read lexicon {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed lexicon: {}", format_issues(.0))]
    Format(Vec<FormatIssue>),
}

fn format_issues(issues: &[FormatIssue]) -> String {
    issues
        .iter()
        .map(|i| format!("line {}: {}", i.line, i.message))
        .collect::<Vec<_>>()
        .join("; ")
}

/// Word list with part-of-speech candidates and lemmas.
///
/// File format, UTF-8, one record per line, `#` starts a comment:
///
/// ```text
/// surface<TAB>lemma<TAB>UPOS
/// -suffix<TAB>UPOS<TAB>strip:append
/// ```
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    pub language: String,
    entries: BTreeMap<String, Vec<LexEntry>>,
    suffix_rules: Vec<SuffixRule>,
}

impl Lexicon {
    pub fn new(language: impl Into<String>) -> Self {
        Lexicon {
            language: language.into(),
            ..Default::default()
        }
    }

    pub fn load(path: impl AsRef<Path>, language: impl Into<String>) -> Result<Self, LexiconError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| LexiconError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text, language)
    }

    pub fn parse(text: &str, language: impl Into<String>) -> Result<Self, LexiconError> {
        let mut lex = Lexicon::new(language);
        let mut issues = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            let issue = |message: String| FormatIssue {
                line: i + 1,
                message,
            };
            if fields.len() != 3 {
                issues.push(issue(format!("expected 3 tab-separated fields, found {}", fields.len())));
                continue;
            }
            if let Some(suffix) = fields[0].strip_prefix('-') {
                let Ok(upos) = fields[1].parse::<Upos>() else {
                    issues.push(issue(format!("unknown UPOS tag '{}'", fields[1])));
                    continue;
                };
                let Some((strip, append)) = fields[2].split_once(':') else {
                    issues.push(issue("suffix rewrite must be 'strip:append'".into()));
                    continue;
                };
                if suffix.is_empty() || !suffix.ends_with(strip) {
                    issues.push(issue(format!("'{strip}' is not a suffix of '-{suffix}'")));
                    continue;
                }
                lex.suffix_rules.push(SuffixRule {
                    suffix: suffix.to_lowercase(),
                    upos,
                    strip: strip.to_lowercase(),
                    append: append.to_lowercase(),
                });
                continue;
            }
            let (surface, lemma) = (fields[0].trim(), fields[1].trim());
            if surface.is_empty() || lemma.is_empty() {
                issues.push(issue("empty surface or lemma".into()));
                continue;
            }
            let Ok(upos) = fields[2].trim().parse::<Upos>() else {
                issues.push(issue(format!("unknown UPOS tag '{}'", fields[2])));
                continue;
            };
            lex.insert(surface, lemma, upos);
        }
        if issues.is_empty() {
            Ok(lex)
        } else {
            Err(LexiconError::Format(issues))
        }
    }

    pub fn insert(&mut self, surface: &str, lemma: &str, upos: Upos) {
        let entry = LexEntry {
            upos,
            lemma: lemma.to_lowercase(),
        };
        let slot = self.entries.entry(surface.to_lowercase()).or_default();
        if !slot.contains(&entry) {
            slot.push(entry);
        }
    }

    pub fn add_suffix_rule(&mut self, rule: SuffixRule) {
        self.suffix_rules.push(rule);
    }

    /// Entries for a word, case-insensitively, in file order.
    pub fn lookup(&self, word: &str) -> &[LexEntry] {
        self.entries
            .get(&word.to_lowercase())
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn suffix_rules(&self) -> &[SuffixRule] {
        &self.suffix_rules
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The lexicon shipped for `language`, if any.
    pub fn builtin(language: Language) -> Option<Arc<Lexicon>> {
        static EN: OnceLock<Arc<Lexicon>> = OnceLock::new();
        static PT: OnceLock<Arc<Lexicon>> = OnceLock::new();
        let (cell, text) = match language {
            Language::English => (&EN, include_str!("../../lexicons/en.tsv")),
            Language::Portuguese => (&PT, include_str!("../../lexicons/pt.tsv")),
            _ => return None,
        };
        Some(
            cell.get_or_init(|| {
                Arc::new(Lexicon::parse(text, language.tag()).expect("shipped lexicon is well formed"))
            })
            .clone(),
        )
    }
}

/// Lexicons by language: the shipped ones plus user overrides.
#[derive(Debug, Clone, Default)]
pub struct LexiconSet {
    overrides: BTreeMap<Language, Arc<Lexicon>>,
}

impl LexiconSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, language: Language, lexicon: Lexicon) -> Self {
        self.insert(language, lexicon);
        self
    }

    pub fn insert(&mut self, language: Language, lexicon: Lexicon) {
        self.overrides.insert(language, Arc::new(lexicon));
    }

    pub fn get(&self, language: Language) -> Option<Arc<Lexicon>> {
        self.overrides
            .get(&language)
            .cloned()
            .or_else(|| Lexicon::builtin(language))
    }
}
