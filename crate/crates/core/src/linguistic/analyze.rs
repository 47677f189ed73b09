use std::collections::BTreeSet;
use std::ops::Range;

use crate::linguistic::lexicon::Lexicon;
use crate::linguistic::pos::Upos;

/// A tagged word. `range` is a byte range into the analyzed text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    pub lemma: String,
    pub tags: BTreeSet<Upos>,
    pub range: Range<usize>,
}

impl Token {
    pub fn has(&self, tag: Upos) -> bool {
        self.tags.contains(&tag)
    }

    pub fn is_capitalized(&self) -> bool {
        self.surface.chars().next().is_some_and(char::is_uppercase)
    }
}

/// A word span found by [`words`], together with whether a sentence
/// terminator precedes it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    pub range: Range<usize>,
    pub starts_sentence: bool,
}

fn joiner(c: char) -> bool {
    matches!(c, '-' | '\'' | '’')
}

/// Splits `text` into words. A word is a run of alphanumeric characters,
/// possibly joined by hyphens or apostrophes (`e-mail`, `customer's`) or, between
/// digits, by `.` and `,` (`1.5`). Everything else separates words, and `.`,
/// `!` and `?` also end a sentence.
pub fn words(text: &str) -> Vec<Word> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let mut sentence_break = true;
    while i < chars.len() {
        let (start, c) = chars[i];
        if !c.is_alphanumeric() {
            if matches!(c, '.' | '!' | '?') {
                sentence_break = true;
            }
            i += 1;
            continue;
        }
        let mut j = i + 1;
        while j < chars.len() {
            let c = chars[j].1;
            if c.is_alphanumeric() {
                j += 1;
                continue;
            }
            let next = chars.get(j + 1).map(|&(_, n)| n);
            let prev = chars[j - 1].1;
            let joins = match next {
                Some(n) if joiner(c) => n.is_alphanumeric(),
                Some(n) if matches!(c, '.' | ',') => prev.is_ascii_digit() && n.is_ascii_digit(),
                _ => false,
            };
            if !joins {
                break;
            }
            j += 2;
        }
        let end = chars.get(j).map_or(text.len(), |&(o, _)| o);
        out.push(Word {
            range: start..end,
            starts_sentence: sentence_break,
        });
        sentence_break = false;
        i = j;
    }
    out
}

fn is_number(word: &str) -> bool {
    word.chars().next().is_some_and(|c| c.is_ascii_digit())
        && word.chars().all(|c| c.is_ascii_digit() || c == '.' || c == ',')
}

/// Tags one word. `initial` tells whether it opens a sentence, which matters
/// for the proper-noun guess on unknown capitalized words.
pub fn tag_word(surface: &str, initial: bool, lex: &Lexicon) -> (String, BTreeSet<Upos>) {
    let entries = lex.lookup(surface);
    if let Some(first) = entries.first() {
        return (first.lemma.clone(), entries.iter().map(|e| e.upos).collect());
    }
    let lower = surface.to_lowercase();
    if is_number(surface) {
        return (lower, BTreeSet::from([Upos::NUM]));
    }
    for rule in lex.suffix_rules() {
        if let Some(lemma) = rule.apply(&lower) {
            return (lemma, BTreeSet::from([rule.upos]));
        }
    }
    let capitalized = surface.chars().next().is_some_and(char::is_uppercase);
    let tag = if capitalized && !initial {
        Upos::PROPN
    } else {
        Upos::NOUN
    };
    (lower, BTreeSet::from([tag]))
}

/// Tokenizes and tags `text`, grouping tokens by sentence.
pub fn analyze_sentences(text: &str, lex: &Lexicon) -> Vec<Vec<Token>> {
    let mut sentences: Vec<Vec<Token>> = Vec::new();
    for word in words(text) {
        let surface = &text[word.range.clone()];
        let (lemma, tags) = tag_word(surface, word.starts_sentence, lex);
        if word.starts_sentence || sentences.is_empty() {
            sentences.push(Vec::new());
        }
        sentences.last_mut().unwrap().push(Token {
            surface: surface.to_string(),
            lemma,
            tags,
            range: word.range,
        });
    }
    sentences
}

/// Tokenizes and tags `text` as a flat token list.
pub fn analyze(text: &str, lex: &Lexicon) -> Vec<Token> {
    analyze_sentences(text, lex).into_iter().flatten().collect()
}
