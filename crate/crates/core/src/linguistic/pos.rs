use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Universal Dependencies part-of-speech tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Upos {
    ADJ,
    ADP,
    ADV,
    AUX,
    CCONJ,
    DET,
    INTJ,
    NOUN,
    NUM,
    PART,
    PRON,
    PROPN,
    PUNCT,
    SCONJ,
    SYM,
    VERB,
    X,
}

impl Upos {
    pub const ALL: [Upos; 17] = [
        Upos::ADJ,
        Upos::ADP,
        Upos::ADV,
        Upos::AUX,
        Upos::CCONJ,
        Upos::DET,
        Upos::INTJ,
        Upos::NOUN,
        Upos::NUM,
        Upos::PART,
        Upos::PRON,
        Upos::PROPN,
        Upos::PUNCT,
        Upos::SCONJ,
        Upos::SYM,
        Upos::VERB,
        Upos::X,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Upos::ADJ => "ADJ",
            Upos::ADP => "ADP",
            Upos::ADV => "ADV",
            Upos::AUX => "AUX",
            Upos::CCONJ => "CCONJ",
            Upos::DET => "DET",
            Upos::INTJ => "INTJ",
            Upos::NOUN => "NOUN",
            Upos::NUM => "NUM",
            Upos::PART => "PART",
            Upos::PRON => "PRON",
            Upos::PROPN => "PROPN",
            Upos::PUNCT => "PUNCT",
            Upos::SCONJ => "SCONJ",
            Upos::SYM => "SYM",
            Upos::VERB => "VERB",
            Upos::X => "X",
        }
    }
}

impl FromStr for Upos {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        Upos::ALL.into_iter().find(|u| u.as_str() == s).ok_or(())
    }
}

impl fmt::Display for Upos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Part-of-speech categories usable in patterns and glossary terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PosCategory {
    Verb,
    Noun,
    ProperNoun,
    Adjective,
    Adverb,
    Determiner,
    Preposition,
    Pronoun,
    Conjunction,
    Number,
}

impl PosCategory {
    pub const ALL: [PosCategory; 10] = [
        PosCategory::Verb,
        PosCategory::Noun,
        PosCategory::ProperNoun,
        PosCategory::Adjective,
        PosCategory::Adverb,
        PosCategory::Determiner,
        PosCategory::Preposition,
        PosCategory::Pronoun,
        PosCategory::Conjunction,
        PosCategory::Number,
    ];

    pub fn upos(self) -> Upos {
        match self {
            PosCategory::Verb => Upos::VERB,
            PosCategory::Noun => Upos::NOUN,
            PosCategory::ProperNoun => Upos::PROPN,
            PosCategory::Adjective => Upos::ADJ,
            PosCategory::Adverb => Upos::ADV,
            PosCategory::Determiner => Upos::DET,
            PosCategory::Preposition => Upos::ADP,
            PosCategory::Pronoun => Upos::PRON,
            PosCategory::Conjunction => Upos::CCONJ,
            PosCategory::Number => Upos::NUM,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PosCategory::Verb => "Verb",
            PosCategory::Noun => "Noun",
            PosCategory::ProperNoun => "ProperNoun",
            PosCategory::Adjective => "Adjective",
            PosCategory::Adverb => "Adverb",
            PosCategory::Determiner => "Determiner",
            PosCategory::Preposition => "Preposition",
            PosCategory::Pronoun => "Pronoun",
            PosCategory::Conjunction => "Conjunction",
            PosCategory::Number => "Number",
        }
    }
}

impl FromStr for PosCategory {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        PosCategory::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or(())
    }
}

impl fmt::Display for PosCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn category_mapping_is_injective() {
        let tags: BTreeSet<_> = PosCategory::ALL.iter().map(|c| c.upos()).collect();
        assert_eq!(tags.len(), PosCategory::ALL.len());
    }

    #[test]
    fn names_round_trip() {
        for c in PosCategory::ALL {
            assert_eq!(c.as_str().parse::<PosCategory>(), Ok(c));
        }
        for u in Upos::ALL {
            assert_eq!(u.as_str().parse::<Upos>(), Ok(u));
        }
        assert!("Verbs".parse::<PosCategory>().is_err());
    }
}
