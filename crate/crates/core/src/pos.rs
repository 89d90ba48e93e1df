use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::LexError;

/// Part-of-speech label of a paragraph. Paragraphs within a head are
/// grouped in this fixed order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Pos {
    Noun,
    Adjective,
    Verb,
    Adverb,
    Interjection,
}

impl Pos {
    pub const ALL: [Pos; 5] = [
        Pos::Noun,
        Pos::Adjective,
        Pos::Verb,
        Pos::Adverb,
        Pos::Interjection,
    ];

    /// The label as printed in references and paragraph headers.
    pub fn label(self) -> &'static str {
        match self {
            Pos::Noun => "N.",
            Pos::Adjective => "ADJ.",
            Pos::Verb => "VB.",
            Pos::Adverb => "ADV.",
            Pos::Interjection => "INT.",
        }
    }

    /// Position of this label in the canonical paragraph order.
    pub fn order(self) -> usize {
        match self {
            Pos::Noun => 0,
            Pos::Adjective => 1,
            Pos::Verb => 2,
            Pos::Adverb => 3,
            Pos::Interjection => 4,
        }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Pos {
    type Err = LexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "N." => Ok(Pos::Noun),
            "ADJ." => Ok(Pos::Adjective),
            "VB." => Ok(Pos::Verb),
            "ADV." => Ok(Pos::Adverb),
            "INT." => Ok(Pos::Interjection),
            _ => Err(LexError::BadPosLabel(s.to_string())),
        }
    }
}
