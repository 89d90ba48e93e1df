//! Suffix-detachment rules and exception lists for reducing inflected
//! forms to base forms. The part-of-speech of an input string is unknown,
//! so every rule table and every exception list is applied; the union of
//! candidates keeps recall high.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use crate::error::{LexError, Result};
use crate::kb::fold;
use crate::pos::Pos;

/// One detachment rule: strip `suffix`, append `replacement`.
#[derive(Debug, Clone, Copy)]
pub struct MorphRule {
    pub pos: Pos,
    pub suffix: &'static str,
    pub replacement: &'static str,
}

/// The 20 transformation rules, in table order: 8 noun, 8 verb, 4 adjective.
pub const RULES: [MorphRule; 20] = [
    MorphRule {
        pos: Pos::Noun,
        suffix: "s",
        replacement: "",
    },
    MorphRule {
        pos: Pos::Noun,
        suffix: "ses",
        replacement: "s",
    },
    MorphRule {
        pos: Pos::Noun,
        suffix: "xes",
        replacement: "x",
    },
    MorphRule {
        pos: Pos::Noun,
        suffix: "zes",
        replacement: "z",
    },
    MorphRule {
        pos: Pos::Noun,
        suffix: "ches",
        replacement: "ch",
    },
    MorphRule {
        pos: Pos::Noun,
        suffix: "shes",
        replacement: "sh",
    },
    MorphRule {
        pos: Pos::Noun,
        suffix: "men",
        replacement: "man",
    },
    MorphRule {
        pos: Pos::Noun,
        suffix: "ies",
        replacement: "y",
    },
    MorphRule {
        pos: Pos::Verb,
        suffix: "s",
        replacement: "",
    },
    MorphRule {
        pos: Pos::Verb,
        suffix: "ies",
        replacement: "y",
    },
    MorphRule {
        pos: Pos::Verb,
        suffix: "es",
        replacement: "e",
    },
    MorphRule {
        pos: Pos::Verb,
        suffix: "es",
        replacement: "",
    },
    MorphRule {
        pos: Pos::Verb,
        suffix: "ed",
        replacement: "e",
    },
    MorphRule {
        pos: Pos::Verb,
        suffix: "ed",
        replacement: "",
    },
    MorphRule {
        pos: Pos::Verb,
        suffix: "ing",
        replacement: "e",
    },
    MorphRule {
        pos: Pos::Verb,
        suffix: "ing",
        replacement: "",
    },
    MorphRule {
        pos: Pos::Adjective,
        suffix: "er",
        replacement: "",
    },
    MorphRule {
        pos: Pos::Adjective,
        suffix: "est",
        replacement: "",
    },
    MorphRule {
        pos: Pos::Adjective,
        suffix: "er",
        replacement: "e",
    },
    MorphRule {
        pos: Pos::Adjective,
        suffix: "est",
        replacement: "e",
    },
];

/// Detachment rules plus pluggable per-POS exception lists. Exception
/// lookup precedes rule application; the exception hit is listed before
/// any rule-detachment result.
#[derive(Debug, Default)]
pub struct MorphRuleTable {
    /// inflected -> base forms, per part-of-speech list.
    exceptions: HashMap<String, Vec<String>>,
    exception_counts: [usize; 4],
}

impl MorphRuleTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Loads `noun.exc`, `verb.exc`, `adj.exc`, `adv.exc` from a directory.
    /// Each file holds one `inflected base` pair per line.
    pub fn from_dir(dir: &Path) -> Result<Self> {
        let mut table = Self::default();
        for (slot, name) in ["noun.exc", "verb.exc", "adj.exc", "adv.exc"]
            .iter()
            .enumerate()
        {
            let path = dir.join(name);
            let text = fs::read_to_string(&path)
                .map_err(|e| LexError::io(path.display().to_string(), e))?;
            table.exception_counts[slot] = table.load_exceptions(&text);
        }
        Ok(table)
    }

    /// Parses one exception list, returning the number of pairs read.
    pub fn load_exceptions(&mut self, text: &str) -> usize {
        let mut count = 0;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_whitespace();
            if let (Some(inflected), Some(base)) = (fields.next(), fields.next()) {
                let entry = self.exceptions.entry(fold(inflected)).or_default();
                let base = fold(base);
                if !entry.contains(&base) {
                    entry.push(base);
                }
                count += 1;
            }
        }
        count
    }

    pub fn exception_counts(&self) -> [usize; 4] {
        self.exception_counts
    }

    /// All candidate base forms of a surface: the surface itself, any
    /// exception-list hits, then every rule detachment across all tables.
    /// Candidates are deduplicated, order preserved.
    pub fn base_forms(&self, surface: &str) -> Vec<String> {
        let surface = fold(surface);
        let mut out = vec![surface.clone()];
        if let Some(bases) = self.exceptions.get(&surface) {
            for base in bases {
                if !out.contains(base) {
                    out.push(base.clone());
                }
            }
        }
        for rule in RULES {
            if let Some(stem) = surface.strip_suffix(rule.suffix) {
                let candidate = format!("{stem}{}", rule.replacement);
                if !candidate.is_empty() && !out.contains(&candidate) {
                    out.push(candidate);
                }
            }
        }
        out
    }
}
