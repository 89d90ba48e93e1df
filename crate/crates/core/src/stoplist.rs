//! Closed-class and high-frequency tokens excluded from lexical chain
//! candidacy.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use crate::error::{LexError, Result};
use crate::kb::fold;

#[derive(Debug, Default)]
pub struct StopList {
    members: HashSet<String>,
}

impl StopList {
    pub fn new() -> Self {
        Self::default()
    }

    /// Loads a one-token-per-line file.
    pub fn from_path(path: &Path) -> Result<Self> {
        let text =
            fs::read_to_string(path).map_err(|e| LexError::io(path.display().to_string(), e))?;
        Ok(Self::from_text(&text))
    }

    pub fn from_text(text: &str) -> Self {
        let members = text
            .lines()
            .map(|l| fold(l.trim()))
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        StopList { members }
    }

    pub fn contains(&self, token: &str) -> bool {
        if token.is_empty() {
            return false;
        }
        self.members.contains(&fold(token))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_after_fold() {
        let list = StopList::from_text("the\nA\n");
        assert!(list.contains("The"));
        assert!(list.contains("a"));
        assert!(!list.contains("train"));
    }

    #[test]
    fn empty_token_is_never_a_word() {
        let list = StopList::from_text("the\n");
        assert!(!list.contains(""));
    }
}
