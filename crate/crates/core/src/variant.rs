//! Bidirectional American/British spelling map, applied before index
//! search so that either spelling retrieves the stored form.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use crate::error::{LexError, Result};
use crate::kb::fold;

#[derive(Debug, Default)]
pub struct VariantTable {
    am_to_br: HashMap<String, String>,
    br_to_am: HashMap<String, String>,
}

impl VariantTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Loads a tab-separated `american<TAB>british` file.
    pub fn from_path(path: &Path) -> Result<Self> {
        let text =
            fs::read_to_string(path).map_err(|e| LexError::io(path.display().to_string(), e))?;
        Ok(Self::from_text(&text))
    }

    pub fn from_text(text: &str) -> Self {
        let mut table = Self::default();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some((am, br)) = line.split_once('\t') {
                table.insert(am.trim(), br.trim());
            }
        }
        table
    }

    /// Inserts a pair; keeps the mapping injective in each direction by
    /// ignoring a pair whose key is already taken on either side.
    pub fn insert(&mut self, american: &str, british: &str) -> bool {
        let am = fold(american);
        let br = fold(british);
        if am.is_empty() || br.is_empty() || am == br {
            return false;
        }
        if self.am_to_br.contains_key(&am) || self.br_to_am.contains_key(&br) {
            return false;
        }
        self.am_to_br.insert(am.clone(), br.clone());
        self.br_to_am.insert(br, am);
        true
    }

    pub fn am_to_br(&self, american: &str) -> Option<&str> {
        self.am_to_br.get(&fold(american)).map(|s| s.as_str())
    }

    pub fn br_to_am(&self, british: &str) -> Option<&str> {
        self.br_to_am.get(&fold(british)).map(|s| s.as_str())
    }

    /// Images of a word under both directions of the map.
    pub fn images(&self, word: &str) -> Vec<String> {
        let folded = fold(word);
        let mut out = Vec::new();
        if let Some(br) = self.am_to_br.get(&folded) {
            out.push(br.clone());
        }
        if let Some(am) = self.br_to_am.get(&folded) {
            if !out.contains(am) {
                out.push(am.clone());
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.am_to_br.len()
    }

    pub fn is_empty(&self) -> bool {
        self.am_to_br.is_empty()
    }
}
