//! The word/phrase to references mapping. Built from the words and
//! phrases loaded in the knowledge base; the supplied index of the source
//! material is never used. Lookups run the query through morphological
//! normalization and the American/British variant map before searching.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use crate::error::Result;
use crate::kb::{fold, KnowledgeBase, SenseKey};
use crate::morph::MorphRuleTable;
use crate::pos::Pos;
use crate::stoplist::StopList;
use crate::variant::VariantTable;

/// Symbolic pointer from an index entry to a paragraph sense.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Reference {
    pub sense: SenseKey,
}

impl std::fmt::Display for Reference {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.sense.fmt(f)
    }
}

/// One lookup result: the index surface that matched and the reference it
/// carries.
#[derive(Debug, Clone)]
pub struct LookupHit {
    pub surface: String,
    pub reference: Reference,
}

#[derive(Debug, Clone, Copy)]
pub struct IndexOptions {
    /// Index two-word phrases under each constituent word as well.
    pub phrase_split: bool,
}

impl Default for IndexOptions {
    fn default() -> Self {
        IndexOptions { phrase_split: true }
    }
}

/// Word lists backing the index: detachment rules with exception lists,
/// spelling variants, and the stop list.
#[derive(Debug, Default)]
pub struct LexicalData {
    pub morph: MorphRuleTable,
    pub variants: VariantTable,
    pub stops: StopList,
}

impl LexicalData {
    /// Loads `ambr.tsv`, `stoplist.txt` and `exc/*.exc` from a data
    /// directory.
    pub fn from_dir(dir: &Path) -> Result<Self> {
        Ok(LexicalData {
            morph: MorphRuleTable::from_dir(&dir.join("exc"))?,
            variants: VariantTable::from_path(&dir.join("ambr.tsv"))?,
            stops: StopList::from_path(&dir.join("stoplist.txt"))?,
        })
    }
}

#[derive(Debug)]
pub struct Index {
    entries: BTreeMap<String, Vec<Reference>>,
    data: LexicalData,
    reference_count: usize,
}

impl Index {
    /// Builds the index over every word and phrase of the knowledge base.
    pub fn build(kb: &KnowledgeBase, data: LexicalData, opts: IndexOptions) -> Index {
        let mut entries: BTreeMap<String, Vec<Reference>> = BTreeMap::new();
        let mut add = |surface: &str, sense: &SenseKey| {
            let refs = entries.entry(fold(surface)).or_default();
            let reference = Reference {
                sense: sense.clone(),
            };
            if !refs.contains(&reference) {
                refs.push(reference);
            }
        };
        for head in kb.heads() {
            for paragraph in &head.paragraphs {
                let sense = &paragraph.sense;
                for group in &paragraph.groups {
                    for word in &group.words {
                        add(&word.text, sense);
                        let tokens: Vec<&str> = word.folded.split_whitespace().collect();
                        if opts.phrase_split && tokens.len() == 2 {
                            add(tokens[0], sense);
                            add(tokens[1], sense);
                        }
                        if tokens.len() >= 2 && (tokens[0] == "to" || tokens[0] == "be") {
                            add(&tokens[1..].join(" "), sense);
                        }
                    }
                }
            }
        }
        for refs in entries.values_mut() {
            refs.sort_by(|a, b| Self::reference_order(a).cmp(&Self::reference_order(b)));
        }
        let reference_count = entries.values().map(|v| v.len()).sum();
        Index {
            entries,
            data,
            reference_count,
        }
    }

    fn reference_order(r: &Reference) -> (u32, usize, String) {
        (
            r.sense.head_num,
            r.sense.pos.order(),
            fold(&r.sense.keyword),
        )
    }

    pub fn data(&self) -> &LexicalData {
        &self.data
    }

    pub fn entry_count(&self) -> usize {
        self.entries.len()
    }

    pub fn reference_count(&self) -> usize {
        self.reference_count
    }

    pub fn contains_entry(&self, surface: &str) -> bool {
        self.entries.contains_key(&fold(surface))
    }

    /// The search forms for a query: the query itself, its candidate base
    /// forms, and the variant image of each.
    pub fn expansions(&self, query: &str) -> Vec<String> {
        let mut forms = self.data.morph.base_forms(query);
        let mut images = Vec::new();
        for form in &forms {
            for img in self.data.variants.images(form) {
                if !forms.contains(&img) && !images.contains(&img) {
                    images.push(img);
                }
            }
        }
        forms.extend(images);
        forms
    }

    /// All references reachable from a query via direct, morphological and
    /// variant matching. Deduplicated by sense; ordered by head number,
    /// then part-of-speech order, then keyword.
    pub fn lookup(&self, query: &str) -> Vec<LookupHit> {
        let mut hits: Vec<LookupHit> = Vec::new();
        for form in self.expansions(query) {
            if let Some(refs) = self.entries.get(&form) {
                for reference in refs {
                    if !hits.iter().any(|h| h.reference == *reference) {
                        hits.push(LookupHit {
                            surface: form.clone(),
                            reference: reference.clone(),
                        });
                    }
                }
            }
        }
        hits.sort_by(|a, b| {
            Self::reference_order(&a.reference).cmp(&Self::reference_order(&b.reference))
        });
        hits
    }

    pub fn lookup_pos(&self, query: &str, pos: Pos) -> Vec<LookupHit> {
        self.lookup(query)
            .into_iter()
            .filter(|h| h.reference.sense.pos == pos)
            .collect()
    }

    /// Distinct paragraph senses a query reaches.
    pub fn senses(&self, query: &str) -> Vec<SenseKey> {
        self.lookup(query)
            .into_iter()
            .map(|h| h.reference.sense)
            .collect()
    }

    pub fn is_stopword(&self, token: &str) -> bool {
        self.data.stops.contains(token)
    }

    /// Iterates all index surfaces (folded).
    pub fn surfaces(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(|k| k.as_str())
    }
}
