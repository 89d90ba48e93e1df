//! Immutable in-memory model of the loaded thesaurus: the taxonomy
//! (classes, sections, sub-sections, head groups), the heads with their
//! part-of-speech paragraph blocks, semicolon groups, and the explicit
//! cross-relations between paragraphs.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{LexError, Result};
use crate::pos::Pos;

/// Case folding used for all word matching. Original casing is kept for
/// display only.
pub fn fold(s: &str) -> String {
    s.to_lowercase()
}

/// Full hierarchical coordinate of a head.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TaxonomyAddress {
    pub class_num: u32,
    pub class_name: String,
    /// Global section number (1..39 in the full data).
    pub section_num: u32,
    pub section_name: String,
    /// May be empty: not every section is divided into sub-sections.
    pub subsection_name: String,
    /// Declared head-group members, 1 to 3 consecutive head numbers.
    pub headgroup: Vec<u32>,
    pub head_num: u32,
    pub head_name: String,
}

/// The triple that uniquely identifies a paragraph sense.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SenseKey {
    pub head_num: u32,
    pub keyword: String,
    pub pos: Pos,
}

impl SenseKey {
    pub fn new(head_num: u32, keyword: impl Into<String>, pos: Pos) -> Self {
        SenseKey {
            head_num,
            keyword: keyword.into(),
            pos,
        }
    }
}

impl fmt::Display for SenseKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.keyword, self.head_num, self.pos)
    }
}

/// Per-word style markers carried over from the source material.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StyleTag {
    Derog,
    E,
    Tdmk,
    Vulg,
}

impl StyleTag {
    pub fn parse(s: &str) -> Option<StyleTag> {
        match s {
            "derog" => Some(StyleTag::Derog),
            "e" => Some(StyleTag::E),
            "tdmk" => Some(StyleTag::Tdmk),
            "vulg" => Some(StyleTag::Vulg),
            _ => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            StyleTag::Derog => "derog",
            StyleTag::E => "e",
            StyleTag::Tdmk => "tdmk",
            StyleTag::Vulg => "vulg",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RelationKind {
    CrossReference,
    See,
}

/// An explicit link from a semicolon group to a paragraph elsewhere.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExplicitRelation {
    pub kind: RelationKind,
    pub target_head: u32,
    pub target_keyword: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupWord {
    /// Original casing, for display.
    pub text: String,
    /// Lowercase-folded form used for matching.
    pub folded: String,
    pub tag: Option<StyleTag>,
}

impl GroupWord {
    pub fn new(text: impl Into<String>) -> Self {
        let text = text.into();
        let folded = fold(&text);
        GroupWord {
            text,
            folded,
            tag: None,
        }
    }
}

/// The smallest cluster of closely related words and phrases.
#[derive(Debug, Clone, Serialize)]
pub struct SemicolonGroup {
    pub words: Vec<GroupWord>,
    pub relations: Vec<ExplicitRelation>,
}

impl SemicolonGroup {
    pub fn contains_any(&self, folded_forms: &[&str]) -> bool {
        self.words
            .iter()
            .any(|w| folded_forms.iter().any(|f| *f == w.folded))
    }

    /// Words plus the keywords of attached relations, folded. The printed
    /// group includes its cross-reference keywords, so overlap matching
    /// against external word sets sees them too.
    pub fn surface_and_relation_words(&self) -> Vec<String> {
        let mut out: Vec<String> = self.words.iter().map(|w| w.folded.clone()).collect();
        out.extend(self.relations.iter().map(|r| fold(&r.target_keyword)));
        out
    }
}

/// A keyword-led sequence of semicolon groups; the unit a [`SenseKey`]
/// identifies.
#[derive(Debug, Clone, Serialize)]
pub struct Paragraph {
    pub sense: SenseKey,
    pub groups: Vec<SemicolonGroup>,
}

impl Paragraph {
    /// Index of the first group containing any of the folded forms.
    pub fn locate_any(&self, folded_forms: &[&str]) -> Option<usize> {
        self.groups
            .iter()
            .position(|g| g.contains_any(folded_forms))
    }

    pub fn word_count(&self) -> usize {
        self.groups.iter().map(|g| g.words.len()).sum()
    }

    /// All folded group words of the paragraph, in order.
    pub fn all_words(&self) -> impl Iterator<Item = &GroupWord> {
        self.groups.iter().flat_map(|g| g.words.iter())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Head {
    pub address: TaxonomyAddress,
    /// Grouped by part-of-speech in the fixed order N., ADJ., VB., ADV., INT.
    pub paragraphs: Vec<Paragraph>,
}

impl Head {
    pub fn paragraphs_for(&self, pos: Pos) -> impl Iterator<Item = &Paragraph> {
        self.paragraphs.iter().filter(move |p| p.sense.pos == pos)
    }

    pub fn paragraph(&self, keyword: &str, pos: Pos) -> Option<&Paragraph> {
        self.paragraphs
            .iter()
            .find(|p| p.sense.pos == pos && p.sense.keyword == keyword)
    }

    /// First paragraph with the given keyword under any part-of-speech.
    pub fn paragraph_any_pos(&self, keyword: &str) -> Option<&Paragraph> {
        let folded = fold(keyword);
        self.paragraphs
            .iter()
            .find(|p| fold(&p.sense.keyword) == folded)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassInfo {
    pub num: u32,
    pub name: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SectionInfo {
    pub class_num: u32,
    /// Global section number.
    pub num: u32,
    pub name: String,
}

/// Census counts of a loaded knowledge base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KbStats {
    pub classes: usize,
    pub sections: usize,
    pub heads: usize,
    pub paragraphs: usize,
    pub groups: usize,
    pub words: usize,
}

/// The loaded thesaurus. Immutable after construction; all queries are
/// pure reads.
#[derive(Debug, Default)]
pub struct KnowledgeBase {
    pub(crate) classes: Vec<ClassInfo>,
    pub(crate) sections: Vec<SectionInfo>,
    pub(crate) heads: BTreeMap<u32, Head>,
    /// Non-fatal findings from load-time validation.
    pub(crate) warnings: Vec<String>,
}

impl KnowledgeBase {
    pub fn get_head(&self, head_num: u32) -> Result<&Head> {
        self.heads
            .get(&head_num)
            .ok_or(LexError::HeadNotFound(head_num))
    }

    /// Looks a sense up in the text: the paragraph whose keyword, head and
    /// part-of-speech match exactly.
    pub fn resolve(&self, sense: &SenseKey) -> Result<&Paragraph> {
        let head = self
            .heads
            .get(&sense.head_num)
            .ok_or_else(|| LexError::DanglingReference(sense.clone()))?;
        head.paragraph(&sense.keyword, sense.pos)
            .ok_or_else(|| LexError::DanglingReference(sense.clone()))
    }

    /// Index of the first semicolon group of `sense` containing `word`
    /// after lowercase comparison.
    pub fn locate(&self, sense: &SenseKey, word: &str) -> Result<usize> {
        self.locate_with(sense, &[word])
    }

    /// Like [`locate`](Self::locate), but also accepts caller-supplied
    /// spelling or morphological variants of the query word.
    pub fn locate_with(&self, sense: &SenseKey, forms: &[&str]) -> Result<usize> {
        let paragraph = self.resolve(sense)?;
        let folded: Vec<String> = forms.iter().map(|f| fold(f)).collect();
        let refs: Vec<&str> = folded.iter().map(|s| s.as_str()).collect();
        paragraph
            .locate_any(&refs)
            .ok_or_else(|| LexError::WordNotInParagraph {
                sense: sense.clone(),
                word: forms.first().copied().unwrap_or("").to_string(),
            })
    }

    /// Heads in ascending head-number order.
    pub fn heads(&self) -> impl Iterator<Item = &Head> {
        self.heads.values()
    }

    pub fn head_count(&self) -> usize {
        self.heads.len()
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn sections(&self) -> &[SectionInfo] {
        &self.sections
    }

    pub fn class_name(&self, num: u32) -> Option<&str> {
        self.classes
            .iter()
            .find(|c| c.num == num)
            .map(|c| c.name.as_str())
    }

    /// 1-based position of a section within its class, in declaration
    /// order. Path rendering spells sections by this ordinal.
    pub fn section_ordinal(&self, class_num: u32, section_num: u32) -> Option<usize> {
        let mut ord = 0;
        for s in &self.sections {
            if s.class_num == class_num {
                ord += 1;
                if s.num == section_num {
                    return Some(ord);
                }
            }
        }
        None
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn stats(&self) -> KbStats {
        let mut paragraphs = 0;
        let mut groups = 0;
        let mut words = 0;
        for head in self.heads.values() {
            paragraphs += head.paragraphs.len();
            for p in &head.paragraphs {
                groups += p.groups.len();
                words += p.word_count();
            }
        }
        KbStats {
            classes: self.classes.len(),
            sections: self.sections.len(),
            heads: self.heads.len(),
            paragraphs,
            groups,
            words,
        }
    }

    /// Checks every explicit relation against the loaded text. A target
    /// is resolvable when its head exists and carries a paragraph with the
    /// target keyword under any part-of-speech; anything else is reported
    /// as a warning, since public-domain source data contains errors.
    pub(crate) fn validate_relations(&mut self) {
        let mut warnings = Vec::new();
        for head in self.heads.values() {
            for paragraph in &head.paragraphs {
                for group in &paragraph.groups {
                    for rel in &group.relations {
                        let ok = self
                            .heads
                            .get(&rel.target_head)
                            .and_then(|h| h.paragraph_any_pos(&rel.target_keyword))
                            .is_some();
                        if !ok {
                            warnings.push(format!(
                                "dangling {} from {}: {} {}",
                                match rel.kind {
                                    RelationKind::CrossReference => "cross-reference",
                                    RelationKind::See => "see reference",
                                },
                                paragraph.sense,
                                rel.target_head,
                                rel.target_keyword
                            ));
                        }
                    }
                }
            }
        }
        self.warnings.extend(warnings);
    }
}
