//! Mapping paragraph senses onto an external synset network by weighted
//! word overlap, and labeling paragraph fragments with the relations the
//! match exposes.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{LexError, Result};
use crate::index::Index;
use crate::kb::{fold, KnowledgeBase, Paragraph, SemicolonGroup, SenseKey};
use crate::morph::MorphRuleTable;
use crate::pos::Pos;

/// Part-of-speech of a synset. Interjections have no counterpart and are
/// excluded from alignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SynPos {
    Noun,
    Verb,
    Adjective,
    Adverb,
}

impl SynPos {
    pub fn parse(s: &str) -> Option<SynPos> {
        match s {
            "noun" => Some(SynPos::Noun),
            "verb" => Some(SynPos::Verb),
            "adjective" => Some(SynPos::Adjective),
            "adverb" => Some(SynPos::Adverb),
            _ => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SynPos::Noun => "noun",
            SynPos::Verb => "verb",
            SynPos::Adjective => "adjective",
            SynPos::Adverb => "adverb",
        }
    }

    pub fn matches(self, pos: Pos) -> bool {
        matches!(
            (self, pos),
            (SynPos::Noun, Pos::Noun)
                | (SynPos::Verb, Pos::Verb)
                | (SynPos::Adjective, Pos::Adjective)
                | (SynPos::Adverb, Pos::Adverb)
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Synset {
    pub id: String,
    pub pos: SynPos,
    pub members: Vec<String>,
    pub hypernyms: Vec<String>,
    pub hyponyms: Vec<String>,
}

/// A parsed synset network dump.
#[derive(Debug, Default)]
pub struct SynsetDump {
    synsets: BTreeMap<String, Synset>,
}

impl SynsetDump {
    /// Parses lines `S <id> <pos> | w1; w2 | hyp:<id>,<id> | hypo:<id>`.
    /// Hypernym and hyponym ids must resolve within the dump.
    pub fn parse(text: &str) -> Result<SynsetDump> {
        let mut dump = SynsetDump::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let line_no = idx + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| LexError::Parse { line: line_no, msg };
            let rest = line
                .strip_prefix("S ")
                .ok_or_else(|| err("expected `S <id> <pos> | ...`".to_string()))?;
            let fields: Vec<&str> = rest.split('|').map(|f| f.trim()).collect();
            if fields.len() != 4 {
                return Err(err("expected 4 `|`-separated fields".to_string()));
            }
            let mut head = fields[0].split_whitespace();
            let id = head
                .next()
                .ok_or_else(|| err("missing synset id".to_string()))?
                .to_string();
            let pos = head
                .next()
                .and_then(SynPos::parse)
                .ok_or_else(|| err("expected noun|verb|adjective|adverb".to_string()))?;
            let members: Vec<String> = fields[1]
                .split(';')
                .map(|w| w.trim().to_string())
                .filter(|w| !w.is_empty())
                .collect();
            if members.is_empty() {
                return Err(err(format!("synset {id} has no members")));
            }
            let ids = |field: &str, tag: &str| -> Result<Vec<String>> {
                let body = field.strip_prefix(tag).ok_or_else(|| LexError::Parse {
                    line: line_no,
                    msg: format!("expected `{tag}...`"),
                })?;
                Ok(body
                    .split(',')
                    .map(|s| s.trim().to_string())
                    .filter(|s| !s.is_empty())
                    .collect())
            };
            let hypernyms = ids(fields[2], "hyp:")?;
            let hyponyms = ids(fields[3], "hypo:")?;
            if dump.synsets.contains_key(&id) {
                return Err(err(format!("synset {id} defined twice")));
            }
            dump.synsets.insert(
                id.clone(),
                Synset {
                    id,
                    pos,
                    members,
                    hypernyms,
                    hyponyms,
                },
            );
        }
        for synset in dump.synsets.values() {
            for linked in synset.hypernyms.iter().chain(&synset.hyponyms) {
                if !dump.synsets.contains_key(linked) {
                    return Err(LexError::Structure {
                        line: 0,
                        msg: format!("synset {} links to undefined synset {linked}", synset.id),
                    });
                }
            }
        }
        Ok(dump)
    }

    pub fn get(&self, id: &str) -> Option<&Synset> {
        self.synsets.get(id)
    }

    pub fn len(&self) -> usize {
        self.synsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.synsets.is_empty()
    }

    pub fn synsets(&self) -> impl Iterator<Item = &Synset> {
        self.synsets.values()
    }

    fn containing(&self, word: &str, pos: Option<SynPos>) -> Vec<&Synset> {
        let folded = fold(word);
        self.synsets
            .values()
            .filter(|s| pos.is_none_or(|p| s.pos == p))
            .filter(|s| s.members.iter().any(|m| fold(m) == folded))
            .collect()
    }
}

/// A focus synset with its immediate hypernyms and its coordinate
/// synsets: the hypernyms plus the hypernyms' immediate hyponyms.
#[derive(Debug, Clone, Serialize)]
pub struct MiniNet {
    pub focus: String,
    pub pos: SynPos,
    pub focus_words: Vec<String>,
    pub hypernym_words: Vec<String>,
    pub coordinate_words: Vec<String>,
    /// Members of the focus synset's immediate hyponyms, used for
    /// relation labeling.
    pub hyponym_words: Vec<String>,
}

fn collect_words(dump: &SynsetDump, ids: &BTreeSet<String>) -> Vec<String> {
    let mut out = Vec::new();
    for id in ids {
        if let Some(s) = dump.get(id) {
            for m in &s.members {
                let m = fold(m);
                if !out.contains(&m) {
                    out.push(m);
                }
            }
        }
    }
    out
}

/// One mini-net per synset containing the word under the given
/// part-of-speech; empty when the word is absent.
pub fn build_mininets(word: &str, dump: &SynsetDump, pos: Option<SynPos>) -> Vec<MiniNet> {
    let mut nets = Vec::new();
    for synset in dump.containing(word, pos) {
        let hyp_ids: BTreeSet<String> = synset.hypernyms.iter().cloned().collect();
        let mut co_ids = hyp_ids.clone();
        for hyp in &hyp_ids {
            if let Some(h) = dump.get(hyp) {
                co_ids.extend(h.hyponyms.iter().cloned());
            }
        }
        let hypo_ids: BTreeSet<String> = synset.hyponyms.iter().cloned().collect();
        nets.push(MiniNet {
            focus: synset.id.clone(),
            pos: synset.pos,
            focus_words: synset.members.iter().map(|m| fold(m)).collect(),
            hypernym_words: collect_words(dump, &hyp_ids),
            coordinate_words: collect_words(dump, &co_ids),
            hyponym_words: collect_words(dump, &hypo_ids),
        });
    }
    nets
}

/// Overlap weights for the three mini-net terms.
#[derive(Debug, Clone, Copy)]
pub struct Weights {
    pub focus: i64,
    pub hypernym: i64,
    pub coordinate: i64,
}

impl Default for Weights {
    fn default() -> Self {
        Weights {
            focus: 1,
            hypernym: 1,
            coordinate: 1,
        }
    }
}

impl Weights {
    pub fn validate(&self) -> Result<()> {
        if self.focus < 0 || self.hypernym < 0 || self.coordinate < 0 {
            return Err(LexError::Config(
                "alignment weights must be non-negative".into(),
            ));
        }
        Ok(())
    }
}

/// Lemma comparison: single words match when their candidate base forms
/// intersect; elements of phrases are not lemmatized and match verbatim.
fn words_match(a: &str, b: &str, morph: &MorphRuleTable) -> bool {
    let a = fold(a);
    let b = fold(b);
    if a == b {
        return true;
    }
    if a.contains(' ') || b.contains(' ') {
        return false;
    }
    let forms_a = morph.base_forms(&a);
    let forms_b = morph.base_forms(&b);
    forms_a.iter().any(|f| forms_b.contains(f))
}

fn overlap_count(paragraph: &Paragraph, term_words: &[String], morph: &MorphRuleTable) -> i64 {
    let mut matched: BTreeSet<&str> = BTreeSet::new();
    for word in paragraph.all_words() {
        if matched.contains(word.folded.as_str()) {
            continue;
        }
        if term_words
            .iter()
            .any(|t| words_match(&word.folded, t, morph))
        {
            matched.insert(&word.folded);
        }
    }
    matched.len() as i64
}

/// The weighted overlap between one mini-net and one paragraph: the sum
/// over focus, hypernym and coordinate terms of the count of distinct
/// paragraph words matching that term.
pub fn score_alignment(
    mininet: &MiniNet,
    paragraph: &Paragraph,
    weights: Weights,
    morph: &MorphRuleTable,
) -> Result<i64> {
    weights.validate()?;
    Ok(
        weights.focus * overlap_count(paragraph, &mininet.focus_words, morph)
            + weights.hypernym * overlap_count(paragraph, &mininet.hypernym_words, morph)
            + weights.coordinate * overlap_count(paragraph, &mininet.coordinate_words, morph),
    )
}

#[derive(Debug, Clone, Serialize)]
pub struct AlignmentCell {
    pub sense: SenseKey,
    pub synset_id: String,
    pub score: i64,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AlignOptions {
    /// Emit the full score matrix instead of only the global maximum.
    pub all_cells: bool,
    /// On a global-maximum tie, keep only the lowest (head, synset) cell.
    pub one_best: bool,
}

/// Aligns a word's paragraph senses to synsets: builds the score matrix
/// over same-POS pairs and reports the cell(s) attaining the global
/// maximum. A zero matrix aligns nothing.
pub fn align_word(
    word: &str,
    kb: &KnowledgeBase,
    index: &Index,
    dump: &SynsetDump,
    weights: Weights,
    opts: AlignOptions,
) -> Result<Vec<AlignmentCell>> {
    weights.validate()?;
    let senses: Vec<SenseKey> = index
        .senses(word)
        .into_iter()
        .filter(|s| s.pos != Pos::Interjection)
        .collect();
    let mininets = build_mininets(word, dump, None);
    let mut cells = Vec::new();
    for net in &mininets {
        for sense in &senses {
            if !net.pos.matches(sense.pos) {
                continue;
            }
            let paragraph = kb.resolve(sense)?;
            let score = score_alignment(net, paragraph, weights, &index.data().morph)?;
            cells.push(AlignmentCell {
                sense: sense.clone(),
                synset_id: net.focus.clone(),
                score,
            });
        }
    }
    if opts.all_cells {
        return Ok(cells);
    }
    let max = cells.iter().map(|c| c.score).max().unwrap_or(0);
    if max == 0 {
        return Ok(Vec::new());
    }
    let mut best: Vec<AlignmentCell> = cells.into_iter().filter(|c| c.score == max).collect();
    best.sort_by(|a, b| (a.sense.head_num, &a.synset_id).cmp(&(b.sense.head_num, &b.synset_id)));
    if opts.one_best {
        best.truncate(1);
    }
    Ok(best)
}

/// Relation exposed for one semicolon group by a mini-net.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GroupLabel {
    Synonym,
    Hypernym,
    Hyponym,
    NoLabel,
}

impl GroupLabel {
    pub fn heading(self) -> &'static str {
        match self {
            GroupLabel::Synonym => "Synonym",
            GroupLabel::Hypernym => "Hypernym",
            GroupLabel::Hyponym => "Hyponym",
            GroupLabel::NoLabel => "No label",
        }
    }
}

/// Merges several mini-nets of one word into a single labeling net.
pub fn merge_mininets(nets: &[MiniNet]) -> Option<MiniNet> {
    let first = nets.first()?;
    let mut merged = first.clone();
    let push_all = |dst: &mut Vec<String>, src: &[String]| {
        for w in src {
            if !dst.contains(w) {
                dst.push(w.clone());
            }
        }
    };
    for net in &nets[1..] {
        push_all(&mut merged.focus_words, &net.focus_words);
        push_all(&mut merged.hypernym_words, &net.hypernym_words);
        push_all(&mut merged.coordinate_words, &net.coordinate_words);
        push_all(&mut merged.hyponym_words, &net.hyponym_words);
    }
    Some(merged)
}

/// Labels each semicolon group by the relation whose synset shares at
/// least one word or phrase with the printed group. The paragraph keyword
/// itself is hoisted out as the header, so its occurrence does not label
/// the opening group. Every group receives exactly one label.
pub fn label_paragraph(
    paragraph: &Paragraph,
    mininet: &MiniNet,
    morph: &MorphRuleTable,
) -> Vec<GroupLabel> {
    let keyword = fold(&paragraph.sense.keyword);
    let mut labels = Vec::with_capacity(paragraph.groups.len());
    for (gi, group) in paragraph.groups.iter().enumerate() {
        let mut words = group.surface_and_relation_words();
        if gi == 0 {
            if let Some(pos) = words.iter().position(|w| *w == keyword) {
                words.remove(pos);
            }
        }
        let shares = |term_words: &[String]| {
            words
                .iter()
                .any(|w| term_words.iter().any(|t| words_match(w, t, morph)))
        };
        let label = if shares(&mininet.focus_words) {
            GroupLabel::Synonym
        } else if shares(&mininet.hypernym_words) {
            GroupLabel::Hypernym
        } else if shares(&mininet.hyponym_words) {
            GroupLabel::Hyponym
        } else {
            GroupLabel::NoLabel
        };
        labels.push(label);
    }
    labels
}

/// Prints one semicolon group the way the text shows it, references
/// appended after the words.
pub fn render_group(group: &SemicolonGroup) -> String {
    let words: Vec<&str> = group.words.iter().map(|w| w.text.as_str()).collect();
    let mut out = words.join(", ");
    for (i, rel) in group.relations.iter().enumerate() {
        let rendered = match rel.kind {
            crate::kb::RelationKind::CrossReference => {
                format!("{} {}", rel.target_head, rel.target_keyword)
            }
            crate::kb::RelationKind::See => format!("see {}", rel.target_keyword),
        };
        if i == 0 {
            out.push(' ');
        } else {
            out.push_str(", ");
        }
        out.push_str(&rendered);
    }
    out
}

fn render_group_hoisted(group: &SemicolonGroup, hoist_keyword: Option<&str>) -> String {
    let folded_keyword = hoist_keyword.map(fold);
    let words: Vec<&str> = group
        .words
        .iter()
        .filter(|w| folded_keyword.as_deref() != Some(w.folded.as_str()))
        .map(|w| w.text.as_str())
        .collect();
    let mut out = words.join(", ");
    for (i, rel) in group.relations.iter().enumerate() {
        let rendered = match rel.kind {
            crate::kb::RelationKind::CrossReference => {
                format!("{} {}", rel.target_head, rel.target_keyword)
            }
            crate::kb::RelationKind::See => format!("see {}", rel.target_keyword),
        };
        if i == 0 && !out.is_empty() {
            out.push(' ');
        } else if i > 0 {
            out.push_str(", ");
        }
        out.push_str(&rendered);
    }
    out
}

/// Renders a labeled paragraph the way the rearranged text shows it: the
/// keyword hoisted into a header, then one block per label present, the
/// groups joined by semicolons.
pub fn render_labeled_paragraph(paragraph: &Paragraph, labels: &[GroupLabel]) -> String {
    let mut out = format!(
        "{} {}\n",
        paragraph.sense.pos.label(),
        paragraph.sense.keyword
    );
    for label in [
        GroupLabel::Synonym,
        GroupLabel::Hypernym,
        GroupLabel::Hyponym,
        GroupLabel::NoLabel,
    ] {
        let fragments: Vec<String> = paragraph
            .groups
            .iter()
            .enumerate()
            .zip(labels)
            .filter(|(_, l)| **l == label)
            .map(|((gi, g), _)| {
                let hoist = (gi == 0).then_some(paragraph.sense.keyword.as_str());
                render_group_hoisted(g, hoist)
            })
            .filter(|f| !f.is_empty())
            .collect();
        if fragments.is_empty() {
            continue;
        }
        let heading = if label == GroupLabel::NoLabel {
            "No label : ".to_string()
        } else {
            format!("{}: ", label.heading())
        };
        out.push_str(&heading);
        out.push_str(&fragments.join("; "));
        out.push('\n');
    }
    out
}
