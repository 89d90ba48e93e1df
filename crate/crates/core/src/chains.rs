//! Lexical chains over free text: candidate selection through the stop
//! list, sense-anchored proto-chain growth, Table-style relation scoring,
//! best-chain selection and occurrence-exclusive final assignment.

use std::collections::{HashMap, HashSet};

use serde::Serialize;
use serde_json::json;

use crate::index::Index;
use crate::kb::{fold, SenseKey};
use crate::similarity::Rational;
use crate::stoplist::StopList;

/// A sentence-segmented, tokenized text.
#[derive(Debug, Clone, Default)]
pub struct TokenizedText {
    pub sentences: Vec<String>,
    /// (folded token, 1-based sentence index) in text order.
    pub tokens: Vec<(String, usize)>,
}

/// Splits on `.`, `!`, `?` followed by whitespace and an uppercase letter
/// or end-of-text, then tokenizes each sentence with edge punctuation
/// stripped.
pub fn tokenize(text: &str) -> TokenizedText {
    let chars: Vec<char> = text.chars().collect();
    let mut sentences = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i < chars.len() {
        if matches!(chars[i], '.' | '!' | '?') {
            let mut j = i + 1;
            while j < chars.len() && chars[j].is_whitespace() {
                j += 1;
            }
            if j >= chars.len() || (j > i + 1 && chars[j].is_uppercase()) {
                let sentence: String = chars[start..=i].iter().collect();
                let sentence = sentence.trim().to_string();
                if !sentence.is_empty() {
                    sentences.push(sentence);
                }
                start = j;
                i = j;
                continue;
            }
        }
        i += 1;
    }
    if start < chars.len() {
        let tail: String = chars[start..].iter().collect();
        let tail = tail.trim().to_string();
        if !tail.is_empty() {
            sentences.push(tail);
        }
    }

    let mut tokens = Vec::new();
    for (si, sentence) in sentences.iter().enumerate() {
        for raw in sentence.split_whitespace() {
            let token = raw.trim_matches(|c: char| !c.is_alphanumeric());
            if !token.is_empty() {
                tokens.push((fold(token), si + 1));
            }
        }
    }
    TokenizedText { sentences, tokens }
}

/// One candidate occurrence in the text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Occurrence {
    pub surface: String,
    /// 1-based sentence index.
    pub sentence: usize,
    /// Position in the candidate sequence.
    pub position: usize,
}

/// Tokens minus stop-list members, lowercase, order preserved. Repetitions
/// stay: the reiteration relation needs both occurrences.
pub fn select_candidates(text: &TokenizedText, stops: &StopList) -> Vec<Occurrence> {
    let mut out = Vec::new();
    for (token, sentence) in &text.tokens {
        if stops.contains(token) {
            continue;
        }
        out.push(Occurrence {
            surface: token.clone(),
            sentence: *sentence,
            position: out.len(),
        });
    }
    out
}

/// The six relation-scoring cells: reiteration is full strength at any
/// window, same-paragraph inclusion decays with sentence distance.
#[derive(Debug, Clone, Copy)]
pub struct ChainScoreTable {
    pub repetition_near: Rational,
    pub repetition_mid: Rational,
    pub repetition_far: Rational,
    pub paragraph_near: Rational,
    pub paragraph_mid: Rational,
    pub paragraph_far: Rational,
}

impl Default for ChainScoreTable {
    fn default() -> Self {
        ChainScoreTable {
            repetition_near: Rational::new(1, 1),
            repetition_mid: Rational::new(1, 1),
            repetition_far: Rational::new(1, 1),
            paragraph_near: Rational::new(1, 1),
            paragraph_mid: Rational::new(3, 4),
            paragraph_far: Rational::new(1, 2),
        }
    }
}

impl ChainScoreTable {
    /// Window mapping: gaps of up to 2 sentences are near, 3..4 mid, 5 and
    /// beyond far.
    pub fn repetition(&self, gap: usize) -> Rational {
        match gap {
            0..=2 => self.repetition_near,
            3..=4 => self.repetition_mid,
            _ => self.repetition_far,
        }
    }

    pub fn same_paragraph(&self, gap: usize) -> Rational {
        match gap {
            0..=2 => self.paragraph_near,
            3..=4 => self.paragraph_mid,
            _ => self.paragraph_far,
        }
    }
}

/// A sense-anchored candidate chain.
#[derive(Debug, Clone, Serialize)]
pub struct ProtoChain {
    /// The unique candidate word the chain was grown for.
    pub word: String,
    pub anchor: SenseKey,
    pub members: Vec<Occurrence>,
    #[serde(serialize_with = "crate::chains::serialize_score")]
    pub score: Rational,
}

pub(crate) fn serialize_score<S: serde::Serializer>(
    r: &Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(*r.numer() as f64 / *r.denom() as f64)
}

impl ProtoChain {
    pub fn start_line(&self) -> usize {
        self.members.first().map(|m| m.sentence).unwrap_or(0)
    }

    pub fn start_position(&self) -> usize {
        self.members.first().map(|m| m.position).unwrap_or(0)
    }
}

/// Sum of member contributions: the first member and every reiteration
/// count in full; a member admitted by paragraph co-membership is weighted
/// by its sentence gap to the nearest preceding member.
pub fn score_chain(members: &[Occurrence], table: &ChainScoreTable) -> Rational {
    let mut score = Rational::new(0, 1);
    let mut seen: HashSet<&str> = HashSet::new();
    for (i, member) in members.iter().enumerate() {
        if i == 0 {
            score += Rational::new(1, 1);
        } else if seen.contains(member.surface.as_str()) {
            let gap = member.sentence - members[i - 1].sentence;
            score += table.repetition(gap);
        } else {
            let gap = member.sentence - members[i - 1].sentence;
            score += table.same_paragraph(gap);
        }
        seen.insert(member.surface.as_str());
    }
    score
}

#[derive(Debug, Default, Clone, Copy, Serialize)]
pub struct ChainBuildStats {
    pub candidates: usize,
    pub unique_words: usize,
    /// Number of relation tests performed while growing proto-chains.
    pub relation_tests: u64,
}

/// Grows one proto-chain per unique candidate word and paragraph sense,
/// forward from the word's first occurrence through all later candidates.
/// A sense is expanded at most once per unique word; chains of fewer than
/// two members are discarded.
pub fn build_proto_chains(
    candidates: &[Occurrence],
    index: &Index,
    table: &ChainScoreTable,
) -> (Vec<ProtoChain>, ChainBuildStats) {
    let mut stats = ChainBuildStats {
        candidates: candidates.len(),
        ..Default::default()
    };

    let mut senses_of: HashMap<&str, Vec<SenseKey>> = HashMap::new();
    let mut sense_set: HashMap<&str, HashSet<SenseKey>> = HashMap::new();
    let mut first_occurrence: Vec<&Occurrence> = Vec::new();
    let mut seen_words: HashSet<&str> = HashSet::new();
    for candidate in candidates {
        if seen_words.insert(candidate.surface.as_str()) {
            first_occurrence.push(candidate);
            let senses = index.senses(&candidate.surface);
            sense_set.insert(candidate.surface.as_str(), senses.iter().cloned().collect());
            senses_of.insert(candidate.surface.as_str(), senses);
        }
    }
    stats.unique_words = first_occurrence.len();

    let mut protos = Vec::new();
    for first in &first_occurrence {
        let word = first.surface.as_str();
        for anchor in &senses_of[word] {
            let mut members = vec![(*first).clone()];
            let mut member_surfaces: HashSet<&str> = HashSet::new();
            member_surfaces.insert(word);
            for candidate in &candidates[first.position + 1..] {
                stats.relation_tests += 1;
                let repeat = member_surfaces.contains(candidate.surface.as_str());
                let related = repeat
                    || sense_set
                        .get(candidate.surface.as_str())
                        .is_some_and(|s| s.contains(anchor));
                if related {
                    member_surfaces.insert(candidate.surface.as_str());
                    members.push(candidate.clone());
                }
            }
            if members.len() >= 2 {
                let score = score_chain(&members, table);
                protos.push(ProtoChain {
                    word: word.to_string(),
                    anchor: anchor.clone(),
                    members,
                    score,
                });
            }
        }
    }
    (protos, stats)
}

/// Keeps the best proto-chain per unique word, then assigns every
/// occurrence to its highest-scoring surviving chain, removing it from
/// the others and rescoring until stable. Output is sorted by score,
/// ties by first appearance in the text.
pub fn select_chains(protos: &[ProtoChain], table: &ChainScoreTable) -> Vec<ProtoChain> {
    // Step 4: best proto per word; ties by lower head number, then
    // earlier start line.
    let mut best: HashMap<&str, &ProtoChain> = HashMap::new();
    for proto in protos {
        let slot = best.entry(proto.word.as_str()).or_insert(proto);
        let better = (
            -proto.score,
            proto.anchor.head_num,
            proto.start_line(),
            fold(&proto.anchor.keyword),
            proto.anchor.pos.order(),
        ) < (
            -slot.score,
            slot.anchor.head_num,
            slot.start_line(),
            fold(&slot.anchor.keyword),
            slot.anchor.pos.order(),
        );
        if better {
            *slot = proto;
        }
    }
    let mut alive: Vec<ProtoChain> = best.values().map(|p| (*p).clone()).collect();

    // Step 5: occurrence exclusivity, iterated to a fixed point.
    let total_occurrences: usize = alive.iter().map(|c| c.members.len()).sum();
    let originals = alive.clone();
    let mut previous_membership: Option<Vec<Vec<usize>>> = None;
    for _ in 0..=total_occurrences {
        let mut order: Vec<usize> = (0..originals.len()).collect();
        let score_of: Vec<Rational> = alive.iter().map(|c| c.score).collect();
        let alive_set: Vec<bool> = alive.iter().map(|c| c.members.len() >= 2).collect();
        order.sort_by(|&a, &b| {
            let ka = (
                -score_of[a],
                originals[a].start_line(),
                originals[a].start_position(),
                originals[a].anchor.head_num,
                fold(&originals[a].anchor.keyword),
                originals[a].anchor.pos.order(),
            );
            let kb = (
                -score_of[b],
                originals[b].start_line(),
                originals[b].start_position(),
                originals[b].anchor.head_num,
                fold(&originals[b].anchor.keyword),
                originals[b].anchor.pos.order(),
            );
            ka.cmp(&kb)
        });
        let mut claimed: HashSet<usize> = HashSet::new();
        let mut membership: Vec<Vec<usize>> = vec![Vec::new(); originals.len()];
        for &ci in &order {
            if !alive_set[ci] {
                continue;
            }
            for member in &originals[ci].members {
                if claimed.insert(member.position) {
                    membership[ci].push(member.position);
                }
            }
        }
        for (ci, positions) in membership.iter().enumerate() {
            let members: Vec<Occurrence> = originals[ci]
                .members
                .iter()
                .filter(|m| positions.contains(&m.position))
                .cloned()
                .collect();
            alive[ci].score = score_chain(&members, table);
            alive[ci].members = members;
        }
        if previous_membership.as_ref() == Some(&membership) {
            break;
        }
        previous_membership = Some(membership);
    }

    let mut finals: Vec<ProtoChain> = alive.into_iter().filter(|c| c.members.len() >= 2).collect();
    finals.sort_by(|a, b| {
        let ka = (
            -a.score,
            a.start_position(),
            a.anchor.head_num,
            fold(&a.anchor.keyword),
            a.anchor.pos.order(),
        );
        let kb = (
            -b.score,
            b.start_position(),
            b.anchor.head_num,
            fold(&b.anchor.keyword),
            b.anchor.pos.order(),
        );
        ka.cmp(&kb)
    });
    finals
}

/// The full pipeline: tokenize, select candidates, grow, select.
pub fn build_chains(
    text: &str,
    index: &Index,
    table: &ChainScoreTable,
) -> (Vec<ProtoChain>, ChainBuildStats) {
    let tokenized = tokenize(text);
    let candidates = select_candidates(&tokenized, &index.data().stops);
    let (protos, stats) = build_proto_chains(&candidates, index, table);
    let finals = select_chains(&protos, table);
    (finals, stats)
}

/// Chain scores print with at least one decimal: 9.0, 8.5, 1.75.
pub fn format_chain_score(score: Rational) -> String {
    let value = *score.numer() as f64 / *score.denom() as f64;
    let mut s = format!("{value:.2}");
    if s.ends_with('0') {
        s.pop();
    }
    s
}

/// One chain in the printed shape:
/// `train, rails, train [score: 3.0, sense: 624, line: 1]`.
pub fn render_chain(chain: &ProtoChain) -> String {
    let members: Vec<&str> = chain.members.iter().map(|m| m.surface.as_str()).collect();
    format!(
        "{} [score: {}, sense: {}, line: {}]",
        members.join(", "),
        format_chain_score(chain.score),
        chain.anchor.head_num,
        chain.start_line()
    )
}

pub fn render_chains(chains: &[ProtoChain]) -> String {
    let mut out = String::new();
    for (i, chain) in chains.iter().enumerate() {
        out.push_str(&format!("{}. {}\n", i + 1, render_chain(chain)));
    }
    out
}

pub fn render_chains_json(chains: &[ProtoChain]) -> serde_json::Value {
    json!(chains
        .iter()
        .map(|c| {
            json!({
                "word": c.word,
                "sense": { "head": c.anchor.head_num, "keyword": c.anchor.keyword, "pos": c.anchor.pos.label() },
                "score": *c.score.numer() as f64 / *c.score.denom() as f64,
                "line": c.start_line(),
                "members": c.members.iter().map(|m| {
                    json!({ "surface": m.surface, "sentence": m.sentence, "position": m.position })
                }).collect::<Vec<_>>(),
            })
        })
        .collect::<Vec<_>>())
}
