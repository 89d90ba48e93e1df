//! Brute-force chain oracle: enumerates every admissible sense-anchored
//! subset, scores each with the same table, and runs an independently
//! coded best-per-word selection and occurrence-exclusive assignment.

use std::collections::{HashMap, HashSet};

use lexkb_core::chains::{score_chain, ChainScoreTable, Occurrence, ProtoChain};
use lexkb_core::index::Index;
use lexkb_core::kb::{fold, SenseKey};
use lexkb_core::similarity::Rational;

fn admissible(members: &[&Occurrence], anchor: &SenseKey, index: &Index) -> bool {
    let mut earlier: HashSet<&str> = HashSet::new();
    for (i, m) in members.iter().enumerate() {
        if i > 0 {
            let repeats = earlier.contains(m.surface.as_str());
            let anchored = index.senses(&m.surface).contains(anchor);
            if !repeats && !anchored {
                return false;
            }
        }
        earlier.insert(m.surface.as_str());
    }
    true
}

pub fn best_subset_chains(
    candidates: &[Occurrence],
    index: &Index,
    table: &ChainScoreTable,
) -> Vec<ProtoChain> {
    // Best proto per (word, sense) over all admissible subsets.
    let mut per_word: HashMap<String, Vec<ProtoChain>> = HashMap::new();
    let mut seen_words: HashSet<&str> = HashSet::new();
    for first in candidates {
        if !seen_words.insert(&first.surface) {
            continue;
        }
        for anchor in index.senses(&first.surface) {
            let tail: Vec<&Occurrence> = candidates[first.position + 1..].iter().collect();
            let mut best: Option<(Rational, Vec<Occurrence>)> = None;
            for mask in 0u32..(1 << tail.len()) {
                let mut subset: Vec<&Occurrence> = vec![first];
                for (bit, occurrence) in tail.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        subset.push(occurrence);
                    }
                }
                if subset.len() < 2 || !admissible(&subset, &anchor, index) {
                    continue;
                }
                let members: Vec<Occurrence> = subset.iter().map(|m| (*m).clone()).collect();
                let score = score_chain(&members, table);
                if best.as_ref().is_none_or(|(s, _)| score > *s) {
                    best = Some((score, members));
                }
            }
            if let Some((score, members)) = best {
                per_word
                    .entry(first.surface.clone())
                    .or_default()
                    .push(ProtoChain {
                        word: first.surface.clone(),
                        anchor: anchor.clone(),
                        members,
                        score,
                    });
            }
        }
    }

    // Step 4: best per word, ties by lower head then earlier line.
    let mut winners: Vec<ProtoChain> = Vec::new();
    for (_, mut protos) in per_word {
        protos.sort_by(|a, b| {
            (
                -a.score,
                a.anchor.head_num,
                a.start_line(),
                fold(&a.anchor.keyword),
                a.anchor.pos.order(),
            )
                .cmp(&(
                    -b.score,
                    b.anchor.head_num,
                    b.start_line(),
                    fold(&b.anchor.keyword),
                    b.anchor.pos.order(),
                ))
        });
        winners.push(protos.remove(0));
    }

    // Step 5: iterate greedy claims until nothing changes.
    let originals = winners.clone();
    let mut scores: Vec<Rational> = originals.iter().map(|c| c.score).collect();
    let mut members: Vec<Vec<Occurrence>> = originals.iter().map(|c| c.members.clone()).collect();
    loop {
        let mut order: Vec<usize> = (0..originals.len()).collect();
        order.sort_by(|&a, &b| {
            (
                -scores[a],
                originals[a].start_line(),
                originals[a].start_position(),
                originals[a].anchor.head_num,
                fold(&originals[a].anchor.keyword),
                originals[a].anchor.pos.order(),
            )
                .cmp(&(
                    -scores[b],
                    originals[b].start_line(),
                    originals[b].start_position(),
                    originals[b].anchor.head_num,
                    fold(&originals[b].anchor.keyword),
                    originals[b].anchor.pos.order(),
                ))
        });
        let mut claimed: HashSet<usize> = HashSet::new();
        let mut next: Vec<Vec<Occurrence>> = vec![Vec::new(); originals.len()];
        for &ci in &order {
            if members[ci].len() < 2 {
                continue;
            }
            for m in &originals[ci].members {
                if claimed.insert(m.position) {
                    next[ci].push(m.clone());
                }
            }
        }
        let next_scores: Vec<Rational> = next.iter().map(|m| score_chain(m, table)).collect();
        if next == members {
            break;
        }
        members = next;
        scores = next_scores;
    }

    let mut finals: Vec<ProtoChain> = Vec::new();
    for (i, m) in members.into_iter().enumerate() {
        if m.len() >= 2 {
            finals.push(ProtoChain {
                word: originals[i].word.clone(),
                anchor: originals[i].anchor.clone(),
                score: score_chain(&m, table),
                members: m,
            });
        }
    }
    finals.sort_by(|a, b| {
        (
            -a.score,
            a.start_position(),
            a.anchor.head_num,
            fold(&a.anchor.keyword),
            a.anchor.pos.order(),
        )
            .cmp(&(
                -b.score,
                b.start_position(),
                b.anchor.head_num,
                fold(&b.anchor.keyword),
                b.anchor.pos.order(),
            ))
    });
    finals
}
