//! Deterministic synthetic corpus generator for property and oracle
//! tests. Emits the normalized corpus format so generated KBs also
//! exercise the parser.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub struct GenConfig {
    pub classes: u32,
    pub sections_per_class: u32,
    pub heads: u32,
    pub max_paragraphs_per_pos: usize,
    pub max_groups: usize,
    pub max_words_per_group: usize,
    pub vocab: usize,
    pub phrase_chance: f64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            classes: 3,
            sections_per_class: 2,
            heads: 12,
            max_paragraphs_per_pos: 2,
            max_groups: 3,
            max_words_per_group: 4,
            vocab: 60,
            phrase_chance: 0.15,
        }
    }
}

fn vocab_word(i: usize) -> String {
    format!("w{i:03}")
}

/// Generates a corpus in the normalized format. Head numbers are
/// 1..=cfg.heads; keywords are unique per head; group words are drawn
/// from a shared vocabulary so that words recur across heads.
pub fn generate_corpus(seed: u64, cfg: &GenConfig) -> String {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = String::new();
    let pos_labels = ["N.", "ADJ.", "VB.", "ADV.", "INT."];

    let total_sections = (cfg.classes * cfg.sections_per_class) as usize;
    let mut quota = vec![cfg.heads as usize / total_sections; total_sections];
    for slot in quota.iter_mut().take(cfg.heads as usize % total_sections) {
        *slot += 1;
    }

    let mut head_num = 0u32;
    let mut keyword_id = 0usize;
    for class in 1..=cfg.classes {
        out.push_str(&format!("#class {class} | Class {class}\n"));
        for s in 0..cfg.sections_per_class {
            let section = (class - 1) * cfg.sections_per_class + s + 1;
            out.push_str(&format!("#section {section} | Section {section}\n"));
            if rng.gen_bool(0.5) {
                out.push_str(&format!("#subsection Sub {section}\n"));
            }
            let mut remaining = quota[(section - 1) as usize];
            let mut emitted = 0usize;
            while remaining > 0 {
                if emitted > 0 && rng.gen_bool(0.2) {
                    // a second sub-section partway through, sometimes
                    // dropping back to an unnamed one
                    if rng.gen_bool(0.5) {
                        out.push_str(&format!("#subsection Sub {section}b\n"));
                    } else {
                        out.push_str("#subsection\n");
                    }
                }
                emitted += 1;
                let group_size = rng.gen_range(1..=3usize.min(remaining));
                let members: Vec<u32> = (head_num + 1..=head_num + group_size as u32).collect();
                let nums: Vec<String> = members.iter().map(|n| n.to_string()).collect();
                out.push_str(&format!("#headgroup {}\n", nums.join(",")));
                for num in members {
                    out.push_str(&format!("#head {num} | Head {num}\n"));
                    let pos_count = rng.gen_range(1..=3);
                    for pos in pos_labels.iter().take(pos_count) {
                        out.push_str(&format!("#pos {pos}\n"));
                        let paragraphs = rng.gen_range(1..=cfg.max_paragraphs_per_pos);
                        for _ in 0..paragraphs {
                            let keyword = format!("k{keyword_id:04}");
                            keyword_id += 1;
                            out.push_str(&format!("#para {keyword}\n"));
                            let groups = rng.gen_range(1..=cfg.max_groups);
                            for g in 0..groups {
                                let mut words: Vec<String> = Vec::new();
                                if g == 0 {
                                    words.push(keyword.clone());
                                }
                                let extra = rng.gen_range(1..=cfg.max_words_per_group);
                                for _ in 0..extra {
                                    let word = if rng.gen_bool(cfg.phrase_chance) {
                                        let a = rng.gen_range(0..cfg.vocab);
                                        let b = rng.gen_range(0..cfg.vocab);
                                        format!("{} {}", vocab_word(a), vocab_word(b))
                                    } else {
                                        vocab_word(rng.gen_range(0..cfg.vocab))
                                    };
                                    if !words.contains(&word) {
                                        words.push(word);
                                    }
                                }
                                out.push_str(&words.join("; "));
                                out.push('\n');
                            }
                        }
                    }
                }
                head_num += group_size as u32;
                remaining -= group_size;
            }
        }
    }
    out
}

/// Deterministic random text over a vocabulary, for chain property tests.
pub fn generate_text(seed: u64, sentences: usize, vocab: &[&str]) -> String {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = String::new();
    for _ in 0..sentences {
        let len = rng.gen_range(3..=9);
        let mut words = Vec::with_capacity(len);
        for _ in 0..len {
            words.push(*vocab.choose(&mut rng).unwrap());
        }
        let mut sentence = words.join(" ");
        let first = sentence.remove(0).to_uppercase().to_string();
        out.push_str(&first);
        out.push_str(&sentence);
        out.push_str(". ");
    }
    out.trim_end().to_string()
}

/// Section counts per class in the full taxonomy; global numbering.
pub const SECTIONS_PER_CLASS: [u32; 8] = [8, 4, 3, 7, 3, 5, 4, 5];

/// Generates a large corpus in the conversion format with a realistic
/// taxonomy shape (8 classes, 39 sections) and an externally supplied
/// vocabulary. `noise` injects occasional malformed group lines so the
/// lenient ingest path gets exercised.
pub fn generate_realistic_corpus(seed: u64, vocab: &[String], heads: u32, noise: bool) -> String {
    assert!(vocab.len() >= 100, "vocabulary too small");
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = String::new();
    let pos_labels = ["N.", "ADJ.", "VB.", "ADV.", "INT."];
    let total_sections: u32 = SECTIONS_PER_CLASS.iter().sum();
    let mut quota = vec![heads as usize / total_sections as usize; total_sections as usize];
    for slot in quota
        .iter_mut()
        .take(heads as usize % total_sections as usize)
    {
        *slot += 1;
    }

    let pick = |rng: &mut StdRng| vocab[rng.gen_range(0..vocab.len())].clone();
    let mut head_num = 0u32;
    let mut section_global = 0u32;
    for (ci, &sections) in SECTIONS_PER_CLASS.iter().enumerate() {
        let class = ci as u32 + 1;
        out.push_str(&format!("#class {class} | Class {class}\n"));
        for _ in 0..sections {
            section_global += 1;
            out.push_str(&format!(
                "#section {section_global} | Section {section_global}\n"
            ));
            if rng.gen_bool(0.6) {
                out.push_str(&format!("#subsection Division {section_global}\n"));
            }
            let mut remaining = quota[(section_global - 1) as usize];
            while remaining > 0 {
                let group_size = rng.gen_range(1..=3usize.min(remaining));
                let members: Vec<u32> = (head_num + 1..=head_num + group_size as u32).collect();
                let nums: Vec<String> = members.iter().map(|n| n.to_string()).collect();
                out.push_str(&format!("#headgroup {}\n", nums.join(",")));
                for num in members {
                    out.push_str(&format!("#head {num} | Entry {num}\n"));
                    let mut used_keywords: Vec<String> = Vec::new();
                    let pos_count = rng.gen_range(1..=3);
                    for pos in pos_labels.iter().take(pos_count) {
                        out.push_str(&format!("#pos {pos}\n"));
                        for _ in 0..rng.gen_range(1..=2) {
                            let keyword = loop {
                                let w = pick(&mut rng);
                                if !used_keywords.contains(&w) {
                                    break w;
                                }
                            };
                            used_keywords.push(keyword.clone());
                            out.push_str(&format!("#para {keyword}\n"));
                            for g in 0..rng.gen_range(1..=4) {
                                let mut words: Vec<String> = Vec::new();
                                if g == 0 {
                                    words.push(keyword.clone());
                                }
                                for _ in 0..rng.gen_range(1..=5) {
                                    let word = if rng.gen_bool(0.1) {
                                        format!("{} {}", pick(&mut rng), pick(&mut rng))
                                    } else {
                                        pick(&mut rng)
                                    };
                                    if !words.contains(&word) {
                                        words.push(word);
                                    }
                                }
                                out.push_str(&words.join("; "));
                                out.push('\n');
                                if rng.gen_bool(0.15) {
                                    out.push_str(&format!(
                                        "@cref {} | {}\n",
                                        rng.gen_range(1..=heads),
                                        pick(&mut rng)
                                    ));
                                }
                            }
                            if noise && rng.gen_bool(0.02) {
                                out.push_str("noise | bad character line\n");
                            }
                        }
                    }
                }
                head_num += group_size as u32;
                remaining -= group_size;
            }
        }
    }
    out
}
