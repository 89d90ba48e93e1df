//! Edge counting over the taxonomy: path enumeration between references,
//! the semantic distance metric, the two similarity transforms, and
//! thesaural-relation identification.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{LexError, Result};
use crate::index::{Index, LookupHit, Reference};
use crate::kb::{fold, KnowledgeBase, SenseKey};
use crate::pos::Pos;

pub type Rational = Ratio<i64>;

/// Largest possible path length; paths climb at most eight levels up and
/// eight levels down.
pub const MAX_DISTANCE: u32 = 16;

/// An alternating node chain between two references. Lengths are always
/// even, in `{0, 2, .., 16}`.
#[derive(Debug, Clone, Serialize)]
pub struct Path {
    pub word1: String,
    pub ref1: Reference,
    pub word2: String,
    pub ref2: Reference,
    pub length: u32,
    /// Rendered node chain, e.g. `feline → cat ← lynx`.
    pub chain: String,
}

impl Path {
    /// Header line as printed for a path listing.
    pub fn header(&self) -> String {
        format!(
            "Path between {} ({}) and {} ({}) [length = {}]",
            self.word1, self.ref1, self.word2, self.ref2, self.length
        )
    }
}

/// All paths between two query words, with the shortest length and the
/// number of paths attaining it.
#[derive(Debug, Clone, Serialize)]
pub struct PathSet {
    pub word1: String,
    pub word2: String,
    pub min_length: u32,
    pub min_path_count: usize,
    pub paths: Vec<Path>,
}

impl PathSet {
    /// The first shortest path in display order.
    pub fn min_path(&self) -> &Path {
        &self.paths[0]
    }
}

/// Thesaural relation exposed by the taxonomy position of two words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ThesauralRelation {
    /// Reiteration: the same lexicographical string.
    T0,
    /// Inclusion in the same paragraph.
    T1,
    None,
}

fn ordinal_word(n: usize) -> String {
    const WORDS: [&str; 20] = [
        "one",
        "two",
        "three",
        "four",
        "five",
        "six",
        "seven",
        "eight",
        "nine",
        "ten",
        "eleven",
        "twelve",
        "thirteen",
        "fourteen",
        "fifteen",
        "sixteen",
        "seventeen",
        "eighteen",
        "nineteen",
        "twenty",
    ];
    if (1..=20).contains(&n) {
        WORDS[n - 1].to_string()
    } else {
        n.to_string()
    }
}

/// Query operations over a knowledge base and its index.
pub struct Similarity<'a> {
    kb: &'a KnowledgeBase,
    index: &'a Index,
}

impl<'a> Similarity<'a> {
    pub fn new(kb: &'a KnowledgeBase, index: &'a Index) -> Self {
        Similarity { kb, index }
    }

    pub fn kb(&self) -> &KnowledgeBase {
        self.kb
    }

    pub fn index(&self) -> &Index {
        self.index
    }

    /// The path between two resolvable references. The query words are
    /// used for semicolon-group membership (distance 0 needs both words in
    /// one group, under variant and morphological matching) and for the
    /// rendered chain endpoints.
    pub fn path_between(
        &self,
        word1: &str,
        ref1: &Reference,
        word2: &str,
        ref2: &Reference,
    ) -> Result<Path> {
        self.kb.resolve(&ref1.sense)?;
        self.kb.resolve(&ref2.sense)?;
        let length = self.level(word1, ref1, word2, ref2)?;
        let chain = self.render_chain(word1, ref1, word2, ref2, length);
        Ok(Path {
            word1: word1.to_string(),
            ref1: ref1.clone(),
            word2: word2.to_string(),
            ref2: ref2.clone(),
            length,
            chain,
        })
    }

    /// Edge count determined by the deepest level the two references
    /// share.
    fn level(&self, word1: &str, ref1: &Reference, word2: &str, ref2: &Reference) -> Result<u32> {
        let s1 = &ref1.sense;
        let s2 = &ref2.sense;
        if s1 == s2 {
            let paragraph = self.kb.resolve(s1)?;
            let forms1 = self.folded_expansions(word1);
            let forms2 = self.folded_expansions(word2);
            let refs1: Vec<&str> = forms1.iter().map(|s| s.as_str()).collect();
            let refs2: Vec<&str> = forms2.iter().map(|s| s.as_str()).collect();
            let shared = paragraph
                .groups
                .iter()
                .any(|g| g.contains_any(&refs1) && g.contains_any(&refs2));
            if shared {
                return Ok(0);
            }
            // A word reaching this paragraph only through phrase-split
            // indexing has no literal group membership and cannot earn
            // level 0 against other words. Against its own forms it still
            // does: a word is always at distance zero from itself.
            let any1 = paragraph.groups.iter().any(|g| g.contains_any(&refs1));
            let any2 = paragraph.groups.iter().any(|g| g.contains_any(&refs2));
            if !any1 && !any2 && refs1.iter().any(|f| refs2.contains(f)) {
                return Ok(0);
            }
            return Ok(2);
        }
        if s1.head_num == s2.head_num {
            return Ok(if s1.pos == s2.pos { 4 } else { 6 });
        }
        let a1 = &self.kb.get_head(s1.head_num)?.address;
        let a2 = &self.kb.get_head(s2.head_num)?.address;
        if a1.headgroup == a2.headgroup {
            return Ok(8);
        }
        if a1.class_num == a2.class_num {
            if a1.section_num == a2.section_num {
                if a1.subsection_name == a2.subsection_name {
                    return Ok(10);
                }
                return Ok(12);
            }
            return Ok(14);
        }
        Ok(16)
    }

    fn folded_expansions(&self, word: &str) -> Vec<String> {
        self.index
            .expansions(word)
            .iter()
            .map(|f| fold(f))
            .collect()
    }

    /// Renders the node chain in the printed format: ascending arrows to
    /// the deepest shared node, then descending arrows.
    fn render_chain(
        &self,
        word1: &str,
        ref1: &Reference,
        word2: &str,
        ref2: &Reference,
        length: u32,
    ) -> String {
        if length == 0 {
            return format!("{word1} ↔ {word2}");
        }
        // Node ladders from each keyword up to the root; index i holds the
        // node at 1 + i edges above the word.
        let up1 = self.ladder(&ref1.sense);
        let up2 = self.ladder(&ref2.sense);
        let climb = (length / 2) as usize;
        let mut parts: Vec<String> = Vec::new();
        parts.push(word1.to_string());
        for node in up1.iter().take(climb) {
            parts.push(format!("→ {node}"));
        }
        for node in up2.iter().take(climb - 1).rev() {
            parts.push(format!("← {node}"));
        }
        parts.push(format!("← {word2}"));
        parts.join(" ")
    }

    /// The eight nodes above a sense: keyword, part-of-speech, head, head
    /// group, sub-section, section, class, root.
    fn ladder(&self, sense: &SenseKey) -> Vec<String> {
        let addr = self
            .kb
            .get_head(sense.head_num)
            .map(|h| h.address.clone())
            .expect("sense resolved before rendering");
        let group = addr
            .headgroup
            .iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        let section_ord = self
            .kb
            .section_ordinal(addr.class_num, addr.section_num)
            .unwrap_or(addr.section_num as usize);
        vec![
            sense.keyword.clone(),
            sense.pos.label().to_string(),
            format!("{}. {}", addr.head_num, addr.head_name),
            format!("[{group}]"),
            addr.subsection_name.clone(),
            format!(
                "Section {} : {}",
                ordinal_word(section_ord),
                addr.section_name
            ),
            format!(
                "Class {} : {}",
                ordinal_word(addr.class_num as usize),
                addr.class_name
            ),
            "T".to_string(),
        ]
    }

    fn hits_or_not_found(&self, word: &str, pos_filter: Option<Pos>) -> Result<Vec<LookupHit>> {
        let hits = match pos_filter {
            Some(pos) => self.index.lookup_pos(word, pos),
            None => self.index.lookup(word),
        };
        if hits.is_empty() {
            return Err(LexError::WordNotFound {
                word: word.to_string(),
            });
        }
        Ok(hits)
    }

    /// All paths over the cartesian product of the two words' references.
    pub fn all_paths(&self, word1: &str, word2: &str, pos_filter: Option<Pos>) -> Result<PathSet> {
        let hits1 = self.hits_or_not_found(word1, pos_filter)?;
        let hits2 = self.hits_or_not_found(word2, pos_filter)?;
        let mut paths = Vec::with_capacity(hits1.len() * hits2.len());
        for h1 in &hits1 {
            for h2 in &hits2 {
                paths.push(self.path_between(word1, &h1.reference, word2, &h2.reference)?);
            }
        }
        paths.sort_by(|a, b| Self::path_order(a).cmp(&Self::path_order(b)));
        let min_length = paths.iter().map(|p| p.length).min().unwrap_or(MAX_DISTANCE);
        let min_path_count = paths.iter().filter(|p| p.length == min_length).count();
        Ok(PathSet {
            word1: word1.to_string(),
            word2: word2.to_string(),
            min_length,
            min_path_count,
            paths,
        })
    }

    fn path_order(p: &Path) -> (u32, String, u32, usize, String, u32, usize) {
        (
            p.length,
            fold(&p.ref1.sense.keyword),
            p.ref1.sense.head_num,
            p.ref1.sense.pos.order(),
            fold(&p.ref2.sense.keyword),
            p.ref2.sense.head_num,
            p.ref2.sense.pos.order(),
        )
    }

    /// Number of edges in the shortest path between the two words.
    pub fn distance(&self, word1: &str, word2: &str) -> Result<u32> {
        Ok(self.all_paths(word1, word2, None)?.min_length)
    }

    /// Similarity as maximum length minus distance; the transform used by
    /// everything downstream.
    pub fn sim1(&self, word1: &str, word2: &str) -> Result<u32> {
        Ok(MAX_DISTANCE - self.distance(word1, word2)?)
    }

    /// Similarity as the inverse of distance plus one, in `[1/17, 1]`.
    pub fn sim2(&self, word1: &str, word2: &str) -> Result<Rational> {
        Ok(Rational::new(
            1,
            1 + i64::from(self.distance(word1, word2)?),
        ))
    }

    /// Relation by taxonomy position: reiteration of the same string, or
    /// co-membership in one paragraph.
    pub fn t1_relation(&self, word1: &str, word2: &str) -> ThesauralRelation {
        if fold(word1) == fold(word2) {
            return ThesauralRelation::T0;
        }
        let senses1 = self.index.senses(word1);
        if senses1.is_empty() {
            return ThesauralRelation::None;
        }
        let senses2 = self.index.senses(word2);
        if senses2.iter().any(|s| senses1.contains(s)) {
            ThesauralRelation::T1
        } else {
            ThesauralRelation::None
        }
    }
}

/// Renders a path listing: every path's header and chain, then the total.
pub fn render_path_listing(set: &PathSet) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "Path between {} and {} ({} paths in total)\n",
        set.word1,
        set.word2,
        set.paths.len()
    ));
    for path in &set.paths {
        out.push_str(&path.header());
        out.push('\n');
        out.push_str(&path.chain);
        out.push('\n');
    }
    out
}
