//! Independent distance oracle: materializes the taxonomy as an explicit
//! graph with unit edges and runs breadth-first search, instead of
//! comparing address fields level by level.

use std::collections::{HashMap, VecDeque};

use lexkb_core::index::Index;
use lexkb_core::kb::KnowledgeBase;

#[derive(Default)]
pub struct TaxonomyGraph {
    adjacency: Vec<Vec<usize>>,
    ids: HashMap<String, usize>,
    /// group node ids per folded surface, via the index expansions.
    word_groups: HashMap<String, Vec<usize>>,
}

impl TaxonomyGraph {
    fn node(&mut self, key: String) -> usize {
        if let Some(&id) = self.ids.get(&key) {
            return id;
        }
        let id = self.adjacency.len();
        self.adjacency.push(Vec::new());
        self.ids.insert(key, id);
        id
    }

    fn edge(&mut self, a: usize, b: usize) {
        if !self.adjacency[a].contains(&b) {
            self.adjacency[a].push(b);
            self.adjacency[b].push(a);
        }
    }

    pub fn build(kb: &KnowledgeBase, index: &Index) -> TaxonomyGraph {
        let mut g = TaxonomyGraph::default();
        let root = g.node("root".to_string());
        for head in kb.heads() {
            let a = &head.address;
            let class = g.node(format!("class/{}", a.class_num));
            g.edge(class, root);
            let section = g.node(format!("section/{}/{}", a.class_num, a.section_num));
            g.edge(section, class);
            let subsection = g.node(format!(
                "subsection/{}/{}/{}",
                a.class_num, a.section_num, a.subsection_name
            ));
            g.edge(subsection, section);
            let group_key: Vec<String> = a.headgroup.iter().map(|n| n.to_string()).collect();
            let headgroup = g.node(format!("headgroup/{}", group_key.join(",")));
            g.edge(headgroup, subsection);
            let head_node = g.node(format!("head/{}", a.head_num));
            g.edge(head_node, headgroup);
            for paragraph in &head.paragraphs {
                let pos = g.node(format!("pos/{}/{}", a.head_num, paragraph.sense.pos));
                g.edge(pos, head_node);
                let para = g.node(format!("para/{}", paragraph.sense));
                g.edge(para, pos);
                for (gi, sg) in paragraph.groups.iter().enumerate() {
                    let sg_node = g.node(format!("sg/{}/{}", paragraph.sense, gi));
                    g.edge(sg_node, para);
                    for word in &sg.words {
                        g.word_groups
                            .entry(word.folded.clone())
                            .or_default()
                            .push(sg_node);
                    }
                }
            }
        }
        // Queries reach stored forms through morphological and variant
        // expansion; mirror that by mapping every index surface to the
        // groups of the stored words it expands to.
        let surfaces: Vec<String> = index.surfaces().map(String::from).collect();
        for surface in surfaces {
            let mut groups: Vec<usize> = Vec::new();
            for form in index.expansions(&surface) {
                if let Some(found) = g.word_groups.get(&form) {
                    groups.extend(found.iter().copied());
                }
            }
            groups.sort_unstable();
            groups.dedup();
            g.word_groups.insert(surface, groups);
        }
        g
    }

    fn bfs(&self, start: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.adjacency.len()];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(node) = queue.pop_front() {
            for &next in &self.adjacency[node] {
                if dist[next] == u32::MAX {
                    dist[next] = dist[node] + 1;
                    queue.push_back(next);
                }
            }
        }
        dist
    }

    /// Shortest unit-edge distance between any group containing (a form
    /// of) `w1` and any group containing `w2`. `None` when either word is
    /// absent.
    pub fn distance(&self, w1: &str, w2: &str) -> Option<u32> {
        let g1 = self.word_groups.get(&w1.to_lowercase())?;
        let g2 = self.word_groups.get(&w2.to_lowercase())?;
        if g1.is_empty() || g2.is_empty() {
            return None;
        }
        let mut best = u32::MAX;
        for &start in g1 {
            let dist = self.bfs(start);
            for &end in g2 {
                best = best.min(dist[end]);
            }
        }
        Some(best)
    }
}
