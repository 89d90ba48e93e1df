#![allow(dead_code)]

pub mod chain_oracle;
pub mod gen;
pub mod oracle;

use std::fs;
use std::path::{Path, PathBuf};

use lexkb_core::index::{Index, IndexOptions, LexicalData};
use lexkb_core::ingest::{parse_corpus, ParseOptions};
use lexkb_core::KnowledgeBase;

pub fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .unwrap()
}

pub fn fixture_path(name: &str) -> PathBuf {
    workspace_root().join("fixtures").join(name)
}

pub fn fixture_text(name: &str) -> String {
    fs::read_to_string(fixture_path(name)).unwrap()
}

pub fn load_kb(name: &str) -> KnowledgeBase {
    parse_corpus(&fixture_text(name), ParseOptions::default()).unwrap()
}

pub fn lexical_data() -> LexicalData {
    LexicalData::from_dir(&workspace_root().join("data")).unwrap()
}

pub fn load_kb_index(name: &str) -> (KnowledgeBase, Index) {
    let kb = load_kb(name);
    let index = Index::build(&kb, lexical_data(), IndexOptions::default());
    (kb, index)
}

#[allow(dead_code)]
pub fn load_kb_index_no_split(name: &str) -> (KnowledgeBase, Index) {
    let kb = load_kb(name);
    let index = Index::build(
        &kb,
        lexical_data(),
        IndexOptions {
            phrase_split: false,
        },
    );
    (kb, index)
}
