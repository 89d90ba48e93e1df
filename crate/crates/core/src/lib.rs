//! A lexical knowledge-base engine over a hierarchically organized
//! thesaurus: morphologically aware word and phrase lookup, edge-counting
//! semantic distance over the taxonomy, multiple-choice synonym-question
//! answering, lexical chains over free text, and alignment of paragraph
//! senses to external synset networks.

pub mod align;
pub mod chains;
pub mod error;
pub mod index;
pub mod ingest;
pub mod kb;
pub mod morph;
pub mod pos;
pub mod quiz;
pub mod similarity;
pub mod stoplist;
pub mod variant;

pub use error::{LexError, Result};
pub use index::{Index, IndexOptions, LexicalData, Reference};
pub use ingest::{parse_corpus, serialize_corpus, ParseOptions};
pub use kb::{
    ExplicitRelation, Head, KnowledgeBase, Paragraph, RelationKind, SemicolonGroup, SenseKey,
    TaxonomyAddress,
};
pub use pos::Pos;
pub use similarity::{Path, PathSet, Similarity, ThesauralRelation, MAX_DISTANCE};
