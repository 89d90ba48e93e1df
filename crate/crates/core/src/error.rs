use thiserror::Error;

use crate::kb::SenseKey;

#[derive(Debug, Error)]
pub enum LexError {
    #[error("unknown head number {0}")]
    HeadNotFound(u32),

    #[error("dangling reference: no paragraph for {0}")]
    DanglingReference(SenseKey),

    #[error("word not found in paragraph {sense}: {word:?}")]
    WordNotInParagraph { sense: SenseKey, word: String },

    #[error("{word:?} is not in the index")]
    WordNotFound { word: String },

    #[error("not a part-of-speech label: {0:?}")]
    BadPosLabel(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("structural error at line {line}: {msg}")]
    Structure { line: usize, msg: String },

    #[error("knowledge base is empty: no heads defined")]
    EmptyKb,

    #[error("correlation is undefined: {0}")]
    UndefinedCorrelation(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl LexError {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        LexError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, LexError>;
