//! Lexical resources: WordNet, information content tables, word vectors,
//! rating lexicons, connective lists and sentence-embedding sidecars.
//!
//! Everything here is immutable once loaded and can be shared freely across
//! scoring threads.

mod ic;
mod support;
mod vectors;
mod wordnet;

pub use ic::{build_ic, lemma_counts, load_ic_file, parse_ic, IcTable, LemmaCounts};
pub use support::{
    load_support_files, ConnectivePatterns, Rating, RatingLexicon, SidecarEmbeddings, SupportFiles,
};
pub use vectors::{
    cosine, load_word_vectors, parse_word_vectors, sentence_embedding_avg, AverageEmbedder, Cosine,
    Embedding, SentenceEmbeddingSource, WordVectors,
};
pub use wordnet::{parse_wordnet_db, PathStats, Synset, SynsetId, WnPos, WordNetDb};

/// A loaded resource plus any non-fatal problems met while reading it.
#[derive(Debug, Clone)]
pub struct Loaded<T> {
    pub value: T,
    pub warnings: Vec<String>,
}
