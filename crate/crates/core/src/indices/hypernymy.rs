use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::mean;
use crate::corpus::{Document, Pos, Token};
use crate::lexres::{IcTable, SynsetId, WnPos, WordNetDb};

fn content_synsets<'a>(
    doc: &'a Document,
    db: &'a WordNetDb,
) -> impl Iterator<Item = &'a [SynsetId]> {
    doc.tokens().filter_map(move |t: &Token| {
        let pos = match t.pos {
            Pos::Noun => WnPos::Noun,
            Pos::Verb => WnPos::Verb,
            _ => return None,
        };
        let synsets = db.synsets_for(&t.lemma, pos);
        (!synsets.is_empty()).then_some(synsets)
    })
}

/// Mean hypernym path length. Each synset scores the mean length (in
/// nodes) of all its root-reaching paths; a token scores the mean over its
/// synsets; the document the mean over nouns and verbs found in WordNet.
pub fn idx_wrdhyp_mean(doc: &Document, db: &WordNetDb) -> Option<f64> {
    mean(content_synsets(doc, db).map(|synsets| {
        mean(synsets.iter().map(|s| {
            db.path_stats(*s)
                .expect("indexed synsets have stats")
                .mean_length()
        }))
        .expect("non-empty")
    }))
}

/// How representative path lengths are normalized within a root group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WrdhypNormMode {
    /// Divide by the longest representative path to the same root anywhere
    /// in the database.
    #[default]
    RootScale,
    /// Divide by the L1 norm of the group's own lengths. Every group mean
    /// collapses to `1 / group size`; kept for comparison.
    GroupL1,
}

/// Root-normalized hypernym depth.
///
/// For each token, every synset contributes its longest path as the
/// representative. Representatives are grouped by root, normalized, and
/// averaged within each group; the token scores the mean of its group
/// means and the document the mean over tokens.
pub fn idx_wrdhyp_norm(doc: &Document, db: &WordNetDb, mode: WrdhypNormMode) -> Option<f64> {
    mean(content_synsets(doc, db).map(|synsets| {
        let mut groups: BTreeMap<SynsetId, Vec<usize>> = BTreeMap::new();
        for s in synsets {
            let (len, root) = db
                .path_stats(*s)
                .expect("indexed synsets have stats")
                .longest;
            groups.entry(root).or_default().push(len);
        }
        let group_means = groups.iter().map(|(root, lengths)| {
            let scale = match mode {
                WrdhypNormMode::RootScale => db.root_scale(*root).expect("root has a scale") as f64,
                WrdhypNormMode::GroupL1 => lengths.iter().sum::<usize>() as f64,
            };
            mean(lengths.iter().map(|&l| l as f64 / scale)).expect("non-empty group")
        });
        mean(group_means).expect("at least one group")
    }))
}

/// Mean information content of nouns and verbs. A token scores the mean IC
/// of those of its synsets that have probability mass.
pub fn idx_wrdic(doc: &Document, db: &WordNetDb, ic: &IcTable) -> Option<f64> {
    mean(
        content_synsets(doc, db)
            .filter_map(|synsets| mean(synsets.iter().filter_map(|s| ic.ic(*s)))),
    )
}
