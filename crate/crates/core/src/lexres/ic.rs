//! Information content tables: `IC(c) = -ln P(c)`, where `P(c)` is the
//! probability of meeting `c` or any of its hyponyms in a corpus.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::Path;

use super::wordnet::{SynsetId, WnPos, WordNetDb};
use super::Loaded;
use crate::corpus::{Document, Pos};
use crate::error::{Error, Result};

/// Lemma frequencies keyed by `(lemma, pos)`.
pub type LemmaCounts = BTreeMap<(String, WnPos), f64>;

#[derive(Debug, Clone, Default)]
pub struct IcTable {
    prob: HashMap<SynsetId, f64>,
    pub smoothing: f64,
    /// Total count mass whose lemma was not in the database.
    pub uncovered: f64,
}

impl IcTable {
    pub fn from_probabilities(prob: HashMap<SynsetId, f64>) -> Self {
        IcTable {
            prob,
            ..Default::default()
        }
    }

    pub fn prob(&self, id: SynsetId) -> Option<f64> {
        self.prob.get(&id).copied()
    }

    /// `-ln P(c)`, or `None` when `c` has no probability mass.
    pub fn ic(&self, id: SynsetId) -> Option<f64> {
        self.prob(id).map(|p| -p.ln())
    }

    pub fn len(&self) -> usize {
        self.prob.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prob.is_empty()
    }
}

/// Counts NOUN and VERB lemmas in tagged documents.
pub fn lemma_counts<'a>(docs: impl IntoIterator<Item = &'a Document>) -> LemmaCounts {
    let mut counts = LemmaCounts::new();
    for doc in docs {
        for t in doc.tokens() {
            let pos = match t.pos {
                Pos::Noun => WnPos::Noun,
                Pos::Verb => WnPos::Verb,
                _ => continue,
            };
            *counts.entry((t.lemma.clone(), pos)).or_insert(0.0) += 1.0;
        }
    }
    counts
}

/// Resnik-style table from lemma counts.
///
/// Each lemma's count is split equally among its synsets; every share is
/// credited once to the synset and once to each of its ancestors, however
/// many paths lead there. Then
/// `P(c) = (credit(c) + smoothing) / (total(pos) + smoothing)` where
/// `total(pos)` is the covered count mass of that part of speech. Synsets
/// left with zero probability get no entry.
pub fn build_ic(db: &WordNetDb, counts: &LemmaCounts, smoothing: f64) -> Result<IcTable> {
    if !(smoothing >= 0.0 && smoothing.is_finite()) {
        return Err(Error::Config(format!(
            "smoothing must be finite and >= 0, got {smoothing}"
        )));
    }
    let mut credit: HashMap<SynsetId, f64> = HashMap::new();
    let mut total = [0.0f64; 2];
    let mut uncovered = 0.0;
    for ((lemma, pos), &count) in counts {
        if !(count >= 0.0 && count.is_finite()) {
            return Err(Error::Config(format!(
                "count for `{lemma}` must be finite and >= 0"
            )));
        }
        let synsets = db.synsets_for(lemma, *pos);
        if synsets.is_empty() {
            uncovered += count;
            continue;
        }
        total[slot(*pos)] += count;
        let share = count / synsets.len() as f64;
        for &s in synsets {
            for a in db.ancestors(s) {
                *credit.entry(a).or_insert(0.0) += share;
            }
        }
    }
    if total.iter().all(|&t| t == 0.0) && smoothing == 0.0 {
        return Err(Error::NoProbabilityMass);
    }

    let mut prob = HashMap::new();
    for syn in db.synsets() {
        let denom = total[slot(syn.id.pos)] + smoothing;
        let num = credit.get(&syn.id).copied().unwrap_or(0.0) + smoothing;
        if denom > 0.0 && num > 0.0 {
            prob.insert(syn.id, num / denom);
        }
    }
    Ok(IcTable {
        prob,
        smoothing,
        uncovered,
    })
}

fn slot(pos: WnPos) -> usize {
    match pos {
        WnPos::Noun => 0,
        WnPos::Verb => 1,
    }
}

/// Reads a precomputed table in the WordNet-IC layout: lines of
/// `<offset><pos> <count> [ROOT]` with counts already propagated upward.
///
/// Probabilities are counts divided by the summed `ROOT` counts of the same
/// part of speech. The `wnver::` header is ignored; other unparsable lines
/// and offsets missing from `db` are skipped with a warning.
pub fn load_ic_file(path: &Path, db: &WordNetDb) -> Result<Loaded<IcTable>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_ic(&text, db, &path.display().to_string())
}

pub fn parse_ic(text: &str, db: &WordNetDb, source: &str) -> Result<Loaded<IcTable>> {
    let mut warnings = Vec::new();
    let mut counts: Vec<(SynsetId, f64)> = Vec::new();
    let mut root_total = [0.0f64; 2];
    let mut seen_pos = [false; 2];

    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        if line.trim().is_empty() || line.starts_with("wnver::") {
            continue;
        }
        let Some((id, count, is_root)) = parse_ic_line(line) else {
            warnings.push(format!("{source}:{lineno}: skipped unparsable line"));
            continue;
        };
        if db.synset(id).is_none() {
            warnings.push(format!(
                "{source}:{lineno}: synset {id} not in database, skipped"
            ));
            continue;
        }
        seen_pos[slot(id.pos)] = true;
        if is_root {
            root_total[slot(id.pos)] += count;
        }
        counts.push((id, count));
    }

    for pos in WnPos::ALL {
        if seen_pos[slot(pos)] && root_total[slot(pos)] <= 0.0 {
            return Err(Error::parse(
                source,
                0,
                format!("zero ROOT total for part of speech `{}`", pos.as_char()),
            ));
        }
    }

    let mut prob = HashMap::new();
    for (id, count) in counts {
        if count > 0.0 {
            let p = (count / root_total[slot(id.pos)]).min(1.0);
            prob.insert(id, p);
        }
    }
    Ok(Loaded {
        value: IcTable::from_probabilities(prob),
        warnings,
    })
}

fn parse_ic_line(line: &str) -> Option<(SynsetId, f64, bool)> {
    let mut fields = line.split_whitespace();
    let key = fields.next()?;
    let count: f64 = fields.next()?.parse().ok()?;
    let is_root = match fields.next() {
        None => false,
        Some("ROOT") => true,
        Some(_) => return None,
    };
    if fields.next().is_some() || !count.is_finite() || count < 0.0 {
        return None;
    }
    let pos = WnPos::from_char(key.chars().last()?)?;
    let offset: u64 = key[..key.len() - 1].parse().ok()?;
    Some((SynsetId::new(offset, pos), count, is_root))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexres::Synset;

    fn n(o: u64) -> SynsetId {
        SynsetId::noun(o)
    }

    fn two_leaves() -> WordNetDb {
        WordNetDb::from_synsets(vec![
            Synset::new(n(100000), ["root"], []),
            Synset::new(n(100001), ["left"], [n(100000)]),
            Synset::new(n(100002), ["right"], [n(100000)]),
        ])
        .unwrap()
    }

    fn counts(items: &[(&str, f64)]) -> LemmaCounts {
        items
            .iter()
            .map(|&(l, c)| ((l.to_string(), WnPos::Noun), c))
            .collect()
    }

    #[test]
    fn root_only_corpus() {
        let t = build_ic(&two_leaves(), &counts(&[("root", 1.0)]), 0.0).unwrap();
        assert_eq!(t.prob(n(100000)), Some(1.0));
        assert_eq!(t.ic(n(100000)), Some(0.0));
        assert_eq!(t.prob(n(100001)), None);
    }

    #[test]
    fn two_equal_leaves() {
        let t = build_ic(
            &two_leaves(),
            &counts(&[("left", 3.0), ("right", 3.0)]),
            0.0,
        )
        .unwrap();
        assert_eq!(t.prob(n(100001)), Some(0.5));
        assert!((t.ic(n(100002)).unwrap() - std::f64::consts::LN_2).abs() < 1e-15);
        assert_eq!(t.prob(n(100000)), Some(1.0));
    }

    #[test]
    fn empty_counts() {
        let db = two_leaves();
        assert!(matches!(
            build_ic(&db, &LemmaCounts::new(), 0.0),
            Err(Error::NoProbabilityMass)
        ));
        let t = build_ic(&db, &LemmaCounts::new(), 1.0).unwrap();
        for s in db.synsets() {
            assert_eq!(t.prob(s.id), Some(1.0));
        }
    }

    #[test]
    fn uncovered_lemmas_are_tallied() {
        let t = build_ic(
            &two_leaves(),
            &counts(&[("left", 1.0), ("zebra", 4.0)]),
            0.0,
        )
        .unwrap();
        assert_eq!(t.uncovered, 4.0);
        assert_eq!(t.prob(n(100001)), Some(1.0));
    }

    #[test]
    fn file_single_root() {
        let t = parse_ic("100000n 10.0 ROOT\n", &two_leaves(), "ic").unwrap();
        assert_eq!(t.value.prob(n(100000)), Some(1.0));
        assert!(t.warnings.is_empty());
    }

    #[test]
    fn file_normalizes_by_root() {
        let t = parse_ic("100000n 4 ROOT\n100001n 1\n", &two_leaves(), "ic").unwrap();
        assert_eq!(t.value.prob(n(100000)), Some(1.0));
        assert_eq!(t.value.prob(n(100001)), Some(0.25));
    }

    #[test]
    fn file_skips_bad_lines() {
        let t = parse_ic(
            "wnver::eOS9lXC6GvMWznF1wkZofDdtbBU\n100000n 4 ROOT\n",
            &two_leaves(),
            "ic",
        )
        .unwrap();
        assert!(t.warnings.is_empty());
        let t = parse_ic("100000n 4 ROOT\njunk\n", &two_leaves(), "ic").unwrap();
        assert_eq!(t.warnings.len(), 1);
        let t = parse_ic("100000n 4 ROOT\n999n 2\n", &two_leaves(), "ic").unwrap();
        assert_eq!(t.warnings.len(), 1);
    }

    #[test]
    fn file_zero_root_total() {
        assert!(parse_ic("100001n 3\n", &two_leaves(), "ic").is_err());
    }
}
