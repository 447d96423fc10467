//! Princeton WordNet 3.0 database files, restricted to nouns and verbs.
//!
//! Only the hypernym graph is kept: pointer symbols `@` (hypernym) and `@i`
//! (instance hypernym) become edges, everything else is ignored. Path
//! statistics used by the hypernymy indices are computed once at load time.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WnPos {
    #[serde(rename = "n")]
    Noun,
    #[serde(rename = "v")]
    Verb,
}

impl WnPos {
    pub const ALL: [WnPos; 2] = [WnPos::Noun, WnPos::Verb];

    pub fn as_char(self) -> char {
        match self {
            WnPos::Noun => 'n',
            WnPos::Verb => 'v',
        }
    }

    pub fn from_char(c: char) -> Option<WnPos> {
        match c {
            'n' => Some(WnPos::Noun),
            'v' => Some(WnPos::Verb),
            _ => None,
        }
    }

    fn slot(self) -> usize {
        match self {
            WnPos::Noun => 0,
            WnPos::Verb => 1,
        }
    }

    fn file_suffix(self) -> &'static str {
        match self {
            WnPos::Noun => "noun",
            WnPos::Verb => "verb",
        }
    }
}

/// Synset identity: byte offset in the data file plus part of speech.
/// Orders by offset first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SynsetId {
    pub offset: u64,
    pub pos: WnPos,
}

impl SynsetId {
    pub fn new(offset: u64, pos: WnPos) -> Self {
        SynsetId { offset, pos }
    }

    pub fn noun(offset: u64) -> Self {
        SynsetId::new(offset, WnPos::Noun)
    }

    pub fn verb(offset: u64) -> Self {
        SynsetId::new(offset, WnPos::Verb)
    }
}

impl fmt::Display for SynsetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:08}{}", self.offset, self.pos.as_char())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Synset {
    pub id: SynsetId,
    pub lemmas: Vec<String>,
    pub hypernyms: Vec<SynsetId>,
}

impl Synset {
    pub fn new<'a>(
        id: SynsetId,
        lemmas: impl IntoIterator<Item = &'a str>,
        hypernyms: impl IntoIterator<Item = SynsetId>,
    ) -> Self {
        let mut out: Vec<String> = Vec::new();
        for l in lemmas {
            let l = l.to_lowercase();
            if !out.contains(&l) {
                out.push(l);
            }
        }
        Synset {
            id,
            lemmas: out,
            hypernyms: hypernyms.into_iter().collect(),
        }
    }

    pub fn is_root(&self) -> bool {
        self.hypernyms.is_empty()
    }
}

/// Aggregates over every root-reaching hypernym path of one synset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathStats {
    pub path_count: u64,
    /// Sum of path lengths, counted in nodes.
    pub length_sum: u64,
    /// Longest path; ties go to the greater root id.
    pub longest: (usize, SynsetId),
}

impl PathStats {
    pub fn mean_length(&self) -> f64 {
        self.length_sum as f64 / self.path_count as f64
    }
}

type LemmaIndex = HashMap<String, Vec<SynsetId>>;

#[derive(Debug, Clone)]
pub struct WordNetDb {
    synsets: BTreeMap<SynsetId, Synset>,
    index: [LemmaIndex; 2],
    stats: HashMap<SynsetId, PathStats>,
    root_scale: BTreeMap<SynsetId, usize>,
}

impl WordNetDb {
    /// Builds a database from synsets, indexing each lemma in synset order.
    pub fn from_synsets(synsets: Vec<Synset>) -> Result<Self> {
        let mut index: [LemmaIndex; 2] = Default::default();
        for s in &synsets {
            for l in &s.lemmas {
                index[s.id.pos.slot()]
                    .entry(l.clone())
                    .or_default()
                    .push(s.id);
            }
        }
        Self::with_index(synsets, index)
    }

    fn with_index(synsets: Vec<Synset>, index: [LemmaIndex; 2]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for s in synsets {
            let id = s.id;
            if map.insert(id, s).is_some() {
                return Err(Error::DuplicateId(id.to_string()));
            }
        }
        for s in map.values() {
            for h in &s.hypernyms {
                if h.pos != s.id.pos || !map.contains_key(h) {
                    return Err(Error::UnknownSynset(format!("{h} (hypernym of {})", s.id)));
                }
            }
        }
        for ids in index.iter().flat_map(HashMap::values) {
            for id in ids {
                if !map.contains_key(id) {
                    return Err(Error::UnknownSynset(id.to_string()));
                }
            }
        }
        let order = topological_order(&map)?;
        let stats = path_stats(&map, &order);
        let mut root_scale = BTreeMap::new();
        for st in stats.values() {
            let (len, root) = st.longest;
            let e = root_scale.entry(root).or_insert(0);
            *e = (*e).max(len);
        }
        Ok(WordNetDb {
            synsets: map,
            index,
            stats,
            root_scale,
        })
    }

    pub fn len(&self) -> usize {
        self.synsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.synsets.is_empty()
    }

    pub fn synset(&self, id: SynsetId) -> Option<&Synset> {
        self.synsets.get(&id)
    }

    pub fn synsets(&self) -> impl Iterator<Item = &Synset> {
        self.synsets.values()
    }

    /// Synsets of a lemma in index order; empty when absent.
    pub fn synsets_for(&self, lemma: &str, pos: WnPos) -> &[SynsetId] {
        self.index[pos.slot()].get(lemma).map_or(&[], Vec::as_slice)
    }

    pub fn contains(&self, lemma: &str, pos: WnPos) -> bool {
        !self.synsets_for(lemma, pos).is_empty()
    }

    /// Every `(lemma, pos)` key of the index, sorted.
    pub fn lemmas(&self) -> Vec<(&str, WnPos)> {
        let mut out: Vec<_> = WnPos::ALL
            .iter()
            .flat_map(|&p| self.index[p.slot()].keys().map(move |l| (l.as_str(), p)))
            .collect();
        out.sort();
        out
    }

    pub fn path_stats(&self, id: SynsetId) -> Option<&PathStats> {
        self.stats.get(&id)
    }

    /// Longest representative path length among synsets whose
    /// representative ends at `root`.
    pub fn root_scale(&self, root: SynsetId) -> Option<usize> {
        self.root_scale.get(&root).copied()
    }

    /// `id` and all of its ancestors, each once.
    pub fn ancestors(&self, id: SynsetId) -> BTreeSet<SynsetId> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![id];
        while let Some(s) = stack.pop() {
            if seen.insert(s) {
                if let Some(syn) = self.synsets.get(&s) {
                    stack.extend(syn.hypernyms.iter().copied());
                }
            }
        }
        seen
    }

    /// Every path from `id` up to a root, as node lists starting at `id`.
    /// Sorted by root offset, then lexicographically.
    pub fn hypernym_paths(&self, id: SynsetId) -> Result<Vec<Vec<SynsetId>>> {
        if !self.synsets.contains_key(&id) {
            return Err(Error::UnknownSynset(id.to_string()));
        }
        let mut paths = Vec::new();
        let mut path = vec![id];
        self.extend_paths(&mut path, &mut paths);
        paths.sort_by(|a, b| {
            let ra = a.last().expect("non-empty").offset;
            let rb = b.last().expect("non-empty").offset;
            ra.cmp(&rb).then_with(|| a.cmp(b))
        });
        Ok(paths)
    }

    fn extend_paths(&self, path: &mut Vec<SynsetId>, out: &mut Vec<Vec<SynsetId>>) {
        let last = *path.last().expect("non-empty");
        let hypernyms = &self.synsets[&last].hypernyms;
        if hypernyms.is_empty() {
            out.push(path.clone());
            return;
        }
        for &h in hypernyms {
            path.push(h);
            self.extend_paths(path, out);
            path.pop();
        }
    }

    /// `child<TAB>parent` per hypernym edge, sorted; one edge per line.
    pub fn hypernym_edges(&self) -> String {
        let mut edges: Vec<(SynsetId, SynsetId)> = self
            .synsets
            .values()
            .flat_map(|s| s.hypernyms.iter().map(move |h| (s.id, *h)))
            .collect();
        edges.sort();
        edges.dedup();
        let mut out = String::new();
        for (c, p) in edges {
            out.push_str(&format!("{c}\t{p}\n"));
        }
        out
    }
}

fn topological_order(map: &BTreeMap<SynsetId, Synset>) -> Result<Vec<SynsetId>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Active,
        Done,
    }
    let mut marks: HashMap<SynsetId, Mark> = HashMap::with_capacity(map.len());
    let mut order = Vec::with_capacity(map.len());
    for &start in map.keys() {
        if marks.contains_key(&start) {
            continue;
        }
        // (node, next hypernym position)
        let mut stack = vec![(start, 0usize)];
        marks.insert(start, Mark::Active);
        while let Some(&mut (node, ref mut next)) = stack.last_mut() {
            let hypernyms = &map[&node].hypernyms;
            if *next < hypernyms.len() {
                let h = hypernyms[*next];
                *next += 1;
                match marks.get(&h) {
                    Some(Mark::Active) => return Err(Error::Cycle(h.to_string())),
                    Some(Mark::Done) => {}
                    None => {
                        marks.insert(h, Mark::Active);
                        stack.push((h, 0));
                    }
                }
            } else {
                marks.insert(node, Mark::Done);
                order.push(node);
                stack.pop();
            }
        }
    }
    Ok(order)
}

/// `order` lists ancestors before descendants.
fn path_stats(
    map: &BTreeMap<SynsetId, Synset>,
    order: &[SynsetId],
) -> HashMap<SynsetId, PathStats> {
    let mut stats: HashMap<SynsetId, PathStats> = HashMap::with_capacity(order.len());
    for &id in order {
        let syn = &map[&id];
        let st = if syn.is_root() {
            PathStats {
                path_count: 1,
                length_sum: 1,
                longest: (1, id),
            }
        } else {
            let mut count = 0u64;
            let mut sum = 0u64;
            let mut longest = (0usize, id);
            for h in &syn.hypernyms {
                let hs = &stats[h];
                count += hs.path_count;
                sum += hs.length_sum + hs.path_count;
                longest = longest.max((hs.longest.0 + 1, hs.longest.1));
            }
            PathStats {
                path_count: count,
                length_sum: sum,
                longest,
            }
        };
        stats.insert(id, st);
    }
    stats
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn is_license_line(line: &str) -> bool {
    line.starts_with("  ")
}

fn parse_data_file(text: &str, pos: WnPos, file: &str) -> Result<Vec<Synset>> {
    let mut out = Vec::new();
    let mut byte = 0usize;
    for (i, raw_line) in text.split_inclusive('\n').enumerate() {
        let start = byte;
        byte += raw_line.len();
        let line = raw_line.trim_end_matches(['\n', '\r']);
        if line.trim().is_empty() || is_license_line(line) {
            continue;
        }
        let err = |m: String| Error::parse(file, i + 1, m);
        let body = line.split(" | ").next().unwrap_or(line);
        let fields: Vec<&str> = body.split_whitespace().collect();
        let mut it = fields.iter().copied();
        let mut next = |what: &str| it.next().ok_or_else(|| err(format!("missing {what}")));

        let offset: u64 = next("offset")?
            .parse()
            .map_err(|_| err("bad offset".into()))?;
        if offset != start as u64 {
            return Err(err(format!(
                "offset mismatch: line says {offset}, found at byte {start}"
            )));
        }
        next("lex_filenum")?;
        let ss_type = next("ss_type")?;
        let ss_pos = ss_type.chars().next().and_then(WnPos::from_char);
        if ss_pos != Some(pos) {
            return Err(err(format!("unexpected ss_type `{ss_type}`")));
        }
        let w_cnt =
            usize::from_str_radix(next("w_cnt")?, 16).map_err(|_| err("bad w_cnt".into()))?;
        let mut lemmas = Vec::with_capacity(w_cnt);
        for _ in 0..w_cnt {
            let word = next("word")?;
            next("lex_id")?;
            // Adjective markers such as "(p)" only occur in adjective files,
            // strip them anyway.
            let word = word.split('(').next().unwrap_or(word);
            lemmas.push(word.to_lowercase());
        }
        let p_cnt: usize = next("p_cnt")?
            .parse()
            .map_err(|_| err("bad p_cnt".into()))?;
        let mut hypernyms = Vec::new();
        for _ in 0..p_cnt {
            let symbol = next("pointer symbol")?;
            let target: u64 = next("pointer offset")?
                .parse()
                .map_err(|_| err("bad pointer offset".into()))?;
            let tpos = next("pointer pos")?;
            next("source/target")?;
            if symbol == "@" || symbol == "@i" {
                let tpos = tpos
                    .chars()
                    .next()
                    .and_then(WnPos::from_char)
                    .ok_or_else(|| err(format!("bad hypernym pos `{tpos}`")))?;
                let h = SynsetId::new(target, tpos);
                if !hypernyms.contains(&h) {
                    hypernyms.push(h);
                }
            }
        }
        out.push(Synset::new(
            SynsetId::new(offset, pos),
            lemmas.iter().map(String::as_str),
            hypernyms,
        ));
    }
    Ok(out)
}

fn parse_index_file(text: &str, pos: WnPos, file: &str, index: &mut LemmaIndex) -> Result<()> {
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() || is_license_line(line) {
            continue;
        }
        let err = |m: &str| Error::parse(file, i + 1, m.to_string());
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() < 6 {
            return Err(err("too few fields"));
        }
        let lemma = fields[0].to_lowercase();
        let synset_cnt: usize = fields[2].parse().map_err(|_| err("bad synset_cnt"))?;
        let p_cnt: usize = fields[3].parse().map_err(|_| err("bad p_cnt"))?;
        // lemma pos synset_cnt p_cnt [ptr_symbol]*p_cnt sense_cnt tagsense_cnt offsets...
        let offsets_at = 4 + p_cnt + 2;
        let offsets = fields
            .get(offsets_at..)
            .ok_or_else(|| err("truncated line"))?;
        if offsets.len() != synset_cnt {
            return Err(err("synset_cnt does not match the number of offsets"));
        }
        let ids = offsets
            .iter()
            .map(|o| {
                o.parse()
                    .map(|o| SynsetId::new(o, pos))
                    .map_err(|_| err("bad offset"))
            })
            .collect::<Result<Vec<_>>>()?;
        index.insert(lemma, ids);
    }
    Ok(())
}

/// Loads `data.noun`, `data.verb`, `index.noun` and `index.verb` from `dir`.
pub fn parse_wordnet_db(dir: &Path) -> Result<WordNetDb> {
    let mut synsets = Vec::new();
    let mut index: [LemmaIndex; 2] = Default::default();
    for pos in WnPos::ALL {
        let data_path = dir.join(format!("data.{}", pos.file_suffix()));
        let index_path = dir.join(format!("index.{}", pos.file_suffix()));
        let data = read(&data_path)?;
        let idx = read(&index_path)?;
        synsets.extend(parse_data_file(
            &data,
            pos,
            &data_path.display().to_string(),
        )?);
        parse_index_file(
            &idx,
            pos,
            &index_path.display().to_string(),
            &mut index[pos.slot()],
        )?;
    }
    WordNetDb::with_index(synsets, index)
}
