use std::collections::BTreeMap;
use std::fmt::Write;
use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::json;

use scigis::corpus::{load_corpus, load_pairs, CorpusFormat, Document, Tagger};
use scigis::eval::{
    ari, correlate_readability, fkgl, format_number, pair_stats, ttest_ind, BenchReport,
    CorrelateReport, CorrelateRow, PairOutcome, PairsReport,
};
use scigis::gis::{
    check_requirements, compute_corpus_indices, score_documents, zscore, zscore_with, GisScore,
    Requirement, Resources, ZMatrix, ZStats,
};
use scigis::indices::{IndexKind, RawIndices};
use scigis::lexres::{
    build_ic, lemma_counts, load_ic_file, load_support_files, load_word_vectors, parse_wordnet_db,
};
use scigis::{Error, Result};

use crate::config::{Format, Settings, ZPopulation};

fn warn_all(warnings: &[String]) {
    for w in warnings {
        log::warn!("{w}");
    }
}

/// Checks the configured paths against the enabled indices, then loads.
pub fn load_resources(s: &Settings) -> Result<Resources> {
    check_requirements(&s.options.enabled, |r| match r {
        Requirement::Embeddings => s.sidecar_file.is_some() || s.vectors_file.is_some(),
        Requirement::WordVectors => s.vectors_file.is_some(),
        Requirement::WordNet => s.wordnet_dir.is_some(),
        Requirement::InformationContent => s.ic_file.is_some() || s.ic_corpus.is_some(),
        Requirement::Lexicon => s.lexicon_file.is_some(),
    })?;

    let wordnet = s.wordnet_dir.as_deref().map(parse_wordnet_db).transpose()?;
    let ic = match (&s.ic_file, &s.ic_corpus, &wordnet) {
        (Some(path), _, Some(db)) => {
            let loaded = load_ic_file(path, db)?;
            warn_all(&loaded.warnings);
            Some(loaded.value)
        }
        (None, Some(path), Some(db)) => {
            let docs = read_corpus(path, Some(db))?;
            Some(build_ic(db, &lemma_counts(&docs), s.ic_smoothing)?)
        }
        _ => None,
    };
    let vectors = match &s.vectors_file {
        Some(path) => {
            let loaded = load_word_vectors(path)?;
            warn_all(&loaded.warnings);
            Some(loaded.value)
        }
        None => None,
    };
    let support = load_support_files(
        s.lexicon_file.as_deref(),
        s.connectives_file.as_deref(),
        s.sidecar_file.as_deref(),
    )?;
    let res = Resources {
        wordnet,
        ic,
        vectors,
        sidecar: support.sidecar,
        lexicon: support.lexicon,
        connectives: support.connectives,
    };
    res.check(&s.options.enabled)?;
    Ok(res)
}

fn tag_all(docs: &mut [Document], db: Option<&scigis::lexres::WordNetDb>) {
    if let Some(db) = db {
        let tagger = Tagger::new(db);
        for d in docs {
            tagger.tag_document(d);
        }
    }
}

/// Loads a corpus and tags plain text against WordNet when one is loaded.
fn read_corpus(path: &Path, db: Option<&scigis::lexres::WordNetDb>) -> Result<Vec<Document>> {
    let (mut docs, format) = load_corpus(path)?;
    if format != CorpusFormat::Conllu {
        tag_all(&mut docs, db);
    }
    Ok(docs)
}

/// z values for `raw`, normalizing each side separately when asked.
fn normalize(s: &Settings, raw: &[RawIndices], sides: &[usize]) -> Result<(ZMatrix, Vec<ZStats>)> {
    if let Some(path) = &s.zstats_file {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let stats: ZStats = serde_json::from_str(&text)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        return Ok((zscore_with(raw, &stats), vec![stats]));
    }
    match s.z_population {
        ZPopulation::Combined => {
            let (stats, z) = zscore(raw);
            Ok((z, vec![stats]))
        }
        ZPopulation::PerSide => {
            let n_sides = sides.iter().copied().max().map_or(0, |m| m + 1);
            let mut z = vec![[0.0; IndexKind::COUNT]; raw.len()];
            let mut all = Vec::new();
            for side in 0..n_sides {
                let idx: Vec<usize> = (0..raw.len()).filter(|&i| sides[i] == side).collect();
                let subset: Vec<RawIndices> = idx.iter().map(|&i| raw[i].clone()).collect();
                let (stats, zs) = zscore(&subset);
                for (i, row) in idx.into_iter().zip(zs) {
                    z[i] = row;
                }
                all.push(stats);
            }
            Ok((z, all))
        }
    }
}

fn scored(s: &Settings, res: &Resources, docs: &[Document], sides: &[usize]) -> Result<Scored> {
    let raw = compute_corpus_indices(docs, res, &s.options, s.jobs)?;
    let (z, stats) = normalize(s, &raw, sides)?;
    let main = score_documents(&raw, &z, &s.formula)?;
    let baseline = s
        .baseline
        .as_ref()
        .map(|b| score_documents(&raw, &z, b))
        .transpose()?;
    Ok(Scored {
        main,
        baseline,
        stats,
    })
}

struct Scored {
    main: Vec<GisScore>,
    baseline: Option<Vec<GisScore>>,
    stats: Vec<ZStats>,
}

fn enabled(s: &Settings) -> Vec<IndexKind> {
    s.options.enabled.iter().copied().collect()
}

fn render<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("reports serialize");
    out.push('\n');
    out
}

/// `doc_id sent windowed_text` for every sentence, whitespace collapsed.
pub fn dump_sentences(s: &Settings, corpus: &Path) -> Result<String> {
    let (docs, _) = load_corpus(corpus)?;
    let buffer = s.options.chunking.buffer_size;
    let mut out = String::from("doc_id\tsent\twindowed_text\n");
    for doc in &docs {
        for i in 0..doc.sentences.len() {
            let text = doc.window_text(i, buffer);
            let text = text.split_whitespace().collect::<Vec<_>>().join(" ");
            writeln!(out, "{}\t{i}\t{text}", doc.doc_id).unwrap();
        }
    }
    Ok(out)
}

pub fn score(s: &Settings, corpus: &Path) -> Result<String> {
    let res = load_resources(s)?;
    let docs = read_corpus(corpus, res.wordnet.as_ref())?;
    let sides = vec![0; docs.len()];
    let out = scored(s, &res, &docs, &sides)?;
    let kinds = enabled(s);

    match s.format {
        Format::Tsv => {
            let mut header = vec!["doc_id".to_string()];
            header.extend(kinds.iter().map(|k| k.name().to_string()));
            header.extend(kinds.iter().map(|k| format!("z_{}", k.name())));
            header.push("gis".into());
            if out.baseline.is_some() {
                header.push("gis_baseline".into());
            }
            let mut text = header.join("\t");
            text.push('\n');
            for (i, g) in out.main.iter().enumerate() {
                let mut row = vec![g.doc_id().to_string()];
                row.extend(kinds.iter().map(|&k| {
                    let v = g.raw.get(k);
                    if v.available {
                        format_number(v.value)
                    } else {
                        "NA".into()
                    }
                }));
                row.extend(kinds.iter().map(|&k| format_number(g.z[k.slot()])));
                row.push(format_number(g.gis));
                if let Some(b) = &out.baseline {
                    row.push(format_number(b[i].gis));
                }
                text.push_str(&row.join("\t"));
                text.push('\n');
            }
            Ok(text)
        }
        Format::Json => {
            let documents: Vec<_> = out
                .main
                .iter()
                .enumerate()
                .map(|(i, g)| {
                    let raw: BTreeMap<&str, Option<f64>> = kinds
                        .iter()
                        .map(|&k| {
                            let v = g.raw.get(k);
                            (k.name(), v.available.then_some(v.value))
                        })
                        .collect();
                    let z: BTreeMap<&str, f64> =
                        kinds.iter().map(|&k| (k.name(), g.z[k.slot()])).collect();
                    json!({
                        "doc_id": g.doc_id(),
                        "raw": raw,
                        "z": z,
                        "gis": g.gis,
                        "gis_baseline": out.baseline.as_ref().map(|b| b[i].gis),
                    })
                })
                .collect();
            Ok(render(&json!({
                "formula": s.formula.name,
                "baseline": s.baseline.as_ref().map(|b| &b.name),
                "documents": documents,
                "zstats": out.stats,
            })))
        }
    }
}

pub fn pairs(s: &Settings, path: &Path) -> Result<String> {
    let res = load_resources(s)?;
    let records = load_pairs(path)?;
    let mut docs = Vec::with_capacity(records.len() * 2);
    let mut sides = Vec::with_capacity(records.len() * 2);
    for r in &records {
        docs.push(r.abs_doc.clone());
        docs.push(r.pls_doc.clone());
        sides.extend([0, 1]);
    }
    tag_all(&mut docs, res.wordnet.as_ref());
    let out = scored(s, &res, &docs, &sides)?;

    let outcomes = |scores: &[GisScore]| -> Vec<PairOutcome> {
        records
            .iter()
            .enumerate()
            .map(|(i, r)| {
                PairOutcome::new(r.pair_id.clone(), scores[2 * i].gis, scores[2 * i + 1].gis)
            })
            .collect()
    };
    let main = outcomes(&out.main);
    let base = out.baseline.as_deref().map(outcomes);
    let summary = pair_stats(&main, base.as_deref())?;
    let report = PairsReport {
        formula: s.formula.name.clone(),
        baseline: s.baseline.as_ref().map(|b| b.name.clone()),
        pairs: main,
        summary,
    };
    Ok(match s.format {
        Format::Tsv => report.to_tsv(),
        Format::Json => render(&report),
    })
}

pub fn bench(s: &Settings, group1: &Path, group2: &Path) -> Result<String> {
    let res = load_resources(s)?;
    let g1 = read_corpus(group1, res.wordnet.as_ref())?;
    let g2 = read_corpus(group2, res.wordnet.as_ref())?;
    for (path, g) in [(group1, &g1), (group2, &g2)] {
        if g.len() < 2 {
            return Err(Error::Config(format!(
                "{} has {} document(s); each group needs at least 2",
                path.display(),
                g.len()
            )));
        }
    }
    let (n1, n2) = (g1.len(), g2.len());
    let docs: Vec<Document> = g1.into_iter().chain(g2).collect();
    let sides: Vec<usize> = (0..n1 + n2).map(|i| usize::from(i >= n1)).collect();
    let out = scored(s, &res, &docs, &sides)?;
    let gis: Vec<f64> = out.main.iter().map(|g| g.gis).collect();
    let result = ttest_ind(&gis[..n1], &gis[n1..], s.ttest)?;
    let report = BenchReport {
        formula: s.formula.name.clone(),
        test: s.ttest,
        n1,
        n2,
        result,
    };
    Ok(match s.format {
        Format::Tsv => report.to_tsv(),
        Format::Json => render(&report),
    })
}

pub fn correlate(s: &Settings, corpus: &Path) -> Result<String> {
    let res = load_resources(s)?;
    let docs = read_corpus(corpus, res.wordnet.as_ref())?;
    let sides = vec![0; docs.len()];
    let out = scored(s, &res, &docs, &sides)?;
    let documents = docs
        .iter()
        .zip(&out.main)
        .map(|(d, g)| {
            Ok(CorrelateRow {
                doc_id: d.doc_id.clone(),
                gis: g.gis,
                fkgl: fkgl(d)?,
                ari: ari(d)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let triples: Vec<(f64, f64, f64)> = documents.iter().map(|r| (r.gis, r.fkgl, r.ari)).collect();
    let report = CorrelateReport {
        formula: s.formula.name.clone(),
        summary: correlate_readability(&triples)?,
        documents,
    };
    Ok(match s.format {
        Format::Tsv => report.to_tsv(),
        Format::Json => render(&report),
    })
}
