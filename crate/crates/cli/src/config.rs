use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Deserialize;

use scigis::eval::TTestKind;
use scigis::gis::{FormulaConfig, ScoringOptions, PRESET_NAMES};
use scigis::indices::{ChunkingParams, IndexKind, PcrefMode, WrdhypNormMode};
use scigis::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Tsv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZPopulation {
    #[default]
    Combined,
    PerSide,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PcrefArg {
    Adjacent,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormArg {
    RootScale,
    GroupL1,
}

/// Options shared by every subcommand. Each overrides the same field of
/// the `--config` file.
#[derive(Debug, Clone, Default, Args)]
pub struct GlobalArgs {
    /// JSON run configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads for index computation (0 = all CPUs).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Preset name or JSON formula file.
    #[arg(long, global = true)]
    pub formula: Option<String>,
    /// Second formula scored on the same indices, for comparison.
    #[arg(long, global = true)]
    pub baseline: Option<String>,
    #[arg(long, global = true)]
    pub buffer_size: Option<usize>,
    #[arg(long, global = true)]
    pub percentile: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub pcref_mode: Option<PcrefArg>,
    #[arg(long, global = true, value_enum)]
    pub z_population: Option<ZPopulation>,
    /// Directory holding data.noun/data.verb and index.noun/index.verb.
    #[arg(long, global = true)]
    pub wordnet: Option<PathBuf>,
    /// Precomputed information content file.
    #[arg(long, global = true)]
    pub ic: Option<PathBuf>,
    /// Corpus to count lemmas in for an information content table.
    #[arg(long, global = true)]
    pub ic_corpus: Option<PathBuf>,
    #[arg(long, global = true)]
    pub ic_smoothing: Option<f64>,
    /// Word vector file (`V D` header).
    #[arg(long, global = true)]
    pub vectors: Option<PathBuf>,
    /// Concreteness/imageability ratings.
    #[arg(long, global = true)]
    pub lexicon: Option<PathBuf>,
    /// Connective list replacing the bundled one.
    #[arg(long, global = true)]
    pub connectives: Option<PathBuf>,
    /// Precomputed sentence embeddings (JSONL).
    #[arg(long, global = true)]
    pub sidecar: Option<PathBuf>,
    /// Normalization statistics to use instead of the scored population.
    #[arg(long, global = true)]
    pub zstats: Option<PathBuf>,
    /// Extra indices to compute (comma separated).
    #[arg(long, global = true, value_delimiter = ',')]
    pub enable: Vec<String>,
    /// Indices to skip even when a formula uses them.
    #[arg(long, global = true, value_delimiter = ',')]
    pub disable: Vec<String>,
    #[arg(long, global = true, value_enum)]
    pub wrdhyp_norm: Option<NormArg>,
    /// Report semantic chunks per sentence instead of the raw count.
    #[arg(long, global = true)]
    pub chunks_per_sentence: bool,
    /// Use Welch's unequal-variance t-test in `bench`.
    #[arg(long, global = true)]
    pub welch: bool,
}

/// Settings read from `--config`. Paths are relative to the file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub wordnet_dir: Option<PathBuf>,
    pub ic_file: Option<PathBuf>,
    pub ic_corpus: Option<PathBuf>,
    pub ic_smoothing: Option<f64>,
    pub vectors_file: Option<PathBuf>,
    pub lexicon_file: Option<PathBuf>,
    pub connectives_file: Option<PathBuf>,
    pub sidecar_file: Option<PathBuf>,
    pub zstats_file: Option<PathBuf>,
    pub formula: Option<String>,
    pub baseline: Option<String>,
    pub buffer_size: Option<usize>,
    pub breakpoint_percentile: Option<f64>,
    pub enable: Vec<IndexKind>,
    pub disable: Vec<IndexKind>,
    pub pcref_mode: Option<PcrefMode>,
    pub wrdhyp_norm_mode: Option<WrdhypNormMode>,
    pub chunks_per_sentence: bool,
    pub format: Option<Format>,
    pub jobs: Option<usize>,
    pub z_population: Option<ZPopulation>,
    pub welch: bool,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let mut cfg: RunConfig = serde_json::from_str(&text)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        for p in [
            &mut cfg.wordnet_dir,
            &mut cfg.ic_file,
            &mut cfg.ic_corpus,
            &mut cfg.vectors_file,
            &mut cfg.lexicon_file,
            &mut cfg.connectives_file,
            &mut cfg.sidecar_file,
            &mut cfg.zstats_file,
        ]
        .into_iter()
        .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        for spec in [&mut cfg.formula, &mut cfg.baseline].into_iter().flatten() {
            let candidate = base.join(&*spec);
            if !PRESET_NAMES.contains(&spec.as_str())
                && Path::new(spec).is_relative()
                && candidate.is_file()
            {
                *spec = candidate.to_string_lossy().into_owned();
            }
        }
        Ok(cfg)
    }
}

/// Fully resolved settings for one run.
#[derive(Debug, Clone)]
pub struct Settings {
    pub wordnet_dir: Option<PathBuf>,
    pub ic_file: Option<PathBuf>,
    pub ic_corpus: Option<PathBuf>,
    pub ic_smoothing: f64,
    pub vectors_file: Option<PathBuf>,
    pub lexicon_file: Option<PathBuf>,
    pub connectives_file: Option<PathBuf>,
    pub sidecar_file: Option<PathBuf>,
    pub zstats_file: Option<PathBuf>,
    pub formula: FormulaConfig,
    pub baseline: Option<FormulaConfig>,
    pub options: ScoringOptions,
    pub format: Format,
    pub jobs: usize,
    pub z_population: ZPopulation,
    pub ttest: TTestKind,
}

fn parse_indices(names: &[String]) -> Result<Vec<IndexKind>> {
    names.iter().map(|n| n.trim().parse()).collect()
}

impl Settings {
    pub fn resolve(args: &GlobalArgs) -> Result<Settings> {
        let cfg = match &args.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        let pick = |a: &Option<PathBuf>, c: &Option<PathBuf>| a.clone().or_else(|| c.clone());

        let formula_spec = args
            .formula
            .clone()
            .or(cfg.formula)
            .unwrap_or_else(|| "scigispy".into());
        let formula = FormulaConfig::resolve(&formula_spec)?;
        let baseline = args
            .baseline
            .clone()
            .or(cfg.baseline)
            .map(|b| FormulaConfig::resolve(&b))
            .transpose()?;

        let mut enabled: BTreeSet<IndexKind> = formula.indices()?.into_iter().collect();
        if let Some(b) = &baseline {
            enabled.extend(b.indices()?);
        }
        enabled.extend(cfg.enable);
        enabled.extend(parse_indices(&args.enable)?);
        for k in cfg.disable.into_iter().chain(parse_indices(&args.disable)?) {
            enabled.remove(&k);
        }

        let defaults = ChunkingParams::default();
        let chunking = ChunkingParams {
            buffer_size: args
                .buffer_size
                .or(cfg.buffer_size)
                .unwrap_or(defaults.buffer_size),
            breakpoint_percentile: args
                .percentile
                .or(cfg.breakpoint_percentile)
                .unwrap_or(defaults.breakpoint_percentile),
        };
        chunking.validate()?;
        let pcref_mode = match args.pcref_mode {
            Some(PcrefArg::Adjacent) => PcrefMode::Adjacent,
            Some(PcrefArg::All) => PcrefMode::AllPairs,
            None => cfg.pcref_mode.unwrap_or_default(),
        };
        let wrdhyp_norm_mode = match args.wrdhyp_norm {
            Some(NormArg::RootScale) => WrdhypNormMode::RootScale,
            Some(NormArg::GroupL1) => WrdhypNormMode::GroupL1,
            None => cfg.wrdhyp_norm_mode.unwrap_or_default(),
        };
        let ic_smoothing = args.ic_smoothing.or(cfg.ic_smoothing).unwrap_or(1.0);

        Ok(Settings {
            wordnet_dir: pick(&args.wordnet, &cfg.wordnet_dir),
            ic_file: pick(&args.ic, &cfg.ic_file),
            ic_corpus: pick(&args.ic_corpus, &cfg.ic_corpus),
            ic_smoothing,
            vectors_file: pick(&args.vectors, &cfg.vectors_file),
            lexicon_file: pick(&args.lexicon, &cfg.lexicon_file),
            connectives_file: pick(&args.connectives, &cfg.connectives_file),
            sidecar_file: pick(&args.sidecar, &cfg.sidecar_file),
            zstats_file: pick(&args.zstats, &cfg.zstats_file),
            formula,
            baseline,
            options: ScoringOptions {
                enabled,
                pcref_mode,
                chunking,
                wrdhyp_norm_mode,
                chunks_per_sentence: args.chunks_per_sentence || cfg.chunks_per_sentence,
            },
            format: args.format.or(cfg.format).unwrap_or_default(),
            jobs: args.jobs.or(cfg.jobs).unwrap_or(0),
            z_population: args.z_population.or(cfg.z_population).unwrap_or_default(),
            ttest: if args.welch || cfg.welch {
                TTestKind::Welch
            } else {
                TTestKind::Student
            },
        })
    }
}
