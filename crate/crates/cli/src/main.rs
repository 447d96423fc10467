mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{GlobalArgs, Settings};

/// Gist inference scoring for text simplification.
#[derive(Debug, Parser)]
#[command(name = "scigis", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Score every document of a corpus.
    Score {
        /// Directory of .txt files, a .conllu file, or a single text file.
        corpus: PathBuf,
        /// Print `doc_id sent windowed_text` rows instead of scoring.
        #[arg(long)]
        dump_sentences: bool,
    },
    /// Compare abstracts with their plain-language summaries.
    Pairs {
        /// JSONL with `pair_id`, `abs_text` and `pls_text`.
        pairs: PathBuf,
    },
    /// Two-sample t-test on the scores of two corpora.
    Bench { group1: PathBuf, group2: PathBuf },
    /// Correlate scores with FKGL and ARI.
    Correlate { corpus: PathBuf },
}

fn run(cli: &Cli) -> scigis::Result<String> {
    let s = Settings::resolve(&cli.global)?;
    match &cli.command {
        Command::Score {
            corpus,
            dump_sentences: true,
        } => commands::dump_sentences(&s, corpus),
        Command::Score { corpus, .. } => commands::score(&s, corpus),
        Command::Pairs { pairs } => commands::pairs(&s, pairs),
        Command::Bench { group1, group2 } => commands::bench(&s, group1, group2),
        Command::Correlate { corpus } => commands::correlate(&s, corpus),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_config() { 2 } else { 1 })
        }
    }
}
