use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use regex::Regex;
use zipfmix::corpus::{
    analyze_chapters, read_table, tables_from_text, ChapterSummary, FreqOfFreqTable, NormalizationConfig,
    DEFAULT_CHAPTER_PATTERN,
};
use zipfmix::inference::Weighting;

use crate::error::{CliError, CliResult};
use crate::output::{value_name, Context};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WeightingChoice {
    PerWord,
    PerFrequency,
    /// One row per chapter for each convention.
    Both,
}

impl WeightingChoice {
    fn conventions(self) -> Vec<Weighting> {
        match self {
            WeightingChoice::PerWord => vec![Weighting::PerWord],
            WeightingChoice::PerFrequency => vec![Weighting::PerFrequency],
            WeightingChoice::Both => vec![Weighting::PerWord, Weighting::PerFrequency],
        }
    }
}

#[derive(Args)]
pub struct AnalyzeArgs {
    /// Frequency-of-frequencies CSV files, or directories holding them. The
    /// chapter number is taken from the trailing digits of each file name.
    #[arg(long, num_args = 1.., required_unless_present = "text", conflicts_with = "text")]
    input: Vec<PathBuf>,
    /// Plain text to split into chapters and tabulate.
    #[arg(long)]
    text: Option<PathBuf>,
    #[arg(long, default_value = DEFAULT_CHAPTER_PATTERN)]
    chapter_pattern: String,
    /// One stopword per line; replaces the bundled list.
    #[arg(long)]
    stopwords: Option<PathBuf>,
    /// `contraction<TAB>expansion` lines; replaces the bundled table.
    #[arg(long)]
    contractions: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = WeightingChoice::PerWord)]
    weighting: WeightingChoice,
}

type Loaded = Vec<(u32, Result<FreqOfFreqTable, String>)>;

fn chapter_number(path: &Path) -> Option<u32> {
    let stem = path.file_stem()?.to_str()?;
    let digits: String = stem.chars().rev().take_while(char::is_ascii_digit).collect();
    digits.chars().rev().collect::<String>().parse().ok()
}

fn table_files(inputs: &[PathBuf]) -> CliResult<Vec<PathBuf>> {
    let mut files = Vec::new();
    for p in inputs {
        if p.is_dir() {
            let mut found: Vec<PathBuf> = fs::read_dir(p)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|f| f.is_file() && f.extension().is_some_and(|x| x.eq_ignore_ascii_case("csv")))
                .collect();
            found.sort();
            files.extend(found);
        } else {
            files.push(p.clone());
        }
    }
    if files.is_empty() {
        return Err(CliError::Input("no frequency tables found".into()));
    }
    Ok(files)
}

fn load_tables(inputs: &[PathBuf]) -> CliResult<Loaded> {
    Ok(table_files(inputs)?
        .iter()
        .enumerate()
        .map(|(k, f)| {
            let index = chapter_number(f).unwrap_or(k as u32 + 1);
            (index, read_table(f).map_err(|e| e.to_string()))
        })
        .collect())
}

fn load_text(args: &AnalyzeArgs, path: &Path) -> CliResult<Loaded> {
    let raw = fs::read_to_string(path)?;
    let pattern =
        Regex::new(&args.chapter_pattern).map_err(|e| CliError::Input(format!("bad chapter pattern: {e}")))?;
    let mut cfg = NormalizationConfig::default();
    if let Some(p) = &args.stopwords {
        cfg = cfg.with_stopword_file(p)?;
    }
    if let Some(p) = &args.contractions {
        cfg = cfg.with_contraction_file(p)?;
    }
    Ok(tables_from_text(&raw, &pattern, &cfg)?
        .into_iter()
        .map(|(i, t)| (i, t.map_err(|e| e.to_string())))
        .collect())
}

pub fn run(ctx: &Context, args: &AnalyzeArgs) -> CliResult {
    let loaded = match &args.text {
        Some(path) => load_text(args, path)?,
        None => load_tables(&args.input)?,
    };
    let mut failures: Vec<(u32, String)> = Vec::new();
    let mut tables = Vec::new();
    for (index, t) in loaded {
        match t {
            Ok(t) => tables.push((index, t)),
            Err(e) => failures.push((index, e)),
        }
    }

    let per_convention: Vec<_> = args
        .weighting
        .conventions()
        .into_iter()
        .map(|w| analyze_chapters(&tables, w))
        .collect();
    let mut rows: Vec<ChapterSummary> = Vec::new();
    for k in 0..tables.len() {
        for results in &per_convention {
            match &results[k] {
                (_, Ok(s)) => rows.push(s.clone()),
                (i, Err(e)) => failures.push((*i, e.to_string())),
            }
        }
    }
    failures.sort_by_key(|f| f.0);
    failures.dedup();

    ctx.emit("analyze", &[("weighting", value_name(&args.weighting))], &rows)?;
    for (i, e) in &failures {
        eprintln!("chapter {i}: {e}");
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Input(format!(
            "{} chapter(s) could not be analyzed",
            failures.len()
        )))
    }
}
