use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::path::Path;
use std::sync::{Arc, OnceLock};

use regex::Regex;
use serde::Serialize;

use super::table::FreqOfFreqTable;
use crate::error::{Error, Result};

const DEFAULT_STOPWORDS: &str = include_str!("../../data/stopwords.txt");
const DEFAULT_CONTRACTIONS: &str = include_str!("../../data/contractions.tsv");

/// Matches headings such as `CHAPTER 12. The Bower in the Arsacides.`
pub const DEFAULT_CHAPTER_PATTERN: &str = r"(?m)^[ \t]*CHAPTER[ \t]+(?P<index>\d+)\.?[ \t]*(?P<title>[^\r\n]*)$";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chapter {
    pub index: u32,
    pub title: String,
    /// Text between this heading and the next, untokenized.
    pub body: String,
}

/// A document split at chapter headings. Text before the first heading, and any
/// earlier occurrence of a repeated heading (a table of contents), goes to
/// `preamble`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitText {
    pub preamble: String,
    pub chapters: Vec<Chapter>,
}

/// Splits `raw` at every match of `pattern`. A capture group named `index` (or the
/// first group) supplies the chapter number and one named `title` the title;
/// without them chapters are numbered in order.
pub fn split_chapters(raw: &str, pattern: &Regex) -> Result<SplitText> {
    let headings: Vec<_> = pattern.captures_iter(raw).collect();
    if headings.is_empty() {
        return Err(Error::PatternMismatch(format!(
            "no chapter headings match `{}`",
            pattern.as_str()
        )));
    }
    let mut preamble = raw[..headings[0].get(0).map_or(0, |m| m.start())].to_string();
    let mut chapters: Vec<Chapter> = Vec::with_capacity(headings.len());
    let mut heading_text: Vec<&str> = Vec::with_capacity(headings.len());
    for (k, caps) in headings.iter().enumerate() {
        let whole = caps.get(0).expect("group 0 always matches");
        let end = headings
            .get(k + 1)
            .and_then(|c| c.get(0))
            .map_or(raw.len(), |m| m.start());
        let index = caps
            .name("index")
            .or_else(|| caps.get(1))
            .and_then(|m| m.as_str().parse::<u32>().ok())
            .unwrap_or(k as u32 + 1);
        let title = caps.name("title").map_or("", |m| m.as_str()).trim().to_string();
        chapters.push(Chapter {
            index,
            title,
            body: raw[whole.end()..end].to_string(),
        });
        heading_text.push(whole.as_str());
    }

    // Keep the last occurrence of each index; earlier ones move to the preamble.
    let mut last_position: HashMap<u32, usize> = HashMap::new();
    for (pos, c) in chapters.iter().enumerate() {
        last_position.insert(c.index, pos);
    }
    let mut kept = Vec::with_capacity(last_position.len());
    for (pos, c) in chapters.into_iter().enumerate() {
        if last_position[&c.index] == pos {
            kept.push(c);
        } else {
            preamble.push_str(heading_text[pos]);
            preamble.push_str(&c.body);
        }
    }
    Ok(SplitText {
        preamble,
        chapters: kept,
    })
}

pub type Lemmatizer = Arc<dyn Fn(&str) -> String + Send + Sync>;

/// Token normalization settings. The lemmatizer defaults to the identity.
#[derive(Clone)]
pub struct NormalizationConfig {
    pub contractions: BTreeMap<String, String>,
    pub stopwords: BTreeSet<String>,
    pub keep_hyphenated: bool,
    pub lemmatizer: Option<Lemmatizer>,
}

impl fmt::Debug for NormalizationConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NormalizationConfig")
            .field("contractions", &self.contractions.len())
            .field("stopwords", &self.stopwords.len())
            .field("keep_hyphenated", &self.keep_hyphenated)
            .field("lemmatizer", &self.lemmatizer.is_some())
            .finish()
    }
}

impl Default for NormalizationConfig {
    fn default() -> Self {
        Self {
            contractions: parse_contractions(DEFAULT_CONTRACTIONS).expect("bundled table is valid"),
            stopwords: parse_stopwords(DEFAULT_STOPWORDS),
            keep_hyphenated: true,
            lemmatizer: None,
        }
    }
}

impl NormalizationConfig {
    /// No contractions, no stopwords, hyphenated words kept.
    pub fn bare() -> Self {
        Self {
            contractions: BTreeMap::new(),
            stopwords: BTreeSet::new(),
            keep_hyphenated: true,
            lemmatizer: None,
        }
    }

    /// Replaces the stopword list with the contents of a one-word-per-line file.
    pub fn with_stopword_file(mut self, path: &Path) -> Result<Self> {
        self.stopwords = parse_stopwords(&std::fs::read_to_string(path)?);
        Ok(self)
    }

    /// Replaces the contraction table with a `contraction<TAB>expansion` file.
    pub fn with_contraction_file(mut self, path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        self.contractions = parse_contractions(&text).map_err(|e| match e {
            Error::Parse { line, message, .. } => Error::Parse {
                path: Some(path.to_path_buf()),
                line,
                message,
            },
            other => other,
        })?;
        Ok(self)
    }

    pub fn with_lemmatizer(mut self, f: impl Fn(&str) -> String + Send + Sync + 'static) -> Self {
        self.lemmatizer = Some(Arc::new(f));
        self
    }
}

fn parse_stopwords(text: &str) -> BTreeSet<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_lowercase)
        .collect()
}

fn parse_contractions(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end();
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((from, to)) = line.split_once('\t') else {
            return Err(Error::Parse {
                path: None,
                line: i as u64 + 1,
                message: "expected `contraction<TAB>expansion`".into(),
            });
        };
        map.insert(fold_apostrophes(&from.trim().to_lowercase()), to.trim().to_lowercase());
    }
    Ok(map)
}

fn fold_apostrophes(s: &str) -> String {
    s.replace(['\u{2019}', '\u{2018}'], "'")
}

fn token_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"'?[\p{L}\p{N}]+(?:['-][\p{L}\p{N}]+)*").expect("static pattern"))
}

/// Lowercases, expands contractions, drops punctuation and stopwords, and applies
/// the lemmatizer. Words joined by single hyphens stay whole when
/// `keep_hyphenated` is set. Apostrophes in words missing from the contraction
/// table are dropped, together with a possessive `'s`.
pub fn normalize(text: &str, cfg: &NormalizationConfig) -> Vec<String> {
    let lowered = fold_apostrophes(&text.to_lowercase());
    let mut out = Vec::new();
    let mut emit = |word: &str| {
        if word.is_empty() || cfg.stopwords.contains(word) {
            return;
        }
        let word = match &cfg.lemmatizer {
            Some(lemma) => lemma(word),
            None => word.to_string(),
        };
        if !word.is_empty() {
            out.push(word);
        }
    };
    for m in token_regex().find_iter(&lowered) {
        let raw = m.as_str();
        let mut pieces: Vec<String> = Vec::new();
        if raw.contains('\'') {
            if let Some(expansion) = cfg.contractions.get(raw) {
                pieces.extend(expansion.split_whitespace().map(str::to_string));
            } else {
                let stem = raw.strip_suffix("'s").unwrap_or(raw);
                pieces.push(stem.replace('\'', ""));
            }
        } else {
            pieces.push(raw.to_string());
        }
        for piece in pieces {
            if cfg.keep_hyphenated {
                emit(&piece);
            } else {
                piece.split('-').for_each(&mut emit);
            }
        }
    }
    out
}

/// Counts each word, then counts how many words share each count.
pub fn freq_of_freq<S: AsRef<str>>(tokens: &[S]) -> Result<FreqOfFreqTable> {
    if tokens.is_empty() {
        return Err(Error::EmptyInput("no tokens to count".into()));
    }
    let mut counts: HashMap<&str, u64> = HashMap::new();
    for t in tokens {
        *counts.entry(t.as_ref()).or_insert(0) += 1;
    }
    let mut fof: BTreeMap<u64, u64> = BTreeMap::new();
    for c in counts.into_values() {
        *fof.entry(c).or_insert(0) += 1;
    }
    FreqOfFreqTable::new(fof)
}
