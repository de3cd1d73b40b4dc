//! Text preparation, frequency-of-frequencies tables and per-chapter analysis.

mod analyze;
mod table;
mod text;

pub use analyze::{
    analyze_chapter, analyze_chapter_with, analyze_chapters, anchor_discrepancy, tables_from_text, write_summary_csv,
    ChapterSummary, PUBLISHED_ANCHORS,
};
pub use table::{read_table, write_table, FreqOfFreqTable, FreqRow, TABLE_HEADER};
pub use text::{
    freq_of_freq, normalize, split_chapters, Chapter, Lemmatizer, NormalizationConfig, SplitText,
    DEFAULT_CHAPTER_PATTERN,
};
