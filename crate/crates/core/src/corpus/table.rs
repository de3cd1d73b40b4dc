use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const TABLE_HEADER: [&str; 2] = ["value", "freq"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreqRow {
    /// How many times a word occurs (`i`).
    pub value: u64,
    /// Number of distinct words occurring exactly `value` times (`n_i`).
    pub freq: u64,
}

/// Frequency-of-frequencies table: strictly increasing values, positive counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreqOfFreqTable {
    rows: Vec<FreqRow>,
}

impl FreqOfFreqTable {
    pub fn new(rows: impl IntoIterator<Item = (u64, u64)>) -> Result<Self> {
        let rows: Vec<FreqRow> = rows.into_iter().map(|(value, freq)| FreqRow { value, freq }).collect();
        Self::validate(&rows)?;
        Ok(Self { rows })
    }

    fn validate(rows: &[FreqRow]) -> Result<()> {
        if rows.is_empty() {
            return Err(Error::InvariantViolation("table has no rows".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.value == 0 {
                return Err(Error::InvariantViolation(format!(
                    "row {}: frequency values start at 1",
                    i + 1
                )));
            }
            if row.freq == 0 {
                return Err(Error::InvariantViolation(format!(
                    "row {} (value {}): word counts must be >= 1",
                    i + 1,
                    row.value
                )));
            }
            if i > 0 && rows[i - 1].value >= row.value {
                let rule = if rows[i - 1].value == row.value {
                    "duplicate value"
                } else {
                    "values must be strictly increasing"
                };
                return Err(Error::InvariantViolation(format!(
                    "row {} (value {}): {rule}",
                    i + 1,
                    row.value
                )));
            }
        }
        Ok(())
    }

    /// Tabulates raw observations: each distinct observed value becomes a row
    /// counting how often it was seen.
    pub fn from_observations(values: &[u64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyInput("no observations to tabulate".into()));
        }
        let mut counts = std::collections::BTreeMap::new();
        for &v in values {
            *counts.entry(v).or_insert(0u64) += 1;
        }
        Self::new(counts)
    }

    pub fn rows(&self) -> &[FreqRow] {
        &self.rows
    }

    /// Number of distinct words, `sum n_i`.
    pub fn total_words(&self) -> u64 {
        self.rows.iter().map(|r| r.freq).sum()
    }

    /// Number of tokens, `sum i n_i`.
    pub fn total_tokens(&self) -> u64 {
        self.rows.iter().map(|r| r.value * r.freq).sum()
    }

    pub fn min_value(&self) -> u64 {
        self.rows[0].value
    }

    /// The largest frequency `m`.
    pub fn max_value(&self) -> u64 {
        self.rows[self.rows.len() - 1].value
    }

    /// Number of distinct nonzero frequencies (table rows).
    pub fn n_distinct(&self) -> usize {
        self.rows.len()
    }

    /// Parses the `value,freq` CSV format. `source` only labels error messages.
    pub fn from_csv_reader<R: Read>(reader: R, source: Option<&Path>) -> Result<Self> {
        let parse_err = |line: u64, message: String| Error::Parse {
            path: source.map(Path::to_path_buf),
            line,
            message,
        };

        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);

        let header = rdr.headers().map_err(|e| parse_err(1, e.to_string()))?.clone();
        if header.iter().collect::<Vec<_>>() != TABLE_HEADER {
            return Err(parse_err(
                1,
                format!(
                    "expected header `value,freq`, found `{}`",
                    header.iter().collect::<Vec<_>>().join(",")
                ),
            ));
        }

        let mut rows = Vec::new();
        for record in rdr.records() {
            let record = record.map_err(|e| {
                let line = e.position().map(|p| p.line()).unwrap_or(0);
                parse_err(line, e.to_string())
            })?;
            let line = record.position().map(|p| p.line()).unwrap_or(0);
            let field = |idx: usize, name: &str| -> Result<u64> {
                let raw = record.get(idx).unwrap_or("");
                raw.parse::<u64>()
                    .map_err(|_| parse_err(line, format!("{name} `{raw}` is not a nonnegative integer")))
            };
            rows.push((field(0, "value")?, field(1, "freq")?));
        }
        Self::new(rows)
    }

    pub fn from_csv_str(text: &str) -> Result<Self> {
        Self::from_csv_reader(text.as_bytes(), None)
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("value,freq\n");
        for r in &self.rows {
            out.push_str(&format!("{},{}\n", r.value, r.freq));
        }
        out
    }
}

pub fn read_table(path: impl AsRef<Path>) -> Result<FreqOfFreqTable> {
    let path = path.as_ref();
    let file = File::open(path)?;
    FreqOfFreqTable::from_csv_reader(file, Some(path))
}

pub fn write_table(table: &FreqOfFreqTable, path: impl AsRef<Path>) -> Result<()> {
    let mut file = File::create(path)?;
    file.write_all(table.to_csv_string().as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_quantities() {
        let t = FreqOfFreqTable::new([(1, 5), (2, 3), (7, 1)]).unwrap();
        assert_eq!(t.total_words(), 9);
        assert_eq!(t.total_tokens(), 5 + 6 + 7);
        assert_eq!(t.max_value(), 7);
        assert_eq!(t.min_value(), 1);
        assert_eq!(t.n_distinct(), 3);
    }

    #[test]
    fn invariants() {
        assert!(matches!(FreqOfFreqTable::new([]), Err(Error::InvariantViolation(_))));
        assert!(matches!(
            FreqOfFreqTable::new([(0, 1)]),
            Err(Error::InvariantViolation(_))
        ));
        assert!(matches!(
            FreqOfFreqTable::new([(1, 0)]),
            Err(Error::InvariantViolation(_))
        ));
        let dup = FreqOfFreqTable::new([(1, 2), (1, 3)]).unwrap_err();
        assert!(dup.to_string().contains("duplicate value"), "{dup}");
        let order = FreqOfFreqTable::new([(3, 2), (1, 3)]).unwrap_err();
        assert!(order.to_string().contains("strictly increasing"));
    }

    #[test]
    fn malformed_row_reports_its_line() {
        let err = FreqOfFreqTable::from_csv_str("value,freq\n1,4\nx,3\n").unwrap_err();
        match err {
            Error::Parse { line, message, .. } => {
                assert_eq!(line, 3);
                assert!(message.contains("`x`"));
            }
            other => panic!("unexpected {other:?}"),
        }
        let err = FreqOfFreqTable::from_csv_str("value,freq\n1,4,9\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
        let err = FreqOfFreqTable::from_csv_str("v,f\n1,4\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn duplicate_rows_in_file() {
        let err = FreqOfFreqTable::from_csv_str("value,freq\n1,4\n1,3\n").unwrap_err();
        assert!(matches!(err, Error::InvariantViolation(_)));
    }

    #[test]
    fn csv_round_trip() {
        let t = FreqOfFreqTable::new([(1, 769), (2, 163), (36, 1)]).unwrap();
        let back = FreqOfFreqTable::from_csv_str(&t.to_csv_string()).unwrap();
        assert_eq!(t, back);
    }
}
