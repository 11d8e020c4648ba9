use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// 17 significant digits, round-trip exact for `f64`.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Rectangular table written as UTF-8 CSV with LF line endings.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    /// Appends a row of pre-formatted cells. Panics on width mismatch.
    pub fn push(&mut self, cells: Vec<String>) {
        assert_eq!(cells.len(), self.header.len(), "ragged CSV row");
        self.rows.push(cells);
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let to_err = |e: csv::Error| Error::Config(format!("csv encoding: {e}"));
        w.write_record(&self.header).map_err(to_err)?;
        for row in &self.rows {
            w.write_record(row).map_err(to_err)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::Config(format!("csv encoding: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_csv_string()?).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}

/// Builds a row from integers and floats.
#[macro_export]
macro_rules! csv_row {
    ($($cell:expr),* $(,)?) => {
        vec![$($crate::cli::CsvCell::cell(&$cell)),*]
    };
}

pub trait CsvCell {
    fn cell(&self) -> String;
}

impl CsvCell for f64 {
    fn cell(&self) -> String {
        format_float(*self)
    }
}

impl CsvCell for usize {
    fn cell(&self) -> String {
        self.to_string()
    }
}

impl CsvCell for bool {
    fn cell(&self) -> String {
        self.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_round_trips() {
        for v in [0.1, 1.0 / 3.0, std::f64::consts::PI * 1e-9, -2.5e300, 0.0] {
            let s = format_float(v);
            assert_eq!(s.parse::<f64>().unwrap(), v);
        }
        assert_eq!(format_float(0.5), "5.0000000000000000e-1");
    }

    #[test]
    fn csv_layout() {
        let mut t = CsvTable::new(&["n", "value"]);
        t.push(crate::csv_row![1usize, 0.5]);
        t.push(crate::csv_row![2usize, 0.25]);
        assert_eq!(
            t.to_csv_string().unwrap(),
            "n,value\n1,5.0000000000000000e-1\n2,2.5000000000000000e-1\n"
        );
    }

    #[test]
    #[should_panic(expected = "ragged")]
    fn ragged_row_panics() {
        CsvTable::new(&["a", "b"]).push(vec!["1".into()]);
    }
}
