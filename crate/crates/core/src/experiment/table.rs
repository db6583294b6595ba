//! Column tables: a CSV whose first column is `n` and whose other columns are
//! response series, like the bundled `observed_times.csv` fixture of observed Smart
//! Sort mean times (seconds, 100 trials, T1 = T2 = 0.01) for the six default
//! distributions.

use std::io::Read;

use thiserror::Error;

/// The bundled fixture, transcribed as printed (including the 0.149 entry of
/// the exponential column at n = 10000).
pub const OBSERVED_TIMES_CSV: &str = include_str!("../../fixtures/observed_times.csv");

#[derive(Debug, Error)]
pub enum TableError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("row {row}, column `{column}`: cannot parse `{value}`")]
    Value { row: usize, column: String, value: String },
    #[error("no column named `{0}` (available: {1})")]
    NoColumn(String, String),
    #[error("table has no response columns")]
    Empty,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColumnTable {
    pub sizes: Vec<f64>,
    pub columns: Vec<(String, Vec<f64>)>,
}

impl ColumnTable {
    pub fn from_reader<R: Read>(input: R) -> Result<Self, TableError> {
        let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
        let headers: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
        if headers.len() < 2 {
            return Err(TableError::Empty);
        }
        let mut sizes = Vec::new();
        let mut columns: Vec<(String, Vec<f64>)> = headers[1..].iter().map(|h| (h.clone(), Vec::new())).collect();
        for (row, record) in reader.records().enumerate() {
            let record = record?;
            let parse = |i: usize| {
                let value = record.get(i).unwrap_or("");
                value.parse::<f64>().map_err(|_| TableError::Value {
                    row: row + 1,
                    column: headers[i].clone(),
                    value: value.to_string(),
                })
            };
            sizes.push(parse(0)?);
            for (i, (_, col)) in columns.iter_mut().enumerate() {
                col.push(parse(i + 1)?);
            }
        }
        Ok(Self { sizes, columns })
    }

    pub fn observed_times() -> Self {
        Self::from_reader(OBSERVED_TIMES_CSV.as_bytes()).expect("bundled fixture parses")
    }

    pub fn column(&self, name: &str) -> Result<&[f64], TableError> {
        self.columns
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_slice())
            .ok_or_else(|| {
                let names: Vec<&str> = self.columns.iter().map(|(n, _)| n.as_str()).collect();
                TableError::NoColumn(name.to_string(), names.join(", "))
            })
    }
}
