use std::io::Write;

use serde::{Deserialize, Serialize};

/// How a float column is printed in CSV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Precision {
    /// Fixed number of decimals.
    Decimals(usize),
    /// `digits` significant digits, but never more than `max_decimals` decimals.
    Significant { digits: usize, max_decimals: usize },
    /// Scientific notation with this many mantissa decimals.
    Scientific(usize),
}

impl Precision {
    pub fn format(self, value: f64) -> String {
        if !value.is_finite() {
            return value.to_string();
        }
        let text = match self {
            Precision::Decimals(d) => format!("{value:.d$}"),
            Precision::Significant {
                digits,
                max_decimals,
            } => {
                let magnitude = if value == 0.0 {
                    1
                } else {
                    value.abs().log10().floor() as i64 + 1
                };
                let d = (digits as i64 - magnitude).clamp(0, max_decimals as i64) as usize;
                format!("{value:.d$}")
            }
            Precision::Scientific(d) => format!("{value:.d$e}"),
        };
        strip_negative_zero(text)
    }
}

fn strip_negative_zero(text: String) -> String {
    match text.strip_prefix('-') {
        Some(rest) if rest.chars().all(|c| matches!(c, '0' | '.')) => rest.to_string(),
        _ => text,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    /// `None` for integer or boolean columns.
    pub precision: Option<Precision>,
}

impl Column {
    pub fn int(name: impl Into<String>) -> Self {
        Column {
            name: name.into(),
            precision: None,
        }
    }

    pub fn float(name: impl Into<String>, precision: Precision) -> Self {
        Column {
            name: name.into(),
            precision: Some(precision),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Bool(bool),
    /// Printed as an empty CSV field, `null` in JSON.
    Empty,
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        if v.is_finite() {
            Cell::Float(v)
        } else {
            Cell::Empty
        }
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::from)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

/// One experiment's tabular output.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub experiment: String,
    pub config: serde_json::Value,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Cell>>,
}

/// JSON shape of a [`Report`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonReport {
    pub experiment: String,
    pub config: serde_json::Value,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn new(experiment: &str, config: serde_json::Value, columns: Vec<Column>) -> Self {
        Report {
            experiment: experiment.to_string(),
            config,
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.name == name)
    }

    fn format_cell(column: &Column, cell: &Cell) -> String {
        match cell {
            Cell::Int(v) => v.to_string(),
            Cell::Bool(v) => v.to_string(),
            Cell::Empty => String::new(),
            Cell::Float(v) => match column.precision {
                Some(p) => p.format(*v),
                None => v.to_string(),
            },
        }
    }

    /// Header row plus one record per row, comma-separated, LF line endings.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        writer.write_record(self.columns.iter().map(|c| c.name.as_str()))?;
        for row in &self.rows {
            writer.write_record(
                self.columns
                    .iter()
                    .zip(row)
                    .map(|(c, cell)| Self::format_cell(c, cell)),
            )?;
        }
        writer.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("CSV output is UTF-8")
    }

    pub fn to_json(&self) -> JsonReport {
        JsonReport {
            experiment: self.experiment.clone(),
            config: self.config.clone(),
            columns: self.columns.iter().map(|c| c.name.clone()).collect(),
            rows: self.rows.clone(),
        }
    }

    pub fn to_json_string(&self) -> String {
        let mut text = serde_json::to_string(&self.to_json()).expect("report serializes");
        text.push('\n');
        text
    }
}
