use std::fmt;

use serde_json::{json, Value};
use sqdual_core::{Error, IndexSet, StanleyDecomposition};

use crate::FormatArg;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Core(Error),
}

impl CliError {
    /// 1 usage, 2 parse or invalid input, 3 theorem-level failure, 4 cap exceeded.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io(_) => 2,
            CliError::Core(e) => match e {
                Error::CapExceeded { .. } => 4,
                Error::TheoremViolation(_) | Error::Internal(_) => 3,
                _ => 2,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Io(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub enum Output {
    /// A JSON document, optionally with a tabular view for CSV.
    Doc { json: Value, table: Option<Table> },
    /// Preformatted text, identical in every format.
    Raw(String),
}

impl Output {
    pub fn doc(json: Value, table: Option<Table>) -> Self {
        Output::Doc { json, table }
    }

    pub fn render(self, format: FormatArg) -> Result<String, CliError> {
        match (self, format) {
            (Output::Raw(s), _) => Ok(s),
            (Output::Doc { json, .. }, FormatArg::Json) => {
                let mut s = serde_json::to_string_pretty(&json).expect("plain data serializes");
                s.push('\n');
                Ok(s)
            }
            (Output::Doc { table: Some(t), .. }, FormatArg::Csv) => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| CliError::Io(format!("csv: {e}"));
                w.write_record(&t.header).map_err(io)?;
                for r in &t.rows {
                    w.write_record(r).map_err(io)?;
                }
                let bytes = w.into_inner().map_err(|e| CliError::Io(format!("csv: {e}")))?;
                Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
            }
            (Output::Doc { table: None, .. }, FormatArg::Csv) => {
                Err(CliError::Usage("this command has no tabular output; use --format json".into()))
            }
        }
    }
}

pub fn set(s: IndexSet) -> Value {
    json!(s.to_vec())
}

/// Sets as `1 3` inside a CSV cell.
pub fn set_cell(s: IndexSet) -> String {
    s.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn decomposition(d: &StanleyDecomposition) -> Value {
    Value::Array(
        d.spaces()
            .iter()
            .map(|s| json!({"bottom": set(s.bottom), "top": set(s.top), "generator": s.generator().to_string()}))
            .collect(),
    )
}

pub fn decomposition_table(d: &StanleyDecomposition) -> Table {
    Table {
        header: vec!["bottom", "top", "dimension"],
        rows: d
            .spaces()
            .iter()
            .map(|s| vec![set_cell(s.bottom), set_cell(s.top), s.dimension().to_string()])
            .collect(),
    }
}
