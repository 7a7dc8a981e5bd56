//! Versioned result record and its CSV / JSON writers.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;
use supint::audit::PropertyOutcome;

use crate::config::{ExperimentConfig, Format, SCHEMA_VERSION};
use crate::error::CliError;

/// One cell of the row payload.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Num(Option<f64>),
    Text(String),
    Flag(bool),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v.is_finite().then_some(v))
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        Cell::Num(v.filter(|x| x.is_finite()))
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Flag(v)
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(Some(v)) => format!("{v:e}"),
            Cell::Num(None) => String::new(),
            Cell::Text(s) => s.clone(),
            Cell::Flag(b) => b.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Property {
    pub name: String,
    pub statistic: Option<f64>,
    pub threshold: f64,
    pub passed: bool,
    pub evaluated: usize,
    pub skipped: usize,
}

impl Property {
    pub fn at_most(name: &str, worst: Option<f64>, threshold: f64, evaluated: usize, skipped: usize) -> Self {
        let passed = evaluated > 0 && worst.is_some_and(|w| w <= threshold);
        Property {
            name: name.into(),
            statistic: worst.filter(|w| w.is_finite()),
            threshold,
            passed,
            evaluated,
            skipped,
        }
    }
}

impl From<&PropertyOutcome> for Property {
    fn from(p: &PropertyOutcome) -> Self {
        Property {
            name: p.name.clone(),
            statistic: p.statistic.is_finite().then_some(p.statistic),
            threshold: p.threshold,
            passed: p.passed,
            evaluated: p.evaluated,
            skipped: p.skipped,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Summary {
    pub passed: bool,
    pub properties: Vec<Property>,
    pub metrics: BTreeMap<String, Value>,
}

impl Summary {
    pub fn new(properties: Vec<Property>) -> Self {
        Summary { passed: properties.iter().all(|p| p.passed), properties, metrics: BTreeMap::new() }
    }

    pub fn metric(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.metrics.insert(key.into(), value.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRecord {
    pub schema_version: u32,
    pub run: String,
    pub config_echo: ExperimentConfig,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Summary,
}

impl ResultRecord {
    pub fn new(config: &ExperimentConfig, columns: &[&str], rows: Vec<Vec<Cell>>, summary: Summary) -> Self {
        ResultRecord {
            schema_version: SCHEMA_VERSION,
            run: config.kind().into(),
            config_echo: config.clone(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows,
            summary,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("record serializes");
        s.push('\n');
        s
    }

    /// Record without its rows, for the CSV sidecar.
    pub fn summary_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("record serializes");
        if let Value::Object(map) = &mut v {
            map.remove("rows");
        }
        let mut s = serde_json::to_string_pretty(&v).expect("record serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let err = |e: csv::Error| CliError::Output(e.to_string());
        w.write_record(&self.columns).map_err(err)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv)).map_err(err)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
    }

    /// JSON: the whole record at `path`. CSV: rows at `path` plus
    /// `<path>.summary.json`. Without a path, the record goes to stdout.
    pub fn write(&self, path: Option<&Path>, format: Format) -> Result<Vec<PathBuf>, CliError> {
        let io = |p: &Path, e: std::io::Error| CliError::Output(format!("{}: {e}", p.display()));
        match (path, format) {
            (None, Format::Json) => {
                std::io::stdout().write_all(self.to_json().as_bytes()).map_err(|e| CliError::Output(e.to_string()))?;
                Ok(vec![])
            }
            (None, Format::Csv) => {
                std::io::stdout().write_all(self.to_csv()?.as_bytes()).map_err(|e| CliError::Output(e.to_string()))?;
                Ok(vec![])
            }
            (Some(p), Format::Json) => {
                std::fs::write(p, self.to_json()).map_err(|e| io(p, e))?;
                Ok(vec![p.to_path_buf()])
            }
            (Some(p), Format::Csv) => {
                std::fs::write(p, self.to_csv()?).map_err(|e| io(p, e))?;
                let side = sidecar(p);
                std::fs::write(&side, self.summary_json()).map_err(|e| io(&side, e))?;
                Ok(vec![p.to_path_buf(), side])
            }
        }
    }
}

pub fn sidecar(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".summary.json");
    PathBuf::from(s)
}
