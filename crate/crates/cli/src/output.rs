use serde_json::Value;

use crate::{CliError, Format};

/// A computed result: its JSON form and, where it is tabular, a CSV form.
#[derive(Debug, Clone)]
pub struct Artifact {
    pub json: Value,
    pub table: Option<(Vec<String>, Vec<Vec<String>>)>,
    /// Set when the artifact is emitted but the run did not succeed.
    pub failure: Option<String>,
}

impl Artifact {
    pub fn new<T: serde::Serialize>(value: &T) -> Result<Self, CliError> {
        let json = serde_json::to_value(value).map_err(|e| CliError::Numerical(e.to_string()))?;
        if let Some(path) = first_null(&json, String::new()) {
            return Err(CliError::Numerical(format!("non-finite value at {path}")));
        }
        Ok(Self { json, table: None, failure: None })
    }

    pub fn with_table(mut self, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.table = Some((header.iter().map(|s| s.to_string()).collect(), rows));
        self
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).map_err(|e| CliError::Numerical(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let (header, rows) =
                    self.table.as_ref().ok_or_else(|| CliError::Validation("this command has no CSV form".into()))?;
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| CliError::Io(e.to_string());
                w.write_record(header).map_err(io)?;
                for r in rows {
                    w.write_record(r).map_err(io)?;
                }
                let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
            }
        }
    }
}

/// serde_json serializes NaN and infinities as null.
fn first_null(v: &Value, path: String) -> Option<String> {
    match v {
        Value::Null => Some(if path.is_empty() { "/".into() } else { path }),
        Value::Array(xs) => xs.iter().enumerate().find_map(|(i, x)| first_null(x, format!("{path}/{i}"))),
        Value::Object(m) => m.iter().find_map(|(k, x)| first_null(x, format!("{path}/{k}"))),
        _ => None,
    }
}

pub fn num(x: f64) -> String {
    x.to_string()
}

pub fn nums(xs: &[f64]) -> Vec<String> {
    xs.iter().map(|x| num(*x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nan_is_rejected() {
        let err = Artifact::new(&serde_json::json!({"a": [1.0, f64::NAN]})).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(err.to_string().contains("/a/1"));
    }

    #[test]
    fn csv_quotes_nothing_for_plain_numbers() {
        let a = Artifact::new(&1).unwrap().with_table(&["x", "y"], vec![nums(&[0.5, -1e-20])]);
        assert_eq!(a.render(Format::Csv).unwrap(), "x,y\n0.5,-0.00000000000000000001\n");
    }
}
