use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use clap::ValueEnum;
use eisk3_core::fmt17;
use serde::Serialize;
use serde_json::{Map, Value};

pub const SCHEMA: u32 = 1;

/// Readings of misprinted constants, with the one that the checks confirm.
pub const TYPO_LEDGER: [&str; 3] = [
    "period integrand uses t^(-1/3)(1-t)^(-2/3)(1-lambda t)^(-2/3), the type (2/3, 2/3; 1) kernel",
    "potential H carries (1 - lambda t)^(-5/3); the (1 - lambda t)^(-5/2) reading fails the potential identity",
    "zeroth-order coefficient of the operator is -4/9; the -9/4 reading fails the potential identity",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// What a subcommand produced: a JSON payload, optionally a CSV table, and
/// whether every check passed.
#[derive(Debug)]
pub struct Outcome {
    pub payload: Map<String, Value>,
    pub csv: Option<String>,
    pub passed: bool,
}

impl Outcome {
    pub fn new(passed: bool) -> Self {
        Self { payload: Map::new(), csv: None, passed }
    }

    pub fn field<T: Serialize>(mut self, key: &str, value: T) -> Self {
        self.payload.insert(key.into(), to_value(&value));
        self
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }
}

pub fn to_value<T: Serialize + ?Sized>(value: &T) -> Value {
    serde_json::to_value(value).unwrap_or(Value::Null)
}

pub fn verdict_str(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "fail"
    }
}

/// The versioned JSON envelope around a payload.
pub fn envelope(command: &str, outcome: &Outcome) -> Map<String, Value> {
    let mut m = outcome.payload.clone();
    m.insert("schema".into(), Value::from(SCHEMA));
    m.insert("command".into(), Value::from(command));
    m.insert("verdict".into(), Value::from(verdict_str(outcome.passed)));
    m
}

pub fn render(command: &str, outcome: &Outcome, format: Format) -> Result<String, String> {
    match format {
        Format::Json => fmt17::to_string_pretty(&envelope(command, outcome)).map_err(|e| e.to_string()),
        Format::Csv => outcome.csv.clone().ok_or_else(|| format!("{command} has no CSV form; use --format json")),
    }
}

pub fn emit(text: &str, output: Option<&Path>) -> Result<(), String> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Builds a CSV table; floats get 17 significant digits.
pub struct Csv(String);

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Self(format!("{}\n", header.join(",")))
    }

    pub fn row(&mut self, cells: &[Cell]) {
        let line: Vec<String> = cells.iter().map(Cell::render).collect();
        let _ = writeln!(self.0, "{}", line.join(","));
    }

    pub fn finish(self) -> String {
        self.0
    }
}

pub enum Cell {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => fmt17::float(*x),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) if s.contains([',', '"']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope_fields() {
        let o = Outcome::new(false).field("x", 0.5);
        let s = render("demo", &o, Format::Json).unwrap();
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["verdict"], "fail");
        assert_eq!(v["command"], "demo");
        assert!(render("demo", &o, Format::Csv).is_err());
    }

    #[test]
    fn csv_quoting() {
        let mut c = Csv::new(&["a", "b"]);
        c.row(&[Cell::Text("(1,1)+(2,1)".into()), Cell::Int(3)]);
        assert_eq!(c.finish(), "a,b\n\"(1,1)+(2,1)\",3\n");
    }
}
