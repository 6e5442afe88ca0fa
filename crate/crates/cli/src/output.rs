//! Tables rendered as CSV or JSON with fixed decimals.

use std::io::Write;

use serde_json::{Map, Value};

use crate::CliError;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Text(String),
    Num(f64, usize),
    /// Scientific notation with the given mantissa digits.
    Sci(f64, usize),
    Int(i64),
    Empty,
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    fn render(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Num(v, d) => fixed(*v, *d),
            Cell::Sci(v, d) => format!("{v:.d$e}"),
            Cell::Int(i) => i.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Num(v, d) => fixed(*v, *d).parse::<f64>().ok().and_then(serde_json::Number::from_f64).map_or(Value::Null, Value::Number),
            Cell::Sci(..) => self.render().parse::<f64>().ok().and_then(serde_json::Number::from_f64).map_or(Value::Null, Value::Number),
            Cell::Int(i) => Value::from(*i),
            Cell::Empty => Value::Null,
        }
    }
}

/// `v` with `decimals` digits; never prints a negative zero.
pub fn fixed(v: f64, decimals: usize) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    let s = format!("{v:.decimals$}");
    match s.strip_prefix('-') {
        Some(rest) if rest.chars().all(|c| c == '0' || c == '.') => rest.to_string(),
        _ => s,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len(), "row width in table {}", self.name);
        self.rows.push(row);
    }
}

/// One or more named tables produced by a command.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub tables: Vec<Table>,
}

impl Report {
    pub fn single(t: Table) -> Self {
        Report { tables: vec![t] }
    }

    pub fn push(&mut self, t: Table) {
        self.tables.push(t);
    }

    /// CSV, one block per table separated by a blank line.
    pub fn write_csv(&self, out: &mut dyn Write) -> Result<(), CliError> {
        for (i, t) in self.tables.iter().enumerate() {
            if i > 0 {
                writeln!(out)?;
            }
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(&mut *out);
            w.write_record(&t.columns)?;
            for r in &t.rows {
                w.write_record(r.iter().map(Cell::render))?;
            }
            w.flush()?;
        }
        Ok(())
    }

    /// `{"table": [{"column": value, ...}, ...]}` with keys sorted.
    pub fn write_json(&self, out: &mut dyn Write) -> Result<(), CliError> {
        let mut root = Map::new();
        for t in &self.tables {
            let rows = t
                .rows
                .iter()
                .map(|r| {
                    let obj: Map<String, Value> = t.columns.iter().cloned().zip(r.iter().map(Cell::json)).collect();
                    Value::Object(obj)
                })
                .collect();
            root.insert(t.name.clone(), Value::Array(rows));
        }
        serde_json::to_writer_pretty(&mut *out, &Value::Object(root))?;
        writeln!(out)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_drops_negative_zero() {
        assert_eq!(fixed(-0.00001, 3), "0.000");
        assert_eq!(fixed(-1.25, 1), "-1.2");
        assert_eq!(fixed(2.5, 0), "2");
    }

    #[test]
    fn csv_blocks_are_separated() {
        let mut a = Table::new("a", &["x", "y"]);
        a.push(vec![Cell::Num(1.0, 2), Cell::text("p,q")]);
        let b = Table::new("b", &["z"]);
        let r = Report { tables: vec![a, b] };
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "x,y\n1.00,\"p,q\"\n\nz\n");
    }

    #[test]
    fn json_keys_sorted_and_numbers_rounded() {
        let mut a = Table::new("t", &["zeta", "alpha"]);
        a.push(vec![Cell::Num(1.23456, 2), Cell::Empty]);
        let mut buf = Vec::new();
        Report::single(a).write_json(&mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.find("alpha").unwrap() < s.find("zeta").unwrap());
        assert!(s.contains("1.23"));
        assert!(s.contains("null"));
    }
}
