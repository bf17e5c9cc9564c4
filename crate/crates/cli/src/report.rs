use std::io::Write;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Default, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// What a subcommand hands back before it is wrapped into a [`Report`].
pub struct Outcome {
    pub verdict: &'static str,
    pub witness: Option<Value>,
    pub certificate: Option<Value>,
    pub detail: Option<String>,
    pub table: Table,
    pub exit: i32,
}

impl Outcome {
    pub fn new(verdict: &'static str, table: Table) -> Self {
        Outcome { verdict, witness: None, certificate: None, detail: None, table, exit: 0 }
    }

    pub fn witness(mut self, w: impl Serialize) -> Self {
        self.witness = Some(to_value(w));
        self
    }

    pub fn certificate(mut self, c: impl Serialize) -> Self {
        self.certificate = Some(to_value(c));
        self
    }

    pub fn exit(mut self, code: i32) -> Self {
        self.exit = code;
        self
    }
}

pub fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("report values serialize")
}

#[derive(Debug, Serialize)]
pub struct Timings {
    pub elapsed_ms: u128,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub command: String,
    pub inputs: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Value>,
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub table: Table,
    pub timings: Timings,
}

impl Report {
    pub fn write_json(&self, out: &mut impl Write) -> std::io::Result<()> {
        serde_json::to_writer_pretty(&mut *out, self)?;
        writeln!(out)
    }

    pub fn write_csv(&self, out: &mut impl Write) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.table.columns)?;
        for row in &self.table.rows {
            w.write_record(row)?;
        }
        w.flush()
    }
}
