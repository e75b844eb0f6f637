//! Report assembly and the JSON / CSV encodings.

use crate::args::Format;
use fqcount::{FieldElement, FieldSpec, QSqrt};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub out_of_hypothesis: usize,
}

/// One command's output: rows in instance order, each with its JSON object and
/// its CSV projection under `header`.
pub struct Report {
    pub command: &'static str,
    pub config: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<(Value, Vec<String>)>,
    pub summary: Summary,
    /// Extra summary fields, e.g. the agreement flag of a multi-method run.
    pub summary_extra: Map<String, Value>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, config: Value, header: Vec<&'static str>) -> Self {
        Self {
            command,
            config,
            header,
            rows: Vec::new(),
            summary: Summary::default(),
            summary_extra: Map::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Value, csv: Vec<String>) {
        debug_assert_eq!(csv.len(), self.header.len());
        self.rows.push((row, csv));
    }

    fn summary_json(&self) -> Value {
        let mut s = Map::new();
        s.insert("total".into(), json!(self.summary.total));
        s.insert("pass".into(), json!(self.summary.pass));
        s.insert("fail".into(), json!(self.summary.fail));
        s.insert("out_of_hypothesis".into(), json!(self.summary.out_of_hypothesis));
        s.extend(self.summary_extra.clone());
        Value::Object(s)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut top = Map::new();
                top.insert("schema_version".into(), json!(SCHEMA_VERSION));
                top.insert("command".into(), json!(self.command));
                top.insert("config_echo".into(), self.config.clone());
                top.insert("rows".into(), Value::Array(self.rows.iter().map(|r| r.0.clone()).collect()));
                top.insert("summary".into(), self.summary_json());
                if !self.notes.is_empty() {
                    top.insert("notes".into(), json!(self.notes));
                }
                let mut out = serde_json::to_string_pretty(&Value::Object(top)).expect("JSON values serialize");
                out.push('\n');
                out
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let mut header = self.header.clone();
                header.push("schema_version");
                w.write_record(&header).expect("in-memory write");
                let version = SCHEMA_VERSION.to_string();
                for (_, cells) in &self.rows {
                    w.write_record(cells.iter().chain(std::iter::once(&version))).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("UTF-8 cells")
            }
        }
    }

    /// A one-line digest for the error stream.
    pub fn summary_line(&self) -> String {
        let Summary { total, pass, fail, out_of_hypothesis } = self.summary;
        format!("{}: total={total} pass={pass} fail={fail} out_of_hypothesis={out_of_hypothesis}", self.command)
    }
}

/// Coefficient vector in the power basis.
pub fn element_json(field: &FieldSpec, x: FieldElement) -> Value {
    json!(field.coeffs(x))
}

pub fn elements_json(field: &FieldSpec, xs: &[FieldElement]) -> Value {
    Value::Array(xs.iter().map(|&x| element_json(field, x)).collect())
}

/// Elements separated by `;`, coefficients by `:`.
pub fn elements_csv(field: &FieldSpec, xs: &[FieldElement]) -> String {
    xs.iter()
        .map(|&x| field.coeffs(x).iter().map(u32::to_string).collect::<Vec<_>>().join(":"))
        .collect::<Vec<_>>()
        .join(";")
}

pub fn list_csv<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(";")
}

pub fn rational_json(r: &BigRational) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

pub fn rational_csv(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn qsqrt_json(x: &QSqrt) -> Value {
    json!({
        "a_num": x.a().numer().to_string(),
        "a_den": x.a().denom().to_string(),
        "b_num": x.b().numer().to_string(),
        "b_den": x.b().denom().to_string(),
        "q": x.radicand().to_string(),
    })
}

/// `a` or `a + b*sqrt(q)`, with `a` and `b` as reduced fractions.
pub fn qsqrt_csv(x: &QSqrt) -> String {
    if x.is_rational() {
        return rational_csv(x.a());
    }
    let q: &BigInt = x.radicand();
    format!("{}+{}*sqrt({q})", rational_csv(x.a()), rational_csv(x.b()))
}
