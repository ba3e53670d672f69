//! JSON, CSV and aligned-table renderings. Exact values go out as numerator/denominator
//! strings with an "exact" flag; approximate values as doubles with "exact": false.

use crate::discrepancy::Discrepancy;
use crate::exactmath::{ComplexValue, Rational, Surd};
use num_traits::Signed;
use serde_json::{json, Value};

pub fn rational(x: &Rational) -> Value {
    json!({"exact": true, "num": x.numer().to_string(), "den": x.denom().to_string()})
}

fn unsigned_zero(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

pub fn approx(x: f64) -> Value {
    let x = unsigned_zero(x);
    json!({"exact": false, "value": x})
}

pub fn surd(x: &Surd) -> Value {
    if x.is_rational() {
        return rational(&x.a);
    }
    json!({
        "exact": true,
        "a": {"num": x.a.numer().to_string(), "den": x.a.denom().to_string()},
        "b": {"num": x.b.numer().to_string(), "den": x.b.denom().to_string()},
        "d": x.d.to_string(),
    })
}

pub fn complex(z: &ComplexValue) -> Value {
    match z {
        ComplexValue::Exact(q) => json!({"exact": true, "re": rational(&q.re), "im": rational(&q.im)}),
        ComplexValue::Approx(c) => json!({"exact": false, "re": approx(c.re), "im": approx(c.im)}),
    }
}

pub fn discrepancies(module: &str, items: &[Discrepancy]) -> Vec<Value> {
    items
        .iter()
        .map(|d| json!({"module": module, "location": d.location, "paper": d.paper, "derived": d.derived}))
        .collect()
}

/// Plain-text rendering of an exact or approximate scalar for CSV and table cells.
pub fn cell_rational(x: &Rational) -> String {
    crate::exactmath::format_rational(x)
}

pub fn cell_f64(x: f64) -> String {
    format!("{:.12e}", unsigned_zero(x))
}

pub fn cell_complex(z: &ComplexValue) -> String {
    match z {
        ComplexValue::Exact(q) if q.is_real() => cell_rational(&q.re),
        ComplexValue::Exact(q) => format!("{}{}{}i", cell_rational(&q.re), if q.im.is_negative() { "" } else { "+" }, cell_rational(&q.im)),
        ComplexValue::Approx(c) => format!("{}{:+.12e}i", cell_f64(c.re), unsigned_zero(c.im)),
    }
}

pub fn cell_surd(x: &Surd) -> String {
    if x.is_rational() {
        cell_rational(&x.a)
    } else {
        format!("{} + {}*sqrt({})", cell_rational(&x.a), cell_rational(&x.b), x.d)
    }
}

/// Rows with a fixed header, rendered either as CSV or as an aligned table.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8 cells")
    }

    pub fn to_text(&self) -> String {
        let widths: Vec<usize> = (0..self.header.len())
            .map(|c| self.rows.iter().map(|r| r[c].len()).chain([self.header[c].len()]).max().unwrap_or(0))
            .collect();
        let line = |cells: &[String]| {
            let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            parts.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(&self.header);
        out += &(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  ") + "\n");
        for row in &self.rows {
            out += &line(row);
        }
        out
    }
}
