//! Structured record of places where a printed formula and the value re-derived from the
//! construction disagree. Findings are data, never failures.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub location: String,
    pub paper: String,
    pub derived: String,
}

impl Discrepancy {
    pub fn new(location: impl Into<String>, paper: impl Into<String>, derived: impl Into<String>) -> Self {
        Discrepancy { location: location.into(), paper: paper.into(), derived: derived.into() }
    }
}

/// Pushes a finding only when the two renderings differ.
pub fn compare(
    out: &mut Vec<Discrepancy>,
    location: &str,
    paper: impl Into<String>,
    derived: impl Into<String>,
) {
    let (paper, derived) = (paper.into(), derived.into());
    if paper != derived {
        out.push(Discrepancy::new(location, paper, derived));
    }
}

/// Numeric variant: records when |paper − derived| > tol·(1 + |derived|).
pub fn compare_f64(out: &mut Vec<Discrepancy>, location: &str, paper: f64, derived: f64, tol: f64) {
    let same = (paper - derived).abs() <= tol * (1.0 + derived.abs())
        || (paper.is_nan() && derived.is_nan());
    if !same {
        out.push(Discrepancy::new(location, format!("{paper:.12e}"), format!("{derived:.12e}")));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_values_are_not_recorded() {
        let mut out = Vec::new();
        compare(&mut out, "x", "1/2", "1/2");
        compare_f64(&mut out, "y", 1.0, 1.0 + 1e-15, 1e-12);
        assert!(out.is_empty());
        compare(&mut out, "x", "1/2", "-1/2");
        compare_f64(&mut out, "y", 1.0, 2.0, 1e-12);
        assert_eq!(out.len(), 2);
        assert_eq!(out[0].location, "x");
    }
}
