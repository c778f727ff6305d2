use std::fmt::Write;
use std::path::Path;

use conserva_core::claims::{Status, VerificationReport};
use conserva_core::{Algebra, BilinearMap, RatMatrix, Rational};
use serde_json::{json, Value};

pub enum Solution {
    Maps(Vec<RatMatrix>),
    Bilinear(Vec<BilinearMap>),
}

impl Solution {
    fn len(&self) -> usize {
        match self {
            Solution::Maps(v) => v.len(),
            Solution::Bilinear(v) => v.len(),
        }
    }
}

/// Multiplication table with column widths fitted to the widest cell.
pub fn table(a: &Algebra) -> String {
    let m = a.dim();
    let labels = a.basis_labels();
    let mut cells = vec![vec![String::new(); m + 1]; m + 1];
    cells[0][0] = "·".to_string();
    for i in 0..m {
        cells[0][i + 1] = labels[i].clone();
        cells[i + 1][0] = labels[i].clone();
        for j in 0..m {
            cells[i + 1][j + 1] = a.format_element(a.basis_product(i, j));
        }
    }
    let widths: Vec<usize> = (0..=m)
        .map(|c| cells.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = format!("{} (dim {})\n", a.name(), m);
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", line.join(" | ").trim_end());
    }
    out
}

fn heading(a: &Algebra, kind: &str, delta: Option<&Rational>) -> String {
    match delta {
        Some(d) => format!("{kind} of {} (delta = {d})", a.name()),
        None => format!("{kind} of {}", a.name()),
    }
}

pub fn solution_text(a: &Algebra, kind: &str, delta: Option<&Rational>, s: &Solution) -> String {
    let labels = a.basis_labels();
    let mut out = heading(a, kind, delta);
    let _ = write!(out, "\ndimension: {}\n", s.len());
    match s {
        Solution::Maps(maps) => {
            for (idx, d) in maps.iter().enumerate() {
                let _ = writeln!(out, "[{}]", idx + 1);
                for (j, label) in labels.iter().enumerate() {
                    let image = d.column(j);
                    let _ = writeln!(out, "  {label} -> {}", a.format_element(&image));
                }
            }
        }
        Solution::Bilinear(maps) => {
            let m = a.dim();
            for (idx, t) in maps.iter().enumerate() {
                let _ = writeln!(out, "[{}]", idx + 1);
                for i in 0..m {
                    for j in 0..m {
                        let v = t.basis_product(i, j);
                        if v.iter().any(|c| !c.is_zero()) {
                            let _ = writeln!(
                                out,
                                "  ({}, {}) -> {}",
                                labels[i],
                                labels[j],
                                a.format_element(v)
                            );
                        }
                    }
                }
            }
        }
    }
    out
}

fn matrix_json(d: &RatMatrix) -> Value {
    Value::Array(
        (0..d.rows())
            .map(|r| Value::Array(d.row(r).iter().map(|c| json!(c.to_string())).collect()))
            .collect(),
    )
}

fn triples_json(t: &BilinearMap) -> Value {
    let m = t.dim();
    let mut out = Vec::new();
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                let c = t.get(i, j, k);
                if !c.is_zero() {
                    out.push(json!([i + 1, j + 1, k + 1, c.to_string()]));
                }
            }
        }
    }
    Value::Array(out)
}

/// Linear maps are matrices whose column `j` is the image of basis vector `j`;
/// bilinear maps use the structure-triple encoding of algebra documents.
pub fn solution_json(a: &Algebra, kind: &str, delta: Option<&Rational>, s: &Solution) -> String {
    let basis: Vec<Value> = match s {
        Solution::Maps(maps) => maps.iter().map(matrix_json).collect(),
        Solution::Bilinear(maps) => maps.iter().map(triples_json).collect(),
    };
    let doc = json!({
        "kind": kind,
        "algebra": a.name(),
        "delta": delta.map(|d| d.to_string()),
        "dimension": s.len(),
        "basis": basis,
    });
    pretty(&doc)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serialises");
    s.push('\n');
    s
}

pub struct ConstructReport<'a> {
    pub n: usize,
    pub e: &'a [Rational],
    pub dim: usize,
    pub symmetric_dim: usize,
    pub symmetric_closed: bool,
    pub trace_zero_dim: usize,
    pub trace_zero_closed: bool,
    pub written: Option<&'a Path>,
}

impl ConstructReport<'_> {
    fn e_csv(&self) -> String {
        self.e.iter().map(Rational::to_string).collect::<Vec<_>>().join(",")
    }

    pub fn text(&self) -> String {
        let mut out = format!("W({}) with e = ({})\n", self.n, self.e_csv());
        let _ = writeln!(out, "dimension: {}", self.dim);
        let _ = writeln!(
            out,
            "symmetric subspace: dim {}, closed: {}",
            self.symmetric_dim, self.symmetric_closed
        );
        let _ = writeln!(
            out,
            "trace-zero subspace: dim {}, closed: {}",
            self.trace_zero_dim, self.trace_zero_closed
        );
        if let Some(path) = self.written {
            let _ = writeln!(out, "wrote {}", path.display());
        }
        out
    }

    pub fn json(&self, algebra: &Algebra) -> String {
        let table: Value = serde_json::from_str(&algebra.to_json()).expect("algebra document is JSON");
        let doc = json!({
            "n": self.n,
            "e": self.e.iter().map(Rational::to_string).collect::<Vec<_>>(),
            "dim": self.dim,
            "symmetric": { "dim": self.symmetric_dim, "closed": self.symmetric_closed },
            "trace_zero": { "dim": self.trace_zero_dim, "closed": self.trace_zero_closed },
            "algebra": table,
        });
        pretty(&doc)
    }
}

pub fn report_text(report: &VerificationReport) -> String {
    let mut out = String::new();
    for c in &report.claims {
        let _ = writeln!(out, "{:<16} {}", c.status.to_string(), c.id);
        let _ = writeln!(out, "    expected: {}", c.expected);
        let _ = writeln!(out, "    computed: {}", c.computed);
    }
    let _ = writeln!(
        out,
        "{} pass, {} fail, {} discrepancy-flag",
        report.count(Status::Pass),
        report.count(Status::Fail),
        report.count(Status::DiscrepancyFlag)
    );
    out
}
