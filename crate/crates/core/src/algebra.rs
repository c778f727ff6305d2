//! Finite-dimensional algebras given by structure constants, plus the JSON
//! interchange format and the three built-in tables.
//!
//! JSON layout (indices 1-based, rationals as `"p/q"` or `"p"` strings,
//! unlisted triples are zero):
//!
//! ```json
//! { "name": "S2", "dim": 4, "basis": ["z1", "z2", "z3", "z4"],
//!   "structure": [[1, 1, 1, "-1"], [1, 2, 2, "1"]] }
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::bilinear::BilinearMap;
use crate::exactnum::{ExactError, RatMatrix, Rational};

/// Identifiers of the built-in tables, in canonical order.
pub const BUILTIN_NAMES: [&str; 3] = ["W2-conservative", "W2-commutative", "S2"];

const W2_CONSERVATIVE_JSON: &str = include_str!("../data/W2-conservative.json");
const W2_COMMUTATIVE_JSON: &str = include_str!("../data/W2-commutative.json");
const S2_JSON: &str = include_str!("../data/S2.json");

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("unknown algebra `{0}` (built-ins: W2-conservative, W2-commutative, S2)")]
    UnknownAlgebra(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("invalid rational `{value}` in structure entry {entry}: {reason}")]
    BadRational {
        entry: usize,
        value: String,
        reason: String,
    },
    #[error("dimension inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Dimension(#[from] ExactError),
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// A finite-dimensional algebra over ℚ: `eᵢ·eⱼ = Σₖ c[i][j][k] eₖ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    name: String,
    basis: Vec<String>,
    structure: BilinearMap,
}

impl Algebra {
    pub fn new(
        name: impl Into<String>,
        basis: Vec<String>,
        structure: BilinearMap,
    ) -> Result<Self, AlgebraError> {
        if basis.len() != structure.dim() {
            return Err(AlgebraError::Inconsistent(format!(
                "{} basis labels for a structure tensor of dimension {}",
                basis.len(),
                structure.dim()
            )));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = basis.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(AlgebraError::Inconsistent(format!(
                "duplicate basis label `{dup}`"
            )));
        }
        Ok(Algebra {
            name: name.into(),
            basis,
            structure,
        })
    }

    /// Algebra with default labels `e1..em`.
    pub fn with_default_labels(name: impl Into<String>, structure: BilinearMap) -> Self {
        let basis = (1..=structure.dim()).map(|i| format!("e{i}")).collect();
        Algebra::new(name, basis, structure).expect("default labels are distinct")
    }

    /// The algebra of dimension `m` with every product zero.
    pub fn zero_product(m: usize) -> Self {
        Algebra::with_default_labels(format!("zero-{m}"), BilinearMap::zero(m))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.structure.dim()
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis
    }

    pub fn structure(&self) -> &BilinearMap {
        &self.structure
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        unit(self.dim(), i)
    }

    /// Product of two elements, by bilinear extension of the structure constants.
    pub fn multiply(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>, AlgebraError> {
        Ok(self.structure.apply(x, y)?)
    }

    /// Coefficients of `eᵢ·eⱼ`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Rational] {
        self.structure.basis_product(i, j)
    }

    /// Matrix of `y ↦ x·y`; column `j` is `x·eⱼ`.
    pub fn left_mul_matrix(&self, x: &[Rational]) -> Result<RatMatrix, AlgebraError> {
        Ok(self.structure.left_operator(x)?)
    }

    /// Matrix of `y ↦ y·x`.
    pub fn right_mul_matrix(&self, x: &[Rational]) -> Result<RatMatrix, AlgebraError> {
        Ok(self.structure.swapped().left_operator(x)?)
    }

    pub fn is_commutative(&self) -> bool {
        self.structure.is_symmetric()
    }

    /// Copy of the algebra with one table cell replaced.
    pub fn with_cell(&self, i: usize, j: usize, value: &[Rational]) -> Result<Self, AlgebraError> {
        if value.len() != self.dim() || i >= self.dim() || j >= self.dim() {
            return Err(AlgebraError::Inconsistent(format!(
                "cell ({}, {}) with {} coefficients in dimension {}",
                i + 1,
                j + 1,
                value.len(),
                self.dim()
            )));
        }
        let mut structure = self.structure.clone();
        for (k, c) in value.iter().enumerate() {
            structure.set(i, j, k, c.clone());
        }
        Algebra::new(self.name.clone(), self.basis.clone(), structure)
    }

    /// Renders an element as `2e1 - e3 + 1/2e4`, `0` for the zero vector.
    pub fn format_element(&self, x: &[Rational]) -> String {
        format_combination(x, &self.basis)
    }

    /// Serialises to the JSON interchange document, one structure triple per line.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n");
        let _ = writeln!(out, "  \"name\": {},", json_string(&self.name));
        let _ = writeln!(out, "  \"dim\": {},", self.dim());
        let labels: Vec<String> = self.basis.iter().map(|l| json_string(l)).collect();
        let _ = writeln!(out, "  \"basis\": [{}],", labels.join(", "));
        out.push_str("  \"structure\": [");
        let m = self.dim();
        let mut triples = Vec::new();
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let c = self.structure.get(i, j, k);
                    if !c.is_zero() {
                        triples.push(format!("[{}, {}, {}, \"{}\"]", i + 1, j + 1, k + 1, c));
                    }
                }
            }
        }
        if triples.is_empty() {
            out.push_str("]\n");
        } else {
            out.push('\n');
            out.push_str(
                &triples
                    .iter()
                    .map(|t| format!("    {t}"))
                    .collect::<Vec<_>>()
                    .join(",\n"),
            );
            out.push_str("\n  ]\n");
        }
        out.push_str("}\n");
        out
    }

    pub fn from_json(doc: &str) -> Result<Self, AlgebraError> {
        let raw: RawAlgebra =
            serde_json::from_str(doc).map_err(|e| AlgebraError::Schema(e.to_string()))?;
        raw.into_algebra()
    }

    pub fn load(path: &Path) -> Result<Self, AlgebraError> {
        let doc = std::fs::read_to_string(path).map_err(|source| AlgebraError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&doc)
    }
}

/// Loads one of the three built-in tables.
pub fn builtin(name: &str) -> Result<Algebra, AlgebraError> {
    let doc = match name {
        "W2-conservative" => W2_CONSERVATIVE_JSON,
        "W2-commutative" => W2_COMMUTATIVE_JSON,
        "S2" => S2_JSON,
        other => return Err(AlgebraError::UnknownAlgebra(other.to_string())),
    };
    Algebra::from_json(doc)
}

/// The JSON document a built-in table ships as.
pub fn builtin_json(name: &str) -> Option<&'static str> {
    match name {
        "W2-conservative" => Some(W2_CONSERVATIVE_JSON),
        "W2-commutative" => Some(W2_COMMUTATIVE_JSON),
        "S2" => Some(S2_JSON),
        _ => None,
    }
}

/// Resolves a built-in name, preferring `<dir>/<name>.json` when a directory
/// of replacement tables is given.
pub fn resolve(name: &str, algebra_dir: Option<&Path>) -> Result<Algebra, AlgebraError> {
    if let Some(dir) = algebra_dir {
        let candidate = dir.join(format!("{name}.json"));
        if candidate.is_file() {
            return Algebra::load(&candidate);
        }
    }
    builtin(name)
}

pub fn unit(m: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); m];
    v[i] = Rational::one();
    v
}

pub(crate) fn format_combination(x: &[Rational], labels: &[String]) -> String {
    let mut out = String::new();
    for (c, label) in x.iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            let _ = write!(out, "{mag}");
        }
        out.push_str(label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialise")
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    name: String,
    dim: usize,
    basis: Vec<String>,
    structure: Vec<(usize, usize, usize, String)>,
}

impl RawAlgebra {
    fn into_algebra(self) -> Result<Algebra, AlgebraError> {
        let m = self.dim;
        if self.basis.len() != m {
            return Err(AlgebraError::Inconsistent(format!(
                "dim is {m} but {} basis labels given",
                self.basis.len()
            )));
        }
        let mut structure = BilinearMap::zero(m);
        let mut seen = HashSet::new();
        for (entry, (i, j, k, value)) in self.structure.into_iter().enumerate() {
            for idx in [i, j, k] {
                if idx == 0 || idx > m {
                    return Err(AlgebraError::Inconsistent(format!(
                        "structure entry {entry} has index {idx} outside 1..={m}"
                    )));
                }
            }
            if !seen.insert((i, j, k)) {
                return Err(AlgebraError::Schema(format!(
                    "structure triple ({i}, {j}, {k}) listed twice"
                )));
            }
            let c: Rational = value.parse().map_err(|e: crate::exactnum::ParseRationalError| {
                AlgebraError::BadRational {
                    entry,
                    value: value.clone(),
                    reason: e.to_string(),
                }
            })?;
            structure.set(i - 1, j - 1, k - 1, c);
        }
        Algebra::new(self.name, self.basis, structure)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn vec_i(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| r(x)).collect()
    }

    #[test]
    fn w2_conservative_cells() {
        let a = builtin("W2-conservative").unwrap();
        assert_eq!(a.dim(), 8);
        let e = |i: usize| a.basis_vector(i - 1);
        assert_eq!(a.multiply(&e(1), &e(1)).unwrap(), vec_i(&[-1, 0, 0, 0, 0, 0, 0, 0]));
        assert_eq!(a.multiply(&e(3), &e(5)).unwrap(), vec![Rational::zero(); 8]);
        assert_eq!(a.multiply(&e(2), &e(5)).unwrap(), vec_i(&[1, 0, 0, 0, 0, -1, -1, 0]));
    }

    #[test]
    fn left_mul_rows_match_printed_table() {
        let s2 = builtin("S2").unwrap();
        let l = s2.left_mul_matrix(&s2.basis_vector(0)).unwrap();
        let mut expected = RatMatrix::zeros(4, 4);
        for (i, c) in [-1, 1, 3, -3].into_iter().enumerate() {
            expected[(i, i)] = r(c);
        }
        assert_eq!(l, expected);

        let w = builtin("W2-conservative").unwrap();
        let l6 = w.left_mul_matrix(&w.basis_vector(5)).unwrap();
        let mut expected = RatMatrix::zeros(8, 8);
        expected[(1, 1)] = r(-1);
        expected[(2, 2)] = r(-1);
        expected[(3, 3)] = r(-2);
        expected[(4, 4)] = r(1);
        expected[(7, 7)] = r(-1);
        assert_eq!(l6, expected);
    }

    #[test]
    fn zero_element_products() {
        for name in BUILTIN_NAMES {
            let a = builtin(name).unwrap();
            let zero = vec![Rational::zero(); a.dim()];
            assert!(a.left_mul_matrix(&zero).unwrap().is_zero());
            let y = a.basis_vector(a.dim() - 1);
            assert!(a.multiply(&zero, &y).unwrap().iter().all(Rational::is_zero));
        }
    }

    #[test]
    fn builtin_dims_and_unknown_name() {
        assert_eq!(builtin("S2").unwrap().dim(), 4);
        assert_eq!(builtin("W2-commutative").unwrap().dim(), 6);
        assert!(matches!(builtin("nosuch"), Err(AlgebraError::UnknownAlgebra(_))));
    }

    #[test]
    fn shipped_files_are_canonical_json() {
        for name in BUILTIN_NAMES {
            let a = builtin(name).unwrap();
            assert_eq!(a.to_json(), builtin_json(name).unwrap());
            assert_eq!(Algebra::from_json(&a.to_json()).unwrap(), a);
        }
    }

    #[test]
    fn sparse_document_loads() {
        let doc = r#"{"name":"t","dim":2,"basis":["a","b"],"structure":[
            [1,1,1,"1"],[1,1,2,"2"],[1,2,1,"3"],[1,2,2,"-1/2"],[2,1,1,"5"],[2,1,2,"6"],[2,2,1,"7"]]}"#;
        let a = Algebra::from_json(doc).unwrap();
        assert_eq!(a.basis_product(1, 1), &[r(7), Rational::zero()][..]);
        assert_eq!(a.basis_product(0, 1)[1], Rational::new(-1, 2));
    }

    #[test]
    fn rejects_bad_documents() {
        let bad_rational = r#"{"name":"t","dim":1,"basis":["a"],"structure":[[1,1,1,"1/0"]]}"#;
        assert!(matches!(
            Algebra::from_json(bad_rational),
            Err(AlgebraError::BadRational { .. })
        ));
        let decimal = r#"{"name":"t","dim":1,"basis":["a"],"structure":[[1,1,1,"0.5"]]}"#;
        assert!(Algebra::from_json(decimal).is_err());
        let out_of_range = r#"{"name":"t","dim":1,"basis":["a"],"structure":[[1,2,1,"1"]]}"#;
        assert!(matches!(
            Algebra::from_json(out_of_range),
            Err(AlgebraError::Inconsistent(_))
        ));
        let labels = r#"{"name":"t","dim":2,"basis":["a"],"structure":[]}"#;
        assert!(matches!(Algebra::from_json(labels), Err(AlgebraError::Inconsistent(_))));
        let dup_label = r#"{"name":"t","dim":2,"basis":["a","a"],"structure":[]}"#;
        assert!(Algebra::from_json(dup_label).is_err());
        let dup_triple = r#"{"name":"t","dim":1,"basis":["a"],"structure":[[1,1,1,"1"],[1,1,1,"2"]]}"#;
        assert!(matches!(Algebra::from_json(dup_triple), Err(AlgebraError::Schema(_))));
        assert!(matches!(Algebra::from_json("{}"), Err(AlgebraError::Schema(_))));
        let numeric = r#"{"name":"t","dim":1,"basis":["a"],"structure":[[1,1,1,1]]}"#;
        assert!(matches!(Algebra::from_json(numeric), Err(AlgebraError::Schema(_))));
    }

    #[test]
    fn formats_combinations() {
        let a = builtin("W2-conservative").unwrap();
        let x = a.multiply(&a.basis_vector(1), &a.basis_vector(4)).unwrap();
        assert_eq!(a.format_element(&x), "e1 - e6 - e7");
        let mut y = vec![Rational::zero(); 8];
        y[0] = Rational::new(-1, 2);
        y[3] = r(3);
        assert_eq!(a.format_element(&y), "-1/2e1 + 3e4");
        assert_eq!(a.format_element(&vec![Rational::zero(); 8]), "0");
    }
}
