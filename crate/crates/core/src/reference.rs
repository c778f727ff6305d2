//! Transcribed reference data: the two-parameter derivation matrix forms for
//! the built-in tables, and table cells suspected to be misprinted.
//!
//! Matrices are kept exactly as printed (row by row). The printed forms do not
//! say whether images of basis vectors sit in rows or columns, so comparisons
//! accept either reading and report which one matched.

use crate::algebra::Algebra;
use crate::exactnum::{subspace_equal, RatMatrix, Rational};

type Form = fn(i64, i64) -> Vec<Vec<i64>>;

/// Derivations of `W2-conservative`, in the slice form printed in the table's
/// basis `e1..e8`.
fn w2_conservative_form(a: i64, b: i64) -> Vec<Vec<i64>> {
    vec![
        vec![0, a, a, 0, 0, 0, 0, 0],
        vec![0, b, 0, a, 0, 0, 0, 0],
        vec![0, 0, b, a, 0, 0, 0, 0],
        vec![0, 0, 0, 2 * b, 0, 0, 0, 0],
        vec![-a, 0, 0, 0, -b, a, a, 0],
        vec![0, -a, 0, 0, 0, 0, 0, a],
        vec![0, 0, -a, 0, 0, 0, 0, a],
        vec![0, 0, 0, -a, 0, 0, 0, b],
    ]
}

/// The stand-alone derivation matrix printed for `W2-conservative`. It does
/// not agree with the slice form above and is kept for diagnostics only.
fn w2_conservative_standalone_form(a: i64, b: i64) -> Vec<Vec<i64>> {
    vec![
        vec![0, a, 0, 0, 0, 0, 0, 0],
        vec![0, -b, 0, 0, 0, 0, 0, 0],
        vec![2 * a, 0, b, 0, 0, 0, 0, 0],
        vec![0, 0, 3 * a, 2 * b, 0, 0, 0, 0],
        vec![0, 0, 0, 0, 0, 0, 0, 0],
        vec![0, 0, 0, 0, -a, b, 0, 0],
        vec![0, 0, 0, 0, 0, 0, b, a],
        vec![0, 0, 0, 0, 0, 0, 0, 0],
    ]
}

fn w2_commutative_form(a: i64, b: i64) -> Vec<Vec<i64>> {
    vec![
        vec![0, a, 0, 0, 0, 0],
        vec![0, b, 2 * a, 0, 0, 0],
        vec![0, 0, 2 * b, 0, 0, 0],
        vec![-a, 0, 0, -b, a, 0],
        vec![0, -a, 0, 0, 0, 2 * a],
        vec![0, 0, -a, 0, 0, b],
    ]
}

fn s2_form(a: i64, b: i64) -> Vec<Vec<i64>> {
    vec![
        vec![0, 0, 0, b],
        vec![-2 * b, a, 0, 0],
        vec![0, -3 * b, 2 * a, 0],
        vec![0, 0, 0, -a],
    ]
}

fn generators(form: Form) -> Vec<RatMatrix> {
    [(1, 0), (0, 1)]
        .into_iter()
        .map(|(a, b)| {
            let rows = form(a, b);
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            RatMatrix::from_i64_rows(&refs)
        })
        .collect()
}

/// Generators at `(a, b) = (1, 0)` and `(0, 1)` of the printed derivation
/// form for a built-in table, as printed.
pub fn derivation_generators(name: &str) -> Option<Vec<RatMatrix>> {
    let form: Form = match name {
        "W2-conservative" => w2_conservative_form,
        "W2-commutative" => w2_commutative_form,
        "S2" => s2_form,
        _ => return None,
    };
    Some(generators(form))
}

/// The stand-alone printed form for `W2-conservative`.
pub fn w2_conservative_standalone_generators() -> Vec<RatMatrix> {
    generators(w2_conservative_standalone_form)
}

/// How a printed matrix maps onto "column j = image of basis vector j".
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    ImagesInColumns,
    ImagesInRows,
}

impl std::fmt::Display for Orientation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Orientation::ImagesInColumns => "images in columns",
            Orientation::ImagesInRows => "images in rows",
        })
    }
}

/// Reading of the printed generators under which their span equals
/// `computed`, if any.
pub fn matching_orientation(computed: &[RatMatrix], printed: &[RatMatrix]) -> Option<Orientation> {
    let Some(first) = printed.first().or(computed.first()) else {
        return Some(Orientation::ImagesInColumns);
    };
    let ambient = first.rows() * first.cols();
    let flat = |ms: &[RatMatrix]| ms.iter().map(RatMatrix::flatten).collect::<Vec<_>>();
    let as_columns = flat(printed);
    let as_rows: Vec<_> = printed.iter().map(|m| m.transpose().flatten()).collect();
    let target = flat(computed);
    if subspace_equal(&target, &as_columns, ambient).ok()? {
        Some(Orientation::ImagesInColumns)
    } else if subspace_equal(&target, &as_rows, ambient).ok()? {
        Some(Orientation::ImagesInRows)
    } else {
        None
    }
}

/// A table cell suspected to be misprinted, with a proposed replacement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuspectCell {
    pub algebra: &'static str,
    /// 0-based row and column of the cell `e_row · e_col`.
    pub row: usize,
    pub col: usize,
    pub printed: Vec<Rational>,
    pub proposed: Vec<Rational>,
}

impl SuspectCell {
    /// Applies the correction when the table still carries the printed value.
    pub fn apply(&self, a: &Algebra) -> Option<Algebra> {
        if a.dim() != self.printed.len() || a.basis_product(self.row, self.col) != self.printed {
            return None;
        }
        a.with_cell(self.row, self.col, &self.proposed).ok()
    }

    pub fn describe(&self, a: &Algebra) -> String {
        let labels = a.basis_labels();
        format!(
            "{}·{} printed as {}, suspected {}",
            labels[self.row],
            labels[self.col],
            a.format_element(&self.printed),
            a.format_element(&self.proposed)
        )
    }
}

fn coords(m: usize, terms: &[(usize, i64)]) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); m];
    for &(k, c) in terms {
        v[k] = Rational::from(c);
    }
    v
}

/// Known suspect cells. `z2·z2 = -3z2` breaks the grading that every other
/// `S2` product respects (`z1` acts diagonally with weights 0, 1, 2, -1), while
/// `-3z3` restores it.
pub fn suspect_cells() -> Vec<SuspectCell> {
    vec![SuspectCell {
        algebra: "S2",
        row: 1,
        col: 1,
        printed: coords(4, &[(1, -3)]),
        proposed: coords(4, &[(2, -3)]),
    }]
}

pub fn suspect_cells_for(name: &str) -> Vec<SuspectCell> {
    suspect_cells()
        .into_iter()
        .filter(|c| c.algebra == name)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin;

    #[test]
    fn generators_are_two_independent_matrices() {
        for name in crate::algebra::BUILTIN_NAMES {
            let g = derivation_generators(name).unwrap();
            assert_eq!(g.len(), 2);
            assert!(g.iter().all(|m| m.rows() == m.cols() && !m.is_zero()));
        }
        assert!(derivation_generators("nosuch").is_none());
    }

    #[test]
    fn s2_suspect_applies_only_to_printed_value() {
        let s2 = builtin("S2").unwrap();
        let cell = &suspect_cells_for("S2")[0];
        let fixed = cell.apply(&s2).unwrap();
        assert_eq!(fixed.basis_product(1, 1)[2], Rational::from(-3));
        assert!(cell.apply(&fixed).is_none());
        assert_eq!(cell.describe(&s2), "z2·z2 printed as -3z2, suspected -3z3");
    }

    #[test]
    fn orientation_detection() {
        let mut m = RatMatrix::zeros(2, 2);
        m[(0, 1)] = Rational::one();
        let printed = vec![m.clone()];
        assert_eq!(
            matching_orientation(&[m.clone()], &printed),
            Some(Orientation::ImagesInColumns)
        );
        assert_eq!(
            matching_orientation(&[m.transpose()], &printed),
            Some(Orientation::ImagesInRows)
        );
        assert_eq!(matching_orientation(&[RatMatrix::identity(2)], &printed), None);
    }
}
