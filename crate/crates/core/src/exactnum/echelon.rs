//! Incremental sparse Gauss-Jordan elimination.
//!
//! Solver systems here have thousands of equations but few nonzeros per row and
//! a small rank, so rows are reduced one at a time against a fully reduced
//! pivot set. The reduced row space is the same as the one `rref` produces, so
//! the kernel read off here is the same canonical basis.

use std::collections::BTreeMap;

use super::Rational;

/// Sparse row: strictly increasing column indices, no explicit zeros.
pub type SparseRow = Vec<(usize, Rational)>;

/// Accumulates coefficients of one linear equation.
#[derive(Default, Debug, Clone)]
pub struct RowBuilder {
    terms: BTreeMap<usize, Rational>,
}

impl RowBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, col: usize, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(col).or_insert_with(Rational::zero);
        *entry += coeff;
    }

    pub fn add_ref(&mut self, col: usize, coeff: &Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(col).or_insert_with(Rational::zero);
        *entry += coeff;
    }

    pub fn is_empty(&self) -> bool {
        self.terms.values().all(Rational::is_zero)
    }

    pub fn finish(self) -> SparseRow {
        self.terms.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }
}

/// `row += factor * other`, both sorted sparse rows.
fn axpy(row: &SparseRow, factor: &Rational, other: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        match (row.get(i), other.get(j)) {
            (Some((ci, vi)), Some((cj, vj))) if ci == cj => {
                let v = vi + &(factor * vj);
                if !v.is_zero() {
                    out.push((*ci, v));
                }
                i += 1;
                j += 1;
            }
            (Some((ci, vi)), Some((cj, _))) if ci < cj => {
                out.push((*ci, vi.clone()));
                i += 1;
            }
            (Some((ci, vi)), None) => {
                out.push((*ci, vi.clone()));
                i += 1;
            }
            (_, Some((cj, vj))) => {
                out.push((*cj, factor * vj));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

fn coeff_at(row: &SparseRow, col: usize) -> Option<&Rational> {
    row.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|idx| &row[idx].1)
}

/// Fully reduced echelon basis of a growing row space in ℚ^cols.
#[derive(Debug, Clone)]
pub struct SparseEchelon {
    cols: usize,
    /// Pivot rows, each normalised to 1 at its pivot and zero at all other pivots.
    rows: Vec<SparseRow>,
    pivot_of_col: Vec<Option<usize>>,
}

impl SparseEchelon {
    pub fn new(cols: usize) -> Self {
        SparseEchelon {
            cols,
            rows: Vec::new(),
            pivot_of_col: vec![None; cols],
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the current pivots.
    fn reduce(&self, row: SparseRow) -> SparseRow {
        let hits: Vec<(usize, Rational)> = row
            .iter()
            .filter_map(|(c, v)| self.pivot_of_col[*c].map(|p| (p, v.clone())))
            .collect();
        let mut out = row;
        // Pivot rows vanish at every other pivot column, so one pass suffices.
        for (p, v) in hits {
            out = axpy(&out, &-v, &self.rows[p]);
        }
        out
    }

    /// Inserts an equation; returns `true` if it raised the rank.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        debug_assert!(row.iter().all(|(c, _)| *c < self.cols));
        let reduced = self.reduce(row);
        let Some((pivot_col, lead)) = reduced.first().cloned() else {
            return false;
        };
        let inv = lead.recip().expect("leading coefficient is nonzero");
        let normalized: SparseRow = reduced.into_iter().map(|(c, v)| (c, v * &inv)).collect();
        for existing in self.rows.iter_mut() {
            if let Some(x) = coeff_at(existing, pivot_col).cloned() {
                *existing = axpy(existing, &-x, &normalized);
            }
        }
        self.pivot_of_col[pivot_col] = Some(self.rows.len());
        self.rows.push(normalized);
        true
    }

    pub fn extend<I: IntoIterator<Item = SparseRow>>(&mut self, rows: I) {
        for row in rows {
            self.insert(row);
        }
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.cols)
            .filter(|&c| self.pivot_of_col[c].is_some())
            .collect()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of_col[col].is_some()
    }

    /// Canonical kernel basis restricted to the first `vars` columns.
    ///
    /// Free columns get value one in increasing order; columns at or beyond
    /// `vars` are treated as fixed at zero (used for augmented systems).
    pub fn kernel_basis_vars(&self, vars: usize) -> Vec<Vec<Rational>> {
        let free: Vec<usize> = (0..vars).filter(|&c| !self.is_pivot(c)).collect();
        let mut basis: Vec<Vec<Rational>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); vars];
                v[f] = Rational::one();
                v
            })
            .collect();
        let slot: BTreeMap<usize, usize> = free.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        for row in &self.rows {
            let pivot = row[0].0;
            if pivot >= vars {
                continue;
            }
            for (c, x) in &row[1..] {
                if let Some(&i) = slot.get(c) {
                    basis[i][pivot] = -x;
                }
            }
        }
        basis
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        self.kernel_basis_vars(self.cols)
    }

    /// Dense RREF rows sorted by pivot column.
    pub fn to_rref_rows(&self) -> Vec<Vec<Rational>> {
        self.pivots()
            .into_iter()
            .map(|c| {
                let row = &self.rows[self.pivot_of_col[c].unwrap()];
                let mut dense = vec![Rational::zero(); self.cols];
                for (j, x) in row {
                    dense[*j] = x.clone();
                }
                dense
            })
            .collect()
    }
}

/// Inhomogeneous system `A x = b` over `vars` unknowns.
///
/// Stored as the augmented row space with the right-hand side in column `vars`.
#[derive(Debug, Clone)]
pub struct AffineSystem {
    vars: usize,
    echelon: SparseEchelon,
}

impl AffineSystem {
    pub fn new(vars: usize) -> Self {
        AffineSystem {
            vars,
            echelon: SparseEchelon::new(vars + 1),
        }
    }

    /// Adds `Σ coeffs · x = rhs`.
    pub fn add_equation(&mut self, mut coeffs: RowBuilder, rhs: &Rational) {
        coeffs.add(self.vars, -rhs);
        self.echelon.insert(coeffs.finish());
    }

    pub fn is_consistent(&self) -> bool {
        !self.echelon.is_pivot(self.vars)
    }

    /// The solution with every free variable set to zero, if consistent.
    pub fn particular_solution(&self) -> Option<Vec<Rational>> {
        if !self.is_consistent() {
            return None;
        }
        let mut x = vec![Rational::zero(); self.vars];
        for row in &self.echelon.rows {
            let pivot = row[0].0;
            // Row reads x_pivot + ... - rhs = 0 in the augmented layout.
            if let Some(neg_rhs) = coeff_at(row, self.vars) {
                x[pivot] = -neg_rhs;
            }
        }
        Some(x)
    }

    pub fn homogeneous_kernel(&self) -> Vec<Vec<Rational>> {
        self.echelon.kernel_basis_vars(self.vars)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{kernel_basis, rref, RatMatrix};

    fn dense_to_sparse(row: &[Rational]) -> SparseRow {
        row.iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| (c, v.clone()))
            .collect()
    }

    #[test]
    fn matches_dense_on_small_example() {
        let a = RatMatrix::from_i64_rows(&[&[0, 3, 1, 2], &[2, 1, 0, 0], &[2, 4, 1, 2]]);
        let mut e = SparseEchelon::new(4);
        for i in 0..a.rows() {
            e.insert(dense_to_sparse(a.row(i)));
        }
        assert_eq!(e.rank(), 2);
        assert_eq!(e.kernel_basis(), kernel_basis(&a));
        let (r, pivots) = rref(&a);
        assert_eq!(e.pivots(), pivots);
        for (i, row) in e.to_rref_rows().iter().enumerate() {
            assert_eq!(&row[..], r.row(i));
        }
    }

    #[test]
    fn affine_particular_solution() {
        // x + y = 3, x - y = 1
        let mut sys = AffineSystem::new(2);
        let mut r1 = RowBuilder::new();
        r1.add(0, Rational::one());
        r1.add(1, Rational::one());
        sys.add_equation(r1, &Rational::from(3));
        let mut r2 = RowBuilder::new();
        r2.add(0, Rational::one());
        r2.add(1, Rational::from(-1));
        sys.add_equation(r2, &Rational::one());
        assert_eq!(
            sys.particular_solution(),
            Some(vec![Rational::from(2), Rational::one()])
        );
        assert!(sys.homogeneous_kernel().is_empty());
    }

    #[test]
    fn affine_free_vars_zero_and_inconsistency() {
        let mut sys = AffineSystem::new(3);
        let mut r = RowBuilder::new();
        r.add(1, Rational::from(2));
        r.add(2, Rational::one());
        sys.add_equation(r, &Rational::from(4));
        assert_eq!(
            sys.particular_solution(),
            Some(vec![Rational::zero(), Rational::from(2), Rational::zero()])
        );
        assert_eq!(sys.homogeneous_kernel().len(), 2);

        let mut bad = RowBuilder::new();
        bad.add(1, Rational::from(2));
        bad.add(2, Rational::one());
        sys.add_equation(bad, &Rational::from(5));
        assert!(!sys.is_consistent());
        assert_eq!(sys.particular_solution(), None);
    }

    #[test]
    fn row_builder_drops_cancelled_terms() {
        let mut r = RowBuilder::new();
        r.add(3, Rational::one());
        r.add(3, Rational::from(-1));
        r.add(1, Rational::new(1, 2));
        assert_eq!(r.finish(), vec![(1, Rational::new(1, 2))]);
    }
}
