use std::fmt;
use std::ops::{Index, IndexMut};

use super::{ExactError, Rational};

/// Dense row-major rational matrix.
///
/// When used as a linear map, column `j` holds the image of basis vector `j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn scalar(n: usize, lambda: &Rational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = lambda.clone();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, ExactError> {
        if entries.len() != rows * cols {
            return Err(ExactError::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(RatMatrix { rows, cols, entries })
    }

    /// Convenience constructor from integer rows. Panics on ragged input.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row.iter().map(|&x| Rational::from(x)));
        }
        RatMatrix { rows: r, cols: c, entries }
    }

    /// Builds a square matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<Rational>]) -> Self {
        let n = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows, n);
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rational>], cols: usize) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            entries.extend(row.iter().cloned());
        }
        RatMatrix {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, ExactError> {
        if v.len() != self.cols {
            return Err(ExactError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    pub fn mul_mat(&self, other: &RatMatrix) -> Result<RatMatrix, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, lambda: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * lambda).collect(),
        }
    }

    pub fn add(&self, other: &RatMatrix) -> Result<RatMatrix, ExactError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(ExactError::DimensionMismatch {
                expected: self.entries.len(),
                found: other.entries.len(),
            });
        }
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Row-major flattening, the fixed ordering used for subspace comparisons.
    pub fn flatten(&self) -> Vec<Rational> {
        self.entries.clone()
    }

    /// `Some(λ)` when the matrix is square and equals `λ·I`.
    pub fn as_scalar(&self) -> Option<Rational> {
        if self.rows != self.cols {
            return None;
        }
        let lambda = if self.rows == 0 {
            Rational::zero()
        } else {
            self[(0, 0)].clone()
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = &self[(i, j)];
                let ok = if i == j { *x == lambda } else { x.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(lambda)
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row-echelon form by Gauss-Jordan elimination.
///
/// The pivot in each column is the first nonzero entry at or below the current
/// row. Returns the reduced matrix and its pivot columns in increasing order.
pub fn rref(a: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
            continue;
        };
        if p != row {
            for j in 0..m.cols {
                m.entries.swap(p * m.cols + j, row * m.cols + j);
            }
        }
        let inv = m[(row, col)].recip().expect("pivot is nonzero");
        for j in col..m.cols {
            if !m[(row, j)].is_zero() {
                m[(row, j)] = &m[(row, j)] * &inv;
            }
        }
        for r in 0..m.rows {
            if r == row || m[(r, col)].is_zero() {
                continue;
            }
            let factor = m[(r, col)].clone();
            for j in col..m.cols {
                if !m[(row, j)].is_zero() {
                    let delta = &factor * &m[(row, j)];
                    m[(r, j)] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (m, pivots)
}

pub fn rank(a: &RatMatrix) -> usize {
    rref(a).1.len()
}

/// Canonical null-space basis read off the free columns of the RREF.
///
/// Free variables are set to one, in increasing column order; vectors are
/// left rational (no denominator clearing).
pub fn kernel_basis(a: &RatMatrix) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(a);
    kernel_from_rref(&r, &pivots)
}

fn kernel_from_rref(r: &RatMatrix, pivots: &[usize]) -> Vec<Vec<Rational>> {
    let n = r.cols;
    let mut is_pivot = vec![false; n];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                let x = &r[(row, f)];
                if !x.is_zero() {
                    v[p] = -x;
                }
            }
            v
        })
        .collect()
}

fn check_lengths(vectors: &[Vec<Rational>], len: usize) -> Result<(), ExactError> {
    match vectors.iter().find(|v| v.len() != len) {
        Some(v) => Err(ExactError::DimensionMismatch {
            expected: len,
            found: v.len(),
        }),
        None => Ok(()),
    }
}

/// Dimension of the span of `vectors`, all of length `ambient`.
pub fn span_rank(vectors: &[Vec<Rational>], ambient: usize) -> Result<usize, ExactError> {
    check_lengths(vectors, ambient)?;
    Ok(rank(&RatMatrix::from_rows(vectors, ambient)))
}

/// True iff both lists span the same subspace of ℚ^ambient.
pub fn subspace_equal(
    b1: &[Vec<Rational>],
    b2: &[Vec<Rational>],
    ambient: usize,
) -> Result<bool, ExactError> {
    check_lengths(b1, ambient)?;
    check_lengths(b2, ambient)?;
    let r1 = span_rank(b1, ambient)?;
    let r2 = span_rank(b2, ambient)?;
    if r1 != r2 {
        return Ok(false);
    }
    let joint: Vec<Vec<Rational>> = b1.iter().chain(b2).cloned().collect();
    Ok(span_rank(&joint, ambient)? == r1)
}

/// True iff `span(inner) ⊆ span(outer)`.
pub fn subspace_contains(
    outer: &[Vec<Rational>],
    inner: &[Vec<Rational>],
    ambient: usize,
) -> Result<bool, ExactError> {
    check_lengths(outer, ambient)?;
    check_lengths(inner, ambient)?;
    let r = span_rank(outer, ambient)?;
    let joint: Vec<Vec<Rational>> = outer.iter().chain(inner).cloned().collect();
    Ok(span_rank(&joint, ambient)? == r)
}

pub fn in_span(basis: &[Vec<Rational>], v: &[Rational]) -> Result<bool, ExactError> {
    subspace_contains(basis, &[v.to_vec()], v.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn rref_identity() {
        let (r, p) = rref(&RatMatrix::identity(2));
        assert_eq!(r, RatMatrix::identity(2));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn rref_zero() {
        let z = RatMatrix::zeros(3, 2);
        let (r, p) = rref(&z);
        assert_eq!(r, z);
        assert!(p.is_empty());
    }

    #[test]
    fn rref_dependent_rows() {
        let (r, p) = rref(&RatMatrix::from_i64_rows(&[&[2, 4], &[1, 2]]));
        assert_eq!(r, RatMatrix::from_i64_rows(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rref_needs_row_swap() {
        let (r, p) = rref(&RatMatrix::from_i64_rows(&[&[0, 3, 1], &[2, 1, 0]]));
        assert_eq!(p, vec![0, 1]);
        assert_eq!(r.row(0), &[Rational::one(), Rational::zero(), Rational::new(-1, 6)][..]);
        assert_eq!(r.row(1), &[Rational::zero(), Rational::one(), Rational::new(1, 3)][..]);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&RatMatrix::identity(4)).is_empty());
        let k = kernel_basis(&RatMatrix::zeros(1, 3));
        assert_eq!(k, vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(
            kernel_basis(&RatMatrix::from_i64_rows(&[&[1, 2]])),
            vec![v(&[-2, 1])]
        );
    }

    #[test]
    fn kernel_keeps_rational_entries() {
        let k = kernel_basis(&RatMatrix::from_i64_rows(&[&[2, 1]]));
        assert_eq!(k, vec![vec![Rational::new(-1, 2), Rational::one()]]);
    }

    #[test]
    fn subspace_equal_examples() {
        assert!(subspace_equal(&[v(&[1, 0])], &[v(&[2, 0])], 2).unwrap());
        assert!(!subspace_equal(&[v(&[1, 0])], &[v(&[0, 1])], 2).unwrap());
        assert!(subspace_equal(&[v(&[1, 1]), v(&[1, -1])], &[v(&[1, 0]), v(&[0, 1])], 2).unwrap());
        assert!(subspace_equal(&[], &[v(&[0, 0])], 2).unwrap());
    }

    #[test]
    fn subspace_equal_rejects_length_mismatch() {
        assert!(matches!(
            subspace_equal(&[v(&[1, 0])], &[v(&[1, 0, 0])], 2),
            Err(ExactError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn scalar_detection() {
        assert_eq!(
            RatMatrix::scalar(3, &Rational::new(2, 3)).as_scalar(),
            Some(Rational::new(2, 3))
        );
        let mut m = RatMatrix::identity(2);
        m[(0, 1)] = Rational::one();
        assert_eq!(m.as_scalar(), None);
    }
}
