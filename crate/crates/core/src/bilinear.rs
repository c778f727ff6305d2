use crate::exactnum::{ExactError, RatMatrix, Rational};

/// Bilinear map `V × V → V` on an `n`-dimensional space, stored as the rank-3
/// tensor `t[i][j][k]` with `N(vᵢ, vⱼ) = Σₖ t[i][j][k] vₖ`.
///
/// The same type carries algebra structure constants, elements of `W(n)`,
/// biderivation candidates and associated multiplications.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BilinearMap {
    dim: usize,
    coeffs: Vec<Rational>,
}

impl BilinearMap {
    pub fn zero(dim: usize) -> Self {
        BilinearMap {
            dim,
            coeffs: vec![Rational::zero(); dim * dim * dim],
        }
    }

    /// Rebuilds a map from its index-lexicographic flattening.
    pub fn from_flat(dim: usize, coeffs: Vec<Rational>) -> Result<Self, ExactError> {
        if coeffs.len() != dim * dim * dim {
            return Err(ExactError::DimensionMismatch {
                expected: dim * dim * dim,
                found: coeffs.len(),
            });
        }
        Ok(BilinearMap { dim, coeffs })
    }

    /// Elementary map sending `(vᵢ, vⱼ)` to `vₖ` and every other basis pair to zero.
    pub fn elementary(dim: usize, i: usize, j: usize, k: usize) -> Self {
        let mut b = Self::zero(dim);
        b.set(i, j, k, Rational::one());
        b
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.coeffs[self.index(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Rational) {
        let idx = self.index(i, j, k);
        self.coeffs[idx] = value;
    }

    /// Coefficient vector of `N(vᵢ, vⱼ)`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Rational] {
        let start = self.index(i, j, 0);
        &self.coeffs[start..start + self.dim]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn flatten(&self) -> Vec<Rational> {
        self.coeffs.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    fn check(&self, v: &[Rational]) -> Result<(), ExactError> {
        if v.len() != self.dim {
            return Err(ExactError::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Evaluates `N(x, y)` by bilinear extension.
    pub fn apply(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>, ExactError> {
        self.check(x)?;
        self.check(y)?;
        let n = self.dim;
        let mut out = vec![Rational::zero(); n];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let w = xi * yj;
                for (k, c) in self.basis_product(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &w * c;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `u ↦ N(x, u)`.
    pub fn left_operator(&self, x: &[Rational]) -> Result<RatMatrix, ExactError> {
        self.check(x)?;
        let n = self.dim;
        let mut m = RatMatrix::zeros(n, n);
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for j in 0..n {
                for k in 0..n {
                    let c = self.get(i, j, k);
                    if !c.is_zero() {
                        m[(k, j)] += xi * c;
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn add(&self, other: &BilinearMap) -> Result<BilinearMap, ExactError> {
        self.same_dim(other)?;
        Ok(BilinearMap {
            dim: self.dim,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &BilinearMap) -> Result<BilinearMap, ExactError> {
        self.same_dim(other)?;
        Ok(BilinearMap {
            dim: self.dim,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, lambda: &Rational) -> BilinearMap {
        BilinearMap {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| c * lambda).collect(),
        }
    }

    /// `(x, y) ↦ N(y, x)`.
    pub fn swapped(&self) -> BilinearMap {
        let n = self.dim;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    out.set(i, j, k, self.get(j, i, k).clone());
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.swapped()
    }

    pub fn is_skew(&self) -> bool {
        self.add(&self.swapped()).map(|s| s.is_zero()).unwrap_or(false)
    }

    fn same_dim(&self, other: &BilinearMap) -> Result<(), ExactError> {
        if self.dim != other.dim {
            return Err(ExactError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::one();
        v
    }

    #[test]
    fn elementary_map_values() {
        let b = BilinearMap::elementary(2, 0, 1, 1);
        assert_eq!(b.apply(&e(2, 0), &e(2, 1)).unwrap(), e(2, 1));
        assert_eq!(b.apply(&e(2, 1), &e(2, 0)).unwrap(), vec![Rational::zero(); 2]);
    }

    #[test]
    fn left_operator_columns_are_products() {
        let mut b = BilinearMap::zero(2);
        b.set(0, 0, 1, Rational::from(3));
        b.set(0, 1, 0, Rational::new(1, 2));
        let x = vec![Rational::from(2), Rational::from(5)];
        let l = b.left_operator(&x).unwrap();
        for j in 0..2 {
            assert_eq!(l.column(j), b.apply(&x, &e(2, j)).unwrap());
        }
    }

    #[test]
    fn symmetry_flags() {
        let mut b = BilinearMap::zero(2);
        b.set(0, 1, 0, Rational::one());
        b.set(1, 0, 0, Rational::one());
        assert!(b.is_symmetric());
        b.set(1, 0, 0, Rational::from(-1));
        assert!(b.is_skew());
        assert!(!b.is_symmetric());
    }

    #[test]
    fn dimension_errors() {
        let b = BilinearMap::zero(2);
        assert!(b.apply(&e(3, 0), &e(2, 0)).is_err());
        assert!(BilinearMap::from_flat(2, vec![Rational::zero(); 7]).is_err());
    }
}
