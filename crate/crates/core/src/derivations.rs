//! δ-derivations, centroids, and local / 2-local δ-derivation decisions.
//!
//! A linear map `d` is a δ-derivation when `d(xy) = δ(d(x)y + x d(y))`;
//! `δ = 1` gives derivations and `δ = ½` the half-derivations. Unknowns are the
//! entries `a[r][c]` of the matrix of `d` (column `c` = `d(e_c)`), flattened
//! row-major, and equations are assembled in `(i, j, k)` lexicographic order.

use thiserror::Error;

use crate::algebra::{unit, Algebra};
use crate::exactnum::{
    kernel_basis, subspace_contains, subspace_equal, AffineSystem, ExactError, RatMatrix,
    Rational, RowBuilder, SparseEchelon,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DerivationError {
    #[error("sample list is empty")]
    EmptySamples,
    #[error("map is not defined at sample point {0}")]
    UndefinedPoint(String),
    #[error(transparent)]
    Dimension(#[from] ExactError),
}

fn var(m: usize, row: usize, col: usize) -> usize {
    row * m + col
}

fn matrices_from_kernel(m: usize, kernel: Vec<Vec<Rational>>) -> Vec<RatMatrix> {
    kernel
        .into_iter()
        .map(|v| RatMatrix::from_vec(m, m, v).expect("m² unknowns"))
        .collect()
}

/// Row of `d(eᵢeⱼ)_k`.
fn push_d_of_product(row: &mut RowBuilder, a: &Algebra, i: usize, j: usize, k: usize, scale: &Rational) {
    let m = a.dim();
    for (s, c) in a.basis_product(i, j).iter().enumerate() {
        if !c.is_zero() {
            row.add(var(m, k, s), c * scale);
        }
    }
}

/// Row of `(d(eᵢ)eⱼ)_k`.
fn push_d_left(row: &mut RowBuilder, a: &Algebra, i: usize, j: usize, k: usize, scale: &Rational) {
    let m = a.dim();
    for r in 0..m {
        let c = &a.basis_product(r, j)[k];
        if !c.is_zero() {
            row.add(var(m, r, i), c * scale);
        }
    }
}

/// Row of `(eᵢd(eⱼ))_k`.
fn push_d_right(row: &mut RowBuilder, a: &Algebra, i: usize, j: usize, k: usize, scale: &Rational) {
    let m = a.dim();
    for r in 0..m {
        let c = &a.basis_product(i, r)[k];
        if !c.is_zero() {
            row.add(var(m, r, j), c * scale);
        }
    }
}

/// Canonical basis of the δ-derivations of `a`.
pub fn delta_derivation_space(a: &Algebra, delta: &Rational) -> Vec<RatMatrix> {
    let m = a.dim();
    let one = Rational::one();
    let neg_delta = -delta;
    let mut echelon = SparseEchelon::new(m * m);
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                let mut row = RowBuilder::new();
                push_d_of_product(&mut row, a, i, j, k, &one);
                push_d_left(&mut row, a, i, j, k, &neg_delta);
                push_d_right(&mut row, a, i, j, k, &neg_delta);
                echelon.insert(row.finish());
            }
        }
    }
    matrices_from_kernel(m, echelon.kernel_basis())
}

/// Canonical basis of the derivations (δ = 1).
pub fn derivation_space(a: &Algebra) -> Vec<RatMatrix> {
    delta_derivation_space(a, &Rational::one())
}

/// Canonical basis of the centroid `{γ : γ(xy) = γ(x)y = xγ(y)}`.
pub fn centroid(a: &Algebra) -> Vec<RatMatrix> {
    let m = a.dim();
    let one = Rational::one();
    let minus = Rational::from(-1);
    let mut echelon = SparseEchelon::new(m * m);
    for right_family in [false, true] {
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let mut row = RowBuilder::new();
                    push_d_of_product(&mut row, a, i, j, k, &one);
                    if right_family {
                        push_d_right(&mut row, a, i, j, k, &minus);
                    } else {
                        push_d_left(&mut row, a, i, j, k, &minus);
                    }
                    echelon.insert(row.finish());
                }
            }
        }
    }
    matrices_from_kernel(m, echelon.kernel_basis())
}

/// Checks `d(eᵢeⱼ) = δ(d(eᵢ)eⱼ + eᵢd(eⱼ))` on every basis pair by direct
/// evaluation.
pub fn is_delta_derivation(a: &Algebra, d: &RatMatrix, delta: &Rational) -> Result<bool, ExactError> {
    let m = a.dim();
    if d.rows() != m || d.cols() != m {
        return Err(ExactError::DimensionMismatch {
            expected: m,
            found: d.rows(),
        });
    }
    let images: Vec<Vec<Rational>> = (0..m).map(|i| d.column(i)).collect();
    for i in 0..m {
        for j in 0..m {
            let lhs = d.mul_vec(a.basis_product(i, j))?;
            let left = a.structure().apply(&images[i], &unit(m, j))?;
            let right = a.structure().apply(&unit(m, i), &images[j])?;
            let ok = lhs
                .iter()
                .zip(left.iter().zip(&right))
                .all(|(l, (p, q))| *l == delta * &(p + q));
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks the two centroid identities on every basis pair by direct evaluation.
pub fn is_centroid_element(a: &Algebra, g: &RatMatrix) -> Result<bool, ExactError> {
    let m = a.dim();
    if g.rows() != m || g.cols() != m {
        return Err(ExactError::DimensionMismatch {
            expected: m,
            found: g.rows(),
        });
    }
    for i in 0..m {
        for j in 0..m {
            let lhs = g.mul_vec(a.basis_product(i, j))?;
            let left = a.structure().apply(&g.column(i), &unit(m, j))?;
            let right = a.structure().apply(&unit(m, i), &g.column(j))?;
            if lhs != left || lhs != right {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn flat(ms: &[RatMatrix]) -> Vec<Vec<Rational>> {
    ms.iter().map(RatMatrix::flatten).collect()
}

/// `Γ(A) ⊆ Δ_½(A)` as subspaces.
pub fn centroid_in_delta_check(a: &Algebra) -> bool {
    let m = a.dim();
    let gamma = centroid(a);
    let half = delta_derivation_space(a, &Rational::new(1, 2));
    subspace_contains(&flat(&half), &flat(&gamma), m * m).expect("same ambient dimension")
}

/// Whether a δ-derivation space is exactly the scalar maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarClassification {
    pub dimension: usize,
    pub is_scalar: bool,
}

pub fn scalar_classification(a: &Algebra, delta: &Rational) -> ScalarClassification {
    let m = a.dim();
    let space = delta_derivation_space(a, delta);
    let is_scalar = subspace_equal(&flat(&space), &[RatMatrix::identity(m).flatten()], m * m)
        .expect("same ambient dimension");
    ScalarClassification {
        dimension: space.len(),
        is_scalar,
    }
}

/// Sample points `{eᵢ} ∪ {eᵢ + eⱼ : i < j}`.
pub fn required_samples(m: usize) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = (0..m).map(|i| unit(m, i)).collect();
    for i in 0..m {
        for j in (i + 1)..m {
            let mut v = unit(m, i);
            v[j] = Rational::one();
            out.push(v);
        }
    }
    out
}

/// Coordinates `c` in the δ-derivation basis certifying `D(point) = (Σ c_k d_k)(point)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalWitness {
    pub point: Vec<Rational>,
    pub coefficients: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalDecision {
    /// Every sample has a witness. `complete` is set when the sample set and
    /// the δ-derivation space make the answer a proof for all `x`.
    Local {
        witnesses: Vec<LocalWitness>,
        complete: bool,
    },
    NotLocal { counterexample: Vec<Rational> },
}

impl LocalDecision {
    pub fn is_local(&self) -> bool {
        matches!(self, LocalDecision::Local { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoLocalDecision {
    TwoLocal,
    NotTwoLocal {
        x: Vec<Rational>,
        y: Vec<Rational>,
    },
}

impl TwoLocalDecision {
    pub fn is_two_local(&self) -> bool {
        matches!(self, TwoLocalDecision::TwoLocal)
    }
}

/// A possibly nonlinear map given by its values on finitely many points.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtensionalMap {
    entries: Vec<(Vec<Rational>, Vec<Rational>)>,
}

impl ExtensionalMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, point: Vec<Rational>, value: Vec<Rational>) {
        match self.entries.iter_mut().find(|(p, _)| *p == point) {
            Some(slot) => slot.1 = value,
            None => self.entries.push((point, value)),
        }
    }

    pub fn from_fn<F>(points: &[Vec<Rational>], mut f: F) -> Self
    where
        F: FnMut(&[Rational]) -> Vec<Rational>,
    {
        let mut map = Self::new();
        for p in points {
            let value = f(p);
            map.insert(p.clone(), value);
        }
        map
    }

    pub fn get(&self, point: &[Rational]) -> Option<&[Rational]> {
        self.entries
            .iter()
            .find(|(p, _)| p == point)
            .map(|(_, v)| v.as_slice())
    }
}

/// The δ-derivation space of an algebra, ready for pointwise queries.
#[derive(Clone, Debug)]
pub struct DeltaSpace {
    dim: usize,
    basis: Vec<RatMatrix>,
}

impl DeltaSpace {
    pub fn new(a: &Algebra, delta: &Rational) -> Self {
        DeltaSpace {
            dim: a.dim(),
            basis: delta_derivation_space(a, delta),
        }
    }

    pub fn basis(&self) -> &[RatMatrix] {
        &self.basis
    }

    pub fn is_scalar_only(&self) -> bool {
        let m = self.dim;
        subspace_equal(&flat(&self.basis), &[RatMatrix::identity(m).flatten()], m * m)
            .expect("same ambient dimension")
    }

    fn check(&self, v: &[Rational]) -> Result<(), DerivationError> {
        if v.len() != self.dim {
            return Err(ExactError::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            }
            .into());
        }
        Ok(())
    }

    /// `{d_k(x)}` for every basis map `d_k`.
    pub fn orbit(&self, x: &[Rational]) -> Vec<Vec<Rational>> {
        self.basis
            .iter()
            .map(|d| d.mul_vec(x).expect("dimension checked"))
            .collect()
    }

    /// Solves `(Σ c_k d_k)(xᵢ) = targetᵢ` jointly for all given constraints.
    pub fn solve_joint(&self, constraints: &[(&[Rational], &[Rational])]) -> Option<Vec<Rational>> {
        let r = self.basis.len();
        let mut sys = AffineSystem::new(r);
        for (x, target) in constraints {
            let orbit = self.orbit(x);
            for (comp, t) in target.iter().enumerate() {
                let mut row = RowBuilder::new();
                for (k, image) in orbit.iter().enumerate() {
                    row.add_ref(k, &image[comp]);
                }
                sys.add_equation(row, t);
            }
        }
        sys.particular_solution()
    }

    pub fn evaluate(&self, coefficients: &[Rational], x: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (c, d) in coefficients.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (slot, y) in out.iter_mut().zip(d.mul_vec(x).expect("dimension checked")) {
                *slot += c * &y;
            }
        }
        out
    }

    /// Local decision for a linear map over the given samples.
    pub fn check_local(
        &self,
        d: &RatMatrix,
        samples: &[Vec<Rational>],
    ) -> Result<LocalDecision, DerivationError> {
        if samples.is_empty() {
            return Err(DerivationError::EmptySamples);
        }
        if d.rows() != self.dim || d.cols() != self.dim {
            return Err(ExactError::DimensionMismatch {
                expected: self.dim,
                found: d.rows(),
            }
            .into());
        }
        let mut witnesses = Vec::with_capacity(samples.len());
        for x in samples {
            self.check(x)?;
            let target = d.mul_vec(x)?;
            match self.solve_joint(&[(x, &target)]) {
                Some(coefficients) => witnesses.push(LocalWitness {
                    point: x.clone(),
                    coefficients,
                }),
                None => {
                    return Ok(LocalDecision::NotLocal {
                        counterexample: x.clone(),
                    })
                }
            }
        }
        let required = required_samples(self.dim);
        let covers_required = required.iter().all(|p| samples.contains(p));
        Ok(LocalDecision::Local {
            witnesses,
            complete: covers_required && self.is_scalar_only(),
        })
    }

    /// 2-local decision for an extensional map over the given pairs; reports
    /// the first failing pair in input order.
    pub fn check_two_local(
        &self,
        d: &ExtensionalMap,
        pairs: &[(Vec<Rational>, Vec<Rational>)],
    ) -> Result<TwoLocalDecision, DerivationError> {
        for (x, y) in pairs {
            self.check(x)?;
            self.check(y)?;
            let dx = d
                .get(x)
                .ok_or_else(|| DerivationError::UndefinedPoint(format!("{x:?}")))?;
            let dy = d
                .get(y)
                .ok_or_else(|| DerivationError::UndefinedPoint(format!("{y:?}")))?;
            if self.solve_joint(&[(x, dx), (y, dy)]).is_none() {
                return Ok(TwoLocalDecision::NotTwoLocal {
                    x: x.clone(),
                    y: y.clone(),
                });
            }
        }
        Ok(TwoLocalDecision::TwoLocal)
    }

    /// Rank test, independent of the solver: is `target` in `span{d_k(x)}`?
    pub fn reaches(&self, x: &[Rational], target: &[Rational]) -> bool {
        crate::exactnum::in_span(&self.orbit(x), target).expect("same length")
    }

    /// Every linear `D` with `D(x) ∈ span{d(x) : d δ-derivation}` for each
    /// sample `x`. The condition is linear in `D`, so this is a subspace.
    pub fn local_map_space(&self, samples: &[Vec<Rational>]) -> Vec<RatMatrix> {
        let m = self.dim;
        let mut echelon = SparseEchelon::new(m * m);
        for x in samples {
            let orbit = self.orbit(x);
            for w in annihilator(&orbit, m) {
                // w · D(x) = Σ_r Σ_c w_r a[r][c] x_c = 0
                let mut row = RowBuilder::new();
                for (r, wr) in w.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                    for (c, xc) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                        row.add(var(m, r, c), wr * xc);
                    }
                }
                echelon.insert(row.finish());
            }
        }
        matrices_from_kernel(m, echelon.kernel_basis())
    }

    /// Every value table `(D(p₀), …, D(p_{t-1}))`, flattened, such that each
    /// listed pair of points has a common δ-derivation reproducing both values.
    pub fn two_local_value_space(
        &self,
        points: &[Vec<Rational>],
        pairs: &[(usize, usize)],
    ) -> Vec<Vec<Rational>> {
        let m = self.dim;
        let mut echelon = SparseEchelon::new(points.len() * m);
        for &(p, q) in pairs {
            // Joint image {(d(x), d(y))} in ℚ^{2m}.
            let joint: Vec<Vec<Rational>> = self
                .orbit(&points[p])
                .into_iter()
                .zip(self.orbit(&points[q]))
                .map(|(a, b)| a.into_iter().chain(b).collect())
                .collect();
            for w in annihilator(&joint, 2 * m) {
                let mut row = RowBuilder::new();
                for (idx, wi) in w.iter().enumerate() {
                    let col = if idx < m { p * m + idx } else { q * m + idx - m };
                    row.add_ref(col, wi);
                }
                echelon.insert(row.finish());
            }
        }
        echelon.kernel_basis()
    }
}

/// Basis of `{w : w · v = 0 for all v in vectors}` in ℚ^len.
fn annihilator(vectors: &[Vec<Rational>], len: usize) -> Vec<Vec<Rational>> {
    if vectors.is_empty() {
        return (0..len).map(|i| unit(len, i)).collect();
    }
    kernel_basis(&RatMatrix::from_rows(vectors, len))
}

/// Local δ-derivation decision for a linear map over `samples`.
pub fn is_local_delta_derivation(
    a: &Algebra,
    d: &RatMatrix,
    samples: &[Vec<Rational>],
    delta: &Rational,
) -> Result<LocalDecision, DerivationError> {
    DeltaSpace::new(a, delta).check_local(d, samples)
}

/// 2-local δ-derivation decision for an extensional map over `pairs`.
pub fn is_two_local_delta_derivation(
    a: &Algebra,
    d: &ExtensionalMap,
    pairs: &[(Vec<Rational>, Vec<Rational>)],
    delta: &Rational,
) -> Result<TwoLocalDecision, DerivationError> {
    DeltaSpace::new(a, delta).check_two_local(d, pairs)
}
