//! Kantor's constructions on the space of all multiplications of `V_n`.
//!
//! `[M, N](u, v) = M(N(u, v)) - N(M(u), v) - N(u, M(v))` for a linear `M` and a
//! bilinear `N`, and the Kantor product `M · N = [L_M e, N]` where
//! `L_M e = (u ↦ M(e, u))`. The elementary maps `B(i,j,k)` (sending
//! `(vᵢ, vⱼ)` to `vₖ`) in lexicographic order form the basis of `W(n)`.

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError};
use crate::bilinear::BilinearMap;
use crate::exactnum::{
    subspace_contains, AffineSystem, ExactError, RatMatrix, Rational, RowBuilder, SparseEchelon,
};

#[derive(Debug, Error)]
pub enum KantorError {
    #[error("the distinguished vector e must be nonzero")]
    ZeroVector,
    #[error("dimension must be at least 1")]
    EmptySpace,
    #[error(transparent)]
    Dimension(#[from] ExactError),
}

/// `[M, N]` evaluated on all basis pairs.
pub fn bracket(m: &RatMatrix, n: &BilinearMap) -> Result<BilinearMap, ExactError> {
    let d = n.dim();
    if m.rows() != d || m.cols() != d {
        return Err(ExactError::DimensionMismatch {
            expected: d,
            found: m.rows().max(m.cols()),
        });
    }
    let mut out = BilinearMap::zero(d);
    for i in 0..d {
        for j in 0..d {
            let mut acc = vec![Rational::zero(); d];
            // M(N(vᵢ, vⱼ))
            for (s, t) in n.basis_product(i, j).iter().enumerate() {
                if t.is_zero() {
                    continue;
                }
                for (k, slot) in acc.iter_mut().enumerate() {
                    let mk = &m[(k, s)];
                    if !mk.is_zero() {
                        *slot += mk * t;
                    }
                }
            }
            // - N(M(vᵢ), vⱼ) - N(vᵢ, M(vⱼ))
            for r in 0..d {
                let mri = &m[(r, i)];
                if !mri.is_zero() {
                    for (k, t) in n.basis_product(r, j).iter().enumerate() {
                        if !t.is_zero() {
                            acc[k] -= mri * t;
                        }
                    }
                }
                let mrj = &m[(r, j)];
                if !mrj.is_zero() {
                    for (k, t) in n.basis_product(i, r).iter().enumerate() {
                        if !t.is_zero() {
                            acc[k] -= mrj * t;
                        }
                    }
                }
            }
            for (k, v) in acc.into_iter().enumerate() {
                out.set(i, j, k, v);
            }
        }
    }
    Ok(out)
}

/// `M · N = [L_M e, N]`.
pub fn kantor_product(
    m: &BilinearMap,
    n: &BilinearMap,
    e: &[Rational],
) -> Result<BilinearMap, ExactError> {
    if m.dim() != n.dim() {
        return Err(ExactError::DimensionMismatch {
            expected: m.dim(),
            found: n.dim(),
        });
    }
    let lme = m.left_operator(e)?;
    bracket(&lme, n)
}

/// `W(n)` realised as an algebra of dimension `n³` over the elementary basis.
#[derive(Clone, Debug)]
pub struct WnAlgebra {
    n: usize,
    e: Vec<Rational>,
    algebra: Algebra,
}

impl WnAlgebra {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn e(&self) -> &[Rational] {
        &self.e
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn into_algebra(self) -> Algebra {
        self.algebra
    }

    /// Index of `B(i,j,k)` in the basis.
    pub fn basis_index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.n + j) * self.n + k
    }

    /// Kantor product of two bilinear maps with this algebra's `e`.
    pub fn product(&self, m: &BilinearMap, n: &BilinearMap) -> Result<BilinearMap, ExactError> {
        kantor_product(m, n, &self.e)
    }
}

/// Builds `W(n)` with distinguished vector `e`.
pub fn build_wn(n: usize, e: &[Rational]) -> Result<WnAlgebra, KantorError> {
    if n == 0 {
        return Err(KantorError::EmptySpace);
    }
    if e.len() != n {
        return Err(ExactError::DimensionMismatch {
            expected: n,
            found: e.len(),
        }
        .into());
    }
    if e.iter().all(Rational::is_zero) {
        return Err(KantorError::ZeroVector);
    }
    let dim = n * n * n;
    let basis: Vec<BilinearMap> = (0..dim)
        .map(|p| BilinearMap::elementary(n, p / (n * n), (p / n) % n, p % n))
        .collect();
    let mut structure = BilinearMap::zero(dim);
    for (p, bp) in basis.iter().enumerate() {
        // L_{B_p} e depends only on p, so share it across the row.
        let lme = bp.left_operator(e)?;
        if lme.is_zero() {
            continue;
        }
        for (q, bq) in basis.iter().enumerate() {
            let prod = bracket(&lme, bq)?;
            for (r, c) in prod.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    structure.set(p, q, r, c.clone());
                }
            }
        }
    }
    let labels = (0..dim)
        .map(|p| format!("B({},{},{})", p / (n * n) + 1, (p / n) % n + 1, p % n + 1))
        .collect();
    let name = format!("W({n})");
    let algebra = Algebra::new(name, labels, structure).map_err(|err| match err {
        AlgebraError::Dimension(d) => KantorError::Dimension(d),
        other => unreachable!("generated labels are consistent: {other}"),
    })?;
    Ok(WnAlgebra {
        n,
        e: e.to_vec(),
        algebra,
    })
}

fn kernel_maps(n: usize, echelon: &SparseEchelon) -> Vec<BilinearMap> {
    echelon
        .kernel_basis()
        .into_iter()
        .map(|v| BilinearMap::from_flat(n, v).expect("kernel vectors have n³ entries"))
        .collect()
}

fn symmetry_constraints(n: usize, echelon: &mut SparseEchelon) {
    let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
    for i in 0..n {
        for j in (i + 1)..n {
            for k in 0..n {
                let mut row = RowBuilder::new();
                row.add(idx(i, j, k), Rational::one());
                row.add(idx(j, i, k), Rational::from(-1));
                echelon.insert(row.finish());
            }
        }
    }
}

/// Basis of the commutative multiplications `t[i][j][k] = t[j][i][k]`.
pub fn symmetric_subspace(w: &WnAlgebra) -> Vec<BilinearMap> {
    let n = w.n;
    let mut echelon = SparseEchelon::new(n * n * n);
    symmetry_constraints(n, &mut echelon);
    kernel_maps(n, &echelon)
}

/// Basis of the commutative multiplications whose left multiplications are all
/// trace-free: `Σᵢ t[j][i][i] = 0` for every `j`.
pub fn trace_zero_subspace(w: &WnAlgebra) -> Vec<BilinearMap> {
    let n = w.n;
    let mut echelon = SparseEchelon::new(n * n * n);
    symmetry_constraints(n, &mut echelon);
    for j in 0..n {
        let mut row = RowBuilder::new();
        for i in 0..n {
            row.add((j * n + i) * n + i, Rational::one());
        }
        echelon.insert(row.finish());
    }
    kernel_maps(n, &echelon)
}

/// Exhaustive check that the Kantor product of any two basis elements of
/// `subspace` stays in its span.
pub fn is_closed_under_product(w: &WnAlgebra, subspace: &[BilinearMap]) -> Result<bool, ExactError> {
    let ambient = w.n.pow(3);
    let flat: Vec<Vec<Rational>> = subspace.iter().map(BilinearMap::flatten).collect();
    let mut products = Vec::with_capacity(subspace.len() * subspace.len());
    for a in subspace {
        for b in subspace {
            products.push(w.product(a, b)?.flatten());
        }
    }
    subspace_contains(&flat, &products, ambient)
}

/// Restricts a `W(n)` subspace to an algebra in its own basis, expressing each
/// product of basis elements in that basis. `None` if the span is not closed.
pub fn subalgebra(
    w: &WnAlgebra,
    subspace: &[BilinearMap],
    name: &str,
    label_prefix: &str,
) -> Result<Option<Algebra>, ExactError> {
    let k = subspace.len();
    let mut structure = BilinearMap::zero(k);
    for (p, a) in subspace.iter().enumerate() {
        for (q, b) in subspace.iter().enumerate() {
            let target = w.product(a, b)?.flatten();
            let mut sys = AffineSystem::new(k);
            for (row_idx, rhs) in target.iter().enumerate() {
                let mut row = RowBuilder::new();
                for (s, basis_map) in subspace.iter().enumerate() {
                    row.add_ref(s, &basis_map.coeffs()[row_idx]);
                }
                sys.add_equation(row, rhs);
            }
            let Some(coords) = sys.particular_solution() else {
                return Ok(None);
            };
            for (r, c) in coords.into_iter().enumerate() {
                structure.set(p, q, r, c);
            }
        }
    }
    let labels = (1..=k).map(|i| format!("{label_prefix}{i}")).collect();
    Ok(Some(
        Algebra::new(name, labels, structure).expect("generated labels are distinct"),
    ))
}

/// Right-hand side of the conservativity identity,
/// `[L_b, [L_a, P]](x, y)`, evaluated directly from products for checking.
fn conservativity_rhs(
    a: &Algebra,
    av: &[Rational],
    bv: &[Rational],
    x: &[Rational],
    y: &[Rational],
) -> Result<Vec<Rational>, AlgebraError> {
    let mul = |p: &[Rational], q: &[Rational]| a.multiply(p, q);
    let xy = mul(x, y)?;
    let ax = mul(av, x)?;
    let ay = mul(av, y)?;
    let bx = mul(bv, x)?;
    let by = mul(bv, y)?;
    // b(a(xy) - (ax)y - x(ay))
    let inner = sub(&sub(&mul(av, &xy)?, &mul(&ax, y)?), &mul(x, &ay)?);
    let mut total = mul(bv, &inner)?;
    // - a((bx)y) + (a(bx))y + (bx)(ay)
    total = sub(&total, &mul(av, &mul(&bx, y)?)?);
    total = add(&total, &mul(&mul(av, &bx)?, y)?);
    total = add(&total, &mul(&bx, &ay)?);
    // - a(x(by)) + (ax)(by) + x(a(by))
    total = sub(&total, &mul(av, &mul(x, &by)?)?);
    total = add(&total, &mul(&ax, &by)?);
    total = add(&total, &mul(x, &mul(av, &by)?)?);
    Ok(total)
}

/// Left-hand side `-f(xy) + (fx)y + x(fy)` for `f = F(a, b)`.
fn conservativity_lhs(
    a: &Algebra,
    f: &[Rational],
    x: &[Rational],
    y: &[Rational],
) -> Result<Vec<Rational>, AlgebraError> {
    let mul = |p: &[Rational], q: &[Rational]| a.multiply(p, q);
    let xy = mul(x, y)?;
    let mut total: Vec<Rational> = mul(f, &xy)?.into_iter().map(|c| -c).collect();
    total = add(&total, &mul(&mul(f, x)?, y)?);
    total = add(&total, &mul(x, &mul(f, y)?)?);
    Ok(total)
}

fn add(p: &[Rational], q: &[Rational]) -> Vec<Rational> {
    p.iter().zip(q).map(|(a, b)| a + b).collect()
}

fn sub(p: &[Rational], q: &[Rational]) -> Vec<Rational> {
    p.iter().zip(q).map(|(a, b)| a - b).collect()
}

/// Searches for an associated multiplication `F` making `A` conservative.
///
/// Instantiated at basis quadruples the identity is linear in the `m³`
/// coefficients of `F`, and for fixed `(a, b) = (e_p, e_q)` it only involves
/// the `m` coefficients of `F(e_p, e_q)`; the system is therefore solved block
/// by block: `-Σ_s f_s [L_{e_s}, P] = [L_{e_q}, [L_{e_p}, P]]`. Free
/// parameters are set to zero. The returned tensor is re-checked against the
/// identity evaluated directly from products.
pub fn find_associated_f(a: &Algebra) -> Result<Option<BilinearMap>, ExactError> {
    let m = a.dim();
    let p = a.structure();
    let left: Vec<RatMatrix> = (0..m)
        .map(|s| p.left_operator(&a.basis_vector(s)))
        .collect::<Result<_, _>>()?;
    let g: Vec<BilinearMap> = left
        .iter()
        .map(|l| bracket(l, p))
        .collect::<Result<_, _>>()?;
    let mut f = BilinearMap::zero(m);
    for ap in 0..m {
        for (bq, lb) in left.iter().enumerate() {
            let rhs = bracket(lb, &g[ap])?;
            let mut sys = AffineSystem::new(m);
            for idx in 0..m * m * m {
                let mut row = RowBuilder::new();
                for (s, gs) in g.iter().enumerate() {
                    row.add(s, -&gs.coeffs()[idx]);
                }
                if row.is_empty() && rhs.coeffs()[idx].is_zero() {
                    continue;
                }
                sys.add_equation(row, &rhs.coeffs()[idx]);
            }
            let Some(sol) = sys.particular_solution() else {
                return Ok(None);
            };
            for (k, c) in sol.into_iter().enumerate() {
                f.set(ap, bq, k, c);
            }
        }
    }
    Ok(Some(f))
}

/// Largest absolute residual of the conservativity identity over all basis
/// quadruples `(a, b, x, y)`, evaluated straight from products. Zero means `F`
/// certifies `A`.
pub fn conservativity_residual(a: &Algebra, f: &BilinearMap) -> Result<Rational, AlgebraError> {
    let m = a.dim();
    if f.dim() != m {
        return Err(ExactError::DimensionMismatch {
            expected: m,
            found: f.dim(),
        }
        .into());
    }
    let e: Vec<Vec<Rational>> = (0..m).map(|i| a.basis_vector(i)).collect();
    let mut worst = Rational::zero();
    for p in 0..m {
        for q in 0..m {
            let fab = f.basis_product(p, q).to_vec();
            for x in &e {
                for y in &e {
                    let lhs = conservativity_lhs(a, &fab, x, y)?;
                    let rhs = conservativity_rhs(a, &e[p], &e[q], x, y)?;
                    for (l, r) in lhs.iter().zip(&rhs) {
                        let d = (l - r).abs();
                        if d > worst {
                            worst = d;
                        }
                    }
                }
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from(x)).collect()
    }

    /// Evaluates `[M, N](u, v)` straight from the defining formula.
    fn bracket_oracle(m: &RatMatrix, n: &BilinearMap, u: &[Rational], w: &[Rational]) -> Vec<Rational> {
        let nuv = n.apply(u, w).unwrap();
        let mnuv = m.mul_vec(&nuv).unwrap();
        let a = n.apply(&m.mul_vec(u).unwrap(), w).unwrap();
        let b = n.apply(u, &m.mul_vec(w).unwrap()).unwrap();
        sub(&sub(&mnuv, &a), &b)
    }

    #[test]
    fn bracket_with_identity_negates() {
        let mut n = BilinearMap::zero(2);
        n.set(0, 1, 0, Rational::from(3));
        n.set(1, 1, 1, Rational::new(-2, 5));
        let out = bracket(&RatMatrix::identity(2), &n).unwrap();
        assert_eq!(out, n.scale(&Rational::from(-1)));
        assert!(bracket(&RatMatrix::zeros(2, 2), &n).unwrap().is_zero());
        assert!(bracket(&RatMatrix::identity(2), &BilinearMap::zero(2)).unwrap().is_zero());
    }

    #[test]
    fn bracket_e11_on_b111() {
        // M = E11, N = B(1,1,1): on (v1,v1): v1 - v1 - v1 = -v1, zero elsewhere.
        let mut m = RatMatrix::zeros(2, 2);
        m[(0, 0)] = Rational::one();
        let n = BilinearMap::elementary(2, 0, 0, 0);
        let out = bracket(&m, &n).unwrap();
        assert_eq!(out, n.scale(&Rational::from(-1)));
        for i in 0..2 {
            for j in 0..2 {
                let u = crate::algebra::unit(2, i);
                let w = crate::algebra::unit(2, j);
                assert_eq!(out.apply(&u, &w).unwrap(), bracket_oracle(&m, &n, &u, &w));
            }
        }
    }

    #[test]
    fn bracket_dimension_mismatch() {
        assert!(bracket(&RatMatrix::identity(3), &BilinearMap::zero(2)).is_err());
        assert!(kantor_product(&BilinearMap::zero(2), &BilinearMap::zero(3), &v(&[1, 0])).is_err());
    }

    #[test]
    fn kantor_product_zero_cases() {
        let n = BilinearMap::elementary(2, 1, 0, 1);
        let e = v(&[1, 0]);
        assert!(kantor_product(&BilinearMap::zero(2), &n, &e).unwrap().is_zero());
        assert!(kantor_product(&n, &BilinearMap::zero(2), &e).unwrap().is_zero());
    }

    #[test]
    fn kantor_product_with_identity_left_operator() {
        // M(v1, u) = u, so L_M v1 = id and M · N = -N.
        let mut m = BilinearMap::zero(2);
        m.set(0, 0, 0, Rational::one());
        m.set(0, 1, 1, Rational::one());
        let mut n = BilinearMap::zero(2);
        n.set(1, 0, 1, Rational::from(4));
        n.set(0, 0, 1, Rational::new(1, 3));
        let out = kantor_product(&m, &n, &v(&[1, 0])).unwrap();
        assert_eq!(out, n.scale(&Rational::from(-1)));
    }

    #[test]
    fn build_wn_dims_and_sample_product() {
        let w2 = build_wn(2, &v(&[1, 0])).unwrap();
        assert_eq!(w2.algebra().dim(), 8);
        let w1 = build_wn(1, &v(&[1])).unwrap();
        assert_eq!(w1.algebra().dim(), 1);
        let b111 = w2.basis_index(0, 0, 0);
        let prod = w2.algebra().basis_product(b111, b111);
        let mut expected = vec![Rational::zero(); 8];
        expected[b111] = Rational::from(-1);
        assert_eq!(prod, &expected[..]);
    }

    #[test]
    fn build_wn_rejects_zero_vector() {
        assert!(matches!(build_wn(2, &v(&[0, 0])), Err(KantorError::ZeroVector)));
        assert!(matches!(build_wn(0, &[]), Err(KantorError::EmptySpace)));
        assert!(build_wn(2, &v(&[1])).is_err());
    }

    #[test]
    fn subspace_dimensions() {
        let w2 = build_wn(2, &v(&[1, 0])).unwrap();
        assert_eq!(symmetric_subspace(&w2).len(), 6);
        assert_eq!(trace_zero_subspace(&w2).len(), 4);
        let w1 = build_wn(1, &v(&[1])).unwrap();
        assert_eq!(symmetric_subspace(&w1).len(), 1);
        let w3 = build_wn(3, &v(&[1, 0, 0])).unwrap();
        assert_eq!(symmetric_subspace(&w3).len(), 18);
        assert_eq!(trace_zero_subspace(&w3).len(), 15);
    }

    #[test]
    fn zero_product_algebra_has_zero_f() {
        let a = Algebra::zero_product(3);
        let f = find_associated_f(&a).unwrap().unwrap();
        assert!(f.is_zero());
        assert!(conservativity_residual(&a, &f).unwrap().is_zero());
    }
}
