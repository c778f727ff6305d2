//! Biderivations: bilinear `δ` with
//! `δ(xy, z) = xδ(y, z) + δ(x, z)y` and `δ(x, yz) = yδ(x, z) + δ(x, y)z`.
//!
//! Unknowns are `b[i][j][k]` (`δ(eᵢ, eⱼ) = Σₖ b[i][j][k] eₖ`), flattened
//! index-lexicographically; equations run over `(identity, i, j, l, k)`.

use crate::algebra::{unit, Algebra};
use crate::bilinear::BilinearMap;
use crate::derivations::derivation_space;
use crate::exactnum::{
    span_rank, subspace_contains, subspace_equal, ExactError, RatMatrix, Rational, RowBuilder,
    SparseEchelon,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Symmetry {
    Any,
    Symmetric,
    Skew,
}

fn solve(a: &Algebra, symmetry: Symmetry) -> Vec<BilinearMap> {
    let m = a.dim();
    let var = |i: usize, j: usize, k: usize| (i * m + j) * m + k;
    let one = Rational::one();
    let mut echelon = SparseEchelon::new(m * m * m);

    match symmetry {
        Symmetry::Any => {}
        Symmetry::Symmetric | Symmetry::Skew => {
            let sign = if symmetry == Symmetry::Symmetric {
                Rational::from(-1)
            } else {
                Rational::one()
            };
            for i in 0..m {
                for j in i..m {
                    for k in 0..m {
                        let mut row = RowBuilder::new();
                        row.add(var(i, j, k), one.clone());
                        row.add(var(j, i, k), sign.clone());
                        echelon.insert(row.finish());
                    }
                }
            }
        }
    }

    // δ(eᵢeⱼ, e_l) - eᵢδ(eⱼ, e_l) - δ(eᵢ, e_l)eⱼ = 0
    for i in 0..m {
        for j in 0..m {
            for l in 0..m {
                for k in 0..m {
                    let mut row = RowBuilder::new();
                    for (s, c) in a.basis_product(i, j).iter().enumerate() {
                        row.add_ref(var(s, l, k), c);
                    }
                    for r in 0..m {
                        let c = &a.basis_product(i, r)[k];
                        row.add(var(j, l, r), -c);
                        let c = &a.basis_product(r, j)[k];
                        row.add(var(i, l, r), -c);
                    }
                    echelon.insert(row.finish());
                }
            }
        }
    }
    // δ(eᵢ, eⱼe_l) - eⱼδ(eᵢ, e_l) - δ(eᵢ, eⱼ)e_l = 0
    for i in 0..m {
        for j in 0..m {
            for l in 0..m {
                for k in 0..m {
                    let mut row = RowBuilder::new();
                    for (s, c) in a.basis_product(j, l).iter().enumerate() {
                        row.add_ref(var(i, s, k), c);
                    }
                    for r in 0..m {
                        let c = &a.basis_product(j, r)[k];
                        row.add(var(i, l, r), -c);
                        let c = &a.basis_product(r, l)[k];
                        row.add(var(i, j, r), -c);
                    }
                    echelon.insert(row.finish());
                }
            }
        }
    }

    echelon
        .kernel_basis()
        .into_iter()
        .map(|v| BilinearMap::from_flat(m, v).expect("m³ unknowns"))
        .collect()
}

/// Canonical basis of `BDer(A)`.
pub fn biderivation_space(a: &Algebra) -> Vec<BilinearMap> {
    solve(a, Symmetry::Any)
}

/// Canonical basis of the symmetric biderivations `BDer₊(A)`.
pub fn symmetric_biderivation_space(a: &Algebra) -> Vec<BilinearMap> {
    solve(a, Symmetry::Symmetric)
}

/// Canonical basis of the skew-symmetric biderivations `BDer₋(A)`.
pub fn skew_biderivation_space(a: &Algebra) -> Vec<BilinearMap> {
    solve(a, Symmetry::Skew)
}

/// `δ⁺(x, y) = δ(x, y) + δ(y, x)` and `δ⁻(x, y) = δ(x, y) - δ(y, x)`.
pub fn split_symmetric(candidate: &BilinearMap) -> (BilinearMap, BilinearMap) {
    let swapped = candidate.swapped();
    let plus = candidate.add(&swapped).expect("same dimension");
    let minus = candidate.sub(&swapped).expect("same dimension");
    (plus, minus)
}

/// Checks both defining identities at every basis triple by direct evaluation.
pub fn is_biderivation(a: &Algebra, delta: &BilinearMap) -> Result<bool, ExactError> {
    let m = a.dim();
    if delta.dim() != m {
        return Err(ExactError::DimensionMismatch {
            expected: m,
            found: delta.dim(),
        });
    }
    let p = a.structure();
    let e: Vec<Vec<Rational>> = (0..m).map(|i| unit(m, i)).collect();
    let add = |u: Vec<Rational>, v: Vec<Rational>| -> Vec<Rational> {
        u.into_iter().zip(v).map(|(x, y)| x + y).collect()
    };
    for x in &e {
        for y in &e {
            for z in &e {
                let xy = p.apply(x, y)?;
                let lhs = delta.apply(&xy, z)?;
                let rhs = add(p.apply(x, &delta.apply(y, z)?)?, p.apply(&delta.apply(x, z)?, y)?);
                if lhs != rhs {
                    return Ok(false);
                }
                let yz = p.apply(y, z)?;
                let lhs = delta.apply(x, &yz)?;
                let rhs = add(p.apply(y, &delta.apply(x, z)?)?, p.apply(&delta.apply(x, y)?, z)?);
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn flat(ts: &[BilinearMap]) -> Vec<Vec<Rational>> {
    ts.iter().map(BilinearMap::flatten).collect()
}

/// `BDer = BDer₊ ⊕ BDer₋`: dimensions add up, the two parts meet trivially,
/// and together they span `BDer`.
pub fn direct_sum_check(a: &Algebra) -> bool {
    let ambient = a.dim().pow(3);
    let all = flat(&biderivation_space(a));
    let plus = flat(&symmetric_biderivation_space(a));
    let minus = flat(&skew_biderivation_space(a));
    if all.len() != plus.len() + minus.len() {
        return false;
    }
    let joint: Vec<Vec<Rational>> = plus.iter().chain(&minus).cloned().collect();
    let independent = span_rank(&joint, ambient).expect("same ambient") == plus.len() + minus.len();
    independent && subspace_equal(&joint, &all, ambient).expect("same ambient")
}

/// Slice `x ↦ δ(eᵢ, x)` as a matrix (column `j` = `δ(eᵢ, eⱼ)`).
pub fn left_slice(delta: &BilinearMap, i: usize) -> RatMatrix {
    delta
        .left_operator(&unit(delta.dim(), i))
        .expect("basis vector has the right length")
}

/// Slice `x ↦ δ(x, e_l)` as a matrix.
pub fn right_slice(delta: &BilinearMap, l: usize) -> RatMatrix {
    delta
        .swapped()
        .left_operator(&unit(delta.dim(), l))
        .expect("basis vector has the right length")
}

/// Cross-check through the derivation algebra: every one-sided slice of each
/// biderivation must lie in `Der(A)`.
pub fn slices_are_derivations(a: &Algebra, biderivations: &[BilinearMap]) -> bool {
    let m = a.dim();
    let der: Vec<Vec<Rational>> = derivation_space(a).iter().map(RatMatrix::flatten).collect();
    let mut slices = Vec::new();
    for delta in biderivations {
        for i in 0..m {
            slices.push(left_slice(delta, i).flatten());
            slices.push(right_slice(delta, i).flatten());
        }
    }
    subspace_contains(&der, &slices, m * m).expect("same ambient")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_algebra_all_tensors() {
        for m in 1..=3 {
            let a = Algebra::zero_product(m);
            assert_eq!(biderivation_space(&a).len(), m * m * m);
            assert_eq!(symmetric_biderivation_space(&a).len(), m * m * (m + 1) / 2);
            assert_eq!(skew_biderivation_space(&a).len(), m * m * (m - 1) / 2);
            assert!(direct_sum_check(&a));
        }
    }

    #[test]
    fn split_examples() {
        let mut b = BilinearMap::zero(2);
        b.set(0, 1, 0, Rational::one());
        let (plus, minus) = split_symmetric(&b);
        let mut expected_plus = BilinearMap::zero(2);
        expected_plus.set(0, 1, 0, Rational::one());
        expected_plus.set(1, 0, 0, Rational::one());
        let mut expected_minus = BilinearMap::zero(2);
        expected_minus.set(0, 1, 0, Rational::one());
        expected_minus.set(1, 0, 0, Rational::from(-1));
        assert_eq!(plus, expected_plus);
        assert_eq!(minus, expected_minus);

        let two = Rational::from(2);
        let (p, q) = split_symmetric(&expected_plus);
        assert_eq!(p, expected_plus.scale(&two));
        assert!(q.is_zero());
        let (p, q) = split_symmetric(&expected_minus);
        assert!(p.is_zero());
        assert_eq!(q, expected_minus.scale(&two));
    }

    #[test]
    fn solutions_satisfy_both_identities() {
        // One-dimensional algebra with e·e = 0 plus a nilpotent 2-dim one.
        let mut s = BilinearMap::zero(2);
        s.set(0, 0, 1, Rational::one());
        let a = Algebra::with_default_labels("nil2", s);
        let space = biderivation_space(&a);
        assert!(!space.is_empty());
        for t in &space {
            assert!(is_biderivation(&a, t).unwrap());
        }
        assert!(slices_are_derivations(&a, &space));
        assert!(direct_sum_check(&a));
    }

    #[test]
    fn non_biderivation_detected() {
        let mut s = BilinearMap::zero(1);
        s.set(0, 0, 0, Rational::one());
        let a = Algebra::with_default_labels("field", s);
        // δ(e, e) = e fails: δ(ee, e) = e but eδ(e,e) + δ(e,e)e = 2e.
        assert!(!is_biderivation(&a, &BilinearMap::elementary(1, 0, 0, 0)).unwrap());
        assert!(biderivation_space(&a).is_empty());
    }
}
