//! Intertwiners between finitely correlated representations.
//!
//! An intertwiner `X` with `X S_i = S̃_i X` compresses to `V = P_{M̃} X|_M`, and
//! from `X = Σ S̃_i X S_i*` together with the `S*`-invariance of `M` and `M̃`
//! one gets `V = Σ_i Z̃_i† V Z_i`. The fixed points of this map are in
//! bijection with the intertwiners of the cyclic dilations.

use super::MatrixTuple;
use crate::error::{Error, Result};
use crate::linalg::{low_eigenspace, CMatrix};

/// Basis of `{V ∈ C^{d2 × d1} : Σ_i Z̃_i† V Z_i = V}` for `t1 = (Z_i)`, `t2 = (Z̃_i)`.
///
/// With column-major `vec`, the map is `T = Σ_i Z_iᵀ ⊗ Z̃_i†` and the space is
/// `ker(T − I)`.
pub fn intertwiner_space(t1: &MatrixTuple, t2: &MatrixTuple, tol: f64) -> Result<Vec<CMatrix>> {
    if t1.alphabet_size() != t2.alphabet_size() {
        return Err(Error::AlphabetMismatch { left: t1.alphabet_size(), right: t2.alphabet_size() });
    }
    let (d1, d2) = (t1.dim(), t2.dim());
    let size = d1 * d2;
    let mut t = -CMatrix::identity(size, size);
    for (z, zt) in t1.matrices().iter().zip(t2.matrices()) {
        t += z.transpose().kronecker(&zt.adjoint());
    }
    let kernel = low_eigenspace(&(t.adjoint() * &t), tol);
    Ok(kernel
        .column_iter()
        .map(|col| CMatrix::from_column_slice(d2, d1, col.as_slice()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs;
    use num_complex::Complex64;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn generic(z: &[Complex64]) -> MatrixTuple {
        MatrixTuple::generic(z).unwrap()
    }

    #[test]
    fn generic_examples() {
        let h = c(FRAC_1_SQRT_2, 0.0);
        let z = generic(&[h, h]);
        assert_eq!(intertwiner_space(&z, &z, 1e-10).unwrap().len(), 1);
        assert_eq!(intertwiner_space(&z, &generic(&[h, -h]), 1e-10).unwrap().len(), 0);
        // V ↦ conj(λ)·V has no nonzero fixed point unless λ = 1.
        let phase = Complex64::from_polar(1.0, 0.9);
        assert_eq!(intertwiner_space(&z, &generic(&[h * phase, h * phase]), 1e-10).unwrap().len(), 0);
        assert!(intertwiner_space(&z, &generic(&[h, h, c(0.0, 0.0)]), 1e-10).is_err());
    }

    #[test]
    fn fixed_points_satisfy_the_relation() {
        let a = generic(&[c(1.0, 0.0), c(0.0, 0.0)]);
        let b = generic(&[c(0.0, 0.0), c(1.0, 0.0)]);
        let sum = a.direct_sum(&b).unwrap();
        let space = intertwiner_space(&sum, &a, 1e-10).unwrap();
        assert_eq!(space.len(), 1);
        let v = &space[0];
        assert_eq!(v.shape(), (1, 2));
        assert!(v[(0, 1)].norm() < 1e-12);
        let image = sum
            .matrices()
            .iter()
            .zip(a.matrices())
            .fold(CMatrix::zeros(1, 2), |acc, (z, zt)| acc + zt.adjoint() * v * z);
        assert!(max_abs(&(image - v)) < 1e-12);
        assert_eq!(intertwiner_space(&sum, &sum, 1e-10).unwrap().len(), 2);
    }
}
