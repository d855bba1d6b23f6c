//! Small dense complex linear algebra on top of `nalgebra`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::scalar::Scalar;

pub type CMatrix = DMatrix<Complex64>;

/// Conjugate transpose, for any [`Scalar`].
pub fn adjoint<T: Scalar>(m: &DMatrix<T>) -> DMatrix<T> {
    DMatrix::from_fn(m.ncols(), m.nrows(), |i, j| m[(j, i)].conj())
}

pub fn identity<T: Scalar>(d: usize) -> DMatrix<T> {
    DMatrix::from_fn(d, d, |i, j| if i == j { T::one() } else { T::zero() })
}

pub fn zeros<T: Scalar>(rows: usize, cols: usize) -> DMatrix<T> {
    DMatrix::from_fn(rows, cols, |_, _| T::zero())
}

pub fn to_c64<T: Scalar>(m: &DMatrix<T>) -> CMatrix {
    m.map(|x| x.to_c64())
}

/// Largest entry modulus.
pub fn max_abs<T: Scalar>(m: &DMatrix<T>) -> f64 {
    m.iter().map(|x| x.to_c64().norm()).fold(0.0, f64::max)
}

/// Orthonormal eigenvectors of a hermitian matrix whose eigenvalues are at most `tol`.
pub fn low_eigenspace(h: &CMatrix, tol: f64) -> CMatrix {
    let d = h.nrows();
    if d == 0 {
        return CMatrix::zeros(0, 0);
    }
    let sym = (h + h.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..d).filter(|&k| eig.eigenvalues[k] <= tol).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let cols: Vec<_> = order.iter().map(|&k| eig.eigenvectors.column(k).into_owned()).collect();
    if cols.is_empty() {
        CMatrix::zeros(d, 0)
    } else {
        CMatrix::from_columns(&cols)
    }
}

/// Orthonormal basis of `ker a`, taken from the low spectrum of `a†a`.
pub fn kernel(a: &CMatrix, tol: f64) -> CMatrix {
    low_eigenspace(&(a.adjoint() * a), tol)
}

/// Orthonormal basis of the column space of `a`.
pub fn range(a: &CMatrix, tol: f64) -> CMatrix {
    let d = a.nrows();
    if d == 0 || a.ncols() == 0 {
        return CMatrix::zeros(d, 0);
    }
    let g = a * a.adjoint();
    let eig = g.symmetric_eigen();
    let mut order: Vec<usize> = (0..d).filter(|&k| eig.eigenvalues[k] > tol).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[y].total_cmp(&eig.eigenvalues[x]));
    let cols: Vec<_> = order.iter().map(|&k| eig.eigenvectors.column(k).into_owned()).collect();
    if cols.is_empty() {
        CMatrix::zeros(d, 0)
    } else {
        CMatrix::from_columns(&cols)
    }
}

/// Eigenvalues of a square complex matrix via the Schur form.
pub fn eigenvalues(m: &CMatrix) -> Vec<Complex64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let t = m.clone().schur().unpack().1;
    (0..m.nrows()).map(|k| t[(k, k)]).collect()
}

/// `‖U†U − I‖_max`.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    max_abs(&(u.adjoint() * u - CMatrix::identity(u.ncols(), u.ncols())))
}

/// Spectral norm.
pub fn operator_norm(m: &CMatrix) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    let g = m.adjoint() * m;
    g.symmetric_eigen().eigenvalues.iter().fold(0.0f64, |a, &b| a.max(b)).max(0.0).sqrt()
}
