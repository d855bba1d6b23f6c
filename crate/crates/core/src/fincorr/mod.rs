//! Finitely correlated representation data.
//!
//! A [`MatrixTuple`] holds the matrices `Z_l` of `S_l*` restricted to a
//! finite-dimensional subspace `M` invariant under every `S_l*`, in a fixed
//! orthonormal basis of `M`. Coordinates act as columns: the coordinates of
//! `S_l* v` are `Z_l` times the coordinates of `v`. Consequently
//! `Σ Z_l† Z_l = I`, and the matrix of `S_I* = S_{i_p}*···S_{i_1}*` is the
//! reversed product `W_I = Z_{i_p}···Z_{i_1}`. The cylinder measure
//! compressed to `M` is `μ_M(C(I)) = W_I† W_I`; this ordering was fixed by
//! comparing against explicit truncated dilations (see the integration tests).
//!
//! Some results used elsewhere state the isometry relation transposed,
//! `Σ Z_l Z_l† = I`; the two forms are exchanged by replacing each `Z_l` by
//! its transpose.
//!
//! Infinite-dimensional phenomena (for example invariant subspaces without
//! finite-dimensional pieces) are outside the reach of this module; every
//! computation here is on `M` itself.

mod atoms;
mod intertwiner;
mod report;

pub use atoms::{atomic_mass, atomic_mass_matrix, find_cycle_atoms, unitary_part, CycleAtom};
pub use intertwiner::intertwiner_space;
pub use report::{classify, ClassificationReport, Verdict};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{radicand_of, Surd};
use crate::linalg::{adjoint, identity, max_abs, zeros};
use crate::scalar::Scalar;
use crate::wire::{matrix_flat, MatrixWire};
use crate::words::FiniteWord;

/// `N` matrices `Z_0, ..., Z_{N-1}` of size `d × d`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixTuple<T: Scalar = Complex64> {
    n: usize,
    d: usize,
    z: Vec<DMatrix<T>>,
}

/// Outcome of [`MatrixTuple::validate`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Validation {
    pub valid: bool,
    /// `‖Σ Z_l† Z_l − I‖_max`.
    pub deviation: f64,
}

impl<T: Scalar> MatrixTuple<T> {
    pub fn new(z: Vec<DMatrix<T>>) -> Result<Self> {
        let n = z.len();
        if n < 2 {
            return Err(Error::InvalidAlphabet(n));
        }
        let d = z[0].nrows();
        if d == 0 {
            return Err(Error::DimensionMismatch("dimension d must be at least 1".into()));
        }
        if let Some((l, m)) = z.iter().enumerate().find(|(_, m)| m.shape() != (d, d)) {
            return Err(Error::DimensionMismatch(format!(
                "Z_{l} has shape {:?}, expected ({d}, {d})",
                m.shape()
            )));
        }
        Ok(Self { n, d, z })
    }

    /// The one-dimensional tuple `S_i* ψ = z_i ψ`.
    pub fn generic(z: &[T]) -> Result<Self> {
        Self::new(z.iter().map(|x| DMatrix::from_element(1, 1, x.clone())).collect())
    }

    pub fn alphabet_size(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn matrices(&self) -> &[DMatrix<T>] {
        &self.z
    }

    pub fn matrix(&self, l: usize) -> &DMatrix<T> {
        &self.z[l]
    }

    /// Checks `Σ Z_l† Z_l = I` entrywise within `tol` (exactly for exact scalars).
    pub fn validate(&self, tol: f64) -> Validation {
        let mut sum = zeros::<T>(self.d, self.d);
        for z in &self.z {
            sum += adjoint(z) * z;
        }
        let defect = sum - identity::<T>(self.d);
        Validation { valid: defect.iter().all(|x| x.near_zero(tol)), deviation: max_abs(&defect) }
    }

    fn check_word(&self, w: &FiniteWord) -> Result<()> {
        if w.alphabet_size() != self.n {
            return Err(Error::AlphabetMismatch { left: self.n, right: w.alphabet_size() });
        }
        Ok(())
    }

    /// `W_I = Z_{i_p}···Z_{i_1}`, the matrix of `S_I*` on `M`.
    pub fn word_operator(&self, word: &FiniteWord) -> Result<DMatrix<T>> {
        self.check_word(word)?;
        let mut w = identity::<T>(self.d);
        for &l in word.letters() {
            w = &self.z[l] * w;
        }
        Ok(w)
    }

    /// `μ_M(C(I)) = W_I† W_I`.
    pub fn cylinder_measure(&self, word: &FiniteWord) -> Result<DMatrix<T>> {
        let w = self.word_operator(word)?;
        Ok(adjoint(&w) * w)
    }

    /// `Σ_{|I| = |ξ|} ⟨I, ξ⟩ μ_M(C(I))`, the compression of `U(ξ)` to `M`.
    pub fn compressed_character_operator(&self, xi: &FiniteWord) -> Result<DMatrix<T>> {
        self.check_word(xi)?;
        let n = self.n as u64;
        let mut x = identity::<T>(self.d);
        for &k in xi.letters().iter().rev() {
            let mut next = zeros::<T>(self.d, self.d);
            for (l, z) in self.z.iter().enumerate() {
                let phase = T::root_of_unity((l * k) as i64, n).ok_or_else(|| {
                    Error::NotRepresentable(format!("exp(2πi·{}/{n})", l * k))
                })?;
                next += (adjoint(z) * &x * z).map(|e| e * phase.clone());
            }
            x = next;
        }
        Ok(x)
    }
}

impl MatrixTuple<Complex64> {
    /// Radicand `R` such that every entry is recognised in `Q(i)(√R)`; `None`
    /// when some entry is not recognised. Purely rational data reports `2`.
    pub fn radicand_hint(&self) -> Option<u64> {
        let values: Vec<f64> = self.z.iter().flat_map(|m| m.iter()).flat_map(|c| [c.re, c.im]).collect();
        radicand_of(&values)
    }

    /// Exact copy in `Q(i)(√R)`, if every entry is recognised there.
    pub fn to_exact<const R: u64>(&self) -> Option<MatrixTuple<Surd<R>>> {
        let z = self
            .z
            .iter()
            .map(|m| {
                let entries: Option<Vec<Surd<R>>> = m.iter().map(|&c| Surd::<R>::from_c64(c)).collect();
                entries.map(|e| DMatrix::from_vec(m.nrows(), m.ncols(), e))
            })
            .collect::<Option<Vec<_>>>()?;
        Some(MatrixTuple { n: self.n, d: self.d, z })
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::AlphabetMismatch { left: self.n, right: other.n });
        }
        let d = self.d + other.d;
        let z = self
            .z
            .iter()
            .zip(&other.z)
            .map(|(a, b)| {
                let mut m = DMatrix::zeros(d, d);
                m.view_mut((0, 0), (self.d, self.d)).copy_from(a);
                m.view_mut((self.d, self.d), (other.d, other.d)).copy_from(b);
                m
            })
            .collect();
        Self::new(z)
    }

    /// The same data in the basis given by the columns of the unitary `q`:
    /// `Z_l ↦ q† Z_l q`.
    pub fn conjugated(&self, q: &DMatrix<Complex64>) -> Result<Self> {
        if q.shape() != (self.d, self.d) {
            return Err(Error::DimensionMismatch(format!("basis change must be {0}×{0}", self.d)));
        }
        Self::new(self.z.iter().map(|z| q.adjoint() * z * q).collect())
    }
}

impl<const R: u64> MatrixTuple<Surd<R>> {
    pub fn to_c64(&self) -> MatrixTuple<Complex64> {
        MatrixTuple { n: self.n, d: self.d, z: self.z.iter().map(crate::linalg::to_c64).collect() }
    }
}

/// `Π_k |z_{i_k}|²`, the product-measure mass of `C(I)` for a one-dimensional tuple.
pub fn generic_cylinder_measure(z: &[Complex64], word: &FiniteWord, tol: f64) -> Result<f64> {
    if z.len() != word.alphabet_size() {
        return Err(Error::AlphabetMismatch { left: z.len(), right: word.alphabet_size() });
    }
    let norm_sq: f64 = z.iter().map(|c| c.norm_sqr()).sum();
    if (norm_sq - 1.0).abs() > tol {
        return Err(Error::Unnormalized { norm_sq });
    }
    Ok(word.letters().iter().map(|&l| z[l].norm_sqr()).product())
}

#[derive(Serialize, Deserialize)]
struct TupleWire {
    #[serde(rename = "N")]
    n: usize,
    d: usize,
    #[serde(rename = "Z")]
    z: Vec<MatrixWire>,
}

impl Serialize for MatrixTuple<Complex64> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TupleWire { n: self.n, d: self.d, z: self.z.iter().map(|m| MatrixWire::Flat(matrix_flat(m))).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MatrixTuple<Complex64> {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = TupleWire::deserialize(de)?;
        if w.z.len() != w.n {
            return Err(D::Error::custom(format!("Z: expected {} matrices, found {}", w.n, w.z.len())));
        }
        let z = w
            .z
            .iter()
            .enumerate()
            .map(|(l, m)| {
                m.entries(w.d, w.d)
                    .map(|e| DMatrix::from_row_slice(w.d, w.d, &e))
                    .ok_or_else(|| D::Error::custom(format!("Z[{l}]: expected a {0}×{0} matrix", w.d)))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        MatrixTuple::new(z).map_err(D::Error::custom)
    }
}
