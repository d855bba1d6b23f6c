//! Generalized Walsh representations on `L²[0, 1)`.
//!
//! An `N × N` unitary `A` with constant first row `1/√N` gives the step
//! filters `m_i = √N Σ_j a_ij χ_[j/N, (j+1)/N)` and the isometries
//! `S_i f = m_i · (f ∘ R)` with `R(x) = Nx mod 1`. Step functions on `N`-adic
//! grids are closed under `S_i` and `S_i*`, so with an exact scalar field
//! every identity below is checked exactly.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::classify::{AtomicRepDescriptor, OrbitEntry, SPECTRUM_TOL};
use crate::error::{Error, Result};
use crate::exact::{radicand_of, Surd};
use crate::fincorr::MatrixTuple;
use crate::linalg::{adjoint, identity, max_abs};
use crate::scalar::Scalar;
use crate::wire::{matrix_rows, MatrixWire};
use crate::words::{EventuallyPeriodicWord, FiniteWord};

/// A function on `[0, 1)` constant on each `[j/N^k, (j+1)/N^k)`, kept at its least level.
#[derive(Clone, Debug, PartialEq)]
pub struct StepFunction<T: Scalar = Complex64> {
    n: usize,
    level: u32,
    values: Vec<T>,
}

impl<T: Scalar> StepFunction<T> {
    pub fn new(n: usize, values: Vec<T>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidAlphabet(n));
        }
        let mut level = 0;
        let mut size = 1;
        while size < values.len() {
            size *= n;
            level += 1;
        }
        if size != values.len() {
            return Err(Error::DimensionMismatch(format!("{} values is not a power of {n}", values.len())));
        }
        Ok(Self { n, level, values }.canonical())
    }

    pub fn constant(n: usize, value: T) -> Result<Self> {
        Self::new(n, vec![value])
    }

    pub fn alphabet_size(&self) -> usize {
        self.n
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    fn canonical(mut self) -> Self {
        while self.level > 0 && self.values.chunks(self.n).all(|c| c.iter().all(|v| *v == c[0])) {
            self.values = self.values.chunks(self.n).map(|c| c[0].clone()).collect();
            self.level -= 1;
        }
        self
    }

    /// The same function on the finer grid of `level`.
    pub fn refined(&self, level: u32) -> Vec<T> {
        let repeat = self.n.pow(level.saturating_sub(self.level));
        self.values.iter().flat_map(|v| std::iter::repeat_n(v.clone(), repeat)).collect()
    }

    /// `∫ f · conj(g)`.
    pub fn inner(&self, other: &Self) -> T {
        let level = self.level.max(other.level);
        let sum = self
            .refined(level)
            .into_iter()
            .zip(other.refined(level))
            .fold(T::zero(), |acc, (a, b)| acc + a * b.conj());
        sum * T::from_ratio(1, self.n.pow(level) as i64)
    }

    fn combine(&self, other: &Self, op: impl Fn(T, T) -> T) -> Self {
        let level = self.level.max(other.level);
        let values = self.refined(level).into_iter().zip(other.refined(level)).map(|(a, b)| op(a, b)).collect();
        Self { n: self.n, level, values }.canonical()
    }

    pub fn sum(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.near_zero(0.0))
    }

    pub fn to_c64(&self) -> StepFunction<Complex64> {
        StepFunction { n: self.n, level: self.level, values: self.values.iter().map(Scalar::to_c64).collect() }
    }
}

/// An `N × N` unitary whose first row is constant `1/√N`.
#[derive(Clone, Debug, PartialEq)]
pub struct WalshMatrix<T: Scalar = Complex64> {
    a: DMatrix<T>,
    filters: Vec<StepFunction<T>>,
}

impl<T: Scalar> WalshMatrix<T> {
    /// Checks unitarity and the first row within `tol` (structurally for exact scalars).
    pub fn new(a: DMatrix<T>, tol: f64) -> Result<Self> {
        let n = a.nrows();
        if n < 2 {
            return Err(Error::InvalidAlphabet(n));
        }
        if a.ncols() != n {
            return Err(Error::DimensionMismatch(format!("A is {}×{}", n, a.ncols())));
        }
        let defect = adjoint(&a) * &a - identity::<T>(n);
        if !defect.iter().all(|x| x.near_zero(tol)) {
            return Err(Error::NotUnitary { deviation: max_abs(&defect) });
        }
        let inv_n = T::from_ratio(1, n as i64);
        let first = a[(0, 0)].clone();
        let constant = (0..n).all(|j| a[(0, j)].near(&first, tol));
        if !constant || !(first.clone() * first.clone()).near(&inv_n, tol) || first.to_c64().re <= 0.0 {
            return Err(Error::FirstRowNotConstant);
        }
        let sqrt_n = T::sqrt_int(n as u64)
            .ok_or_else(|| Error::NotRepresentable(format!("√{n} in the scalar field")))?;
        let filters = (0..n)
            .map(|i| StepFunction::new(n, (0..n).map(|j| sqrt_n.clone() * a[(i, j)].clone()).collect()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { a, filters })
    }

    pub fn alphabet_size(&self) -> usize {
        self.a.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<T> {
        &self.a
    }

    /// `m_0, ..., m_{N-1}`; `m_0 ≡ 1`.
    pub fn build_filters(&self) -> &[StepFunction<T>] {
        &self.filters
    }

    fn check_input(&self, i: usize, f: &StepFunction<T>) -> Result<()> {
        let n = self.alphabet_size();
        if i >= n {
            return Err(Error::LetterOutOfRange { letter: i, alphabet: n });
        }
        if f.n != n {
            return Err(Error::AlphabetMismatch { left: n, right: f.n });
        }
        Ok(())
    }

    /// `S_i f = m_i · (f ∘ R)`.
    pub fn apply_s(&self, i: usize, f: &StepFunction<T>) -> Result<StepFunction<T>> {
        self.check_input(i, f)?;
        let block = f.values.len();
        let m = &self.filters[i].refined(1);
        let values = (0..block * f.n).map(|j| f.values[j % block].clone() * m[j / block].clone()).collect();
        Ok(StepFunction { n: f.n, level: f.level + 1, values }.canonical())
    }

    /// `(S_i* f)(x) = (1/N) Σ_{R(y) = x} conj(m_i(y)) f(y)`.
    pub fn apply_s_adjoint(&self, i: usize, f: &StepFunction<T>) -> Result<StepFunction<T>> {
        self.check_input(i, f)?;
        let n = f.n;
        let level = f.level.max(1);
        let fine = f.refined(level);
        let block = n.pow(level - 1);
        let m = self.filters[i].refined(1);
        let inv_n = T::from_ratio(1, n as i64);
        let values = (0..block)
            .map(|j| (0..n).fold(T::zero(), |acc, r| acc + m[r].conj() * fine[r * block + j].clone()) * inv_n.clone())
            .collect();
        Ok(StepFunction { n, level: level - 1, values }.canonical())
    }

    /// `S_w 1 = S_{w_0} S_{w_1} ··· S_{w_{p-1}} 1`.
    pub fn word_function(&self, w: &FiniteWord) -> Result<StepFunction<T>> {
        if w.alphabet_size() != self.alphabet_size() {
            return Err(Error::AlphabetMismatch { left: self.alphabet_size(), right: w.alphabet_size() });
        }
        w.letters().iter().rev().try_fold(StepFunction::constant(self.alphabet_size(), T::one())?, |f, &i| self.apply_s(i, &f))
    }

    /// `(⟨S_w 1, S_{w'} 1⟩)_{w, w'}`.
    pub fn gram_check(&self, words: &[FiniteWord]) -> Result<DMatrix<T>> {
        let functions = words.iter().map(|w| self.word_function(w)).collect::<Result<Vec<_>>>()?;
        let k = words.len();
        let mut gram = DMatrix::from_fn(k, k, |_, _| T::zero());
        for r in 0..k {
            for c in r..k {
                let v = functions[r].inner(&functions[c]);
                gram[(c, r)] = v.conj();
                gram[(r, c)] = v;
            }
        }
        Ok(gram)
    }

    /// The matrices `⟨S_i* 1, 1⟩` of the compression to `M = span{1}`.
    pub fn compressed_tuple(&self) -> Result<MatrixTuple<T>> {
        let one = StepFunction::constant(self.alphabet_size(), T::one())?;
        let z = (0..self.alphabet_size())
            .map(|i| self.apply_s_adjoint(i, &one).map(|f| f.inner(&one)))
            .collect::<Result<Vec<_>>>()?;
        MatrixTuple::generic(&z)
    }

    /// The single orbit `(0)^∞` with cycle unitary `[1]`, from `S_0 1 = 1`.
    pub fn descriptor(&self) -> Result<AtomicRepDescriptor> {
        let n = self.alphabet_size();
        let one = StepFunction::constant(n, T::one())?;
        if !self.apply_s(0, &one)?.difference(&one).values().iter().all(|v| v.near_zero(SPECTRUM_TOL)) {
            return Err(Error::InvalidDescriptor("S_0 1 differs from 1".into()));
        }
        let rep = EventuallyPeriodicWord::cyclic(&FiniteWord::new(n, vec![0])?)?;
        AtomicRepDescriptor::new(n, vec![OrbitEntry::new(&rep, vec![Complex64::new(1.0, 0.0)])?])
    }
}

/// Words of length `<= max_len` that are empty or end in a nonzero letter.
pub fn basis_words(n: usize, max_len: usize) -> Result<Vec<FiniteWord>> {
    let mut out = vec![FiniteWord::empty(n)?];
    for len in 1..=max_len {
        out.extend(FiniteWord::all_of_length(n, len)?.into_iter().filter(|w| w.letters()[len - 1] != 0));
    }
    Ok(out)
}

impl WalshMatrix<Complex64> {
    pub fn radicand_hint(&self) -> Option<u64> {
        let values: Vec<f64> = self.a.iter().flat_map(|c| [c.re, c.im]).collect();
        radicand_of(&values)
    }

    pub fn to_exact<const R: u64>(&self) -> Result<WalshMatrix<Surd<R>>> {
        let n = self.alphabet_size();
        let entries = self
            .a
            .iter()
            .map(|&z| Surd::<R>::from_c64(z).ok_or_else(|| Error::NotRepresentable(format!("{z}"))))
            .collect::<Result<Vec<_>>>()?;
        WalshMatrix::new(DMatrix::from_vec(n, n, entries), 0.0)
    }
}

#[derive(Serialize, Deserialize)]
struct WalshWire {
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "A")]
    a: MatrixWire,
}

/// Tolerance applied when a matrix is read from JSON.
pub const WIRE_TOL: f64 = 1e-9;

impl Serialize for WalshMatrix<Complex64> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WalshWire { n: self.alphabet_size(), a: MatrixWire::Rows(matrix_rows(&self.a)) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WalshMatrix<Complex64> {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = WalshWire::deserialize(de)?;
        let entries = w.a.entries(w.n, w.n).ok_or_else(|| D::Error::custom(format!("A: expected a {0}×{0} matrix", w.n)))?;
        WalshMatrix::new(DMatrix::from_row_slice(w.n, w.n, &entries), WIRE_TOL).map_err(D::Error::custom)
    }
}
