//! QMF filter banks and the atoms of their wavelet representations.
//!
//! A filter bank `(m_i)` on the circle defines `S_i f(z) = m_i(z) f(z^N)` on
//! `L²(T)`. Its adjoints act on monomials by
//! `S_l* z^h = Σ_{k ≡ h (mod N)} conj(a_{l,k}) z^{(h−k)/N}`, so the span of
//! finitely many monomials can be invariant and the representation is then
//! finitely correlated. The function space itself is never built: every
//! question here is decided on exponents.

mod laurent;

pub use laurent::LaurentPolynomial;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::classify::{merge, AtomicRepDescriptor, OrbitEntry};
use crate::error::{Error, Result};
use crate::exact::{radicand_of, Surd};
use crate::fincorr::MatrixTuple;
use crate::scalar::Scalar;
use crate::wire::Pair;
use crate::words::{EventuallyPeriodicWord, FiniteWord};

/// `N` Laurent polynomials `m_0, ..., m_{N-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FilterBank<T: Scalar = Complex64> {
    n: usize,
    filters: Vec<LaurentPolynomial<T>>,
}

/// A failed instance of the QMF identity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QmfViolation {
    pub i: usize,
    pub j: usize,
    pub exponent: i64,
    pub value: Pair,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QmfReport {
    pub ok: bool,
    pub violations: Vec<QmfViolation>,
}

/// An atom of the wavelet representation given by a cycle of monomial filters.
#[derive(Clone, Debug, PartialEq)]
pub struct AtomCertificate<T: Scalar = Complex64> {
    /// `I = i_0 ... i_{p-1}`, in its least rotation.
    pub cycle: FiniteWord,
    /// `k_{i_j}` for each letter of the cycle.
    pub exponents: Vec<i64>,
    /// `l = Σ_j N^j k_{i_j}`.
    pub l: i64,
    /// `d = l / (1 − N^p)`; the atom is spanned by `z^d`.
    pub d: i64,
    /// `λ = Π_j a_{i_j}`, with `S_I z^d = λ z^d`.
    pub lambda: T,
}

impl<T: Scalar> FilterBank<T> {
    pub fn new(filters: Vec<LaurentPolynomial<T>>) -> Result<Self> {
        let n = filters.len();
        if n < 2 {
            return Err(Error::InvalidAlphabet(n));
        }
        Ok(Self { n, filters })
    }

    pub fn alphabet_size(&self) -> usize {
        self.n
    }

    pub fn filters(&self) -> &[LaurentPolynomial<T>] {
        &self.filters
    }

    /// Checks `Σ_{N | k} (m_i · m̃_j)_k z^{k/N} = δ_ij`, where `m̃_j` is the conjugate reflection of `m_j`.
    pub fn qmf_check(&self, tol: f64) -> QmfReport {
        let n = self.n as i64;
        let mut violations = Vec::new();
        for (i, mi) in self.filters.iter().enumerate() {
            for (j, mj) in self.filters.iter().enumerate() {
                let mut q = (mi * &mj.conj_reflect()).downsample(n);
                if i == j {
                    q = &q + &LaurentPolynomial::monomial(-T::one(), 0);
                }
                for (&exponent, value) in q.coeffs() {
                    if !value.near_zero(tol) {
                        violations.push(QmfViolation { i, j, exponent, value: Pair(value.to_c64()) });
                    }
                }
            }
        }
        QmfReport { ok: violations.is_empty(), violations }
    }

    fn check_letter(&self, l: usize) -> Result<()> {
        if l >= self.n {
            return Err(Error::LetterOutOfRange { letter: l, alphabet: self.n });
        }
        Ok(())
    }

    /// Coefficients of `S_l* z^h`.
    pub fn adjoint_exponent_action(&self, l: usize, h: i64) -> Result<BTreeMap<i64, T>> {
        self.check_letter(l)?;
        let n = self.n as i64;
        Ok(self.filters[l]
            .coeffs()
            .iter()
            .filter(|(&k, _)| (h - k).rem_euclid(n) == 0)
            .map(|(&k, a)| ((h - k) / n, a.conj()))
            .collect())
    }

    /// Closure of `seed` under every `S_l*`.
    ///
    /// Terminates because `|h'| <= (|h| + K)/N`, which contracts into
    /// `[−K/(N−1) − 1, K/(N−1) + 1]` with `K` the largest filter exponent.
    pub fn invariant_exponent_set(&self, seed: &BTreeSet<i64>) -> BTreeSet<i64> {
        let mut out = seed.clone();
        let mut queue: VecDeque<i64> = seed.iter().copied().collect();
        while let Some(h) = queue.pop_front() {
            for l in 0..self.n {
                for &image in self.adjoint_exponent_action(l, h).unwrap_or_default().keys() {
                    if out.insert(image) {
                        queue.push_back(image);
                    }
                }
            }
        }
        out
    }

    /// The matrices of `S_l*` on `span{z^h : h ∈ H}`, basis `z^h` in decreasing `h`.
    pub fn compress_to_exponents(&self, h: &BTreeSet<i64>) -> Result<MatrixTuple<T>> {
        let basis: Vec<i64> = h.iter().rev().copied().collect();
        let index: BTreeMap<i64, usize> = basis.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let d = basis.len();
        let mut z = Vec::with_capacity(self.n);
        for l in 0..self.n {
            let mut m = DMatrix::from_fn(d, d, |_, _| T::zero());
            for (col, &e) in basis.iter().enumerate() {
                for (image, a) in self.adjoint_exponent_action(l, e)? {
                    let row = *index
                        .get(&image)
                        .ok_or(Error::NotInvariant { source_exponent: e, letter: l, image })?;
                    m[(row, col)] = a;
                }
            }
            z.push(m);
        }
        MatrixTuple::new(z)
    }

    /// `true` when `|a|² = 1`, exactly for exact scalars.
    fn unimodular(a: &T, tol: f64) -> bool {
        a.abs_sqr().near(&T::one(), tol)
    }

    /// Every atom carried by cycles of unimodular monomial filters.
    ///
    /// For the monomial letters `m_i = a_i z^{k_i}`, take the graph on integers
    /// `|d| <= K/(N−1) + 1` with an edge `d →_i d'` when `d = k_i + N d'`. Then
    /// `S_i z^{d'} = a_i z^d`, so each directed cycle is an eigenvector
    /// `S_I z^d = λ z^d` with `I` read along the cycle, and every atom arises so.
    pub fn monomial_atom_search(&self, tol: f64) -> Vec<AtomCertificate<T>> {
        let n = self.n as i64;
        let monomials: Vec<(usize, T, i64)> = self
            .filters
            .iter()
            .enumerate()
            .filter_map(|(i, m)| m.as_monomial().map(|(a, k)| (i, a, k)))
            .filter(|(_, a, _)| Self::unimodular(a, tol))
            .collect();
        if monomials.is_empty() {
            return Vec::new();
        }
        let big_k = monomials.iter().map(|(_, _, k)| k.abs()).max().unwrap_or(0);
        let bound = (big_k + n - 2) / (n - 1) + 1;
        let step = |d: i64| -> Vec<(usize, i64)> {
            monomials
                .iter()
                .filter(|(_, _, k)| (d - k).rem_euclid(n) == 0)
                .map(|(i, _, k)| (*i, (d - k) / n))
                .filter(|(_, next)| next.abs() <= bound)
                .collect()
        };

        // Simple cycles, each found once from its smallest vertex.
        let mut cycles: Vec<Vec<(i64, usize)>> = Vec::new();
        for start in -bound..=bound {
            let mut stack: Vec<(i64, usize)> = Vec::new();
            simple_cycles_from(start, start, &step, &mut stack, &mut cycles);
        }

        let mut out: Vec<AtomCertificate<T>> = cycles
            .into_iter()
            .map(|path| {
                let p = path.len();
                let letters: Vec<usize> = path.iter().map(|&(_, i)| i).collect();
                let best = (0..p)
                    .min_by_key(|&r| {
                        let mut w = letters.clone();
                        w.rotate_left(r);
                        w
                    })
                    .unwrap_or(0);
                let mut path = path;
                path.rotate_left(best);
                let cycle = FiniteWord::new(self.n, path.iter().map(|&(_, i)| i).collect())
                    .expect("letters come from the bank");
                let exponents: Vec<i64> = path.iter().map(|&(_, i)| monomial_exponent(&monomials, i)).collect();
                let l: i64 = exponents.iter().enumerate().map(|(j, &k)| n.pow(j as u32) * k).sum();
                let lambda = path
                    .iter()
                    .fold(T::one(), |acc, &(_, i)| acc * monomial_coefficient(&monomials, i));
                AtomCertificate { cycle, exponents, l, d: path[0].0, lambda }
            })
            .collect();
        out.sort_by(|a, b| (a.cycle.len(), a.cycle.letters()).cmp(&(b.cycle.len(), b.cycle.letters())));
        out
    }

    /// `m(z)·z^{d N^p} = λ z^d` with `m(z) = Π_j m_{i_j}(z^{N^j})`.
    pub fn verify_certificate(&self, cert: &AtomCertificate<T>) -> bool {
        let n = self.n as i64;
        let p = cert.cycle.len() as u32;
        let m = cert.cycle.letters().iter().enumerate().fold(
            LaurentPolynomial::monomial(T::one(), 0),
            |acc, (j, &i)| &acc * &self.filters[i].compose_power(n.pow(j as u32)),
        );
        let lhs = &m * &LaurentPolynomial::monomial(T::one(), cert.d * n.pow(p));
        lhs.as_monomial().is_some_and(|(a, k)| k == cert.d && a.near(&cert.lambda, 1e-12))
    }

    /// `m_0(1) = √N`: positive real with square `N`.
    pub fn low_pass_check(&self, tol: f64) -> bool {
        let v = self.filters[0].value_at_one();
        let n = T::from_ratio(self.n as i64, 1);
        let approx = v.to_c64();
        (v.clone() * v).near(&n, tol) && approx.re > 0.0
    }

    /// One orbit per certificate, multiplicity 1, spectrum `{λ}`.
    pub fn descriptor(&self, certificates: &[AtomCertificate<T>]) -> Result<AtomicRepDescriptor> {
        let parts = certificates
            .iter()
            .map(|c| {
                let rep = EventuallyPeriodicWord::cyclic(&c.cycle)?;
                let lambda = c.lambda.to_c64();
                AtomicRepDescriptor::new(self.n, vec![OrbitEntry::new(&rep, vec![lambda / lambda.norm()])?])
            })
            .collect::<Result<Vec<_>>>()?;
        merge(self.n, &parts)
    }
}

fn monomial_exponent<T: Scalar>(monomials: &[(usize, T, i64)], letter: usize) -> i64 {
    monomials.iter().find(|(i, _, _)| *i == letter).map(|(_, _, k)| *k).unwrap_or(0)
}

fn monomial_coefficient<T: Scalar>(monomials: &[(usize, T, i64)], letter: usize) -> T {
    monomials.iter().find(|(i, _, _)| *i == letter).map(|(_, a, _)| a.clone()).unwrap_or_else(T::zero)
}

/// Depth-first enumeration of simple cycles through `start` using only vertices `>= start`.
fn simple_cycles_from(
    start: i64,
    at: i64,
    step: &impl Fn(i64) -> Vec<(usize, i64)>,
    stack: &mut Vec<(i64, usize)>,
    out: &mut Vec<Vec<(i64, usize)>>,
) {
    for (letter, next) in step(at) {
        if next == start {
            let mut cycle = stack.clone();
            cycle.push((at, letter));
            out.push(cycle);
        } else if next > start && next != at && !stack.iter().any(|&(v, _)| v == next) {
            stack.push((at, letter));
            simple_cycles_from(start, next, step, stack, out);
            stack.pop();
        }
    }
}

impl FilterBank<Complex64> {
    /// Radicand `R` for an exact copy, if every coefficient is recognised.
    pub fn radicand_hint(&self) -> Option<u64> {
        let values: Vec<f64> =
            self.filters.iter().flat_map(|m| m.coeffs().values()).flat_map(|c| [c.re, c.im]).collect();
        radicand_of(&values)
    }

    pub fn to_exact<const R: u64>(&self) -> Option<FilterBank<Surd<R>>> {
        let filters = self
            .filters
            .iter()
            .map(|m| {
                m.coeffs()
                    .iter()
                    .map(|(&k, &a)| Surd::<R>::from_c64(a).map(|s| (k, s)))
                    .collect::<Option<Vec<_>>>()
                    .map(LaurentPolynomial::new)
            })
            .collect::<Option<Vec<_>>>()?;
        Some(FilterBank { n: self.n, filters })
    }
}

impl<const R: u64> AtomCertificate<Surd<R>> {
    pub fn to_c64(&self) -> AtomCertificate<Complex64> {
        AtomCertificate {
            cycle: self.cycle.clone(),
            exponents: self.exponents.clone(),
            l: self.l,
            d: self.d,
            lambda: self.lambda.to_c64(),
        }
    }
}

#[derive(Serialize)]
struct CertificateWire<'a> {
    cycle: &'a FiniteWord,
    exponents: &'a [i64],
    l: i64,
    d: i64,
    lambda: Pair,
}

impl Serialize for AtomCertificate<Complex64> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CertificateWire { cycle: &self.cycle, exponents: &self.exponents, l: self.l, d: self.d, lambda: Pair(self.lambda) }
            .serialize(s)
    }
}

#[derive(Serialize, Deserialize)]
struct PolynomialWire {
    coeffs: BTreeMap<String, Pair>,
}

#[derive(Serialize, Deserialize)]
struct BankWire {
    #[serde(rename = "N")]
    n: usize,
    filters: Vec<PolynomialWire>,
}

impl Serialize for LaurentPolynomial<Complex64> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        polynomial_wire(self).serialize(s)
    }
}

fn polynomial_wire(p: &LaurentPolynomial<Complex64>) -> PolynomialWire {
    PolynomialWire { coeffs: p.coeffs().iter().map(|(k, a)| (k.to_string(), Pair(*a))).collect() }
}

fn polynomial_from_wire(w: PolynomialWire) -> std::result::Result<LaurentPolynomial<Complex64>, String> {
    let terms = w
        .coeffs
        .into_iter()
        .map(|(k, a)| k.trim().parse::<i64>().map(|k| (k, a.0)).map_err(|_| format!("exponent {k:?} is not an integer")))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(LaurentPolynomial::new(terms))
}

impl Serialize for FilterBank<Complex64> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BankWire { n: self.n, filters: self.filters.iter().map(polynomial_wire).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FilterBank<Complex64> {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = BankWire::deserialize(de)?;
        if w.filters.len() != w.n {
            return Err(D::Error::custom(format!("filters: expected {} filters, found {}", w.n, w.filters.len())));
        }
        let filters = w
            .filters
            .into_iter()
            .enumerate()
            .map(|(i, p)| polynomial_from_wire(p).map_err(|e| D::Error::custom(format!("filters[{i}]: {e}"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        FilterBank::new(filters).map_err(D::Error::custom)
    }
}
