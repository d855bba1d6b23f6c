//! Sparse Laurent polynomials `Σ a_k z^k` over a [`Scalar`] field.

use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use num_complex::Complex64;

use crate::scalar::Scalar;

/// A Laurent polynomial with no stored zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPolynomial<T: Scalar = Complex64> {
    coeffs: BTreeMap<i64, T>,
}

impl<T: Scalar> LaurentPolynomial<T> {
    pub fn new(coeffs: impl IntoIterator<Item = (i64, T)>) -> Self {
        let mut p = Self::zero();
        for (k, a) in coeffs {
            p.add_term(k, a);
        }
        p
    }

    pub fn zero() -> Self {
        Self { coeffs: BTreeMap::new() }
    }

    pub fn monomial(a: T, k: i64) -> Self {
        Self::new([(k, a)])
    }

    fn add_term(&mut self, k: i64, a: T) {
        let entry = self.coeffs.entry(k).or_insert_with(T::zero);
        *entry += a;
        if entry.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, T> {
        &self.coeffs
    }

    pub fn coeff(&self, k: i64) -> T {
        self.coeffs.get(&k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `Some((a, k))` when the polynomial is a single term `a z^k`.
    pub fn as_monomial(&self) -> Option<(T, i64)> {
        match self.coeffs.len() {
            1 => self.coeffs.iter().next().map(|(&k, a)| (a.clone(), k)),
            _ => None,
        }
    }

    /// Largest `|k|` over the support; `0` for the zero polynomial.
    pub fn max_abs_exponent(&self) -> i64 {
        self.coeffs.keys().map(|k| k.abs()).max().unwrap_or(0)
    }

    /// `z ↦ conj(m(z))` on the circle: `a_k z^k ↦ conj(a_k) z^{-k}`.
    pub fn conj_reflect(&self) -> Self {
        Self::new(self.coeffs.iter().map(|(&k, a)| (-k, a.conj())))
    }

    /// `m(z^q)`.
    pub fn compose_power(&self, q: i64) -> Self {
        Self::new(self.coeffs.iter().map(|(&k, a)| (k * q, a.clone())))
    }

    /// Keeps the exponents divisible by `n` and divides them by `n`.
    pub fn downsample(&self, n: i64) -> Self {
        Self::new(self.coeffs.iter().filter(|(&k, _)| k % n == 0).map(|(&k, a)| (k / n, a.clone())))
    }

    /// `m(1) = Σ a_k`, exact.
    pub fn value_at_one(&self) -> T {
        self.coeffs.values().fold(T::zero(), |acc, a| acc + a.clone())
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().map(|(&k, a)| a.to_c64() * z.powi(k as i32)).sum()
    }

    pub fn to_c64(&self) -> LaurentPolynomial<Complex64> {
        LaurentPolynomial::new(self.coeffs.iter().map(|(&k, a)| (k, a.to_c64())))
    }
}

impl<T: Scalar> Add for &LaurentPolynomial<T> {
    type Output = LaurentPolynomial<T>;
    fn add(self, o: Self) -> LaurentPolynomial<T> {
        let mut out = self.clone();
        for (&k, a) in &o.coeffs {
            out.add_term(k, a.clone());
        }
        out
    }
}

impl<T: Scalar> Mul for &LaurentPolynomial<T> {
    type Output = LaurentPolynomial<T>;
    fn mul(self, o: Self) -> LaurentPolynomial<T> {
        let mut out = LaurentPolynomial::zero();
        for (&j, a) in &self.coeffs {
            for (&k, b) in &o.coeffs {
                out.add_term(j + k, a.clone() * b.clone());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Surd;

    type S2 = Surd<2>;

    fn p(terms: &[(i64, i64)]) -> LaurentPolynomial<S2> {
        LaurentPolynomial::new(terms.iter().map(|&(k, a)| (k, S2::from_ratio(a, 1))))
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let a = p(&[(0, 1), (1, 1)]);
        let b = p(&[(1, -1)]);
        assert_eq!((&a + &b).coeffs().len(), 1);
        assert!((&b + &p(&[(1, 1)])).is_zero());
        assert!(LaurentPolynomial::new([(3, S2::from_ratio(0, 1))]).is_zero());
    }

    #[test]
    fn products_and_reflections() {
        let a = p(&[(0, 1), (1, 1)]);
        let prod = &a * &a.conj_reflect();
        assert_eq!(prod, p(&[(-1, 1), (0, 2), (1, 1)]));
        assert_eq!(prod.downsample(2), p(&[(0, 2)]));
        assert_eq!(a.compose_power(3), p(&[(0, 1), (3, 1)]));
        assert_eq!(a.value_at_one(), S2::from_ratio(2, 1));
        assert_eq!(p(&[(-2, 5)]).as_monomial(), Some((S2::from_ratio(5, 1), -2)));
        assert_eq!(a.as_monomial(), None);
        assert_eq!(p(&[(-7, 1), (3, 1)]).max_abs_exponent(), 7);
        let i = Complex64::new(0.0, 1.0);
        assert!((a.eval(i) - (Complex64::new(1.0, 0.0) + i)).norm() < 1e-15);
    }
}
