//! Field abstraction shared by the floating-point and exact arithmetic paths.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;
use num_traits::{One, Zero};

/// A complex field element usable as a matrix or polynomial coefficient.
///
/// Two implementations exist: [`Complex64`] for floating-point work and
/// [`crate::exact::Surd`] for exact work in `Q(i)(√R)`. Algorithms written
/// against this trait run unchanged on both; tolerance arguments are ignored
/// by exact implementations.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    /// `true` when arithmetic is exact.
    const EXACT: bool;

    fn conj(&self) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self;

    /// `√n`, when representable.
    fn sqrt_int(n: u64) -> Option<Self>;

    /// `exp(2πi·k/n)`, when representable.
    fn root_of_unity(k: i64, n: u64) -> Option<Self>;

    fn to_c64(&self) -> Complex64;

    /// Nearest field element to a floating-point value; exact fields only
    /// succeed when the value is recognised as a small rational combination.
    fn from_c64(z: Complex64) -> Option<Self>;

    /// Zero test: exact fields compare structurally, floats use `|x| <= tol`.
    fn near_zero(&self, tol: f64) -> bool;

    fn abs_sqr(&self) -> Self {
        self.clone() * self.conj()
    }

    fn near(&self, other: &Self, tol: f64) -> bool {
        (self.clone() - other.clone()).near_zero(tol)
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }

    fn sqrt_int(n: u64) -> Option<Self> {
        Some(Complex64::new((n as f64).sqrt(), 0.0))
    }

    fn root_of_unity(k: i64, n: u64) -> Option<Self> {
        Some(cis_fraction(k, n))
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }

    fn from_c64(z: Complex64) -> Option<Self> {
        Some(z)
    }

    fn near_zero(&self, tol: f64) -> bool {
        self.norm() <= tol
    }
}

/// `exp(2πi·k/n)` with the phase reduced modulo `n` first, so exact quarter
/// turns come out exact.
pub fn cis_fraction(k: i64, n: u64) -> Complex64 {
    let n_i = n as i64;
    let k = k.rem_euclid(n_i);
    if k == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 2 * k == n_i {
        return Complex64::new(-1.0, 0.0);
    }
    if 4 * k == n_i {
        return Complex64::new(0.0, 1.0);
    }
    if 4 * k == 3 * n_i {
        return Complex64::new(0.0, -1.0);
    }
    let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64);
    Complex64::new(theta.cos(), theta.sin())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cis_fraction_quarter_turns_are_exact() {
        assert_eq!(cis_fraction(1, 2), Complex64::new(-1.0, 0.0));
        assert_eq!(cis_fraction(3, 4), Complex64::new(0.0, -1.0));
        assert_eq!(cis_fraction(-1, 4), Complex64::new(0.0, -1.0));
        assert_eq!(cis_fraction(6, 3), Complex64::new(1.0, 0.0));
        let w = cis_fraction(1, 3);
        assert!((w - Complex64::new(-0.5, 3f64.sqrt() / 2.0)).norm() < 1e-15);
    }
}
