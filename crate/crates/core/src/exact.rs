//! Exact arithmetic in `Q(i)(√R)`.
//!
//! Every worked example in this toolkit (Haar and Cantor filters, Walsh
//! matrices, cube roots of unity) lives in a field of the form
//! `{a + b·√R : a, b ∈ Q(i)}` for one squarefree radicand `R`. The radicand
//! is a const parameter so values with different radicals can never mix.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::{cis_fraction, Scalar};

/// Largest denominator accepted when recognising a float as a rational.
const MAX_DENOMINATOR: i64 = 10_000;

/// Relative accuracy required when recognising a float.
const RECOGNITION_TOL: f64 = 1e-13;

/// A Gaussian rational `re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(ratio(num, den), BigRational::zero())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn scale(&self, k: &BigRational) -> Self {
        Self::new(&self.re * k, &self.im * k)
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: Self) -> GaussianRational {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: Self) -> GaussianRational {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: Self) -> GaussianRational {
        GaussianRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

/// `rational + radical·√R` with Gaussian-rational parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Surd<const R: u64> {
    rational: GaussianRational,
    radical: GaussianRational,
}

impl<const R: u64> Surd<R> {
    pub fn new(rational: GaussianRational, radical: GaussianRational) -> Self {
        debug_assert!(is_squarefree(R) && R >= 2, "radicand must be squarefree and >= 2");
        Self { rational, radical }
    }

    pub fn rational_part(&self) -> &GaussianRational {
        &self.rational
    }

    pub fn radical_part(&self) -> &GaussianRational {
        &self.radical
    }

    /// `re + i·im` with no radical part.
    pub fn gaussian(re: (i64, i64), im: (i64, i64)) -> Self {
        Self::new(
            GaussianRational::new(ratio(re.0, re.1), ratio(im.0, im.1)),
            gzero(),
        )
    }

    /// `(re + i·im)·√R`.
    pub fn radical(re: (i64, i64), im: (i64, i64)) -> Self {
        Self::new(
            gzero(),
            GaussianRational::new(ratio(re.0, re.1), ratio(im.0, im.1)),
        )
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    /// `true` when the value is a rational real number.
    pub fn as_rational(&self) -> Option<BigRational> {
        (self.radical.is_zero() && self.rational.im.is_zero()).then(|| self.rational.re.clone())
    }

    fn recognise_real(x: f64) -> Option<(BigRational, BigRational)> {
        if let Some(q) = recognise_rational(x) {
            return Some((q, BigRational::zero()));
        }
        let root = (R as f64).sqrt();
        recognise_rational(x / root).map(|q| (BigRational::zero(), q))
    }
}

impl<const R: u64> fmt::Debug for Surd<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<const R: u64> fmt::Display for Surd<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = |x: &GaussianRational| match (x.re.is_zero(), x.im.is_zero()) {
            (_, true) => format!("{}", x.re),
            (true, false) => format!("{}i", x.im),
            (false, false) if x.im.is_negative() => format!("({} - {}i)", x.re, -x.im.clone()),
            (false, false) => format!("({} + {}i)", x.re, x.im),
        };
        match (self.rational.is_zero(), self.radical.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", g(&self.rational)),
            (true, false) => write!(f, "{}·√{}", g(&self.radical), R),
            (false, false) => write!(f, "{} + {}·√{}", g(&self.rational), g(&self.radical), R),
        }
    }
}

impl<const R: u64> Zero for Surd<R> {
    fn zero() -> Self {
        Self::new(gzero(), gzero())
    }
    fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.radical.is_zero()
    }
}

impl<const R: u64> One for Surd<R> {
    fn one() -> Self {
        Self::new(GaussianRational::from_ratio(1, 1), gzero())
    }
}

impl<const R: u64> Add for Surd<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(&self.rational + &o.rational, &self.radical + &o.radical)
    }
}

impl<const R: u64> Sub for Surd<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(&self.rational - &o.rational, &self.radical - &o.radical)
    }
}

impl<const R: u64> Mul for Surd<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let r = BigRational::from_integer(BigInt::from(R));
        let rational = &(&self.rational * &o.rational) + &(&self.radical * &o.radical).scale(&r);
        let radical = &(&self.rational * &o.radical) + &(&self.radical * &o.rational);
        Self::new(rational, radical)
    }
}

impl<const R: u64> Neg for Surd<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::zero() - self
    }
}

impl<const R: u64> AddAssign for Surd<R> {
    fn add_assign(&mut self, o: Self) {
        *self = self.clone() + o;
    }
}

impl<const R: u64> SubAssign for Surd<R> {
    fn sub_assign(&mut self, o: Self) {
        *self = self.clone() - o;
    }
}

impl<const R: u64> MulAssign for Surd<R> {
    fn mul_assign(&mut self, o: Self) {
        *self = self.clone() * o;
    }
}

impl<const R: u64> Scalar for Surd<R> {
    const EXACT: bool = true;

    fn conj(&self) -> Self {
        Self::new(self.rational.conj(), self.radical.conj())
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(GaussianRational::from_ratio(num, den), gzero())
    }

    fn sqrt_int(n: u64) -> Option<Self> {
        let (square, free) = split_square(n);
        let s = BigRational::from_integer(BigInt::from(square));
        match free {
            1 => Some(Self::new(GaussianRational::new(s, BigRational::zero()), gzero())),
            f if f == R => Some(Self::new(gzero(), GaussianRational::new(s, BigRational::zero()))),
            _ => None,
        }
    }

    fn root_of_unity(k: i64, n: u64) -> Option<Self> {
        let candidate = Self::from_c64(cis_fraction(k, n))?;
        // Recognition is only a guess; the power test makes it exact.
        (candidate.pow(n) == Self::one()).then_some(candidate)
    }

    fn to_c64(&self) -> Complex64 {
        self.rational.to_c64() + self.radical.to_c64() * (R as f64).sqrt()
    }

    fn from_c64(z: Complex64) -> Option<Self> {
        let (re_q, re_r) = Self::recognise_real(z.re)?;
        let (im_q, im_r) = Self::recognise_real(z.im)?;
        Some(Self::new(GaussianRational::new(re_q, im_q), GaussianRational::new(re_r, im_r)))
    }

    fn near_zero(&self, _tol: f64) -> bool {
        self.is_zero()
    }
}

fn gzero() -> GaussianRational {
    GaussianRational::new(BigRational::zero(), BigRational::zero())
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn rat_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Huge numerators/denominators: divide in floating point after scaling.
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Best rational approximation with a bounded denominator, accepted only
/// when it reproduces `x` to [`RECOGNITION_TOL`].
pub fn recognise_rational(x: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let tol = RECOGNITION_TOL * x.abs().max(1.0);
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut rest = x;
    for _ in 0..64 {
        let a = rest.floor();
        if a.abs() > 1e15 {
            return None;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > MAX_DENOMINATOR as i128 {
            return None;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if ((h1 as f64) / (k1 as f64) - x).abs() <= tol {
            return Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = rest - a;
        if frac == 0.0 {
            return None;
        }
        rest = 1.0 / frac;
    }
    None
}

/// `n = square² · free` with `free` squarefree.
fn split_square(mut n: u64) -> (u64, u64) {
    let mut square = 1;
    let mut free = 1;
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        square *= p.pow(e / 2);
        if e % 2 == 1 {
            free *= p;
        }
        p += 1;
    }
    (square, free * n)
}

fn is_squarefree(n: u64) -> bool {
    split_square(n).0 == 1
}

/// Smallest squarefree radicand `R >= 2` suggested by a float, if any of the
/// candidates up to 30 makes it recognisable as `q·√R`.
pub fn guess_radicand(values: impl IntoIterator<Item = f64>) -> Option<u64> {
    let mut found = None;
    for x in values {
        if recognise_rational(x).is_some() {
            continue;
        }
        let r = (2..=30u64)
            .filter(|&r| is_squarefree(r))
            .find(|&r| recognise_rational(x / (r as f64).sqrt()).is_some())?;
        match found {
            None => found = Some(r),
            Some(prev) if prev == r => {}
            Some(_) => return None,
        }
    }
    found
}

/// Radicand for a list of floats: the common `R` of the irrational values,
/// or `2` when every value is rational.
pub fn radicand_of(values: &[f64]) -> Option<u64> {
    guess_radicand(values.iter().copied())
        .or_else(|| values.iter().all(|&x| recognise_rational(x).is_some()).then_some(2))
}

impl<const R: u64> Surd<R> {
    /// Absolute value as a float; used only for reporting.
    pub fn abs_f64(&self) -> f64 {
        self.to_c64().norm()
    }

    /// `true` when the value is real and strictly positive.
    pub fn is_positive_real(&self) -> bool {
        if !self.rational.im.is_zero() || !self.radical.im.is_zero() {
            return false;
        }
        let a = &self.rational.re;
        let b = &self.radical.re;
        // a + b√R > 0 decided without floating point.
        let r = BigRational::from_integer(BigInt::from(R));
        match (a.is_positive() || a.is_zero(), b.is_positive() || b.is_zero()) {
            (true, true) => !self.is_zero(),
            (false, false) => false,
            (true, false) => a * a > b * b * r,
            (false, true) => b * b * r > a * a,
        }
    }
}
