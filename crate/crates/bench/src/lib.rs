//! Inputs shared by the benchmarks.

use cuntz_core::{FilterBank, FiniteWord, HadamardTriple, LaurentPolynomial, MatrixTuple, WalshMatrix};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// The block-cycle tuple on `d` states for the word `0^(d-1) 1`: `Z_l` maps
/// state `t` to `t + 1` when letter `t` of the word is `l`.
pub fn cycle_tuple(d: usize) -> MatrixTuple {
    let letters: Vec<usize> = (0..d).map(|t| usize::from(t + 1 == d)).collect();
    let word = FiniteWord::new(2, letters).expect("binary word");
    let z = (0..2)
        .map(|l| {
            DMatrix::from_fn(d, d, |r, c| {
                let hit = word.letters()[c] == l && r == (c + 1) % d;
                Complex64::new(f64::from(u8::from(hit)), 0.0)
            })
        })
        .collect();
    MatrixTuple::new(z).expect("square matrices")
}

/// `m_i(z) = z^(k_i)` for the exponents `k`.
pub fn monomial_bank(k: &[i64]) -> FilterBank {
    FilterBank::new(k.iter().map(|&e| LaurentPolynomial::monomial(Complex64::new(1.0, 0.0), e)).collect())
        .expect("at least two filters")
}

pub fn triple(r: i64, b: &[i64], l: &[i64]) -> HadamardTriple {
    HadamardTriple::new(r, b.to_vec(), l.to_vec()).expect("valid digit sets")
}

/// The `n × n` Fourier matrix, whose first row is constant.
pub fn fourier(n: usize) -> WalshMatrix {
    let s = 1.0 / (n as f64).sqrt();
    let a = DMatrix::from_fn(n, n, |j, k| Complex64::from_polar(s, std::f64::consts::TAU * (j * k) as f64 / n as f64));
    WalshMatrix::new(a, 1e-12).expect("unitary")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inputs_are_valid() {
        for d in 1..=6 {
            assert!(cycle_tuple(d).validate(1e-12).valid);
        }
        assert!(monomial_bank(&[0, 1, 2]).qmf_check(1e-12).ok);
        assert!(triple(4, &[0, 2], &[0, 1]).hadamard_check().unitary);
        assert_eq!(fourier(3).alphabet_size(), 3);
    }
}
