#![allow(dead_code)]

use std::collections::BTreeMap;

use cuntz_core::words::{EventuallyPeriodicWord, FiniteWord};
use cuntz_core::MatrixTuple;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Columns of the Q factor of a complex Gaussian `rows × cols` matrix.
pub fn random_isometry(rows: usize, cols: usize, rng: &mut StdRng) -> DMatrix<Complex64> {
    let g = DMatrix::<Complex64>::from_fn(rows, cols, |_, _| {
        c(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
    });
    g.qr().q()
}

pub fn random_unitary(d: usize, rng: &mut StdRng) -> DMatrix<Complex64> {
    random_isometry(d, d, rng)
}

/// The first `d` columns of a random `Nd × Nd` unitary, cut into `N` square blocks.
pub fn random_tuple(n: usize, d: usize, rng: &mut StdRng) -> MatrixTuple {
    let v = random_isometry(n * d, d, rng);
    MatrixTuple::new((0..n).map(|l| v.view((l * d, 0), (d, d)).into_owned()).collect()).unwrap()
}

/// The orbit of `(cycle)^∞` with `S_{c_t}* e_t = λ_t e_{t+1}`.
pub fn cycle_tuple(cycle: &FiniteWord, phases: &[Complex64]) -> MatrixTuple {
    let (n, p) = (cycle.alphabet_size(), cycle.len());
    let mut z = vec![DMatrix::<Complex64>::zeros(p, p); n];
    for (t, &l) in cycle.letters().iter().enumerate() {
        z[l][((t + 1) % p, t)] = phases[t];
    }
    MatrixTuple::new(z).unwrap()
}

/// A random tuple with a hidden atom: a random block, an atom block, then a random change of basis.
pub fn tuple_with_atom(n: usize, d: usize, rng: &mut StdRng) -> MatrixTuple {
    let p = rng.random_range(1..=d);
    let letters: Vec<usize> = (0..p).map(|_| rng.random_range(0..n)).collect();
    let cycle = FiniteWord::new(n, letters).unwrap();
    let phases: Vec<Complex64> =
        (0..p).map(|_| Complex64::from_polar(1.0, rng.random::<f64>() * std::f64::consts::TAU)).collect();
    let atom = cycle_tuple(&cycle, &phases);
    let t = if p == d { atom } else { random_tuple(n, d - p, rng).direct_sum(&atom).unwrap() };
    let q = random_unitary(d, rng);
    t.conjugated(&q).unwrap()
}

pub type Vector = BTreeMap<EventuallyPeriodicWord, Complex64>;

/// The cyclic dilation on `ℓ²` of eventually periodic words: `S_i e_ω = e_{iω}`, `S_i* e_{iω} = e_ω`.
pub fn dilation_adjoint(i: usize, v: &Vector) -> Vector {
    let mut out = Vector::new();
    for (w, a) in v {
        if w.first_letter() == i {
            *out.entry(w.shift()).or_default() += a;
        }
    }
    out.retain(|_, a| a.norm() > 0.0);
    out
}

pub fn dilation_apply(i: usize, v: &Vector) -> Vector {
    v.iter().map(|(w, a)| (w.prepend(i).unwrap(), *a)).collect()
}

pub fn inner(u: &Vector, v: &Vector) -> Complex64 {
    u.iter().filter_map(|(w, a)| v.get(w).map(|b| a * b.conj())).sum()
}

pub fn basis_vector(w: &EventuallyPeriodicWord) -> Vector {
    Vector::from([(w.clone(), c(1.0, 0.0))])
}
