//! Compressions computed on an explicit dilation, compared with the matrix-level operations.

mod common;

use common::*;
use cuntz_core::fincorr::intertwiner_space;
use cuntz_core::linalg::{max_abs, CMatrix};
use cuntz_core::words::{EventuallyPeriodicWord, FiniteWord};
use cuntz_core::MatrixTuple;
use nalgebra::DMatrix;

fn cyclic(s: &str) -> EventuallyPeriodicWord {
    EventuallyPeriodicWord::cyclic(&FiniteWord::parse(2, s).unwrap()).unwrap()
}

fn combine(basis: &[Vector], coeffs: &CMatrix, col: usize) -> Vector {
    let mut v = Vector::new();
    for (r, e) in basis.iter().enumerate() {
        for (k, a) in e {
            *v.entry(k.clone()).or_default() += a * coeffs[(r, col)];
        }
    }
    v
}

fn compress(m: &[Vector]) -> MatrixTuple {
    let z = (0..2)
        .map(|l| DMatrix::from_fn(m.len(), m.len(), |r, c| inner(&dilation_adjoint(l, &m[c]), &m[r])))
        .collect();
    MatrixTuple::new(z).unwrap()
}

#[test]
fn word_operators_follow_adjoint_order() {
    let mut rng = rng(11);
    let seeds = [cyclic("001"), cyclic("010"), cyclic("100"), cyclic("1")];
    let e: Vec<Vector> = seeds.iter().map(basis_vector).collect();
    let q = random_unitary(4, &mut rng);
    let m: Vec<Vector> = (0..4).map(|c| combine(&e, &q, c)).collect();
    let t = compress(&m);
    assert!(t.validate(1e-12).valid);
    for len in 0..=4 {
        for word in FiniteWord::all_of_length(2, len).unwrap() {
            let oracle = DMatrix::from_fn(4, 4, |r, c| {
                let v = word.letters().iter().fold(m[c].clone(), |v, &l| dilation_adjoint(l, &v));
                inner(&v, &m[r])
            });
            assert!(max_abs(&(oracle - t.word_operator(&word).unwrap())) < 1e-12, "{word}");
        }
    }
}

#[test]
fn rectangular_intertwiner_is_the_compressed_projection() {
    // M = span{(0)^∞, (01)^∞, (10)^∞}; M̃ = the (01) orbit part in a rotated basis.
    // The projection X onto the (01)^∞ orbit commutes with every S_i.
    let mut rng = rng(12);
    let e = [basis_vector(&cyclic("0")), basis_vector(&cyclic("01")), basis_vector(&cyclic("10"))];
    let small = [e[1].clone(), e[2].clone()];
    let q = random_unitary(2, &mut rng);
    let rotated: Vec<Vector> = (0..2).map(|c| combine(&small, &q, c)).collect();
    let t1 = compress(&e);
    let t2 = compress(&rotated);
    let space = intertwiner_space(&t1, &t2, 1e-10).unwrap();
    assert_eq!(space.len(), 1);
    let v = &space[0];
    assert_eq!(v.shape(), (2, 3));
    let in_orbit = |w: &EventuallyPeriodicWord| w.orbit_equal(&cyclic("01")).unwrap();
    let expected = DMatrix::from_fn(2, 3, |r, c| {
        let projected: Vector = e[c].iter().filter(|(w, _)| in_orbit(w)).map(|(w, a)| (w.clone(), *a)).collect();
        inner(&projected, &rotated[r])
    });
    let overlap = (expected.adjoint() * v).trace().norm() / (expected.norm() * v.norm());
    assert!((overlap - 1.0).abs() < 1e-12);
    let fixed = t1
        .matrices()
        .iter()
        .zip(t2.matrices())
        .fold(CMatrix::zeros(2, 3), |acc, (z, zt)| acc + zt.adjoint() * v * z);
    assert!(max_abs(&(fixed - v)) < 1e-12);
    assert_eq!(intertwiner_space(&t2, &t1, 1e-10).unwrap().len(), 1);
    assert_eq!(intertwiner_space(&t1, &t1, 1e-10).unwrap().len(), 2);
}

#[test]
fn preperiodic_vectors_reach_the_cycle() {
    // span{1·(0)^∞, (0)^∞} is S*-invariant; its compression has the (0)^∞ atom only.
    let m = [basis_vector(&EventuallyPeriodicWord::from_letters(2, vec![1], vec![0]).unwrap()), basis_vector(&cyclic("0"))];
    let t = compress(&m);
    assert!(t.validate(1e-12).valid);
    let atoms = cuntz_core::fincorr::find_cycle_atoms(&t, None, 1e-10).unwrap();
    assert_eq!(atoms.len(), 1);
    assert_eq!(atoms[0].cycle, cyclic("0"));
    let mu = t.cylinder_measure(&FiniteWord::parse(2, "1").unwrap()).unwrap();
    assert!((mu[(0, 0)].re - 1.0).abs() < 1e-15 && mu[(1, 1)].norm() < 1e-15);
}
