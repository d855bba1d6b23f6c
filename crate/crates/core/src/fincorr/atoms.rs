//! Wold unitary parts of word operators and the atoms they carry.
//!
//! For a cycle word `I`, the atom `P(I^∞)H ∩ M` is the unitary part of the
//! contraction `W_I` on `M`: the vectors whose norm `W_I` never decreases.
//! `S_I*` acts unitarily there, and the mass of a vector `v` at a point
//! `a·I^∞` is `‖Π W_a v‖²` with `Π` the orthogonal projection onto that atom.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::MatrixTuple;
use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, kernel, low_eigenspace, operator_norm, CMatrix};
use crate::wire::{matrix_rows, pairs, Pair};
use crate::words::{enumerate_primitive_words, EventuallyPeriodicWord};

/// Orthonormal basis (as columns) of `{v : ‖W^n v‖ = ‖v‖ for all n}`.
///
/// Starts from `K_0 = ker(I − W†W)` and refines `K_{j+1} = {v ∈ K_j : Wv ∈ K_j}`
/// until the dimension stops dropping, which happens within `d` steps.
pub fn unitary_part(w: &CMatrix, tol: f64) -> Result<CMatrix> {
    let d = w.nrows();
    if w.ncols() != d {
        return Err(Error::DimensionMismatch(format!("word operator must be square, got {:?}", w.shape())));
    }
    let norm = operator_norm(w);
    if norm > 1.0 + tol {
        return Err(Error::NotContraction { norm });
    }
    let defect = CMatrix::identity(d, d) - w.adjoint() * w;
    let mut k = low_eigenspace(&defect, tol);
    while k.ncols() > 0 {
        let image = w * &k;
        let leak = &image - &k * (k.adjoint() * &image);
        let c = kernel(&leak, tol);
        if c.ncols() == k.ncols() {
            break;
        }
        k = &k * c;
    }
    Ok(k)
}

/// The atom of `M` at a pure cycle.
#[derive(Clone, Debug)]
pub struct CycleAtom {
    pub cycle: EventuallyPeriodicWord,
    /// `d × m`, orthonormal columns.
    pub basis: CMatrix,
    /// `m × m`: the matrix of `S_I*` on the atom.
    pub cycle_unitary: CMatrix,
}

impl CycleAtom {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    /// Eigenvalues of `S_I` on the atom (the conjugates of those of the
    /// cycle unitary, since `S_I = (S_I*)^{-1}` there), normalised onto the circle.
    pub fn spectrum(&self) -> Vec<Complex64> {
        eigenvalues(&self.cycle_unitary).into_iter().map(|z| (z / z.norm()).conj()).collect()
    }
}

#[derive(Serialize)]
struct CycleAtomWire {
    cycle: EventuallyPeriodicWord,
    dim: usize,
    basis: Vec<Vec<Pair>>,
    cycle_unitary: Vec<Vec<Pair>>,
    spectrum: Vec<Pair>,
}

impl Serialize for CycleAtom {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycleAtomWire {
            cycle: self.cycle.clone(),
            dim: self.dim(),
            basis: matrix_rows(&self.basis),
            cycle_unitary: matrix_rows(&self.cycle_unitary),
            spectrum: pairs(&self.spectrum()),
        }
        .serialize(s)
    }
}

/// All atoms at pure cycles of period at most `max_period` (default `d`),
/// sorted by cycle.
///
/// Every rotation of every primitive word is examined, so each orbit
/// contributes one atom per point of its cycle.
pub fn find_cycle_atoms(t: &MatrixTuple, max_period: Option<usize>, tol: f64) -> Result<Vec<CycleAtom>> {
    let max_period = max_period.unwrap_or(t.dim());
    let mut atoms = Vec::new();
    for p in 1..=max_period {
        for lyndon in enumerate_primitive_words(t.alphabet_size(), p)? {
            for r in 0..p {
                let word = lyndon.rotated(r);
                let w = t.word_operator(&word)?;
                let basis = unitary_part(&w, tol)?;
                if basis.ncols() == 0 {
                    continue;
                }
                let cycle_unitary = basis.adjoint() * &w * &basis;
                atoms.push(CycleAtom { cycle: EventuallyPeriodicWord::cyclic(&word)?, basis, cycle_unitary });
            }
        }
    }
    atoms.sort_by(|a, b| a.cycle.cmp(&b.cycle));
    Ok(atoms)
}

/// `Φ(G) = Σ_l Z_l† G Z_l`.
fn transfer(t: &MatrixTuple, g: &CMatrix) -> CMatrix {
    t.matrices().iter().map(|z| z.adjoint() * g * z).fold(CMatrix::zeros(t.dim(), t.dim()), |a, b| a + b)
}

/// Projection onto the span of all atoms.
pub(crate) fn atom_projection(t: &MatrixTuple, atoms: &[CycleAtom]) -> CMatrix {
    atoms.iter().fold(CMatrix::zeros(t.dim(), t.dim()), |g, a| g + &a.basis * a.basis.adjoint())
}

pub(crate) fn transfer_power(t: &MatrixTuple, g0: CMatrix, steps: usize) -> CMatrix {
    (0..steps).fold(g0, |g, _| transfer(t, &g))
}

/// The Gram form `G` with `v† G v = atomic_mass(v, cutoff)`.
///
/// `Φ^k(G_0) = Σ_{|a|=k} W_a† G_0 W_a` collects the mass of every point
/// `a·I^∞` with `|a| = k`; these sets increase with `k` and exhaust the points
/// of preperiod at most `k`, each counted once.
pub fn atomic_mass_matrix(t: &MatrixTuple, atoms: &[CycleAtom], cutoff: usize) -> CMatrix {
    transfer_power(t, atom_projection(t, atoms), cutoff)
}

/// Total mass of `v` on the atoms reachable with preperiod at most `cutoff`.
pub fn atomic_mass(t: &MatrixTuple, atoms: &[CycleAtom], v: &DMatrix<Complex64>, cutoff: usize) -> f64 {
    let g = atomic_mass_matrix(t, atoms, cutoff);
    (v.adjoint() * g * v)[(0, 0)].re.max(0.0)
}
