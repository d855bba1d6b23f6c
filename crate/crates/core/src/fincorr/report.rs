//! Purely atomic and permutative classification of a [`MatrixTuple`].

use serde::Serialize;

use super::atoms::{atom_projection, find_cycle_atoms, transfer_power, CycleAtom};
use super::MatrixTuple;
use crate::classify::{self, AtomicRepDescriptor, OrbitEntry};
use crate::error::{Error, Result};
use crate::linalg::{max_abs, unitarity_defect, CMatrix};

/// Iteration cap when the atomic mass is followed past the cutoff.
const MASS_ITERATION_CAP: usize = 10_000;

/// Three-valued purely-atomic verdict.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    /// Atoms span `M` and the `Z_l` permute them block-wise.
    Proven,
    /// The atomic mass of a basis of `M` reaches `d` within tolerance.
    Numerical { mass_deficit: f64 },
    /// The atomic mass stabilises below `d`.
    Refuted { mass_deficit: f64 },
}

impl Verdict {
    pub fn is_atomic(&self) -> bool {
        !matches!(self, Verdict::Refuted { .. })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub atoms: Vec<CycleAtom>,
    pub atom_span_dimension: usize,
    pub block_permutative: bool,
    pub purely_atomic: Verdict,
    /// `tr Φ^cutoff(G_0)`: total atomic mass of an orthonormal basis of `M`.
    pub atomic_mass: f64,
    pub cutoff: usize,
    pub permutative: bool,
    pub descriptor: AtomicRepDescriptor,
}

/// Each `Z_l` maps every atom either to zero or unitarily onto an atom of equal dimension.
fn block_permutative(t: &MatrixTuple, atoms: &[CycleAtom], tol: f64) -> bool {
    atoms.iter().all(|a| {
        t.matrices().iter().all(|z| {
            let image = z * &a.basis;
            if max_abs(&image) <= tol {
                return true;
            }
            atoms.iter().any(|b| {
                if b.dim() != a.dim() {
                    return false;
                }
                let coords = b.basis.adjoint() * &image;
                max_abs(&(&image - &b.basis * &coords)) <= tol && unitarity_defect(&coords) <= tol
            })
        })
    })
}

fn descriptor(t: &MatrixTuple, atoms: &[CycleAtom]) -> Result<AtomicRepDescriptor> {
    let orbits = atoms
        .iter()
        .filter(|a| a.cycle == a.cycle.orbit_representative())
        .map(|a| OrbitEntry::new(&a.cycle, a.spectrum()))
        .collect::<Result<Vec<_>>>()?;
    AtomicRepDescriptor::new(t.alphabet_size(), orbits)
}

/// Classifies `t`.
///
/// The verdict is `proven` when the atoms span `M` and are permuted
/// block-wise. Otherwise the atomic mass of an orthonormal basis is used:
/// `numerical` if it reaches `d − tol` by `cutoff`, else the mass is followed
/// until its increments fall below `tol` and the verdict is `numerical` or
/// `refuted` according to that limit.
pub fn classify(t: &MatrixTuple, tol: f64, cutoff: usize, max_period: Option<usize>) -> Result<ClassificationReport> {
    let check = t.validate(tol);
    if !check.valid {
        return Err(Error::NotUnitary { deviation: check.deviation });
    }
    let d = t.dim() as f64;
    let atoms = find_cycle_atoms(t, max_period, tol)?;
    let atom_span_dimension: usize = atoms.iter().map(CycleAtom::dim).sum();
    let block_tol = tol.sqrt().max(tol);
    let block_permutative = block_permutative(t, &atoms, block_tol);

    let g = transfer_power(t, atom_projection(t, &atoms), cutoff);
    let trace = |g: &CMatrix| g.trace().re;
    let atomic_mass = trace(&g);

    let purely_atomic = if atom_span_dimension == t.dim() && block_permutative {
        Verdict::Proven
    } else if atomic_mass >= d - tol {
        Verdict::Numerical { mass_deficit: (d - atomic_mass).max(0.0) }
    } else {
        let mut g = g;
        let mut mass = atomic_mass;
        for _ in 0..MASS_ITERATION_CAP {
            g = transfer_power(t, g, 1);
            let next = trace(&g);
            let step = next - mass;
            mass = next;
            if step <= tol || mass >= d - tol {
                break;
            }
        }
        let mass_deficit = (d - mass).max(0.0);
        if mass >= d - tol {
            Verdict::Numerical { mass_deficit }
        } else {
            Verdict::Refuted { mass_deficit }
        }
    };

    let descriptor = descriptor(t, &atoms)?;
    let permutative = purely_atomic.is_atomic() && classify::permutative(&descriptor, classify::SPECTRUM_TOL);
    Ok(ClassificationReport {
        atoms,
        atom_span_dimension,
        block_permutative,
        purely_atomic,
        atomic_mass,
        cutoff,
        permutative,
        descriptor,
    })
}
