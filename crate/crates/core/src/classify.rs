//! Descriptors of purely atomic representations and the invariant calculus on them.
//!
//! A purely atomic representation supported on eventually periodic words is
//! determined up to unitary equivalence by three pieces of data per orbit:
//! the orbit (labelled by its least pure cycle), the dimension of the atom
//! at that cycle, and the spectrum of the cycle isometry `S_I` restricted to
//! the atom. Representations supported on aperiodic words carry no spectral
//! data and are always permutative; they cannot be described by finite data
//! and do not appear here.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::wire::{pairs, unpair, Pair};
use crate::words::EventuallyPeriodicWord;

/// Tolerance for spectrum matching and unimodularity.
pub const SPECTRUM_TOL: f64 = 1e-9;

/// Largest root-of-unity order recognised when comparing spectra exactly.
pub const MAX_ROOT_ORDER: u64 = 64;

/// One orbit of a purely atomic representation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "OrbitWire", into = "OrbitWire")]
pub struct OrbitEntry {
    pub rep: EventuallyPeriodicWord,
    pub mult: usize,
    /// Eigenvalues of `S_I` on the atom at `rep`, sorted by angle in `[0, 2π)`.
    pub spectrum: Vec<Complex64>,
}

impl OrbitEntry {
    pub fn new(rep: &EventuallyPeriodicWord, spectrum: Vec<Complex64>) -> Result<Self> {
        if spectrum.is_empty() {
            return Err(Error::InvalidDescriptor(format!("orbit {rep} has empty spectrum")));
        }
        if let Some(z) = spectrum.iter().find(|z| (z.norm() - 1.0).abs() > SPECTRUM_TOL) {
            return Err(Error::InvalidDescriptor(format!(
                "orbit {rep}: spectrum value {z} is not unimodular"
            )));
        }
        Ok(Self { rep: rep.orbit_representative(), mult: spectrum.len(), spectrum: sorted_by_angle(spectrum) })
    }
}

fn angle(z: &Complex64) -> f64 {
    let a = z.arg();
    if a < 0.0 {
        a + TAU
    } else {
        a
    }
}

fn sorted_by_angle(mut v: Vec<Complex64>) -> Vec<Complex64> {
    v.sort_by(|a, b| angle(a).total_cmp(&angle(b)));
    v
}

/// Classification record of a purely atomic representation of `O_N`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DescriptorWire", into = "DescriptorWire")]
pub struct AtomicRepDescriptor {
    n: usize,
    orbits: Vec<OrbitEntry>,
}

impl AtomicRepDescriptor {
    /// Validates and sorts the orbits by representative.
    pub fn new(n: usize, mut orbits: Vec<OrbitEntry>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidAlphabet(n));
        }
        for o in &orbits {
            if o.rep.alphabet_size() != n {
                return Err(Error::AlphabetMismatch { left: n, right: o.rep.alphabet_size() });
            }
            if o.spectrum.len() != o.mult || o.mult == 0 {
                return Err(Error::InvalidDescriptor(format!(
                    "orbit {}: multiplicity {} but {} spectrum values",
                    o.rep,
                    o.mult,
                    o.spectrum.len()
                )));
            }
        }
        orbits.sort_by(|a, b| a.rep.cmp(&b.rep));
        if let Some(w) = orbits.windows(2).find(|w| w[0].rep == w[1].rep) {
            return Err(Error::InvalidDescriptor(format!("orbit {} listed twice", w[0].rep)));
        }
        Ok(Self { n, orbits })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, Vec::new())
    }

    pub fn alphabet_size(&self) -> usize {
        self.n
    }

    pub fn orbits(&self) -> &[OrbitEntry] {
        &self.orbits
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    fn check_alphabet(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::AlphabetMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }
}

/// `(k, n)` in lowest terms with `z = exp(2πi·k/n)` and `n <= max_order`.
pub fn root_of_unity_index(z: Complex64, max_order: u64, tol: f64) -> Option<(u64, u64)> {
    if (z.norm() - 1.0).abs() > tol {
        return None;
    }
    let t = angle(&z) / TAU;
    (1..=max_order).find_map(|n| {
        let k = (t * n as f64).round();
        let candidate = crate::scalar::cis_fraction(k as i64, n);
        ((candidate - z).norm() <= tol).then(|| {
            let k = (k as u64) % n;
            let g = k.gcd(&n);
            (k / g, n / g)
        })
    })
}

fn spectra_match(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let exact = |s: &[Complex64]| -> Option<Vec<(u64, u64)>> {
        let mut v: Option<Vec<_>> =
            s.iter().map(|&z| root_of_unity_index(z, MAX_ROOT_ORDER, tol)).collect();
        if let Some(v) = v.as_mut() {
            v.sort();
        }
        v
    };
    if let (Some(ea), Some(eb)) = (exact(a), exact(b)) {
        return ea == eb;
    }
    let mut used = vec![false; b.len()];
    a.iter().all(|x| {
        let best = b
            .iter()
            .enumerate()
            .filter(|(k, _)| !used[*k])
            .map(|(k, y)| (k, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1));
        match best {
            Some((k, dist)) if dist <= tol => {
                used[k] = true;
                true
            }
            _ => false,
        }
    })
}

/// Unitary equivalence test: same orbits, same multiplicities, same cycle spectra.
pub fn equivalent(d1: &AtomicRepDescriptor, d2: &AtomicRepDescriptor, tol: f64) -> Result<bool> {
    d1.check_alphabet(d2)?;
    Ok(d1.orbits.len() == d2.orbits.len()
        && d1.orbits.iter().zip(&d2.orbits).all(|(a, b)| {
            a.rep == b.rep && a.mult == b.mult && spectra_match(&a.spectrum, &b.spectrum, tol)
        }))
}

/// `true` when no orbit is shared.
pub fn disjoint(d1: &AtomicRepDescriptor, d2: &AtomicRepDescriptor) -> Result<bool> {
    d1.check_alphabet(d2)?;
    Ok(!d1.orbits.iter().any(|a| d2.orbits.iter().any(|b| a.rep == b.rep)))
}

pub fn irreducible(d: &AtomicRepDescriptor) -> bool {
    d.orbits.len() == 1 && d.orbits[0].mult == 1
}

/// One single-orbit descriptor per orbit.
pub fn decompose(d: &AtomicRepDescriptor) -> Vec<AtomicRepDescriptor> {
    d.orbits.iter().map(|o| AtomicRepDescriptor { n: d.n, orbits: vec![o.clone()] }).collect()
}

/// Direct sum: multiplicities add on shared orbits and spectra are joined as multisets.
pub fn merge(n: usize, parts: &[AtomicRepDescriptor]) -> Result<AtomicRepDescriptor> {
    let mut acc: BTreeMap<EventuallyPeriodicWord, Vec<Complex64>> = BTreeMap::new();
    for p in parts {
        if p.n != n {
            return Err(Error::AlphabetMismatch { left: n, right: p.n });
        }
        for o in &p.orbits {
            acc.entry(o.rep.clone()).or_default().extend_from_slice(&o.spectrum);
        }
    }
    let orbits = acc
        .into_iter()
        .map(|(rep, spectrum)| OrbitEntry { rep, mult: spectrum.len(), spectrum: sorted_by_angle(spectrum) })
        .collect();
    AtomicRepDescriptor::new(n, orbits)
}

/// `true` when a unitary with this spectrum permutes some orthonormal basis,
/// i.e. the multiset splits into complete sets of `k`-th roots of unity.
pub fn spectrum_is_permutative(spectrum: &[Complex64], tol: f64) -> bool {
    let m = spectrum.len() as u64;
    let mut counts: BTreeMap<(u64, u64), usize> = BTreeMap::new();
    for &z in spectrum {
        match root_of_unity_index(z, m.max(1), tol) {
            Some(idx) => *counts.entry(idx).or_default() += 1,
            None => return false,
        }
    }
    partition_into_root_sets(&mut counts)
}

fn partition_into_root_sets(counts: &mut BTreeMap<(u64, u64), usize>) -> bool {
    let remaining: usize = counts.values().sum();
    if remaining == 0 {
        return true;
    }
    let q = counts.iter().filter(|(_, &c)| c > 0).map(|(&(_, n), _)| n).max().unwrap_or(1);
    let mut k = q;
    while k as usize <= remaining {
        let set: Vec<(u64, u64)> = (0..k)
            .map(|j| {
                let g = j.gcd(&k);
                if j == 0 {
                    (0, 1)
                } else {
                    (j / g, k / g)
                }
            })
            .collect();
        if set.iter().all(|idx| counts.get(idx).copied().unwrap_or(0) > 0) {
            for idx in &set {
                *counts.get_mut(idx).unwrap() -= 1;
            }
            if partition_into_root_sets(counts) {
                return true;
            }
            for idx in &set {
                *counts.get_mut(idx).unwrap() += 1;
            }
        }
        k += q;
    }
    false
}

pub fn permutative(d: &AtomicRepDescriptor, tol: f64) -> bool {
    d.orbits.iter().all(|o| spectrum_is_permutative(&o.spectrum, tol))
}

#[derive(Serialize, Deserialize)]
struct OrbitWire {
    rep: EventuallyPeriodicWord,
    mult: usize,
    spectrum: Vec<Pair>,
}

impl TryFrom<OrbitWire> for OrbitEntry {
    type Error = Error;
    fn try_from(w: OrbitWire) -> Result<Self> {
        let rep = w.rep;
        if rep != rep.orbit_representative() {
            return Err(Error::InvalidDescriptor(format!(
                "representative {rep} is not the least pure cycle of its orbit"
            )));
        }
        let spectrum = unpair(w.spectrum);
        if spectrum.len() != w.mult {
            return Err(Error::InvalidDescriptor(format!(
                "orbit {rep}: multiplicity {} but {} spectrum values",
                w.mult,
                spectrum.len()
            )));
        }
        OrbitEntry::new(&rep, spectrum)
    }
}

impl From<OrbitEntry> for OrbitWire {
    fn from(o: OrbitEntry) -> Self {
        Self { rep: o.rep, mult: o.mult, spectrum: pairs(&o.spectrum) }
    }
}

#[derive(Serialize, Deserialize)]
struct DescriptorWire {
    #[serde(rename = "N")]
    n: usize,
    orbits: Vec<OrbitEntry>,
}

impl TryFrom<DescriptorWire> for AtomicRepDescriptor {
    type Error = Error;
    fn try_from(w: DescriptorWire) -> Result<Self> {
        AtomicRepDescriptor::new(w.n, w.orbits)
    }
}

impl From<AtomicRepDescriptor> for DescriptorWire {
    fn from(d: AtomicRepDescriptor) -> Self {
        Self { n: d.n, orbits: d.orbits }
    }
}
