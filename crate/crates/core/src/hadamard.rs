//! Hadamard triples `(R, B, L)` and the permutative representations on their spectra.
//!
//! The isometries `S_l e_λ = e_{Rλ + l}` act on `ℓ²(Λ)`, where `Λ` is the union
//! of the sets `Λ(C)` grown from the extreme cycles `C`. Everything is integer
//! or rational arithmetic except the Fourier transform of `μ_B`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::classify::{merge, AtomicRepDescriptor, OrbitEntry};
use crate::error::{Error, Result};
use crate::scalar::cis_fraction;
use crate::words::EventuallyPeriodicWord;

/// `R ≥ 2` and digit sets `B`, `L` of equal size, both containing 0.
///
/// `B` and `L` are kept sorted; word letters are indices into `L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TripleWire", into = "TripleWire")]
pub struct HadamardTriple {
    r: i64,
    b: Vec<i64>,
    l: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HadamardCheck {
    pub unitary: bool,
    /// Largest `|⟨row_b, row_b'⟩|` over distinct rows of the normalised matrix.
    pub defect: f64,
}

/// `x_0 → x_1 → ... → x_{p-1} → x_0` with `x_{t+1} = (x_t + l_t)/R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremeCycle {
    pub points: Vec<Rational64>,
    pub digits: Vec<i64>,
}

/// `Λ(C) ∩ [−bound, bound]`, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumSlice {
    pub cycle: ExtremeCycle,
    pub bound: i64,
    pub elements: Vec<i64>,
}

impl HadamardTriple {
    pub fn new(r: i64, mut b: Vec<i64>, mut l: Vec<i64>) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidTriple(format!("R = {r} must be at least 2")));
        }
        if b.len() != l.len() {
            return Err(Error::SizeMismatch { b: b.len(), l: l.len() });
        }
        b.sort_unstable();
        l.sort_unstable();
        for (name, set) in [("B", &b), ("L", &l)] {
            if set.binary_search(&0).is_err() {
                return Err(Error::InvalidTriple(format!("{name} must contain 0")));
            }
            if set.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidTriple(format!("{name} has repeated elements")));
            }
        }
        if l.len() < 2 {
            return Err(Error::InvalidAlphabet(l.len()));
        }
        Ok(Self { r, b, l })
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn b(&self) -> &[i64] {
        &self.b
    }

    pub fn l(&self) -> &[i64] {
        &self.l
    }

    /// `N = |B| = |L|`.
    pub fn alphabet_size(&self) -> usize {
        self.l.len()
    }

    /// Letter of the digit `l`.
    pub fn letter(&self, digit: i64) -> Option<usize> {
        self.l.binary_search(&digit).ok()
    }

    /// Exact unitarity of `(1/√N)(e^{2πi bl/R})`.
    ///
    /// Rows have unit norm automatically, and `⟨row_b, row_b'⟩ = 0` iff the
    /// cyclotomic polynomial `Φ_R` divides `Σ_l x^{(b−b')l mod R}`.
    pub fn hadamard_check(&self) -> HadamardCheck {
        let phi = cyclotomic(self.r as u64);
        let n = self.alphabet_size() as f64;
        let mut unitary = true;
        let mut defect = 0f64;
        for (i, &b1) in self.b.iter().enumerate() {
            for &b2 in &self.b[i + 1..] {
                let exponents: Vec<i64> = self.l.iter().map(|&l| ((b1 - b2) * l).rem_euclid(self.r)).collect();
                let mut p = vec![0i64; self.r as usize];
                for &e in &exponents {
                    p[e as usize] += 1;
                }
                if !remainder(p, &phi).iter().all(|&c| c == 0) {
                    unitary = false;
                }
                let sum: Complex64 = exponents.iter().map(|&e| cis_fraction(e, self.r as u64)).sum();
                defect = defect.max(sum.norm() / n);
            }
        }
        HadamardCheck { unitary, defect }
    }

    fn ensure_hadamard(&self) -> Result<()> {
        let check = self.hadamard_check();
        if !check.unitary {
            return Err(Error::NotUnitary { deviation: check.defect });
        }
        Ok(())
    }

    /// `m_B(x) = (1/√N) Σ_b e^{2πi bx}`.
    pub fn m_b(&self, x: Rational64) -> Complex64 {
        let sum: Complex64 = self
            .b
            .iter()
            .map(|&b| {
                let phase = x * b;
                cis_fraction(*phase.numer(), *phase.denom() as u64)
            })
            .sum();
        sum / (self.alphabet_size() as f64).sqrt()
    }

    /// `|m_B(x)| = √N` exactly.
    ///
    /// Since `0 ∈ B` contributes the term 1, the triangle equality forces every
    /// `e^{2πi bx}` to equal 1, that is `bx ∈ ℤ` for all `b`.
    pub fn is_extreme_point(&self, x: Rational64) -> bool {
        self.b.iter().all(|&b| (x * b).is_integer())
    }

    /// All extreme cycles, each once, starting at its least point.
    ///
    /// Cycle points lie in `[min L/(R−1), max L/(R−1)]` and, being extreme, in
    /// `(1/g)ℤ` with `g = gcd(B∖{0})`, so the search is over a finite graph.
    pub fn extreme_cycle_search(&self) -> Result<Vec<ExtremeCycle>> {
        self.ensure_hadamard()?;
        let g = self.b.iter().fold(0i64, |g, &b| g.gcd(&b)).max(1);
        let lo = Rational64::new(self.l[0], self.r - 1);
        let hi = Rational64::new(*self.l.last().unwrap_or(&0), self.r - 1);
        let first = (lo * g).ceil().to_integer();
        let last = (hi * g).floor().to_integer();
        let vertices: Vec<Rational64> =
            (first..=last).map(|k| Rational64::new(k, g)).filter(|&x| self.is_extreme_point(x)).collect();
        let is_vertex = |x: &Rational64| vertices.binary_search(x).is_ok();
        let step = |x: Rational64| -> Vec<(i64, Rational64)> {
            self.l
                .iter()
                .map(|&l| (l, (x + l) / self.r))
                .filter(|(_, next)| is_vertex(next))
                .collect()
        };
        let mut out = Vec::new();
        for &start in &vertices {
            let mut path = Vec::new();
            walk_cycles(start, start, &step, &mut path, &mut out);
        }
        out.sort_by(|a, b| (a.points.len(), &a.points, &a.digits).cmp(&(b.points.len(), &b.points, &b.digits)));
        Ok(out)
    }

    /// `Λ(C) ∩ [−bound, bound]`: the closure of `−C` under `λ ↦ Rλ + l`.
    ///
    /// Once `|λ| > max|L|/(R−1)` the maps strictly increase `|λ|`, so the
    /// closure is computed inside the larger of the two bounds and then cut.
    pub fn lambda_set(&self, cycle: &ExtremeCycle, bound: i64) -> Result<SpectrumSlice> {
        let seeds = cycle
            .points
            .iter()
            .map(|x| if x.is_integer() { Ok(-x.to_integer()) } else { Err(Error::NonIntegerCycle(x.to_string())) })
            .collect::<Result<Vec<i64>>>()?;
        let max_l = self.l.iter().map(|l| l.abs()).max().unwrap_or(0);
        let reach = bound.max(Integer::div_ceil(&max_l, &(self.r - 1))).max(seeds.iter().map(|s| s.abs()).max().unwrap_or(0));
        let mut seen: BTreeSet<i64> = seeds.iter().copied().collect();
        let mut queue: VecDeque<i64> = seeds.into_iter().collect();
        while let Some(x) = queue.pop_front() {
            for &l in &self.l {
                let next = self.r * x + l;
                if next.abs() <= reach && seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        Ok(SpectrumSlice {
            cycle: cycle.clone(),
            bound,
            elements: seen.into_iter().filter(|x| x.abs() <= bound).collect(),
        })
    }

    /// The itinerary `E(λ)`: `λ = l_0 + Rλ_1`, `λ_1 = l_1 + Rλ_2`, ... read as letters of `L`.
    pub fn encode(&self, lambda: i64) -> Result<EventuallyPeriodicWord> {
        let mut seen: HashMap<i64, usize> = HashMap::new();
        let mut letters = Vec::new();
        let mut x = lambda;
        loop {
            if let Some(&start) = seen.get(&x) {
                let cyc = letters.split_off(start);
                return EventuallyPeriodicWord::from_letters(self.alphabet_size(), letters, cyc);
            }
            seen.insert(x, letters.len());
            let (letter, &l) = self
                .l
                .iter()
                .enumerate()
                .find(|(_, &l)| (x - l).rem_euclid(self.r) == 0)
                .ok_or(Error::NotEncodable { lambda: x, step: letters.len() })?;
            letters.push(letter);
            x = (x - l) / self.r;
        }
    }

    /// `S_w e_λ` for `S_i e_λ = e_{Rλ + l_i}`; the last letter acts first.
    pub fn apply_word(&self, letters: &[usize], lambda: i64) -> i64 {
        letters.iter().rev().fold(lambda, |x, &i| self.r * x + self.l[i])
    }

    /// One orbit per extreme cycle, labelled by `E(−x_0)`, with cycle unitary `[1]`.
    pub fn descriptor(&self) -> Result<AtomicRepDescriptor> {
        let n = self.alphabet_size();
        let parts = self
            .extreme_cycle_search()?
            .iter()
            .map(|c| {
                let x0 = c.points[0];
                if !x0.is_integer() {
                    return Err(Error::NonIntegerCycle(x0.to_string()));
                }
                let word = self.encode(-x0.to_integer())?;
                let cycle = word.cycle();
                // e_{−x_0} is fixed by S_I, so the cycle unitary is exactly 1.
                if self.apply_word(cycle.letters(), -x0.to_integer()) != -x0.to_integer() {
                    return Err(Error::InvalidDescriptor(format!("S_{cycle} does not fix e_{}", -x0)));
                }
                AtomicRepDescriptor::new(n, vec![OrbitEntry::new(&word, vec![Complex64::new(1.0, 0.0)])?])
            })
            .collect::<Result<Vec<_>>>()?;
        merge(n, &parts)
    }

    /// `|Π_{k=1}^{depth} m_B(R^{-k}(λ1 − λ2))/√N|`, the truncated `|μ̂_B(λ1 − λ2)|`.
    pub fn fourier_orthogonality(&self, lambda1: i64, lambda2: i64, depth: u32) -> f64 {
        let t = (lambda1 - lambda2) as f64;
        let n = self.alphabet_size() as f64;
        let r = self.r as f64;
        let mut x = t;
        let mut product = 1.0;
        for _ in 0..depth {
            x /= r;
            let sum: Complex64 = self.b.iter().map(|&b| Complex64::from_polar(1.0, std::f64::consts::TAU * b as f64 * x)).sum();
            product *= sum.norm() / n;
        }
        product
    }
}

/// Depth-first enumeration of simple cycles through `start` over vertices `>= start`.
fn walk_cycles(
    start: Rational64,
    at: Rational64,
    step: &impl Fn(Rational64) -> Vec<(i64, Rational64)>,
    path: &mut Vec<(Rational64, i64)>,
    out: &mut Vec<ExtremeCycle>,
) {
    for (digit, next) in step(at) {
        if next == start {
            let mut cycle = path.clone();
            cycle.push((at, digit));
            out.push(ExtremeCycle {
                points: cycle.iter().map(|&(x, _)| x).collect(),
                digits: cycle.iter().map(|&(_, l)| l).collect(),
            });
        } else if next > start && next != at && !path.iter().any(|&(x, _)| x == next) {
            path.push((at, digit));
            walk_cycles(start, next, step, path, out);
            path.pop();
        }
    }
}

/// Coefficients of `Φ_n`, constant term first.
fn cyclotomic(n: u64) -> Vec<i64> {
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        p = quotient(&p, &cyclotomic(d));
    }
    p
}

/// Exact quotient by a monic divisor.
fn quotient(p: &[i64], monic: &[i64]) -> Vec<i64> {
    let mut rem = p.to_vec();
    let dm = monic.len() - 1;
    let mut q = vec![0i64; rem.len().saturating_sub(dm)];
    for k in (0..q.len()).rev() {
        let c = rem[k + dm];
        q[k] = c;
        for (j, &m) in monic.iter().enumerate() {
            rem[k + j] -= c * m;
        }
    }
    q
}

/// Remainder modulo a monic polynomial.
fn remainder(mut p: Vec<i64>, monic: &[i64]) -> Vec<i64> {
    let dm = monic.len() - 1;
    while p.len() > dm {
        let c = p.pop().unwrap_or(0);
        let k = p.len() - dm;
        for (j, &m) in monic[..dm].iter().enumerate() {
            p[k + j] -= c * m;
        }
    }
    p
}

#[derive(Serialize, Deserialize)]
struct TripleWire {
    #[serde(rename = "R")]
    r: i64,
    #[serde(rename = "B")]
    b: Vec<i64>,
    #[serde(rename = "L")]
    l: Vec<i64>,
}

impl TryFrom<TripleWire> for HadamardTriple {
    type Error = Error;
    fn try_from(w: TripleWire) -> Result<Self> {
        HadamardTriple::new(w.r, w.b, w.l)
    }
}

impl From<HadamardTriple> for TripleWire {
    fn from(t: HadamardTriple) -> Self {
        Self { r: t.r, b: t.b, l: t.l }
    }
}

fn rational_string(x: &Rational64) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl Serialize for ExtremeCycle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            points: Vec<String>,
            digits: &'a [i64],
        }
        Wire { points: self.points.iter().map(rational_string).collect(), digits: &self.digits }.serialize(s)
    }
}

impl ExtremeCycle {
    /// Both defining conditions, checked exactly.
    pub fn is_valid_for(&self, t: &HadamardTriple) -> bool {
        let p = self.points.len();
        p > 0
            && p == self.digits.len()
            && (0..p).all(|k| (self.points[k] + self.digits[k]) / t.r == self.points[(k + 1) % p])
            && self.points.iter().all(|&x| t.is_extreme_point(x))
            && self.digits.iter().all(|&l| t.letter(l).is_some())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains_zero(&self) -> bool {
        self.points.iter().any(Zero::is_zero)
    }

    pub fn max_abs_point(&self) -> Rational64 {
        self.points.iter().map(|x| x.abs()).max().unwrap_or_else(Rational64::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{decompose, disjoint, equivalent, irreducible, SPECTRUM_TOL};
    use crate::words::FiniteWord;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn triple(r: i64, b: &[i64], l: &[i64]) -> HadamardTriple {
        HadamardTriple::new(r, b.to_vec(), l.to_vec()).unwrap()
    }

    fn dyadic() -> HadamardTriple {
        triple(2, &[0, 1], &[0, 1])
    }

    fn quarter_cantor() -> HadamardTriple {
        triple(4, &[0, 2], &[0, 1])
    }

    fn q(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn word(n: usize, pre: &str, cyc: &str) -> EventuallyPeriodicWord {
        EventuallyPeriodicWord::canonicalize(&FiniteWord::parse(n, pre).unwrap(), &FiniteWord::parse(n, cyc).unwrap())
            .unwrap()
    }

    /// Sum of row products evaluated in floating point, as an independent check.
    fn numeric_defect(t: &HadamardTriple) -> f64 {
        let mut worst = 0f64;
        for (i, &b1) in t.b().iter().enumerate() {
            for &b2 in &t.b()[i + 1..] {
                let s: Complex64 = t
                    .l()
                    .iter()
                    .map(|&l| Complex64::from_polar(1.0, std::f64::consts::TAU * ((b1 - b2) * l) as f64 / t.r() as f64))
                    .sum();
                worst = worst.max(s.norm());
            }
        }
        worst
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(1), vec![-1, 1]);
        assert_eq!(cyclotomic(2), vec![1, 1]);
        assert_eq!(cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(remainder(vec![1, 1, 1], &cyclotomic(3)), vec![0, 0]);
    }

    #[test]
    fn hadamard_check_examples() {
        assert!(dyadic().hadamard_check().unitary);
        assert!(quarter_cantor().hadamard_check().unitary);
        let bad = triple(2, &[0, 1], &[0, 2]).hadamard_check();
        assert!(!bad.unitary);
        assert_abs_diff_eq!(bad.defect, 1.0, epsilon = 1e-12);
        assert!(triple(3, &[0, 1, 2], &[0, 1, 2]).hadamard_check().unitary);
        assert!(triple(6, &[0, 2, 4], &[0, 1, 5]).hadamard_check().unitary);
        assert!(matches!(HadamardTriple::new(2, vec![0, 1], vec![0]), Err(Error::SizeMismatch { b: 2, l: 1 })));
        assert!(HadamardTriple::new(2, vec![1, 2], vec![0, 1]).is_err());
        assert!(HadamardTriple::new(1, vec![0, 1], vec![0, 1]).is_err());
    }

    #[test]
    fn m_b_examples() {
        let t = dyadic();
        assert_abs_diff_eq!(t.m_b(q(0, 1)).re, 2f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(t.m_b(q(1, 2)).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(t.m_b(q(1, 1)).re, 2f64.sqrt(), epsilon = 1e-15);
        for k in -8..=8 {
            let x = q(k, 7);
            assert!(t.m_b(x).norm() <= 2f64.sqrt() + 1e-12);
            assert_eq!(t.is_extreme_point(x), (t.m_b(x).norm() - 2f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn extreme_cycles_examples() {
        let cycles = dyadic().extreme_cycle_search().unwrap();
        assert_eq!(
            cycles,
            vec![
                ExtremeCycle { points: vec![q(0, 1)], digits: vec![0] },
                ExtremeCycle { points: vec![q(1, 1)], digits: vec![1] },
            ]
        );
        assert_eq!(quarter_cantor().extreme_cycle_search().unwrap(), vec![ExtremeCycle { points: vec![q(0, 1)], digits: vec![0] }]);
        assert!(triple(2, &[0, 1], &[0, 2]).extreme_cycle_search().is_err());
    }

    #[test]
    fn longer_cycle() {
        // x = 1 ↦ (1 + 2)/3 = 1 is a fixed point; 0 ↦ 0; with L = {0, 2, 4}, 1 → 2 → 2 also appear.
        let t = triple(3, &[0, 1, 2], &[0, 4, 8]);
        assert!(t.hadamard_check().unitary);
        let cycles = t.extreme_cycle_search().unwrap();
        assert!(cycles.iter().all(|c| c.is_valid_for(&t)));
        let points: Vec<Vec<Rational64>> = cycles.iter().map(|c| c.points.clone()).collect();
        assert_eq!(points, vec![vec![q(0, 1)], vec![q(2, 1)], vec![q(4, 1)], vec![q(1, 1), q(3, 1)]]);
        // E(−x_0) reads the digits forward from x_0.
        let c = &cycles[3];
        assert_eq!(c.digits, vec![8, 0]);
        assert_eq!(t.encode(-1).unwrap(), word(3, "", "20"));
    }

    #[test]
    fn lambda_set_examples() {
        let t = dyadic();
        let cycles = t.extreme_cycle_search().unwrap();
        assert_eq!(t.lambda_set(&cycles[0], 100).unwrap().elements, (0..=100).collect::<Vec<_>>());
        assert_eq!(t.lambda_set(&cycles[1], 100).unwrap().elements, (-100..=-1).collect::<Vec<_>>());
        let t = quarter_cantor();
        let zero = &t.extreme_cycle_search().unwrap()[0];
        assert_eq!(t.lambda_set(zero, 21).unwrap().elements, vec![0, 1, 4, 5, 16, 17, 20, 21]);
        let half = ExtremeCycle { points: vec![q(1, 2)], digits: vec![0] };
        assert!(matches!(t.lambda_set(&half, 10), Err(Error::NonIntegerCycle(_))));
    }

    #[test]
    fn encode_examples() {
        let t = dyadic();
        assert_eq!(t.encode(0).unwrap(), word(2, "", "0"));
        assert_eq!(t.encode(-1).unwrap(), word(2, "", "1"));
        assert_eq!(t.encode(5).unwrap(), word(2, "101", "0"));
        assert_eq!(t.encode(-6).unwrap(), word(2, "010", "1"));
        let t = quarter_cantor();
        assert!(matches!(t.encode(2), Err(Error::NotEncodable { lambda: 2, step: 0 })));
        assert!(matches!(t.encode(8), Err(Error::NotEncodable { lambda: 2, step: 1 })));
    }

    #[test]
    fn descriptor_examples() {
        let d = dyadic().descriptor().unwrap();
        assert_eq!(d.orbits().len(), 2);
        let reps: Vec<_> = d.orbits().iter().map(|o| o.rep.clone()).collect();
        assert_eq!(reps, vec![word(2, "", "0"), word(2, "", "1")]);
        assert!(d.orbits().iter().all(|o| o.mult == 1 && (o.spectrum[0] - 1.0).norm() < 1e-15));
        let parts = decompose(&d);
        assert!(parts.iter().all(irreducible));
        assert!(!equivalent(&parts[0], &parts[1], SPECTRUM_TOL).unwrap());
        assert!(disjoint(&parts[0], &parts[1]).unwrap());
        let d = quarter_cantor().descriptor().unwrap();
        assert_eq!(d.orbits().len(), 1);
        assert_eq!(d.orbits()[0].rep, word(2, "", "0"));
    }

    #[test]
    fn fourier_orthogonality_examples() {
        let t = dyadic();
        assert_abs_diff_eq!(t.fourier_orthogonality(7, 7, 5), 1.0);
        assert!(t.fourier_orthogonality(0, 1, 30) <= 1e-8);
        assert!(t.fourier_orthogonality(0, 2, 30) <= 1e-8);
        let t = quarter_cantor();
        assert!(t.fourier_orthogonality(0, 1, 30) <= 1e-12);
        assert!(t.fourier_orthogonality(4, 17, 30) <= 1e-12);
        // 2 ∉ Λ(0) and 0, 2 are not orthogonal for the quarter Cantor measure.
        assert!(t.fourier_orthogonality(0, 2, 30) > 0.1);
    }

    fn arb_triple() -> impl Strategy<Value = HadamardTriple> {
        prop_oneof![
            Just(dyadic()),
            Just(quarter_cantor()),
            Just(triple(3, &[0, 1, 2], &[0, 1, 2])),
            Just(triple(3, &[0, 1, 2], &[0, 4, 8])),
            Just(triple(4, &[0, 1], &[0, 2])),
            Just(triple(4, &[0, 2], &[0, 3])),
            Just(triple(6, &[0, 2, 4], &[0, 1, 5])),
            Just(triple(2, &[0, 1], &[-1, 0])),
        ]
    }

    #[test]
    fn exact_check_matches_numeric_defect() {
        for r in 2..=6 {
            for b1 in 1..r {
                for l1 in 1..2 * r {
                    for l0 in [-r, 0] {
                        let Ok(t) = HadamardTriple::new(r, vec![0, b1], vec![0, l1 + l0]) else { continue };
                        assert_eq!(t.hadamard_check().unitary, numeric_defect(&t) < 1e-9, "{t:?}");
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn spectra_are_consistent(t in arb_triple(), b1 in 1i64..40, extra in 0i64..40) {
            prop_assert!(t.hadamard_check().unitary);
            let cycles = t.extreme_cycle_search().unwrap();
            prop_assert!(cycles.iter().any(|c| c.points == vec![q(0, 1)] && c.digits == vec![0]));
            let mut slices = Vec::new();
            for c in cycles.iter().filter(|c| c.points.iter().all(|x| x.is_integer())) {
                prop_assert!(c.is_valid_for(&t));
                let b1 = b1 + c.max_abs_point().to_integer();
                let b2 = b1 + extra;
                let small = t.lambda_set(c, b1).unwrap();
                let big = t.lambda_set(c, b2).unwrap();
                let cut: Vec<i64> = big.elements.iter().copied().filter(|x| x.abs() <= b1).collect();
                prop_assert_eq!(&small.elements, &cut);
                prop_assert!(c.points.iter().all(|x| small.elements.contains(&-x.to_integer())));
                let tail = t.encode(-c.points[0].to_integer()).unwrap();
                for &lambda in &small.elements {
                    let e = t.encode(lambda).unwrap();
                    prop_assert!(e.orbit_equal(&tail).unwrap());
                }
                for w in small.elements.windows(2).take(6) {
                    let mut last = 1.0 + 1e-12;
                    for depth in [4, 8, 16, 24] {
                        let v = t.fourier_orthogonality(w[0], w[1], depth);
                        prop_assert!(v <= last + 1e-12);
                        last = v;
                    }
                }
                slices.push(small.elements);
            }
            for (i, a) in slices.iter().enumerate() {
                for b in &slices[i + 1..] {
                    prop_assert!(a.iter().all(|x| !b.contains(x)));
                }
            }
        }
    }
}
