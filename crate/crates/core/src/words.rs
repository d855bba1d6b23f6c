//! Finite and eventually periodic words over `Z_N`.
//!
//! An infinite word is represented exactly when it is eventually periodic:
//! a finite preperiod followed by a repeated primitive cycle. The canonical
//! form has a primitive cycle and a minimal preperiod, so structural equality
//! is equality of the letter streams.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::cis_fraction;

fn check_alphabet(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidAlphabet(n));
    }
    Ok(())
}

fn check_letters(n: usize, letters: &[usize]) -> Result<()> {
    match letters.iter().find(|&&l| l >= n) {
        Some(&letter) => Err(Error::LetterOutOfRange { letter, alphabet: n }),
        None => Ok(()),
    }
}

/// A finite word over `{0, ..., N-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "FiniteWordWire", into = "FiniteWordWire")]
pub struct FiniteWord {
    n: usize,
    letters: Vec<usize>,
}

impl FiniteWord {
    pub fn new(n: usize, letters: Vec<usize>) -> Result<Self> {
        check_alphabet(n)?;
        check_letters(n, &letters)?;
        Ok(Self { n, letters })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, Vec::new())
    }

    /// Parses a string of decimal digits, e.g. `"0110"`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize).unwrap_or(usize::MAX))
            .collect();
        Self::new(n, letters)
    }

    pub fn alphabet_size(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `self` followed by `letter`.
    pub fn extended(&self, letter: usize) -> Result<Self> {
        check_letters(self.n, &[letter])?;
        let mut letters = self.letters.clone();
        letters.push(letter);
        Ok(Self { n: self.n, letters })
    }

    /// All words of exactly `len` letters, in lexicographic order.
    pub fn all_of_length(n: usize, len: usize) -> Result<Vec<Self>> {
        check_alphabet(n)?;
        let mut out = vec![Self { n, letters: Vec::new() }];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (0..n).map(move |l| {
                        let mut letters = w.letters.clone();
                        letters.push(l);
                        Self { n, letters }
                    })
                })
                .collect();
        }
        Ok(out)
    }

    /// Rotation by `k` letters to the left.
    pub fn rotated(&self, k: usize) -> Self {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let len = letters.len();
            letters.rotate_left(k % len);
        }
        Self { n: self.n, letters }
    }

    /// `true` when the word is not a proper power of a shorter word.
    pub fn is_primitive(&self) -> bool {
        !self.is_empty() && smallest_root(&self.letters) == self.letters.len()
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_letters(self.n, &self.letters))
    }
}

fn render_letters(n: usize, letters: &[usize]) -> String {
    if n <= 10 {
        letters.iter().map(|l| l.to_string()).collect()
    } else {
        letters.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(".")
    }
}

/// Length of the shortest `u` with `letters = u^k`.
fn smallest_root(letters: &[usize]) -> usize {
    let len = letters.len();
    (1..=len)
        .filter(|q| len.is_multiple_of(*q))
        .find(|&q| (q..len).all(|i| letters[i] == letters[i - q]))
        .unwrap_or(len)
}

/// The cylinder set of all infinite words beginning with `prefix`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cylinder {
    pub prefix: FiniteWord,
}

impl Cylinder {
    pub fn new(prefix: FiniteWord) -> Self {
        Self { prefix }
    }
}

/// An eventually periodic infinite word `pre · cyc cyc cyc ...` in canonical form.
///
/// Ordering compares alphabet, then preperiod, then cycle; it is only used to
/// make reports deterministic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "WordWire", into = "WordWire")]
pub struct EventuallyPeriodicWord {
    n: usize,
    pre: Vec<usize>,
    cyc: Vec<usize>,
}

impl EventuallyPeriodicWord {
    /// Canonical form of `preperiod · cycle^∞`.
    pub fn canonicalize(preperiod: &FiniteWord, cycle: &FiniteWord) -> Result<Self> {
        if preperiod.n != cycle.n {
            return Err(Error::AlphabetMismatch { left: preperiod.n, right: cycle.n });
        }
        Self::from_letters(cycle.n, preperiod.letters.clone(), cycle.letters.clone())
    }

    pub fn from_letters(n: usize, mut pre: Vec<usize>, cyc: Vec<usize>) -> Result<Self> {
        check_alphabet(n)?;
        if cyc.is_empty() {
            return Err(Error::EmptyCycle);
        }
        check_letters(n, &pre)?;
        check_letters(n, &cyc)?;
        let root = smallest_root(&cyc);
        let mut cyc: Vec<usize> = cyc[..root].to_vec();
        while let (Some(&p), Some(&c)) = (pre.last(), cyc.last()) {
            if p != c {
                break;
            }
            pre.pop();
            cyc.rotate_right(1);
        }
        Ok(Self { n, pre, cyc })
    }

    /// The pure cycle `cyc^∞`.
    pub fn cyclic(cycle: &FiniteWord) -> Result<Self> {
        Self::from_letters(cycle.n, Vec::new(), cycle.letters.clone())
    }

    pub fn alphabet_size(&self) -> usize {
        self.n
    }

    pub fn preperiod(&self) -> FiniteWord {
        FiniteWord { n: self.n, letters: self.pre.clone() }
    }

    pub fn cycle(&self) -> FiniteWord {
        FiniteWord { n: self.n, letters: self.cyc.clone() }
    }

    pub fn is_cyclic(&self) -> bool {
        self.pre.is_empty()
    }

    pub fn letter_at(&self, k: usize) -> usize {
        if k < self.pre.len() {
            self.pre[k]
        } else {
            self.cyc[(k - self.pre.len()) % self.cyc.len()]
        }
    }

    /// The first `len` letters of the stream.
    pub fn prefix(&self, len: usize) -> FiniteWord {
        FiniteWord { n: self.n, letters: (0..len).map(|k| self.letter_at(k)).collect() }
    }

    pub fn first_letter(&self) -> usize {
        self.letter_at(0)
    }

    /// The left shift σ.
    pub fn shift(&self) -> Self {
        if self.pre.is_empty() {
            let mut cyc = self.cyc.clone();
            cyc.rotate_left(1);
            Self { n: self.n, pre: Vec::new(), cyc }
        } else {
            Self { n: self.n, pre: self.pre[1..].to_vec(), cyc: self.cyc.clone() }
        }
    }

    /// The inverse branch σ_i: `w ↦ i·w`.
    pub fn prepend(&self, i: usize) -> Result<Self> {
        check_letters(self.n, &[i])?;
        let mut pre = Vec::with_capacity(self.pre.len() + 1);
        pre.push(i);
        pre.extend_from_slice(&self.pre);
        Self::from_letters(self.n, pre, self.cyc.clone())
    }

    pub fn in_cylinder(&self, c: &Cylinder) -> Result<bool> {
        if c.prefix.n != self.n {
            return Err(Error::AlphabetMismatch { left: self.n, right: c.prefix.n });
        }
        Ok(c.prefix.letters.iter().enumerate().all(|(k, &l)| self.letter_at(k) == l))
    }

    /// `(k, p)`: the smallest `k`, `p` with `σ^{k+p}(w) = σ^k(w)`.
    pub fn minimal_period(&self) -> (usize, usize) {
        (self.pre.len(), self.cyc.len())
    }

    /// `true` when both words lie in the same grand orbit `∪ σ^{-k}σ^l(w)`.
    pub fn orbit_equal(&self, other: &Self) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::AlphabetMismatch { left: self.n, right: other.n });
        }
        Ok(self.cyc.len() == other.cyc.len()
            && least_rotation(&self.cyc) == least_rotation(&other.cyc))
    }

    /// The pure cycle through the lexicographically least rotation of the cycle.
    pub fn orbit_representative(&self) -> Self {
        Self { n: self.n, pre: Vec::new(), cyc: least_rotation(&self.cyc) }
    }
}

impl fmt::Display for EventuallyPeriodicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.pre.is_empty() {
            write!(f, "{}·", render_letters(self.n, &self.pre))?;
        }
        write!(f, "({})^∞", render_letters(self.n, &self.cyc))
    }
}

fn least_rotation(cyc: &[usize]) -> Vec<usize> {
    (0..cyc.len())
        .map(|k| {
            let mut r = cyc.to_vec();
            r.rotate_left(k);
            r
        })
        .min()
        .unwrap_or_default()
}

/// `⟨I, ξ⟩` as an exponent `k` with `⟨I, ξ⟩ = exp(2πi·k/N)`.
pub fn character_exponent(word: &FiniteWord, xi: &FiniteWord) -> Result<usize> {
    if word.n != xi.n {
        return Err(Error::AlphabetMismatch { left: word.n, right: xi.n });
    }
    Ok(word.letters.iter().zip(&xi.letters).map(|(a, b)| a * b).sum::<usize>() % word.n)
}

/// The Fourier pairing `∏_k exp(2πi·I_k·ξ_k/N)`; the shorter word is padded with zeros.
pub fn character_pairing(word: &FiniteWord, xi: &FiniteWord) -> Result<Complex64> {
    let k = character_exponent(word, xi)?;
    Ok(cis_fraction(k as i64, word.n as u64))
}

/// One representative (the lexicographically least rotation) of every
/// rotation class of primitive words of length `p`, in lexicographic order.
///
/// These are the Lyndon words of length `p`, generated by Duval's algorithm.
pub fn enumerate_primitive_words(n: usize, p: usize) -> Result<Vec<FiniteWord>> {
    check_alphabet(n)?;
    let mut out = Vec::new();
    if p == 0 {
        return Ok(out);
    }
    let mut w: Vec<usize> = vec![0];
    loop {
        if w.len() == p {
            out.push(FiniteWord { n, letters: w.clone() });
        }
        let m = w.len();
        while w.len() < p {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&(n - 1)) {
            w.pop();
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct FiniteWordWire {
    #[serde(rename = "N")]
    n: usize,
    letters: Vec<usize>,
}

impl TryFrom<FiniteWordWire> for FiniteWord {
    type Error = Error;
    fn try_from(w: FiniteWordWire) -> Result<Self> {
        FiniteWord::new(w.n, w.letters)
    }
}

impl From<FiniteWord> for FiniteWordWire {
    fn from(w: FiniteWord) -> Self {
        Self { n: w.n, letters: w.letters }
    }
}

#[derive(Serialize, Deserialize)]
struct WordWire {
    #[serde(rename = "N")]
    n: usize,
    pre: Vec<usize>,
    cyc: Vec<usize>,
}

impl TryFrom<WordWire> for EventuallyPeriodicWord {
    type Error = Error;
    fn try_from(w: WordWire) -> Result<Self> {
        EventuallyPeriodicWord::from_letters(w.n, w.pre, w.cyc)
    }
}

impl From<EventuallyPeriodicWord> for WordWire {
    fn from(w: EventuallyPeriodicWord) -> Self {
        Self { n: w.n, pre: w.pre, cyc: w.cyc }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fw(n: usize, s: &str) -> FiniteWord {
        FiniteWord::parse(n, s).unwrap()
    }

    fn ep(n: usize, pre: &str, cyc: &str) -> EventuallyPeriodicWord {
        EventuallyPeriodicWord::canonicalize(&fw(n, pre), &fw(n, cyc)).unwrap()
    }

    fn raw(w: &EventuallyPeriodicWord) -> (String, String) {
        (w.preperiod().to_string(), w.cycle().to_string())
    }

    /// Stream-level oracle: the first `len` letters of `pre · cyc^∞`.
    fn stream(pre: &[usize], cyc: &[usize], len: usize) -> Vec<usize> {
        (0..len)
            .map(|k| if k < pre.len() { pre[k] } else { cyc[(k - pre.len()) % cyc.len()] })
            .collect()
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(raw(&ep(2, "01", "11")), ("0".into(), "1".into()));
        assert_eq!(raw(&ep(2, "", "0101")), ("".into(), "01".into()));
        assert_eq!(raw(&ep(2, "", "0")), ("".into(), "0".into()));
    }

    #[test]
    fn canonicalize_errors() {
        assert_eq!(
            EventuallyPeriodicWord::from_letters(2, vec![0], vec![]),
            Err(Error::EmptyCycle)
        );
        assert_eq!(
            EventuallyPeriodicWord::from_letters(2, vec![2], vec![0]),
            Err(Error::LetterOutOfRange { letter: 2, alphabet: 2 })
        );
        assert!(matches!(
            EventuallyPeriodicWord::canonicalize(&fw(2, "0"), &fw(3, "1")),
            Err(Error::AlphabetMismatch { .. })
        ));
        assert_eq!(FiniteWord::new(1, vec![]), Err(Error::InvalidAlphabet(1)));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(ep(2, "0", "1").shift(), ep(2, "", "1"));
        assert_eq!(raw(&ep(2, "", "01").shift()), ("".into(), "10".into()));
        assert_eq!(ep(2, "", "0").shift(), ep(2, "", "0"));
    }

    #[test]
    fn prepend_examples() {
        assert_eq!(raw(&ep(3, "", "0").prepend(2).unwrap()), ("2".into(), "0".into()));
        assert_eq!(ep(2, "", "0").prepend(0).unwrap(), ep(2, "", "0"));
        assert!(ep(2, "", "0").prepend(2).is_err());
    }

    #[test]
    fn prepend_one_to_alternating_cycle_matches_stream_oracle() {
        let w = ep(2, "", "10").prepend(1).unwrap();
        let depth = 3 * 3;
        assert_eq!(w.prefix(depth).letters(), stream(&[1], &[1, 0], depth).as_slice());
        // The stream 1 1 0 1 0 ... is not purely periodic; the canonical pair is (1, 10).
        assert_eq!(raw(&w), ("1".into(), "10".into()));
        assert_ne!(w.prefix(depth).letters(), stream(&[], &[1, 1, 0], depth).as_slice());
    }

    #[test]
    fn in_cylinder_examples() {
        let c = |s: &str| Cylinder::new(fw(2, s));
        assert!(ep(2, "", "01").in_cylinder(&c("010")).unwrap());
        assert!(!ep(2, "", "01").in_cylinder(&c("1")).unwrap());
        assert!(ep(2, "1", "0").in_cylinder(&c("10")).unwrap());
    }

    #[test]
    fn minimal_period_examples() {
        assert_eq!(ep(2, "", "0").minimal_period(), (0, 1));
        assert_eq!(ep(2, "", "011").minimal_period(), (0, 3));
        // Stream 1 0 0 1 0 1 ...: σ^1 = 0 0 1 0 1 ... is not periodic, σ^2 is.
        let w = ep(2, "10", "01");
        let s = stream(&[1, 0], &[0, 1], 40);
        let brute = (0..10)
            .flat_map(|k| (1..5).map(move |p| (k, p)))
            .find(|&(k, p)| (k..30).all(|i| s[i] == s[i + p]))
            .unwrap();
        assert_eq!(w.minimal_period(), brute);
        assert_eq!(brute, (2, 2));
    }

    #[test]
    fn orbit_equal_examples() {
        let a = ep(2, "", "01");
        let b = ep(2, "1", "10");
        assert_eq!(b.shift().shift(), ep(2, "", "01"));
        assert!(a.orbit_equal(&b).unwrap());
        assert!(!ep(2, "", "0").orbit_equal(&ep(2, "", "1")).unwrap());
        assert!(!a.orbit_equal(&ep(2, "", "011")).unwrap());
    }

    #[test]
    fn orbit_representative_examples() {
        assert_eq!(ep(2, "1", "10").orbit_representative(), ep(2, "", "01"));
        assert_eq!(ep(2, "", "0").orbit_representative(), ep(2, "", "0"));
        assert_eq!(raw(&ep(3, "", "211").orbit_representative()), ("".into(), "112".into()));
    }

    #[test]
    fn character_pairing_examples() {
        assert_eq!(character_pairing(&fw(2, "00"), &fw(2, "11")).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(character_pairing(&fw(2, "1"), &fw(2, "1")).unwrap(), Complex64::new(-1.0, 0.0));
        let direct = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * 1.0 * 1.0 / 3.0)
            * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * 2.0 * 0.0 / 3.0);
        let got = character_pairing(&fw(3, "12"), &fw(3, "10")).unwrap();
        assert!((got - direct).norm() < 1e-15);
        assert!(character_pairing(&fw(2, "1"), &fw(3, "1")).is_err());
    }

    /// Brute-force oracle: all primitive words, reduced to their least rotation.
    fn primitive_classes_brute(n: usize, p: usize) -> Vec<Vec<usize>> {
        let mut classes: Vec<Vec<usize>> = FiniteWord::all_of_length(n, p)
            .unwrap()
            .into_iter()
            .filter(|w| w.is_primitive())
            .map(|w| least_rotation(w.letters()))
            .collect();
        classes.sort();
        classes.dedup();
        classes
    }

    fn mobius(mut q: usize) -> i64 {
        let mut result = 1;
        let mut d = 2;
        while d * d <= q {
            if q.is_multiple_of(d) {
                q /= d;
                if q.is_multiple_of(d) {
                    return 0;
                }
                result = -result;
            }
            d += 1;
        }
        if q > 1 {
            result = -result;
        }
        result
    }

    #[test]
    fn enumerate_primitive_words_examples() {
        let strs = |v: Vec<FiniteWord>| v.iter().map(|w| w.to_string()).collect::<Vec<_>>();
        assert_eq!(strs(enumerate_primitive_words(2, 1).unwrap()), vec!["0", "1"]);
        assert_eq!(strs(enumerate_primitive_words(2, 2).unwrap()), vec!["01"]);
        assert_eq!(strs(enumerate_primitive_words(2, 3).unwrap()), vec!["001", "011"]);
    }

    #[test]
    fn enumerate_primitive_words_matches_brute_force_and_necklace_formula() {
        for n in 2usize..=4 {
            for p in 1..=7 {
                if n.pow(p as u32) > 20_000 {
                    continue;
                }
                let got: Vec<Vec<usize>> = enumerate_primitive_words(n, p)
                    .unwrap()
                    .into_iter()
                    .map(|w| w.letters().to_vec())
                    .collect();
                assert_eq!(got, primitive_classes_brute(n, p), "N={n} p={p}");
                let count: i64 = (1..=p)
                    .filter(|q| p % q == 0)
                    .map(|q| mobius(q) * (n as i64).pow((p / q) as u32))
                    .sum::<i64>()
                    / p as i64;
                assert_eq!(got.len() as i64, count);
            }
        }
    }

    #[test]
    fn json_round_trip_and_validation() {
        let w = ep(3, "21", "012");
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"N":3,"pre":[2,1],"cyc":[0,1,2]}"#);
        assert_eq!(serde_json::from_str::<EventuallyPeriodicWord>(&s).unwrap(), w);
        let absorbed: EventuallyPeriodicWord =
            serde_json::from_str(r#"{"N":2,"pre":[0,1],"cyc":[1,1]}"#).unwrap();
        assert_eq!(absorbed, ep(2, "0", "1"));
        assert!(serde_json::from_str::<EventuallyPeriodicWord>(r#"{"N":2,"pre":[],"cyc":[]}"#).is_err());
        let f: FiniteWord = serde_json::from_str(r#"{"N":2,"letters":[1,0]}"#).unwrap();
        assert_eq!(f, fw(2, "10"));
    }

    fn arb_word() -> impl Strategy<Value = EventuallyPeriodicWord> {
        (2usize..=4).prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(0..n, 0..5),
                prop::collection::vec(0..n, 1..5),
            )
                .prop_map(|(n, pre, cyc)| EventuallyPeriodicWord::from_letters(n, pre, cyc).unwrap())
        })
    }

    proptest! {
        #[test]
        fn shift_inverts_prepend(w in arb_word(), i in 0usize..4) {
            let i = i % w.alphabet_size();
            prop_assert_eq!(w.prepend(i).unwrap().shift(), w.clone());
            prop_assert_eq!(w.shift().prepend(w.first_letter()).unwrap(), w);
        }

        #[test]
        fn canonicalize_is_idempotent_and_stream_preserving(
            n in 2usize..=3,
            pre in prop::collection::vec(0usize..3, 0..5),
            cyc in prop::collection::vec(0usize..3, 1..6),
        ) {
            let pre: Vec<usize> = pre.into_iter().map(|l| l % n).collect();
            let cyc: Vec<usize> = cyc.into_iter().map(|l| l % n).collect();
            let w = EventuallyPeriodicWord::from_letters(n, pre.clone(), cyc.clone()).unwrap();
            let again = EventuallyPeriodicWord::canonicalize(&w.preperiod(), &w.cycle()).unwrap();
            prop_assert_eq!(&again, &w);
            let depth = 3 * (pre.len() + cyc.len());
            let expected = stream(&pre, &cyc, depth);
            let got = w.prefix(depth);
            prop_assert_eq!(got.letters(), expected.as_slice());
            prop_assert!(w.cycle().is_primitive());
            if let Some(&p) = w.preperiod().letters().last() {
                prop_assert_ne!(p, *w.cycle().letters().last().unwrap());
            }
        }

        #[test]
        fn orbit_equality_is_an_equivalence_labelled_by_the_representative(
            a in arb_word(), b in arb_word(), c in arb_word()
        ) {
            prop_assert!(a.orbit_equal(&a).unwrap());
            if a.alphabet_size() == b.alphabet_size() {
                let ab = a.orbit_equal(&b).unwrap();
                prop_assert_eq!(ab, b.orbit_equal(&a).unwrap());
                prop_assert_eq!(ab, a.orbit_representative() == b.orbit_representative());
                if c.alphabet_size() == a.alphabet_size() && ab && b.orbit_equal(&c).unwrap() {
                    prop_assert!(a.orbit_equal(&c).unwrap());
                }
            }
            prop_assert!(a.orbit_equal(&a.orbit_representative()).unwrap());
        }
    }
}
