//! JSON helpers shared by every module: complex numbers as `[re, im]` and
//! canonical float rounding.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Rounds to 15 significant digits and normalises `-0.0`, so that reports are
/// byte-identical across runs and platforms.
pub fn round15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{x:.14e}").parse().unwrap_or(x);
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Complex number on the wire: `[re, im]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pair(pub Complex64);

impl Serialize for Pair {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [round15(self.0.re), round15(self.0.im)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Pair {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Pair(Complex64::new(re, im)))
    }
}

/// A square or rectangular matrix on the wire: either row-major flat pairs or nested rows.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixWire {
    Rows(Vec<Vec<Pair>>),
    Flat(Vec<Pair>),
}

impl MatrixWire {
    /// Row-major entries of a `rows × cols` matrix, if the shape fits.
    pub fn entries(&self, rows: usize, cols: usize) -> Option<Vec<Complex64>> {
        match self {
            MatrixWire::Flat(v) => (v.len() == rows * cols).then(|| v.iter().map(|p| p.0).collect()),
            MatrixWire::Rows(r) => (r.len() == rows && r.iter().all(|row| row.len() == cols))
                .then(|| r.iter().flatten().map(|p| p.0).collect()),
        }
    }
}

/// Row-major flat encoding of a matrix.
pub fn matrix_flat(m: &DMatrix<Complex64>) -> Vec<Pair> {
    (0..m.nrows()).flat_map(|i| (0..m.ncols()).map(move |j| Pair(m[(i, j)]))).collect()
}

/// Nested-rows encoding of a matrix.
pub fn matrix_rows(m: &DMatrix<Complex64>) -> Vec<Vec<Pair>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| Pair(m[(i, j)])).collect()).collect()
}

pub fn pairs(values: &[Complex64]) -> Vec<Pair> {
    values.iter().copied().map(Pair).collect()
}

pub fn unpair(values: Vec<Pair>) -> Vec<Complex64> {
    values.into_iter().map(|p| p.0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_is_canonical() {
        assert_eq!(round15(-0.0).to_bits(), 0.0f64.to_bits());
        assert_eq!(round15(0.1 + 0.2), 0.3);
        assert_eq!(round15(1e-300), 1e-300);
        let s = serde_json::to_string(&Pair(Complex64::new(-0.0, 0.5))).unwrap();
        assert_eq!(s, "[0.0,0.5]");
        let p: Pair = serde_json::from_str("[1, -2.5]").unwrap();
        assert_eq!(p.0, Complex64::new(1.0, -2.5));
    }

    #[test]
    fn matrices_accept_flat_and_nested_rows() {
        let flat: MatrixWire = serde_json::from_str("[[1,0],[0,0],[0,0],[1,0]]").unwrap();
        let rows: MatrixWire = serde_json::from_str("[[[1,0],[0,0]],[[0,0],[1,0]]]").unwrap();
        assert_eq!(flat.entries(2, 2), rows.entries(2, 2));
        assert!(flat.entries(3, 1).is_none());
        let m = DMatrix::from_row_slice(1, 2, &[Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0)]);
        assert_eq!(serde_json::to_string(&matrix_flat(&m)).unwrap(), "[[1.0,0.0],[0.0,2.0]]");
    }
}
