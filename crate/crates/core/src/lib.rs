//! Finite-dimensional representations of the Cuntz algebra: symbolic words,
//! finite correlated representations, spectral filter banks, Hadamard triples,
//! Walsh bases and classification of atomic representations.

pub mod classify;
pub mod error;
pub mod exact;
pub mod fincorr;
pub mod hadamard;
pub mod linalg;
pub mod scalar;
pub mod specfilters;
pub mod walsh;
pub mod wire;
pub mod words;

pub use classify::{AtomicRepDescriptor, OrbitEntry};
pub use error::{Error, Result};
pub use exact::Surd;
pub use hadamard::{ExtremeCycle, HadamardTriple, SpectrumSlice};
pub use fincorr::{ClassificationReport, CycleAtom, MatrixTuple, Verdict};
pub use scalar::Scalar;
pub use specfilters::{AtomCertificate, FilterBank, LaurentPolynomial};
pub use walsh::{StepFunction, WalshMatrix};
pub use words::{Cylinder, EventuallyPeriodicWord, FiniteWord};
