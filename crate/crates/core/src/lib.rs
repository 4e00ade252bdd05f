//! Spectral toolkit for the PT-symmetric family H = p² − (ix)^{2N} on the
//! positive half line, expanded in a generalized-Laguerre oscillator basis.
//!
//! The operator becomes a complex symmetric matrix in that basis; this crate
//! assembles it, diagonalizes it, classifies how much of the spectrum stays
//! real, reconstructs wavefunctions, and checks the results against
//! transcribed published values.

pub mod eigen;
pub mod error;
pub mod hamiltonian;
pub mod laguerre;
pub mod matrix;
pub mod reference;
pub mod selftest;
pub mod special;
pub mod wavefunction;

pub use eigen::{classify, solve, ClassSummary, Spectrum, SpectrumClass, TridiagonalSymmetric};
pub use error::{Error, Result};
pub use hamiltonian::{
    assemble, assemble_with_nodes, BasisSpec, ComplexSymmetricMatrix, MatrixDocument,
    PotentialSpec,
};
pub use laguerre::{ExpansionCoefficients, ExpansionMode, LaguerreParams, QuadratureRule};
pub use matrix::{ComplexMatrix, RealMatrix};
pub use reference::{
    compare_energy_table, compare_matrix, sweep_reality, DeltaReport, ReferenceDataset, SweepTable,
};
pub use selftest::{run_all, SuiteResult};
pub use wavefunction::{
    basis_eval, decay_metric, default_grid, discrete_orthogonality, expansion_coefficients,
    reconstruct, OrthogonalityReport, RecursionPolynomials, WavefunctionSamples,
};
