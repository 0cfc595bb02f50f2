//! Modular data, fusion rules and quantum dimensions for rational vertex
//! operator algebra families.
//!
//! The crate builds the modular data (conformal weights, central charge,
//! S-matrix, conjugation) of Virasoro minimal models, the Ising model,
//! affine sl2 at level k and even lattices, then derives from it
//!
//! - fusion rules through the Verlinde formula ([`verlinde`]),
//! - quantum dimensions, global dimensions and simple currents ([`qdim`]),
//! - Perron-Frobenius radii of fusion matrices and their ADE
//!   classification ([`spectral`]).
//!
//! Independently of the S-matrix, [`qseries`] builds truncated q-characters
//! and estimates quantum dimensions as limits of character ratios, and
//! [`galois`] handles the finite-group side of fixed-point subalgebras.
//! [`catalog`] names the built-in families and [`fixtures`] replays the
//! reference examples end to end.

pub mod catalog;
pub mod error;
pub mod fixtures;
pub mod galois;
pub mod lattice;
pub mod modular_data;
pub mod qdim;
pub mod qseries;
pub mod rational;
pub mod spectral;
pub mod verlinde;

pub use catalog::FamilySpec;
pub use error::{Error, Result};
pub use modular_data::{
    build_affine_sl2, build_ising, build_lattice, build_minimal_model, min_weight_label, validate,
    ComplexValue, ModularDatum, ValidationReport,
};
pub use qdim::{DimensionTag, DimensionValue};
pub use qseries::{GradedSeries, LimitEstimate};
pub use rational::Rational;
pub use verlinde::{fusion_from_smatrix, fusion_matrix, FusionTensor};
