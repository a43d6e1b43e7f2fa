//! Exact exterior calculus on left-invariant structures.
//!
//! A Lie algebra is given by structure constants (equivalently the
//! differentials of its coframe). On top of that the crate verifies contact
//! pairs, locally conformally symplectic forms and their Lee data, normal
//! metric contact pairs, Vaisman structures, and symplectic and Kähler pairs.
//! All arithmetic is over arbitrary-precision rationals.

pub mod catalog;
pub mod commands;
pub mod complex;
pub mod document;
pub mod error;
pub mod exterior;
pub mod lie;
pub mod linalg;
pub mod pairs;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
pub use exterior::{IndexTuple, KForm, TangentVector, VolumeCheck};
pub use lie::{ConnectionData, LieAlgebraModel, MetricData};
pub use linalg::{Endomorphism, Matrix};
pub use scalar::{Poly, Scalar};
