//! Exact computations with finitely generated commutative differential graded
//! algebras over the rationals: cohomology, minimal models, s-formality,
//! Massey products and Lefschetz-type properties of symplectic classes.

pub mod analysis;
pub mod cdga;
pub mod cli;
pub mod dsl;
pub mod error;
pub mod grading;
pub mod models;
pub mod qlinalg;
pub mod sullivan;

pub use cdga::{CochainAlgebra, FreeCDGA};
pub use error::AlgebraError;
pub use grading::{Element, GeneratorSet, Monomial};
pub use qlinalg::Rational;
