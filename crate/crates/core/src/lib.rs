//! Structure constants of rings of finite rank from minimal free resolutions.
//!
//! The crate is organised bottom-up: exact arithmetic ([`rational`], [`poly`],
//! [`matrix`], [`modular`]), matrices of polynomials ([`polymatrix`]),
//! configurations and their graded resolutions ([`config`], [`resolution`]),
//! the bracket and brace calculus ([`brackets`]), multiplication tables
//! ([`table`]), Koszul comparison maps ([`koszul`]) and the classical
//! low-rank parametrizations ([`classical`]). Seeded identity checks live in
//! [`symmetry`] and [`suites`], drawing inputs from [`random`].

pub mod algebra;
pub mod brackets;
pub mod classical;
pub mod config;
pub mod error;
pub mod koszul;
pub mod matrix;
pub mod modular;
pub mod poly;
pub mod polymatrix;
pub mod random;
pub mod rational;
pub mod report;
pub mod resolution;
pub mod suites;
pub mod symmetry;
pub mod table;

pub use brackets::{Brackets, IndexWord, OmegaTensor};
pub use config::Configuration;
pub use error::{Error, Result};
pub use matrix::QMatrix;
pub use poly::{Monomial, MonomialBasis, Polynomial};
pub use polymatrix::PolyMatrix;
pub use rational::{q, Rational};
pub use report::Report;
pub use resolution::{build_resolution, validate, GradedFreeResolution};
pub use table::{structure_constants, verify_table, MultiplicationTable, Normalization, Scale};
