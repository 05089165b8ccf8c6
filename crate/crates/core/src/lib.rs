//! Exact analysis of nilpotent Lie algebra laws given by rational structure
//! constants.
//!
//! The crate decides, where possible, whether a law carries a nilsoliton
//! metric (equivalently, whether the algebra is an Einstein nilradical) and
//! produces exact certificates either way:
//!
//! * derivation algebras and diagonal tori over the rationals,
//! * the pre-Einstein derivation, its eigenvalue type, the Min value and the
//!   target moment map,
//! * the nice-basis convex criterion, decided by an exact rational simplex,
//! * diagonal one-parameter degenerations that certify non-closed orbits,
//! * verification of explicit soliton metrics, including coefficients given
//!   as square roots of rationals,
//! * export of the graded soliton polynomial systems for external solvers.
//!
//! Everything except the explicitly numeric soliton route is computed in
//! exact arithmetic; all outputs are deterministic.

pub mod algebra;
pub mod catalog;
pub mod classify;
pub mod degeneration;
pub mod derivations;
pub mod error;
pub mod format;
pub mod linalg;
pub mod moment;
pub mod nice;
pub mod numeric;
pub mod pre_einstein;
pub mod rational;
pub mod report;
pub mod simplex;

pub use algebra::{LieLaw, ParamCoeff, Slot};
pub use error::{Error, Result};
pub use linalg::RMatrix;
pub use rational::Rat;
