//! Derivation complexes, evaluation subgroups and G-sequences of maps between
//! free differential graded Lie algebras over the rationals.

pub mod complex;
pub mod constructions;
pub mod der;
pub mod evsub;
pub mod lie;
pub mod linalg;
pub mod model;
pub mod rational;
pub mod rel;
pub mod syntax;

pub use rational::Q;
