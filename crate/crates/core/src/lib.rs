//! Exact finite-field toolkit for generalized Reed-Solomon codes with
//! prescribed Galois hull dimension and the entanglement-assisted quantum
//! codes they yield.
//!
//! Layers, bottom up: [`ffield`] (arithmetic in `F_{p^e}`), [`linalg`]
//! (dense matrices over it), [`grs`] (codes and MDS oracles), [`hull`]
//! (Galois duals and hull measurement), [`families`] (the construction
//! recipes), [`eaqecc`] (quantum parameters), and the reproduction
//! drivers [`tables`], [`sweep`], [`descriptor`].

pub mod arith;
pub mod descriptor;
pub mod eaqecc;
pub mod exec;
pub mod families;
pub mod ffield;
pub mod grs;
pub mod hull;
pub mod linalg;
pub mod poly;
pub mod sweep;
pub mod tables;

pub use exec::Exec;
pub use ffield::{Elem, FieldCtx, GaloisLevel};
