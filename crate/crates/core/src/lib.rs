//! Classical simulation of the quantum-circuit route to second-order
//! Møller-Plesset (MP2) correlation energies.
//!
//! The crate builds the energy-loading (U_E), interaction-loading (U_INT) and
//! orbital-transform (U_trans) circuits from Hartree-Fock data, simulates
//! them on a dense statevector, lowers them to a native gate set under a
//! coupling map, and runs the λ-sweep regression that turns readout
//! probabilities into energies. A direct-summation MP2 oracle checks every
//! result.

pub mod builders;
pub mod circuit;
pub mod error;
pub mod estimate;
pub mod hfdata;
pub mod mp2;
pub mod par;
pub mod statevec;

pub use error::{Error, Result};
