//! Fermion-to-qubit mappings parameterised by an enumeration scheme.
//!
//! The crate lowers fermionic interaction graphs to Pauli-string Hamiltonians
//! through Jordan–Wigner style transforms, builds the classic lattice
//! enumeration patterns (Z, S, diagonal, Mitchison–Durbin, cellular), scores
//! them with layout costs (edgesum, p-sum, bandwidth, Pauli weights,
//! measurement depth) and implements the two-ancilla auxiliary mapping on
//! square lattices.

pub mod auxmap;
pub mod cost;
pub mod error;
pub mod graph;
pub mod mappings;
pub mod pauli;
pub mod schemes;
pub mod search;

pub use error::{Error, Result};
pub use graph::{EnumerationScheme, Geometry, InteractionGraph};
pub use pauli::{Pauli, PauliString};
