//! Ternary-tree fermion-to-qubit mappings and tools for tailoring them to a
//! molecule's correlation structure.

pub mod ansatz;
pub mod chem;
pub mod encode;
pub mod error;
pub mod pauli;
pub mod solver;
pub mod tailor;
pub mod ttree;

pub use chem::{MolecularIntegrals, SpatialIntegrals};
pub use encode::{LadderImages, OccupationVector};
pub use error::{Error, Result};
pub use pauli::{Pauli, PauliString, PauliSum, Phase};
pub use solver::{EntropyBase, MIMatrix, Statevector};
pub use ttree::{pair_majoranas, Branch, MajoranaPairing, TernaryTree};
