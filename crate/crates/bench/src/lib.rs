//! Fixture loading shared by the benchmarks.

use std::path::PathBuf;

use tailormap::chem::{parse_fcidump, to_spin_orbitals};
use tailormap::MolecularIntegrals;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data/fcidump")
        .join(format!("{name}.fcidump"))
}

/// Spin-orbital integrals of a bundled fixture. Panics if the file is missing.
pub fn load(name: &str) -> MolecularIntegrals {
    let path = fixture_path(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    to_spin_orbitals(&parse_fcidump(&text).expect("bundled fixture parses"))
}
