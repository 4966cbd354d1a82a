#![allow(dead_code)]

use std::collections::HashMap;
use std::path::PathBuf;

use tailormap::chem::{parse_fcidump, to_spin_orbitals, MolecularIntegrals, SpatialIntegrals};

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/fcidump")
}

pub fn spatial(name: &str) -> SpatialIntegrals {
    let text = std::fs::read_to_string(data_dir().join(format!("{name}.fcidump"))).unwrap();
    parse_fcidump(&text).unwrap()
}

pub fn integrals(name: &str) -> MolecularIntegrals {
    to_spin_orbitals(&spatial(name))
}

/// Key/value sidecar written next to each fixture by the generator.
pub fn info(name: &str) -> HashMap<String, String> {
    let text = std::fs::read_to_string(data_dir().join(format!("{name}.info"))).unwrap();
    text.lines()
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .collect()
}

pub fn info_f64(name: &str, key: &str) -> f64 {
    info(name)[key].parse().unwrap()
}
