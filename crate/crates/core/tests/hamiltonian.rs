mod common;

use common::{info_f64, integrals, spatial};
use tailormap::chem::hartree_to_kcalmol;
use tailormap::encode::{encode_occupation, map_hamiltonian, particle_sector, LadderImages, OccupationVector};
use tailormap::solver::{dense_spectrum, expectation, ground_state_in_sector, LanczosOptions};
use tailormap::ttree::{pair_majoranas, TernaryTree};

#[test]
fn h2_hf_energy_matches_generator() {
    let sp = spatial("h2_631g");
    let e_ref = info_f64("h2_631g", "e_hf");
    assert!((sp.closed_shell_energy() - e_ref).abs() < 1e-8);
    let ints = integrals("h2_631g");
    assert!((ints.hf_energy() - e_ref).abs() < 1e-8);
}

#[test]
fn h2_hf_expectation_under_several_mappings() {
    let ints = integrals("h2_631g");
    let e_hf = ints.hf_energy();
    let hf = OccupationVector::lowest(8, 2).unwrap();
    for tree in [
        TernaryTree::jordan_wigner(8).unwrap(),
        TernaryTree::parity_x(&[0, 1, 2, 3, 4, 5, 6, 7]).unwrap(),
        TernaryTree::parity_x(&[3, 1, 7, 0, 2, 6, 5, 4]).unwrap(),
    ] {
        let pr = pair_majoranas(&tree).unwrap();
        let h = map_hamiltonian(&ints, &pr).unwrap();
        let psi = encode_occupation(&pr, &hf).unwrap();
        assert!((expectation(&h, &psi).unwrap() - e_hf).abs() < 1e-10);
    }
}

#[test]
fn h2_correlation_energy() {
    let ints = integrals("h2_631g");
    let pr = pair_majoranas(&TernaryTree::jordan_wigner(8).unwrap()).unwrap();
    let h = map_hamiltonian(&ints, &pr).unwrap();
    let sector = particle_sector(&pr, 2, Some(0.0)).unwrap();
    let gs = ground_state_in_sector(&h, &sector, 1, &LanczosOptions::default()).unwrap();
    let corr = hartree_to_kcalmol(ints.hf_energy() - gs.energies[0]);
    assert!((gs.energies[0] - info_f64("h2_631g", "e_fci")).abs() < 1e-8);
    assert!((corr - 15.4945).abs() < 0.01, "correlation {corr}");
}

#[test]
fn h2_number_conservation_and_spectrum() {
    let ints = integrals("h2_631g");
    let pr_jw = pair_majoranas(&TernaryTree::jordan_wigner(8).unwrap()).unwrap();
    let pr_p = pair_majoranas(&TernaryTree::parity_x(&[0, 1, 2, 3, 4, 5, 6, 7]).unwrap()).unwrap();
    let h_jw = map_hamiltonian(&ints, &pr_jw).unwrap();
    let h_p = map_hamiltonian(&ints, &pr_p).unwrap();
    let n_tot = LadderImages::new(&pr_p).total_number();
    assert!(h_p.commutator(&n_tot).unwrap().is_zero(1e-12));
    let a = dense_spectrum(&h_jw).unwrap();
    let b = dense_spectrum(&h_p).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y).abs() < 1e-9);
    }
}
