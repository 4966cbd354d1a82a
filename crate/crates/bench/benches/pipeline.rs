use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use tailormap::ansatz::build_ry_hea;
use tailormap::encode::{map_hamiltonian, particle_sector};
use tailormap::solver::{ground_state_in_sector, mutual_information_matrix, EntropyBase, LanczosOptions, RealCompiledSum};
use tailormap::tailor::{optimize_permutation, PermutationMethod};
use tailormap::ttree::{pair_majoranas, TernaryTree};
use tailormap_bench::load;

fn mapping(c: &mut Criterion) {
    let ints = load("benzene_pi_sto3g");
    let pairing = pair_majoranas(&TernaryTree::jordan_wigner(12).unwrap()).unwrap();
    c.bench_function("map_hamiltonian/benzene_jw", |b| {
        b.iter(|| map_hamiltonian(black_box(&ints), &pairing).unwrap())
    });
}

fn exact(c: &mut Criterion) {
    let ints = load("lih_sto3g");
    let pairing = pair_majoranas(&TernaryTree::jordan_wigner(10).unwrap()).unwrap();
    let h = map_hamiltonian(&ints, &pairing).unwrap();
    let sector = particle_sector(&pairing, ints.n_electrons, Some(0.0)).unwrap();
    c.bench_function("lanczos/lih_sector", |b| {
        b.iter(|| ground_state_in_sector(black_box(&h), &sector, 1, &LanczosOptions::default()).unwrap())
    });
}

fn vqe_energy(c: &mut Criterion) {
    let ints = load("lih_sto3g");
    let pairing = pair_majoranas(&TernaryTree::jordan_wigner(10).unwrap()).unwrap();
    let h = map_hamiltonian(&ints, &pairing).unwrap();
    let op = RealCompiledSum::new(&h);
    let template = build_ry_hea(10, 4);
    let params: Vec<f64> = (0..template.n_params()).map(|k| 0.1 * k as f64).collect();
    c.bench_function("vqe_energy/lih_4_layers", |b| {
        b.iter(|| op.expectation(&template.simulate_real(black_box(&params)).unwrap()))
    });
}

fn reorder(c: &mut Criterion) {
    let ints = load("h2_631g");
    let pairing = pair_majoranas(&TernaryTree::jordan_wigner(8).unwrap()).unwrap();
    let h = map_hamiltonian(&ints, &pairing).unwrap();
    let sector = particle_sector(&pairing, 2, Some(0.0)).unwrap();
    let gs = ground_state_in_sector(&h, &sector, 1, &LanczosOptions::default()).unwrap();
    let mi = mutual_information_matrix(&gs.states[0], EntropyBase::Nat);
    let mut group = c.benchmark_group("permutation");
    group.sample_size(10);
    group.bench_function("exhaustive_8", |b| {
        b.iter(|| optimize_permutation(black_box(&mi), &PermutationMethod::Exhaustive, 0))
    });
    group.finish();
}

criterion_group!(benches, mapping, exact, vqe_energy, reorder);
criterion_main!(benches);
