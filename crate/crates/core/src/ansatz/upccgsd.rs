//! Paired generalized singles-and-doubles unitary coupled cluster.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::optim::Bfgs;
use crate::chem::MolecularIntegrals;
use crate::encode::{encoded_basis_index, map_hamiltonian, particle_sector, LadderImages, OccupationVector};
use crate::error::{Error, Result};
use crate::pauli::PauliSum;
use crate::solver::{LinearOperator, Sector, SparseOperator, Statevector, C64};
use crate::ttree::{pair_majoranas, MajoranaPairing, TernaryTree};

const ZERO: C64 = C64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExcitationKind {
    Single,
    Double,
}

/// One anti-Hermitian generator over the MO pair `(i, j)`, `i < j`.
#[derive(Debug, Clone)]
pub struct Generator {
    pub kind: ExcitationKind,
    pub pair: (usize, usize),
    /// Mutually commuting parts, each with `G³ = −G`.
    parts: Vec<SparseOperator>,
    full: SparseOperator,
}

impl Generator {
    pub fn operator(&self) -> &SparseOperator {
        &self.full
    }

    /// `v ← exp(θ G) v`.
    pub fn apply_exp(&self, theta: f64, v: &mut [C64]) {
        let (s, c) = theta.sin_cos();
        let mut g1 = vec![ZERO; v.len()];
        let mut g2 = vec![ZERO; v.len()];
        for part in &self.parts {
            part.apply(v, &mut g1);
            part.apply(&g1, &mut g2);
            for ((x, a), b) in v.iter_mut().zip(&g1).zip(&g2) {
                *x += s * a + (1.0 - c) * b;
            }
        }
    }
}

/// `exp(θ A) v` by a Taylor series truncated once a term falls below `tol`.
pub fn expm_multiply<A: LinearOperator>(op: &A, theta: f64, v: &[C64], tol: f64) -> Vec<C64> {
    let mut out = v.to_vec();
    let mut term = v.to_vec();
    let mut next = vec![ZERO; v.len()];
    for k in 1..500 {
        op.apply(&term, &mut next);
        let scale = theta / k as f64;
        let mut norm = 0.0;
        for (t, n) in term.iter_mut().zip(&next) {
            *t = n * scale;
            norm += t.norm_sqr();
        }
        for (o, t) in out.iter_mut().zip(&term) {
            *o += t;
        }
        if norm.sqrt() < tol {
            break;
        }
    }
    out
}

/// Pair double `a†_{2j} a†_{2j+1} a_{2i+1} a_{2i} − h.c.`.
pub fn double_generator(lad: &LadderImages, i: usize, j: usize) -> Result<PauliSum> {
    let t = lad.monomial(&[(2 * j, true), (2 * j + 1, true), (2 * i + 1, false), (2 * i, false)])?;
    t.try_sub(&t.adjoint())
}

/// Spin-resolved single `a†_{2j+σ} a_{2i+σ} − h.c.`.
pub fn single_generator(lad: &LadderImages, i: usize, j: usize, spin: usize) -> Result<PauliSum> {
    let t = lad.monomial(&[(2 * j + spin, true), (2 * i + spin, false)])?;
    t.try_sub(&t.adjoint())
}

/// Symmetric matrices of optimized `|θ|` over MO pairs.
#[derive(Debug, Clone)]
pub struct ExcitationReport {
    pub n_mo: usize,
    pub theta_s: Vec<Vec<f64>>,
    pub theta_d: Vec<Vec<f64>>,
    pub energy: f64,
    pub hf_energy: f64,
    pub converged: bool,
    pub iterations: usize,
}

impl ExcitationReport {
    pub fn from_matrices(theta_s: Vec<Vec<f64>>, theta_d: Vec<Vec<f64>>) -> Self {
        ExcitationReport {
            n_mo: theta_d.len(),
            theta_s,
            theta_d,
            energy: f64::NAN,
            hf_energy: f64::NAN,
            converged: true,
            iterations: 0,
        }
    }

    pub fn to_csv(&self, kind: ExcitationKind) -> String {
        let m = match kind {
            ExcitationKind::Single => &self.theta_s,
            ExcitationKind::Double => &self.theta_d,
        };
        let mut s = String::from("mo");
        for j in 0..self.n_mo {
            s.push_str(&format!(",mo{j}"));
        }
        s.push('\n');
        for (i, row) in m.iter().enumerate() {
            s.push_str(&format!("mo{i}"));
            for v in row {
                s.push_str(&format!(",{v:.10e}"));
            }
            s.push('\n');
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpccgsdOptions {
    pub restarts: usize,
    /// Spread of the random starting angles after the first restart.
    pub start_spread: f64,
    pub optimizer: Bfgs,
    pub seed: u64,
}

impl Default for UpccgsdOptions {
    fn default() -> Self {
        UpccgsdOptions {
            restarts: 3,
            start_spread: 0.1,
            optimizer: Bfgs::default(),
            seed: 11,
        }
    }
}

/// The ansatz restricted to the reference's particle-number and spin sector.
pub struct Upccgsd {
    pub n_mo: usize,
    pub sector: Sector,
    pub hamiltonian: SparseOperator,
    pub generators: Vec<Generator>,
    pub reference: Vec<C64>,
    pub hf_energy: f64,
}

impl Upccgsd {
    /// Builds generators in the order: doubles over lexicographic MO pairs, then singles.
    pub fn new(ints: &MolecularIntegrals, pairing: &MajoranaPairing) -> Result<Self> {
        let n_so = ints.n_spin_orbitals;
        let n_mo = n_so / 2;
        let ne = ints.n_electrons;
        let h = map_hamiltonian(ints, pairing)?;
        let sz = if ne % 2 == 0 { 0.0 } else { 0.5 };
        let sector = particle_sector(pairing, ne, Some(sz))?;
        let hamiltonian = SparseOperator::from_pauli_sum(&h, &sector)?;
        let lad = LadderImages::new(pairing);

        let pairs: Vec<(usize, usize)> = (0..n_mo)
            .flat_map(|i| ((i + 1)..n_mo).map(move |j| (i, j)))
            .collect();
        let mut generators = vec![];
        for &(i, j) in &pairs {
            let g = SparseOperator::from_pauli_sum(&double_generator(&lad, i, j)?, &sector)?;
            generators.push(Generator {
                kind: ExcitationKind::Double,
                pair: (i, j),
                parts: vec![g.clone()],
                full: g,
            });
        }
        for &(i, j) in &pairs {
            let ga = single_generator(&lad, i, j, 0)?;
            let gb = single_generator(&lad, i, j, 1)?;
            let full = SparseOperator::from_pauli_sum(&ga.try_add(&gb)?, &sector)?;
            generators.push(Generator {
                kind: ExcitationKind::Single,
                pair: (i, j),
                parts: vec![
                    SparseOperator::from_pauli_sum(&ga, &sector)?,
                    SparseOperator::from_pauli_sum(&gb, &sector)?,
                ],
                full,
            });
        }

        let occ = OccupationVector::lowest(n_so, ne)?;
        let idx = encoded_basis_index(pairing, &occ)?
            .ok_or_else(|| Error::InvalidArgument("reference is not a computational basis state".into()))?;
        let pos = sector
            .basis()
            .iter()
            .position(|&b| b == idx)
            .ok_or_else(|| Error::InvalidArgument("reference lies outside the sector".into()))?;
        let mut reference = vec![ZERO; sector.len()];
        reference[pos] = C64::new(1.0, 0.0);
        Ok(Upccgsd {
            n_mo,
            sector,
            hamiltonian,
            generators,
            reference,
            hf_energy: ints.hf_energy(),
        })
    }

    pub fn n_params(&self) -> usize {
        self.generators.len()
    }

    /// Amplitudes over the sector basis.
    pub fn state(&self, theta: &[f64]) -> Vec<C64> {
        let mut v = self.reference.clone();
        for (g, &t) in self.generators.iter().zip(theta) {
            g.apply_exp(t, &mut v);
        }
        v
    }

    pub fn full_state(&self, theta: &[f64]) -> Statevector {
        Statevector::from_subspace(self.sector.n_qubits(), self.sector.basis(), &self.state(theta))
    }

    pub fn energy(&self, theta: &[f64]) -> f64 {
        self.hamiltonian.expectation(&self.state(theta))
    }

    /// Energy and its gradient by reverse sweep through the product.
    pub fn energy_and_gradient(&self, theta: &[f64], grad: &mut [f64]) -> f64 {
        let mut phi = self.state(theta);
        let mut lam = vec![ZERO; phi.len()];
        self.hamiltonian.apply(&phi, &mut lam);
        let e: f64 = phi.iter().zip(&lam).map(|(a, b)| (a.conj() * b).re).sum();
        let mut gphi = vec![ZERO; phi.len()];
        for k in (0..self.generators.len()).rev() {
            let g = &self.generators[k];
            g.full.apply(&phi, &mut gphi);
            grad[k] = 2.0 * lam.iter().zip(&gphi).map(|(a, b)| (a.conj() * b).re).sum::<f64>();
            g.apply_exp(-theta[k], &mut phi);
            g.apply_exp(-theta[k], &mut lam);
        }
        e
    }

    /// Best of `restarts` quasi-Newton runs; the first starts at zero.
    pub fn optimize(&self, opts: &UpccgsdOptions) -> Result<ExcitationReport> {
        let n = self.n_params();
        let mut best: Option<super::optim::OptResult> = None;
        for r in 0..opts.restarts.max(1) {
            let x0: Vec<f64> = if r == 0 {
                vec![0.0; n]
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
                rng.set_stream(r as u64);
                (0..n).map(|_| rng.gen_range(-opts.start_spread..opts.start_spread)).collect()
            };
            let res = opts
                .optimizer
                .minimize(|x, g| self.energy_and_gradient(x, g), &x0);
            if best.as_ref().is_none_or(|b| res.f < b.f - 1e-12) {
                best = Some(res);
            }
        }
        let best = best.expect("at least one restart");
        let mut theta_s = vec![vec![0.0; self.n_mo]; self.n_mo];
        let mut theta_d = vec![vec![0.0; self.n_mo]; self.n_mo];
        for (g, &t) in self.generators.iter().zip(&best.x) {
            let (i, j) = g.pair;
            let m = match g.kind {
                ExcitationKind::Single => &mut theta_s,
                ExcitationKind::Double => &mut theta_d,
            };
            let a = super::optim::wrap_angle(t).abs();
            m[i][j] = a;
            m[j][i] = a;
        }
        Ok(ExcitationReport {
            n_mo: self.n_mo,
            theta_s,
            theta_d,
            energy: best.f,
            hf_energy: self.hf_energy,
            converged: best.converged,
            iterations: best.iterations,
        })
    }
}

/// Optimizes the ansatz under the Jordan–Wigner mapping.
pub fn upccgsd_optimize(ints: &MolecularIntegrals, opts: &UpccgsdOptions) -> Result<ExcitationReport> {
    let tree = TernaryTree::jordan_wigner(ints.n_spin_orbitals)?;
    let pairing = pair_majoranas(&tree)?;
    Upccgsd::new(ints, &pairing)?.optimize(opts)
}
