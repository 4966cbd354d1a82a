//! Variational ground-state search over RY hardware-efficient circuits.

use std::f64::consts::PI;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::hea::CircuitTemplate;
use super::optim::{NelderMead, OptResult, Rotosolve};
use crate::error::{Error, Result};
use crate::pauli::PauliSum;
use crate::solver::RealCompiledSum;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Optimizer {
    NelderMead(NelderMead),
    Rotosolve(Rotosolve),
}

impl Optimizer {
    /// Nelder–Mead with the given iteration budget.
    pub fn simplex(max_iter: usize) -> Self {
        Optimizer::NelderMead(NelderMead {
            max_iter,
            ..NelderMead::default()
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Optimizer::NelderMead(_) => "nelder-mead",
            Optimizer::Rotosolve(_) => "rotosolve",
        }
    }

    fn minimize<F: FnMut(&[f64]) -> f64>(&self, f: F, x0: &[f64]) -> OptResult {
        match self {
            Optimizer::NelderMead(o) => o.minimize(f, x0),
            Optimizer::Rotosolve(o) => o.minimize(f, x0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VqeOptions {
    pub restarts: usize,
    pub seed: u64,
    pub optimizer: Optimizer,
}

impl Default for VqeOptions {
    fn default() -> Self {
        VqeOptions {
            restarts: 10,
            seed: 1,
            optimizer: Optimizer::simplex(2000),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RestartTrace {
    pub restart: usize,
    pub energies: Vec<f64>,
    pub final_energy: f64,
    pub converged: bool,
    pub evaluations: usize,
}

#[derive(Debug, Clone)]
pub struct VqeResult {
    pub energy: f64,
    pub params: Vec<f64>,
    pub best_restart: usize,
    pub traces: Vec<RestartTrace>,
}

impl VqeResult {
    /// Columns `restart,iteration,energy`.
    pub fn trace_csv(&self) -> String {
        let mut s = String::from("restart,iteration,energy\n");
        for t in &self.traces {
            for (i, e) in t.energies.iter().enumerate() {
                writeln!(s, "{},{},{:.12e}", t.restart, i + 1, e).unwrap();
            }
        }
        s
    }
}

/// Starting angles of restart `r`, uniform in `(−π, π]`.
pub fn initial_params(seed: u64, restart: usize, n: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    (0..n).map(|_| PI - rng.gen::<f64>() * 2.0 * PI).collect()
}

/// Lowest energy over independent seeded restarts.
pub fn vqe(h: &PauliSum, template: &CircuitTemplate, opts: &VqeOptions) -> Result<VqeResult> {
    if h.n_qubits() != template.n_qubits {
        return Err(Error::DimensionMismatch {
            expected: template.n_qubits,
            found: h.n_qubits(),
        });
    }
    if !h.is_hermitian(1e-10) {
        let im = h.iter().map(|(_, c)| c.im.abs()).fold(0.0, f64::max);
        return Err(Error::NotHermitian(im));
    }
    let op = RealCompiledSum::new(h);
    let energy = |x: &[f64]| {
        let psi = template.simulate_real(x).expect("parameter count checked");
        op.expectation(&psi)
    };
    let n = template.n_params();
    let runs: Vec<(OptResult, usize)> = (0..opts.restarts.max(1))
        .into_par_iter()
        .map(|r| {
            let x0 = initial_params(opts.seed, r, n);
            (opts.optimizer.minimize(energy, &x0), r)
        })
        .collect();
    let (best_idx, _) = runs
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, (res, _))| if res.f < acc.1 { (i, res.f) } else { acc });
    let traces = runs
        .iter()
        .map(|(res, r)| RestartTrace {
            restart: *r,
            energies: res.trace.clone(),
            final_energy: res.f,
            converged: res.converged,
            evaluations: res.evaluations,
        })
        .collect();
    Ok(VqeResult {
        energy: runs[best_idx].0.f,
        params: runs[best_idx].0.x.clone(),
        best_restart: runs[best_idx].1,
        traces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ansatz::hea::build_ry_hea;
    use crate::pauli::PauliString;
    use num_complex::Complex64;

    fn sum(terms: &[(&str, f64)], n: usize) -> PauliSum {
        let mut h = PauliSum::zero(n);
        for &(s, c) in terms {
            h.add_term(&PauliString::parse(s, n).unwrap(), Complex64::new(c, 0.0));
        }
        h
    }

    #[test]
    fn single_qubit_minus_z() {
        let h = sum(&[("Z0", -1.0)], 1);
        let r = vqe(&h, &build_ry_hea(1, 0), &VqeOptions { restarts: 3, ..Default::default() }).unwrap();
        assert!((r.energy + 1.0).abs() < 1e-6);
        assert_eq!(r.traces.len(), 3);
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let h = sum(&[("Z0Z1", 1.0), ("X0", 0.5), ("X1", 0.5)], 2);
        let t = build_ry_hea(2, 1);
        let opts = VqeOptions { restarts: 4, seed: 9, optimizer: Optimizer::simplex(300) };
        let a = vqe(&h, &t, &opts).unwrap();
        let b = vqe(&h, &t, &opts).unwrap();
        assert_eq!(a.energy.to_bits(), b.energy.to_bits());
        assert_eq!(a.trace_csv(), b.trace_csv());
    }

    #[test]
    fn rotosolve_reaches_ground_state() {
        let h = sum(&[("Z0Z1", 1.0), ("X0", 0.5), ("X1", 0.5)], 2);
        let exact = crate::solver::dense_spectrum(&h).unwrap()[0];
        let opts = VqeOptions { restarts: 3, seed: 2, optimizer: Optimizer::Rotosolve(Rotosolve::default()) };
        let r = vqe(&h, &build_ry_hea(2, 2), &opts).unwrap();
        assert!(r.energy >= exact - 1e-9);
        assert!(r.energy - exact < 1e-6);
    }

    #[test]
    fn restart_streams_differ() {
        assert_ne!(initial_params(1, 0, 4), initial_params(1, 1, 4));
        assert!(initial_params(5, 3, 50).iter().all(|&t| t > -PI && t <= PI));
    }
}
