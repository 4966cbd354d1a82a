//! RY hardware-efficient circuits with CNOT entanglers.

use crate::error::{Error, Result};
use crate::solver::{Statevector, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Entangler {
    /// CNOT(q → q+1) for q = 0, 1, …, n−2.
    #[default]
    ChainAscending,
    /// CNOT(q → q+1) for q = n−2, …, 0.
    ChainDescending,
    /// CNOT(q → q+1) on even q, then on odd q.
    Brick,
}

impl Entangler {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "ascending" | "chain" => Ok(Entangler::ChainAscending),
            "descending" => Ok(Entangler::ChainDescending),
            "brick" => Ok(Entangler::Brick),
            _ => Err(Error::Parse(format!("unknown entangler '{s}'"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Entangler::ChainAscending => "ascending",
            Entangler::ChainDescending => "descending",
            Entangler::Brick => "brick",
        }
    }

    /// Control/target pairs of one entangling layer, in application order.
    pub fn cnots(self, n: usize) -> Vec<(usize, usize)> {
        let chain: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|q| (q, q + 1)).collect();
        match self {
            Entangler::ChainAscending => chain,
            Entangler::ChainDescending => chain.into_iter().rev().collect(),
            Entangler::Brick => {
                let (even, odd): (Vec<_>, Vec<_>) = chain.into_iter().partition(|(q, _)| q % 2 == 0);
                even.into_iter().chain(odd).collect()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    Ry { qubit: usize, param: usize },
    Cnot { control: usize, target: usize },
}

/// Rotation layer, then `layers` repetitions of entangler and rotation layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CircuitTemplate {
    pub n_qubits: usize,
    pub layers: usize,
    pub entangler: Entangler,
}

impl CircuitTemplate {
    pub fn n_params(&self) -> usize {
        self.n_qubits * (self.layers + 1)
    }

    pub fn gates(&self) -> Vec<Gate> {
        let n = self.n_qubits;
        let mut g = vec![];
        let rot = |layer: usize, g: &mut Vec<Gate>| {
            for q in 0..n {
                g.push(Gate::Ry { qubit: q, param: layer * n + q });
            }
        };
        rot(0, &mut g);
        for layer in 1..=self.layers {
            for (c, t) in self.entangler.cnots(n) {
                g.push(Gate::Cnot { control: c, target: t });
            }
            rot(layer, &mut g);
        }
        g
    }

    /// Real amplitudes after running the circuit on `|0…0⟩`.
    pub fn simulate_real(&self, params: &[f64]) -> Result<Vec<f64>> {
        if params.len() != self.n_params() {
            return Err(Error::DimensionMismatch {
                expected: self.n_params(),
                found: params.len(),
            });
        }
        let n = self.n_qubits;
        let mut psi = vec![0.0; 1 << n];
        psi[0] = 1.0;
        for gate in self.gates() {
            match gate {
                Gate::Ry { qubit, param } => ry(&mut psi, n, qubit, params[param]),
                Gate::Cnot { control, target } => cnot(&mut psi, n, control, target),
            }
        }
        Ok(psi)
    }

    pub fn simulate(&self, params: &[f64]) -> Result<Statevector> {
        let amps = self.simulate_real(params)?.into_iter().map(|a| C64::new(a, 0.0)).collect();
        Statevector::from_amplitudes(self.n_qubits, amps)
    }
}

pub fn build_ry_hea(n_qubits: usize, layers: usize) -> CircuitTemplate {
    CircuitTemplate {
        n_qubits,
        layers,
        entangler: Entangler::default(),
    }
}

fn ry(psi: &mut [f64], n: usize, q: usize, theta: f64) {
    let bit = 1usize << (n - 1 - q);
    let (s, c) = (0.5 * theta).sin_cos();
    for i in 0..psi.len() {
        if i & bit == 0 {
            let (a0, a1) = (psi[i], psi[i | bit]);
            psi[i] = c * a0 - s * a1;
            psi[i | bit] = s * a0 + c * a1;
        }
    }
}

fn cnot(psi: &mut [f64], n: usize, control: usize, target: usize) {
    let cb = 1usize << (n - 1 - control);
    let tb = 1usize << (n - 1 - target);
    for i in 0..psi.len() {
        if i & cb != 0 && i & tb == 0 {
            psi.swap(i, i | tb);
        }
    }
}
