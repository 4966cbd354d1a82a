//! Reduced density matrices, von Neumann entropies and mutual information.

use std::fmt::Write as _;

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;

use super::statevector::{Statevector, C64};
use crate::error::{Error, Result};

/// Eigenvalues below this are dropped from entropy sums.
pub const EIGEN_CUTOFF: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EntropyBase {
    #[default]
    Nat,
    Two,
}

impl EntropyBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            EntropyBase::Nat => x.ln(),
            EntropyBase::Two => x.log2(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            EntropyBase::Nat => "ln",
            EntropyBase::Two => "log2",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "ln" | "e" | "nat" | "nats" => Ok(EntropyBase::Nat),
            "log2" | "2" | "bit" | "bits" => Ok(EntropyBase::Two),
            _ => Err(Error::Parse(format!("unknown log base '{s}'"))),
        }
    }
}

/// `−Σ p log p` over the given probabilities.
pub fn shannon(probs: impl IntoIterator<Item = f64>, base: EntropyBase) -> f64 {
    probs
        .into_iter()
        .filter(|&p| p > EIGEN_CUTOFF)
        .map(|p| -p * base.log(p))
        .sum()
}

pub fn von_neumann(rho: &DMatrix<C64>, base: EntropyBase) -> f64 {
    let eig = SymmetricEigen::new(rho.clone());
    shannon(eig.eigenvalues.iter().copied(), base)
}

/// Reduced state on one or two qubits, in the order given by `subset`.
pub fn reduced_density(psi: &Statevector, subset: &[usize]) -> Result<DMatrix<C64>> {
    let n = psi.n_qubits();
    if subset.is_empty() || subset.len() > 2 {
        return Err(Error::InvalidArgument(format!(
            "reduced density supports 1 or 2 qubits, got {}",
            subset.len()
        )));
    }
    for &q in subset {
        if q >= n {
            return Err(Error::QubitOutOfRange { index: q, n_qubits: n });
        }
    }
    if subset.len() == 2 && subset[0] == subset[1] {
        return Err(Error::InvalidArgument("repeated qubit in subset".into()));
    }
    Ok(partial_trace(psi.amplitudes(), n, subset))
}

fn partial_trace(amps: &[C64], n: usize, subset: &[usize]) -> DMatrix<C64> {
    let bits: Vec<usize> = subset.iter().map(|&q| 1usize << (n - 1 - q)).collect();
    let mask: usize = bits.iter().sum();
    let s = subset.len();
    let d = 1usize << s;
    // Sub-index r has bit (s−1−t) set when subset[t] is 1.
    let offsets: Vec<usize> = (0..d)
        .map(|r| {
            (0..s)
                .filter(|t| (r >> (s - 1 - t)) & 1 == 1)
                .map(|t| bits[t])
                .sum()
        })
        .collect();
    let mut rho = DMatrix::<C64>::zeros(d, d);
    for rest in (0..amps.len()).filter(|i| i & mask == 0) {
        for r in 0..d {
            let a = amps[rest | offsets[r]];
            if a == C64::new(0.0, 0.0) {
                continue;
            }
            for c in 0..d {
                rho[(r, c)] += a * amps[rest | offsets[c]].conj();
            }
        }
    }
    rho
}

/// Symmetric pairwise mutual information with zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct MIMatrix {
    n: usize,
    data: Vec<f64>,
    base: EntropyBase,
}

impl MIMatrix {
    pub fn zeros(n: usize, base: EntropyBase) -> Self {
        MIMatrix {
            n,
            data: vec![0.0; n * n],
            base,
        }
    }

    /// Symmetrizes `rows` and zeroes the diagonal.
    pub fn from_rows(rows: &[Vec<f64>], base: EntropyBase) -> Result<Self> {
        let n = rows.len();
        let mut m = Self::zeros(n, base);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for j in 0..n {
                if i != j {
                    let v = 0.5 * (row[j] + rows[j][i]);
                    m.data[i * n + j] = v;
                }
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> EntropyBase {
        self.base
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        if i != j {
            self.data[i * self.n + j] = v;
            self.data[j * self.n + i] = v;
        }
    }

    /// Entry `(i, j)` of `P I P⁻¹` where qubit `q` moves to position `perm[q]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<MIMatrix> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: perm.len() });
        }
        crate::ttree::check_permutation(perm)?;
        let mut out = Self::zeros(self.n, self.base);
        for i in 0..self.n {
            for j in 0..self.n {
                out.data[perm[i] * self.n + perm[j]] = self.get(i, j);
            }
        }
        Ok(out)
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.n).map(|c| c.to_vec()).collect()
    }

    /// Row-major CSV with a `qubit` header column.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("qubit");
        for j in 0..self.n {
            write!(s, ",q{j}").unwrap();
        }
        s.push('\n');
        for i in 0..self.n {
            write!(s, "q{i}").unwrap();
            for j in 0..self.n {
                write!(s, ",{:.12e}", self.get(i, j)).unwrap();
            }
            s.push('\n');
        }
        s
    }

    pub fn from_csv(text: &str, base: EntropyBase) -> Result<Self> {
        let mut rows = vec![];
        for line in text.lines().skip(1).filter(|l| !l.trim().is_empty()) {
            let row: std::result::Result<Vec<f64>, _> =
                line.split(',').skip(1).map(|v| v.trim().parse::<f64>()).collect();
            rows.push(row.map_err(|e| Error::Parse(format!("MI csv: {e}")))?);
        }
        Self::from_rows(&rows, base)
    }
}

/// Single-qubit entropies of `psi`.
pub fn single_site_entropies(psi: &Statevector, base: EntropyBase) -> Vec<f64> {
    let n = psi.n_qubits();
    (0..n)
        .into_par_iter()
        .map(|q| von_neumann(&partial_trace(psi.amplitudes(), n, &[q]), base))
        .collect()
}

/// `I_ij = S_i + S_j − S_ij` for every qubit pair.
pub fn mutual_information_matrix(psi: &Statevector, base: EntropyBase) -> MIMatrix {
    let n = psi.n_qubits();
    let single = single_site_entropies(psi, base);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let values: Vec<f64> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let sij = von_neumann(&partial_trace(psi.amplitudes(), n, &[i, j]), base);
            single[i] + single[j] - sij
        })
        .collect();
    let mut m = MIMatrix::zeros(n, base);
    for (&(i, j), v) in pairs.iter().zip(values) {
        m.set(i, j, v);
    }
    m
}

/// Entanglement entropy of qubits `0..k` against the rest, for `k = 1..n−1`.
pub fn block_entropies(psi: &Statevector, base: EntropyBase) -> Vec<f64> {
    let n = psi.n_qubits();
    (1..n)
        .into_par_iter()
        .map(|k| {
            let rows = 1usize << k;
            let cols = 1usize << (n - k);
            // Row-major reshape: the first k qubits are the high bits.
            let m = DMatrix::<C64>::from_fn(rows, cols, |r, c| psi.amplitudes()[r * cols + c]);
            let sv = m.singular_values();
            shannon(sv.iter().map(|s| s * s), base)
        })
        .collect()
}

pub fn block_entropies_csv(values: &[f64]) -> String {
    let mut s = String::from("cut,entropy\n");
    for (k, v) in values.iter().enumerate() {
        writeln!(s, "{},{:.12e}", k + 1, v).unwrap();
    }
    s
}
