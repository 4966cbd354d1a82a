//! Compressed-row operators restricted to a set of computational basis states.

use std::collections::HashMap;

use rayon::prelude::*;

use super::statevector::{BitTerm, CompiledSum, C64};
use crate::error::{Error, Result};
use crate::pauli::PauliSum;

/// Anything that can act on a vector of amplitudes.
pub trait LinearOperator: Sync {
    fn dim(&self) -> usize;
    fn apply(&self, input: &[C64], out: &mut [C64]);
}

impl LinearOperator for CompiledSum {
    fn dim(&self) -> usize {
        1 << self.n_qubits()
    }

    fn apply(&self, input: &[C64], out: &mut [C64]) {
        self.apply_into(input, out);
    }
}

/// A set of basis indices closed under the operators it is used with,
/// typically a fixed particle-number sector.
#[derive(Debug, Clone, PartialEq)]
pub struct Sector {
    n_qubits: usize,
    basis: Vec<usize>,
}

impl Sector {
    pub fn full(n_qubits: usize) -> Self {
        Sector {
            n_qubits,
            basis: (0..1usize << n_qubits).collect(),
        }
    }

    /// Basis states on which every diagonal operator takes its target value.
    pub fn from_diagonal(n_qubits: usize, constraints: &[(PauliSum, f64)]) -> Result<Self> {
        let mut compiled = vec![];
        for (op, _) in constraints {
            if op.n_qubits() != n_qubits {
                return Err(Error::DimensionMismatch {
                    expected: n_qubits,
                    found: op.n_qubits(),
                });
            }
            if !op.is_diagonal() {
                return Err(Error::InvalidArgument(
                    "sector constraints must be diagonal operators".into(),
                ));
            }
            let terms: Vec<BitTerm> = op.iter().map(|(p, c)| BitTerm::from_string(p, *c)).collect();
            compiled.push(terms);
        }
        let basis = (0..1usize << n_qubits)
            .filter(|&b| {
                compiled.iter().zip(constraints).all(|(terms, (_, target))| {
                    let v: f64 = terms.iter().map(|t| (t.coeff * t.sign(b as u64)).re).sum();
                    (v - target).abs() < 1e-9
                })
            })
            .collect();
        Ok(Sector { n_qubits, basis })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Amplitudes of a full statevector on this sector.
    pub fn restrict(&self, amps: &[C64]) -> Vec<C64> {
        self.basis.iter().map(|&b| amps[b]).collect()
    }
}

#[derive(Debug, Clone)]
pub struct SparseOperator {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<C64>,
}

impl SparseOperator {
    /// Matrix of `h` on `sector`. Elements leaving the sector are dropped.
    pub fn from_pauli_sum(h: &PauliSum, sector: &Sector) -> Result<Self> {
        if h.n_qubits() != sector.n_qubits() {
            return Err(Error::DimensionMismatch {
                expected: sector.n_qubits(),
                found: h.n_qubits(),
            });
        }
        let compiled = CompiledSum::new(h);
        let full = sector.len() == 1usize << sector.n_qubits();
        let index: HashMap<usize, usize> = if full {
            HashMap::new()
        } else {
            sector.basis().iter().enumerate().map(|(i, &b)| (b, i)).collect()
        };
        let lookup = |b: usize| -> Option<usize> {
            if full {
                Some(b)
            } else {
                index.get(&b).copied()
            }
        };
        let rows: Vec<Vec<(usize, C64)>> = sector
            .basis()
            .par_iter()
            .map(|&t| {
                let mut row = vec![];
                for (x, terms) in compiled.groups() {
                    let s = t as u64 ^ x;
                    let Some(col) = lookup(s as usize) else { continue };
                    let mut c = C64::new(0.0, 0.0);
                    for &(z, coeff) in terms {
                        if (z & s).count_ones() & 1 == 1 {
                            c -= coeff;
                        } else {
                            c += coeff;
                        }
                    }
                    if c.norm() > 1e-14 {
                        row.push((col, c));
                    }
                }
                row.sort_by_key(|e| e.0);
                row
            })
            .collect();
        let mut row_ptr = Vec::with_capacity(rows.len() + 1);
        let mut cols = vec![];
        let mut vals = vec![];
        row_ptr.push(0);
        for r in rows {
            for (c, v) in r {
                cols.push(c);
                vals.push(v);
            }
            row_ptr.push(cols.len());
        }
        Ok(SparseOperator {
            dim: sector.len(),
            row_ptr,
            cols,
            vals,
        })
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        for r in 0..self.dim {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                let c = self.cols[k];
                let other = self.element(c, r);
                if (self.vals[k] - other.conj()).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    pub fn element(&self, r: usize, c: usize) -> C64 {
        let row = &self.cols[self.row_ptr[r]..self.row_ptr[r + 1]];
        match row.binary_search(&c) {
            Ok(k) => self.vals[self.row_ptr[r] + k],
            Err(_) => C64::new(0.0, 0.0),
        }
    }

    /// `⟨v|A|v⟩` for a normalized `v`; real part only.
    pub fn expectation(&self, v: &[C64]) -> f64 {
        let mut out = vec![C64::new(0.0, 0.0); self.dim];
        self.apply(v, &mut out);
        v.iter().zip(&out).map(|(a, b)| (a.conj() * b).re).sum()
    }
}

impl LinearOperator for SparseOperator {
    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, input: &[C64], out: &mut [C64]) {
        let body = |(r, o): (usize, &mut C64)| {
            let mut acc = C64::new(0.0, 0.0);
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.vals[k] * input[self.cols[k]];
            }
            *o = acc;
        };
        if self.dim >= 4096 {
            out.par_iter_mut().enumerate().for_each(body);
        } else {
            out.iter_mut().enumerate().for_each(body);
        }
    }
}
