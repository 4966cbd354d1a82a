//! Exact statevector tools: matrix-free action, sector-restricted Lanczos,
//! reduced states and entropies.

pub mod entropy;
pub mod lanczos;
pub mod sparse;
pub mod statevector;

pub use entropy::{
    block_entropies, block_entropies_csv, mutual_information_matrix, reduced_density,
    single_site_entropies, von_neumann, EntropyBase, MIMatrix,
};
pub use lanczos::{lowest_eigenpairs, Eigenpairs, LanczosOptions};
pub use sparse::{LinearOperator, Sector, SparseOperator};
pub use statevector::{
    apply_pauli_sum, apply_to_sparse, expectation, CompiledSum, RealCompiledSum, SparseState, Statevector,
    C64,
};

use crate::error::{Error, Result};
use crate::pauli::PauliSum;

/// Lowest eigenpairs of a Hermitian Pauli sum; states are returned over the full register.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub energies: Vec<f64>,
    pub states: Vec<Statevector>,
    pub residuals: Vec<f64>,
}

fn check_hermitian(h: &PauliSum) -> Result<()> {
    if !h.is_hermitian(1e-10) {
        let im = h.iter().map(|(_, c)| c.im.abs()).fold(0.0, f64::max);
        return Err(Error::NotHermitian(im));
    }
    Ok(())
}

/// `k` lowest eigenpairs over the whole `2^n` space.
pub fn ground_state(h: &PauliSum, k: usize, opts: &LanczosOptions) -> Result<Spectrum> {
    ground_state_in_sector(h, &Sector::full(h.n_qubits()), k, opts)
}

/// `k` lowest eigenpairs of `h` restricted to `sector`, which must be invariant under `h`.
pub fn ground_state_in_sector(
    h: &PauliSum,
    sector: &Sector,
    k: usize,
    opts: &LanczosOptions,
) -> Result<Spectrum> {
    check_hermitian(h)?;
    if sector.is_empty() {
        return Err(Error::InvalidArgument("empty sector".into()));
    }
    let n = h.n_qubits();
    let op = SparseOperator::from_pauli_sum(h, sector)?;
    let pairs = lowest_eigenpairs(&op, k, opts)?;
    let states = pairs
        .vectors
        .iter()
        .map(|v| Statevector::from_subspace(n, sector.basis(), v))
        .collect();
    Ok(Spectrum {
        energies: pairs.values,
        states,
        residuals: pairs.residuals,
    })
}

/// All eigenvalues of a small Pauli sum by dense diagonalization.
pub fn dense_spectrum(h: &PauliSum) -> Result<Vec<f64>> {
    check_hermitian(h)?;
    let n = h.n_qubits();
    if n > 12 {
        return Err(Error::InvalidArgument(format!("dense spectrum limited to 12 qubits, got {n}")));
    }
    let op = CompiledSum::new(h);
    let dim = 1usize << n;
    let mut m = nalgebra::DMatrix::<C64>::zeros(dim, dim);
    let mut e = vec![C64::new(0.0, 0.0); dim];
    let mut col = vec![C64::new(0.0, 0.0); dim];
    for c in 0..dim {
        e.iter_mut().for_each(|a| *a = C64::new(0.0, 0.0));
        e[c] = C64::new(1.0, 0.0);
        op.apply_into(&e, &mut col);
        for r in 0..dim {
            m[(r, c)] = col[r];
        }
    }
    let mut vals: Vec<f64> = nalgebra::SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}
