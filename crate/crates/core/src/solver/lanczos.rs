//! Restarted Lanczos with full reorthogonalization and deflation.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::sparse::LinearOperator;
use super::statevector::C64;
use crate::error::{Error, Result};

const ZERO: C64 = C64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LanczosOptions {
    pub max_krylov: usize,
    pub max_restarts: usize,
    /// Target residual `‖Av − λv‖` per returned pair.
    pub tol: f64,
    pub seed: u64,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        LanczosOptions {
            max_krylov: 200,
            max_restarts: 100,
            tol: 1e-8,
            seed: 7,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Eigenpairs {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<C64>>,
    pub residuals: Vec<f64>,
}

fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[C64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn axpy(alpha: C64, x: &[C64], y: &mut [C64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Removes the components along `basis` twice (classical Gram-Schmidt, repeated).
fn orthogonalize(v: &mut [C64], basis: &[Vec<C64>]) {
    for _ in 0..2 {
        for b in basis {
            let c = dot(b, v);
            axpy(-c, b, v);
        }
    }
}

fn random_vector(dim: usize, rng: &mut ChaCha8Rng) -> Vec<C64> {
    (0..dim)
        .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

/// Lowest `k` eigenpairs of a Hermitian operator.
pub fn lowest_eigenpairs<A: LinearOperator>(
    op: &A,
    k: usize,
    opts: &LanczosOptions,
) -> Result<Eigenpairs> {
    let dim = op.dim();
    if k == 0 || k > dim {
        return Err(Error::InvalidArgument(format!(
            "requested {k} eigenpairs of a {dim}-dimensional operator"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut locked: Vec<Vec<C64>> = vec![];
    let mut values = vec![];
    let mut residuals = vec![];
    let mut work = vec![ZERO; dim];

    for _ in 0..k {
        let mut start = random_vector(dim, &mut rng);
        let mut best = (f64::INFINITY, f64::INFINITY);
        let mut converged = None;
        for _ in 0..=opts.max_restarts {
            orthogonalize(&mut start, &locked);
            let nrm = norm(&start);
            if nrm < 1e-300 {
                start = random_vector(dim, &mut rng);
                continue;
            }
            start.iter_mut().for_each(|a| *a /= nrm);

            let m_max = opts.max_krylov.min(dim - locked.len()).max(1);
            let mut basis: Vec<Vec<C64>> = vec![start.clone()];
            let mut alpha = vec![];
            let mut beta: Vec<f64> = vec![];
            loop {
                let j = basis.len() - 1;
                op.apply(&basis[j], &mut work);
                let a = dot(&basis[j], &work).re;
                alpha.push(a);
                axpy(C64::new(-a, 0.0), &basis[j], &mut work);
                if j > 0 {
                    axpy(C64::new(-beta[j - 1], 0.0), &basis[j - 1], &mut work);
                }
                orthogonalize(&mut work, &locked);
                orthogonalize(&mut work, &basis);
                let b = norm(&work);
                if basis.len() >= m_max || b < 1e-12 {
                    break;
                }
                beta.push(b);
                basis.push(work.iter().map(|x| x / b).collect());
            }

            let m = alpha.len();
            let mut t = DMatrix::<f64>::zeros(m, m);
            for i in 0..m {
                t[(i, i)] = alpha[i];
                if i + 1 < m {
                    t[(i, i + 1)] = beta[i];
                    t[(i + 1, i)] = beta[i];
                }
            }
            let eig = SymmetricEigen::new(t);
            let (imin, _) = eig
                .eigenvalues
                .iter()
                .enumerate()
                .fold((0, f64::INFINITY), |acc, (i, &v)| if v < acc.1 { (i, v) } else { acc });
            let theta = eig.eigenvalues[imin];
            let mut ritz = vec![ZERO; dim];
            for (i, b) in basis.iter().enumerate() {
                axpy(C64::new(eig.eigenvectors[(i, imin)], 0.0), b, &mut ritz);
            }
            let rn = norm(&ritz);
            ritz.iter_mut().for_each(|a| *a /= rn);

            op.apply(&ritz, &mut work);
            let theta = {
                let rq = dot(&ritz, &work).re;
                if rq.is_finite() {
                    rq
                } else {
                    theta
                }
            };
            axpy(C64::new(-theta, 0.0), &ritz, &mut work);
            let res = norm(&work);
            if res < best.1 {
                best = (theta, res);
            }
            if res <= opts.tol {
                converged = Some((theta, ritz, res));
                break;
            }
            start = ritz;
        }
        match converged {
            Some((theta, v, res)) => {
                values.push(theta);
                residuals.push(res);
                locked.push(v);
            }
            None => {
                return Err(Error::NonConvergence {
                    iterations: opts.max_restarts,
                    residual: best.1,
                })
            }
        }
    }

    // Deflated pairs come out in order of discovery; sort ascending.
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    Ok(Eigenpairs {
        values: idx.iter().map(|&i| values[i]).collect(),
        vectors: idx.iter().map(|&i| locked[i].clone()).collect(),
        residuals: idx.iter().map(|&i| residuals[i]).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::sparse::{Sector, SparseOperator};
    use crate::pauli::{PauliString, PauliSum};

    fn heisenberg() -> PauliSum {
        let mut h = PauliSum::zero(2);
        for s in ["X0X1", "Y0Y1", "Z0Z1"] {
            h.add_term(&PauliString::parse(s, 2).unwrap(), C64::new(1.0, 0.0));
        }
        h
    }

    #[test]
    fn heisenberg_pair_spectrum() {
        let op = SparseOperator::from_pauli_sum(&heisenberg(), &Sector::full(2)).unwrap();
        let e = lowest_eigenpairs(&op, 2, &LanczosOptions::default()).unwrap();
        assert!((e.values[0] + 3.0).abs() < 1e-10);
        assert!((e.values[1] - 1.0).abs() < 1e-10);
        assert!(e.residuals.iter().all(|&r| r <= 1e-8));
    }

    #[test]
    fn degenerate_levels_are_all_found() {
        // The triplet of the Heisenberg pair is threefold degenerate.
        let op = SparseOperator::from_pauli_sum(&heisenberg(), &Sector::full(2)).unwrap();
        let e = lowest_eigenpairs(&op, 4, &LanczosOptions::default()).unwrap();
        assert!((e.values[3] - 1.0).abs() < 1e-10);
        assert!((e.values[2] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn rejects_too_many_pairs() {
        let op = SparseOperator::from_pauli_sum(&heisenberg(), &Sector::full(2)).unwrap();
        assert!(lowest_eigenpairs(&op, 5, &LanczosOptions::default()).is_err());
    }
}
