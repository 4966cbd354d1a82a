//! Ladder operators, number operators, Fock states and Hamiltonians in qubit space.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::chem::MolecularIntegrals;
use crate::error::{Error, Result};
use crate::pauli::{PauliString, PauliSum};
use crate::solver::{apply_to_sparse, Sector, SparseState, Statevector};
use crate::ttree::MajoranaPairing;

const HALF: Complex64 = Complex64::new(0.5, 0.0);
const I_HALF: Complex64 = Complex64::new(0.0, 0.5);

/// Occupation numbers `f_0 … f_{n−1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OccupationVector(pub Vec<bool>);

impl OccupationVector {
    pub fn new(bits: Vec<bool>) -> Self {
        OccupationVector(bits)
    }

    /// Reads a string of `0`/`1` characters, mode 0 first.
    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse(format!("bad occupation character '{c}'"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(OccupationVector)
    }

    /// Lowest `n_occupied` modes filled.
    pub fn lowest(n_modes: usize, n_occupied: usize) -> Result<Self> {
        if n_occupied > n_modes {
            return Err(Error::InvalidArgument(format!(
                "{n_occupied} particles do not fit in {n_modes} modes"
            )));
        }
        Ok(OccupationVector((0..n_modes).map(|j| j < n_occupied).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn occupied(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&j| self.0[j]).collect()
    }
}

impl std::fmt::Display for OccupationVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Qubit images of `a_j` and `a_j†` for every mode.
#[derive(Debug, Clone)]
pub struct LadderImages {
    n_qubits: usize,
    annihilators: Vec<PauliSum>,
    creators: Vec<PauliSum>,
}

impl LadderImages {
    /// `a_j = (γ_{2j} + i γ_{2j−1}) / 2`.
    pub fn new(pairing: &MajoranaPairing) -> Self {
        let n = pairing.n_qubits();
        let mut annihilators = vec![];
        let mut creators = vec![];
        for p in pairing.pairs() {
            let mut a = PauliSum::zero(n);
            a.add_term(&p.even, HALF);
            a.add_term(&p.odd, I_HALF);
            creators.push(a.adjoint());
            annihilators.push(a);
        }
        LadderImages {
            n_qubits: n,
            annihilators,
            creators,
        }
    }

    pub fn n_modes(&self) -> usize {
        self.annihilators.len()
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn annihilator(&self, j: usize) -> &PauliSum {
        &self.annihilators[j]
    }

    pub fn creator(&self, j: usize) -> &PauliSum {
        &self.creators[j]
    }

    fn check_mode(&self, j: usize) -> Result<()> {
        if j >= self.n_modes() {
            return Err(Error::InvalidArgument(format!(
                "mode {j} out of range for {} modes",
                self.n_modes()
            )));
        }
        Ok(())
    }

    /// Product of ladder operators, leftmost first; `true` marks a creator.
    pub fn monomial(&self, ops: &[(usize, bool)]) -> Result<PauliSum> {
        let mut out = PauliSum::identity(self.n_qubits, Complex64::new(1.0, 0.0));
        for &(j, dagger) in ops {
            self.check_mode(j)?;
            let f = if dagger { &self.creators[j] } else { &self.annihilators[j] };
            out = out.try_mul(f)?;
        }
        Ok(out)
    }

    /// `n_j = a_j† a_j`.
    pub fn number_operator(&self, j: usize) -> Result<PauliSum> {
        self.monomial(&[(j, true), (j, false)])
    }

    /// `Σ_j n_j`.
    pub fn total_number(&self) -> PauliSum {
        let mut out = PauliSum::zero(self.n_qubits);
        for j in 0..self.n_modes() {
            out = &out + &self.number_operator(j).expect("mode in range");
        }
        out
    }

    /// `Σ_k (n_{2k} − n_{2k+1}) / 2` for interleaved spin orbitals.
    pub fn spin_z(&self) -> PauliSum {
        let mut out = PauliSum::zero(self.n_qubits);
        for j in 0..self.n_modes() {
            let s = if j % 2 == 0 { 0.5 } else { -0.5 };
            let nj = self.number_operator(j).expect("mode in range");
            out = &out + &nj.scale(Complex64::new(s, 0.0));
        }
        out
    }
}

/// `(1 + i γ_{2j} γ_{2j−1}) / 2`, computed directly from the pair.
pub fn number_operator(pairing: &MajoranaPairing, j: usize) -> Result<PauliSum> {
    if j >= pairing.n_modes() {
        return Err(Error::InvalidArgument(format!(
            "mode {j} out of range for {} modes",
            pairing.n_modes()
        )));
    }
    let n = pairing.n_qubits();
    let p = pairing.pair(j);
    let mut out = PauliSum::identity(n, HALF);
    out.add_term(&(&p.even * &p.odd), I_HALF);
    Ok(out)
}

/// Basis states with `n_particles` particles and, if given, total `S_z`.
///
/// Requires every number operator to be diagonal, which holds for all
/// ternary-tree pairings.
pub fn particle_sector(
    pairing: &MajoranaPairing,
    n_particles: usize,
    spin_z: Option<f64>,
) -> Result<Sector> {
    let ladders = LadderImages::new(pairing);
    let mut constraints = vec![(ladders.total_number(), n_particles as f64)];
    if let Some(sz) = spin_z {
        constraints.push((ladders.spin_z(), sz));
    }
    Sector::from_diagonal(pairing.n_qubits(), &constraints)
}

/// `a_0†^{f_0} a_1†^{f_1} … a_{n−1}†^{f_{n−1}} |0…0⟩`, highest mode applied first.
pub fn encode_occupation_sparse(pairing: &MajoranaPairing, occ: &OccupationVector) -> Result<SparseState> {
    if occ.len() != pairing.n_modes() {
        return Err(Error::DimensionMismatch {
            expected: pairing.n_modes(),
            found: occ.len(),
        });
    }
    let ladders = LadderImages::new(pairing);
    let mut state = SparseState::new();
    state.insert(0, Complex64::new(1.0, 0.0));
    for j in (0..occ.len()).rev() {
        if occ.0[j] {
            state = apply_to_sparse(ladders.creator(j), &state, 1e-14);
        }
    }
    Ok(state)
}

pub fn encode_occupation(pairing: &MajoranaPairing, occ: &OccupationVector) -> Result<Statevector> {
    let sparse = encode_occupation_sparse(pairing, occ)?;
    let basis: Vec<usize> = sparse.keys().map(|&b| b as usize).collect();
    let coeffs: Vec<Complex64> = sparse.values().copied().collect();
    let mut psi = Statevector::from_subspace(pairing.n_qubits(), &basis, &coeffs);
    psi.normalize();
    Ok(psi)
}

/// Computational basis index of an encoded occupation, when it is a single basis state.
pub fn encoded_basis_index(pairing: &MajoranaPairing, occ: &OccupationVector) -> Result<Option<usize>> {
    let sparse = encode_occupation_sparse(pairing, occ)?;
    if sparse.len() == 1 {
        Ok(sparse.keys().next().map(|&b| b as usize))
    } else {
        Ok(None)
    }
}

/// Qubit Hamiltonian of `ints` under `pairing`.
pub fn map_hamiltonian(ints: &MolecularIntegrals, pairing: &MajoranaPairing) -> Result<PauliSum> {
    let n = ints.n_spin_orbitals;
    if pairing.n_modes() != n {
        return Err(Error::DimensionMismatch {
            expected: pairing.n_modes(),
            found: n,
        });
    }
    let asym = ints.h1_asymmetry();
    if asym > 1e-10 {
        return Err(Error::NotHermitian(asym));
    }
    let lad = LadderImages::new(pairing);
    let nq = pairing.n_qubits();

    // Precomputed pair products; each is at most four strings.
    let mut one = vec![];
    let mut cc = vec![];
    let mut aa = vec![];
    for i in 0..n {
        for j in 0..n {
            one.push(lad.creator(i).try_mul(lad.annihilator(j))?);
            cc.push(lad.creator(i).try_mul(lad.creator(j))?);
            aa.push(lad.annihilator(i).try_mul(lad.annihilator(j))?);
        }
    }

    // Fixed partition over i with an ordered merge keeps the result independent of thread count.
    let partial: Vec<Vec<(PauliString, Complex64)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut acc: Vec<(PauliString, Complex64)> = vec![];
            for j in 0..n {
                let h = ints.h1(i, j);
                if h != 0.0 {
                    for (p, c) in one[i * n + j].iter() {
                        acc.push((p.clone(), c * h));
                    }
                }
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                for k in 0..n {
                    for l in 0..n {
                        if k == l {
                            continue;
                        }
                        let h = ints.h2(i, j, k, l);
                        if h == 0.0 {
                            continue;
                        }
                        // a_i† a_j† a_l a_k
                        let left = &cc[i * n + j];
                        let right = &aa[l * n + k];
                        for (p, cp) in left.iter() {
                            for (q, cq) in right.iter() {
                                acc.push((p * q, cp * cq * h));
                            }
                        }
                    }
                }
            }
            acc
        })
        .collect();

    let mut terms = vec![(PauliString::identity(nq), Complex64::new(ints.e_core, 0.0))];
    for chunk in partial {
        terms.extend(chunk);
    }
    PauliSum::from_terms(nq, terms).real_part(1e-10)
}
