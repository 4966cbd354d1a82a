//! Dense statevectors and matrix-free Pauli-sum action.
//!
//! Basis index convention: qubit 0 is the most significant bit, so the ket
//! `|1100⟩` (qubits 0..3 left to right) is index `0b1100`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pauli::{PauliString, PauliSum};

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Largest register the dense engine will allocate.
pub const MAX_QUBITS: usize = 30;

#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n: usize,
    amps: Vec<C64>,
}

impl Statevector {
    pub fn zero_state(n: usize) -> Self {
        Self::basis(n, 0)
    }

    pub fn basis(n: usize, index: usize) -> Self {
        assert!(n <= MAX_QUBITS, "register of {n} qubits is too large");
        let mut amps = vec![ZERO; 1 << n];
        amps[index] = ONE;
        Statevector { n, amps }
    }

    /// Basis state from a bit string such as `"1100"` (qubit 0 first).
    pub fn from_bitstring(bits: &str) -> Result<Self> {
        let n = bits.len();
        let mut index = 0usize;
        for c in bits.chars() {
            index = (index << 1)
                | match c {
                    '0' => 0,
                    '1' => 1,
                    _ => return Err(Error::Parse(format!("bit string {bits:?}"))),
                };
        }
        Ok(Self::basis(n, index))
    }

    pub fn from_amplitudes(n: usize, amps: Vec<C64>) -> Result<Self> {
        if amps.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: amps.len(),
            });
        }
        Ok(Statevector { n, amps })
    }

    /// Embeds amplitudes given on a subset of basis indices.
    pub fn from_subspace(n: usize, basis: &[usize], coeffs: &[C64]) -> Self {
        let mut amps = vec![ZERO; 1 << n];
        for (&b, &c) in basis.iter().zip(coeffs) {
            amps[b] = c;
        }
        Statevector { n, amps }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amps[index]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalize(&mut self) {
        let nrm = self.norm();
        if nrm > 0.0 {
            self.amps.iter_mut().for_each(|a| *a /= nrm);
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Statevector) -> C64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Basis indices with non-negligible amplitude.
    pub fn support(&self, tol: f64) -> Vec<usize> {
        (0..self.amps.len())
            .filter(|&i| self.amps[i].norm() > tol)
            .collect()
    }

    /// Ket label of a basis index, qubit 0 first.
    pub fn bitstring(n: usize, index: usize) -> String {
        (0..n)
            .map(|q| if (index >> (n - 1 - q)) & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    /// Same physical state with qubit `q` relabelled to `perm[q]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Statevector> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: perm.len(),
            });
        }
        crate::ttree::check_permutation(perm)?;
        let n = self.n;
        let mut out = vec![ZERO; self.amps.len()];
        for (b, &a) in self.amps.iter().enumerate() {
            let mut t = 0usize;
            for (q, &target) in perm.iter().enumerate() {
                if (b >> (n - 1 - q)) & 1 == 1 {
                    t |= 1 << (n - 1 - target);
                }
            }
            out[t] = a;
        }
        Ok(Statevector { n, amps: out })
    }
}

/// One Pauli string in index-bit form: `P|b⟩ = coeff · (−1)^{|z ∧ b|} |b ⊕ x⟩`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct BitTerm {
    pub x: u64,
    pub z: u64,
    pub coeff: C64,
}

impl BitTerm {
    pub fn from_string(p: &PauliString, c: C64) -> BitTerm {
        let n = p.n_qubits();
        assert!(n <= 64, "bit-mask engine is limited to 64 qubits");
        let (mut x, mut z) = (0u64, 0u64);
        let mut y_count = 0;
        for q in p.support() {
            let bit = 1u64 << (n - 1 - q);
            let (xb, zb) = p.letter(q).bits();
            if xb {
                x |= bit;
            }
            if zb {
                z |= bit;
            }
            if xb && zb {
                y_count += 1;
            }
        }
        // Y = i·X·Z, so the string is i^{phase + #Y} X^x Z^z.
        let phase = crate::pauli::Phase::from_exponent(p.phase().exponent() as i64 + y_count);
        BitTerm {
            x,
            z,
            coeff: c * phase.to_complex(),
        }
    }

    #[inline]
    pub fn sign(&self, b: u64) -> f64 {
        if (self.z & b).count_ones() & 1 == 1 {
            -1.0
        } else {
            1.0
        }
    }

    /// `P|b⟩ = amplitude · |target⟩`.
    #[inline]
    pub fn act(&self, b: u64) -> (u64, C64) {
        (b ^ self.x, self.coeff * self.sign(b))
    }
}

/// A Pauli sum grouped by X-mask for repeated application.
#[derive(Debug, Clone)]
pub struct CompiledSum {
    n: usize,
    groups: Vec<(u64, Vec<(u64, C64)>)>,
}

impl CompiledSum {
    pub fn new(h: &PauliSum) -> Self {
        let mut groups: BTreeMap<u64, Vec<(u64, C64)>> = BTreeMap::new();
        for (p, c) in h.iter() {
            let t = BitTerm::from_string(p, *c);
            groups.entry(t.x).or_default().push((t.z, t.coeff));
        }
        CompiledSum {
            n: h.n_qubits(),
            groups: groups.into_iter().collect(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    /// Matrix element `⟨target|H|source⟩` summed over the group with mask `source ⊕ target`.
    pub(crate) fn groups(&self) -> &[(u64, Vec<(u64, C64)>)] {
        &self.groups
    }

    /// `out = H · input`, parallel over output amplitudes.
    pub fn apply_into(&self, input: &[C64], out: &mut [C64]) {
        out.par_chunks_mut(1024).enumerate().for_each(|(chunk, slice)| {
            let base = chunk * 1024;
            for (off, o) in slice.iter_mut().enumerate() {
                let t = (base + off) as u64;
                let mut acc = ZERO;
                for (x, terms) in &self.groups {
                    let s = t ^ x;
                    let amp = input[s as usize];
                    if amp == ZERO {
                        continue;
                    }
                    let mut c = ZERO;
                    for &(z, coeff) in terms {
                        if (z & s).count_ones() & 1 == 1 {
                            c -= coeff;
                        } else {
                            c += coeff;
                        }
                    }
                    acc += c * amp;
                }
                *o = acc;
            }
        });
    }
}

/// Real part of a Hermitian Pauli sum's matrix, for real amplitude vectors.
///
/// Strings with an odd number of `Y` letters have purely imaginary matrices and
/// do not contribute to `⟨ψ|H|ψ⟩` when `ψ` is real. When it fits in
/// [`RealCompiledSum::TABLE_LIMIT`] entries, the signed coefficient sum of every
/// (row, X-mask) pair is tabulated once, which turns each expectation into a
/// sparse matrix-vector product.
#[derive(Debug, Clone)]
pub struct RealCompiledSum {
    n: usize,
    groups: Vec<(u64, Vec<(u64, f64)>)>,
    masks: Vec<u64>,
    /// Row-major `dim × masks.len()`.
    table: Option<Vec<f64>>,
}

impl RealCompiledSum {
    pub const TABLE_LIMIT: usize = 1 << 24;

    pub fn new(h: &PauliSum) -> Self {
        Self::with_limit(h, Self::TABLE_LIMIT)
    }

    pub(crate) fn with_limit(h: &PauliSum, limit: usize) -> Self {
        let compiled = CompiledSum::new(h);
        let groups: Vec<(u64, Vec<(u64, f64)>)> = compiled
            .groups
            .into_iter()
            .filter_map(|(x, terms)| {
                let t: Vec<(u64, f64)> = terms
                    .into_iter()
                    .filter(|(_, c)| c.re != 0.0)
                    .map(|(z, c)| (z, c.re))
                    .collect();
                (!t.is_empty()).then_some((x, t))
            })
            .collect();
        let masks: Vec<u64> = groups.iter().map(|(x, _)| *x).collect();
        let dim = 1usize << h.n_qubits();
        let table = (dim.saturating_mul(groups.len()) <= limit).then(|| {
            let mut table = vec![0.0; dim * groups.len()];
            table
                .par_chunks_mut(groups.len().max(1))
                .enumerate()
                .for_each(|(t, row)| {
                    for (slot, (x, terms)) in row.iter_mut().zip(&groups) {
                        *slot = signed_sum(terms, t as u64 ^ x);
                    }
                });
            table
        });
        RealCompiledSum {
            n: h.n_qubits(),
            groups,
            masks,
            table,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    /// `⟨ψ|H|ψ⟩` for real `ψ`.
    pub fn expectation(&self, psi: &[f64]) -> f64 {
        let g = self.masks.len();
        let body = |t: usize| -> f64 {
            let mut acc = 0.0;
            match &self.table {
                Some(table) => {
                    let row = &table[t * g..(t + 1) * g];
                    for (c, x) in row.iter().zip(&self.masks) {
                        acc += c * psi[t ^ *x as usize];
                    }
                }
                None => {
                    for (x, terms) in &self.groups {
                        let s = t as u64 ^ x;
                        let amp = psi[s as usize];
                        if amp != 0.0 {
                            acc += signed_sum(terms, s) * amp;
                        }
                    }
                }
            }
            psi[t] * acc
        };
        // Fixed-size blocks summed in order keep the result independent of scheduling.
        const BLOCK: usize = 1024;
        let partial: Vec<f64> = (0..psi.len().div_ceil(BLOCK))
            .into_par_iter()
            .map(|b| (b * BLOCK..((b + 1) * BLOCK).min(psi.len())).map(body).sum())
            .collect();
        partial.iter().sum()
    }
}

#[inline]
fn signed_sum(terms: &[(u64, f64)], s: u64) -> f64 {
    let mut c = 0.0;
    for &(z, coeff) in terms {
        if (z & s).count_ones() & 1 == 1 {
            c -= coeff;
        } else {
            c += coeff;
        }
    }
    c
}

/// `h |psi⟩`, exact and matrix-free.
pub fn apply_pauli_sum(h: &PauliSum, psi: &Statevector) -> Result<Statevector> {
    if h.n_qubits() != psi.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: psi.n_qubits(),
            found: h.n_qubits(),
        });
    }
    let op = CompiledSum::new(h);
    let mut out = vec![ZERO; psi.dim()];
    op.apply_into(psi.amplitudes(), &mut out);
    Ok(Statevector {
        n: psi.n,
        amps: out,
    })
}

/// `⟨psi|h|psi⟩`; the imaginary part is discarded, so `h` must be Hermitian.
pub fn expectation(h: &PauliSum, psi: &Statevector) -> Result<f64> {
    if !h.is_hermitian(1e-10) {
        let im = h.iter().map(|(_, c)| c.im.abs()).fold(0.0, f64::max);
        return Err(Error::NotHermitian(im));
    }
    let hpsi = apply_pauli_sum(h, psi)?;
    Ok(psi.inner(&hpsi).re)
}

/// Sparse state as an ordered map from basis index to amplitude.
pub type SparseState = BTreeMap<u64, C64>;

/// Applies a Pauli sum to a sparse state, dropping amplitudes below `tol`.
pub fn apply_to_sparse(h: &PauliSum, state: &SparseState, tol: f64) -> SparseState {
    let terms: Vec<BitTerm> = h.iter().map(|(p, c)| BitTerm::from_string(p, *c)).collect();
    let mut out = SparseState::new();
    for (&b, &a) in state {
        for t in &terms {
            let (target, amp) = t.act(b);
            *out.entry(target).or_default() += amp * a;
        }
    }
    out.retain(|_, a| a.norm() > tol);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ps(s: &str, n: usize) -> PauliString {
        PauliString::parse(s, n).unwrap()
    }

    /// Dense matrix of a Pauli sum built from Kronecker products.
    fn dense(h: &PauliSum) -> Vec<Vec<C64>> {
        let n = h.n_qubits();
        let d = 1 << n;
        let mut m = vec![vec![ZERO; d]; d];
        let i = C64::new(0.0, 1.0);
        for (p, c) in h.iter() {
            for col in 0..d {
                // act letter by letter on |col⟩
                let mut row = col;
                let mut amp = *c;
                for q in 0..n {
                    let bit = (col >> (n - 1 - q)) & 1;
                    match p.letter(q) {
                        crate::pauli::Pauli::I => {}
                        crate::pauli::Pauli::X => row ^= 1 << (n - 1 - q),
                        crate::pauli::Pauli::Y => {
                            row ^= 1 << (n - 1 - q);
                            amp *= if bit == 0 { i } else { -i };
                        }
                        crate::pauli::Pauli::Z => {
                            if bit == 1 {
                                amp = -amp;
                            }
                        }
                    }
                }
                m[row][col] += amp;
            }
        }
        m
    }

    #[test]
    fn z_on_one() {
        let psi = Statevector::from_bitstring("1").unwrap();
        let h = PauliSum::from_string(&ps("Z0", 1), ONE);
        let out = apply_pauli_sum(&h, &psi).unwrap();
        assert_eq!(out.amplitude(1), -ONE);
    }

    #[test]
    fn identity_sum_is_noop() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let amps: Vec<C64> = (0..8).map(|_| C64::new(rng.gen(), rng.gen())).collect();
        let psi = Statevector::from_amplitudes(3, amps).unwrap();
        let out = apply_pauli_sum(&PauliSum::identity(3, ONE), &psi).unwrap();
        assert_eq!(out, psi);
    }

    #[test]
    fn matches_dense_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let letters = ["I", "X", "Y", "Z"];
        let mut h = PauliSum::zero(3);
        for _ in 0..12 {
            let mut s = String::new();
            for q in 0..3 {
                let l = letters[rng.gen_range(0..4)];
                if l != "I" {
                    s.push_str(&format!("{l}{q}"));
                }
            }
            h.add_term(&ps(&s, 3), C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        }
        let amps: Vec<C64> = (0..8).map(|_| C64::new(rng.gen(), rng.gen())).collect();
        let psi = Statevector::from_amplitudes(3, amps.clone()).unwrap();
        let out = apply_pauli_sum(&h, &psi).unwrap();
        let m = dense(&h);
        for r in 0..8 {
            let want: C64 = (0..8).map(|c| m[r][c] * amps[c]).sum();
            assert!((want - out.amplitude(r)).norm() < 1e-12);
        }
    }

    #[test]
    fn expectations() {
        let zero = Statevector::zero_state(1);
        let z = PauliSum::from_string(&ps("Z0", 1), ONE);
        assert!((expectation(&z, &zero).unwrap() - 1.0).abs() < 1e-15);
        let s = 1.0 / 2f64.sqrt();
        let plus = Statevector::from_amplitudes(1, vec![C64::new(s, 0.0), C64::new(s, 0.0)]).unwrap();
        assert!(expectation(&z, &plus).unwrap().abs() < 1e-15);
        let bad = PauliSum::from_string(&ps("Z0", 1), C64::new(0.0, 1.0));
        assert!(matches!(expectation(&bad, &zero), Err(Error::NotHermitian(_))));
        assert!(expectation(&PauliSum::zero(2), &zero).is_err());
    }

    #[test]
    fn permutation_moves_qubits() {
        let psi = Statevector::from_bitstring("100").unwrap();
        let out = psi.permuted(&[2, 0, 1]).unwrap();
        assert_eq!(out, Statevector::from_bitstring("001").unwrap());
    }

    #[test]
    fn real_expectation_table_and_direct_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let letters = ["I", "X", "Y", "Z"];
        let mut h = PauliSum::zero(5);
        for _ in 0..40 {
            let s: String = (0..5)
                .filter_map(|q| {
                    let l = letters[rng.gen_range(0..4)];
                    (l != "I").then(|| format!("{l}{q}"))
                })
                .collect();
            h.add_term(&ps(&s, 5), C64::new(rng.gen_range(-1.0..1.0), 0.0));
        }
        let h = &h + &h.adjoint();
        let amps: Vec<f64> = (0..32).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let psi = Statevector::from_amplitudes(5, amps.iter().map(|&a| C64::new(a, 0.0)).collect()).unwrap();
        let want = expectation(&h, &psi).unwrap();
        let tabulated = RealCompiledSum::new(&h);
        let direct = RealCompiledSum::with_limit(&h, 0);
        assert!(tabulated.table.is_some() && direct.table.is_none());
        assert!((tabulated.expectation(&amps) - want).abs() < 1e-12);
        assert!((direct.expectation(&amps) - want).abs() < 1e-12);
    }
}
