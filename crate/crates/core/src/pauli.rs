//! Signed Pauli strings and Pauli sums.
//!
//! A [`PauliString`] is stored in symplectic form: one bit-vector for the
//! X-part, one for the Z-part, and a phase exponent `k` so that the operator
//! is `i^k ⊗_q σ_q`. The per-qubit letter is the Hermitian Pauli matrix
//! selected by the `(x, z)` bit pair, with `(1, 1)` meaning `Y` (not `XZ`).
//! Strings with an even phase exponent are Hermitian.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const WORD: usize = 64;

/// Default magnitude below which [`PauliSum`] coefficients are dropped.
pub const DEFAULT_PRUNE: f64 = 1e-12;

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Unit phase `i^k`, `k ∈ {0,1,2,3}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_exponent(k: i64) -> Self {
        Phase(k.rem_euclid(4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn is_real(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn conj(self) -> Self {
        Phase((4 - self.0) % 4)
    }

    pub fn to_complex(self) -> Complex64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }
}

impl Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

/// A tensor product of Pauli letters on `n` qubits times a unit phase.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: Phase,
}

fn words(n: usize) -> usize {
    n.div_ceil(WORD).max(1)
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString {
            n,
            x: vec![0; words(n)],
            z: vec![0; words(n)],
            phase: Phase::ONE,
        }
    }

    /// A single letter on qubit `q`.
    pub fn single(n: usize, q: usize, p: Pauli) -> Result<Self> {
        let mut s = Self::identity(n);
        s.set(q, p)?;
        Ok(s)
    }

    pub fn from_letters(letters: &[Pauli]) -> Self {
        let mut s = Self::identity(letters.len());
        for (q, &p) in letters.iter().enumerate() {
            s.set_unchecked(q, p);
        }
        s
    }

    /// Builds a string from `(qubit, letter)` pairs; later pairs overwrite earlier ones.
    pub fn from_sparse(n: usize, ops: &[(usize, Pauli)]) -> Result<Self> {
        let mut s = Self::identity(n);
        for &(q, p) in ops {
            s.set(q, p)?;
        }
        Ok(s)
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    /// The same letters with phase `+1`.
    pub fn unsigned(&self) -> Self {
        self.clone().with_phase(Phase::ONE)
    }

    pub fn letter(&self, q: usize) -> Pauli {
        let (w, b) = (q / WORD, q % WORD);
        Pauli::from_bits((self.x[w] >> b) & 1 == 1, (self.z[w] >> b) & 1 == 1)
    }

    pub fn set(&mut self, q: usize, p: Pauli) -> Result<()> {
        if q >= self.n {
            return Err(Error::QubitOutOfRange { index: q, n_qubits: self.n });
        }
        self.set_unchecked(q, p);
        Ok(())
    }

    fn set_unchecked(&mut self, q: usize, p: Pauli) {
        let (w, b) = (q / WORD, q % WORD);
        let (xb, zb) = p.bits();
        self.x[w] = (self.x[w] & !(1 << b)) | ((xb as u64) << b);
        self.z[w] = (self.z[w] & !(1 << b)) | ((zb as u64) << b);
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    pub fn is_identity(&self) -> bool {
        self.weight() == 0
    }

    /// Only `I`/`Z` letters, i.e. diagonal in the computational basis.
    pub fn is_diagonal(&self) -> bool {
        self.x.iter().all(|&w| w == 0)
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase.is_real()
    }

    /// Qubits carrying a non-identity letter, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&q| self.letter(q) != Pauli::I).collect()
    }

    pub fn adjoint(&self) -> Self {
        self.clone().with_phase(self.phase.conj())
    }

    fn check_size(&self, other: &PauliString) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// Exact group product `self · other`.
    pub fn mul(&self, other: &PauliString) -> Result<PauliString> {
        self.check_size(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &PauliString) -> PauliString {
        // σ(x,z) = i^{x·z} X^x Z^z, so
        // σ1 σ2 = i^{x1z1 + x2z2 + 2 z1·x2 − x z} σ(x1^x2, z1^z2).
        let mut k: i64 = self.phase.0 as i64 + other.phase.0 as i64;
        let mut x = Vec::with_capacity(self.x.len());
        let mut z = Vec::with_capacity(self.z.len());
        for w in 0..self.x.len() {
            let (x1, z1, x2, z2) = (self.x[w], self.z[w], other.x[w], other.z[w]);
            let (xo, zo) = (x1 ^ x2, z1 ^ z2);
            k += (x1 & z1).count_ones() as i64 + (x2 & z2).count_ones() as i64
                + 2 * (z1 & x2).count_ones() as i64
                - (xo & zo).count_ones() as i64;
            x.push(xo);
            z.push(zo);
        }
        PauliString {
            n: self.n,
            x,
            z,
            phase: Phase::from_exponent(k),
        }
    }

    /// Number of positions where the letters differ and are both non-identity,
    /// taken mod 2: the symplectic inner product.
    fn symplectic_parity(&self, other: &PauliString) -> u32 {
        self.x
            .iter()
            .zip(&self.z)
            .zip(other.x.iter().zip(&other.z))
            .map(|((x1, z1), (x2, z2))| ((x1 & z2) ^ (z1 & x2)).count_ones())
            .sum::<u32>()
            & 1
    }

    /// `true` iff `pq + qp = 0`.
    pub fn anticommutes(&self, other: &PauliString) -> Result<bool> {
        self.check_size(other)?;
        Ok(self.symplectic_parity(other) == 1)
    }

    pub fn commutes(&self, other: &PauliString) -> Result<bool> {
        self.anticommutes(other).map(|a| !a)
    }

    /// Relabels qubits: the letter on qubit `q` moves to qubit `perm[q]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<PauliString> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: perm.len(),
            });
        }
        let mut out = PauliString::identity(self.n).with_phase(self.phase);
        for (q, &target) in perm.iter().enumerate() {
            out.set(target, self.letter(q))?;
        }
        Ok(out)
    }

    /// Parses `([XYZ]<index>)*` with an optional leading sign and/or `i`.
    /// A lone `I` denotes the identity.
    pub fn parse(text: &str, n: usize) -> Result<PauliString> {
        let bad = |msg: &str| Error::Parse(format!("pauli string {text:?}: {msg}"));
        let t = text.trim();
        let mut chars = t.char_indices().peekable();
        let mut k = 0i64;
        if let Some(&(_, c)) = chars.peek() {
            if c == '+' || c == '-' {
                if c == '-' {
                    k += 2;
                }
                chars.next();
            }
        }
        if let Some(&(_, 'i')) = chars.peek() {
            k += 1;
            chars.next();
        }
        let rest: String = chars.map(|(_, c)| c).collect();
        let mut s = PauliString::identity(n);
        if rest == "I" {
            return Ok(s.with_phase(Phase::from_exponent(k)));
        }
        let mut seen = vec![false; n];
        let bytes = rest.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let letter = match bytes[pos] {
                b'X' => Pauli::X,
                b'Y' => Pauli::Y,
                b'Z' => Pauli::Z,
                b' ' | b'\t' => {
                    pos += 1;
                    continue;
                }
                other => return Err(bad(&format!("unexpected character {:?}", other as char))),
            };
            pos += 1;
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if start == pos {
                return Err(bad("letter without qubit index"));
            }
            let q: usize = rest[start..pos]
                .parse()
                .map_err(|_| bad("qubit index overflow"))?;
            if q >= n {
                return Err(Error::QubitOutOfRange { index: q, n_qubits: n });
            }
            if seen[q] {
                return Err(bad(&format!("duplicate qubit index {q}")));
            }
            seen[q] = true;
            s.set_unchecked(q, letter);
        }
        Ok(s.with_phase(Phase::from_exponent(k)))
    }

    /// Letters only, e.g. `X0Z1Z6`; identity is `I`. Phase is not printed.
    pub fn letters_string(&self) -> String {
        let mut out = String::new();
        for q in 0..self.n {
            let p = self.letter(q);
            if p != Pauli::I {
                out.push(p.symbol());
                out.push_str(&q.to_string());
            }
        }
        if out.is_empty() {
            out.push('I');
        }
        out
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase.0 {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        };
        write!(f, "{prefix}{}", self.letters_string())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({}; n={})", self, self.n)
    }
}

impl Mul for &PauliString {
    type Output = PauliString;

    /// Panics on a qubit-count mismatch; use [`PauliString::mul`] to get an error instead.
    fn mul(self, rhs: &PauliString) -> PauliString {
        PauliString::mul(self, rhs).expect("pauli string size mismatch")
    }
}

/// Linear combination of phase-free Pauli strings with complex coefficients.
#[derive(Clone, PartialEq)]
pub struct PauliSum {
    n: usize,
    terms: BTreeMap<PauliString, Complex64>,
    prune: f64,
}

impl fmt::Debug for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut l = f.debug_map();
        for (p, c) in &self.terms {
            l.entry(&p.letters_string(), c);
        }
        l.finish()
    }
}

/// One serialized term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PauliRecord {
    pub string: String,
    pub real: f64,
    pub imag: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PauliSumFile {
    n_qubits: usize,
    terms: Vec<PauliRecord>,
}

impl PauliSum {
    pub fn zero(n: usize) -> Self {
        PauliSum {
            n,
            terms: BTreeMap::new(),
            prune: DEFAULT_PRUNE,
        }
    }

    pub fn identity(n: usize, c: Complex64) -> Self {
        let mut s = Self::zero(n);
        s.add_term(&PauliString::identity(n), c);
        s
    }

    pub fn from_string(p: &PauliString, c: Complex64) -> Self {
        let mut s = Self::zero(p.n_qubits());
        s.add_term(p, c);
        s
    }

    pub fn with_prune(mut self, threshold: f64) -> Self {
        self.prune = threshold;
        self.prune_small();
        self
    }

    pub fn prune_threshold(&self) -> f64 {
        self.prune
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates `(unsigned string, coefficient)` in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, &Complex64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &PauliString) -> Complex64 {
        let c = self.terms.get(&p.unsigned()).copied().unwrap_or_default();
        c * p.phase().to_complex()
    }

    /// Accumulates `c · p`; the phase of `p` is folded into the coefficient.
    pub fn add_term(&mut self, p: &PauliString, c: Complex64) {
        assert_eq!(p.n_qubits(), self.n, "pauli sum size mismatch");
        let c = c * p.phase().to_complex();
        let key = p.unsigned();
        let entry = self.terms.entry(key.clone()).or_default();
        *entry += c;
        if entry.norm() < self.prune {
            self.terms.remove(&key);
        }
    }

    fn prune_small(&mut self) {
        let thr = self.prune;
        self.terms.retain(|_, c| c.norm() >= thr);
    }

    fn check_size(&self, other: &PauliSum) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &PauliSum) -> Result<PauliSum> {
        self.check_size(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p, *c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: Complex64) -> PauliSum {
        let mut out = PauliSum {
            n: self.n,
            terms: self.terms.iter().map(|(p, v)| (p.clone(), v * c)).collect(),
            prune: self.prune,
        };
        out.prune_small();
        out
    }

    pub fn try_mul(&self, other: &PauliSum) -> Result<PauliSum> {
        self.check_size(other)?;
        let mut out = PauliSum::zero(self.n).with_prune(self.prune);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                let r = p.mul_unchecked(q);
                out.add_term(&r, a * b);
            }
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> PauliSum {
        PauliSum {
            n: self.n,
            terms: self.terms.iter().map(|(p, c)| (p.clone(), c.conj())).collect(),
            prune: self.prune,
        }
    }

    /// `[A, B] = AB − BA`.
    pub fn commutator(&self, other: &PauliSum) -> Result<PauliSum> {
        Ok(self.try_mul(other)?.try_sub(&other.try_mul(self)?)?)
    }

    /// `{A, B} = AB + BA`.
    pub fn anticommutator(&self, other: &PauliSum) -> Result<PauliSum> {
        self.try_mul(other)?.try_add(&other.try_mul(self)?)
    }

    pub fn try_sub(&self, other: &PauliSum) -> Result<PauliSum> {
        self.try_add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Builds a sum from accumulated coefficients; phases of the keys are folded in.
    pub fn from_terms<I>(n: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (PauliString, Complex64)>,
    {
        let mut out = Self::zero(n);
        for (p, c) in terms {
            assert_eq!(p.n_qubits(), n, "pauli sum size mismatch");
            let c = c * p.phase().to_complex();
            *out.terms.entry(p.unsigned()).or_default() += c;
        }
        out.prune_small();
        out
    }

    /// Drops imaginary parts no larger than `tol`; larger ones are an error.
    pub fn real_part(&self, tol: f64) -> Result<PauliSum> {
        let worst = self.terms.values().map(|c| c.im.abs()).fold(0.0, f64::max);
        if worst > tol {
            return Err(Error::NotHermitian(worst));
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            c.im = 0.0;
        }
        out.prune_small();
        Ok(out)
    }

    /// Hermitian iff every coefficient of a phase-free string is real.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.im.abs() <= tol)
    }

    /// True when every stored coefficient is below `tol` in magnitude.
    pub fn is_zero(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.norm() <= tol)
    }

    /// All strings diagonal in the computational basis.
    pub fn is_diagonal(&self) -> bool {
        self.terms.keys().all(PauliString::is_diagonal)
    }

    pub fn max_weight(&self) -> usize {
        self.terms.keys().map(PauliString::weight).max().unwrap_or(0)
    }

    /// Same operator with qubit `q` relabelled to `perm[q]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<PauliSum> {
        let mut out = PauliSum::zero(self.n).with_prune(self.prune);
        for (p, c) in &self.terms {
            out.add_term(&p.permuted(perm)?, *c);
        }
        Ok(out)
    }

    pub fn to_records(&self) -> Vec<PauliRecord> {
        self.terms
            .iter()
            .map(|(p, c)| PauliRecord {
                string: p.letters_string(),
                real: c.re,
                imag: c.im,
            })
            .collect()
    }

    pub fn from_records(n: usize, records: &[PauliRecord]) -> Result<PauliSum> {
        let mut out = PauliSum::zero(n);
        for r in records {
            let p = PauliString::parse(&r.string, n)?;
            out.add_term(&p, Complex64::new(r.real, r.imag));
        }
        Ok(out)
    }

    /// JSON document `{"n_qubits": n, "terms": [{"string", "real", "imag"}, ...]}`.
    pub fn to_json(&self) -> String {
        let file = PauliSumFile {
            n_qubits: self.n,
            terms: self.to_records(),
        };
        serde_json::to_string_pretty(&file).expect("pauli sum serialization")
    }

    pub fn from_json(text: &str) -> Result<PauliSum> {
        let file: PauliSumFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("pauli sum json: {e}")))?;
        PauliSum::from_records(file.n_qubits, &file.terms)
    }
}

impl Add for &PauliSum {
    type Output = PauliSum;
    fn add(self, rhs: &PauliSum) -> PauliSum {
        self.try_add(rhs).expect("pauli sum size mismatch")
    }
}

impl Sub for &PauliSum {
    type Output = PauliSum;
    fn sub(self, rhs: &PauliSum) -> PauliSum {
        self.try_sub(rhs).expect("pauli sum size mismatch")
    }
}

impl Mul for &PauliSum {
    type Output = PauliSum;
    fn mul(self, rhs: &PauliSum) -> PauliSum {
        self.try_mul(rhs).expect("pauli sum size mismatch")
    }
}

impl Neg for &PauliSum {
    type Output = PauliSum;
    fn neg(self) -> PauliSum {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> PauliString {
        PauliString::parse(s, n).unwrap()
    }

    /// 2^n x 2^n dense matrix, qubit 0 the most significant tensor factor.
    fn dense(ps: &PauliString) -> Vec<Vec<Complex64>> {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let single = |l: Pauli| -> [[Complex64; 2]; 2] {
            match l {
                Pauli::I => [[one, zero], [zero, one]],
                Pauli::X => [[zero, one], [one, zero]],
                Pauli::Y => [[zero, -i], [i, zero]],
                Pauli::Z => [[one, zero], [zero, -one]],
            }
        };
        let mut m = vec![vec![ps.phase().to_complex()]];
        for q in 0..ps.n_qubits() {
            let s = single(ps.letter(q));
            let d = m.len();
            let mut out = vec![vec![zero; 2 * d]; 2 * d];
            for r in 0..d {
                for c in 0..d {
                    for a in 0..2 {
                        for b in 0..2 {
                            out[2 * r + a][2 * c + b] = m[r][c] * s[a][b];
                        }
                    }
                }
            }
            m = out;
        }
        m
    }

    fn matmul(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
        let d = a.len();
        (0..d)
            .map(|r| {
                (0..d)
                    .map(|c| (0..d).map(|k| a[r][k] * b[k][c]).sum())
                    .collect()
            })
            .collect()
    }

    fn close(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> bool {
        a.iter()
            .zip(b)
            .all(|(r, s)| r.iter().zip(s).all(|(x, y)| (x - y).norm() < 1e-12))
    }

    fn all_strings(n: usize) -> Vec<PauliString> {
        let letters = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
        let mut out = vec![];
        for code in 0..4usize.pow(n as u32) {
            let ls: Vec<Pauli> = (0..n).map(|q| letters[(code >> (2 * q)) & 3]).collect();
            for k in 0..4 {
                out.push(PauliString::from_letters(&ls).with_phase(Phase::from_exponent(k)));
            }
        }
        out
    }

    #[test]
    fn single_qubit_products() {
        let r = p("X0", 1).mul(&p("Y0", 1)).unwrap();
        assert_eq!(r, p("iZ0", 1));
        let r = p("Y0", 1).mul(&p("X0", 1)).unwrap();
        assert_eq!(r, p("-iZ0", 1));
    }

    #[test]
    fn two_qubit_product_matches_dense() {
        let a = p("X0Z1", 2);
        let b = p("Z0Z1", 2);
        let r = a.mul(&b).unwrap();
        assert_eq!(r, p("-iY0", 2));
        assert!(close(&dense(&r), &matmul(&dense(&a), &dense(&b))));
    }

    #[test]
    fn mul_exhaustive_against_dense_oracle() {
        for n in 1..=2 {
            let all = all_strings(n);
            for a in &all {
                for b in &all {
                    let r = a.mul(b).unwrap();
                    assert!(close(&dense(&r), &matmul(&dense(a), &dense(b))), "{a} * {b}");
                }
            }
        }
        // n = 3 over unsigned strings (phases already covered above)
        let all: Vec<_> = all_strings(3).into_iter().filter(|s| s.phase() == Phase::ONE).collect();
        for a in &all {
            for b in &all {
                let r = a.mul(b).unwrap();
                assert!(close(&dense(&r), &matmul(&dense(a), &dense(b))));
            }
        }
    }

    #[test]
    fn anticommutation_exhaustive_against_dense_oracle() {
        let all: Vec<_> = (1..=3)
            .flat_map(|n| all_strings(n).into_iter().filter(|s| s.phase() == Phase::ONE))
            .collect();
        for a in &all {
            for b in all.iter().filter(|b| b.n_qubits() == a.n_qubits()) {
                let ab = matmul(&dense(a), &dense(b));
                let ba = matmul(&dense(b), &dense(a));
                let sum: Vec<Vec<Complex64>> = ab
                    .iter()
                    .zip(&ba)
                    .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
                    .collect();
                let zero = sum.iter().flatten().all(|x| x.norm() < 1e-12);
                assert_eq!(a.anticommutes(b).unwrap(), zero, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn anticommute_examples() {
        assert!(p("X0", 1).anticommutes(&p("Y0", 1)).unwrap());
        assert!(!p("X0", 2).anticommutes(&p("X1", 2)).unwrap());
        assert!(p("X0Z1Z6", 8).anticommutes(&p("Y0Z2Z7", 8)).unwrap());
    }

    #[test]
    fn size_mismatch_is_error() {
        assert!(matches!(
            p("X0", 1).mul(&p("X0", 2)),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(p("X0", 1).anticommutes(&p("X0", 2)).is_err());
    }

    #[test]
    fn parse_examples() {
        let s = p("X0Z1Z6", 10);
        assert_eq!(s.letter(0), Pauli::X);
        assert_eq!(s.letter(1), Pauli::Z);
        assert_eq!(s.letter(6), Pauli::Z);
        assert_eq!(s.weight(), 3);
        assert!(p("", 4).is_identity());
        assert_eq!(p("Z0Z3Z9", 10).weight(), 3);
        assert_eq!(p("-iX1", 2).phase(), Phase::MINUS_I);
        assert_eq!(p("+Y1", 2).phase(), Phase::ONE);
        assert!(p("I", 3).is_identity());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(PauliString::parse("X0X0", 2), Err(Error::Parse(_))));
        assert!(matches!(
            PauliString::parse("X5", 2),
            Err(Error::QubitOutOfRange { .. })
        ));
        assert!(PauliString::parse("Q1", 2).is_err());
        assert!(PauliString::parse("X", 2).is_err());
    }

    #[test]
    fn display_round_trip() {
        for s in ["X0Z1Z6", "-iY3", "i", "-Z0Z9", "iX2Y4"] {
            let a = p(s, 10);
            assert_eq!(p(&a.to_string(), 10), a);
        }
    }

    #[test]
    fn sum_prunes_cancellations() {
        let mut s = PauliSum::from_string(&p("X0", 2), Complex64::new(1.0, 0.0));
        s.add_term(&p("-X0", 2), Complex64::new(1.0, 0.0));
        assert!(s.is_empty());
        let a = PauliSum::from_string(&p("Z0", 2), Complex64::new(0.5, 0.0));
        let sq = a.try_mul(&a).unwrap();
        assert_eq!(sq.len(), 1);
        assert!((sq.coefficient(&PauliString::identity(2)) - Complex64::new(0.25, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn phase_folds_into_coefficient() {
        let s = PauliSum::from_string(&p("iY0", 1), Complex64::new(1.0, 0.0));
        assert!(!s.is_hermitian(1e-12));
        assert!((s.coefficient(&p("Y0", 1)) - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        let h = &s + &s.adjoint();
        assert!(h.is_empty());
    }

    #[test]
    fn json_round_trip() {
        let mut s = PauliSum::identity(3, Complex64::new(0.25, 0.0));
        s.add_term(&p("X0Y2", 3), Complex64::new(-1.5, 0.125));
        let back = PauliSum::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
    }
}
