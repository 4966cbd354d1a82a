//! FCIDUMP integrals and their spin-orbital expansion.
//!
//! Spin orbitals are interleaved: spin orbital `2k` is spatial orbital `k`
//! with spin α and `2k + 1` the same orbital with spin β.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub const HARTREE_TO_KCALMOL: f64 = 627.509474;

pub fn hartree_to_kcalmol(e: f64) -> f64 {
    e * HARTREE_TO_KCALMOL
}

pub fn kcalmol_to_hartree(e: f64) -> f64 {
    e / HARTREE_TO_KCALMOL
}

/// Real spatial-orbital integrals, two-body part in chemist order `(ij|kl)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpatialIntegrals {
    pub norb: usize,
    pub nelec: usize,
    pub ms2: i64,
    pub orbsym: Vec<i64>,
    pub isym: i64,
    pub e_core: f64,
    h1: Vec<f64>,
    eri: Vec<f64>,
}

impl SpatialIntegrals {
    pub fn zeros(norb: usize, nelec: usize) -> Self {
        SpatialIntegrals {
            norb,
            nelec,
            ms2: 0,
            orbsym: vec![1; norb],
            isym: 1,
            e_core: 0.0,
            h1: vec![0.0; norb * norb],
            eri: vec![0.0; norb.pow(4)],
        }
    }

    fn idx2(&self, i: usize, j: usize) -> usize {
        i * self.norb + j
    }

    fn idx4(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        ((i * self.norb + j) * self.norb + k) * self.norb + l
    }

    pub fn h1(&self, i: usize, j: usize) -> f64 {
        self.h1[self.idx2(i, j)]
    }

    pub fn eri(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.eri[self.idx4(i, j, k, l)]
    }

    pub fn set_h1(&mut self, i: usize, j: usize, v: f64) {
        let (a, b) = (self.idx2(i, j), self.idx2(j, i));
        self.h1[a] = v;
        self.h1[b] = v;
    }

    /// Sets `(ij|kl)` and its seven symmetry partners.
    pub fn set_eri(&mut self, i: usize, j: usize, k: usize, l: usize, v: f64) {
        for (a, b, c, d) in eri_orbit(i, j, k, l) {
            let x = self.idx4(a, b, c, d);
            self.eri[x] = v;
        }
    }

    /// Closed-shell determinant energy with the lowest `nelec / 2` orbitals doubly occupied.
    pub fn closed_shell_energy(&self) -> f64 {
        let occ = self.nelec / 2;
        let mut e = self.e_core;
        for a in 0..occ {
            e += 2.0 * self.h1(a, a);
            for b in 0..occ {
                e += 2.0 * self.eri(a, a, b, b) - self.eri(a, b, b, a);
            }
        }
        e
    }
}

fn eri_orbit(i: usize, j: usize, k: usize, l: usize) -> [(usize, usize, usize, usize); 8] {
    [
        (i, j, k, l),
        (j, i, k, l),
        (i, j, l, k),
        (j, i, l, k),
        (k, l, i, j),
        (l, k, i, j),
        (k, l, j, i),
        (l, k, j, i),
    ]
}

fn canonical_eri(i: usize, j: usize, k: usize, l: usize) -> (usize, usize, usize, usize) {
    let (i, j) = if i >= j { (i, j) } else { (j, i) };
    let (k, l) = if k >= l { (k, l) } else { (l, k) };
    if (i, j) >= (k, l) {
        (i, j, k, l)
    } else {
        (k, l, i, j)
    }
}

fn parse_float(tok: &str) -> Result<f64> {
    if tok.starts_with('(') {
        return Err(Error::Parse("complex integrals are not supported".into()));
    }
    tok.replace(['D', 'd'], "E")
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("bad number '{tok}'")))
}

fn parse_header(header: &str) -> Result<HashMap<String, Vec<String>>> {
    let mut fields: HashMap<String, Vec<String>> = HashMap::new();
    let mut current: Option<String> = None;
    for tok in header.split(|c: char| c == ',' || c.is_whitespace()) {
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        if let Some((key, value)) = tok.split_once('=') {
            let key = key.trim().to_ascii_uppercase();
            if key.is_empty() {
                return Err(Error::Parse(format!("header token '{tok}' has no key")));
            }
            let entry = fields.entry(key.clone()).or_default();
            if !value.trim().is_empty() {
                entry.push(value.trim().to_string());
            }
            current = Some(key);
        } else {
            match &current {
                Some(key) => fields.get_mut(key).unwrap().push(tok.to_string()),
                None => return Err(Error::Parse(format!("unexpected header token '{tok}'"))),
            }
        }
    }
    Ok(fields)
}

fn header_int(fields: &HashMap<String, Vec<String>>, key: &str) -> Result<Option<i64>> {
    match fields.get(key) {
        None => Ok(None),
        Some(v) if v.len() == 1 => v[0]
            .parse::<i64>()
            .map(Some)
            .map_err(|_| Error::Parse(format!("{key} must be an integer, got '{}'", v[0]))),
        Some(v) => Err(Error::Parse(format!("{key} expects one value, got {}", v.len()))),
    }
}

/// Parses FCIDUMP text with 1-based orbital indices.
pub fn parse_fcidump(text: &str) -> Result<SpatialIntegrals> {
    let start = text
        .find("&FCI")
        .or_else(|| text.find("&fci"))
        .ok_or_else(|| Error::Parse("missing &FCI header".into()))?;
    let rest = &text[start + 4..];
    let mut header_end = None;
    let mut offset = 0;
    for line in rest.split_inclusive('\n') {
        let t = line.trim();
        let upper = t.to_ascii_uppercase();
        if let Some(p) = upper.find("&END") {
            header_end = Some((offset + line.find(&t[p..p + 4]).unwrap(), 4));
            break;
        }
        if t == "/" {
            header_end = Some((offset + line.find('/').unwrap(), 1));
            break;
        }
        offset += line.len();
    }
    let (hend, hlen) = header_end.ok_or_else(|| Error::Parse("header is not terminated".into()))?;
    let fields = parse_header(&rest[..hend])?;
    let norb = header_int(&fields, "NORB")?
        .ok_or_else(|| Error::Parse("header lacks NORB".into()))?;
    let nelec = header_int(&fields, "NELEC")?
        .ok_or_else(|| Error::Parse("header lacks NELEC".into()))?;
    if norb <= 0 || nelec < 0 {
        return Err(Error::Parse(format!("invalid NORB={norb} or NELEC={nelec}")));
    }
    let norb = norb as usize;
    let mut ints = SpatialIntegrals::zeros(norb, nelec as usize);
    ints.ms2 = header_int(&fields, "MS2")?.unwrap_or(0);
    ints.isym = header_int(&fields, "ISYM")?.unwrap_or(1);
    if let Some(sym) = fields.get("ORBSYM") {
        ints.orbsym = sym
            .iter()
            .map(|s| s.parse::<i64>().map_err(|_| Error::Parse(format!("bad ORBSYM entry '{s}'"))))
            .collect::<Result<_>>()?;
    }

    let mut seen_one: HashMap<(usize, usize), f64> = HashMap::new();
    let mut seen_two: HashMap<(usize, usize, usize, usize), f64> = HashMap::new();
    let mut seen_core = None;
    let conflict = |a: f64, b: f64| (a - b).abs() > 1e-12 * (1.0 + a.abs());

    for (lineno, line) in rest[hend + hlen..].lines().enumerate() {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        if toks.len() != 5 {
            return Err(Error::Parse(format!(
                "integral line {} has {} fields, expected 5",
                lineno + 1,
                toks.len()
            )));
        }
        let v = parse_float(toks[0])?;
        let mut idx = [0usize; 4];
        for (slot, t) in idx.iter_mut().zip(&toks[1..]) {
            let x: usize = t
                .parse()
                .map_err(|_| Error::Parse(format!("bad index '{t}' on integral line {}", lineno + 1)))?;
            if x > norb {
                return Err(Error::Parse(format!("index {x} exceeds NORB={norb}")));
            }
            *slot = x;
        }
        match idx {
            [0, 0, 0, 0] => {
                if let Some(old) = seen_core {
                    if conflict(old, v) {
                        return Err(Error::Parse("conflicting core energy entries".into()));
                    }
                }
                seen_core = Some(v);
                ints.e_core = v;
            }
            [i, j, 0, 0] if i > 0 && j > 0 => {
                let key = (i.max(j) - 1, i.min(j) - 1);
                if let Some(&old) = seen_one.get(&key) {
                    if conflict(old, v) {
                        return Err(Error::Parse(format!("conflicting entries for h({i},{j})")));
                    }
                }
                seen_one.insert(key, v);
                ints.set_h1(key.0, key.1, v);
            }
            [i, j, k, l] if i > 0 && j > 0 && k > 0 && l > 0 => {
                let key = canonical_eri(i - 1, j - 1, k - 1, l - 1);
                if let Some(&old) = seen_two.get(&key) {
                    if conflict(old, v) {
                        return Err(Error::Parse(format!("conflicting entries for ({i}{j}|{k}{l})")));
                    }
                }
                seen_two.insert(key, v);
                ints.set_eri(key.0, key.1, key.2, key.3, v);
            }
            // Orbital energies (`e i 0 0 0`) and other auxiliary records carry no integrals.
            [_, 0, 0, 0] => {}
            _ => {
                return Err(Error::Parse(format!(
                    "unrecognized index pattern {:?} on integral line {}",
                    idx,
                    lineno + 1
                )))
            }
        }
    }
    Ok(ints)
}

/// FCIDUMP text with every symmetry-unique nonzero integral.
pub fn write_fcidump(ints: &SpatialIntegrals) -> String {
    let n = ints.norb;
    let mut s = String::new();
    writeln!(s, " &FCI NORB={},NELEC={},MS2={},", n, ints.nelec, ints.ms2).unwrap();
    let sym: Vec<String> = ints.orbsym.iter().map(|x| x.to_string()).collect();
    writeln!(s, "  ORBSYM={},", sym.join(",")).unwrap();
    writeln!(s, "  ISYM={},", ints.isym).unwrap();
    writeln!(s, " &END").unwrap();
    for i in 0..n {
        for j in 0..=i {
            for k in 0..n {
                for l in 0..=k {
                    if (i, j) < (k, l) {
                        continue;
                    }
                    let v = ints.eri(i, j, k, l);
                    if v != 0.0 {
                        writeln!(s, "{:?} {} {} {} {}", v, i + 1, j + 1, k + 1, l + 1).unwrap();
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..=i {
            let v = ints.h1(i, j);
            if v != 0.0 {
                writeln!(s, "{:?} {} {} 0 0", v, i + 1, j + 1).unwrap();
            }
        }
    }
    writeln!(s, "{:?} 0 0 0 0", ints.e_core).unwrap();
    s
}

/// Spin-orbital Hamiltonian data:
/// `H = e_core + Σ h1[i,j] a_i† a_j + Σ h2[i,j,k,l] a_i† a_j† a_l a_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct MolecularIntegrals {
    pub n_spin_orbitals: usize,
    pub n_electrons: usize,
    pub e_core: f64,
    h1: Vec<f64>,
    h2: Vec<f64>,
}

impl MolecularIntegrals {
    pub fn zeros(n_spin_orbitals: usize, n_electrons: usize) -> Result<Self> {
        if n_spin_orbitals % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "spin-orbital count must be even, got {n_spin_orbitals}"
            )));
        }
        Ok(MolecularIntegrals {
            n_spin_orbitals,
            n_electrons,
            e_core: 0.0,
            h1: vec![0.0; n_spin_orbitals.pow(2)],
            h2: vec![0.0; n_spin_orbitals.pow(4)],
        })
    }

    pub fn h1(&self, i: usize, j: usize) -> f64 {
        self.h1[i * self.n_spin_orbitals + j]
    }

    pub fn h2(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        let n = self.n_spin_orbitals;
        self.h2[((i * n + j) * n + k) * n + l]
    }

    pub fn set_h1(&mut self, i: usize, j: usize, v: f64) {
        let n = self.n_spin_orbitals;
        self.h1[i * n + j] = v;
    }

    pub fn set_h2(&mut self, i: usize, j: usize, k: usize, l: usize, v: f64) {
        let n = self.n_spin_orbitals;
        self.h2[((i * n + j) * n + k) * n + l] = v;
    }

    pub fn n_mo(&self) -> usize {
        self.n_spin_orbitals / 2
    }

    /// Largest `|h1[i,j] − h1[j,i]|`.
    pub fn h1_asymmetry(&self) -> f64 {
        let n = self.n_spin_orbitals;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..i {
                worst = worst.max((self.h1(i, j) - self.h1(j, i)).abs());
            }
        }
        worst
    }

    /// Energy of the determinant with the given spin orbitals occupied.
    pub fn determinant_energy(&self, occupied: &[usize]) -> f64 {
        let mut e = self.e_core;
        for &i in occupied {
            e += self.h1(i, i);
            for &j in occupied {
                // ⟨ij||ij⟩ / 2 with ⟨ij|kl⟩ = 2·h2[i,j,k,l].
                e += self.h2(i, j, i, j) - self.h2(i, j, j, i);
            }
        }
        e
    }

    /// Determinant energy of the lowest `n_electrons` spin orbitals.
    pub fn hf_energy(&self) -> f64 {
        let occ: Vec<usize> = (0..self.n_electrons).collect();
        self.determinant_energy(&occ)
    }
}

/// Expands spatial integrals over interleaved spin orbitals.
///
/// `h2[i,j,k,l] = ½ (ik|jl)` when spins of `i,k` and of `j,l` agree.
pub fn to_spin_orbitals(sp: &SpatialIntegrals) -> MolecularIntegrals {
    let n = 2 * sp.norb;
    let mut m = MolecularIntegrals::zeros(n, sp.nelec).expect("even by construction");
    m.e_core = sp.e_core;
    for p in 0..n {
        for q in 0..n {
            if p % 2 == q % 2 {
                m.set_h1(p, q, sp.h1(p / 2, q / 2));
            }
        }
    }
    for i in 0..n {
        for k in (i % 2..n).step_by(2) {
            for j in 0..n {
                for l in (j % 2..n).step_by(2) {
                    let v = sp.eri(i / 2, k / 2, j / 2, l / 2);
                    if v != 0.0 {
                        m.set_h2(i, j, k, l, 0.5 * v);
                    }
                }
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn core_only() {
        let ints = parse_fcidump("&FCI NORB=1,NELEC=0 &END\n0.5 0 0 0 0\n").unwrap();
        assert_eq!(ints.e_core, 0.5);
        assert_eq!(ints.h1(0, 0), 0.0);
        assert_eq!(ints.eri(0, 0, 0, 0), 0.0);
    }

    #[test]
    fn one_body_entry() {
        let ints = parse_fcidump("&FCI NORB=1,NELEC=1,\n/\n1.0 1 1 0 0\n").unwrap();
        assert_eq!(ints.h1(0, 0), 1.0);
        let so = to_spin_orbitals(&ints);
        assert_eq!((so.h1(0, 0), so.h1(1, 1), so.h1(0, 1)), (1.0, 1.0, 0.0));
    }

    #[test]
    fn fortran_exponent_and_symmetry() {
        let text = " &FCI NORB=2, NELEC=2, MS2=0,\n ORBSYM=1,2,\n ISYM=1\n &END\n 2.5D-01 2 1 1 1\n";
        let ints = parse_fcidump(text).unwrap();
        for (i, j, k, l) in eri_orbit(1, 0, 0, 0) {
            assert_eq!(ints.eri(i, j, k, l), 0.25);
        }
        assert_eq!(ints.orbsym, vec![1, 2]);
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse_fcidump("NORB=1 &END").is_err());
        assert!(parse_fcidump("&FCI NELEC=1 &END\n").is_err());
        assert!(parse_fcidump("&FCI NORB=1,NELEC=1 &END\n1.0 2 1 0 0\n").is_err());
        assert!(parse_fcidump("&FCI NORB=2,NELEC=1 &END\n1.0 2 1 0 0\n2.0 1 2 0 0\n").is_err());
        assert!(parse_fcidump("&FCI NORB=2,NELEC=1 &END\n1.0 2 1 0 0\n1.0 1 2 0 0\n").is_ok());
        assert!(parse_fcidump("&FCI NORB=1,NELEC=1 &END\n(1.0,0.5) 1 1 0 0\n").is_err());
        assert!(parse_fcidump("&FCI NORB=1,NELEC=1\n1.0 1 1 0 0\n").is_err());
    }

    #[test]
    fn spin_forbidden_elements_vanish() {
        let mut sp = SpatialIntegrals::zeros(2, 2);
        sp.set_h1(0, 1, 0.3);
        sp.set_eri(0, 1, 1, 0, 0.2);
        sp.set_eri(0, 0, 1, 1, 0.7);
        let so = to_spin_orbitals(&sp);
        assert_eq!(so.h1(0, 3), 0.0);
        assert_eq!(so.h1(0, 2), 0.3);
        let n = 4;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        if i % 2 != k % 2 || j % 2 != l % 2 {
                            assert_eq!(so.h2(i, j, k, l), 0.0);
                        }
                    }
                }
            }
        }
        // a_0† a_3† a_3 a_0 carries ½(00|11)
        assert_eq!(so.h2(0, 3, 0, 3), 0.35);
    }

    #[test]
    fn write_parse_round_trip() {
        let mut sp = SpatialIntegrals::zeros(3, 2);
        sp.e_core = 0.71;
        sp.set_h1(2, 0, -0.1234567890123);
        sp.set_eri(2, 1, 0, 0, 1.0 / 3.0);
        sp.set_eri(1, 1, 1, 1, 0.6);
        let back = parse_fcidump(&write_fcidump(&sp)).unwrap();
        assert_eq!(back, sp);
    }

    #[test]
    fn determinant_energies_agree() {
        let mut sp = SpatialIntegrals::zeros(2, 2);
        sp.e_core = 0.7;
        sp.set_h1(0, 0, -1.2);
        sp.set_h1(1, 1, -0.4);
        sp.set_h1(0, 1, 0.1);
        sp.set_eri(0, 0, 0, 0, 0.6);
        sp.set_eri(0, 0, 1, 1, 0.5);
        sp.set_eri(0, 1, 0, 1, 0.2);
        let so = to_spin_orbitals(&sp);
        assert!((so.hf_energy() - sp.closed_shell_energy()).abs() < 1e-14);
    }

    #[test]
    fn unit_conversion() {
        assert_eq!(hartree_to_kcalmol(1.0), 627.509474);
        assert_eq!(hartree_to_kcalmol(0.0), 0.0);
        assert!((hartree_to_kcalmol(0.2448) - 153.6).abs() < 0.1);
        assert!((kcalmol_to_hartree(hartree_to_kcalmol(0.3)) - 0.3).abs() < 1e-15);
    }
}
