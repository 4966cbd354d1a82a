//! Excitation-driven tree construction, mutual-information cost and
//! qubit-order optimization.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::ansatz::{ExcitationKind, ExcitationReport};
use crate::chem::MolecularIntegrals;
use crate::encode::{map_hamiltonian, particle_sector};
use crate::error::{Error, Result};
use crate::pauli::PauliSum;
use crate::solver::{
    ground_state_in_sector, mutual_information_matrix, EntropyBase, LanczosOptions, MIMatrix, Statevector,
};
use crate::ttree::{check_permutation, pair_majoranas, Branch, TernaryTree, TreeBuilder};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SelectionRule {
    TopK(usize),
    Threshold(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelectionProtocol {
    pub rule: SelectionRule,
    pub include_singles: bool,
}

impl SelectionProtocol {
    pub fn top(k: usize) -> Self {
        SelectionProtocol {
            rule: SelectionRule::TopK(k),
            include_singles: false,
        }
    }

    pub fn threshold(tau: f64) -> Self {
        SelectionProtocol {
            rule: SelectionRule::Threshold(tau),
            include_singles: false,
        }
    }

    pub fn with_singles(mut self, yes: bool) -> Self {
        self.include_singles = yes;
        self
    }

    /// `top:K` or `thresh:τ`.
    pub fn parse(s: &str) -> Result<Self> {
        let (kind, value) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("selection '{s}' must look like top:K or thresh:T")))?;
        match kind {
            "top" => value
                .parse::<usize>()
                .ok()
                .filter(|&k| k > 0)
                .map(Self::top)
                .ok_or_else(|| Error::Parse(format!("bad top-k count '{value}'"))),
            "thresh" | "threshold" => value
                .parse::<f64>()
                .ok()
                .filter(|t| t.is_finite() && *t >= 0.0)
                .map(Self::threshold)
                .ok_or_else(|| Error::Parse(format!("bad threshold '{value}'"))),
            _ => Err(Error::Parse(format!("unknown selection rule '{kind}'"))),
        }
    }
}

/// One selected excitation between MOs `pair.0 < pair.1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Selection {
    pub kind: ExcitationKind,
    pub pair: (usize, usize),
    pub magnitude: f64,
}

impl Selection {
    pub fn double(i: usize, j: usize) -> Self {
        Selection {
            kind: ExcitationKind::Double,
            pair: (i.min(j), i.max(j)),
            magnitude: f64::NAN,
        }
    }

    pub fn single(i: usize, j: usize) -> Self {
        Selection {
            kind: ExcitationKind::Single,
            pair: (i.min(j), i.max(j)),
            magnitude: f64::NAN,
        }
    }

    /// Spin orbitals of the branch, root side first.
    ///
    /// Doubles use `(2i, 2i+1, 2j, 2j+1)`; singles use `(2i+1, 2j+1, 2i, 2j)`.
    pub fn branch_order(&self) -> [usize; 4] {
        let (i, j) = self.pair;
        match self.kind {
            ExcitationKind::Double => [2 * i, 2 * i + 1, 2 * j, 2 * j + 1],
            ExcitationKind::Single => [2 * i + 1, 2 * j + 1, 2 * i, 2 * j],
        }
    }
}

impl fmt::Display for Selection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            ExcitationKind::Single => "single",
            ExcitationKind::Double => "double",
        };
        write!(f, "{k} {}-{} |theta|={:.6}", self.pair.0, self.pair.1, self.magnitude)
    }
}

/// Largest excitations first; equal magnitudes fall back to the MO pair, then doubles before singles.
pub fn select_excitations(report: &ExcitationReport, protocol: &SelectionProtocol) -> Result<Vec<Selection>> {
    let n = report.n_mo;
    let mut cands = vec![];
    for i in 0..n {
        for j in (i + 1)..n {
            cands.push(Selection {
                kind: ExcitationKind::Double,
                pair: (i, j),
                magnitude: report.theta_d[i][j],
            });
            if protocol.include_singles {
                cands.push(Selection {
                    kind: ExcitationKind::Single,
                    pair: (i, j),
                    magnitude: report.theta_s[i][j],
                });
            }
        }
    }
    let rank = |k: ExcitationKind| if k == ExcitationKind::Double { 0 } else { 1 };
    cands.sort_by(|a, b| {
        b.magnitude
            .total_cmp(&a.magnitude)
            .then(a.pair.cmp(&b.pair))
            .then(rank(a.kind).cmp(&rank(b.kind)))
    });
    let chosen: Vec<Selection> = match protocol.rule {
        SelectionRule::TopK(k) => cands.into_iter().filter(|c| c.magnitude > 0.0).take(k).collect(),
        SelectionRule::Threshold(t) => cands
            .into_iter()
            .filter(|c| c.magnitude > 0.0 && c.magnitude >= t)
            .collect(),
    };
    if chosen.is_empty() {
        let msg = match protocol.rule {
            SelectionRule::TopK(_) => "every excitation angle is zero".to_string(),
            SelectionRule::Threshold(t) => format!("no excitation reaches |theta| >= {t}; lower the threshold"),
        };
        return Err(Error::EmptySelection(msg));
    }
    Ok(chosen)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BranchLayout {
    /// Overlapping selections share a branch; disjoint ones get their own.
    #[default]
    Separate,
    /// Every selection goes into one x-chain, in selection order.
    Merged,
}

/// Spin-orbital chains, one per x-branch.
pub fn tailored_branches(
    n_so: usize,
    selections: &[Selection],
    layout: BranchLayout,
) -> Result<Vec<Vec<usize>>> {
    if selections.is_empty() {
        return Err(Error::EmptySelection("no excitations to encode".into()));
    }
    for s in selections {
        if 2 * s.pair.1 + 1 >= n_so || s.pair.0 == s.pair.1 {
            return Err(Error::InvalidArgument(format!(
                "selection {}-{} does not fit {n_so} spin orbitals",
                s.pair.0, s.pair.1
            )));
        }
    }
    // Group selections that share spin orbitals (or all of them).
    let mut groups: Vec<Vec<usize>> = vec![];
    for (k, s) in selections.iter().enumerate() {
        let sos: BTreeSet<usize> = s.branch_order().into_iter().collect();
        let touching: Vec<usize> = match layout {
            BranchLayout::Merged => (0..groups.len()).collect(),
            BranchLayout::Separate => (0..groups.len())
                .filter(|&g| {
                    groups[g]
                        .iter()
                        .any(|&m| selections[m].branch_order().iter().any(|x| sos.contains(x)))
                })
                .collect(),
        };
        if touching.is_empty() {
            groups.push(vec![k]);
        } else {
            let mut merged = vec![];
            for &g in touching.iter().rev() {
                merged.extend(groups.remove(g));
            }
            merged.push(k);
            merged.sort();
            groups.insert(touching[0], merged);
        }
    }
    let mut chains = vec![];
    for g in groups {
        let mut chain: Vec<usize> = vec![];
        for &k in &g {
            for so in selections[k].branch_order() {
                if !chain.contains(&so) {
                    chain.push(so);
                }
            }
        }
        for &k in &g {
            let pos: Vec<usize> = selections[k]
                .branch_order()
                .iter()
                .map(|so| chain.iter().position(|c| c == so).unwrap())
                .collect();
            if pos.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::InvalidArgument(format!(
                    "selection {}-{} needs an orbital order that conflicts with earlier selections",
                    selections[k].pair.0, selections[k].pair.1
                )));
            }
        }
        chains.push(chain);
    }
    Ok(chains)
}

/// Tree with each branch as an x-chain hanging from a z-chain of the remaining spin orbitals.
///
/// Qubit labels equal spin-orbital labels. The z-chain holds the unselected
/// spin orbitals in ascending order with its head at the root; branch `b`
/// hangs from the x-slot of the `b`-th z-chain node. Branches left over once
/// the z-chain is exhausted continue the z-chain with their first node.
pub fn build_tailored_tree(n_so: usize, selections: &[Selection], layout: BranchLayout) -> Result<TernaryTree> {
    let chains = tailored_branches(n_so, selections, layout)?;
    let used: BTreeSet<usize> = chains.iter().flatten().copied().collect();
    let spine: Vec<usize> = (0..n_so).filter(|m| !used.contains(m)).collect();

    let mut b = TreeBuilder::new();
    let mut spine_nodes = vec![];
    for &m in &spine {
        let node = match spine_nodes.last() {
            None => b.root_with_qubit(m, m),
            Some(&prev) => b.child_with_qubit(prev, Branch::Z, m, m),
        };
        spine_nodes.push(node);
    }
    let mut tail: Option<usize> = spine_nodes.last().copied();
    for (k, chain) in chains.iter().enumerate() {
        let head = if k < spine_nodes.len() {
            b.child_with_qubit(spine_nodes[k], Branch::X, chain[0], chain[0])
        } else {
            let h = match tail {
                None => b.root_with_qubit(chain[0], chain[0]),
                Some(t) => b.child_with_qubit(t, Branch::Z, chain[0], chain[0]),
            };
            tail = Some(h);
            h
        };
        let mut prev = head;
        for &m in &chain[1..] {
            prev = b.child_with_qubit(prev, Branch::X, m, m);
        }
    }
    b.build()
}

/// `Σ_{i<j} I_ij |i − j|²`.
pub fn mi_cost(mi: &MIMatrix) -> f64 {
    let n = mi.n();
    let mut c = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let d = (j - i) as f64;
            c += mi.get(i, j) * d * d;
        }
    }
    c
}

/// Cost after moving qubit `q` to position `perm[q]`.
pub fn permuted_cost(mi: &MIMatrix, perm: &[usize]) -> f64 {
    let n = mi.n();
    let mut c = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let d = perm[i] as f64 - perm[j] as f64;
            c += mi.get(i, j) * d * d;
        }
    }
    c
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaParams {
    pub population: usize,
    pub generations: usize,
    pub mutation_rate: f64,
    pub elitism: usize,
    pub tournament: usize,
}

impl Default for GaParams {
    fn default() -> Self {
        GaParams {
            population: 200,
            generations: 300,
            mutation_rate: 0.2,
            elitism: 2,
            tournament: 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PermutationMethod {
    /// Exhaustive up to this many qubits, genetic search above.
    Auto { exhaustive_max: usize, ga: GaParams },
    Exhaustive,
    Genetic(GaParams),
}

impl Default for PermutationMethod {
    fn default() -> Self {
        PermutationMethod::Auto {
            exhaustive_max: 8,
            ga: GaParams::default(),
        }
    }
}

/// Lexicographic successor; false after the last permutation.
fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Lexicographically first optimal permutation.
fn exhaustive(mi: &MIMatrix) -> (Vec<usize>, f64) {
    let n = mi.n();
    let mut p: Vec<usize> = (0..n).collect();
    let mut best = (p.clone(), permuted_cost(mi, &p));
    while next_permutation(&mut p) {
        let c = permuted_cost(mi, &p);
        if c < best.1 - 1e-12 {
            best = (p.clone(), c);
        }
    }
    best
}

/// Order crossover: a slice of `a`, the rest in `b`'s order.
fn order_crossover(a: &[usize], b: &[usize], rng: &mut ChaCha8Rng) -> Vec<usize> {
    let n = a.len();
    let (mut lo, mut hi) = (rng.gen_range(0..n), rng.gen_range(0..n));
    if lo > hi {
        std::mem::swap(&mut lo, &mut hi);
    }
    let mut child = vec![usize::MAX; n];
    let mut taken = vec![false; n];
    for k in lo..=hi {
        child[k] = a[k];
        taken[a[k]] = true;
    }
    let mut fill = (hi + 1) % n;
    for k in 0..n {
        let v = b[(hi + 1 + k) % n];
        if !taken[v] {
            child[fill] = v;
            taken[v] = true;
            fill = (fill + 1) % n;
        }
    }
    child
}

fn genetic(mi: &MIMatrix, ga: &GaParams, seed: u64) -> (Vec<usize>, f64) {
    let n = mi.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pop_size = ga.population.max(2);
    let mut pop: Vec<Vec<usize>> = vec![(0..n).collect()];
    while pop.len() < pop_size {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(&mut rng);
        pop.push(p);
    }
    let score = |pop: &[Vec<usize>]| -> Vec<f64> { pop.par_iter().map(|p| permuted_cost(mi, p)).collect() };
    let mut fit = score(&pop);
    for _ in 0..ga.generations {
        let mut order: Vec<usize> = (0..pop.len()).collect();
        order.sort_by(|&a, &b| fit[a].total_cmp(&fit[b]).then(pop[a].cmp(&pop[b])));
        let mut next: Vec<Vec<usize>> = order.iter().take(ga.elitism.min(pop_size)).map(|&i| pop[i].clone()).collect();
        let pick = |rng: &mut ChaCha8Rng| -> usize {
            (0..ga.tournament.max(1))
                .map(|_| rng.gen_range(0..pop.len()))
                .min_by(|&a, &b| fit[a].total_cmp(&fit[b]).then(a.cmp(&b)))
                .unwrap()
        };
        while next.len() < pop_size {
            let (a, b) = (pick(&mut rng), pick(&mut rng));
            let mut child = order_crossover(&pop[a], &pop[b], &mut rng);
            if n > 1 && rng.gen::<f64>() < ga.mutation_rate {
                let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
                child.swap(x, y);
            }
            next.push(child);
        }
        pop = next;
        fit = score(&pop);
    }
    let best = (0..pop.len())
        .min_by(|&a, &b| fit[a].total_cmp(&fit[b]).then(pop[a].cmp(&pop[b])))
        .unwrap();
    (pop[best].clone(), fit[best])
}

/// Qubit order minimizing [`mi_cost`]; `perm[q]` is the new position of qubit `q`.
pub fn optimize_permutation(mi: &MIMatrix, method: &PermutationMethod, seed: u64) -> (Vec<usize>, f64) {
    let n = mi.n();
    let identity: Vec<usize> = (0..n).collect();
    let base = mi_cost(mi);
    let (p, c) = match method {
        PermutationMethod::Exhaustive => exhaustive(mi),
        PermutationMethod::Genetic(ga) => genetic(mi, ga, seed),
        PermutationMethod::Auto { exhaustive_max, ga } => {
            if n <= *exhaustive_max {
                exhaustive(mi)
            } else {
                genetic(mi, ga, seed)
            }
        }
    };
    if c < base {
        (p, c)
    } else {
        (identity, base)
    }
}

/// Objects that can have their qubits relabelled.
pub trait Relabel: Sized {
    fn relabel(&self, perm: &[usize]) -> Result<Self>;
}

impl Relabel for PauliSum {
    fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n_qubits() {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits(),
                found: perm.len(),
            });
        }
        check_permutation(perm)?;
        self.permuted(perm)
    }
}

impl Relabel for Statevector {
    fn relabel(&self, perm: &[usize]) -> Result<Self> {
        self.permuted(perm)
    }
}

impl Relabel for MIMatrix {
    fn relabel(&self, perm: &[usize]) -> Result<Self> {
        self.permuted(perm)
    }
}

impl Relabel for TernaryTree {
    fn relabel(&self, perm: &[usize]) -> Result<Self> {
        self.with_qubit_permutation(perm)
    }
}

pub fn format_permutation(perm: &[usize]) -> String {
    perm.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn parse_permutation(text: &str) -> Result<Vec<usize>> {
    let p: Vec<usize> = text
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad permutation entry '{t}'"))))
        .collect::<Result<_>>()?;
    check_permutation(&p)?;
    Ok(p)
}

/// Exact ground state of a mapped molecule and its mutual information.
#[derive(Debug, Clone)]
pub struct MappingAnalysis {
    pub hamiltonian: PauliSum,
    pub energy: f64,
    pub state: Statevector,
    pub mi: MIMatrix,
}

/// Ground state in the neutral-spin sector of the electron count.
pub fn analyze_mapping(
    ints: &MolecularIntegrals,
    tree: &TernaryTree,
    base: EntropyBase,
    lanczos: &LanczosOptions,
) -> Result<MappingAnalysis> {
    let pairing = pair_majoranas(tree)?;
    let h = map_hamiltonian(ints, &pairing)?;
    let sz = if ints.n_electrons % 2 == 0 { 0.0 } else { 0.5 };
    let sector = particle_sector(&pairing, ints.n_electrons, Some(sz))?;
    let gs = ground_state_in_sector(&h, &sector, 1, lanczos)?;
    let state = gs.states.into_iter().next().expect("one eigenpair requested");
    let mi = mutual_information_matrix(&state, base);
    Ok(MappingAnalysis {
        hamiltonian: h,
        energy: gs.energies[0],
        state,
        mi,
    })
}

#[derive(Debug, Clone)]
pub struct TreeSampleStats {
    /// Optimal cost of each sampled mapping.
    pub costs: Vec<f64>,
    pub reference_cost: f64,
    /// Share of samples whose cost exceeds the reference.
    pub fraction_above_reference: f64,
}

/// Random trees (shape and mode labels) scored by their exhaustively reordered MI cost.
pub fn sample_tree_space(
    ints: &MolecularIntegrals,
    reference: &TernaryTree,
    count: usize,
    seed: u64,
    base: EntropyBase,
) -> Result<TreeSampleStats> {
    let n = ints.n_spin_orbitals;
    let lanczos = LanczosOptions::default();
    let score = |tree: &TernaryTree| -> Result<f64> {
        let a = analyze_mapping(ints, tree, base, &lanczos)?;
        Ok(optimize_permutation(&a.mi, &PermutationMethod::Exhaustive, 0).1)
    };
    let reference_cost = score(reference)?;
    let costs: Vec<f64> = (0..count)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            score(&TernaryTree::random(n, &mut rng)?)
        })
        .collect::<Result<_>>()?;
    let above = costs.iter().filter(|&&c| c > reference_cost + 1e-9).count();
    Ok(TreeSampleStats {
        fraction_above_reference: if costs.is_empty() { 0.0 } else { above as f64 / costs.len() as f64 },
        costs,
        reference_cost,
    })
}
