//! Ternary trees and the Majorana strings they generate.
//!
//! Every node holds one qubit and one fermionic mode and has three child
//! slots labelled x, y, z. Each empty slot is a *leg*; tracing a leg up to
//! the root yields a Hermitian Pauli string, and the `2m + 1` strings of an
//! `m`-node tree pairwise anticommute. [`pair_majoranas`] groups them into
//! one Majorana pair per mode plus a single unpaired string.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString};

/// Child slot of a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    X,
    Y,
    Z,
}

impl Branch {
    pub const ALL: [Branch; 3] = [Branch::X, Branch::Y, Branch::Z];

    pub fn letter(self) -> Pauli {
        match self {
            Branch::X => Pauli::X,
            Branch::Y => Pauli::Y,
            Branch::Z => Pauli::Z,
        }
    }

    fn slot(self) -> usize {
        match self {
            Branch::X => 0,
            Branch::Y => 1,
            Branch::Z => 2,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Branch::X => 'x',
            Branch::Y => 'y',
            Branch::Z => 'z',
        }
    }

    pub fn parse(s: &str) -> Option<Branch> {
        match s {
            "x" | "X" => Some(Branch::X),
            "y" | "Y" => Some(Branch::Y),
            "z" | "Z" => Some(Branch::Z),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub qubit: usize,
    pub mode: usize,
    pub parent: Option<usize>,
    pub branch: Option<Branch>,
    children: [Option<usize>; 3],
}

impl Node {
    pub fn child(&self, b: Branch) -> Option<usize> {
        self.children[b.slot()]
    }
}

/// A validated ternary tree. Node indices are creation order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryTree {
    nodes: Vec<Node>,
    root: usize,
}

/// One line of the external tree format, keyed by qubit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeRecord {
    pub qubit: usize,
    pub mode: usize,
    pub parent: Option<usize>,
    pub branch: Option<Branch>,
}

/// Structural problems reported by [`validate_records`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeViolation {
    Empty,
    NoRoot,
    MultipleRoots(Vec<usize>),
    DuplicateQubit(usize),
    DuplicateMode(usize),
    QubitOutOfRange(usize),
    ModeOutOfRange(usize),
    UnknownParent { qubit: usize, parent: usize },
    BadBranch { qubit: usize },
    SlotTaken { parent: usize, branch: Branch },
    Orphan(usize),
    Cycle(usize),
}

impl fmt::Display for TreeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeViolation::Empty => write!(f, "tree has no nodes"),
            TreeViolation::NoRoot => write!(f, "no root node"),
            TreeViolation::MultipleRoots(r) => write!(f, "multiple roots at qubits {r:?}"),
            TreeViolation::DuplicateQubit(q) => write!(f, "duplicate qubit {q}"),
            TreeViolation::DuplicateMode(m) => write!(f, "duplicate mode {m}"),
            TreeViolation::QubitOutOfRange(q) => write!(f, "qubit {q} out of range"),
            TreeViolation::ModeOutOfRange(m) => write!(f, "mode {m} out of range"),
            TreeViolation::UnknownParent { qubit, parent } => {
                write!(f, "node {qubit} has unknown parent {parent}")
            }
            TreeViolation::BadBranch { qubit } => {
                write!(f, "node {qubit}: branch label must be set iff a parent is set")
            }
            TreeViolation::SlotTaken { parent, branch } => {
                write!(f, "slot {} of node {parent} claimed twice", branch.as_char())
            }
            TreeViolation::Orphan(q) => write!(f, "node {q} is not reachable from the root"),
            TreeViolation::Cycle(q) => write!(f, "cycle through node {q}"),
        }
    }
}

/// Incremental construction; qubit defaults to the node's creation index.
#[derive(Debug, Default, Clone)]
pub struct TreeBuilder {
    records: Vec<NodeRecord>,
}

impl TreeBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Adds the root node holding `mode`. Returns its node index.
    pub fn root(&mut self, mode: usize) -> usize {
        let q = self.records.len();
        self.root_with_qubit(mode, q)
    }

    pub fn root_with_qubit(&mut self, mode: usize, qubit: usize) -> usize {
        self.records.push(NodeRecord {
            qubit,
            mode,
            parent: None,
            branch: None,
        });
        self.records.len() - 1
    }

    /// Attaches a node holding `mode` to slot `branch` of node `parent`.
    pub fn child(&mut self, parent: usize, branch: Branch, mode: usize) -> usize {
        let q = self.records.len();
        self.child_with_qubit(parent, branch, mode, q)
    }

    pub fn child_with_qubit(
        &mut self,
        parent: usize,
        branch: Branch,
        mode: usize,
        qubit: usize,
    ) -> usize {
        let parent_qubit = self.records[parent].qubit;
        self.records.push(NodeRecord {
            qubit,
            mode,
            parent: Some(parent_qubit),
            branch: Some(branch),
        });
        self.records.len() - 1
    }

    pub fn build(self) -> Result<TernaryTree> {
        TernaryTree::from_records(&self.records)
    }
}

/// Checks the records for every structural violation; an empty result means valid.
pub fn validate_records(records: &[NodeRecord]) -> Vec<TreeViolation> {
    let mut out = vec![];
    let m = records.len();
    if m == 0 {
        return vec![TreeViolation::Empty];
    }
    let mut by_qubit: HashMap<usize, usize> = HashMap::new();
    let mut modes = HashSet::new();
    for (i, r) in records.iter().enumerate() {
        if r.qubit >= m {
            out.push(TreeViolation::QubitOutOfRange(r.qubit));
        }
        if r.mode >= m {
            out.push(TreeViolation::ModeOutOfRange(r.mode));
        }
        if by_qubit.insert(r.qubit, i).is_some() {
            out.push(TreeViolation::DuplicateQubit(r.qubit));
        }
        if !modes.insert(r.mode) {
            out.push(TreeViolation::DuplicateMode(r.mode));
        }
        if r.parent.is_some() != r.branch.is_some() {
            out.push(TreeViolation::BadBranch { qubit: r.qubit });
        }
    }
    let roots: Vec<usize> = records
        .iter()
        .filter(|r| r.parent.is_none())
        .map(|r| r.qubit)
        .collect();
    match roots.len() {
        0 => out.push(TreeViolation::NoRoot),
        1 => {}
        _ => out.push(TreeViolation::MultipleRoots(roots.clone())),
    }
    let mut slots = HashSet::new();
    for r in records {
        if let (Some(p), Some(b)) = (r.parent, r.branch) {
            if !by_qubit.contains_key(&p) {
                out.push(TreeViolation::UnknownParent { qubit: r.qubit, parent: p });
            } else if !slots.insert((p, b)) {
                out.push(TreeViolation::SlotTaken { parent: p, branch: b });
            }
        }
    }
    if !out.is_empty() {
        return out;
    }
    // Walk parents from every node; a walk longer than m revisits a node.
    for r in records {
        let mut cur = r.qubit;
        let mut steps = 0;
        while let Some(p) = records[by_qubit[&cur]].parent {
            cur = p;
            steps += 1;
            if steps > m {
                out.push(TreeViolation::Cycle(r.qubit));
                break;
            }
        }
        if steps <= m && records[by_qubit[&cur]].parent.is_none() && cur != roots[0] {
            out.push(TreeViolation::Orphan(r.qubit));
        }
    }
    out
}

/// Identifies a leg by the node it hangs from and its slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LegId {
    pub node: usize,
    pub branch: Branch,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Leg {
    pub id: LegId,
    pub string: PauliString,
}

impl TernaryTree {
    pub fn from_records(records: &[NodeRecord]) -> Result<TernaryTree> {
        let violations = validate_records(records);
        if !violations.is_empty() {
            return Err(Error::InvalidTree(violations));
        }
        let index: HashMap<usize, usize> = records
            .iter()
            .enumerate()
            .map(|(i, r)| (r.qubit, i))
            .collect();
        let mut nodes: Vec<Node> = records
            .iter()
            .map(|r| Node {
                qubit: r.qubit,
                mode: r.mode,
                parent: r.parent.map(|p| index[&p]),
                branch: r.branch,
                children: [None; 3],
            })
            .collect();
        let mut root = 0;
        for i in 0..nodes.len() {
            match (nodes[i].parent, nodes[i].branch) {
                (Some(p), Some(b)) => nodes[p].children[b.slot()] = Some(i),
                _ => root = i,
            }
        }
        Ok(TernaryTree { nodes, root })
    }

    pub fn records(&self) -> Vec<NodeRecord> {
        self.nodes
            .iter()
            .map(|n| NodeRecord {
                qubit: n.qubit,
                mode: n.mode,
                parent: n.parent.map(|p| self.nodes[p].qubit),
                branch: n.branch,
            })
            .collect()
    }

    /// Jordan–Wigner: a z-chain with mode k at depth k on qubit k.
    pub fn jordan_wigner(n: usize) -> Result<TernaryTree> {
        if n == 0 {
            return Err(Error::InvalidArgument("tree needs at least one mode".into()));
        }
        let mut b = TreeBuilder::new();
        let mut prev = b.root(0);
        for k in 1..n {
            prev = b.child(prev, Branch::Z, k);
        }
        b.build()
    }

    /// Parity encoding: an x-chain whose k-th node holds `mode_order[k]` on qubit k.
    pub fn parity_x(mode_order: &[usize]) -> Result<TernaryTree> {
        check_permutation(mode_order)?;
        let mut b = TreeBuilder::new();
        let mut prev = b.root(mode_order[0]);
        for &m in &mode_order[1..] {
            prev = b.child(prev, Branch::X, m);
        }
        b.build()
    }

    /// Random shape (each new node fills a uniformly chosen open slot) with a
    /// random mode assignment; qubit = creation index.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<TernaryTree> {
        if n == 0 {
            return Err(Error::InvalidArgument("tree needs at least one mode".into()));
        }
        let mut modes: Vec<usize> = (0..n).collect();
        modes.shuffle(rng);
        let mut b = TreeBuilder::new();
        b.root(modes[0]);
        let mut open: Vec<(usize, Branch)> = Branch::ALL.iter().map(|&br| (0, br)).collect();
        for &m in &modes[1..] {
            let (parent, br) = open.swap_remove(rng.gen_range(0..open.len()));
            let node = b.child(parent, br, m);
            open.extend(Branch::ALL.iter().map(|&br| (node, br)));
            // keep slot order canonical so the draw only depends on the rng stream
            open.sort();
        }
        b.build()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn n_modes(&self) -> usize {
        self.nodes.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &Node {
        &self.nodes[i]
    }

    /// Node index holding fermionic mode `mode`.
    pub fn node_of_mode(&self, mode: usize) -> Option<usize> {
        self.nodes.iter().position(|n| n.mode == mode)
    }

    /// Relabels qubits: node on qubit `q` moves to qubit `perm[q]`.
    pub fn with_qubit_permutation(&self, perm: &[usize]) -> Result<TernaryTree> {
        if perm.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: perm.len(),
            });
        }
        check_permutation(perm)?;
        let mut t = self.clone();
        for n in &mut t.nodes {
            n.qubit = perm[n.qubit];
        }
        Ok(t)
    }

    /// Pauli string of the leg at slot `branch` of node `node`.
    pub fn leg_string(&self, id: LegId) -> PauliString {
        let n = self.len();
        let mut s = PauliString::identity(n);
        let mut cur = id.node;
        s.set(self.nodes[cur].qubit, id.branch.letter())
            .expect("qubit labels are validated");
        while let (Some(p), Some(b)) = (self.nodes[cur].parent, self.nodes[cur].branch) {
            s.set(self.nodes[p].qubit, b.letter())
                .expect("qubit labels are validated");
            cur = p;
        }
        s
    }

    /// All `2m + 1` legs, by node index then x, y, z.
    pub fn legs(&self) -> Vec<Leg> {
        let mut out = Vec::with_capacity(2 * self.len() + 1);
        for (i, node) in self.nodes.iter().enumerate() {
            for b in Branch::ALL {
                if node.child(b).is_none() {
                    let id = LegId { node: i, branch: b };
                    out.push(Leg {
                        id,
                        string: self.leg_string(id),
                    });
                }
            }
        }
        out
    }

    /// Follows z-children from `start` to the first node with an empty z-slot.
    fn z_terminal(&self, start: usize) -> usize {
        let mut s = start;
        while let Some(z) = self.nodes[s].child(Branch::Z) {
            s = z;
        }
        s
    }

    fn paired_leg(&self, node: usize, b: Branch) -> LegId {
        match self.nodes[node].child(b) {
            None => LegId { node, branch: b },
            Some(c) => LegId {
                node: self.z_terminal(c),
                branch: Branch::Z,
            },
        }
    }

    /// Serializes to the line format `node <q> mode <m> parent <q|-> branch <x|y|z|->`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in self.records() {
            let parent = r.parent.map_or("-".to_string(), |p| p.to_string());
            let branch = r.branch.map_or('-', Branch::as_char);
            out.push_str(&format!(
                "node {} mode {} parent {} branch {}\n",
                r.qubit, r.mode, parent, branch
            ));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<TernaryTree> {
        let mut records = vec![];
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: &str| Error::Parse(format!("tree line {}: {msg}: {line:?}", lineno + 1));
            let tok: Vec<&str> = line.split_whitespace().collect();
            if tok.len() != 8
                || tok[0] != "node"
                || tok[2] != "mode"
                || tok[4] != "parent"
                || tok[6] != "branch"
            {
                return Err(bad("expected `node <q> mode <m> parent <q|-> branch <x|y|z|->`"));
            }
            let num = |s: &str| s.parse::<usize>().map_err(|_| bad("bad integer"));
            let parent = if tok[5] == "-" { None } else { Some(num(tok[5])?) };
            let branch = if tok[7] == "-" {
                None
            } else {
                Some(Branch::parse(tok[7]).ok_or_else(|| bad("bad branch label"))?)
            };
            records.push(NodeRecord {
                qubit: num(tok[1])?,
                mode: num(tok[3])?,
                parent,
                branch,
            });
        }
        TernaryTree::from_records(&records)
    }
}

pub(crate) fn check_permutation(p: &[usize]) -> Result<()> {
    if p.is_empty() {
        return Err(Error::InvalidArgument("empty permutation".into()));
    }
    let mut seen = vec![false; p.len()];
    for &v in p {
        if v >= p.len() || seen[v] {
            return Err(Error::InvalidArgument(format!("{p:?} is not a permutation")));
        }
        seen[v] = true;
    }
    Ok(())
}

/// The two Majorana strings of one mode.
#[derive(Debug, Clone, PartialEq)]
pub struct ModePair {
    /// `γ_{2j}`, the self-adjoint part of `a_j`.
    pub even: PauliString,
    /// `γ_{2j−1}`, multiplied by `i` in `a_j`.
    pub odd: PauliString,
    /// Leg found through the x-slot of the mode's node.
    pub x_leg: LegId,
    /// Leg found through the y-slot of the mode's node.
    pub y_leg: LegId,
    /// Whether vacuum normalization swapped the x/y strings.
    pub swapped: bool,
}

impl ModePair {
    /// Strings in the order the pairing algorithm produced them: (x-derived, y-derived).
    pub fn raw(&self) -> (&PauliString, &PauliString) {
        if self.swapped {
            (&self.odd, &self.even)
        } else {
            (&self.even, &self.odd)
        }
    }
}

/// Vacuum-preserving assignment of Majorana strings to modes.
#[derive(Debug, Clone, PartialEq)]
pub struct MajoranaPairing {
    pairs: Vec<ModePair>,
    unpaired: PauliString,
    unpaired_leg: LegId,
    n_qubits: usize,
}

impl MajoranaPairing {
    pub fn n_modes(&self) -> usize {
        self.pairs.len()
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn pair(&self, mode: usize) -> &ModePair {
        &self.pairs[mode]
    }

    pub fn pairs(&self) -> &[ModePair] {
        &self.pairs
    }

    pub fn unpaired(&self) -> &PauliString {
        &self.unpaired
    }

    pub fn unpaired_leg(&self) -> LegId {
        self.unpaired_leg
    }

    /// `[γ_{2·0}, γ_{2·0−1}, γ_{2·1}, …]`, two per mode.
    pub fn gammas(&self) -> Vec<PauliString> {
        self.pairs
            .iter()
            .flat_map(|p| [p.even.clone(), p.odd.clone()])
            .collect()
    }

    /// Majorana table in pairing order: for each mode `j`, rows `S_{2j}` and
    /// `S_{2j+1}` are the x- and y-derived strings, and the last row is the
    /// unpaired string.
    pub fn table(&self) -> Vec<(String, PauliString)> {
        let mut rows = vec![];
        for (j, p) in self.pairs.iter().enumerate() {
            let (x, y) = p.raw();
            rows.push((format!("S_{}", 2 * j), x.clone()));
            rows.push((format!("S_{}", 2 * j + 1), y.clone()));
        }
        rows.push((format!("S_{}", 2 * self.pairs.len()), self.unpaired.clone()));
        rows
    }
}

/// `⟨0…0| i·a·b |0…0⟩`, defined when `ab` is diagonal.
fn vacuum_expectation_i_product(a: &PauliString, b: &PauliString) -> Option<f64> {
    let prod = a * b;
    if !prod.is_diagonal() {
        return None;
    }
    let v = Complex64::new(0.0, 1.0) * prod.phase().to_complex();
    Some(v.re)
}

/// Pairs the legs of `tree` into one Majorana pair per mode.
///
/// For node `v`, the x-string is the x-leg of `v` if its x-slot is empty,
/// otherwise the z-leg at the end of the z-path under the x-child; the
/// y-string is built the same way. The z-path leg from the root is left
/// unpaired. Within each pair the strings are ordered so that
/// `n_j = (1 + i γ_{2j} γ_{2j−1}) / 2` annihilates `|0…0⟩`.
pub fn pair_majoranas(tree: &TernaryTree) -> Result<MajoranaPairing> {
    let n = tree.n_modes();
    let mut slots: Vec<Option<ModePair>> = vec![None; n];
    for (i, node) in tree.nodes().iter().enumerate() {
        let x_leg = tree.paired_leg(i, Branch::X);
        let y_leg = tree.paired_leg(i, Branch::Y);
        let sx = tree.leg_string(x_leg);
        let sy = tree.leg_string(y_leg);
        // n_j|0⟩ = 0 requires ⟨0| i γ_even γ_odd |0⟩ = −1.
        let swapped = match vacuum_expectation_i_product(&sx, &sy) {
            Some(v) if v < -0.5 => false,
            Some(v) if v > 0.5 => true,
            _ => return Err(Error::VacuumNotPreserved(node.mode)),
        };
        let (even, odd) = if swapped { (sy, sx) } else { (sx, sy) };
        slots[node.mode] = Some(ModePair {
            even,
            odd,
            x_leg,
            y_leg,
            swapped,
        });
    }
    let end = tree.z_terminal(tree.root());
    let unpaired_leg = LegId {
        node: end,
        branch: Branch::Z,
    };
    Ok(MajoranaPairing {
        pairs: slots.into_iter().map(|p| p.expect("modes are a permutation")).collect(),
        unpaired: tree.leg_string(unpaired_leg),
        unpaired_leg,
        n_qubits: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str, n: usize) -> PauliString {
        PauliString::parse(s, n).unwrap()
    }

    #[test]
    fn jw_strings() {
        let t = TernaryTree::jordan_wigner(4).unwrap();
        let pr = pair_majoranas(&t).unwrap();
        assert_eq!(pr.pair(0).even, p("X0", 4));
        assert_eq!(pr.pair(0).odd, p("Y0", 4));
        assert_eq!(pr.pair(1).even, p("Z0X1", 4));
        assert_eq!(pr.pair(1).odd, p("Z0Y1", 4));
        assert_eq!(pr.unpaired(), &p("Z0Z1Z2Z3", 4));
        for k in 0..4 {
            let support = pr.pair(k).even.support();
            assert_eq!(*support.last().unwrap(), k);
            assert_eq!(pr.pair(k).even.letter(k), Pauli::X);
            assert_eq!(pr.pair(k).odd.letter(k), Pauli::Y);
        }
    }

    #[test]
    fn single_node() {
        let t = TernaryTree::jordan_wigner(1).unwrap();
        let legs: Vec<_> = t.legs().into_iter().map(|l| l.string).collect();
        assert_eq!(legs, vec![p("X0", 1), p("Y0", 1), p("Z0", 1)]);
        let pr = pair_majoranas(&t).unwrap();
        assert_eq!((&pr.pair(0).even, &pr.pair(0).odd), (&p("X0", 1), &p("Y0", 1)));
        assert_eq!(pr.unpaired(), &p("Z0", 1));
        assert_eq!(TernaryTree::parity_x(&[0]).unwrap(), t);
    }

    #[test]
    fn jw_two_modes_unpaired() {
        let pr = pair_majoranas(&TernaryTree::jordan_wigner(2).unwrap()).unwrap();
        assert_eq!(pr.unpaired(), &p("Z0Z1", 2));
    }

    #[test]
    fn jw_deep_x_leg() {
        let t = TernaryTree::jordan_wigner(3).unwrap();
        let leg = t.leg_string(LegId { node: 2, branch: Branch::X });
        assert_eq!(leg, p("Z0Z1X2", 3));
    }

    #[test]
    fn parity_two_modes_pairing() {
        // root (mode 0) -x-> node 1 (mode 1)
        let t = TernaryTree::parity_x(&[0, 1]).unwrap();
        let pr = pair_majoranas(&t).unwrap();
        let m0 = pr.pair(0);
        assert_eq!(m0.y_leg, LegId { node: 0, branch: Branch::Y });
        assert_eq!(m0.x_leg, LegId { node: 1, branch: Branch::Z });
        let (x, y) = m0.raw();
        assert_eq!(x, &p("X0Z1", 2));
        assert_eq!(y, &p("Y0", 2));
        assert_eq!(pr.unpaired(), &p("Z0", 2));
        let m1 = pr.pair(1);
        assert_eq!(m1.raw(), (&p("X0X1", 2), &p("X0Y1", 2)));
    }

    #[test]
    fn not_a_permutation() {
        assert!(TernaryTree::parity_x(&[0, 0, 1]).is_err());
        assert!(TernaryTree::parity_x(&[1, 2]).is_err());
        assert!(TernaryTree::jordan_wigner(0).is_err());
    }

    #[test]
    fn validation_reports_violations() {
        assert!(validate_records(&TernaryTree::jordan_wigner(5).unwrap().records()).is_empty());
        let dup = vec![
            NodeRecord { qubit: 0, mode: 0, parent: None, branch: None },
            NodeRecord { qubit: 0, mode: 1, parent: Some(0), branch: Some(Branch::X) },
        ];
        assert!(validate_records(&dup).contains(&TreeViolation::DuplicateQubit(0)));
        let cyc = vec![
            NodeRecord { qubit: 0, mode: 0, parent: None, branch: None },
            NodeRecord { qubit: 1, mode: 1, parent: Some(2), branch: Some(Branch::X) },
            NodeRecord { qubit: 2, mode: 2, parent: Some(1), branch: Some(Branch::Y) },
        ];
        let v = validate_records(&cyc);
        assert!(v.iter().any(|e| matches!(e, TreeViolation::Cycle(_))), "{v:?}");
        let slot = vec![
            NodeRecord { qubit: 0, mode: 0, parent: None, branch: None },
            NodeRecord { qubit: 1, mode: 1, parent: Some(0), branch: Some(Branch::X) },
            NodeRecord { qubit: 2, mode: 2, parent: Some(0), branch: Some(Branch::X) },
        ];
        assert!(validate_records(&slot)
            .contains(&TreeViolation::SlotTaken { parent: 0, branch: Branch::X }));
        let bad_branch = vec![
            NodeRecord { qubit: 0, mode: 0, parent: None, branch: Some(Branch::Z) },
        ];
        assert!(validate_records(&bad_branch).contains(&TreeViolation::BadBranch { qubit: 0 }));
        let roots = vec![
            NodeRecord { qubit: 0, mode: 0, parent: None, branch: None },
            NodeRecord { qubit: 1, mode: 1, parent: None, branch: None },
        ];
        assert!(matches!(validate_records(&roots)[0], TreeViolation::MultipleRoots(_)));
    }

    #[test]
    fn text_parse_errors() {
        assert!(matches!(TernaryTree::from_text("node 0 mode 0"), Err(Error::Parse(_))));
        assert!(matches!(
            TernaryTree::from_text("node 0 mode 0 parent - branch q"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            TernaryTree::from_text("node 0 mode 0 parent - branch -\nnode 0 mode 1 parent 0 branch x"),
            Err(Error::InvalidTree(_))
        ));
    }

    #[test]
    fn random_trees_have_valid_legs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=6 {
            let t = TernaryTree::random(n, &mut rng).unwrap();
            assert_eq!(t.legs().len(), 2 * n + 1);
            pair_majoranas(&t).unwrap();
        }
    }
}
