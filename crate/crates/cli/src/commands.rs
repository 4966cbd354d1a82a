use std::fmt::Write as _;
use std::path::Path;

use tailormap::ansatz::optim::{NelderMead, Rotosolve};
use tailormap::ansatz::{upccgsd_optimize, vqe, CircuitTemplate, Entangler, ExcitationKind, Optimizer, UpccgsdOptions, VqeOptions};
use tailormap::chem::{hartree_to_kcalmol, parse_fcidump, to_spin_orbitals, SpatialIntegrals};
use tailormap::encode::{map_hamiltonian, particle_sector};
use tailormap::solver::{
    block_entropies, block_entropies_csv, ground_state, ground_state_in_sector, mutual_information_matrix,
    EntropyBase, LanczosOptions, Sector, Spectrum,
};
use tailormap::tailor::{
    build_tailored_tree, format_permutation, mi_cost, optimize_permutation, select_excitations, BranchLayout,
    GaParams, PermutationMethod, Relabel, SelectionProtocol,
};
use tailormap::ttree::{pair_majoranas, TernaryTree};
use tailormap::{MajoranaPairing, PauliSum};

use crate::args::{SolveArgs, SystemArgs, TransformArgs, TreeKind, VqeArgs};
use crate::error::{read, write, CliError, CliResult};

fn load_spatial(path: &Path) -> CliResult<SpatialIntegrals> {
    Ok(parse_fcidump(&read(path)?)?)
}

fn load_tree(path: &Path) -> CliResult<TernaryTree> {
    Ok(TernaryTree::from_text(&read(path)?)?)
}

fn majorana_table(pairing: &MajoranaPairing) -> String {
    let rows = pairing.table();
    let width = rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
    let mut s = String::new();
    for (label, string) in rows {
        writeln!(s, "{label:<width$}  {string}").unwrap();
    }
    s
}

fn emit_tree(tree: &TernaryTree, out: &Path) -> CliResult<()> {
    let pairing = pair_majoranas(tree)?;
    write(out, &tree.to_text())?;
    println!("wrote {} ({} modes)", out.display(), tree.n_modes());
    print!("{}", majorana_table(&pairing));
    Ok(())
}

pub fn tree(kind: TreeKind, seed: u64) -> CliResult<()> {
    match kind {
        TreeKind::Jw { modes, out } => emit_tree(&TernaryTree::jordan_wigner(modes)?, &out),
        TreeKind::Parity { order, out } => emit_tree(&TernaryTree::parity_x(&order)?, &out),
        TreeKind::Tailored {
            fcidump,
            select,
            singles,
            layout,
            report,
            out,
        } => {
            let ints = to_spin_orbitals(&load_spatial(&fcidump)?);
            let layout = match layout.as_str() {
                "separate" => BranchLayout::Separate,
                "merged" => BranchLayout::Merged,
                other => return Err(CliError::Invalid(format!("unknown layout '{other}'"))),
            };
            let protocol = SelectionProtocol::parse(&select)?.with_singles(singles);
            let opts = UpccgsdOptions {
                seed,
                ..UpccgsdOptions::default()
            };
            let rep = upccgsd_optimize(&ints, &opts)?;
            println!(
                "UpCCGSD energy {:.10} Ha ({} iterations, converged: {})",
                rep.energy, rep.iterations, rep.converged
            );
            if let Some(prefix) = report {
                let base = prefix.to_string_lossy();
                write(Path::new(&format!("{base}_singles.csv")), &rep.to_csv(ExcitationKind::Single))?;
                write(Path::new(&format!("{base}_doubles.csv")), &rep.to_csv(ExcitationKind::Double))?;
            }
            let sel = select_excitations(&rep, &protocol)?;
            for s in &sel {
                println!("selected {s}");
            }
            emit_tree(&build_tailored_tree(ints.n_spin_orbitals, &sel, layout)?, &out)
        }
        TreeKind::Show { path } => {
            print!("{}", majorana_table(&pair_majoranas(&load_tree(&path)?)?));
            Ok(())
        }
    }
}

pub fn transform(args: TransformArgs) -> CliResult<()> {
    let ints = to_spin_orbitals(&load_spatial(&args.fcidump)?);
    let tree = load_tree(&args.tree)?;
    if tree.n_modes() != ints.n_spin_orbitals {
        return Err(CliError::Invalid(format!(
            "tree has {} modes but the integrals have {} spin orbitals",
            tree.n_modes(),
            ints.n_spin_orbitals
        )));
    }
    let h = map_hamiltonian(&ints, &pair_majoranas(&tree)?)?;
    write(&args.out, &h.to_json())?;
    println!("wrote {}", args.out.display());
    println!("qubits: {}", h.n_qubits());
    println!("terms: {}", h.len());
    println!("max weight: {}", h.max_weight());
    Ok(())
}

/// Hamiltonian plus whatever reference data the optional inputs provide.
struct System {
    h: PauliSum,
    sector: Option<Sector>,
    hf_energy: Option<f64>,
}

fn load_system(args: &SystemArgs) -> CliResult<System> {
    let h = PauliSum::from_json(&read(&args.hamiltonian)?)?;
    let spatial = args.fcidump.as_deref().map(load_spatial).transpose()?;
    let electrons = args.electrons.or(spatial.as_ref().map(|s| s.nelec));
    let sz = args.sz.or(spatial.as_ref().map(|s| s.ms2 as f64 / 2.0));
    let sector = match (&args.tree, electrons) {
        (Some(t), Some(n)) => {
            let tree = load_tree(t)?;
            if tree.n_modes() != h.n_qubits() {
                return Err(CliError::Invalid(format!(
                    "tree has {} modes but the Hamiltonian acts on {} qubits",
                    tree.n_modes(),
                    h.n_qubits()
                )));
            }
            Some(particle_sector(&pair_majoranas(&tree)?, n, sz)?)
        }
        (Some(_), None) => {
            return Err(CliError::Invalid(
                "--tree needs --electrons or --fcidump to pick a particle sector".into(),
            ))
        }
        _ => None,
    };
    let hf_energy = spatial.map(|s| to_spin_orbitals(&s).hf_energy());
    Ok(System { h, sector, hf_energy })
}

fn exact_ground(sys: &System) -> CliResult<Spectrum> {
    let opts = LanczosOptions::default();
    Ok(match &sys.sector {
        Some(s) => ground_state_in_sector(&sys.h, s, 1, &opts)?,
        None => ground_state(&sys.h, 1, &opts)?,
    })
}

fn permutation_method(population: usize, generations: usize) -> PermutationMethod {
    PermutationMethod::Auto {
        exhaustive_max: 8,
        ga: GaParams {
            population,
            generations,
            ..GaParams::default()
        },
    }
}

fn print_energy(label: &str, e: f64) {
    println!("{label}: {e:.10} Ha ({:.4} kcal/mol)", hartree_to_kcalmol(e));
}

pub fn solve(args: SolveArgs, seed: u64) -> CliResult<()> {
    let base = EntropyBase::parse(&args.log_base)?;
    let sys = load_system(&args.system)?;
    let spec = exact_ground(&sys)?;
    let e0 = spec.energies[0];
    let psi = &spec.states[0];
    print_energy("ground energy", e0);
    if let Some(hf) = sys.hf_energy {
        print_energy("HF energy", hf);
        print_energy("correlation energy", hf - e0);
    }
    let mi = mutual_information_matrix(psi, base);
    let blocks = block_entropies(psi, base);
    let dir = &args.out_dir;
    write(&dir.join("mi.csv"), &mi.to_csv())?;
    write(&dir.join("blocks.csv"), &block_entropies_csv(&blocks))?;
    println!("MI cost ({}): {:.6}", base.name(), mi_cost(&mi));
    println!("max block entropy: {:.6}", blocks.iter().copied().fold(0.0, f64::max));
    if args.reorder {
        let method = permutation_method(args.ga_population, args.ga_generations);
        let (perm, cost) = optimize_permutation(&mi, &method, seed);
        let moved = psi.relabel(&perm)?;
        let reordered_blocks = block_entropies(&moved, base);
        write(&dir.join("mi_reordered.csv"), &mi.relabel(&perm)?.to_csv())?;
        write(&dir.join("blocks_reordered.csv"), &block_entropies_csv(&reordered_blocks))?;
        write(&dir.join("permutation.txt"), &format!("{}\n", format_permutation(&perm)))?;
        println!("permutation: {}", format_permutation(&perm));
        println!("reordered MI cost ({}): {cost:.6}", base.name());
        println!(
            "reordered max block entropy: {:.6}",
            reordered_blocks.iter().copied().fold(0.0, f64::max)
        );
    }
    Ok(())
}

/// Parses `4`, `1,2,4`, `0-6` or mixtures such as `0-2,5`.
pub fn parse_layers(spec: &str) -> CliResult<Vec<usize>> {
    let bad = || CliError::Invalid(format!("bad layer list '{spec}'"));
    let mut out = vec![];
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
                if a > b {
                    return Err(bad());
                }
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| bad())?),
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

pub fn vqe_curve(args: VqeArgs, seed: u64) -> CliResult<()> {
    let layers = parse_layers(&args.layers)?;
    let entangler = Entangler::parse(&args.entangler)?;
    if !matches!(args.optimizer.as_str(), "nelder-mead" | "rotosolve") {
        return Err(CliError::Invalid(format!("unknown optimizer '{}'", args.optimizer)));
    }
    if args.restarts == 0 {
        return Err(CliError::Invalid("--restarts must be at least 1".into()));
    }
    let sys = load_system(&args.system)?;
    let spec = exact_ground(&sys)?;
    let exact = spec.energies[0];
    print_energy("exact energy", exact);
    let h = if args.reorder {
        let mi = mutual_information_matrix(&spec.states[0], EntropyBase::Nat);
        let (perm, cost) = optimize_permutation(&mi, &PermutationMethod::default(), seed);
        println!("permutation: {} (MI cost {cost:.6})", format_permutation(&perm));
        sys.h.relabel(&perm)?
    } else {
        sys.h.clone()
    };
    let mut csv = String::from("layers,energy_ha,error_kcal,best_restart\n");
    for &l in &layers {
        let template = CircuitTemplate {
            n_qubits: h.n_qubits(),
            layers: l,
            entangler,
        };
        let budget = args.iterations.unwrap_or_else(|| NelderMead::scaled_budget(template.n_params()));
        let optimizer = match args.optimizer.as_str() {
            "rotosolve" => Optimizer::Rotosolve(Rotosolve {
                max_sweeps: budget,
                ..Rotosolve::default()
            }),
            _ => Optimizer::NelderMead(NelderMead {
                max_iter: budget,
                ..NelderMead::default()
            }),
        };
        let opts = VqeOptions {
            restarts: args.restarts,
            seed,
            optimizer,
        };
        let r = vqe(&h, &template, &opts)?;
        let err = hartree_to_kcalmol(r.energy - exact);
        println!("layers {l}: {:.10} Ha, error {err:.4} kcal/mol (restart {})", r.energy, r.best_restart);
        writeln!(csv, "{l},{:.12},{err:.6},{}", r.energy, r.best_restart).unwrap();
        if let Some(dir) = &args.trace_dir {
            write(&dir.join(format!("trace_layers{l}.csv")), &r.trace_csv())?;
        }
    }
    write(&args.out, &csv)?;
    println!("wrote {}", args.out.display());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layer_lists() {
        assert_eq!(parse_layers("4").unwrap(), vec![4]);
        assert_eq!(parse_layers("0-3").unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(parse_layers("1,3-4, 8").unwrap(), vec![1, 3, 4, 8]);
        assert!(parse_layers("5-2").is_err());
        assert!(parse_layers("x").is_err());
        assert!(parse_layers("").is_err());
    }
}
