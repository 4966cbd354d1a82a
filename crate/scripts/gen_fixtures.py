"""Generate the FCIDUMP fixtures shipped in data/fcidump.

Runs RHF at fixed geometries, builds the active space in the canonical
orbital basis, writes the FCIDUMP and a sidecar with orbital energies
and reference HF/FCI energies. Requires pyscf.
"""
import sys
from pathlib import Path

import numpy as np
from pyscf import ao2mo, fci, gto, mcscf, scf, tools

OUT = Path(__file__).resolve().parent.parent / "data" / "fcidump"
HARTREE_TO_KCAL = 627.509474


def h4(d):
    a = 0.5601
    return [
        ("H", (a, a * d, 0.0)),
        ("H", (-a, a * d, 0.0)),
        ("H", (-a, -a * d, 0.0)),
        ("H", (a, -a * d, 0.0)),
    ]


BENZENE = [
    ("C", (0.0000, 1.4027, 0.0000)),
    ("C", (-1.2148, 0.7014, 0.0000)),
    ("C", (-1.2148, -0.7014, 0.0000)),
    ("C", (0.0000, -1.4027, 0.0000)),
    ("C", (1.2148, -0.7014, 0.0000)),
    ("C", (1.2148, 0.7014, 0.0000)),
    ("H", (0.0000, 2.4901, 0.0000)),
    ("H", (-2.1567, 1.2451, 0.0000)),
    ("H", (-2.1567, -1.2451, 0.0000)),
    ("H", (0.0000, -2.4901, 0.0000)),
    ("H", (2.1567, -1.2451, 0.0000)),
    ("H", (2.1567, 1.2451, 0.0000)),
]

SYSTEMS = {
    "h2_631g": dict(atom=[("H", (0, 0, -0.3650)), ("H", (0, 0, 0.3650))], basis="6-31g", frozen=0),
    "lih_sto3g": dict(atom=[("Li", (0, 0, 0)), ("H", (0, 0, 1.5472))], basis="sto-3g", frozen=1),
    "h2h2_sto3g": dict(
        atom=[
            ("H", (0, 0.3674, -2.1264)),
            ("H", (0, -0.3674, -2.1264)),
            ("H", (0, 0, 1.7590)),
            ("H", (0, 0, 2.4939)),
        ],
        basis="sto-3g",
        frozen=0,
    ),
    "h4_d1_sto3g": dict(atom=h4(1.0), basis="sto-3g", frozen=0),
    "h4_d1.5_sto3g": dict(atom=h4(1.5), basis="sto-3g", frozen=0),
    "h4_d2_sto3g": dict(atom=h4(2.0), basis="sto-3g", frozen=0),
    "n2_sto3g": dict(atom=[("N", (0, 0, -0.5669)), ("N", (0, 0, 0.5669))], basis="sto-3g", frozen=2),
    "benzene_pi_sto3g": dict(atom=BENZENE, basis="sto-3g", frozen="pi"),
}


def pi_orbitals(mol, mf):
    """Indices of the six canonical MOs dominated by out-of-plane p_z character."""
    labels = mol.ao_labels()
    pz = [i for i, l in enumerate(labels) if "C 2pz" in l]
    weight = (mf.mo_coeff[pz, :] ** 2).sum(axis=0)
    return sorted(np.argsort(-weight)[:6].tolist())


def run(name, spec):
    mol = gto.M(atom=spec["atom"], basis=spec["basis"], unit="Angstrom", symmetry=True, verbose=0)
    mf = scf.RHF(mol)
    mf.conv_tol = 1e-12
    mf.kernel()
    nmo = mf.mo_coeff.shape[1]
    if spec["frozen"] == "pi":
        act = pi_orbitals(mol, mf)
        ncore_total = mol.nelectron // 2
        nelec_act = 2 * sum(1 for i in act if i < ncore_total)
        cas = mcscf.CASCI(mf, len(act), nelec_act)
        mo = cas.sort_mo(act, base=0)
    else:
        nfrozen = spec["frozen"]
        act = list(range(nfrozen, nmo))
        nelec_act = mol.nelectron - 2 * nfrozen
        cas = mcscf.CASCI(mf, len(act), nelec_act)
        mo = mf.mo_coeff
    cas.fcisolver.conv_tol = 1e-12
    h1, ecore = cas.get_h1eff(mo)
    h2 = cas.get_h2eff(mo)
    ncas = cas.ncas
    h2 = ao2mo.restore(1, h2, ncas)
    e_fci, _ = fci.direct_spin1.kernel(h1, h2, ncas, nelec_act, ecore=ecore, conv_tol=1e-12)
    nocc = nelec_act // 2
    e_hf = ecore + 2 * np.trace(h1[:nocc, :nocc])
    for i in range(nocc):
        for j in range(nocc):
            e_hf += 2 * h2[i, i, j, j] - h2[i, j, j, i]
    tools.fcidump.from_integrals(
        str(OUT / f"{name}.fcidump"), h1, h2, ncas, nelec_act, nuc=ecore, ms=0, tol=1e-15
    )
    mo_e = mf.mo_energy[act]
    with open(OUT / f"{name}.info", "w") as f:
        f.write(f"basis = {spec['basis']}\n")
        f.write(f"active_orbitals = {' '.join(str(i) for i in act)}\n")
        f.write(f"orbital_energies = {' '.join(f'{e:.10f}' for e in mo_e)}\n")
        f.write(f"e_hf = {e_hf:.12f}\n")
        f.write(f"e_fci = {e_fci:.12f}\n")
        f.write(f"e_corr_kcal = {(e_hf - e_fci) * HARTREE_TO_KCAL:.6f}\n")
    print(f"{name}: nmo={ncas} nelec={nelec_act} HF={e_hf:.10f} FCI={e_fci:.10f} "
          f"corr={(e_hf - e_fci) * HARTREE_TO_KCAL:.4f} kcal/mol")


if __name__ == "__main__":
    names = sys.argv[1:] or list(SYSTEMS)
    for n in names:
        run(n, SYSTEMS[n])
