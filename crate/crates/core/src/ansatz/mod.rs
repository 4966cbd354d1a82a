//! Reference states, the UpCCGSD excitation analysis, RY hardware-efficient
//! circuits and the VQE loop.

pub mod hea;
pub mod optim;
pub mod upccgsd;
pub mod vqe;

pub use hea::{build_ry_hea, CircuitTemplate, Entangler, Gate};
pub use upccgsd::{upccgsd_optimize, ExcitationKind, ExcitationReport, Upccgsd, UpccgsdOptions};
pub use vqe::{vqe, Optimizer, VqeOptions, VqeResult};

use crate::encode::{encode_occupation, OccupationVector};
use crate::error::{Error, Result};
use crate::solver::Statevector;
use crate::ttree::MajoranaPairing;

/// Determinant with spin orbitals `0..n_electrons` occupied.
pub fn hf_reference(n_so: usize, n_electrons: usize, pairing: &MajoranaPairing) -> Result<Statevector> {
    if pairing.n_modes() != n_so {
        return Err(Error::DimensionMismatch {
            expected: pairing.n_modes(),
            found: n_so,
        });
    }
    encode_occupation(pairing, &OccupationVector::lowest(n_so, n_electrons)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ttree::{pair_majoranas, TernaryTree};

    #[test]
    fn references() {
        let jw = pair_majoranas(&TernaryTree::jordan_wigner(12).unwrap()).unwrap();
        let psi = hf_reference(12, 6, &jw).unwrap();
        assert_eq!(psi.amplitude(0b111111000000).re, 1.0);
        let psi = hf_reference(12, 0, &jw).unwrap();
        assert_eq!(psi.amplitude(0).re, 1.0);
        assert!(hf_reference(12, 13, &jw).is_err());
        assert!(hf_reference(10, 2, &jw).is_err());
    }
}
