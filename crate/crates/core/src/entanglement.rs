//! Two-qubit concurrence.
//!
//! For a pure state `a|00> + b|01> + c|10> + d|11>` the concurrence is
//! `C = 2|ad - bc|`. For mixed states the Wootters construction is used: with
//! `F = sigma_y x sigma_y` (a real matrix) and `S = sqrt(rho)`, the Hermitian
//! positive semidefinite matrix `M = S F rho* F S` has the same spectrum as
//! `rho rho~`, and
//!
//! ```text
//! C = max(0, sqrt(mu1) - sqrt(mu2) - sqrt(mu3) - sqrt(mu4))
//! ```
//!
//! with the eigenvalues `mu_i` of `M` in decreasing order. Routing through
//! `M` keeps everything inside the Hermitian eigensolver.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, SQRT_ZERO_FLOOR};
use crate::model::DensityMatrix;

fn spin_flip_kernel() -> ComplexMatrix {
    let mut f = ComplexMatrix::zeros(4, 4);
    f.set(0, 3, Complex64::new(-1.0, 0.0));
    f.set(1, 2, Complex64::new(1.0, 0.0));
    f.set(2, 1, Complex64::new(1.0, 0.0));
    f.set(3, 0, Complex64::new(-1.0, 0.0));
    f
}

/// Concurrence of a normalized two-qubit pure state.
pub fn concurrence_pure(psi: &ComplexMatrix) -> Result<f64> {
    if psi.rows() != 4 || psi.cols() != 1 {
        return Err(Error::WrongShape {
            op: "concurrence_pure",
            expected_rows: 4,
            expected_cols: 1,
            rows: psi.rows(),
            cols: psi.cols(),
        });
    }
    let norm = psi.frobenius_norm();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::NotNormalized(norm));
    }
    let det = psi.get(0, 0) * psi.get(3, 0) - psi.get(1, 0) * psi.get(2, 0);
    Ok((2.0 * det.norm()).clamp(0.0, 1.0))
}

/// Concurrence of a two-qubit density matrix.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::WrongShape {
            op: "concurrence",
            expected_rows: 4,
            expected_cols: 4,
            rows: rho.dim(),
            cols: rho.dim(),
        });
    }
    let f = spin_flip_kernel();
    let s = rho.matrix().sqrt_psd()?;
    let flipped = f.matmul(&rho.matrix().conj())?.matmul(&f)?;
    let m = s.matmul(&flipped)?.matmul(&s)?;
    let sym = m.add(&m.adjoint())?.scale(Complex64::new(0.5, 0.0));
    let eig = sym.eigh()?;
    // Eigenvalues arrive in decreasing order. Noise-level values are true
    // zeros of M and must be flushed before the root, or the square root
    // would amplify them to ~1e-8 and bias the concurrence.
    let mut roots = eig
        .eigenvalues
        .iter()
        .map(|&mu| if mu <= SQRT_ZERO_FLOOR { 0.0 } else { mu.sqrt() });
    let largest = roots.next().expect("4x4 spectrum");
    let rest: f64 = roots.sum();
    Ok((largest - rest).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{
        bell_phi_minus, bell_phi_plus, bell_psi_minus, bell_psi_plus, bloch_product_state,
        evolve_pure_closed, pure_product_state, BlochAxis, BlochProductParams, PureProductParams,
    };
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    #[test]
    fn bell_states_are_maximally_entangled() {
        for state in [
            bell_psi_plus(),
            bell_psi_minus(),
            bell_phi_plus(),
            bell_phi_minus(),
        ] {
            assert!((concurrence_pure(&state).unwrap() - 1.0).abs() < 1e-12);
            let rho = DensityMatrix::from_pure(&state).unwrap();
            assert!((concurrence(&rho).unwrap() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn product_states_are_unentangled() {
        let p = PureProductParams::new(0.8, 2.5).unwrap();
        let psi = pure_product_state(&p);
        assert!(concurrence_pure(&psi).unwrap() < 1e-12);
        assert!(concurrence(&DensityMatrix::from_pure(&psi).unwrap()).unwrap() < 1e-8);

        let mixed = BlochProductParams::new(BlochAxis::X, 0.4, -0.7).unwrap();
        let rho = bloch_product_state(&mixed).unwrap();
        assert!(concurrence(&rho).unwrap() < 1e-8);
    }

    #[test]
    fn evolved_01_reaches_a_bell_state_at_quarter_period() {
        let p = PureProductParams::new(0.0, PI).unwrap();
        let psi = evolve_pure_closed(&p, FRAC_PI_4);
        assert!((concurrence_pure(&psi).unwrap() - 1.0).abs() < 1e-12);
        let rho = DensityMatrix::from_pure(&psi).unwrap();
        assert!((concurrence(&rho).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn evolved_01_concurrence_is_abs_sin_2t() {
        let p = PureProductParams::new(0.0, PI).unwrap();
        for t in [0.0, 0.3, 1.1, 2.0, 3.0] {
            let psi = evolve_pure_closed(&p, t);
            let c = concurrence_pure(&psi).unwrap();
            assert!((c - (2.0 * t).sin().abs()).abs() < 1e-12);
        }
    }

    #[test]
    fn evolved_zero_plus_at_quarter_period() {
        let p = PureProductParams::new(0.0, FRAC_PI_2).unwrap();
        let psi = evolve_pure_closed(&p, FRAC_PI_4);
        assert!((concurrence_pure(&psi).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn werner_state_closed_form() {
        let p = 0.8;
        let singlet = DensityMatrix::from_pure(&bell_psi_minus()).unwrap();
        let mixed = singlet
            .matrix()
            .scale(Complex64::new(p, 0.0))
            .add(&ComplexMatrix::identity(4).scale(Complex64::new((1.0 - p) / 4.0, 0.0)))
            .unwrap();
        let rho = DensityMatrix::new(mixed).unwrap();
        // Concurrence of the singlet-Werner family: max(0, (3p - 1) / 2).
        assert!((concurrence(&rho).unwrap() - 0.7).abs() < 1e-9);

        let barely = DensityMatrix::new(
            singlet
                .matrix()
                .scale(Complex64::new(1.0 / 3.0, 0.0))
                .add(&ComplexMatrix::identity(4).scale(Complex64::new(1.0 / 6.0, 0.0)))
                .unwrap(),
        )
        .unwrap();
        assert!(concurrence(&barely).unwrap() < 1e-8);
    }

    #[test]
    fn concurrence_is_invariant_under_local_unitaries() {
        let p = PureProductParams::new(0.0, PI).unwrap();
        let psi = evolve_pure_closed(&p, 0.37);
        let reference = concurrence_pure(&psi).unwrap();

        // Local rotation exp(-i phi sigma_y / 2) on each qubit.
        let rot = |phi: f64| {
            let (s, c) = (phi / 2.0).sin_cos();
            ComplexMatrix::new(
                2,
                2,
                vec![
                    Complex64::new(c, 0.0),
                    Complex64::new(-s, 0.0),
                    Complex64::new(s, 0.0),
                    Complex64::new(c, 0.0),
                ],
            )
            .unwrap()
        };
        let local = rot(0.9).kron(&rot(-1.7));
        let moved = local.matmul(&psi).unwrap();
        assert!((concurrence_pure(&moved).unwrap() - reference).abs() < 1e-12);
        let rho = DensityMatrix::from_pure(&moved).unwrap();
        assert!((concurrence(&rho).unwrap() - reference).abs() < 1e-8);
    }

    #[test]
    fn maximally_mixed_state_is_separable() {
        let rho =
            DensityMatrix::new(ComplexMatrix::identity(4).scale(Complex64::new(0.25, 0.0)))
                .unwrap();
        assert!(concurrence(&rho).unwrap() < 1e-10);
    }
}
