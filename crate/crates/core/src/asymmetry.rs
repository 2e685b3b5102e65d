//! Wigner-Yanase skew information as an asymmetry measure.
//!
//! The raw measure for a state `rho` and observable `H` is
//!
//! ```text
//! A(rho, H) = tr(rho H^2) - tr(sqrt(rho) H sqrt(rho) H)
//! ```
//!
//! which reduces to the variance of `H` on pure states and vanishes exactly
//! when `rho` commutes with `H`. The normalized variant rescales by
//! `4 / span^2`, where `span` is the spectral width of `H`, so that the
//! measure reaches 1 on pure states whose `H`-distribution concentrates on
//! the two extreme eigenvalues. For the canonical dipolar Hamiltonian
//! (span 3) this is a factor 4/9.
//!
//! Three flavors live here:
//!
//! * global asymmetry of the full two-qubit state,
//! * local asymmetry of `rho_a x 1/2` (or `1/2 x rho_b`), which tracks how
//!   much asymmetry survives once the inter-qubit correlations are discarded,
//! * asymmetry relative to the evolution operator itself,
//!   `A_U = 1 - Re tr(sqrt(rho) U sqrt(rho) U^dagger)`.
//!
//! Closed-form expressions for the product-state families are provided next
//! to the generic matrix-path implementations; the test suite holds them
//! against each other across parameter grids.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, Subsystem};
use crate::model::{
    bell_coefficients, bloch_product_state, evolve_density, BlochAxis, BlochProductParams,
    DensityMatrix, MdiHamiltonian, PureProductParams,
};

/// Tiny negative values produced by round-off are clamped to zero; anything
/// below this is treated as a real numerical failure.
const NEGATIVE_TOL: f64 = 1e-12;

/// A raw skew-information value together with its normalized counterpart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymmetryValue {
    pub raw: f64,
    pub normalized: f64,
}

fn clamp_nonnegative(value: f64, context: &'static str) -> Result<f64> {
    if value < -NEGATIVE_TOL {
        return Err(Error::Numeric { context, value });
    }
    Ok(value.max(0.0))
}

fn with_normalization(raw: f64, span: f64, context: &'static str) -> Result<AsymmetryValue> {
    let raw = clamp_nonnegative(raw, context)?;
    if !(span > 0.0) {
        return Err(Error::Numeric {
            context: "normalization by spectral span",
            value: span,
        });
    }
    Ok(AsymmetryValue {
        raw,
        normalized: raw * 4.0 / (span * span),
    })
}

fn real_trace(m: &ComplexMatrix, context: &'static str) -> Result<f64> {
    let tr = m.trace();
    if tr.im.abs() > 1e-10 {
        return Err(Error::Numeric {
            context,
            value: tr.im,
        });
    }
    Ok(tr.re)
}

/// Skew information of a density matrix with respect to the Hamiltonian.
pub fn wy_asymmetry(rho: &DensityMatrix, h: &MdiHamiltonian) -> Result<AsymmetryValue> {
    if rho.dim() != h.matrix().rows() {
        return Err(Error::DimensionMismatch {
            op: "wy_asymmetry",
            lhs_rows: rho.dim(),
            lhs_cols: rho.dim(),
            rhs_rows: h.matrix().rows(),
            rhs_cols: h.matrix().cols(),
        });
    }
    let hm = h.matrix();
    let h2 = hm.matmul(hm)?;
    let first = real_trace(&rho.matrix().matmul(&h2)?, "tr(rho H^2)")?;
    let root = rho.matrix().sqrt_psd()?;
    let sandwich = root.matmul(hm)?.matmul(&root)?.matmul(hm)?;
    let second = real_trace(&sandwich, "tr(sqrt(rho) H sqrt(rho) H)")?;
    with_normalization(first - second, h.span(), "skew information")
}

/// Skew information of a pure state: the variance of the Hamiltonian.
pub fn wy_asymmetry_pure(psi: &ComplexMatrix, h: &MdiHamiltonian) -> Result<AsymmetryValue> {
    let n = h.matrix().rows();
    if psi.rows() != n || psi.cols() != 1 {
        return Err(Error::WrongShape {
            op: "wy_asymmetry_pure",
            expected_rows: n,
            expected_cols: 1,
            rows: psi.rows(),
            cols: psi.cols(),
        });
    }
    let norm = psi.frobenius_norm();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::NotNormalized(norm));
    }
    let h_psi = h.matrix().matmul(psi)?;
    let mean = psi.inner(&h_psi)?;
    if mean.im.abs() > 1e-10 {
        return Err(Error::Numeric {
            context: "<H> on a pure state",
            value: mean.im,
        });
    }
    let second_moment = h_psi.inner(&h_psi)?.re;
    with_normalization(
        second_moment - mean.re * mean.re,
        h.span(),
        "pure-state variance",
    )
}

/// Normalized asymmetry of a pure product state under the canonical
/// Hamiltonian, in closed form:
///
/// ```text
/// A = (4/9) [ 2 s^2 + P - (s^2 - P)^2 ]
/// ```
///
/// with `s = alpha_a beta_b + beta_a alpha_b` and
/// `P = alpha_a^2 alpha_b^2 + beta_a^2 beta_b^2`. The value is constant along
/// the evolution, so no time argument appears.
pub fn closed_form_pure(p: &PureProductParams) -> f64 {
    let (aa, ba, ab, bb) = p.amplitudes();
    let s = aa * bb + ba * ab;
    let big_p = aa * aa * ab * ab + ba * ba * bb * bb;
    let s2 = s * s;
    (4.0 / 9.0) * (2.0 * s2 + big_p - (s2 - big_p) * (s2 - big_p))
}

fn check_bloch_lengths(r_a: f64, r_b: f64) -> Result<()> {
    BlochProductParams::new(BlochAxis::Z, r_a, r_b).map(|_| ())
}

/// Normalized asymmetry of the z-polarized product family
/// `(1/4)(1 + r_a sigma_z) x (1 + r_b sigma_z)`:
///
/// ```text
/// A = 2 (1 - r_a r_b - Q) / 9,   Q = sqrt((1 - r_a^2)(1 - r_b^2))
/// ```
pub fn closed_form_rho3(r_a: f64, r_b: f64) -> Result<f64> {
    check_bloch_lengths(r_a, r_b)?;
    let q = ((1.0 - r_a * r_a) * (1.0 - r_b * r_b)).sqrt();
    Ok(2.0 * (1.0 - r_a * r_b - q) / 9.0)
}

/// Normalized asymmetry of the x-polarized product family:
///
/// ```text
/// A = (5 + 4 r_a r_b - 5 Q) / 9,   Q = sqrt((1 - r_a^2)(1 - r_b^2))
/// ```
pub fn closed_form_rho1(r_a: f64, r_b: f64) -> Result<f64> {
    check_bloch_lengths(r_a, r_b)?;
    let q = ((1.0 - r_a * r_a) * (1.0 - r_b * r_b)).sqrt();
    Ok((5.0 + 4.0 * r_a * r_b - 5.0 * q) / 9.0)
}

/// Replace a two-qubit state by the product of one reduced state with the
/// maximally mixed state on the other qubit: `rho_a x 1/2` for
/// [`Subsystem::A`], `1/2 x rho_b` for [`Subsystem::B`].
pub fn local_state(rho: &DensityMatrix, keep: Subsystem) -> Result<DensityMatrix> {
    let reduced = rho.reduce(keep)?;
    let half = ComplexMatrix::identity(2).scale(Complex64::new(0.5, 0.0));
    let mat = match keep {
        Subsystem::A => reduced.kron(&half),
        Subsystem::B => half.kron(&reduced),
    };
    DensityMatrix::new(mat)
}

/// Skew information of the locally surviving part of the evolved state:
/// evolve `rho0` to time `t`, discard correlations by keeping only one
/// reduced state, and measure asymmetry of the result. Unlike the global
/// measure this does depend on time.
pub fn local_asymmetry(
    rho0: &DensityMatrix,
    h: &MdiHamiltonian,
    t: f64,
    keep: Subsystem,
) -> Result<AsymmetryValue> {
    let evolved = evolve_density(rho0, h, t)?;
    let localized = local_state(&evolved, keep)?;
    wy_asymmetry(&localized, h)
}

/// Raw-scale local asymmetry of the evolved x-polarized family (qubit a
/// kept), in closed form:
///
/// ```text
/// A = (5/16) [ sqrt(2 + g) - sqrt(2 - g) ]^2
/// g = (r_a - r_b) cos t + (r_a + r_b) cos 3t
/// ```
///
/// `g/2` is the surviving x-polarization of qubit a, so `|g| <= 2` and both
/// square roots are well defined. Note the raw scale; multiply by 4/9 for
/// the normalized convention used elsewhere.
pub fn local_closed_form_rho1(r_a: f64, r_b: f64, t: f64) -> Result<f64> {
    check_bloch_lengths(r_a, r_b)?;
    if !t.is_finite() {
        return Err(Error::NonFinite("local_closed_form_rho1 time"));
    }
    let g = (r_a - r_b) * t.cos() + (r_a + r_b) * (3.0 * t).cos();
    let diff = (2.0 + g).max(0.0).sqrt() - (2.0 - g).max(0.0).sqrt();
    Ok(5.0 / 16.0 * diff * diff)
}

/// Normalized local asymmetry of the evolved z-polarized family (qubit a
/// kept), in closed form:
///
/// ```text
/// A = [ sqrt(1 - u) - sqrt(1 + u) ]^2 / 9
/// u = r_a cos^2 t + r_b sin^2 t
/// ```
///
/// `u` is a convex combination of the two Bloch lengths, so `|u| <= 1`.
pub fn local_closed_form_rho3(r_a: f64, r_b: f64, t: f64) -> Result<f64> {
    check_bloch_lengths(r_a, r_b)?;
    if !t.is_finite() {
        return Err(Error::NonFinite("local_closed_form_rho3 time"));
    }
    let (s2, c2) = (t.sin() * t.sin(), t.cos() * t.cos());
    // 1 -/+ u expanded over the convex weights: every term is nonnegative,
    // so the expressions under the roots cannot cancel. The naive
    // `1 - (r_a c^2 + r_b s^2)` loses that exactness when both lengths sit
    // at the same pole, where rounding in `c^2 + s^2` leaks through the
    // square root at 1e-8 scale.
    let minus = c2 * (1.0 - r_a) + s2 * (1.0 - r_b);
    let plus = c2 * (1.0 + r_a) + s2 * (1.0 + r_b);
    let diff = minus.sqrt() - plus.sqrt();
    Ok(diff * diff / 9.0)
}

/// Asymmetry of a state relative to a unitary,
/// `A_U = 1 - Re tr(sqrt(rho) U sqrt(rho) U^dagger)`, in `[0, 1]`.
pub fn unitary_asymmetry(rho: &DensityMatrix, u: &ComplexMatrix) -> Result<f64> {
    if u.rows() != rho.dim() || u.cols() != rho.dim() {
        return Err(Error::DimensionMismatch {
            op: "unitary_asymmetry",
            lhs_rows: rho.dim(),
            lhs_cols: rho.dim(),
            rhs_rows: u.rows(),
            rhs_cols: u.cols(),
        });
    }
    let res = u.unitary_residual();
    if res > 1e-9 {
        return Err(Error::NotUnitary(res));
    }
    let root = rho.matrix().sqrt_psd()?;
    let overlap = real_trace(
        &root.matmul(u)?.matmul(&root)?.matmul(&u.adjoint())?,
        "tr(sqrt(rho) U sqrt(rho) U^dagger)",
    )?;
    let value = clamp_nonnegative(1.0 - overlap, "unitary asymmetry")?;
    if value > 1.0 + NEGATIVE_TOL {
        return Err(Error::Numeric {
            context: "unitary asymmetry above 1",
            value,
        });
    }
    Ok(value.min(1.0))
}

/// Unitary asymmetry of a pure state, `1 - |<psi|U|psi>|^2`.
pub fn unitary_asymmetry_pure(psi: &ComplexMatrix, u: &ComplexMatrix) -> Result<f64> {
    if psi.cols() != 1 || psi.rows() != u.rows() || u.rows() != u.cols() {
        return Err(Error::WrongShape {
            op: "unitary_asymmetry_pure",
            expected_rows: u.rows(),
            expected_cols: 1,
            rows: psi.rows(),
            cols: psi.cols(),
        });
    }
    let norm = psi.frobenius_norm();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::NotNormalized(norm));
    }
    let overlap = psi.inner(&u.matmul(psi)?)?.norm_sqr();
    Ok((1.0 - overlap).clamp(0.0, 1.0))
}

/// Closed-form unitary asymmetry of a pure product state with respect to the
/// canonical propagator at time `t`. In the Bell decomposition
/// `(c1, c2, c3, c4)` of the initial state,
///
/// ```text
/// <psi| U_t |psi> = c1^2 + c2^2 e^{-2it} + (c3^2 + c4^2) e^{it}
/// ```
///
/// and `A_U = 1 - |<psi|U_t|psi>|^2`.
pub fn unitary_asymmetry_pure_closed(p: &PureProductParams, t: f64) -> f64 {
    let coeffs = bell_coefficients(p);
    let w1 = coeffs.c1 * coeffs.c1;
    let w2 = coeffs.c2 * coeffs.c2;
    let w34 = coeffs.c3 * coeffs.c3 + coeffs.c4 * coeffs.c4;
    let re = w1 + w2 * (2.0 * t).cos() + w34 * t.cos();
    let im = w34 * t.sin() - w2 * (2.0 * t).sin();
    (1.0 - re * re - im * im).clamp(0.0, 1.0)
}

/// Oracle-path normalized asymmetry of a Bloch product family, evolved to
/// time `t` through the full matrix pipeline. The result should be
/// `t`-independent; the closed forms above are its `t = 0` values.
pub fn bloch_family_asymmetry(p: &BlochProductParams, t: f64) -> Result<AsymmetryValue> {
    let h = MdiHamiltonian::canonical();
    let rho = evolve_density(&bloch_product_state(p)?, &h, t)?;
    wy_asymmetry(&rho, &h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{
        bell_phi_minus, bell_phi_plus, bell_psi_minus, bell_psi_plus, evolve_pure_closed,
        pure_product_state,
    };
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

    #[test]
    fn bell_eigenstates_carry_no_asymmetry() {
        let h = MdiHamiltonian::canonical();
        for state in [
            bell_psi_plus(),
            bell_psi_minus(),
            bell_phi_plus(),
            bell_phi_minus(),
        ] {
            let a = wy_asymmetry_pure(&state, &h).unwrap();
            assert!(a.raw.abs() < 1e-12);
            let rho = DensityMatrix::from_pure(&state).unwrap();
            let b = wy_asymmetry(&rho, &h).unwrap();
            assert!(b.raw.abs() < 1e-9);
        }
    }

    #[test]
    fn pure_landmark_values() {
        let cases = [
            ((FRAC_PI_2, FRAC_PI_2), 1.0),
            ((0.0, 0.0), 0.0),
            ((PI, PI), 0.0),
            ((0.0, PI), 4.0 / 9.0),
            ((PI, 0.0), 4.0 / 9.0),
            ((FRAC_PI_2, 3.0 * FRAC_PI_2), 1.0 / 9.0),
        ];
        let h = MdiHamiltonian::canonical();
        for ((ta, tb), want) in cases {
            let p = PureProductParams::new(ta, tb).unwrap();
            assert!((closed_form_pure(&p) - want).abs() < 1e-12);
            let oracle = wy_asymmetry_pure(&pure_product_state(&p), &h).unwrap();
            assert!((oracle.normalized - want).abs() < 1e-12);
        }
    }

    #[test]
    fn uniform_bell_superposition_value() {
        let h = MdiHamiltonian::canonical();
        let mut psi = bell_psi_plus()
            .add(&bell_psi_minus())
            .unwrap()
            .add(&bell_phi_plus())
            .unwrap()
            .add(&bell_phi_minus())
            .unwrap();
        psi = psi.scale(Complex64::new(0.5, 0.0));
        let a = wy_asymmetry_pure(&psi, &h).unwrap();
        assert!((a.raw - 1.5).abs() < 1e-12);
        assert!((a.normalized - 6.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn mixed_and_pure_paths_agree_on_projectors() {
        let h = MdiHamiltonian::canonical();
        let p = PureProductParams::new(0.9, 2.2).unwrap();
        let psi = pure_product_state(&p);
        let pure = wy_asymmetry_pure(&psi, &h).unwrap();
        let mixed = wy_asymmetry(&DensityMatrix::from_pure(&psi).unwrap(), &h).unwrap();
        assert!((pure.raw - mixed.raw).abs() < 1e-9);
        assert!((pure.normalized - closed_form_pure(&p)).abs() < 1e-12);
    }

    #[test]
    fn asymmetry_is_constant_along_the_evolution() {
        let h = MdiHamiltonian::canonical();
        let p = PureProductParams::new(1.3, 0.4).unwrap();
        let reference = closed_form_pure(&p);
        for t in [0.0, 0.7, 2.9] {
            let psi = evolve_pure_closed(&p, t);
            let a = wy_asymmetry_pure(&psi, &h).unwrap();
            assert!((a.normalized - reference).abs() < 1e-10);
        }
    }

    #[test]
    fn bloch_closed_form_identities_at_r_03() {
        let r = 0.3;
        assert!((closed_form_rho3(r, r).unwrap()).abs() < 1e-15);
        assert!((closed_form_rho3(r, -r).unwrap() - 0.04).abs() < 1e-15);
        assert!((closed_form_rho1(r, r).unwrap() - 0.09).abs() < 1e-15);
        assert!((closed_form_rho1(r, -r).unwrap() - 0.01).abs() < 1e-15);
    }

    #[test]
    fn bloch_closed_forms_match_matrix_path() {
        for (r_a, r_b) in [(0.62, -0.41), (0.0, 0.85), (-0.3, -0.9)] {
            let z = BlochProductParams::new(BlochAxis::Z, r_a, r_b).unwrap();
            let direct = bloch_family_asymmetry(&z, 0.0).unwrap();
            assert!((direct.normalized - closed_form_rho3(r_a, r_b).unwrap()).abs() < 1e-10);

            let x = BlochProductParams::new(BlochAxis::X, r_a, r_b).unwrap();
            let direct = bloch_family_asymmetry(&x, 0.8).unwrap();
            assert!((direct.normalized - closed_form_rho1(r_a, r_b).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn local_state_places_the_reduction_on_the_right_factor() {
        let p = BlochProductParams::new(BlochAxis::Z, 0.8, -0.2).unwrap();
        let rho = bloch_product_state(&p).unwrap();

        let kept_a = local_state(&rho, Subsystem::A).unwrap();
        // rho_a x 1/2 with rho_a = diag(0.9, 0.1).
        assert!((kept_a.matrix().get(0, 0).re - 0.45).abs() < 1e-12);
        assert!((kept_a.matrix().get(2, 2).re - 0.05).abs() < 1e-12);

        let kept_b = local_state(&rho, Subsystem::B).unwrap();
        // 1/2 x rho_b with rho_b = diag(0.4, 0.6).
        assert!((kept_b.matrix().get(0, 0).re - 0.2).abs() < 1e-12);
        assert!((kept_b.matrix().get(1, 1).re - 0.3).abs() < 1e-12);
    }

    #[test]
    fn local_asymmetry_landmark_for_the_plus_plus_state() {
        let h = MdiHamiltonian::canonical();
        let p = PureProductParams::new(FRAC_PI_2, FRAC_PI_2).unwrap();
        let rho = DensityMatrix::from_pure(&pure_product_state(&p)).unwrap();
        let a = local_asymmetry(&rho, &h, 0.0, Subsystem::A).unwrap();
        assert!((a.raw - 1.25).abs() < 1e-10);
        assert!((a.normalized - 5.0 / 9.0).abs() < 1e-10);
    }

    #[test]
    fn local_closed_forms_hit_their_landmarks() {
        // Fully x-polarized pair at t = 0: raw 5/4.
        let v = local_closed_form_rho1(1.0, 1.0, 0.0).unwrap();
        assert!((v - 1.25).abs() < 1e-12);
        // Fully z-polarized qubit a at t = 0: normalized 2/9 whatever r_b is.
        for r_b in [-0.7, 0.0, 1.0] {
            let v = local_closed_form_rho3(1.0, r_b, 0.0).unwrap();
            assert!((v - 2.0 / 9.0).abs() < 1e-12);
        }
    }

    #[test]
    fn pole_aligned_pairs_keep_their_stationary_local_value_at_every_time() {
        // Both qubits at the same pole give a stationary state, so the
        // z-family value stays at 2/9 for all t. This locks in the
        // cancellation-free evaluation: a naive `1 - u` loses eight digits
        // here through the square root.
        for t in [0.0, 0.3141592653589793, 1.1, FRAC_PI_2, 2.9] {
            for r in [-1.0, 1.0] {
                let v = local_closed_form_rho3(r, r, t).unwrap();
                assert!((v - 2.0 / 9.0).abs() < 1e-12, "r={r} t={t}: {v}");
            }
        }
    }

    #[test]
    fn local_closed_forms_match_matrix_path() {
        let h = MdiHamiltonian::canonical();
        for (r_a, r_b, t) in [(0.62, -0.41, 0.9), (0.3, 0.7, 2.1), (-0.5, 0.5, 0.0)] {
            let x = BlochProductParams::new(BlochAxis::X, r_a, r_b).unwrap();
            let oracle = local_asymmetry(&bloch_product_state(&x).unwrap(), &h, t, Subsystem::A)
                .unwrap();
            let closed = local_closed_form_rho1(r_a, r_b, t).unwrap();
            assert!((oracle.raw - closed).abs() < 1e-10);

            let z = BlochProductParams::new(BlochAxis::Z, r_a, r_b).unwrap();
            let oracle = local_asymmetry(&bloch_product_state(&z).unwrap(), &h, t, Subsystem::A)
                .unwrap();
            let closed = local_closed_form_rho3(r_a, r_b, t).unwrap();
            assert!((oracle.normalized - closed).abs() < 1e-10);
        }
    }

    #[test]
    fn unitary_asymmetry_landmarks() {
        let h = MdiHamiltonian::canonical();
        let cases = [
            ((FRAC_PI_2, FRAC_PI_2), FRAC_PI_3, 1.0),
            ((PI, 0.0), FRAC_PI_2, 1.0),
            ((0.0, PI), FRAC_PI_2, 1.0),
            ((0.0, 0.0), 0.9, 0.0),
            ((PI, PI), 2.3, 0.0),
        ];
        for ((ta, tb), t, want) in cases {
            let p = PureProductParams::new(ta, tb).unwrap();
            let closed = unitary_asymmetry_pure_closed(&p, t);
            assert!((closed - want).abs() < 1e-12);

            let u = h.unitary_at(t);
            let psi = pure_product_state(&p);
            let pure = unitary_asymmetry_pure(&psi, &u).unwrap();
            assert!((pure - want).abs() < 1e-12);

            let mixed = unitary_asymmetry(&DensityMatrix::from_pure(&psi).unwrap(), &u).unwrap();
            assert!((mixed - want).abs() < 1e-9);
        }
    }

    #[test]
    fn singlet_is_invariant_under_the_propagator() {
        let h = MdiHamiltonian::canonical();
        let rho = DensityMatrix::from_pure(&bell_psi_minus()).unwrap();
        let a = unitary_asymmetry(&rho, &h.unitary_at(FRAC_PI_2)).unwrap();
        assert!(a < 1e-9);
    }

    #[test]
    fn unitary_asymmetry_of_a_mixed_state_frozen_value() {
        let h = MdiHamiltonian::canonical();
        let p = BlochProductParams::new(BlochAxis::X, 0.62, -0.41).unwrap();
        let rho = bloch_product_state(&p).unwrap();
        let got = unitary_asymmetry(&rho, &h.unitary_at(1.234)).unwrap();
        assert!((got - 0.10408294616560032).abs() < 1e-10);
    }

    #[test]
    fn closed_form_range_checks() {
        assert!(closed_form_rho3(1.2, 0.0).is_err());
        assert!(closed_form_rho1(0.0, -1.01).is_err());
        assert!(local_closed_form_rho1(0.0, 0.0, f64::NAN).is_err());
    }
}
