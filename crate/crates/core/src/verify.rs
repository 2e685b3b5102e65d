//! Randomized and grid-based self checks.
//!
//! Every closed-form expression in this crate has an independent matrix-path
//! counterpart; the properties here hold the two against each other, together
//! with the structural invariants the model promises (norm and purity
//! preservation, time invariance of the global measure, periodicity of the
//! local one, determinism of parallel scans, and so on).
//!
//! Each property draws its randomness from its own ChaCha stream, seeded by
//! the user seed mixed with the property name, so reports are reproducible
//! and independent of property order. The `samples` argument scales the
//! randomized properties; the deterministic grid checks always run at their
//! fixed sizes.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::asymmetry::{
    closed_form_pure, closed_form_rho1, closed_form_rho3, local_asymmetry,
    local_closed_form_rho1, local_closed_form_rho3, unitary_asymmetry,
    unitary_asymmetry_pure, unitary_asymmetry_pure_closed, wy_asymmetry, wy_asymmetry_pure,
};
use crate::entanglement::{concurrence, concurrence_pure};
use crate::linalg::{ComplexMatrix, Subsystem};
use crate::model::{
    bell_coefficients, bell_phi_minus, bell_phi_plus, bell_psi_minus, bell_psi_plus,
    bloch_product_state, evolve_bloch_closed, evolve_density, evolve_pure_closed,
    pure_product_state, BlochAxis, BlochProductParams, DensityMatrix, MdiHamiltonian,
    PureProductParams,
};
use crate::scan::{run_scan, run_scan_with_workers, Axis, EvalPath, GridSpec, Measure, Param};

/// Outcome of one verification property.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyReport {
    pub name: &'static str,
    pub passed: bool,
    /// Worst observed deviation (or check-specific metric).
    pub worst: f64,
    pub tolerance: f64,
    pub detail: String,
}

fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Random Hermitian matrix with entries of order one.
pub fn random_hermitian<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix {
    let mut g = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            g.set(
                i,
                j,
                c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
            );
        }
    }
    g.add(&g.adjoint()).unwrap().scale(c(0.5, 0.0))
}

/// Random full-rank density matrix from a Gram construction.
pub fn random_density<R: Rng>(rng: &mut R, n: usize) -> DensityMatrix {
    let mut g = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            g.set(
                i,
                j,
                c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
            );
        }
    }
    let gram = g.matmul(&g.adjoint()).unwrap();
    let tr = gram.trace().re;
    let scaled = gram.scale(c(1.0 / tr, 0.0));
    let sym = scaled.add(&scaled.adjoint()).unwrap().scale(c(0.5, 0.0));
    DensityMatrix::new(sym).expect("Gram construction yields a density matrix")
}

pub fn random_pure_product<R: Rng>(rng: &mut R) -> PureProductParams {
    PureProductParams::new(rng.random_range(0.0..TAU), rng.random_range(0.0..TAU)).unwrap()
}

pub fn random_bloch<R: Rng>(rng: &mut R, axis: BlochAxis) -> BlochProductParams {
    BlochProductParams::new(
        axis,
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
    )
    .unwrap()
}

/// Random 2x2 unitary via Gram-Schmidt on a random complex matrix.
pub fn random_single_qubit_unitary<R: Rng>(rng: &mut R) -> ComplexMatrix {
    loop {
        let g1 = [
            c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
            c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
        ];
        let g2 = [
            c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
            c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
        ];
        let n1 = (g1[0].norm_sqr() + g1[1].norm_sqr()).sqrt();
        if n1 < 1e-3 {
            continue;
        }
        let e1 = [g1[0] / n1, g1[1] / n1];
        let overlap = e1[0].conj() * g2[0] + e1[1].conj() * g2[1];
        let r2 = [g2[0] - overlap * e1[0], g2[1] - overlap * e1[1]];
        let n2 = (r2[0].norm_sqr() + r2[1].norm_sqr()).sqrt();
        if n2 < 1e-3 {
            continue;
        }
        let e2 = [r2[0] / n2, r2[1] / n2];
        return ComplexMatrix::new(2, 2, vec![e1[0], e2[0], e1[1], e2[1]]).unwrap();
    }
}

/// Distance between unit vectors modulo a global phase,
/// `sqrt(2 - 2 |<a|b>|)`.
pub fn distance_up_to_phase(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    let overlap = a.inner(b).map(|z| z.norm()).unwrap_or(0.0);
    (2.0 - 2.0 * overlap).max(0.0).sqrt()
}

fn ket_01() -> ComplexMatrix {
    ComplexMatrix::column_vector(&[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
}

/// Run the full property suite. Returns one report per property.
pub fn run_all(seed: u64, samples: usize) -> Vec<PropertyReport> {
    let samples = samples.max(1);
    let h = MdiHamiltonian::canonical();
    let mut out: Vec<PropertyReport> = Vec::new();

    let mut add = |name: &'static str,
                   tolerance: f64,
                   body: &mut dyn FnMut(&mut ChaCha8Rng) -> (f64, String)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv1a(name));
        let (worst, detail) = body(&mut rng);
        out.push(PropertyReport {
            name,
            passed: worst <= tolerance,
            worst,
            tolerance,
            detail,
        });
    };

    add("eigh-reconstruction", 1e-11, &mut |rng| {
        let mut worst = 0f64;
        for k in 0..samples {
            let n = if k % 2 == 0 { 4 } else { 2 };
            let a = random_hermitian(rng, n);
            let eig = a.eigh().unwrap();
            worst = worst.max(eig.reconstruct().sub(&a).unwrap().frobenius_norm());
        }
        (worst, format!("worst rebuild residual over {samples} matrices"))
    });

    add("eigh-orthonormal", 1e-12, &mut |rng| {
        let mut worst = 0f64;
        for k in 0..samples {
            let n = if k % 2 == 0 { 4 } else { 2 };
            let eig = random_hermitian(rng, n).eigh().unwrap();
            worst = worst.max(eig.eigenvectors.unitary_residual());
        }
        (worst, "eigenvector frames stay unitary".to_string())
    });

    add("sqrt-psd-square", 1e-10, &mut |rng| {
        let mut worst = 0f64;
        for k in 0..samples {
            let n = if k % 2 == 0 { 4 } else { 2 };
            let rho = random_density(rng, n);
            let root = rho.matrix().sqrt_psd().unwrap();
            let back = root.matmul(&root).unwrap();
            worst = worst.max(back.sub(rho.matrix()).unwrap().frobenius_norm());
        }
        (worst, "square of the matrix square root".to_string())
    });

    add("kron-mixed-product", 1e-12, &mut |rng| {
        let mut worst = 0f64;
        for _ in 0..samples {
            let a = random_hermitian(rng, 2);
            let b = random_hermitian(rng, 2);
            let x = random_hermitian(rng, 2);
            let y = random_hermitian(rng, 2);
            let lhs = a.kron(&b).matmul(&x.kron(&y)).unwrap();
            let rhs = a.matmul(&x).unwrap().kron(&b.matmul(&y).unwrap());
            worst = worst.max(lhs.sub(&rhs).unwrap().frobenius_norm());
        }
        (worst, "(A x B)(X x Y) = AX x BY".to_string())
    });

    add("partial-trace-product", 1e-12, &mut |rng| {
        let mut worst = 0f64;
        for _ in 0..samples {
            let a = random_density(rng, 2);
            let b = random_density(rng, 2);
            let joint = a.matrix().kron(b.matrix());
            let back_a = joint.partial_trace(Subsystem::A).unwrap();
            let back_b = joint.partial_trace(Subsystem::B).unwrap();
            worst = worst.max(back_a.sub(a.matrix()).unwrap().frobenius_norm());
            worst = worst.max(back_b.sub(b.matrix()).unwrap().frobenius_norm());
        }
        (worst, "reductions of A x B recover the factors".to_string())
    });

    add("evolution-norm", 1e-11, &mut |rng| {
        let mut worst = 0f64;
        for _ in 0..samples {
            let p = random_pure_product(rng);
            let t = rng.random_range(0.0..TAU);
            let moved = h.unitary_at(t).matmul(&pure_product_state(&p)).unwrap();
            worst = worst.max((moved.frobenius_norm() - 1.0).abs());
        }
        (worst, "propagation preserves the norm".to_string())
    });

    add("evolution-purity", 1e-10, &mut |rng| {
        let mut worst = 0f64;
        for k in 0..samples {
            let axis = if k % 2 == 0 { BlochAxis::X } else { BlochAxis::Z };
            let rho = bloch_product_state(&random_bloch(rng, axis)).unwrap();
            let before = rho.matrix().matmul(rho.matrix()).unwrap().trace().re;
            let moved = evolve_density(&rho, &h, rng.random_range(0.0..TAU)).unwrap();
            let after = moved.matrix().matmul(moved.matrix()).unwrap().trace().re;
            worst = worst.max((before - after).abs());
        }
        (worst, "propagation preserves the purity".to_string())
    });

    add("evolution-group-law", 1e-10, &mut |rng| {
        let mut worst = 0f64;
        for _ in 0..samples {
            let s = rng.random_range(0.0..TAU);
            let t = rng.random_range(0.0..TAU);
            let joined = h.unitary_at(s + t);
            let split = h.unitary_at(s).matmul(&h.unitary_at(t)).unwrap();
            worst = worst.max(joined.sub(&split).unwrap().frobenius_norm());
        }
        (worst, "U(s + t) = U(s) U(t)".to_string())
    });

    // The phase-stripped distance scales like the square root of the overlap
    // defect, so machine-level agreement shows up as ~1e-8 here.
    add("pure-closed-evolution", 1e-7, &mut |rng| {
        let mut worst = 0f64;
        for _ in 0..samples {
            let p = random_pure_product(rng);
            let t = rng.random_range(0.0..TAU);
            let closed = evolve_pure_closed(&p, t);
            let matrix = h.unitary_at(t).matmul(&pure_product_state(&p)).unwrap();
            worst = worst.max(distance_up_to_phase(&closed, &matrix));
        }
        (worst, "closed evolved state vs matrix propagation".to_string())
    });

    add("bloch-closed-evolution", 1e-10, &mut |rng| {
        let mut worst = 0f64;
        for k in 0..samples {
            let axis = if k % 2 == 0 { BlochAxis::X } else { BlochAxis::Z };
            let p = random_bloch(rng, axis);
            let t = rng.random_range(0.0..TAU);
            let closed = evolve_bloch_closed(&p, t).unwrap();
            let matrix = evolve_density(&bloch_product_state(&p).unwrap(), &h, t).unwrap();
            worst = worst.max(closed.matrix().sub(matrix.matrix()).unwrap().frobenius_norm());
        }
        (worst, "closed evolved families vs matrix propagation".to_string())
    });

    add("bell-reconstruction", 1e-12, &mut |rng| {
        let mut worst = 0f64;
        for _ in 0..samples {
            let p = random_pure_product(rng);
            let coeffs = bell_coefficients(&p);
            worst = worst.max((coeffs.norm_sqr() - 1.0).abs());
            let back = coeffs.reconstruct();
            worst = worst.max(
                back.sub(&pure_product_state(&p)).unwrap().frobenius_norm(),
            );
        }
        (worst, "Bell decomposition rebuilds the state".to_string())
    });

    add("asymmetry-time-invariance", 1e-9, &mut |rng| {
        let mut worst = 0f64;
        for k in 0..samples {
            let t = rng.random_range(0.0..TAU);
            let axis = if k % 2 == 0 { BlochAxis::X } else { BlochAxis::Z };
            let rho = bloch_product_state(&random_bloch(rng, axis)).unwrap();
            let before = wy_asymmetry(&rho, &h).unwrap().normalized;
            let after = wy_asymmetry(&evolve_density(&rho, &h, t).unwrap(), &h)
                .unwrap()
                .normalized;
            worst = worst.max((before - after).abs());

            let p = random_pure_product(rng);
            let moving = wy_asymmetry_pure(&evolve_pure_closed(&p, t), &h)
                .unwrap()
                .normalized;
            worst = worst.max((moving - closed_form_pure(&p)).abs());
        }
        (worst, "global asymmetry is a constant of motion".to_string())
    });

    add("pure-phase-invariance", 1e-12, &mut |rng| {
        let mut worst = 0f64;
        for _ in 0..samples {
            let p = random_pure_product(rng);
            let psi = pure_product_state(&p);
            let phase = c(0.0, rng.random_range(0.0..TAU)).exp();
            let shifted = psi.scale(phase);
            let a = wy_asymmetry_pure(&psi, &h).unwrap().normalized;
            let b = wy_asymmetry_pure(&shifted, &h).unwrap().normalized;
            worst = worst.max((a - b).abs());
            let u = h.unitary_at(rng.random_range(0.0..TAU));
            let x = unitary_asymmetry_pure(&psi, &u).unwrap();
            let y = unitary_asymmetry_pure(&shifted, &u).unwrap();
            worst = worst.max((x - y).abs());
        }
        (worst, "global phases are invisible".to_string())
    });

    add("unitary-pure-overlap", 1e-10, &mut |rng| {
        let mut worst = 0f64;
        for _ in 0..samples {
            let p = random_pure_product(rng);
            let t = rng.random_range(0.0..TAU);
            let direct =
                unitary_asymmetry_pure(&pure_product_state(&p), &h.unitary_at(t)).unwrap();
            worst = worst.max((direct - unitary_asymmetry_pure_closed(&p, t)).abs());
        }
        (worst, "overlap formula vs Bell-weight closed form".to_string())
    });

    add("local-closed-form-sample", 1e-9, &mut |rng| {
        let mut worst = 0f64;
        for _ in 0..samples {
            let t = rng.random_range(0.0..TAU);
            let x = random_bloch(rng, BlochAxis::X);
            let direct = local_asymmetry(&bloch_product_state(&x).unwrap(), &h, t, Subsystem::A)
                .unwrap()
                .raw;
            worst =
                worst.max((direct - local_closed_form_rho1(x.r_a, x.r_b, t).unwrap()).abs());

            let z = random_bloch(rng, BlochAxis::Z);
            let direct = local_asymmetry(&bloch_product_state(&z).unwrap(), &h, t, Subsystem::A)
                .unwrap()
                .normalized;
            worst =
                worst.max((direct - local_closed_form_rho3(z.r_a, z.r_b, t).unwrap()).abs());
        }
        (worst, "local closed forms vs reduction pipeline".to_string())
    });

    add("singlet-subspace-contrast", 1e-9, &mut |rng| {
        let mut worst = 0f64;
        let bells = [
            bell_psi_minus(),
            bell_psi_plus(),
            bell_phi_minus(),
            bell_phi_plus(),
        ];
        for _ in 0..samples {
            let mut weights = [0f64; 4];
            let mut total = 0.0;
            for w in weights.iter_mut() {
                *w = rng.random_range(0.05..1.0);
                total += *w;
            }
            let mut mat = ComplexMatrix::zeros(4, 4);
            for (state, w) in bells.iter().zip(weights) {
                mat = mat
                    .add(&state.outer(state).unwrap().scale(c(w / total, 0.0)))
                    .unwrap();
            }
            let rho = DensityMatrix::new(mat).unwrap();
            let t = rng.random_range(0.0..TAU);
            // Bell-diagonal states commute with the propagator.
            worst = worst.max(unitary_asymmetry(&rho, &h.unitary_at(t)).unwrap());
        }
        let contrast = unitary_asymmetry(
            &DensityMatrix::from_pure(&ket_01()).unwrap(),
            &h.unitary_at(FRAC_PI_2),
        )
        .unwrap();
        worst = worst.max(1.0 - contrast);
        (
            worst,
            "Bell-diagonal states idle while |01> is fully displaced".to_string(),
        )
    });

    add("concurrence-local-unitary", 1e-9, &mut |rng| {
        let mut worst = 0f64;
        for _ in 0..samples {
            let p = random_pure_product(rng);
            let t = rng.random_range(0.0..TAU);
            let psi = evolve_pure_closed(&p, t);
            let reference = concurrence_pure(&psi).unwrap();
            let local = random_single_qubit_unitary(rng).kron(&random_single_qubit_unitary(rng));
            let moved = local.matmul(&psi).unwrap();
            worst = worst.max((concurrence_pure(&moved).unwrap() - reference).abs());
        }
        (worst, "local unitaries leave concurrence alone".to_string())
    });

    add("concurrence-mixed-pure-agreement", 1e-8, &mut |rng| {
        let mut worst = 0f64;
        for _ in 0..samples {
            let p = random_pure_product(rng);
            let t = rng.random_range(0.0..TAU);
            let psi = evolve_pure_closed(&p, t);
            let pure = concurrence_pure(&psi).unwrap();
            let mixed = concurrence(&DensityMatrix::from_pure(&psi).unwrap()).unwrap();
            worst = worst.max((pure - mixed).abs());
        }
        (worst, "Wootters route vs pure determinant route".to_string())
    });

    add("concurrence-product-zero", 1e-8, &mut |rng| {
        let mut worst = 0f64;
        for k in 0..samples {
            let p = random_pure_product(rng);
            worst = worst.max(concurrence_pure(&pure_product_state(&p)).unwrap());
            let axis = if k % 2 == 0 { BlochAxis::X } else { BlochAxis::Z };
            let rho = bloch_product_state(&random_bloch(rng, axis)).unwrap();
            worst = worst.max(concurrence(&rho).unwrap());
        }
        (worst, "product states carry no entanglement".to_string())
    });

    add("bell-eigenstate-nullity", 1e-12, &mut |_| {
        let mut worst = 0f64;
        for state in [
            bell_psi_minus(),
            bell_psi_plus(),
            bell_phi_minus(),
            bell_phi_plus(),
        ] {
            worst = worst.max(wy_asymmetry_pure(&state, &h).unwrap().raw.abs());
        }
        (worst, "energy eigenstates have zero skew information".to_string())
    });

    add("pure-closed-form-grid", 1e-9, &mut |_| {
        let spec = GridSpec {
            axis1: Axis::new(Param::ThetaA, 0.0, TAU, 101),
            axis2: Axis::new(Param::ThetaB, 0.0, TAU, 101),
            fixed: vec![],
            measure: Measure::GlobalPure,
            path: EvalPath::Both,
        };
        let result = run_scan(&spec).unwrap();
        (
            result.max_deviation.unwrap(),
            "closed form vs oracle on a 101x101 angle grid".to_string(),
        )
    });

    add("rho3-closed-form-grid", 1e-9, &mut |_| {
        let spec = GridSpec {
            axis1: Axis::new(Param::RA, -1.0, 1.0, 101),
            axis2: Axis::new(Param::RB, -1.0, 1.0, 101),
            fixed: vec![],
            measure: Measure::GlobalRho3,
            path: EvalPath::Both,
        };
        let result = run_scan(&spec).unwrap();
        (
            result.max_deviation.unwrap(),
            "closed form vs oracle on a 101x101 length grid".to_string(),
        )
    });

    add("rho1-closed-form-grid", 1e-9, &mut |_| {
        let spec = GridSpec {
            axis1: Axis::new(Param::RA, -1.0, 1.0, 101),
            axis2: Axis::new(Param::RB, -1.0, 1.0, 101),
            fixed: vec![],
            measure: Measure::GlobalRho1,
            path: EvalPath::Both,
        };
        let result = run_scan(&spec).unwrap();
        (
            result.max_deviation.unwrap(),
            "closed form vs oracle on a 101x101 length grid".to_string(),
        )
    });

    add("normalized-bound", 1e-9, &mut |_| {
        let mut worst = f64::NEG_INFINITY;
        let angles = Axis::new(Param::ThetaA, 0.0, TAU, 201);
        for i in 0..201 {
            for j in 0..201 {
                let p = PureProductParams::new(angles.node(i), angles.node(j)).unwrap();
                let v = closed_form_pure(&p);
                worst = worst.max((-v).max(v - 1.0));
            }
        }
        let lengths = Axis::new(Param::RA, -1.0, 1.0, 101);
        for i in 0..101 {
            for j in 0..101 {
                for v in [
                    closed_form_rho1(lengths.node(i), lengths.node(j)).unwrap(),
                    closed_form_rho3(lengths.node(i), lengths.node(j)).unwrap(),
                ] {
                    worst = worst.max((-v).max(v - 1.0));
                }
            }
        }
        (worst, "normalized values stay inside [0, 1]".to_string())
    });

    add("local-periodicity", 1e-9, &mut |_| {
        let mut worst = 0f64;
        let families = [(FRAC_PI_2, FRAC_PI_2), (1.1, 2.3), (0.3, 5.9)];
        for (ta, tb) in families {
            let p = PureProductParams::new(ta, tb).unwrap();
            let rho = DensityMatrix::from_pure(&pure_product_state(&p)).unwrap();
            for j in 0..60 {
                let t = PI * (j as f64 / 60.0);
                let now = local_asymmetry(&rho, &h, t, Subsystem::A).unwrap().raw;
                let shifted = local_asymmetry(&rho, &h, t + PI, Subsystem::A).unwrap().raw;
                worst = worst.max((now - shifted).abs());
            }
        }
        (worst, "local asymmetry of pure products has period pi".to_string())
    });

    add("asymmetry-entanglement-existence", 0.0, &mut |_| {
        let angles = Axis::new(Param::ThetaA, 0.0, TAU, 101);
        let mut thinnest = f64::INFINITY;
        for i in 0..101 {
            for j in 0..101 {
                let p = PureProductParams::new(angles.node(i), angles.node(j)).unwrap();
                if closed_form_pure(&p) <= 1e-6 {
                    continue;
                }
                let mut best = 0f64;
                for k in 0..100 {
                    let t = PI * (k as f64 / 100.0);
                    best = best.max(concurrence_pure(&evolve_pure_closed(&p, t)).unwrap());
                    if best > 1e-3 {
                        break;
                    }
                }
                thinnest = thinnest.min(best);
            }
        }
        (
            1e-6 - thinnest,
            format!("weakest peak entanglement among asymmetric states: {thinnest:.3e}"),
        )
    });

    add("scan-determinism", 0.0, &mut |_| {
        let spec = GridSpec {
            axis1: Axis::new(Param::ThetaA, 0.0, TAU, 21),
            axis2: Axis::new(Param::ThetaB, 0.0, TAU, 21),
            fixed: vec![],
            measure: Measure::GlobalPure,
            path: EvalPath::Both,
        };
        let runs: Vec<_> = [1usize, 4, 8]
            .iter()
            .map(|&w| run_scan_with_workers(&spec, w).unwrap())
            .collect();
        let bitwise = runs.windows(2).all(|pair| {
            let same_values = pair[0]
                .values
                .iter()
                .zip(&pair[1].values)
                .all(|(a, b)| a.to_bits() == b.to_bits());
            let same_devs = match (&pair[0].deviations, &pair[1].deviations) {
                (Some(x), Some(y)) => {
                    x.iter().zip(y).all(|(a, b)| a.to_bits() == b.to_bits())
                }
                _ => false,
            };
            same_values && same_devs
        });
        (
            if bitwise { 0.0 } else { 1.0 },
            "grids agree bit for bit across 1, 4, 8 workers".to_string(),
        )
    });

    add("scan-grid-symmetry", 1e-10, &mut |_| {
        let mut worst = 0f64;
        for measure in [Measure::GlobalPure, Measure::GlobalRho1] {
            let (p1, p2, lo, hi) = match measure {
                Measure::GlobalPure => (Param::ThetaA, Param::ThetaB, 0.0, TAU),
                _ => (Param::RA, Param::RB, -1.0, 1.0),
            };
            let spec = GridSpec {
                axis1: Axis::new(p1, lo, hi, 41),
                axis2: Axis::new(p2, lo, hi, 41),
                fixed: vec![],
                measure,
                path: EvalPath::ClosedForm,
            };
            let result = run_scan(&spec).unwrap();
            for i in 0..41 {
                for j in 0..41 {
                    let here = result.values[i * 41 + j];
                    let swapped = (here - result.values[j * 41 + i]).abs();
                    let reflected = (here - result.values[(40 - i) * 41 + (40 - j)]).abs();
                    worst = worst.max(swapped).max(reflected);
                }
            }
        }
        (
            worst,
            "subsystem swap and joint parameter reflection are symmetries".to_string(),
        )
    });

    add("scan-null-lines", 1e-10, &mut |_| {
        let spec = GridSpec {
            axis1: Axis::new(Param::RA, -1.0, 1.0, 41),
            axis2: Axis::new(Param::RB, -1.0, 1.0, 41),
            fixed: vec![],
            measure: Measure::GlobalRho3,
            path: EvalPath::ClosedForm,
        };
        let result = run_scan(&spec).unwrap();
        let mut worst = 0f64;
        for i in 0..41 {
            worst = worst.max(result.values[i * 41 + i].abs());
        }
        let spec = GridSpec {
            axis1: Axis::new(Param::ThetaA, 0.0, TAU, 41),
            axis2: Axis::new(Param::ThetaB, 0.0, TAU, 41),
            fixed: vec![],
            measure: Measure::GlobalPure,
            path: EvalPath::ClosedForm,
        };
        let result = run_scan(&spec).unwrap();
        for flat in [0, 40, 40 * 41, 41 * 41 - 1] {
            worst = worst.max(result.values[flat].abs());
        }
        for diag in [0, 20, 40] {
            worst = worst.max(result.values[diag * 41 + diag].abs());
        }
        (
            worst,
            "aligned z families and equal-angle pole products carry no asymmetry".to_string(),
        )
    });

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_whole_suite_passes_on_a_small_budget() {
        let reports = run_all(7, 10);
        assert!(reports.len() >= 25);
        for report in &reports {
            assert!(
                report.passed,
                "{} failed: worst {:.3e} vs tolerance {:.3e} ({})",
                report.name, report.worst, report.tolerance, report.detail
            );
        }
    }

    #[test]
    fn reports_are_reproducible_for_a_fixed_seed() {
        let a = run_all(99, 4);
        let b = run_all(99, 4);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.name, y.name);
            assert_eq!(x.worst.to_bits(), y.worst.to_bits());
        }
    }

    #[test]
    fn samplers_produce_valid_objects() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let u = random_single_qubit_unitary(&mut rng);
            assert!(u.unitary_residual() < 1e-12);
            let rho = random_density(&mut rng, 4);
            assert_eq!(rho.dim(), 4);
            let h = random_hermitian(&mut rng, 4);
            assert!(h.hermitian_residual() < 1e-15);
        }
    }
}
