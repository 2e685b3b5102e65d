//! Acceptance gate: nine end-to-end criteria covering landmark values,
//! closed-form agreement, invariance, locality, propagator sensitivity,
//! entanglement, and byte-level determinism. Each test prints one PASS or
//! FAIL line and asserts its stated tolerance.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI, TAU};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mdi_asymmetry::asymmetry::{
    closed_form_pure, closed_form_rho1, closed_form_rho3, local_asymmetry, local_closed_form_rho1,
    local_closed_form_rho3, unitary_asymmetry, unitary_asymmetry_pure_closed, wy_asymmetry,
};
use mdi_asymmetry::entanglement::{concurrence, concurrence_pure};
use mdi_asymmetry::model::{bell_phi_minus, bell_phi_plus, bell_psi_minus, bell_psi_plus};
use mdi_asymmetry::scan::{run_scan, Axis, EvalPath, GridSpec, Measure, Param};
use mdi_asymmetry::verify::{random_bloch, random_density, random_pure_product};
use mdi_asymmetry::{
    bloch_product_state, evolve_bloch_closed, evolve_density, evolve_pure_closed,
    pure_product_state, BlochAxis, BlochProductParams, Complex64, ComplexMatrix, DensityMatrix,
    MdiHamiltonian, PureProductParams, Subsystem,
};

fn report(n: usize, what: &str, worst: f64, tol: f64, pass: bool) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let line = format!("criterion {n} {verdict}: {what} (worst {worst:.3e}, tol {tol:.3e})");
    println!("{line}");
    assert!(pass, "{line}");
}

fn angles(theta_a: f64, theta_b: f64) -> PureProductParams {
    PureProductParams::new(theta_a, theta_b).unwrap()
}

fn pure_density(p: &PureProductParams) -> DensityMatrix {
    DensityMatrix::from_pure(&pure_product_state(p)).unwrap()
}

#[test]
fn criterion_1_landmark_values_hold_on_both_routes() {
    let start = Instant::now();
    let h = MdiHamiltonian::canonical();
    let cases = [
        (FRAC_PI_2, FRAC_PI_2, 1.0),
        (3.0 * FRAC_PI_2, 3.0 * FRAC_PI_2, 1.0),
        (0.0, 0.0, 0.0),
        (PI, PI, 0.0),
        (0.0, PI, 4.0 / 9.0),
        (PI, 0.0, 4.0 / 9.0),
        (FRAC_PI_2, 3.0 * FRAC_PI_2, 1.0 / 9.0),
    ];
    let mut worst = 0f64;
    for (theta_a, theta_b, want) in cases {
        let p = angles(theta_a, theta_b);
        let closed = closed_form_pure(&p);
        let oracle = wy_asymmetry(&pure_density(&p), &h).unwrap().normalized;
        worst = worst.max((closed - want).abs()).max((oracle - want).abs());
    }
    let uniform = bell_psi_plus()
        .add(&bell_psi_minus())
        .unwrap()
        .add(&bell_phi_plus())
        .unwrap()
        .add(&bell_phi_minus())
        .unwrap()
        .scale(Complex64::new(0.5, 0.0));
    let value = wy_asymmetry(&DensityMatrix::from_pure(&uniform).unwrap(), &h).unwrap();
    worst = worst
        .max((value.normalized - 2.0 / 3.0).abs())
        .max((value.raw - 1.5).abs());
    let elapsed = start.elapsed();
    report(
        1,
        "landmark asymmetry values on closed and matrix routes within one second",
        worst,
        1e-9,
        worst <= 1e-9 && elapsed < Duration::from_secs(1),
    );
}

#[test]
fn criterion_2_closed_forms_match_the_matrix_path_everywhere() {
    let start = Instant::now();
    let mut worst = 0f64;
    let grids = [
        GridSpec {
            axis1: Axis::new(Param::ThetaA, 0.0, TAU, 101),
            axis2: Axis::new(Param::ThetaB, 0.0, TAU, 101),
            fixed: vec![],
            measure: Measure::GlobalPure,
            path: EvalPath::Both,
        },
        GridSpec {
            axis1: Axis::new(Param::RA, -1.0, 1.0, 101),
            axis2: Axis::new(Param::RB, -1.0, 1.0, 101),
            fixed: vec![],
            measure: Measure::GlobalRho3,
            path: EvalPath::Both,
        },
        GridSpec {
            axis1: Axis::new(Param::RA, -1.0, 1.0, 101),
            axis2: Axis::new(Param::RB, -1.0, 1.0, 101),
            fixed: vec![],
            measure: Measure::GlobalRho1,
            path: EvalPath::Both,
        },
        GridSpec {
            axis1: Axis::new(Param::ThetaA, 0.0, TAU, 101),
            axis2: Axis::new(Param::T, 0.0, TAU, 101),
            fixed: vec![(Param::ThetaB, FRAC_PI_2)],
            measure: Measure::UnitaryPure,
            path: EvalPath::Both,
        },
    ];
    for spec in grids {
        let result = run_scan(&spec).unwrap();
        worst = worst.max(result.max_deviation.unwrap());
    }

    let h = MdiHamiltonian::canonical();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0a11_5eed);
    for _ in 0..500 {
        let p = random_pure_product(&mut rng);
        let t = rng.random_range(0.0..TAU);

        let closed_state = evolve_pure_closed(&p, t);
        let phase = Complex64::new(0.0, t).exp();
        let matrix_state = h
            .unitary_at(t)
            .matmul(&pure_product_state(&p))
            .unwrap()
            .scale(phase);
        worst = worst.max(closed_state.sub(&matrix_state).unwrap().frobenius_norm());

        for axis in [BlochAxis::Z, BlochAxis::X] {
            let b = random_bloch(&mut rng, axis);
            let closed_rho = evolve_bloch_closed(&b, t).unwrap();
            let matrix_rho = evolve_density(&bloch_product_state(&b).unwrap(), &h, t).unwrap();
            worst = worst.max(
                closed_rho
                    .matrix()
                    .sub(matrix_rho.matrix())
                    .unwrap()
                    .frobenius_norm(),
            );
        }

        let closed_u = unitary_asymmetry_pure_closed(&p, t);
        let matrix_u = unitary_asymmetry(&pure_density(&p), &h.unitary_at(t)).unwrap();
        worst = worst.max((closed_u - matrix_u).abs());
    }
    let elapsed = start.elapsed();
    report(
        2,
        "closed forms agree with the matrix pipeline on dense grids and 500 samples within a minute",
        worst,
        1e-9,
        worst <= 1e-9 && elapsed < Duration::from_secs(60),
    );
}

#[test]
fn criterion_3_asymmetry_is_conserved_under_the_dynamics() {
    let h = MdiHamiltonian::canonical();
    let mut rng = ChaCha8Rng::seed_from_u64(0xd1ce);
    let mut worst = 0f64;
    for _ in 0..500 {
        let rho = random_density(&mut rng, 4);
        let t = rng.random_range(0.0..TAU);
        let before = wy_asymmetry(&rho, &h).unwrap();
        let after = wy_asymmetry(&evolve_density(&rho, &h, t).unwrap(), &h).unwrap();
        worst = worst
            .max((after.raw - before.raw).abs())
            .max((after.normalized - before.normalized).abs());
    }
    report(
        3,
        "asymmetry of 500 random mixed states is unchanged by time evolution",
        worst,
        1e-9,
        worst <= 1e-9,
    );
}

#[test]
fn criterion_4_bloch_family_identities_hold_along_both_diagonals() {
    let h = MdiHamiltonian::canonical();
    let mut worst = 0f64;
    for k in 0..=20 {
        let r = -1.0 + f64::from(k) / 10.0;
        let oracle = |axis: BlochAxis, r_a: f64, r_b: f64| {
            let rho = bloch_product_state(&BlochProductParams::new(axis, r_a, r_b).unwrap());
            wy_asymmetry(&rho.unwrap(), &h).unwrap().normalized
        };
        let checks = [
            (closed_form_rho3(r, r).unwrap(), 0.0),
            (closed_form_rho3(r, -r).unwrap(), 4.0 * r * r / 9.0),
            (closed_form_rho1(r, r).unwrap(), r * r),
            (closed_form_rho1(r, -r).unwrap(), r * r / 9.0),
            (oracle(BlochAxis::Z, r, r), 0.0),
            (oracle(BlochAxis::Z, r, -r), 4.0 * r * r / 9.0),
            (oracle(BlochAxis::X, r, r), r * r),
            (oracle(BlochAxis::X, r, -r), r * r / 9.0),
        ];
        for (got, want) in checks {
            worst = worst.max((got - want).abs());
        }
    }
    report(
        4,
        "aligned and anti-aligned Bloch identities hold at 21 lengths",
        worst,
        1e-10,
        worst <= 1e-10,
    );
}

#[test]
fn criterion_5_local_asymmetry_landmark_period_and_closed_forms() {
    let h = MdiHamiltonian::canonical();
    let mut worst = 0f64;

    let balanced = pure_density(&angles(FRAC_PI_2, FRAC_PI_2));
    let landmark = local_asymmetry(&balanced, &h, 0.0, Subsystem::A).unwrap();
    worst = worst.max((landmark.normalized - 5.0 / 9.0).abs());

    for (theta_a, theta_b) in [(FRAC_PI_2, FRAC_PI_2), (0.7, 2.3), (FRAC_PI_3, 1.25 * PI)] {
        let rho = pure_density(&angles(theta_a, theta_b));
        let half = 360usize;
        let sample: Vec<f64> = (0..=2 * half)
            .map(|j| {
                let t = TAU * (j as f64) / ((2 * half) as f64);
                local_asymmetry(&rho, &h, t, Subsystem::A).unwrap().normalized
            })
            .collect();
        for j in 0..=half {
            worst = worst.max((sample[j] - sample[j + half]).abs());
        }
    }

    for i in 0..51usize {
        let r_a = -1.0 + (i as f64) / 25.0;
        for j in 0..51usize {
            let r_b = -1.0 + (j as f64) / 25.0;
            let z = bloch_product_state(&BlochProductParams::new(BlochAxis::Z, r_a, r_b).unwrap())
                .unwrap();
            let x = bloch_product_state(&BlochProductParams::new(BlochAxis::X, r_a, r_b).unwrap())
                .unwrap();
            for k in 0..51usize {
                let t = PI * (k as f64) / 50.0;
                let z_oracle = local_asymmetry(&z, &h, t, Subsystem::A).unwrap().normalized;
                let z_closed = local_closed_form_rho3(r_a, r_b, t).unwrap();
                let x_oracle = local_asymmetry(&x, &h, t, Subsystem::A).unwrap().raw;
                let x_closed = local_closed_form_rho1(r_a, r_b, t).unwrap();
                worst = worst
                    .max((z_oracle - z_closed).abs())
                    .max((x_oracle - x_closed).abs());
            }
        }
    }
    report(
        5,
        "local asymmetry landmark, pi periodicity, and closed forms on a 51^3 lattice",
        worst,
        1e-9,
        worst <= 1e-9,
    );
}

#[test]
fn criterion_6_propagator_sensitivity_peaks_and_floors() {
    let h = MdiHamiltonian::canonical();
    let mut worst = 0f64;
    let both = |theta_a: f64, theta_b: f64, t: f64| {
        let p = angles(theta_a, theta_b);
        let closed = unitary_asymmetry_pure_closed(&p, t);
        let matrix = unitary_asymmetry(&pure_density(&p), &h.unitary_at(t)).unwrap();
        (closed, matrix)
    };
    for (theta_a, theta_b, t) in [
        (FRAC_PI_2, FRAC_PI_2, FRAC_PI_3),
        (PI, 0.0, FRAC_PI_2),
        (0.0, PI, FRAC_PI_2),
    ] {
        let (closed, matrix) = both(theta_a, theta_b, t);
        worst = worst.max((closed - 1.0).abs()).max((matrix - 1.0).abs());
    }
    for k in 0..100 {
        let theta_b = f64::from(k) / 99.0 * TAU;
        let (closed, matrix) = both(FRAC_PI_2, theta_b, PI);
        worst = worst.max((closed - 1.0).abs()).max((matrix - 1.0).abs());
    }
    for k in 0..100 {
        let t = f64::from(k) / 99.0 * TAU;
        for theta in [0.0, PI] {
            let (closed, matrix) = both(theta, theta, t);
            worst = worst.max(closed.abs()).max(matrix.abs());
        }
    }
    report(
        6,
        "propagator sensitivity reaches one at the peak set and zero on pole products",
        worst,
        1e-9,
        worst <= 1e-9,
    );
}

#[test]
fn criterion_7_conserved_state_still_responds_to_the_propagator() {
    let h = MdiHamiltonian::canonical();
    let singlet = DensityMatrix::from_pure(&bell_psi_minus()).unwrap();
    let conserved = wy_asymmetry(&singlet, &h).unwrap().raw;

    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let ket01 = ComplexMatrix::column_vector(&[zero, one, zero, zero]);
    let sensitivity = unitary_asymmetry(
        &DensityMatrix::from_pure(&ket01).unwrap(),
        &h.unitary_at(FRAC_PI_2),
    )
    .unwrap();
    let worst = conserved.max(1.0 - sensitivity);
    report(
        7,
        "singlet carries no generator asymmetry yet a basis state saturates propagator sensitivity",
        worst,
        1e-9,
        conserved <= 1e-12 && sensitivity >= 1.0 - 1e-9,
    );
}

#[test]
fn criterion_8_entanglement_peak_and_existence_sweep() {
    let start = Instant::now();
    let h = MdiHamiltonian::canonical();
    let flipped = angles(0.0, PI);
    let closed = concurrence_pure(&evolve_pure_closed(&flipped, FRAC_PI_4)).unwrap();
    let matrix = concurrence(&evolve_density(&pure_density(&flipped), &h, FRAC_PI_4).unwrap());
    let worst = (closed - 1.0).abs().max((matrix.unwrap() - 1.0).abs());

    let mut thinnest = f64::INFINITY;
    let mut pass = true;
    for i in 0..101usize {
        let theta_a = (i as f64) / 100.0 * TAU;
        for j in 0..101usize {
            let theta_b = (j as f64) / 100.0 * TAU;
            let p = angles(theta_a, theta_b);
            if closed_form_pure(&p) <= 1e-6 {
                continue;
            }
            let mut peak = 0f64;
            for k in 0..100usize {
                let t = PI * (k as f64) / 99.0;
                peak = peak.max(concurrence_pure(&evolve_pure_closed(&p, t)).unwrap());
                if peak > 1e-3 {
                    break;
                }
            }
            thinnest = thinnest.min(peak);
            pass &= peak > 1e-6;
        }
    }
    let elapsed = start.elapsed();
    let ok = worst <= 1e-9 && pass && elapsed < Duration::from_secs(120);
    report(
        8,
        &format!(
            "entanglement peaks at one for a flipped pair and appears wherever asymmetry does \
             (weakest peak {thinnest:.3e})"
        ),
        worst,
        1e-9,
        ok,
    );
}

#[test]
fn criterion_9_figure_output_is_byte_identical_across_workers_and_runs() {
    let dir = tempfile::tempdir().unwrap();
    let runs = [("a.csv", "1"), ("b.csv", "4"), ("c.csv", "8"), ("d.csv", "4")];
    let mut blobs = Vec::new();
    for (name, workers) in runs {
        let out = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_mdi-asym"))
            .args([
                "figure",
                "fig1",
                "--workers",
                workers,
                "--out",
                out.to_str().unwrap(),
            ])
            .output()
            .expect("binary runs");
        assert!(status.status.success());
        blobs.push(std::fs::read(&out).unwrap());
    }
    let identical = blobs.iter().all(|b| *b == blobs[0]);
    report(
        9,
        "default full-resolution scan repeats byte for byte across 1, 4, 8 workers and reruns",
        if identical { 0.0 } else { 1.0 },
        0.0,
        identical,
    );
}
