//! The two-dipole model itself: the interaction Hamiltonian, the product-state
//! families used as initial conditions, exact propagators, and the Bell-basis
//! decomposition of pure product states.
//!
//! Conventions: qubit a is the first tensor factor, computational basis order
//! is |00>, |01>, |10>, |11>, and hbar = 1 so time enters only through the
//! dimensionless phase `t`.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, EigenSystem, Subsystem, HERMITIAN_TOL, PSD_CLAMP};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap()
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]).unwrap()
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::diagonal(&[c(1.0, 0.0), c(-1.0, 0.0)])
}

/// The four Bell states as 4x1 column vectors.
pub fn bell_psi_plus() -> ComplexMatrix {
    bell(0.0, 1.0, 1.0, 0.0)
}

pub fn bell_psi_minus() -> ComplexMatrix {
    bell(0.0, 1.0, -1.0, 0.0)
}

pub fn bell_phi_plus() -> ComplexMatrix {
    bell(1.0, 0.0, 0.0, 1.0)
}

pub fn bell_phi_minus() -> ComplexMatrix {
    bell(1.0, 0.0, 0.0, -1.0)
}

fn bell(a: f64, b: f64, k: f64, d: f64) -> ComplexMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::column_vector(&[c(a * s, 0.0), c(b * s, 0.0), c(k * s, 0.0), c(d * s, 0.0)])
}

/// Magnetic dipole-dipole interaction Hamiltonian for two spins,
///
/// ```text
/// H = (D/2) [ sum_k sigma_k x sigma_k - 3 (n.sigma) x (n.sigma) ]
/// ```
///
/// with coupling `D` and unit inter-dipole axis `n`. The factor 1/2 fixes the
/// normalization so that `D = 1`, `n = z` gives the canonical matrix
///
/// ```text
/// (1/2) (sigma_x x sigma_x + sigma_y x sigma_y - 2 sigma_z x sigma_z)
/// ```
///
/// with spectrum {2, 0, -1, -1}: the triplet |psi+> at 2, the singlet |psi->
/// at 0, and the doubly degenerate {|00>, |11>} block at -1. The
/// eigendecomposition is computed once and cached.
#[derive(Debug, Clone)]
pub struct MdiHamiltonian {
    coupling: f64,
    axis: [f64; 3],
    matrix: ComplexMatrix,
    eigen: EigenSystem,
}

impl MdiHamiltonian {
    pub fn new(coupling: f64, axis: [f64; 3]) -> Result<Self> {
        if !coupling.is_finite() || !axis.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite("MdiHamiltonian parameters"));
        }
        let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::BadAxis(norm));
        }
        let paulis = [pauli_x(), pauli_y(), pauli_z()];
        let mut sum = ComplexMatrix::zeros(4, 4);
        for p in &paulis {
            sum = sum.add(&p.kron(p))?;
        }
        let mut n_dot_sigma = ComplexMatrix::zeros(2, 2);
        for (k, p) in paulis.iter().enumerate() {
            n_dot_sigma = n_dot_sigma.add(&p.scale(c(axis[k], 0.0)))?;
        }
        let aligned = n_dot_sigma.kron(&n_dot_sigma);
        let matrix = sum
            .sub(&aligned.scale(c(3.0, 0.0)))?
            .scale(c(coupling / 2.0, 0.0));
        let eigen = matrix.eigh()?;
        Ok(Self {
            coupling,
            axis,
            matrix,
            eigen,
        })
    }

    /// `D = 1`, `n = z`: the Hamiltonian every closed form in this crate
    /// refers to.
    pub fn canonical() -> Self {
        Self::new(1.0, [0.0, 0.0, 1.0]).expect("canonical parameters are valid")
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn axis(&self) -> [f64; 3] {
        self.axis
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn eigen(&self) -> &EigenSystem {
        &self.eigen
    }

    /// Spectral width `lambda_max - lambda_min`; 3 for the canonical case.
    pub fn span(&self) -> f64 {
        self.eigen.span()
    }

    /// Propagator `U_t = exp(-i H t)` from the cached eigendecomposition.
    pub fn unitary_at(&self, t: f64) -> ComplexMatrix {
        self.eigen.apply(|lambda| c(0.0, -lambda * t).exp())
    }
}

/// Polar angles of a pure product state
/// `(cos(theta_a/2)|0> + sin(theta_a/2)|1>) x (cos(theta_b/2)|0> + sin(theta_b/2)|1>)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureProductParams {
    pub theta_a: f64,
    pub theta_b: f64,
}

impl PureProductParams {
    pub fn new(theta_a: f64, theta_b: f64) -> Result<Self> {
        for (name, value) in [("theta_a", theta_a), ("theta_b", theta_b)] {
            if !(0.0..=TAU).contains(&value) {
                return Err(Error::OutOfRange {
                    name,
                    value,
                    lo: 0.0,
                    hi: TAU,
                });
            }
        }
        Ok(Self { theta_a, theta_b })
    }

    /// Amplitudes (alpha_a, beta_a, alpha_b, beta_b).
    pub fn amplitudes(&self) -> (f64, f64, f64, f64) {
        (
            (self.theta_a / 2.0).cos(),
            (self.theta_a / 2.0).sin(),
            (self.theta_b / 2.0).cos(),
            (self.theta_b / 2.0).sin(),
        )
    }
}

/// The 4x1 product state vector for the given polar angles.
pub fn pure_product_state(p: &PureProductParams) -> ComplexMatrix {
    let (aa, ba, ab, bb) = p.amplitudes();
    ComplexMatrix::column_vector(&[
        c(aa * ab, 0.0),
        c(aa * bb, 0.0),
        c(ba * ab, 0.0),
        c(ba * bb, 0.0),
    ])
}

/// Bloch axis of the mixed product families: both dipoles polarized along x
/// or both along z.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlochAxis {
    X,
    Z,
}

/// Bloch lengths `r_a`, `r_b` in [-1, 1] for a product of single-qubit states
/// polarized along a common axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochProductParams {
    pub axis: BlochAxis,
    pub r_a: f64,
    pub r_b: f64,
}

impl BlochProductParams {
    pub fn new(axis: BlochAxis, r_a: f64, r_b: f64) -> Result<Self> {
        for (name, value) in [("r_a", r_a), ("r_b", r_b)] {
            if !value.is_finite() || !(-1.0..=1.0).contains(&value) {
                return Err(Error::OutOfRange {
                    name,
                    value,
                    lo: -1.0,
                    hi: 1.0,
                });
            }
        }
        Ok(Self { axis, r_a, r_b })
    }

    fn sigma(&self) -> ComplexMatrix {
        match self.axis {
            BlochAxis::X => pauli_x(),
            BlochAxis::Z => pauli_z(),
        }
    }
}

/// `(1/4)(1 + r_a sigma_j) x (1 + r_b sigma_j)` as a validated density matrix.
pub fn bloch_product_state(p: &BlochProductParams) -> Result<DensityMatrix> {
    let id = ComplexMatrix::identity(2);
    let sigma = p.sigma();
    let fa = id.add(&sigma.scale(c(p.r_a, 0.0)))?.scale(c(0.5, 0.0));
    let fb = id.add(&sigma.scale(c(p.r_b, 0.0)))?.scale(c(0.5, 0.0));
    DensityMatrix::new(fa.kron(&fb))
}

/// Validated density matrix: Hermitian, unit trace, positive semidefinite
/// within round-off, 2x2 or 4x4.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let n = mat.rows();
        if mat.cols() != n || (n != 2 && n != 4) {
            return Err(Error::WrongShape {
                op: "DensityMatrix::new",
                expected_rows: 4,
                expected_cols: 4,
                rows: mat.rows(),
                cols: mat.cols(),
            });
        }
        if !mat.is_finite() {
            return Err(Error::NonFinite("DensityMatrix::new"));
        }
        let res = mat.hermitian_residual();
        if res > HERMITIAN_TOL {
            return Err(Error::NotHermitian(res));
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > 1e-10 || tr.im.abs() > 1e-10 {
            return Err(Error::BadTrace(tr.re));
        }
        let eig = mat.eigh()?;
        let min = eig
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        if min < -PSD_CLAMP {
            return Err(Error::NotPositive(min));
        }
        Ok(Self { mat })
    }

    /// Projector |psi><psi| of a normalized state vector.
    pub fn from_pure(state: &ComplexMatrix) -> Result<Self> {
        let norm = state.frobenius_norm();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::NotNormalized(norm));
        }
        Self::new(state.outer(state)?)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    /// Reduction to one qubit.
    pub fn reduce(&self, keep: Subsystem) -> Result<ComplexMatrix> {
        self.mat.partial_trace(keep)
    }
}

/// Exact evolved pure product state,
///
/// ```text
/// |psi_t> = (alpha_a beta_b cos t - i beta_a alpha_b sin t) |01>
///         + (beta_a alpha_b cos t - i alpha_a beta_b sin t) |10>
///         + e^{2it} (alpha_a alpha_b |00> + beta_a beta_b |11>)
/// ```
///
/// for the canonical Hamiltonian. This carries a global phase `e^{it}`
/// relative to `U_t |psi>`; all downstream measures are phase-invariant, and
/// the tests pin both the phase-stripped agreement and the explicit factor.
pub fn evolve_pure_closed(p: &PureProductParams, t: f64) -> ComplexMatrix {
    let (aa, ba, ab, bb) = p.amplitudes();
    let (sin, cos) = t.sin_cos();
    let block_phase = c(0.0, 2.0 * t).exp();
    ComplexMatrix::column_vector(&[
        block_phase * (aa * ab),
        c(aa * bb * cos, -(ba * ab * sin)),
        c(ba * ab * cos, -(aa * bb * sin)),
        block_phase * (ba * bb),
    ])
}

/// `U_t rho U_t^dagger` for a 4x4 density matrix, revalidated.
pub fn evolve_density(rho: &DensityMatrix, h: &MdiHamiltonian, t: f64) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(Error::WrongShape {
            op: "evolve_density",
            expected_rows: 4,
            expected_cols: 4,
            rows: rho.dim(),
            cols: rho.dim(),
        });
    }
    let u = h.unitary_at(t);
    let evolved = u.matmul(rho.matrix())?.matmul(&u.adjoint())?;
    // Round-off symmetrization before revalidation.
    let herm = evolved
        .add(&evolved.adjoint())?
        .scale(c(0.5, 0.0));
    DensityMatrix::new(herm)
}

/// Evolved mixed product families in closed form, for the canonical
/// Hamiltonian.
///
/// For the z family the state stays diagonal apart from an exchange coherence
/// between |01> and |10>; for the x family the Bell populations are constant
/// while the psi+/phi+ coherence rotates at frequency 3 and the psi-/phi-
/// coherence at frequency 1.
pub fn evolve_bloch_closed(p: &BlochProductParams, t: f64) -> Result<DensityMatrix> {
    let rr = p.r_a * p.r_b;
    let mat = match p.axis {
        BlochAxis::Z => {
            let d = p.r_a - p.r_b;
            let (s2t, c2t) = (2.0 * t).sin_cos();
            let mut m = ComplexMatrix::zeros(4, 4);
            m.set(0, 0, c((1.0 + p.r_a) * (1.0 + p.r_b), 0.0));
            m.set(1, 1, c(1.0 - rr + d * c2t, 0.0));
            m.set(1, 2, c(0.0, d * s2t));
            m.set(2, 1, c(0.0, -(d * s2t)));
            m.set(2, 2, c(1.0 - rr - d * c2t, 0.0));
            m.set(3, 3, c((1.0 - p.r_a) * (1.0 - p.r_b), 0.0));
            m
        }
        BlochAxis::X => {
            let psi_p = bell_psi_plus();
            let psi_m = bell_psi_minus();
            let phi_p = bell_phi_plus();
            let phi_m = bell_phi_minus();
            let sum = p.r_b + p.r_a;
            let diff = p.r_b - p.r_a;
            let mut m = psi_p
                .outer(&psi_p)?
                .add(&phi_p.outer(&phi_p)?)?
                .scale(c(1.0 + rr, 0.0));
            m = m.add(
                &psi_m
                    .outer(&psi_m)?
                    .add(&phi_m.outer(&phi_m)?)?
                    .scale(c(1.0 - rr, 0.0)),
            )?;
            let fast = phi_p.outer(&psi_p)?.scale(c(0.0, 3.0 * t).exp());
            m = m.add(&fast.add(&fast.adjoint())?.scale(c(sum, 0.0)))?;
            let slow = phi_m.outer(&psi_m)?.scale(c(0.0, t).exp());
            m = m.add(&slow.add(&slow.adjoint())?.scale(c(diff, 0.0)))?;
            m
        }
    };
    DensityMatrix::new(mat.scale(c(0.25, 0.0)))
}

/// Bell-basis coefficients of a pure product state, ordered
/// (psi-, psi+, phi-, phi+).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellCoefficients {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
}

impl BellCoefficients {
    pub fn norm_sqr(&self) -> f64 {
        self.c1 * self.c1 + self.c2 * self.c2 + self.c3 * self.c3 + self.c4 * self.c4
    }

    /// `c1 |psi-> + c2 |psi+> + c3 |phi-> + c4 |phi+>`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let mut out = bell_psi_minus().scale(c(self.c1, 0.0));
        out = out.add(&bell_psi_plus().scale(c(self.c2, 0.0))).unwrap();
        out = out.add(&bell_phi_minus().scale(c(self.c3, 0.0))).unwrap();
        out.add(&bell_phi_plus().scale(c(self.c4, 0.0))).unwrap()
    }
}

/// Decompose a pure product state over the Bell basis.
pub fn bell_coefficients(p: &PureProductParams) -> BellCoefficients {
    let (aa, ba, ab, bb) = p.amplitudes();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    BellCoefficients {
        c1: s * (aa * bb - ba * ab),
        c2: s * (aa * bb + ba * ab),
        c3: s * (aa * ab - ba * bb),
        c4: s * (aa * ab + ba * bb),
    }
}
