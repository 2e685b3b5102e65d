//! Two-parameter sweep engine behind the CLI figures.
//!
//! A scan walks a rectangular grid over two of the model parameters, holding
//! the remaining ones fixed, and evaluates one measure at every node. Each
//! measure can be evaluated along its closed-form expression, along the
//! generic matrix pipeline (the oracle), or along both at once, in which case
//! the pointwise absolute deviation is recorded as well.
//!
//! Grid geometry uses `node(j) = min + (max - min) * (j / (count - 1))`, so
//! on dyadic counts the midpoint and quarter points of `[0, 2pi]` land
//! exactly on `pi` and `pi/2`. Rows follow the first axis, columns the
//! second, and results are stored row-major. Evaluation order never affects
//! the output: every node is computed independently into its own slot, so a
//! scan is bitwise reproducible for any worker count.

use std::f64::consts::TAU;
use std::sync::Mutex;

use rayon::prelude::*;

use crate::asymmetry::{
    closed_form_pure, closed_form_rho1, closed_form_rho3, local_asymmetry,
    local_closed_form_rho1, local_closed_form_rho3, unitary_asymmetry,
    unitary_asymmetry_pure_closed, wy_asymmetry,
};
use crate::entanglement::{concurrence, concurrence_pure};
use crate::error::{Error, Result};
use crate::linalg::Subsystem;
use crate::model::{
    bloch_product_state, evolve_density, evolve_pure_closed, pure_product_state, BlochAxis,
    BlochProductParams, DensityMatrix, MdiHamiltonian, PureProductParams,
};

/// A sweepable model parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Param {
    ThetaA,
    ThetaB,
    RA,
    RB,
    T,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::ThetaA => "theta_a",
            Param::ThetaB => "theta_b",
            Param::RA => "r_a",
            Param::RB => "r_b",
            Param::T => "t",
        }
    }

    /// Admissible closed range, if the parameter is bounded.
    fn range(self) -> Option<(f64, f64)> {
        match self {
            Param::ThetaA | Param::ThetaB => Some((0.0, TAU)),
            Param::RA | Param::RB => Some((-1.0, 1.0)),
            Param::T => None,
        }
    }
}

/// One grid axis: `count` evenly spaced nodes from `min` to `max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub param: Param,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(param: Param, min: f64, max: f64, count: usize) -> Self {
        Self {
            param,
            min,
            max,
            count,
        }
    }

    /// `min + (max - min) * (j / (count - 1))`.
    pub fn node(&self, j: usize) -> f64 {
        self.min + (self.max - self.min) * (j as f64 / (self.count - 1) as f64)
    }
}

/// What a scan computes at each node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    /// Normalized asymmetry of a pure product state.
    GlobalPure,
    /// Normalized asymmetry of the x-polarized product family.
    GlobalRho1,
    /// Normalized asymmetry of the z-polarized product family.
    GlobalRho3,
    /// Normalized local asymmetry of an evolved pure product state.
    LocalPure,
    /// Raw local asymmetry of the evolved x-polarized family.
    LocalRho1,
    /// Normalized local asymmetry of the evolved z-polarized family.
    LocalRho3,
    /// Asymmetry of an evolved pure product state relative to the propagator.
    UnitaryPure,
    /// Concurrence of an evolved pure product state.
    ConcurrencePure,
}

const TWO_ANGLES: &[Param] = &[Param::ThetaA, Param::ThetaB];
const TWO_LENGTHS: &[Param] = &[Param::RA, Param::RB];
const ANGLES_AND_TIME: &[Param] = &[Param::ThetaA, Param::ThetaB, Param::T];
const LENGTHS_AND_TIME: &[Param] = &[Param::RA, Param::RB, Param::T];

impl Measure {
    pub fn name(self) -> &'static str {
        match self {
            Measure::GlobalPure => "global-pure",
            Measure::GlobalRho1 => "global-rho1",
            Measure::GlobalRho3 => "global-rho3",
            Measure::LocalPure => "local-pure",
            Measure::LocalRho1 => "local-rho1",
            Measure::LocalRho3 => "local-rho3",
            Measure::UnitaryPure => "unitary-pure",
            Measure::ConcurrencePure => "concurrence-pure",
        }
    }

    /// The full parameter set the measure depends on.
    pub fn requires(self) -> &'static [Param] {
        match self {
            Measure::GlobalPure => TWO_ANGLES,
            Measure::GlobalRho1 | Measure::GlobalRho3 => TWO_LENGTHS,
            Measure::LocalPure | Measure::UnitaryPure | Measure::ConcurrencePure => {
                ANGLES_AND_TIME
            }
            Measure::LocalRho1 | Measure::LocalRho3 => LENGTHS_AND_TIME,
        }
    }

    pub fn has_closed_form(self) -> bool {
        !matches!(self, Measure::LocalPure)
    }

    /// Scale of the emitted values, recorded in scan output headers.
    pub fn scale_label(self) -> &'static str {
        match self {
            Measure::GlobalPure
            | Measure::GlobalRho1
            | Measure::GlobalRho3
            | Measure::LocalPure
            | Measure::LocalRho3 => "normalized",
            Measure::LocalRho1 => "raw",
            Measure::UnitaryPure => "unitary",
            Measure::ConcurrencePure => "concurrence",
        }
    }
}

/// Which evaluation pipeline fills the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalPath {
    ClosedForm,
    Oracle,
    Both,
}

/// A complete scan description.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub axis1: Axis,
    pub axis2: Axis,
    pub fixed: Vec<(Param, f64)>,
    pub measure: Measure,
    pub path: EvalPath,
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        let required = self.measure.requires();
        if self.axis1.param == self.axis2.param {
            return Err(Error::InvalidGrid(format!(
                "both axes sweep {}",
                self.axis1.param.name()
            )));
        }
        for axis in [&self.axis1, &self.axis2] {
            if !required.contains(&axis.param) {
                return Err(Error::InvalidGrid(format!(
                    "{} does not apply to measure {}",
                    axis.param.name(),
                    self.measure.name()
                )));
            }
            if axis.count < 2 {
                return Err(Error::InvalidGrid(format!(
                    "axis {} needs at least 2 nodes, got {}",
                    axis.param.name(),
                    axis.count
                )));
            }
            if !axis.min.is_finite() || !axis.max.is_finite() || axis.min >= axis.max {
                return Err(Error::InvalidGrid(format!(
                    "axis {} range [{}, {}] is not an increasing finite interval",
                    axis.param.name(),
                    axis.min,
                    axis.max
                )));
            }
            if let Some((lo, hi)) = axis.param.range() {
                if axis.min < lo || axis.max > hi {
                    return Err(Error::InvalidGrid(format!(
                        "axis {} range [{}, {}] leaves the domain [{}, {}]",
                        axis.param.name(),
                        axis.min,
                        axis.max,
                        lo,
                        hi
                    )));
                }
            }
        }
        let mut expected: Vec<Param> = required
            .iter()
            .copied()
            .filter(|p| *p != self.axis1.param && *p != self.axis2.param)
            .collect();
        for &(param, value) in &self.fixed {
            let Some(pos) = expected.iter().position(|p| *p == param) else {
                return Err(Error::InvalidGrid(format!(
                    "fixed parameter {} is not free for measure {}",
                    param.name(),
                    self.measure.name()
                )));
            };
            expected.remove(pos);
            if !value.is_finite() {
                return Err(Error::InvalidGrid(format!(
                    "fixed parameter {} is not finite",
                    param.name()
                )));
            }
            if let Some((lo, hi)) = param.range() {
                if value < lo || value > hi {
                    return Err(Error::InvalidGrid(format!(
                        "fixed parameter {} = {} leaves the domain [{}, {}]",
                        param.name(),
                        value,
                        lo,
                        hi
                    )));
                }
            }
        }
        if let Some(missing) = expected.first() {
            return Err(Error::InvalidGrid(format!(
                "measure {} needs a value for {}",
                self.measure.name(),
                missing.name()
            )));
        }
        if self.path != EvalPath::Oracle && !self.measure.has_closed_form() {
            return Err(Error::InvalidGrid(format!(
                "measure {} has no closed form; use the oracle path",
                self.measure.name()
            )));
        }
        Ok(())
    }
}

/// Row-major grid values, with pointwise closed-vs-oracle deviations when the
/// scan ran both pipelines.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub spec: GridSpec,
    pub values: Vec<f64>,
    pub deviations: Option<Vec<f64>>,
    pub max_deviation: Option<f64>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
struct PointParams {
    theta_a: f64,
    theta_b: f64,
    r_a: f64,
    r_b: f64,
    t: f64,
}

impl PointParams {
    fn set(&mut self, param: Param, value: f64) {
        match param {
            Param::ThetaA => self.theta_a = value,
            Param::ThetaB => self.theta_b = value,
            Param::RA => self.r_a = value,
            Param::RB => self.r_b = value,
            Param::T => self.t = value,
        }
    }

    fn angles(&self) -> Result<PureProductParams> {
        PureProductParams::new(self.theta_a, self.theta_b)
    }

    fn lengths(&self, axis: BlochAxis) -> Result<BlochProductParams> {
        BlochProductParams::new(axis, self.r_a, self.r_b)
    }
}

fn assemble(spec: &GridSpec, x1: f64, x2: f64) -> PointParams {
    let mut point = PointParams::default();
    point.set(spec.axis1.param, x1);
    point.set(spec.axis2.param, x2);
    for &(param, value) in &spec.fixed {
        point.set(param, value);
    }
    point
}

fn closed_point(measure: Measure, point: &PointParams) -> Result<f64> {
    match measure {
        Measure::GlobalPure => Ok(closed_form_pure(&point.angles()?)),
        Measure::GlobalRho1 => closed_form_rho1(point.r_a, point.r_b),
        Measure::GlobalRho3 => closed_form_rho3(point.r_a, point.r_b),
        Measure::LocalPure => Err(Error::InvalidGrid(
            "local-pure has no closed form".to_string(),
        )),
        Measure::LocalRho1 => local_closed_form_rho1(point.r_a, point.r_b, point.t),
        Measure::LocalRho3 => local_closed_form_rho3(point.r_a, point.r_b, point.t),
        Measure::UnitaryPure => Ok(unitary_asymmetry_pure_closed(&point.angles()?, point.t)),
        Measure::ConcurrencePure => {
            concurrence_pure(&evolve_pure_closed(&point.angles()?, point.t))
        }
    }
}

fn oracle_point(measure: Measure, point: &PointParams, h: &MdiHamiltonian) -> Result<f64> {
    match measure {
        Measure::GlobalPure => {
            let rho = DensityMatrix::from_pure(&pure_product_state(&point.angles()?))?;
            Ok(wy_asymmetry(&rho, h)?.normalized)
        }
        Measure::GlobalRho1 => {
            let rho = bloch_product_state(&point.lengths(BlochAxis::X)?)?;
            Ok(wy_asymmetry(&rho, h)?.normalized)
        }
        Measure::GlobalRho3 => {
            let rho = bloch_product_state(&point.lengths(BlochAxis::Z)?)?;
            Ok(wy_asymmetry(&rho, h)?.normalized)
        }
        Measure::LocalPure => {
            let rho = DensityMatrix::from_pure(&pure_product_state(&point.angles()?))?;
            Ok(local_asymmetry(&rho, h, point.t, Subsystem::A)?.normalized)
        }
        Measure::LocalRho1 => {
            let rho = bloch_product_state(&point.lengths(BlochAxis::X)?)?;
            Ok(local_asymmetry(&rho, h, point.t, Subsystem::A)?.raw)
        }
        Measure::LocalRho3 => {
            let rho = bloch_product_state(&point.lengths(BlochAxis::Z)?)?;
            Ok(local_asymmetry(&rho, h, point.t, Subsystem::A)?.normalized)
        }
        Measure::UnitaryPure => {
            let rho = DensityMatrix::from_pure(&pure_product_state(&point.angles()?))?;
            unitary_asymmetry(&rho, &h.unitary_at(point.t))
        }
        Measure::ConcurrencePure => {
            let rho = DensityMatrix::from_pure(&pure_product_state(&point.angles()?))?;
            concurrence(&evolve_density(&rho, h, point.t)?)
        }
    }
}

fn eval_point(
    spec: &GridSpec,
    point: &PointParams,
    h: &MdiHamiltonian,
) -> Result<(f64, Option<f64>)> {
    match spec.path {
        EvalPath::ClosedForm => Ok((closed_point(spec.measure, point)?, None)),
        EvalPath::Oracle => Ok((oracle_point(spec.measure, point, h)?, None)),
        EvalPath::Both => {
            let closed = closed_point(spec.measure, point)?;
            let oracle = oracle_point(spec.measure, point, h)?;
            Ok((closed, Some((closed - oracle).abs())))
        }
    }
}

/// Run a scan on the global thread pool.
pub fn run_scan(spec: &GridSpec) -> Result<ScanResult> {
    spec.validate()?;
    let h = MdiHamiltonian::canonical();
    let rows = spec.axis1.count;
    let cols = spec.axis2.count;
    let mut values = vec![0.0; rows * cols];
    let mut deviations = match spec.path {
        EvalPath::Both => Some(vec![0.0; rows * cols]),
        _ => None,
    };

    let first_error: Mutex<Option<(usize, usize, Error)>> = Mutex::new(None);
    let record = |row: usize, col: usize, err: Error| {
        let mut slot = first_error.lock().unwrap();
        let replace = match &*slot {
            None => true,
            Some((r, c, _)) => (row, col) < (*r, *c),
        };
        if replace {
            *slot = Some((row, col, err));
        }
    };

    let fill_row = |i: usize, row_values: &mut [f64], mut row_devs: Option<&mut [f64]>| {
        let x1 = spec.axis1.node(i);
        for j in 0..cols {
            let point = assemble(spec, x1, spec.axis2.node(j));
            match eval_point(spec, &point, &h) {
                Ok((value, dev)) => {
                    row_values[j] = value;
                    if let (Some(devs), Some(d)) = (row_devs.as_deref_mut(), dev) {
                        devs[j] = d;
                    }
                }
                Err(err) => record(i, j, err),
            }
        }
    };

    match deviations.as_mut() {
        Some(devs) => values
            .par_chunks_mut(cols)
            .zip(devs.par_chunks_mut(cols))
            .enumerate()
            .for_each(|(i, (row_values, row_devs))| fill_row(i, row_values, Some(row_devs))),
        None => values
            .par_chunks_mut(cols)
            .enumerate()
            .for_each(|(i, row_values)| fill_row(i, row_values, None)),
    }

    if let Some((row, col, source)) = first_error.into_inner().unwrap() {
        return Err(Error::AtGridPoint {
            row,
            col,
            source: Box::new(source),
        });
    }
    if !values.iter().all(|v| v.is_finite()) {
        return Err(Error::NonFinite("scan values"));
    }
    let max_deviation = deviations
        .as_ref()
        .map(|d| d.iter().cloned().fold(0.0, f64::max));
    Ok(ScanResult {
        spec: spec.clone(),
        values,
        deviations,
        max_deviation,
    })
}

/// Run a scan on a private thread pool with the given number of workers.
/// The output is bitwise identical for every worker count.
pub fn run_scan_with_workers(spec: &GridSpec, workers: usize) -> Result<ScanResult> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::ThreadPool(e.to_string()))?;
    pool.install(|| run_scan(spec))
}

/// Location of an extreme grid value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub index1: usize,
    pub index2: usize,
    pub coord1: f64,
    pub coord2: f64,
}

/// Extremes of a finished scan. Ties resolve to the lowest row-major index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Landmarks {
    pub max: f64,
    pub argmax: GridPoint,
    pub min: f64,
    pub argmin: GridPoint,
    pub max_deviation: Option<f64>,
}

pub fn landmark_report(result: &ScanResult) -> Landmarks {
    let cols = result.spec.axis2.count;
    let locate = |flat: usize| GridPoint {
        index1: flat / cols,
        index2: flat % cols,
        coord1: result.spec.axis1.node(flat / cols),
        coord2: result.spec.axis2.node(flat % cols),
    };
    let mut max = f64::NEG_INFINITY;
    let mut min = f64::INFINITY;
    let mut max_at = 0;
    let mut min_at = 0;
    for (flat, &v) in result.values.iter().enumerate() {
        if v > max {
            max = v;
            max_at = flat;
        }
        if v < min {
            min = v;
            min_at = flat;
        }
    }
    Landmarks {
        max,
        argmax: locate(max_at),
        min,
        argmin: locate(min_at),
        max_deviation: result.max_deviation,
    }
}
