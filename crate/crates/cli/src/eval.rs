//! Single-point evaluation: computes one measure through the matrix
//! pipeline, pairs it with the closed form where one exists, and prints
//! the result as a JSON object.

use std::f64::consts::PI;

use serde::Serialize;

use mdi_asymmetry::asymmetry::{
    closed_form_pure, closed_form_rho1, closed_form_rho3, local_asymmetry, local_closed_form_rho1,
    local_closed_form_rho3, unitary_asymmetry, unitary_asymmetry_pure_closed, wy_asymmetry,
};
use mdi_asymmetry::entanglement::{concurrence, concurrence_pure};
use mdi_asymmetry::scan::{Measure, Param};
use mdi_asymmetry::{
    bloch_product_state, evolve_density, evolve_pure_closed, pure_product_state, BlochAxis,
    BlochProductParams, DensityMatrix, MdiHamiltonian, PureProductParams, Subsystem,
};

use crate::{CliError, EvalArgs, MeasureArg};

impl MeasureArg {
    fn to_core(self) -> Measure {
        match self {
            MeasureArg::GlobalPure => Measure::GlobalPure,
            MeasureArg::GlobalRho1 => Measure::GlobalRho1,
            MeasureArg::GlobalRho3 => Measure::GlobalRho3,
            MeasureArg::LocalPure => Measure::LocalPure,
            MeasureArg::LocalRho1 => Measure::LocalRho1,
            MeasureArg::LocalRho3 => Measure::LocalRho3,
            MeasureArg::UnitaryPure => Measure::UnitaryPure,
            MeasureArg::ConcurrencePure => Measure::ConcurrencePure,
        }
    }
}

#[derive(Serialize)]
struct EvalRecord {
    measure: &'static str,
    scale: &'static str,
    raw: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    normalized: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    deviation: Option<f64>,
}

struct Point {
    theta_a: f64,
    theta_b: f64,
    r_a: f64,
    r_b: f64,
    t: f64,
}

fn flag_name(param: Param) -> &'static str {
    match param {
        Param::ThetaA => "--theta-a",
        Param::ThetaB => "--theta-b",
        Param::RA => "--r-a",
        Param::RB => "--r-b",
        Param::T => "--t",
    }
}

/// Check that exactly the measure's parameter set was supplied and collect
/// it, applying the degree conversion to angles and time.
fn collect(args: &EvalArgs, measure: Measure) -> Result<Point, CliError> {
    let deg = PI / 180.0;
    let angle = |v: f64| if args.deg { v * deg } else { v };
    let all = [Param::ThetaA, Param::ThetaB, Param::RA, Param::RB, Param::T];
    let supplied = |param: Param| match param {
        Param::ThetaA => args.theta_a,
        Param::ThetaB => args.theta_b,
        Param::RA => args.r_a,
        Param::RB => args.r_b,
        Param::T => args.t,
    };
    let required = measure.requires();
    let mut point = Point {
        theta_a: 0.0,
        theta_b: 0.0,
        r_a: 0.0,
        r_b: 0.0,
        t: 0.0,
    };
    for param in all {
        let value = supplied(param);
        let needed = required.contains(&param);
        match (value, needed) {
            (Some(v), true) => {
                let v = match param {
                    Param::ThetaA | Param::ThetaB | Param::T => angle(v),
                    Param::RA | Param::RB => v,
                };
                match param {
                    Param::ThetaA => point.theta_a = v,
                    Param::ThetaB => point.theta_b = v,
                    Param::RA => point.r_a = v,
                    Param::RB => point.r_b = v,
                    Param::T => point.t = v,
                }
            }
            (None, true) => {
                return Err(CliError::Usage(format!(
                    "{} requires {}",
                    measure.name(),
                    flag_name(param)
                )));
            }
            (Some(_), false) => {
                return Err(CliError::Usage(format!(
                    "{} does not apply to {}",
                    flag_name(param),
                    measure.name()
                )));
            }
            (None, false) => {}
        }
    }
    Ok(point)
}

pub(crate) fn cmd_eval(args: &EvalArgs) -> Result<(), CliError> {
    let measure = args.measure.to_core();
    let point = collect(args, measure)?;
    let h = MdiHamiltonian::canonical();

    let angles = || PureProductParams::new(point.theta_a, point.theta_b);
    let lengths = |axis: BlochAxis| BlochProductParams::new(axis, point.r_a, point.r_b);

    let record = match measure {
        Measure::GlobalPure => {
            let rho = DensityMatrix::from_pure(&pure_product_state(&angles()?))?;
            let value = wy_asymmetry(&rho, &h)?;
            let closed = closed_form_pure(&angles()?);
            finish(measure, value.raw, Some(value.normalized), closed, value.normalized)
        }
        Measure::GlobalRho1 => {
            let rho = bloch_product_state(&lengths(BlochAxis::X)?)?;
            let value = wy_asymmetry(&rho, &h)?;
            let closed = closed_form_rho1(point.r_a, point.r_b)?;
            finish(measure, value.raw, Some(value.normalized), closed, value.normalized)
        }
        Measure::GlobalRho3 => {
            let rho = bloch_product_state(&lengths(BlochAxis::Z)?)?;
            let value = wy_asymmetry(&rho, &h)?;
            let closed = closed_form_rho3(point.r_a, point.r_b)?;
            finish(measure, value.raw, Some(value.normalized), closed, value.normalized)
        }
        Measure::LocalPure => {
            let rho = DensityMatrix::from_pure(&pure_product_state(&angles()?))?;
            let value = local_asymmetry(&rho, &h, point.t, Subsystem::A)?;
            EvalRecord {
                measure: measure.name(),
                scale: measure.scale_label(),
                raw: value.raw,
                normalized: Some(value.normalized),
                closed_form: None,
                deviation: None,
            }
        }
        Measure::LocalRho1 => {
            let rho = bloch_product_state(&lengths(BlochAxis::X)?)?;
            let value = local_asymmetry(&rho, &h, point.t, Subsystem::A)?;
            let closed = local_closed_form_rho1(point.r_a, point.r_b, point.t)?;
            finish(measure, value.raw, Some(value.normalized), closed, value.raw)
        }
        Measure::LocalRho3 => {
            let rho = bloch_product_state(&lengths(BlochAxis::Z)?)?;
            let value = local_asymmetry(&rho, &h, point.t, Subsystem::A)?;
            let closed = local_closed_form_rho3(point.r_a, point.r_b, point.t)?;
            finish(measure, value.raw, Some(value.normalized), closed, value.normalized)
        }
        Measure::UnitaryPure => {
            let rho = DensityMatrix::from_pure(&pure_product_state(&angles()?))?;
            let value = unitary_asymmetry(&rho, &h.unitary_at(point.t))?;
            let closed = unitary_asymmetry_pure_closed(&angles()?, point.t);
            finish(measure, value, None, closed, value)
        }
        Measure::ConcurrencePure => {
            let rho = DensityMatrix::from_pure(&pure_product_state(&angles()?))?;
            let value = concurrence(&evolve_density(&rho, &h, point.t)?)?;
            let closed = concurrence_pure(&evolve_pure_closed(&angles()?, point.t))?;
            finish(measure, value, None, closed, value)
        }
    };
    println!("{}", serde_json::to_string(&record).expect("serializable"));
    Ok(())
}

/// Assemble a record whose deviation compares the closed form against the
/// matrix value on the measure's contract scale.
fn finish(
    measure: Measure,
    raw: f64,
    normalized: Option<f64>,
    closed: f64,
    contract_value: f64,
) -> EvalRecord {
    EvalRecord {
        measure: measure.name(),
        scale: measure.scale_label(),
        raw,
        normalized,
        closed_form: Some(closed),
        deviation: Some((closed - contract_value).abs()),
    }
}
