//! Figure presets: each id maps to one or more grid scans with fixed
//! parameter conventions.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI, TAU};
use std::path::PathBuf;

use mdi_asymmetry::scan::{Axis, EvalPath, GridSpec, Measure, Param};

use crate::{AxisArg, CliError, FigureArgs, FigureId, PathArg};

pub(crate) struct FigureJob {
    pub out: PathBuf,
    pub label: String,
    pub spec: GridSpec,
}

const DEG: f64 = PI / 180.0;

fn reject_inapplicable(args: &FigureArgs) -> Result<(), CliError> {
    let id = args.id;
    if args.theta_b.is_some() && !matches!(id, FigureId::Fig3 | FigureId::Fig6) {
        return Err(CliError::Usage(format!(
            "--theta-b does not apply to {}",
            id.name()
        )));
    }
    if args.t.is_some() && !matches!(id, FigureId::Fig4 | FigureId::Fig7) {
        return Err(CliError::Usage(format!(
            "--t does not apply to {}",
            id.name()
        )));
    }
    if args.r_b.is_some() && id != FigureId::Fig5 {
        return Err(CliError::Usage(format!(
            "--r-b does not apply to {}",
            id.name()
        )));
    }
    if args.axis.is_some() && id != FigureId::Fig5 {
        return Err(CliError::Usage(format!(
            "--axis does not apply to {}",
            id.name()
        )));
    }
    Ok(())
}

fn angle(args: &FigureArgs, value: f64) -> f64 {
    if args.deg {
        value * DEG
    } else {
        value
    }
}

fn default_out(args: &FigureArgs) -> PathBuf {
    args.out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{}.csv", args.id.name())))
}

/// Insert a suffix between the file stem and its extension, so
/// `fig7.csv` with `-t2` becomes `fig7-t2.csv`.
fn suffixed(base: &PathBuf, suffix: &str) -> PathBuf {
    let stem = base
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match base.extension() {
        Some(ext) => format!("{stem}{suffix}.{}", ext.to_string_lossy()),
        None => format!("{stem}{suffix}"),
    };
    base.with_file_name(name)
}

fn path_or(args: &FigureArgs, default: EvalPath) -> EvalPath {
    args.path.map(PathArg::to_core).unwrap_or(default)
}

pub(crate) fn build_jobs(args: &FigureArgs) -> Result<Vec<FigureJob>, CliError> {
    reject_inapplicable(args)?;
    let n = args.grid;
    let job = |spec: GridSpec, out: PathBuf, label: String| FigureJob { out, label, spec };

    let jobs = match args.id {
        FigureId::Fig1 => {
            let spec = GridSpec {
                axis1: Axis::new(Param::ThetaA, 0.0, TAU, n),
                axis2: Axis::new(Param::ThetaB, 0.0, TAU, n),
                fixed: vec![],
                measure: Measure::GlobalPure,
                path: path_or(args, EvalPath::Both),
            };
            vec![job(spec, default_out(args), "fig1".into())]
        }
        FigureId::Fig2a | FigureId::Fig2b => {
            let measure = if args.id == FigureId::Fig2a {
                Measure::GlobalRho3
            } else {
                Measure::GlobalRho1
            };
            let spec = GridSpec {
                axis1: Axis::new(Param::RA, -1.0, 1.0, n),
                axis2: Axis::new(Param::RB, -1.0, 1.0, n),
                fixed: vec![],
                measure,
                path: path_or(args, EvalPath::Both),
            };
            vec![job(spec, default_out(args), args.id.name().into())]
        }
        FigureId::Fig3 => {
            let theta_b = angle(args, args.theta_b.unwrap_or(FRAC_PI_2));
            let spec = GridSpec {
                axis1: Axis::new(Param::ThetaA, 0.0, TAU, n),
                axis2: Axis::new(Param::T, 0.0, PI, n),
                fixed: vec![(Param::ThetaB, theta_b)],
                measure: Measure::LocalPure,
                path: path_or(args, EvalPath::Oracle),
            };
            vec![job(spec, default_out(args), "fig3".into())]
        }
        FigureId::Fig4 => {
            let t = args
                .t
                .ok_or_else(|| CliError::Usage("fig4 requires --t".into()))?;
            let spec = GridSpec {
                axis1: Axis::new(Param::RA, -1.0, 1.0, n),
                axis2: Axis::new(Param::RB, -1.0, 1.0, n),
                fixed: vec![(Param::T, angle(args, t))],
                measure: Measure::LocalRho3,
                path: path_or(args, EvalPath::Both),
            };
            vec![job(spec, default_out(args), "fig4".into())]
        }
        FigureId::Fig5 => {
            let axis = args
                .axis
                .ok_or_else(|| CliError::Usage("fig5 requires --axis (x or z)".into()))?;
            let r_b = args
                .r_b
                .ok_or_else(|| CliError::Usage("fig5 requires --r-b".into()))?;
            let measure = match axis {
                AxisArg::X => Measure::LocalRho1,
                AxisArg::Z => Measure::LocalRho3,
            };
            let spec = GridSpec {
                axis1: Axis::new(Param::RA, -1.0, 1.0, n),
                axis2: Axis::new(Param::T, 0.0, PI, n),
                fixed: vec![(Param::RB, r_b)],
                measure,
                path: path_or(args, EvalPath::Both),
            };
            vec![job(spec, default_out(args), "fig5".into())]
        }
        FigureId::Fig6 => {
            let theta_b = angle(args, args.theta_b.unwrap_or(FRAC_PI_2));
            let spec = GridSpec {
                axis1: Axis::new(Param::ThetaA, 0.0, TAU, n),
                axis2: Axis::new(Param::T, 0.0, TAU, n),
                fixed: vec![(Param::ThetaB, theta_b)],
                measure: Measure::UnitaryPure,
                path: path_or(args, EvalPath::Both),
            };
            vec![job(spec, default_out(args), "fig6".into())]
        }
        FigureId::Fig7 => {
            let make = |t: f64| GridSpec {
                axis1: Axis::new(Param::ThetaA, 0.0, TAU, n),
                axis2: Axis::new(Param::ThetaB, 0.0, TAU, n),
                fixed: vec![(Param::T, t)],
                measure: Measure::UnitaryPure,
                path: path_or(args, EvalPath::Both),
            };
            match args.t {
                Some(t) => vec![job(make(angle(args, t)), default_out(args), "fig7".into())],
                None => {
                    let base = default_out(args);
                    let times = [(FRAC_PI_3, "-t1"), (FRAC_PI_2, "-t2"), (PI, "-t3")];
                    let mut list = Vec::with_capacity(3);
                    for (t, tag) in times {
                        list.push(job(make(t), suffixed(&base, tag), format!("fig7{tag}")));
                    }
                    list
                }
            }
        }
    };
    Ok(jobs)
}
