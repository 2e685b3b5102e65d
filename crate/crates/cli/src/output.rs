//! CSV serialization for scan results, plus the landmark summary line and
//! the round-trip self check exposed to the verify command.

use std::f64::consts::TAU;
use std::io::Write;

use mdi_asymmetry::scan::{
    landmark_report, run_scan, Axis, EvalPath, GridSpec, Measure, Param, ScanResult,
};
use mdi_asymmetry::verify::PropertyReport;

fn path_label(path: EvalPath) -> &'static str {
    match path {
        EvalPath::ClosedForm => "closed-form",
        EvalPath::Oracle => "oracle",
        EvalPath::Both => "both",
    }
}

/// Write one scan as CSV: `#` comment header, a column-name row, then one
/// row per grid node in row-major order. Floats use 17 significant digits
/// so a re-read reproduces every bit.
pub(crate) fn write_csv<W: Write>(
    w: &mut W,
    result: &ScanResult,
    label: &str,
) -> std::io::Result<()> {
    let spec = &result.spec;
    writeln!(w, "# preset: {label}")?;
    writeln!(w, "# tool-version: {}", env!("CARGO_PKG_VERSION"))?;
    writeln!(w, "# measure: {}", spec.measure.name())?;
    writeln!(w, "# path: {}", path_label(spec.path))?;
    writeln!(w, "# scale: {}", spec.measure.scale_label())?;
    for (tag, axis) in [("axis1", &spec.axis1), ("axis2", &spec.axis2)] {
        writeln!(
            w,
            "# {tag}: {} min {:.16e} max {:.16e} count {}",
            axis.param.name(),
            axis.min,
            axis.max,
            axis.count
        )?;
    }
    for (param, value) in &spec.fixed {
        writeln!(w, "# fixed: {} = {:.16e}", param.name(), value)?;
    }
    if let Some(dev) = result.max_deviation {
        writeln!(w, "# max-deviation: {dev:.16e}")?;
    }
    let has_dev = result.deviations.is_some();
    write!(
        w,
        "{},{},value",
        spec.axis1.param.name(),
        spec.axis2.param.name()
    )?;
    writeln!(w, "{}", if has_dev { ",deviation" } else { "" })?;
    let cols = spec.axis2.count;
    for i in 0..spec.axis1.count {
        let x = spec.axis1.node(i);
        for j in 0..cols {
            let y = spec.axis2.node(j);
            let v = result.values[i * cols + j];
            write!(w, "{x:.16e},{y:.16e},{v:.16e}")?;
            if let Some(devs) = &result.deviations {
                write!(w, ",{:.16e}", devs[i * cols + j])?;
            }
            writeln!(w)?;
        }
    }
    Ok(())
}

/// Read back the numeric content of a CSV produced by `write_csv`:
/// (axis1 coords, axis2 coords, values, deviations when present).
#[allow(clippy::type_complexity)]
pub(crate) fn parse_csv(text: &str) -> Option<(Vec<f64>, Vec<f64>, Vec<f64>, Option<Vec<f64>>)> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut values = Vec::new();
    let mut deviations = Vec::new();
    let mut saw_header = false;
    let mut has_dev = false;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !saw_header {
            saw_header = true;
            has_dev = line.ends_with(",deviation");
            continue;
        }
        let mut parts = line.split(',');
        xs.push(parts.next()?.parse().ok()?);
        ys.push(parts.next()?.parse().ok()?);
        values.push(parts.next()?.parse().ok()?);
        if has_dev {
            deviations.push(parts.next()?.parse().ok()?);
        }
        if parts.next().is_some() {
            return None;
        }
    }
    let devs = if has_dev { Some(deviations) } else { None };
    Some((xs, ys, values, devs))
}

/// One-line summary of a scan's extremes for stderr.
pub(crate) fn landmark_line(result: &ScanResult) -> String {
    let marks = landmark_report(result);
    let a1 = result.spec.axis1.param.name();
    let a2 = result.spec.axis2.param.name();
    let mut line = format!(
        "max {:.16e} at ({a1}, {a2}) = ({:.16e}, {:.16e}) [node {}, {}]; \
         min {:.16e} at ({:.16e}, {:.16e}) [node {}, {}]",
        marks.max,
        marks.argmax.coord1,
        marks.argmax.coord2,
        marks.argmax.index1,
        marks.argmax.index2,
        marks.min,
        marks.argmin.coord1,
        marks.argmin.coord2,
        marks.argmin.index1,
        marks.argmin.index2,
    );
    if let Some(dev) = marks.max_deviation {
        line.push_str(&format!("; max closed/oracle deviation {dev:.3e}"));
    }
    line
}

/// Serialize a small scan, read it back, and require every number to
/// survive bit for bit.
pub(crate) fn csv_round_trip_report() -> PropertyReport {
    let name = "csv-round-trip";
    let tolerance = 0.0;
    let spec = GridSpec {
        axis1: Axis::new(Param::ThetaA, 0.0, TAU, 7),
        axis2: Axis::new(Param::ThetaB, 0.0, TAU, 7),
        fixed: vec![],
        measure: Measure::GlobalPure,
        path: EvalPath::Both,
    };
    let result = match run_scan(&spec) {
        Ok(r) => r,
        Err(e) => {
            return PropertyReport {
                name,
                passed: false,
                worst: f64::INFINITY,
                tolerance,
                detail: format!("reference scan failed: {e}"),
            }
        }
    };
    let mut buf = Vec::new();
    if let Err(e) = write_csv(&mut buf, &result, "round-trip") {
        return PropertyReport {
            name,
            passed: false,
            worst: f64::INFINITY,
            tolerance,
            detail: format!("serialization failed: {e}"),
        };
    }
    let text = String::from_utf8_lossy(&buf);
    let Some((xs, ys, values, devs)) = parse_csv(&text) else {
        return PropertyReport {
            name,
            passed: false,
            worst: f64::INFINITY,
            tolerance,
            detail: "re-parse failed".into(),
        };
    };
    let cols = spec.axis2.count;
    let mut exact = values.len() == result.values.len();
    for (i, (&got, &want)) in values.iter().zip(&result.values).enumerate() {
        exact &= got.to_bits() == want.to_bits();
        exact &= xs[i].to_bits() == spec.axis1.node(i / cols).to_bits();
        exact &= ys[i].to_bits() == spec.axis2.node(i % cols).to_bits();
    }
    match (&devs, &result.deviations) {
        (Some(got), Some(want)) => {
            exact &= got.len() == want.len();
            for (g, w) in got.iter().zip(want) {
                exact &= g.to_bits() == w.to_bits();
            }
        }
        (None, None) => {}
        _ => exact = false,
    }
    PropertyReport {
        name,
        passed: exact,
        worst: if exact { 0.0 } else { f64::INFINITY },
        tolerance,
        detail: format!(
            "{} rows with deviations re-read bit for bit",
            result.values.len()
        ),
    }
}
