//! Library half of the `htubes` binary.
//!
//! Each subcommand body lives here as a function from validated parameters
//! to an output string (CSV, JSON or SVG), so the pieces stay testable
//! without spawning processes; `main` only parses flags, picks exit codes,
//! and writes bytes. Everything is deterministic: identical inputs produce
//! byte-identical outputs.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::json;
use thiserror::Error;

use htubes::curvature::numeric_mean_curvature;
use htubes::foliation::{embeddedness, foliation_criterion, tangency_scan};
use htubes::isoperimetric::{ambient_volume, tube_area, tube_volume};
use htubes::profile::{closed_form_profile, ProfileCurve, TubeParams};
use htubes::sister::{
    conformal_profile, lattice_b, lattice_spec, normalized_conformal_class, sister_params,
    SisterParams,
};
use htubes::space::SpaceParams;
use htubes::Error as LibError;

pub mod figures;
pub mod svg;

/// Failures the binary maps to exit codes: library errors keep their
/// domain/numerical split (exit 2 vs 3), while IO problems and malformed
/// inputs that clap cannot catch (e.g. a bad overlay CSV) count as usage
/// errors (exit 1).
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Lib(#[from] LibError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Invalid(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(e) if e.is_numerical() => 3,
            CliError::Lib(_) => 2,
            CliError::Io(_) | CliError::Invalid(_) => 1,
        }
    }
}

/// An inclusive `start:stop:step` grid specification, as used by
/// `--phi-range`, `--h-grid`, `--theta-range` and `--h-range`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected start:stop:step, got {s:?}"));
        }
        let mut vals = [0.0f64; 3];
        for (v, p) in vals.iter_mut().zip(&parts) {
            *v = p
                .trim()
                .parse::<f64>()
                .map_err(|_| format!("invalid number {p:?} in range {s:?}"))?;
        }
        let [start, stop, step] = vals;
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
            return Err(format!("range bounds must be finite, got {s:?}"));
        }
        if !(step > 0.0) {
            return Err(format!("range step must be positive, got {step}"));
        }
        if stop < start {
            return Err(format!("range stop {stop} is below start {start}"));
        }
        Ok(Range { start, stop, step })
    }
}

impl Range {
    /// Grid points start, start+step, …, up to stop (inclusive up to a
    /// 1e-9·step slack so that e.g. 0:6.2832:0.01 keeps its last point).
    pub fn grid(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|i| self.start + i as f64 * self.step).collect()
    }
}

/// `classify`: which model space (κ, τ) names, as JSON.
pub fn classify_cmd(kappa: f64, tau: f64) -> Result<String, CliError> {
    let p = SpaceParams::new(kappa, tau)?;
    let doc = json!({
        "kappa": p.kappa,
        "tau": p.tau,
        "class": p.classify(),
    });
    Ok(to_json_line(&doc))
}

/// `profile`: closed-form profile curve sampled on a φ-grid, as CSV.
pub fn profile_cmd(kappa: f64, tau: f64, h: f64, phi_range: Range) -> Result<String, CliError> {
    let t = TubeParams::new(kappa, tau, h)?;
    let mut samples = Vec::new();
    for phi in phi_range.grid() {
        samples.push(closed_form_profile(&t, phi)?);
    }
    Ok(ProfileCurve { params: t, samples }.to_csv())
}

/// `verify-h`: finite-difference mean curvature on an n×n (φ, v) grid
/// against the prescribed H, as CSV `phi,v,H_num,abs_err`.
pub fn verify_h_cmd(
    kappa: f64,
    tau: f64,
    h: f64,
    grid: usize,
    step: f64,
) -> Result<String, CliError> {
    if grid < 2 {
        return Err(CliError::Invalid(format!(
            "grid must have at least 2 points per side, got {grid}"
        )));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(CliError::Invalid(format!(
            "finite-difference step must be positive and finite, got {step}"
        )));
    }
    let t = TubeParams::new(kappa, tau, h)?;
    let mut out = String::from("phi,v,H_num,abs_err\n");
    for i in 0..grid {
        // Offset grids keep clear of the φ-axis symmetry points, where the
        // centered differences would be artificially exact.
        let phi = 2.0 * std::f64::consts::PI * (i as f64 + 0.37) / grid as f64;
        for j in 0..grid {
            let v = 0.1 + 1.1 * j as f64;
            let h_num = numeric_mean_curvature(&t, phi, v, step)?;
            writeln!(out, "{phi},{v},{h_num},{}", (h_num - h).abs()).unwrap();
        }
    }
    Ok(out)
}

/// `foliation`: criterion report as JSON; with an H-grid, also the
/// max-height scan (as CSV rows `h,max_height,embedded`, or embedded in the
/// JSON document).
pub fn foliation_cmd(
    kappa: f64,
    tau: f64,
    h_grid: Option<Range>,
    format: &str,
) -> Result<String, CliError> {
    let p = SpaceParams::new(kappa, tau)?;
    let report = foliation_criterion(&p);
    match (h_grid, format) {
        (None, "json") => Ok(to_json_line(&serde_json::to_value(report).unwrap())),
        (None, "csv") => Err(CliError::Invalid(
            "csv output needs --h-grid; the bare report is JSON only".to_string(),
        )),
        (Some(r), format) => {
            let grid = r.grid();
            let scan = tangency_scan(&p, &grid)?;
            if format == "json" {
                let doc = json!({ "report": report, "scan": scan });
                return Ok(to_json_line(&doc));
            }
            let mut out = String::from("h,max_height,embedded\n");
            for row in &scan.rows {
                let t = TubeParams::new(kappa, tau, row.h)?;
                writeln!(out, "{},{},{}", row.h, row.max_height, embeddedness(&t)?).unwrap();
            }
            Ok(out)
        }
        (None, other) => Err(CliError::Invalid(format!("unsupported format {other:?}"))),
    }
}

/// `sister`: data of the tube sister to the minimal helicoid family at a
/// phase angle θ — its (κ, τ, H), the lattice spans a and b(θ), and the
/// normalized conformal class — as JSON.
pub fn sister_cmd(kappa_t: f64, tau_t: f64, theta: f64, tol: f64) -> Result<String, CliError> {
    let t = sister_params(SisterParams::new(kappa_t, tau_t, 0.0, theta)?);
    let spec = lattice_spec(kappa_t, tau_t, theta, tol)?;
    let class = normalized_conformal_class(kappa_t, tau_t, theta)?;
    let doc = json!({
        "kappa": t.kappa,
        "tau": t.tau,
        "H": t.mean_curvature,
        "a": spec.a,
        "b": spec.b_theta,
        "normalized_class": class,
    });
    Ok(to_json_line(&doc))
}

/// `lattice-sweep`: the vertical lattice shift b(θ) over a θ-grid, as CSV
/// `theta,b`. Angles whose sister base curvature is nonpositive (no torus
/// quotient) keep their row with b = NaN so grids may cross the boundary.
pub fn lattice_sweep_cmd(
    kappa_t: f64,
    tau_t: f64,
    theta_range: Range,
    tol: f64,
) -> Result<String, CliError> {
    let mut out = String::from("theta,b\n");
    for theta in theta_range.grid() {
        match lattice_b(kappa_t, tau_t, theta, tol) {
            Ok(b) => writeln!(out, "{theta},{b}").unwrap(),
            Err(LibError::NonToralSister { .. }) => {
                writeln!(out, "{theta},{}", f64::NAN).unwrap()
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

/// `conformal`: conformal parametrization data of the minimal-helicoid
/// quotient — the u-period a of the conformal change g and its increment per
/// period — as JSON, or g sampled over two periods as CSV `s,g`.
pub fn conformal_cmd(kappa_t: f64, tau_t: f64, format: &str) -> Result<String, CliError> {
    let cp = conformal_profile(kappa_t, tau_t)?;
    match format {
        "json" => {
            let doc = json!({
                "kappa_t": kappa_t,
                "tau_t": tau_t,
                "a": cp.a(),
                "period_increment": cp.period_increment(),
            });
            Ok(to_json_line(&doc))
        }
        "csv" => {
            let mut out = String::from("s,g\n");
            for i in 0..=200 {
                let s = cp.a() * i as f64 / 100.0;
                writeln!(out, "{s},{}", cp.eval(s)).unwrap();
            }
            Ok(out)
        }
        other => Err(CliError::Invalid(format!("unsupported format {other:?}"))),
    }
}

/// `isoperimetric`: area/volume sweep over an H-range in E(4, τ), as CSV
/// `H,volume,area,complement_volume` or as an SVG chart (volume horizontal,
/// area vertical) with an optional overlay curve for comparison data.
pub fn isoperimetric_cmd(
    tau: f64,
    h_range: Range,
    tol: f64,
    format: &str,
    overlay: Option<&str>,
) -> Result<String, CliError> {
    let ambient = ambient_volume(tau);
    let mut rows: Vec<(f64, f64, f64, f64)> = Vec::new();
    for h in h_range.grid() {
        let t = TubeParams::new(4.0, tau, h)?;
        match tube_volume(&t, tol).and_then(|v| Ok((v, tube_area(&t, tol)?))) {
            Ok((volume, area)) => rows.push((h, volume, area, ambient - volume)),
            // A row that fails to converge is marked, not fatal: the rest of
            // the sweep is still useful.
            Err(e) if e.is_numerical() => rows.push((h, f64::NAN, f64::NAN, f64::NAN)),
            Err(e) => return Err(e.into()),
        }
    }
    match format {
        "csv" => {
            let mut out = String::from("H,volume,area,complement_volume\n");
            for (h, volume, area, complement) in rows {
                writeln!(out, "{h},{volume},{area},{complement}").unwrap();
            }
            Ok(out)
        }
        "svg" => {
            let mut chart = svg::Chart::new(
                &format!("tube isoperimetric profile in E(4, {tau})"),
                "enclosed volume",
                "area",
            );
            chart.series.push(svg::Series::line(
                "tubes",
                "#d62728",
                rows.iter().map(|&(_, v, a, _)| (v, a)).collect(),
            ));
            if let Some(text) = overlay {
                chart
                    .series
                    .push(svg::Series::line("overlay", "#1f77b4", parse_overlay(text)?));
            }
            Ok(chart.render())
        }
        other => Err(CliError::Invalid(format!("unsupported format {other:?}"))),
    }
}

/// Comparison data for the isoperimetric chart: CSV whose first two numeric
/// columns are x (volume) and y (area); one header line is tolerated.
fn parse_overlay(text: &str) -> Result<Vec<(f64, f64)>, CliError> {
    let mut points = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        let parsed: Option<(f64, f64)> = match fields.as_slice() {
            [x, y, ..] => x
                .trim()
                .parse::<f64>()
                .ok()
                .zip(y.trim().parse::<f64>().ok()),
            _ => None,
        };
        match parsed {
            Some(p) => points.push(p),
            None if idx == 0 => continue, // header
            None => {
                return Err(CliError::Invalid(format!(
                    "overlay line {} is not x,y data: {line:?}",
                    idx + 1
                )));
            }
        }
    }
    if points.is_empty() {
        return Err(CliError::Invalid(
            "overlay file contains no data points".to_string(),
        ));
    }
    Ok(points)
}

fn to_json_line(doc: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("JSON serialization cannot fail");
    s.push('\n');
    s
}
