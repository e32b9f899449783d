//! Figure recipes: fixed parameter sets rendered to SVG files.
//!
//! Two recipes are built in. `foliation-berger` draws the nested profile
//! curves of the tube families in E(4, 1.5), E(4, 0.4) and E(4, 0.2) — the
//! three regimes where the family foliates, stops foliating, and develops
//! non-embedded members. `profiles` sweeps the area/volume data of the tube
//! family in E(4, τ) for eight values of τ and plots area against enclosed
//! volume.

use std::path::{Path, PathBuf};

use htubes::foliation::embeddedness;
use htubes::profile::{closed_form_profile, TubeParams};
use htubes::isoperimetric::{ambient_volume, tube_area, tube_volume};

use crate::svg::{Chart, Series};
use crate::CliError;

pub const FIGURE_NAMES: [&str; 2] = ["foliation-berger", "profiles"];

/// τ values of the eight area/volume panels.
pub const PROFILE_TAUS: [f64; 8] = [0.244, 0.374, 0.407, 0.5, 1.05, 1.5, 2.5, 10.0];

/// τ values of the three profile-curve panels (κ = 4 throughout).
pub const FOLIATION_TAUS: [f64; 3] = [1.5, 0.4, 0.2];

/// Mean-curvature grid for the area/volume sweep: 0.025 to 20 in steps of
/// 0.025 (800 samples per τ).
pub fn figure_h_grid() -> Vec<f64> {
    (1..=800).map(|i| 0.025 * i as f64).collect()
}

/// The default tolerance for figure quadratures. Plots cannot resolve more
/// than a pixel, so this is intentionally looser than the CLI-wide default
/// of 1e-10; the full profiles recipe stays around a minute of work.
pub const FIGURE_TOL: f64 = 1e-7;

/// (H, enclosed volume, area) rows of the sweep behind one `profiles` panel.
pub fn isoperimetric_curve(tau: f64, tol: f64) -> htubes::Result<Vec<(f64, f64, f64)>> {
    let mut rows = Vec::with_capacity(800);
    for h in figure_h_grid() {
        let t = TubeParams::new(4.0, tau, h)?;
        rows.push((h, tube_volume(&t, tol)?, tube_area(&t, tol)?));
    }
    Ok(rows)
}

fn profiles_panel(tau: f64, tol: f64) -> Result<Chart, CliError> {
    let rows = isoperimetric_curve(tau, tol)?;
    let mut chart = Chart::new(
        &format!("tube isoperimetric profile in E(4, {tau})"),
        "enclosed volume",
        "area",
    );
    chart.series.push(Series::line(
        "tubes",
        "#d62728",
        rows.iter().map(|&(_, v, a)| (v, a)).collect(),
    ));
    // The ambient volume bounds every enclosed volume; mark it.
    let a_max = rows.iter().map(|r| r.2).fold(f64::NEG_INFINITY, f64::max);
    chart.series.push(Series::dashed(
        "ambient volume",
        "#999999",
        vec![(ambient_volume(tau), 0.0), (ambient_volume(tau), a_max)],
    ));
    Ok(chart)
}

fn foliation_panel(tau: f64) -> Result<Chart, CliError> {
    let kappa = 4.0;
    let mut chart = Chart::new(
        &format!("tube profile curves in E(4, {tau})"),
        "r",
        "h",
    );
    chart.equal_aspect = true;

    let mut any_embedded = false;
    let mut any_crossing = false;
    let mut curves: Vec<Series> = Vec::new();
    let mut r_max: f64 = 0.0;
    for i in 1..=30 {
        let h = 0.1 * i as f64;
        let t = TubeParams::new(kappa, tau, h)?;
        let embedded = embeddedness(&t)?;
        let mut points = Vec::with_capacity(481);
        for j in 0..=480 {
            let phi = 2.0 * std::f64::consts::PI * j as f64 / 480.0;
            let p = closed_form_profile(&t, phi)?;
            r_max = r_max.max(p.r.abs());
            points.push((p.r, p.h));
        }
        let color = if embedded { "#1f77b4" } else { "#d62728" };
        any_embedded |= embedded;
        any_crossing |= !embedded;
        curves.push(Series::line("", color, points));
    }

    // Legend stubs (no points, label only), then the curves, then the
    // embeddedness bound h = ±2πτ/κ that the non-embedded curves cross.
    if any_embedded {
        chart.series.push(Series::line("embedded", "#1f77b4", Vec::new()));
    }
    if any_crossing {
        chart.series.push(Series::line("non-embedded", "#d62728", Vec::new()));
    }
    chart.series.extend(curves);
    let bound = 2.0 * std::f64::consts::PI * tau / kappa;
    for sign in [1.0, -1.0] {
        let label = if sign > 0.0 { "fiber half-period" } else { "" };
        chart.series.push(Series::dashed(
            label,
            "#999999",
            vec![(-1.05 * r_max, sign * bound), (1.05 * r_max, sign * bound)],
        ));
    }
    Ok(chart)
}

/// Render one named figure into `out_dir`, returning the files written.
pub fn reproduce_figure(name: &str, out_dir: &Path, tol: f64) -> Result<Vec<PathBuf>, CliError> {
    std::fs::create_dir_all(out_dir)?;
    let mut written = Vec::new();
    match name {
        "foliation-berger" => {
            for &tau in &FOLIATION_TAUS {
                let chart = foliation_panel(tau)?;
                let path = out_dir.join(format!("foliation-berger-tau-{tau}.svg"));
                std::fs::write(&path, chart.render())?;
                written.push(path);
            }
        }
        "profiles" => {
            for &tau in &PROFILE_TAUS {
                let chart = profiles_panel(tau, tol)?;
                let path = out_dir.join(format!("profiles-tau-{tau}.svg"));
                std::fs::write(&path, chart.render())?;
                written.push(path);
            }
        }
        other => {
            return Err(CliError::Invalid(format!(
                "unknown figure {other:?}; expected one of {FIGURE_NAMES:?}"
            )));
        }
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn foliation_panels_render_and_flag_regimes() {
        // τ = 1.5: every tube is embedded, so no red legend entry.
        let hyperbolic = foliation_panel(1.5).unwrap().render();
        assert!(hyperbolic.contains("embedded"));
        assert!(!hyperbolic.contains("non-embedded"));
        // τ = 0.2: the max height exceeds the fiber half-period for some H.
        let ultra = foliation_panel(0.2).unwrap().render();
        assert!(ultra.contains("non-embedded"));
    }

    #[test]
    fn figure_grid_matches_sweep_contract() {
        let grid = figure_h_grid();
        assert_eq!(grid.len(), 800);
        assert_eq!(grid[0], 0.025);
        assert_eq!(*grid.last().unwrap(), 20.0);
    }

    #[test]
    fn rejects_unknown_figure_names() {
        let err = reproduce_figure("nope", Path::new("."), 1e-7).unwrap_err();
        assert!(matches!(err, CliError::Invalid(_)));
    }
}
