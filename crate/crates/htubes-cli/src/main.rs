//! `htubes` binary: thin flag-parsing and IO shell around the library.
//!
//! Exit codes: 0 success, 1 usage/IO problems (bad flags, unreadable
//! files), 2 domain errors (parameters outside a formula's validity), 3
//! numerical failures (an integrator or quadrature that could not reach its
//! tolerance).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use htubes_cli::{figures, CliError, Range};

#[derive(Parser)]
#[command(
    name = "htubes",
    version,
    about = "Horizontal constant-mean-curvature tubes in E(kappa, tau): \
             profile curves, curvature verification, foliation reports, \
             sister surfaces, isoperimetric sweeps, figure recipes",
    arg_required_else_help = true
)]
struct Cli {
    /// Numerical tolerance for quadrature and root finding
    /// [default: 1e-10; reproduce-figure defaults to 1e-7]
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Write the output to this file instead of stdout
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Name the model space with base curvature kappa and bundle curvature tau
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        kappa: f64,
        #[arg(long, allow_hyphen_values = true)]
        tau: f64,
    },
    /// Sample the closed-form profile curve of a tube on a phi-grid (CSV phi,r,h)
    Profile {
        #[arg(long, allow_hyphen_values = true)]
        kappa: f64,
        #[arg(long, allow_hyphen_values = true)]
        tau: f64,
        /// Mean curvature of the tube
        #[arg(long)]
        h: f64,
        /// phi grid as start:stop:step
        #[arg(long)]
        phi_range: Range,
    },
    /// Check the prescribed mean curvature by finite differences on a grid
    /// (CSV phi,v,H_num,abs_err)
    VerifyH {
        #[arg(long, allow_hyphen_values = true)]
        kappa: f64,
        #[arg(long, allow_hyphen_values = true)]
        tau: f64,
        #[arg(long)]
        h: f64,
        /// Points per grid side
        #[arg(long, default_value_t = 5)]
        grid: usize,
        /// Finite-difference step
        #[arg(long, default_value_t = 1e-4)]
        step: f64,
    },
    /// Report whether the tube family foliates its model space (JSON), with
    /// an optional max-height scan over an H-grid
    Foliation {
        #[arg(long, allow_hyphen_values = true)]
        kappa: f64,
        #[arg(long, allow_hyphen_values = true)]
        tau: f64,
        /// H grid as start:stop:step; adds the scan to the output
        #[arg(long)]
        h_grid: Option<Range>,
        #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
        format: String,
    },
    /// Tube sister to the minimal helicoid family at a phase angle (JSON with
    /// kappa, tau, H, lattice spans a and b, normalized conformal class)
    Sister {
        /// Base curvature of the source Berger sphere (positive)
        #[arg(long)]
        kappa_t: f64,
        /// Bundle curvature of the source Berger sphere (nonzero)
        #[arg(long, allow_hyphen_values = true)]
        tau_t: f64,
        /// Phase angle in [0, pi)
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
    },
    /// Vertical lattice shift b(theta) over a theta-grid (CSV theta,b;
    /// non-toral angles keep their row with b = NaN)
    LatticeSweep {
        /// Base curvature of the source Berger sphere (positive)
        #[arg(long)]
        kappa_t: f64,
        /// Bundle curvature of the source Berger sphere (nonzero)
        #[arg(long, allow_hyphen_values = true)]
        tau_t: f64,
        /// theta grid as start:stop:step
        #[arg(long)]
        theta_range: Range,
    },
    /// Conformal parametrization data of the minimal-helicoid quotient
    /// (JSON, or CSV s,g over two periods)
    Conformal {
        /// Base curvature of the source Berger sphere (positive)
        #[arg(long)]
        kappa_t: f64,
        /// Bundle curvature of the source Berger sphere (nonzero)
        #[arg(long, allow_hyphen_values = true)]
        tau_t: f64,
        #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
        format: String,
    },
    /// Area/volume sweep of the tube family in E(4, tau)
    /// (CSV H,volume,area,complement_volume, or an SVG chart)
    Isoperimetric {
        #[arg(long)]
        tau: f64,
        /// H grid as start:stop:step
        #[arg(long)]
        h_range: Range,
        /// CSV of x,y comparison data drawn into the SVG chart
        #[arg(long)]
        overlay: Option<PathBuf>,
        #[arg(long, default_value = "csv", value_parser = ["csv", "svg"])]
        format: String,
    },
    /// Write one of the built-in figures as SVG files
    ReproduceFigure {
        #[arg(long, value_parser = ["foliation-berger", "profiles"])]
        name: String,
        /// Directory for the SVG files [default: $HTUBES_OUT_DIR or .]
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            // Collapse clap's multi-line report to one diagnostic line: the
            // headline plus any indented detail (e.g. the list of missing
            // required arguments), joined before the usage/help footer.
            let text = e.to_string();
            let mut lines = text.lines().filter(|l| !l.trim().is_empty());
            let head = lines.next().unwrap_or("invalid usage").to_string();
            let details: Vec<&str> = lines
                .take_while(|l| l.starts_with(' ') || l.starts_with('\t'))
                .map(str::trim)
                .collect();
            if details.is_empty() {
                eprintln!("{head}");
            } else {
                eprintln!("{head} {}", details.join(", "));
            }
            return ExitCode::from(1);
        }
    };

    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let tol = match cli.tol {
        Some(t) if t.is_finite() && t > 0.0 => Some(t),
        Some(t) => {
            return Err(CliError::Invalid(format!(
                "--tol must be positive and finite, got {t}"
            )));
        }
        None => None,
    };
    let default_tol = tol.unwrap_or(1e-10);

    let output = match cli.cmd {
        Cmd::Classify { kappa, tau } => htubes_cli::classify_cmd(kappa, tau)?,
        Cmd::Profile {
            kappa,
            tau,
            h,
            phi_range,
        } => htubes_cli::profile_cmd(kappa, tau, h, phi_range)?,
        Cmd::VerifyH {
            kappa,
            tau,
            h,
            grid,
            step,
        } => htubes_cli::verify_h_cmd(kappa, tau, h, grid, step)?,
        Cmd::Foliation {
            kappa,
            tau,
            h_grid,
            format,
        } => htubes_cli::foliation_cmd(kappa, tau, h_grid, &format)?,
        Cmd::Sister {
            kappa_t,
            tau_t,
            theta,
        } => htubes_cli::sister_cmd(kappa_t, tau_t, theta, default_tol)?,
        Cmd::LatticeSweep {
            kappa_t,
            tau_t,
            theta_range,
        } => htubes_cli::lattice_sweep_cmd(kappa_t, tau_t, theta_range, default_tol)?,
        Cmd::Conformal {
            kappa_t,
            tau_t,
            format,
        } => htubes_cli::conformal_cmd(kappa_t, tau_t, &format)?,
        Cmd::Isoperimetric {
            tau,
            h_range,
            overlay,
            format,
        } => {
            let overlay_text = match overlay {
                Some(path) => Some(std::fs::read_to_string(path)?),
                None => None,
            };
            htubes_cli::isoperimetric_cmd(tau, h_range, default_tol, &format, overlay_text.as_deref())?
        }
        Cmd::ReproduceFigure { name, out_dir } => {
            let dir = out_dir
                .or_else(|| std::env::var_os("HTUBES_OUT_DIR").map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from("."));
            let files = figures::reproduce_figure(&name, &dir, tol.unwrap_or(figures::FIGURE_TOL))?;
            let mut listing = String::new();
            for f in files {
                listing.push_str(&f.display().to_string());
                listing.push('\n');
            }
            listing
        }
    };

    match cli.output {
        Some(path) => std::fs::write(path, output)?,
        None => print!("{output}"),
    }
    Ok(())
}
