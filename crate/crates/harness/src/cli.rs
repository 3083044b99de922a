//! Command-line interface of the `apem` binary.

use std::io::Write;
use std::path::PathBuf;

use apem_core::scaling::{compute_scaling, Temperature, ATOMIC_MASS_UNIT, ELECTRON_MASS};
use apem_stability::{
    dispersion_modes, stability_region_scan, write_stability_csv, ModelParams, Triple, DEFAULT_XI_SAMPLES,
};
use clap::{Parser, Subcommand};

use crate::analysis::{convergence_study, ConvergenceReport};
use crate::config::{int_list, num_list, Case, ExperimentConfig, Scheme};
use crate::error::{HarnessError, Result};
use crate::output::emit_outputs;
use crate::run::run_experiment;

#[derive(Debug, Parser)]
#[command(name = "apem", version, about = "1D Euler-Maxwell plasma simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one experiment described by a key = value config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Output directory; overrides output_dir from the config.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// L1 convergence study against a classical reference run.
    Converge {
        #[arg(long)]
        case: String,
        #[arg(long)]
        lambda: f64,
        /// Comma-separated cell counts.
        #[arg(long)]
        resolutions: String,
        /// Reference cell count, a multiple of every resolution.
        #[arg(long)]
        reference: usize,
        #[arg(long, default_value = "ap")]
        scheme: String,
        #[arg(long, default_value_t = 1)]
        fluids: u8,
        #[arg(long)]
        t_end: Option<f64>,
        /// Comma-separated output fields; defaults to densities and x-momenta.
        #[arg(long)]
        fields: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Growth-factor table of a linearized time discretization.
    Stability {
        /// Implicitness triple a,b,c.
        #[arg(long)]
        scheme: String,
        #[arg(long)]
        lambda_list: String,
        /// Comma-separated δ/h ratios.
        #[arg(long)]
        dt_over_h: String,
        #[arg(long, default_value_t = 0.01)]
        h: f64,
        /// Viscosity constant; defaults to √T/2.
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, default_value_t = DEFAULT_XI_SAMPLES)]
        n_xi: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Continuous dispersion relation `ω(ξ)` of the linearized model.
    Dispersion {
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        xi_max: f64,
        #[arg(long, default_value_t = 101)]
        samples: usize,
    },
    /// Reference units and scaled Debye length for physical inputs.
    Scaling {
        /// Density in m⁻³.
        #[arg(long)]
        n0: f64,
        /// Temperature in eV, or in kelvin with --kelvin.
        #[arg(long = "T0")]
        t0: f64,
        #[arg(long)]
        kelvin: bool,
        /// Length unit in m.
        #[arg(long)]
        x0: f64,
        /// Particle mass in kg, or `electron`, or `<A>u` for A atomic mass units.
        #[arg(long, default_value = "electron")]
        mass: String,
    },
}

/// Executes a parsed command, writing human-readable results to `out`.
pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Run { config, out: dir } => {
            let mut cfg = ExperimentConfig::from_file(&config)?;
            if dir.is_some() {
                cfg.output_dir = dir;
            }
            let result = run_experiment(&cfg)?;
            writeln!(
                out,
                "{}: {} steps to t = {:e}, gauss drift {:.3e}, {:.2} s",
                cfg.case,
                result.steps,
                result.final_state.t(),
                result.gauss_drift_max,
                result.wall_clock
            )?;
            for note in &result.notes {
                writeln!(out, "note: {note}")?;
            }
            if let Some(dir) = &cfg.output_dir {
                for p in emit_outputs(&result, &cfg, dir, None)? {
                    writeln!(out, "wrote {}", p.display())?;
                }
            }
        }
        Command::Converge { case, lambda, resolutions, reference, scheme, fluids, t_end, fields, out: dir } => {
            let case: Case = case.parse()?;
            let mut cfg = ExperimentConfig::new(case);
            cfg.set("lambda", &lambda.to_string())?;
            cfg.scheme = scheme.parse::<Scheme>()?;
            cfg.set("fluids", &fluids.to_string())?;
            if let Some(t) = t_end {
                cfg.t_end = Some(t);
            }
            cfg.validate()?;
            let resolutions = int_list("resolutions", &resolutions)?;
            let fields: Vec<String> = match fields {
                Some(f) => f.split(',').map(|s| s.trim().to_string()).collect(),
                None if fluids == 2 => vec!["ni".into(), "ne".into()],
                None => vec!["n".into(), "qx".into()],
            };
            let refs: Vec<&str> = fields.iter().map(String::as_str).collect();
            let report = convergence_study(&cfg, &resolutions, reference, &refs)?;
            write_convergence(&report, out)?;
            if let Some(dir) = dir {
                std::fs::create_dir_all(&dir)?;
                let path = dir.join(format!("{}_convergence.json", case));
                std::fs::write(&path, serde_json::to_string_pretty(&report)?)?;
                writeln!(out, "wrote {}", path.display())?;
            }
        }
        Command::Stability { scheme, lambda_list, dt_over_h, h, gamma, t, n_xi, out: path } => {
            let triple: Triple = scheme.parse()?;
            let lambdas = num_list("lambda-list", &lambda_list)?;
            let ratios = num_list("dt-over-h", &dt_over_h)?;
            let mut params = ModelParams::with_default_gamma(h, t);
            if let Some(g) = gamma {
                params.gamma = g;
            }
            params.n_xi = n_xi;
            let rows = stability_region_scan(triple, &lambdas, &ratios, &params)?;
            match path {
                Some(p) => {
                    write_stability_csv(&rows, std::io::BufWriter::new(std::fs::File::create(&p)?))?;
                    writeln!(out, "wrote {}", p.display())?;
                }
                None => write_stability_csv(&rows, &mut *out)?,
            }
        }
        Command::Dispersion { lambda, t, xi_max, samples } => {
            if !(lambda >= 0.0 && t >= 0.0 && xi_max >= 0.0 && samples >= 2) {
                return Err(HarnessError::Config("need lambda, t, xi-max >= 0 and at least 2 samples".into()));
            }
            writeln!(out, "xi,omega_em,omega_es")?;
            for j in 0..samples {
                let xi = xi_max * j as f64 / (samples - 1) as f64;
                let m = dispersion_modes(lambda, t, xi);
                writeln!(out, "{:.16e},{:.16e},{:.16e}", xi, m.em[0].im, m.es[0].im)?;
            }
        }
        Command::Scaling { n0, t0, kelvin, x0, mass } => {
            let temperature = if kelvin { Temperature::Kelvin(t0) } else { Temperature::ElectronVolt(t0) };
            let u = compute_scaling(x0, n0, temperature, parse_mass(&mass)?)?;
            let json = serde_json::json!({
                "x0": u.x0, "n0": u.n0, "T0_kelvin": u.t0_kelvin, "mass": u.mass,
                "u0": u.u0, "t0": u.t0, "E0": u.e0, "B0": u.b0,
                "alpha": u.alpha, "beta": u.beta, "lambda": u.lambda,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&json)?)?;
        }
    }
    Ok(())
}

fn parse_mass(s: &str) -> Result<f64> {
    let s = s.trim();
    if s == "electron" {
        return Ok(ELECTRON_MASS);
    }
    if let Some(a) = s.strip_suffix('u') {
        let a: f64 = a.parse().map_err(|_| HarnessError::Config(format!("bad mass {s:?}")))?;
        return Ok(a * ATOMIC_MASS_UNIT);
    }
    s.parse().map_err(|_| HarnessError::Config(format!("bad mass {s:?}; use kg, `electron` or `<A>u`")))
}

fn write_convergence(report: &ConvergenceReport, out: &mut dyn Write) -> Result<()> {
    let fields: Vec<&String> = report.errors.keys().collect();
    let names: Vec<&str> = fields.iter().map(|s| s.as_str()).collect();
    writeln!(out, "n_cells,h,{}", names.join(","))?;
    for (i, n) in report.resolutions.iter().enumerate() {
        let errs: Vec<String> = fields.iter().map(|f| format!("{:.6e}", report.errors[*f][i])).collect();
        writeln!(out, "{n},{:.6e},{}", report.h[i], errs.join(","))?;
    }
    for (f, s) in &report.slopes {
        writeln!(out, "slope {f} = {s:.4}")?;
    }
    Ok(())
}
