//! Experiment configuration read from flat `key = value` files.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use apem_core::{EySystem, FluidBc, SchemeKind};
use serde::Serialize;

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Case {
    Shock,
    Rarefaction,
    ShockMagnetized,
    PosLow,
    PosHigh,
    /// Periodic sinusoidal velocity perturbation.
    Smooth,
    /// Gaussian electromagnetic pulse in vacuum.
    Pulse,
}

impl Case {
    pub const ALL: [Case; 7] =
        [Case::Shock, Case::Rarefaction, Case::ShockMagnetized, Case::PosLow, Case::PosHigh, Case::Smooth, Case::Pulse];

    pub fn name(&self) -> &'static str {
        match self {
            Case::Shock => "shock",
            Case::Rarefaction => "rarefaction",
            Case::ShockMagnetized => "shock-magnetized",
            Case::PosLow => "pos-low",
            Case::PosHigh => "pos-high",
            Case::Smooth => "smooth",
            Case::Pulse => "pulse",
        }
    }

    pub fn is_pos(&self) -> bool {
        matches!(self, Case::PosLow | Case::PosHigh)
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Case {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        Case::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| HarnessError::Config(format!("unknown case {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    Classical,
    Ap,
}

impl Scheme {
    pub fn kind(&self) -> SchemeKind {
        match self {
            Scheme::Classical => SchemeKind::Classical,
            Scheme::Ap => SchemeKind::Ap,
        }
    }
}

impl FromStr for Scheme {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "classical" | "0,0,1" => Ok(Scheme::Classical),
            "ap" | "1,1,1" => Ok(Scheme::Ap),
            other => Err(HarnessError::Config(format!("unknown scheme {other:?}; use classical or ap"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FluidBoundary {
    Neumann,
    Periodic,
}

impl FluidBoundary {
    pub fn core(&self) -> FluidBc {
        match self {
            FluidBoundary::Neumann => FluidBc::Neumann,
            FluidBoundary::Periodic => FluidBc::Periodic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EmBoundary {
    ZeroField,
    SilverMuller,
    Periodic,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub case: Case,
    /// 1 or 2.
    pub fluids: u8,
    pub scheme: Scheme,
    /// Scaled Debye length; derived from the physical inputs for the POS cases when unset.
    pub lambda: Option<f64>,
    /// Defaults to `Δx = 10λ` for the POS cases.
    pub n_cells: Option<usize>,
    pub cfl: f64,
    /// Defaults to 2.5 ns for the POS cases.
    pub t_end: Option<f64>,
    pub x_min: f64,
    pub x_max: f64,
    pub u_left: f64,
    pub u_right: f64,
    pub bz0: f64,
    pub eps2: f64,
    /// Dimensionless temperature of the isothermal law.
    pub temperature: f64,
    pub fluid_bc: FluidBoundary,
    pub em_bc: EmBoundary,
    /// Dimensionless incident `E_y`; defaults to -1.8e8 V/m scaled by `E0` for POS.
    pub incident_amplitude: Option<f64>,
    /// Dimensionless rise time; defaults to 10 ns for POS.
    pub incident_rise_time: Option<f64>,
    /// POS physical inputs: density (m⁻³), temperature (eV), length unit (m), ion mass (u).
    pub n0: f64,
    pub t0_ev: f64,
    pub x0: f64,
    pub ion_mass_amu: f64,
    pub plasma_min: f64,
    pub plasma_max: f64,
    /// Raised-cosine transition width of the POS density profile.
    pub ramp_width: f64,
    /// Velocity amplitude for `smooth`, field amplitude for `pulse`.
    pub amplitude: f64,
    pub pulse_center: f64,
    pub pulse_width: f64,
    /// Fixed time step; overrides the CFL rule.
    pub dt: Option<f64>,
    /// Target step as a multiple of the classical Maxwell step `cfl·h·λ`, capped by the
    /// scheme's own CFL step.
    pub maxwell_dt_multiple: Option<f64>,
    pub max_steps: usize,
    pub snapshot_times: Vec<f64>,
    pub ey_system: EySystemChoice,
    pub vacuum_density: f64,
    pub density_floor: f64,
    pub output_dir: Option<PathBuf>,
    pub output_prefix: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EySystemChoice {
    Current,
    History,
}

impl EySystemChoice {
    pub fn core(&self) -> EySystem {
        match self {
            EySystemChoice::Current => EySystem::Current,
            EySystemChoice::History => EySystem::History,
        }
    }
}

pub const KEYS: [&str; 37] = [
    "case",
    "fluids",
    "scheme",
    "lambda",
    "n_cells",
    "cfl",
    "t_end",
    "x_min",
    "x_max",
    "u_left",
    "u_right",
    "bz0",
    "eps2",
    "temperature",
    "fluid_bc",
    "em_bc",
    "incident_amplitude",
    "incident_rise_time",
    "n0",
    "t0_ev",
    "x0",
    "ion_mass_amu",
    "plasma_min",
    "plasma_max",
    "ramp_width",
    "amplitude",
    "pulse_center",
    "pulse_width",
    "dt",
    "maxwell_dt_multiple",
    "max_steps",
    "snapshot_times",
    "ey_system",
    "vacuum_density",
    "density_floor",
    "output_dir",
    "output_prefix",
];

impl ExperimentConfig {
    /// Defaults of a case.
    pub fn new(case: Case) -> Self {
        let mut c = ExperimentConfig {
            case,
            fluids: 1,
            scheme: Scheme::Ap,
            lambda: None,
            n_cells: Some(1000),
            cfl: 0.5,
            t_end: Some(5e-4),
            x_min: -0.1,
            x_max: 0.1,
            u_left: 1.0,
            u_right: -1.0,
            bz0: 0.0,
            eps2: 1e-4,
            temperature: 1.0,
            fluid_bc: FluidBoundary::Neumann,
            em_bc: EmBoundary::ZeroField,
            incident_amplitude: None,
            incident_rise_time: None,
            n0: 1e16,
            t0_ev: 5.0,
            x0: 0.1,
            ion_mass_amu: 12.0,
            plasma_min: 0.5,
            plasma_max: 1.5,
            ramp_width: 0.05,
            amplitude: 0.1,
            pulse_center: 0.5,
            pulse_width: 0.05,
            dt: None,
            maxwell_dt_multiple: None,
            max_steps: 1_000_000,
            snapshot_times: Vec::new(),
            ey_system: EySystemChoice::Current,
            vacuum_density: 0.0,
            density_floor: apem_core::DENSITY_FLOOR,
            output_dir: None,
            output_prefix: case.name().to_string(),
        };
        match case {
            Case::Shock => {}
            Case::Rarefaction => {
                c.u_left = -100.0;
                c.u_right = 100.0;
                c.t_end = Some(2e-4);
            }
            Case::ShockMagnetized => {
                c.x_min = -0.2;
                c.x_max = 0.2;
                c.bz0 = 0.2;
                c.em_bc = EmBoundary::SilverMuller;
            }
            Case::PosLow | Case::PosHigh => {
                c.n0 = if case == Case::PosLow { 1e16 } else { 1e18 };
                c.x_min = 0.0;
                c.x_max = 2.0;
                c.u_left = 0.0;
                c.u_right = 0.0;
                c.n_cells = None;
                c.t_end = None;
                c.em_bc = EmBoundary::SilverMuller;
                c.maxwell_dt_multiple = Some(100.0);
            }
            Case::Smooth => {
                c.x_min = 0.0;
                c.x_max = 1.0;
                c.n_cells = Some(400);
                c.t_end = Some(0.1);
                c.u_left = 0.0;
                c.u_right = 0.0;
                c.fluid_bc = FluidBoundary::Periodic;
                c.em_bc = EmBoundary::Periodic;
            }
            Case::Pulse => {
                c.x_min = 0.0;
                c.x_max = 1.0;
                c.n_cells = Some(400);
                c.t_end = None;
                c.u_left = 0.0;
                c.u_right = 0.0;
                c.amplitude = 1.0;
                c.scheme = Scheme::Classical;
                c.em_bc = EmBoundary::SilverMuller;
            }
        }
        c
    }

    /// Parses `key = value` lines; `#` starts a comment. `case` selects the
    /// defaults, the other keys override them.
    pub fn parse(text: &str) -> Result<Self> {
        let mut pairs: BTreeMap<String, (usize, String)> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| HarnessError::Config(format!("line {}: expected key = value, got {raw:?}", i + 1)))?;
            let key = k.trim().to_string();
            if !KEYS.contains(&key.as_str()) {
                return Err(HarnessError::Config(format!("line {}: unknown key {key:?}", i + 1)));
            }
            if pairs.insert(key.clone(), (i + 1, v.trim().to_string())).is_some() {
                return Err(HarnessError::Config(format!("line {}: duplicate key {key:?}", i + 1)));
            }
        }
        let case = match pairs.remove("case") {
            Some((_, v)) => v.parse()?,
            None => return Err(HarnessError::Config("missing required key \"case\"".into())),
        };
        let mut cfg = ExperimentConfig::new(case);
        for (key, (line, value)) in &pairs {
            cfg.set(key, value).map_err(|e| match e {
                HarnessError::Config(m) => HarnessError::Config(format!("line {line}: {m}")),
                other => other,
            })?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Sets one key from its textual value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        match key {
            "case" => {
                let case: Case = v.parse()?;
                if case != self.case {
                    return Err(HarnessError::Config("case can only be chosen when the config is created".into()));
                }
            }
            "fluids" => {
                self.fluids = match v {
                    "1" => 1,
                    "2" => 2,
                    _ => return Err(HarnessError::Config(format!("fluids must be 1 or 2, got {v:?}"))),
                }
            }
            "scheme" => self.scheme = v.parse()?,
            "lambda" => self.lambda = Some(num(key, v)?),
            "n_cells" => self.n_cells = Some(int(key, v)?),
            "cfl" => self.cfl = num(key, v)?,
            "t_end" => self.t_end = Some(num(key, v)?),
            "x_min" => self.x_min = num(key, v)?,
            "x_max" => self.x_max = num(key, v)?,
            "u_left" => self.u_left = num(key, v)?,
            "u_right" => self.u_right = num(key, v)?,
            "bz0" => self.bz0 = num(key, v)?,
            "eps2" => self.eps2 = num(key, v)?,
            "temperature" => self.temperature = num(key, v)?,
            "fluid_bc" => {
                self.fluid_bc = match v {
                    "neumann" => FluidBoundary::Neumann,
                    "periodic" => FluidBoundary::Periodic,
                    _ => return Err(HarnessError::Config(format!("fluid_bc must be neumann or periodic, got {v:?}"))),
                }
            }
            "em_bc" => {
                self.em_bc = match v {
                    "zero-field" => EmBoundary::ZeroField,
                    "silver-muller" => EmBoundary::SilverMuller,
                    "periodic" => EmBoundary::Periodic,
                    _ => {
                        return Err(HarnessError::Config(format!(
                            "em_bc must be zero-field, silver-muller or periodic, got {v:?}"
                        )))
                    }
                }
            }
            "incident_amplitude" => self.incident_amplitude = Some(num(key, v)?),
            "incident_rise_time" => self.incident_rise_time = Some(num(key, v)?),
            "n0" => self.n0 = num(key, v)?,
            "t0_ev" => self.t0_ev = num(key, v)?,
            "x0" => self.x0 = num(key, v)?,
            "ion_mass_amu" => self.ion_mass_amu = num(key, v)?,
            "plasma_min" => self.plasma_min = num(key, v)?,
            "plasma_max" => self.plasma_max = num(key, v)?,
            "ramp_width" => self.ramp_width = num(key, v)?,
            "amplitude" => self.amplitude = num(key, v)?,
            "pulse_center" => self.pulse_center = num(key, v)?,
            "pulse_width" => self.pulse_width = num(key, v)?,
            "dt" => self.dt = Some(num(key, v)?),
            "maxwell_dt_multiple" => {
                self.maxwell_dt_multiple = if v == "none" { None } else { Some(num(key, v)?) }
            }
            "max_steps" => self.max_steps = int(key, v)?,
            "snapshot_times" => {
                self.snapshot_times = if v.is_empty() { Vec::new() } else { num_list(key, v)? };
            }
            "ey_system" => {
                self.ey_system = match v {
                    "current" => EySystemChoice::Current,
                    "history" => EySystemChoice::History,
                    _ => return Err(HarnessError::Config(format!("ey_system must be current or history, got {v:?}"))),
                }
            }
            "vacuum_density" => self.vacuum_density = num(key, v)?,
            "density_floor" => self.density_floor = num(key, v)?,
            "output_dir" => self.output_dir = Some(PathBuf::from(v)),
            "output_prefix" => self.output_prefix = v.to_string(),
            _ => return Err(HarnessError::Config(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(HarnessError::Config(m));
        if let Some(l) = self.lambda {
            if !(l >= 0.0 && l.is_finite()) {
                return bad(format!("lambda must be finite and >= 0, got {l}"));
            }
            if l == 0.0 && self.scheme == Scheme::Classical {
                return bad("lambda = 0 requires scheme = ap".into());
            }
        }
        if self.n_cells == Some(0) {
            return bad("n_cells must be positive".into());
        }
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return bad(format!("cfl must lie in (0, 1], got {}", self.cfl));
        }
        if let Some(t) = self.t_end {
            if !(t > 0.0 && t.is_finite()) {
                return bad(format!("t_end must be positive, got {t}"));
            }
        }
        if !(self.x_max > self.x_min) || !self.x_min.is_finite() || !self.x_max.is_finite() {
            return bad(format!("domain [{}, {}] is empty", self.x_min, self.x_max));
        }
        if !(self.eps2 > 0.0) || !(self.temperature > 0.0) {
            return bad("eps2 and temperature must be positive".into());
        }
        if (self.fluid_bc == FluidBoundary::Periodic) != (self.em_bc == EmBoundary::Periodic) {
            return bad("periodic boundaries must be chosen for both fluid_bc and em_bc or for neither".into());
        }
        if let Some(d) = self.dt {
            if !(d > 0.0 && d.is_finite()) {
                return bad(format!("dt must be positive, got {d}"));
            }
        }
        if let Some(k) = self.maxwell_dt_multiple {
            if !(k > 0.0 && k.is_finite()) {
                return bad(format!("maxwell_dt_multiple must be positive, got {k}"));
            }
        }
        if self.case.is_pos() {
            for (v, name) in [(self.n0, "n0"), (self.t0_ev, "t0_ev"), (self.x0, "x0"), (self.ion_mass_amu, "ion_mass_amu")] {
                if !(v > 0.0 && v.is_finite()) {
                    return bad(format!("{name} must be positive, got {v}"));
                }
            }
            if !(self.x_min < self.plasma_min && self.plasma_min < self.plasma_max && self.plasma_max < self.x_max) {
                return bad("plasma region must lie strictly inside the domain".into());
            }
            if !(self.ramp_width >= 0.0 && 2.0 * self.ramp_width <= self.plasma_max - self.plasma_min) {
                return bad(format!("ramp_width {} does not fit in the plasma region", self.ramp_width));
            }
        }
        if self.case == Case::Pulse && !(self.pulse_width > 0.0) {
            return bad("pulse_width must be positive".into());
        }
        if self.snapshot_times.iter().any(|t| !(*t >= 0.0 && t.is_finite())) {
            return bad("snapshot_times must be finite and >= 0".into());
        }
        if !(self.density_floor > 0.0) {
            return bad("density_floor must be positive".into());
        }
        Ok(())
    }
}

fn num(key: &str, v: &str) -> Result<f64> {
    v.parse::<f64>().map_err(|_| HarnessError::Config(format!("{key}: expected a number, got {v:?}")))
}

fn int(key: &str, v: &str) -> Result<usize> {
    if let Ok(n) = v.parse::<usize>() {
        return Ok(n);
    }
    // accept 1e4-style integers
    match v.parse::<f64>() {
        Ok(x) if x >= 0.0 && x.fract() == 0.0 && x < 1e15 => Ok(x as usize),
        _ => Err(HarnessError::Config(format!("{key}: expected a non-negative integer, got {v:?}"))),
    }
}

pub(crate) fn num_list(key: &str, v: &str) -> Result<Vec<f64>> {
    v.split(',').map(|s| num(key, s.trim())).collect()
}

pub(crate) fn int_list(key: &str, v: &str) -> Result<Vec<usize>> {
    v.split(',').map(|s| int(key, s.trim())).collect()
}
