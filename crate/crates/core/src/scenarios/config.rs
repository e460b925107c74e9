use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dynamics::EvolutionConfig;
use crate::error::{Error, Result};
use crate::lattice::{gaussian_packet, Field, Grid1D};
use crate::linalg::C64;

/// The named experiments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    Fig1,
    MajoranaLinear,
    DiracF4,
    MasslessMass,
    TwoBody,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 5] = [
        ScenarioKind::Fig1,
        ScenarioKind::MajoranaLinear,
        ScenarioKind::DiracF4,
        ScenarioKind::MasslessMass,
        ScenarioKind::TwoBody,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::Fig1 => "fig1",
            ScenarioKind::MajoranaLinear => "majorana_linear",
            ScenarioKind::DiracF4 => "dirac_f4",
            ScenarioKind::MasslessMass => "massless_mass",
            ScenarioKind::TwoBody => "two_body",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            ScenarioKind::Fig1 => {
                "Dirac, V = g cos(λx) σz: oracle vs transformed-free vs plain-free movies"
            }
            ScenarioKind::MajoranaLinear => "Majorana, V = g x: exact elimination",
            ScenarioKind::DiracF4 => "Dirac, V = f4(x) σx (linear, constant or imaginary): exact elimination",
            ScenarioKind::MasslessMass => "massless Dirac with a σz mass term, encoded near the origin",
            ScenarioKind::TwoBody => "two-body Majorana oscillator, with the Dirac oscillator as control",
        }
    }

    /// Spinor components carried by the scenario's fields.
    pub fn components(self) -> usize {
        match self {
            ScenarioKind::TwoBody => 4,
            _ => 2,
        }
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        ScenarioKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown scenario {s:?}"))
    }
}

/// Shape of the σx coefficient in the `dirac_f4` scenario.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum F4Form {
    /// `f4 = g x`
    Linear,
    /// `f4 = g`
    Constant,
    /// `f4 = i ε`
    Imaginary,
}

impl F4Form {
    pub fn name(self) -> &'static str {
        match self {
            F4Form::Linear => "linear",
            F4Form::Constant => "constant",
            F4Form::Imaginary => "imaginary",
        }
    }
}

impl FromStr for F4Form {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        [F4Form::Linear, F4Form::Constant, F4Form::Imaginary]
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown f4 form {s:?}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridParams {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PacketParams {
    pub x0: f64,
    pub sigma: f64,
    pub k0: f64,
    /// Spinor composition; 2 entries for one body, 4 for two bodies.
    pub weights: Vec<C64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhysicsParams {
    pub mass: f64,
    pub g: f64,
    pub lambda: f64,
    pub omega: f64,
    pub epsilon: f64,
    pub f4_form: F4Form,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvolutionParams {
    /// Upper bound on the step; the step actually used divides the snapshot
    /// interval evenly.
    pub dt: f64,
    pub t_final: f64,
    /// Number of recorded intervals; `snapshots + 1` frames including `t = 0`.
    pub snapshots: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonParams {
    /// Half-width of the window used by the headline checks.
    pub central_half_width: f64,
    /// Additional windows as fractions of the domain half-width.
    pub window_fractions: Vec<f64>,
    /// Dimensionless window sweep: `m x_c` for `massless_mass`,
    /// `m ω x_c²` for `two_body`; unused elsewhere.
    pub sweep: Vec<f64>,
}

/// Fully defaulted description of one scenario run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub scenario: ScenarioKind,
    pub grid: GridParams,
    pub packet: PacketParams,
    pub physics: PhysicsParams,
    pub evolution: EvolutionParams,
    pub comparison: ComparisonParams,
}

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

impl ScenarioConfig {
    /// Shipped defaults for `kind`.
    pub fn defaults(kind: ScenarioKind) -> Self {
        let physics = PhysicsParams {
            mass: 4.0,
            g: 2.0,
            lambda: 15.0,
            omega: 0.25,
            epsilon: 0.05,
            f4_form: F4Form::Linear,
        };
        let fractions = vec![0.25, 0.5, 1.0];
        match kind {
            ScenarioKind::Fig1 => Self {
                scenario: kind,
                grid: GridParams { x_min: -4.0, x_max: 4.0, n_points: 2048 },
                packet: PacketParams {
                    x0: 0.0,
                    sigma: 0.35,
                    k0: 0.0,
                    weights: vec![real(1.0), real(0.0)],
                },
                physics,
                evolution: EvolutionParams { dt: 1e-3, t_final: 1.2, snapshots: 12 },
                comparison: ComparisonParams {
                    central_half_width: 1.0,
                    window_fractions: fractions,
                    sweep: Vec::new(),
                },
            },
            ScenarioKind::MajoranaLinear | ScenarioKind::DiracF4 => Self {
                scenario: kind,
                grid: GridParams { x_min: -8.0, x_max: 8.0, n_points: 2048 },
                packet: PacketParams {
                    x0: 0.0,
                    sigma: 0.5,
                    k0: 0.0,
                    weights: vec![real(1.0), real(0.0)],
                },
                physics,
                evolution: EvolutionParams {
                    // Linear f4 with m = 4 needs the finer step for the spinor
                    // comparison to reach 1e-8.
                    dt: if kind == ScenarioKind::DiracF4 { 5e-5 } else { 1e-4 },
                    t_final: 0.5,
                    snapshots: 5,
                },
                comparison: ComparisonParams {
                    central_half_width: 2.0,
                    window_fractions: fractions,
                    sweep: Vec::new(),
                },
            },
            ScenarioKind::MasslessMass => Self {
                scenario: kind,
                grid: GridParams { x_min: -4.0, x_max: 4.0, n_points: 2048 },
                packet: PacketParams {
                    x0: 0.0,
                    sigma: 0.1,
                    k0: 0.0,
                    weights: vec![real(1.0), real(0.0)],
                },
                physics: PhysicsParams { mass: 1.0, ..physics },
                evolution: EvolutionParams { dt: 1e-4, t_final: 0.2, snapshots: 4 },
                comparison: ComparisonParams {
                    central_half_width: 0.5,
                    window_fractions: fractions,
                    sweep: vec![0.1, 0.2, 0.3, 0.5],
                },
            },
            ScenarioKind::TwoBody => Self {
                scenario: kind,
                grid: GridParams { x_min: -4.0, x_max: 4.0, n_points: 1024 },
                packet: PacketParams {
                    x0: 0.0,
                    sigma: 0.2,
                    k0: 0.0,
                    weights: vec![real(1.0), real(0.0), real(0.0), real(0.0)],
                },
                physics,
                evolution: EvolutionParams { dt: 1e-4, t_final: 0.2, snapshots: 4 },
                comparison: ComparisonParams {
                    central_half_width: (0.1f64 / (4.0 * 0.25)).sqrt(),
                    window_fractions: fractions,
                    sweep: vec![0.02, 0.05, 0.1, 0.2, 0.5],
                },
            },
        }
    }

    pub fn grid(&self) -> Result<Grid1D> {
        Grid1D::new(self.grid.x_min, self.grid.x_max, self.grid.n_points)
    }

    pub fn half_width(&self) -> f64 {
        0.5 * (self.grid.x_max - self.grid.x_min)
    }

    /// Step count and stride: the step is the largest one not exceeding
    /// `evolution.dt` that divides each snapshot interval into whole steps.
    pub fn evolution_config(&self, mass: f64) -> Result<EvolutionConfig> {
        let ev = &self.evolution;
        if ev.snapshots == 0 {
            return Err(Error::InvalidEvolution("snapshots must be at least 1".into()));
        }
        if !(ev.dt > 0.0 && ev.dt.is_finite()) {
            return Err(Error::InvalidEvolution(format!("dt must be positive, got {}", ev.dt)));
        }
        if !(ev.t_final > 0.0 && ev.t_final.is_finite()) {
            return Err(Error::InvalidEvolution(format!(
                "t_final must be positive, got {}",
                ev.t_final
            )));
        }
        let interval = ev.t_final / ev.snapshots as f64;
        let ratio = interval / ev.dt;
        let per = if (ratio - ratio.round()).abs() <= 1e-9 * ratio {
            ratio.round()
        } else {
            ratio.ceil()
        }
        .max(1.0) as usize;
        let n_steps = per * ev.snapshots;
        EvolutionConfig::new(ev.t_final / n_steps as f64, n_steps, per, mass)
    }

    /// Window half-widths: the central one followed by the domain fractions.
    pub fn window_half_widths(&self) -> Vec<f64> {
        let hw = self.half_width();
        std::iter::once(self.comparison.central_half_width)
            .chain(self.comparison.window_fractions.iter().map(|f| f * hw))
            .collect()
    }

    pub fn packet<const C: usize>(&self, grid: &Grid1D) -> Result<Field<C>> {
        let w: [C64; C] = self.packet.weights.as_slice().try_into().map_err(|_| {
            Error::PreconditionViolated(format!(
                "packet needs {C} spinor weights, got {}",
                self.packet.weights.len()
            ))
        })?;
        gaussian_packet(grid, self.packet.x0, self.packet.sigma, self.packet.k0, w)
    }

    /// Checks every parameter the named scenario reads.
    pub fn validate(&self) -> Result<()> {
        let grid = self.grid()?;
        let hw = self.half_width();
        let bad = |what: &str| Err(Error::PreconditionViolated(what.to_string()));
        if self.packet.weights.len() != self.scenario.components() {
            return bad(&format!(
                "{} needs {} spinor weights, got {}",
                self.scenario,
                self.scenario.components(),
                self.packet.weights.len()
            ));
        }
        if !(self.packet.x0 >= grid.x_min() && self.packet.x0 <= grid.x_max()) {
            return bad("packet x0 outside the domain");
        }
        let p = &self.physics;
        for (name, v) in [
            ("mass", p.mass),
            ("g", p.g),
            ("lambda", p.lambda),
            ("omega", p.omega),
            ("epsilon", p.epsilon),
        ] {
            if !v.is_finite() {
                return bad(&format!("{name} must be finite"));
            }
        }
        if p.mass < 0.0 {
            return bad("mass must be non-negative");
        }
        let c = &self.comparison;
        if !(c.central_half_width > 0.0 && c.central_half_width <= hw * (1.0 + 1e-12)) {
            return bad("central window must lie within the domain");
        }
        if c.window_fractions.iter().any(|f| !(*f > 0.0 && *f <= 1.0)) {
            return bad("window fractions must lie in (0, 1]");
        }
        if c.sweep.iter().any(|s| !(*s > 0.0 && s.is_finite())) {
            return bad("sweep entries must be positive");
        }
        self.evolution_config(0.0)?;
        // Packet construction reports width and spinor problems.
        match self.scenario.components() {
            4 => self.packet::<4>(&grid).map(|_| ()),
            _ => self.packet::<2>(&grid).map(|_| ()),
        }
    }
}
