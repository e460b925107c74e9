use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::dynamics::Snapshot;
use crate::error::{Error, Result};
use crate::lattice::{density, l2_density_error, RealField, Window};
use crate::linalg::C64;
use crate::transforms::TransformSpec;

use super::config::ScenarioConfig;

/// A density at a recorded time.
#[derive(Clone, Debug, PartialEq)]
pub struct DensitySnapshot {
    pub time: f64,
    pub density: RealField,
}

impl DensitySnapshot {
    pub fn of<const C: usize>(snap: &Snapshot<C>) -> Self {
        Self {
            time: snap.time,
            density: density(&snap.field),
        }
    }
}

pub fn densities<const C: usize>(snaps: &[Snapshot<C>]) -> Vec<DensitySnapshot> {
    snaps.iter().map(DensitySnapshot::of).collect()
}

/// Relative density error inside `[-half_width, half_width]`, per snapshot.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindowedSeries {
    pub half_width: f64,
    pub values: Vec<f64>,
}

/// Errors of one test pipeline against a reference pipeline.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineComparison {
    pub label: String,
    pub global: Vec<f64>,
    pub windowed: Vec<WindowedSeries>,
}

impl PipelineComparison {
    /// Series for the window closest to `half_width`.
    pub fn window(&self, half_width: f64) -> Option<&WindowedSeries> {
        self.windowed
            .iter()
            .filter(|w| (w.half_width - half_width).abs() <= 1e-12 * half_width.abs().max(1.0))
            .min_by(|a, b| {
                (a.half_width - half_width)
                    .abs()
                    .total_cmp(&(b.half_width - half_width).abs())
            })
    }
}

/// Per-snapshot relative L2 density errors of `test` against `reference`,
/// over the whole domain and in each centered window.
pub fn compare_pipelines(
    label: &str,
    reference: &[DensitySnapshot],
    test: &[DensitySnapshot],
    half_widths: &[f64],
) -> Result<PipelineComparison> {
    if reference.len() != test.len() {
        return Err(Error::ScheduleMismatch(format!(
            "{} reference snapshots vs {} test snapshots",
            reference.len(),
            test.len()
        )));
    }
    for (r, t) in reference.iter().zip(test) {
        if r.time != t.time {
            return Err(Error::ScheduleMismatch(format!(
                "snapshot at t = {} paired with t = {}",
                r.time, t.time
            )));
        }
        if r.density.grid() != t.density.grid() {
            return Err(Error::GridMismatch);
        }
    }
    let global = reference
        .iter()
        .zip(test)
        .map(|(r, t)| l2_density_error(&r.density, &t.density, None))
        .collect::<Result<Vec<_>>>()?;
    let windowed = half_widths
        .iter()
        .map(|&hw| {
            let values = reference
                .iter()
                .zip(test)
                .map(|(r, t)| {
                    let win = Window::centered(r.density.grid(), hw);
                    l2_density_error(&r.density, &t.density, Some(win))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(WindowedSeries { half_width: hw, values })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PipelineComparison {
        label: label.to_string(),
        global,
        windowed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Below,
    AtMost,
    AtLeast,
}

/// One acceptance assertion evaluated by a scenario.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub relation: Relation,
    pub limit: f64,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, value: f64, relation: Relation, limit: f64) -> Self {
        let passed = match relation {
            Relation::Below => value < limit,
            Relation::AtMost => value <= limit,
            Relation::AtLeast => value >= limit,
        };
        Self {
            name: name.into(),
            value,
            relation,
            limit,
            passed,
        }
    }
}

/// Everything a scenario measured, plus the configuration that produced it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub scenario: String,
    pub times: Vec<f64>,
    pub dt: f64,
    pub n_steps: usize,
    pub transform: TransformSpec,
    pub comparisons: Vec<PipelineComparison>,
    /// Norm of each pipeline's field per snapshot.
    pub norms: BTreeMap<String, Vec<f64>>,
    /// `⟨x⟩` of each pipeline per snapshot.
    pub mean_positions: BTreeMap<String, Vec<f64>>,
    /// Rescale factors applied after non-unitary transforms.
    pub normalization: BTreeMap<String, f64>,
    /// Max pointwise residual of the density relation, per snapshot.
    pub density_relation_residual: Option<Vec<f64>>,
    /// Scenario-specific per-snapshot diagnostics.
    pub traces: BTreeMap<String, Vec<f64>>,
    pub checks: Vec<Check>,
    pub config: ScenarioConfig,
}

impl ComparisonReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn comparison(&self, label: &str) -> Option<&PipelineComparison> {
        self.comparisons.iter().find(|c| c.label == label)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Field values of one pipeline at every recorded time, for emission.
#[derive(Clone, Debug, PartialEq)]
pub struct Movie {
    pub label: String,
    pub components: usize,
    pub frames: Vec<Frame>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Frame {
    pub time: f64,
    pub x: Vec<f64>,
    /// Node-major: `values[j * components + c]`.
    pub values: Vec<C64>,
}

impl Movie {
    pub fn from_snapshots<const C: usize>(label: &str, snaps: &[Snapshot<C>]) -> Self {
        Self {
            label: label.to_string(),
            components: C,
            frames: snaps
                .iter()
                .map(|s| Frame {
                    time: s.time,
                    x: s.field.grid().nodes(),
                    values: s.field.values().iter().flatten().copied().collect(),
                })
                .collect(),
        }
    }
}

pub(crate) fn norm_trace<const C: usize>(snaps: &[Snapshot<C>]) -> Vec<f64> {
    snaps.iter().map(|s| s.field.norm()).collect()
}

pub(crate) fn mean_position_trace<const C: usize>(snaps: &[Snapshot<C>]) -> Vec<f64> {
    snaps.iter().map(|s| s.field.mean_position()).collect()
}
