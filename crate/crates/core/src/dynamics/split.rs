//! Generic Strang split-step propagator: half local step, exact kinetic step
//! in momentum space, half local step.

use crate::error::{Error, Result};
use crate::lattice::{FftPair, Field, Grid1D};
use crate::linalg::{apply_real_block, mat_vec, Mat, C64, ZERO};
use crate::parallel;

/// Pointwise half-step operator.
#[derive(Clone, Debug)]
pub(crate) enum LocalStep<const C: usize> {
    Identity,
    /// Complex-linear `C×C` matrix per node.
    Linear(Vec<Mat<C>>),
    /// Real-linear map per node, stored as row-major `(2C)×(2C)` blocks acting
    /// on `(Re ψ₀, Im ψ₀, …)`.
    RealLinear(Vec<f64>),
}

/// One propagator for a fixed grid, time step and generator.
#[derive(Clone, Debug)]
pub struct SplitStep<const C: usize> {
    grid: Grid1D,
    dt: f64,
    kinetic: Vec<Mat<C>>,
    local: LocalStep<C>,
    fft: FftPair,
    buf: Vec<C64>,
    scratch: Vec<C64>,
}

impl<const C: usize> SplitStep<C> {
    pub(crate) fn new(grid: Grid1D, dt: f64, kinetic: Vec<Mat<C>>, local: LocalStep<C>) -> Self {
        debug_assert_eq!(kinetic.len(), grid.len());
        let fft = FftPair::new(grid.len());
        let scratch = vec![ZERO; fft.scratch_len()];
        Self {
            grid,
            dt,
            kinetic,
            local,
            fft,
            buf: vec![ZERO; grid.len()],
            scratch,
        }
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    fn apply_local(&self, values: &mut [[C64; C]]) {
        match &self.local {
            LocalStep::Identity => {}
            LocalStep::Linear(mats) => {
                parallel::for_each_indexed(values, |j, v| *v = mat_vec(&mats[j], v));
            }
            LocalStep::RealLinear(blocks) => {
                let stride = 4 * C * C;
                parallel::for_each_indexed(values, |j, v| {
                    *v = apply_real_block(&blocks[j * stride..(j + 1) * stride], v)
                });
            }
        }
    }

    fn transform(&mut self, values: &mut [[C64; C]], forward: bool) {
        for c in 0..C {
            for (b, v) in self.buf.iter_mut().zip(values.iter()) {
                *b = v[c];
            }
            if forward {
                self.fft.forward(&mut self.buf, &mut self.scratch);
            } else {
                self.fft.inverse(&mut self.buf, &mut self.scratch);
            }
            for (v, b) in values.iter_mut().zip(&self.buf) {
                v[c] = *b;
            }
        }
    }

    /// Advances `field` by one step in place.
    pub fn step(&mut self, field: &mut Field<C>) -> Result<()> {
        field.check_grid(&self.grid)?;
        let values = field.values_mut();
        self.apply_local(values);
        self.transform(values, true);
        let kinetic = &self.kinetic;
        parallel::for_each_indexed(values, |j, v| *v = mat_vec(&kinetic[j], v));
        self.transform(values, false);
        self.apply_local(values);
        Ok(())
    }

    pub fn advance(&mut self, field: &mut Field<C>, steps: usize) -> Result<()> {
        for _ in 0..steps {
            self.step(field)?;
        }
        Ok(())
    }
}

/// Time-stepping parameters shared by all propagators.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct EvolutionConfig {
    pub dt: f64,
    pub n_steps: usize,
    /// Snapshot stride in steps; 0 records only the initial and final states.
    pub record_every: usize,
    pub mass: f64,
}

impl EvolutionConfig {
    pub fn new(dt: f64, n_steps: usize, record_every: usize, mass: f64) -> Result<Self> {
        let cfg = Self {
            dt,
            n_steps,
            record_every,
            mass,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidEvolution(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.mass >= 0.0 && self.mass.is_finite()) {
            return Err(Error::InvalidEvolution(format!(
                "mass must be non-negative, got {}",
                self.mass
            )));
        }
        if self.record_every != 0 && !self.n_steps.is_multiple_of(self.record_every) {
            return Err(Error::InvalidEvolution(format!(
                "record_every = {} does not divide n_steps = {}",
                self.record_every, self.n_steps
            )));
        }
        Ok(())
    }

    pub fn final_time(&self) -> f64 {
        self.n_steps as f64 * self.dt
    }

    /// Step indices at which snapshots are taken (always includes 0 and `n_steps`).
    pub fn record_steps(&self) -> Vec<usize> {
        match self.n_steps.checked_div(self.record_every) {
            Some(frames) => (0..=frames).map(|k| k * self.record_every).collect(),
            None if self.n_steps == 0 => vec![0],
            None => vec![0, self.n_steps],
        }
    }

    pub fn record_times(&self) -> Vec<f64> {
        self.record_steps()
            .into_iter()
            .map(|s| s as f64 * self.dt)
            .collect()
    }
}

/// A field at a recorded time.
#[derive(Clone, Debug, PartialEq)]
pub struct Snapshot<const C: usize> {
    pub time: f64,
    pub field: Field<C>,
}

/// Runs `prop` over the schedule of `cfg`, recording snapshots.
pub(crate) fn run_schedule<const C: usize>(
    prop: &mut SplitStep<C>,
    initial: &Field<C>,
    cfg: &EvolutionConfig,
) -> Result<Vec<Snapshot<C>>> {
    cfg.validate()?;
    initial.check_grid(prop.grid())?;
    let mut field = initial.clone();
    let mut out = Vec::new();
    let mut done = 0;
    for target in cfg.record_steps() {
        prop.advance(&mut field, target - done)?;
        done = target;
        field.ensure_finite("time evolution")?;
        out.push(Snapshot {
            time: target as f64 * cfg.dt,
            field: field.clone(),
        });
    }
    Ok(out)
}
