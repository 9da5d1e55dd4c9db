//! Monte Carlo word-error-rate campaigns.
//!
//! Every trial draws from its own ChaCha stream selected by `(cell, trial)`, and
//! trials are reduced in index order, so results do not depend on how many
//! workers run them.

use std::io::Write;
use std::time::Instant;

use anyhow::{Context, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use eaq_turbo::channel::ChannelModel;
use eaq_turbo::decoder::{judge, turbo_decode, DecoderConfig};
use eaq_turbo::turbo::{inner_frames, TurboCode};
use eaq_turbo::ConvolutionalEncoder;

pub const DEFAULT_MIN_FAILURES: u64 = 100;
pub const DEFAULT_MAX_TRIALS: u64 = 1_000_000;

/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

#[derive(Clone, Debug, Serialize)]
pub struct SimulationConfig {
    #[serde(skip)]
    pub outer: ConvolutionalEncoder,
    #[serde(skip)]
    pub inner: ConvolutionalEncoder,
    pub outer_name: String,
    pub inner_name: String,
    pub frames_outer: usize,
    pub ps: Vec<f64>,
    pub p_ebit: f64,
    pub seed: u64,
    pub min_failures: u64,
    pub max_trials: u64,
    pub max_iterations: usize,
    /// Trials dispatched together; part of the config only for throughput.
    pub batch: usize,
}

impl SimulationConfig {
    pub fn validate(&self) -> Result<()> {
        anyhow::ensure!(self.min_failures >= 1, "min_failures must be at least 1");
        anyhow::ensure!(self.max_trials >= 1, "max_trials must be at least 1");
        anyhow::ensure!(self.frames_outer >= 1, "frames must be at least 1");
        for &p in self.ps.iter().chain([&self.p_ebit]) {
            ChannelModel::new(p, 0.0).map_err(anyhow::Error::from)?;
        }
        inner_frames(&self.outer, &self.inner, self.frames_outer)?;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CellResult {
    pub p: f64,
    pub p_ebit: f64,
    pub logical_qubits: usize,
    pub trials: u64,
    pub failures: u64,
    pub mean_iters: f64,
    pub seconds: f64,
}

impl CellResult {
    pub fn wer(&self) -> f64 {
        self.failures as f64 / self.trials as f64
    }

    pub fn wilson(&self) -> (f64, f64) {
        wilson_interval(self.failures, self.trials)
    }
}

/// Wilson score interval at 95% confidence.
pub fn wilson_interval(failures: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let phat = failures as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let centre = (phat + z2 / (2.0 * n)) / denom;
    let half = Z95 * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if failures == 0 { 0.0 } else { (centre - half).max(0.0) };
    let hi = if failures == trials { 1.0 } else { (centre + half).min(1.0) };
    (lo, hi)
}

/// Outcome of one trial.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Trial {
    pub failed: bool,
    pub iterations: usize,
}

/// The per-trial random stream.
pub fn trial_rng(seed: u64, cell: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((cell << 40) | trial);
    rng
}

/// Fresh interleaver, channel error, Bob-side ebit error, decode, judge.
pub fn run_trial(cfg: &SimulationConfig, channel: &ChannelModel, cell: u64, trial: u64) -> Result<Trial> {
    let mut rng = trial_rng(cfg.seed, cell, trial);
    let code = TurboCode::build(cfg.outer.clone(), cfg.inner.clone(), cfg.frames_outer, &mut rng)?;
    let error = channel.sample_error(code.physical_len(), &mut rng);
    let bob = channel.sample_ebit_error(code.ebits(), &mut rng);
    let mut inv = code.invert(&error)?;
    code.apply_ebit_noise(&mut inv.syndrome, &bob);
    let config = DecoderConfig {
        max_iterations: cfg.max_iterations,
    };
    Ok(match turbo_decode(&code, &inv.syndrome, channel, config) {
        Ok(r) => Trial {
            failed: !judge(&r, &inv.labels),
            iterations: r.iterations,
        },
        // a decoder that cannot explain the syndrome has failed this trial
        Err(eaq_turbo::Error::DecodeFailure(_)) => Trial {
            failed: true,
            iterations: cfg.max_iterations,
        },
        Err(e) => return Err(e.into()),
    })
}

pub fn run_cell(cfg: &SimulationConfig, cell: u64, p: f64, pool: &rayon::ThreadPool) -> Result<CellResult> {
    let channel = ChannelModel::new(p, cfg.p_ebit)?;
    let start = Instant::now();
    let logical_qubits = cfg.frames_outer * cfg.outer.signature().k_q;
    let (mut trials, mut failures, mut iters) = (0u64, 0u64, 0u64);
    'outer: while trials < cfg.max_trials {
        let n = (cfg.batch as u64).min(cfg.max_trials - trials);
        let batch: Vec<Result<Trial>> = pool.install(|| {
            (trials..trials + n)
                .into_par_iter()
                .map(|t| run_trial(cfg, &channel, cell, t))
                .collect()
        });
        for r in batch {
            let r = r?;
            trials += 1;
            iters += r.iterations as u64;
            failures += r.failed as u64;
            if failures >= cfg.min_failures {
                break 'outer;
            }
        }
    }
    Ok(CellResult {
        p,
        p_ebit: cfg.p_ebit,
        logical_qubits,
        trials,
        failures,
        mean_iters: iters as f64 / trials.max(1) as f64,
        seconds: start.elapsed().as_secs_f64(),
    })
}

pub fn run_campaign(cfg: &SimulationConfig, workers: usize) -> Result<Vec<CellResult>> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .context("building the worker pool")?;
    cfg.ps
        .iter()
        .enumerate()
        .map(|(cell, &p)| run_cell(cfg, cell as u64, p, &pool))
        .collect()
}

pub const CSV_HEADER: &str = "p,p_ebit,logical_qubits,trials,failures,wer,wilson_lo,wilson_hi,mean_iters,seconds";

pub fn write_csv<W: Write>(
    out: &mut W,
    cfg: &SimulationConfig,
    results: &[CellResult],
    timing: bool,
) -> Result<()> {
    writeln!(out, "# eaqturbo {}", crate::VERSION)?;
    writeln!(out, "# config {}", serde_json::to_string(cfg)?)?;
    writeln!(out, "{CSV_HEADER}")?;
    for r in results {
        let (lo, hi) = r.wilson();
        let secs = if timing { r.seconds } else { 0.0 };
        writeln!(
            out,
            "{},{},{},{},{},{},{:.6e},{:.6e},{:.4},{:.3}",
            r.p,
            r.p_ebit,
            r.logical_qubits,
            r.trials,
            r.failures,
            r.wer(),
            lo,
            hi,
            r.mean_iters,
            secs
        )?;
    }
    Ok(())
}
