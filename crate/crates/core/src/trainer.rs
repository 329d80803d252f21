//! Kernel estimation with the normalized LMS update.
//!
//! One training step at sample `n`:
//!
//! ```text
//! y(n)  = h0 + Σ_p h_p · x_p(n)                    (filter output)
//! e(n)  = d(n) - y(n)                              (error)
//! μ_p   = α_p / (x_p(n) · x_p(n) + φ)              (per-order step size)
//! h_p  += μ_p e(n) x_p(n)                          (update, all orders
//!                                                   from the same e(n))
//! ```
//!
//! Sweeps over the full `(x, d)` pair repeat (epochs) until the mean
//! squared error of an epoch drops below `theta` or `max_epochs` is hit.
//! Stability requires `0 < α_p < 2`; `φ > 0` keeps μ finite when a
//! regressor has no energy. Everything is sequential and deterministic:
//! identical inputs and configuration produce bit-identical kernels.

use crate::error::{Error, Result};
use crate::filter::apply_kernel;
use crate::kernel::{coeff_count, VolterraKernel};
use crate::regressor::RegressorSet;
use crate::rng;
use crate::signal::SignalBuffer;

/// Kernel initialization policy.
///
/// `Identity` starts the filter as a passthrough (`h1[0] = 1`, everything
/// else 0), which converges fastest for systems that deviate only mildly
/// from unity gain. `SeededRandom` draws every coefficient uniformly from
/// [-0.1, 0.1), deterministically per seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitPolicy {
    Identity,
    Zeros,
    SeededRandom,
}

/// NLMS trainer configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainerConfig {
    /// Model order, 1..=3.
    pub order: usize,
    /// Memory length M.
    pub memory: usize,
    /// Per-order step scale α_p; entry `p-1` is used by order p.
    pub alpha: [f64; 3],
    /// Regularizer φ added to the regressor energy.
    pub phi: f64,
    /// Stop once an epoch's mean squared error falls below this.
    pub theta: f64,
    /// Hard cap on the number of epochs.
    pub max_epochs: usize,
    pub init: InitPolicy,
    /// Seed for `InitPolicy::SeededRandom`.
    pub seed: u64,
}

impl TrainerConfig {
    pub const DEFAULT_ALPHA: f64 = 0.5;
    pub const DEFAULT_PHI: f64 = 1e-6;
    pub const DEFAULT_THETA: f64 = 1e-10;
    pub const DEFAULT_MAX_EPOCHS: usize = 100;
    /// Default memory length; diminishing returns set in beyond this for
    /// the loudspeaker-style workloads this crate targets.
    pub const DEFAULT_MEMORY: usize = 65;

    pub fn new(order: usize, memory: usize) -> Self {
        Self {
            order,
            memory,
            alpha: [Self::DEFAULT_ALPHA; 3],
            phi: Self::DEFAULT_PHI,
            theta: Self::DEFAULT_THETA,
            max_epochs: Self::DEFAULT_MAX_EPOCHS,
            init: InitPolicy::Identity,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=3).contains(&self.order) {
            return Err(Error::InvalidConfig(format!(
                "order must be 1, 2 or 3, got {}",
                self.order
            )));
        }
        if self.memory == 0 {
            return Err(Error::InvalidConfig("memory must be at least 1".into()));
        }
        for p in 0..self.order {
            let a = self.alpha[p];
            if !(a.is_finite() && a > 0.0 && a < 2.0) {
                return Err(Error::InvalidConfig(format!(
                    "alpha{} = {a} outside the stable range (0, 2)",
                    p + 1
                )));
            }
        }
        if !(self.phi.is_finite() && self.phi > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "phi must be positive, got {}",
                self.phi
            )));
        }
        if !(self.theta.is_finite() && self.theta > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "theta must be positive, got {}",
                self.theta
            )));
        }
        if self.max_epochs == 0 {
            return Err(Error::InvalidConfig("max_epochs must be at least 1".into()));
        }
        Ok(())
    }
}

/// Per-epoch record of one training run.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainingTrace {
    pub epochs_run: usize,
    /// Mean squared error of each epoch, in order.
    pub epoch_error: Vec<f64>,
    /// True when the `theta` criterion ended training (not the epoch cap).
    pub converged: bool,
}

/// Initial kernel for a configuration.
pub fn init_kernel(config: &TrainerConfig) -> Result<VolterraKernel> {
    let mut kernel = VolterraKernel::zeros(config.order, config.memory)?;
    match config.init {
        InitPolicy::Zeros => {}
        InitPolicy::Identity => kernel.h1_mut()[0] = 1.0,
        InitPolicy::SeededRandom => {
            let mut rng = rng::seeded(config.seed);
            for p in 1..=config.order {
                let n = coeff_count(p, config.memory)?;
                let v: Vec<f64> = (0..n).map(|_| 0.1 * rng::symmetric(&mut rng)).collect();
                match p {
                    1 => kernel.h1_mut().copy_from_slice(&v),
                    2 => kernel.h2_mut().unwrap().copy_from_slice(&v),
                    3 => kernel.h3_mut().unwrap().copy_from_slice(&v),
                    _ => unreachable!(),
                }
            }
        }
    }
    Ok(kernel)
}

/// Normalized step size `α / (‖x_p‖² + φ)`.
pub fn learning_rate(x_p: &[f64], alpha_p: f64, phi: f64) -> f64 {
    let energy: f64 = x_p.iter().map(|v| v * v).sum();
    alpha_p / (energy + phi)
}

/// One NLMS update. Returns the error `e(n) = d(n) - y(n)`; the kernel is
/// updated in place. `sample` is only used in error reports.
///
/// Panics if the regressors do not match the kernel's order and memory.
pub fn nlms_step(
    kernel: &mut VolterraKernel,
    regressors: &RegressorSet,
    desired: f64,
    config: &TrainerConfig,
    sample: usize,
) -> Result<f64> {
    assert_eq!(kernel.memory(), regressors.memory(), "memory mismatch");
    assert_eq!(kernel.order(), regressors.order(), "order mismatch");

    let mut y = kernel.h0();
    for p in 1..=kernel.order() {
        let h = kernel.order_part(p).unwrap();
        let x = regressors.order_part(p).unwrap();
        y += dot(h, x);
    }
    let e = desired - y;
    if !e.is_finite() {
        return Err(Error::NonFiniteUpdate(sample));
    }

    // All orders are corrected with the same error, each scaled by its
    // own regressor energy.
    for p in 1..=config.order {
        let x = regressors.order_part(p).unwrap();
        let g = learning_rate(x, config.alpha[p - 1], config.phi) * e;
        if !g.is_finite() {
            return Err(Error::NonFiniteUpdate(sample));
        }
        let h = match p {
            1 => kernel.h1_mut(),
            2 => kernel.h2_mut().unwrap(),
            3 => kernel.h3_mut().unwrap(),
            _ => unreachable!(),
        };
        for (hv, xv) in h.iter_mut().zip(x) {
            *hv += g * xv;
        }
    }
    Ok(e)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Estimate a kernel from an (input, desired) signal pair.
///
/// Runs sample-by-sample NLMS sweeps until an epoch's mean squared error
/// drops below `config.theta` or `config.max_epochs` is reached. Training
/// aborts with [`Error::Diverged`] when the running error statistic
/// exceeds 1e6 times the initial kernel's mean squared error on the pair.
pub fn train(
    x: &SignalBuffer,
    d: &SignalBuffer,
    config: &TrainerConfig,
) -> Result<(VolterraKernel, TrainingTrace)> {
    config.validate()?;
    train_unchecked(x, d, config)
}

/// [`train`] without configuration validation.
///
/// Exists so stability behaviour outside the `0 < α < 2` range can be
/// exercised directly; normal callers want [`train`].
#[doc(hidden)]
pub fn train_unchecked(
    x: &SignalBuffer,
    d: &SignalBuffer,
    config: &TrainerConfig,
) -> Result<(VolterraKernel, TrainingTrace)> {
    if x.len() != d.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: d.len(),
        });
    }
    if x.sample_rate() != d.sample_rate() {
        return Err(Error::RateMismatch {
            left: x.sample_rate(),
            right: d.sample_rate(),
        });
    }
    if x.is_empty() {
        return Err(Error::EmptySignal);
    }
    let len = x.len();
    let mut kernel = init_kernel(config)?;

    // Divergence baseline: the initial kernel's MSE on the pair.
    let initial = apply_kernel(&kernel, x)?;
    let initial_mse = initial
        .samples()
        .iter()
        .zip(d.samples())
        .map(|(y, dv)| (dv - y) * (dv - y))
        .sum::<f64>()
        / len as f64;
    let divergence_limit = 1e6 * initial_mse.max(f64::MIN_POSITIVE);

    let worst_alpha = config.alpha[..config.order]
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);

    let mut regressors = RegressorSet::zeroed(config.order, config.memory)?;
    let mut epoch_error = Vec::new();
    let mut converged = false;

    for epoch in 1..=config.max_epochs {
        let mut sum_sq = 0.0f64;
        for n in 0..len {
            regressors.fill(x, n);
            let e = nlms_step(&mut kernel, &regressors, d.samples()[n], config, n)?;
            sum_sq += e * e;
            if !sum_sq.is_finite() || sum_sq / (n + 1) as f64 > divergence_limit {
                return Err(Error::Diverged {
                    epoch,
                    sample: n,
                    alpha: worst_alpha,
                });
            }
        }
        let stat = sum_sq / len as f64;
        epoch_error.push(stat);
        if stat < config.theta {
            converged = true;
            break;
        }
    }

    if !kernel.all_finite() {
        return Err(Error::NonFiniteUpdate(len - 1));
    }
    Ok((
        kernel,
        TrainingTrace {
            epochs_run: epoch_error.len(),
            epoch_error,
            converged,
        },
    ))
}
