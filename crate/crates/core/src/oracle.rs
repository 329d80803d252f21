//! Synthetic nonlinear reference system.
//!
//! Stands in for a measured device in closed-loop experiments: a known
//! ground-truth kernel produces the desired signal for a given input,
//! optionally with seeded additive noise at a chosen SNR. Tests can then
//! compare trained kernels against the generating truth directly.

use crate::error::{Error, Result};
use crate::filter::apply_kernel;
use crate::kernel::{coeff_count, VolterraKernel};
use crate::rng;
use crate::signal::SignalBuffer;

/// A reference system: ground truth plus an optional measurement-noise
/// level.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleSpec {
    pub truth: VolterraKernel,
    /// Additive white noise level; `None` means noiseless.
    pub snr_db: Option<f64>,
    pub seed: u64,
}

impl OracleSpec {
    pub fn noiseless(truth: VolterraKernel) -> Self {
        Self {
            truth,
            snr_db: None,
            seed: 0,
        }
    }
}

/// Deterministic mildly nonlinear third-order system.
///
/// The linear response dominates and decays geometrically from 1; the
/// order-2 and order-3 coefficient vectors are random directions rescaled
/// to 5% and 1% of the linear norm, matching a transducer that deviates
/// only slightly from a linear system.
pub fn make_default_speaker(memory: usize, seed: u64) -> Result<VolterraKernel> {
    if memory < 2 {
        return Err(Error::InvalidSpec(
            "default speaker needs memory >= 2".into(),
        ));
    }
    let mut rng = rng::seeded(seed);
    let decay = rng::uniform(&mut rng, 0.45, 0.65);

    let mut h1 = vec![0.0; memory];
    h1[0] = 1.0;
    for (i, tap) in h1.iter_mut().enumerate().skip(1) {
        *tap = decay.powi(i as i32) * (1.0 + 0.1 * rng::symmetric(&mut rng));
    }
    let h1_norm = norm(&h1);

    let mut draw = |n: usize, target_norm: f64| -> Vec<f64> {
        let mut v: Vec<f64> = (0..n).map(|_| rng::symmetric(&mut rng)).collect();
        let scale = target_norm / norm(&v);
        v.iter_mut().for_each(|c| *c *= scale);
        v
    };
    let h2 = draw(coeff_count(2, memory)?, 0.05 * h1_norm);
    let h3 = draw(coeff_count(3, memory)?, 0.01 * h1_norm);
    VolterraKernel::from_parts(memory, h1, Some(h2), Some(h3))
}

/// Produce the desired signal for `x`: the truth system's output, plus
/// seeded white noise scaled to the requested SNR when one is set.
///
/// With noise requested, the noise is rescaled to the empirical power of
/// the clean output, so the realized SNR matches the request exactly.
pub fn measure(spec: &OracleSpec, x: &SignalBuffer) -> Result<SignalBuffer> {
    let clean = apply_kernel(&spec.truth, x)?;
    let Some(snr_db) = spec.snr_db else {
        return Ok(clean);
    };
    if !snr_db.is_finite() {
        return Err(Error::InvalidSpec(format!("snr_db must be finite, got {snr_db}")));
    }
    let signal_power = clean.power();
    if signal_power == 0.0 {
        return Err(Error::ZeroPower);
    }
    let mut rng = rng::seeded(spec.seed);
    let raw: Vec<f64> = (0..clean.len()).map(|_| rng::symmetric(&mut rng)).collect();
    let raw_power = raw.iter().map(|v| v * v).sum::<f64>() / raw.len() as f64;
    if raw_power == 0.0 {
        return Err(Error::ZeroPower);
    }
    let scale = (signal_power / (raw_power * 10f64.powf(snr_db / 10.0))).sqrt();
    let samples = clean
        .samples()
        .iter()
        .zip(&raw)
        .map(|(c, r)| c + scale * r)
        .collect();
    SignalBuffer::new(samples, x.sample_rate())
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}
