//! Model comparison by mean squared error.
//!
//! [`evaluate_suite`] runs three kernels (orders 1, 2 and 3) over a list
//! of named test pairs and assembles per-signal MSE rows plus aggregate
//! statistics: average and maximum MSE per order, and the percentage
//! reduction between each order pair.

use crate::error::{Error, Result};
use crate::filter::apply_kernel;
use crate::kernel::VolterraKernel;
use crate::signal::SignalBuffer;

/// Mean of squared sample-wise differences.
pub fn mse(y: &SignalBuffer, d: &SignalBuffer) -> Result<f64> {
    if y.len() != d.len() {
        return Err(Error::LengthMismatch {
            left: y.len(),
            right: d.len(),
        });
    }
    if y.is_empty() {
        return Err(Error::EmptySignal);
    }
    let sum: f64 = y
        .samples()
        .iter()
        .zip(d.samples())
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    Ok(sum / y.len() as f64)
}

/// One named (input, desired) evaluation pair.
#[derive(Debug, Clone, PartialEq)]
pub struct TestSignal {
    pub name: String,
    pub input: SignalBuffer,
    pub desired: SignalBuffer,
}

/// Per-signal results: desired-output amplitude range and the MSE of
/// each model order.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalRow {
    pub name: String,
    pub output_range: (f64, f64),
    /// Index `p - 1` holds the order-p model's MSE.
    pub mse_by_order: [f64; 3],
}

/// Percentage MSE reduction going from one order to a higher one,
/// for the average and the maximum statistic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Improvement {
    pub from_order: usize,
    pub to_order: usize,
    pub avg_reduction_pct: f64,
    pub max_reduction_pct: f64,
}

/// Full evaluation outcome over a test suite.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub rows: Vec<EvalRow>,
    pub avg_mse_by_order: [f64; 3],
    pub max_mse_by_order: [f64; 3],
    /// Order pairs (1,2), (1,3), (2,3).
    pub improvements: [Improvement; 3],
}

impl EvalReport {
    /// Aggregate statistics recomputed from rows; used to build reports
    /// and to verify a report's self-consistency.
    pub fn aggregates(rows: &[EvalRow]) -> ([f64; 3], [f64; 3], [Improvement; 3]) {
        let mut avg = [0.0f64; 3];
        let mut max = [0.0f64; 3];
        for (p, (a, m)) in avg.iter_mut().zip(&mut max).enumerate() {
            *a = rows.iter().map(|r| r.mse_by_order[p]).sum::<f64>() / rows.len() as f64;
            *m = rows
                .iter()
                .map(|r| r.mse_by_order[p])
                .fold(f64::NEG_INFINITY, f64::max);
        }
        let improvements = [(1usize, 2usize), (1, 3), (2, 3)].map(|(from, to)| Improvement {
            from_order: from,
            to_order: to,
            avg_reduction_pct: reduction_pct(avg[from - 1], avg[to - 1]),
            max_reduction_pct: reduction_pct(max[from - 1], max[to - 1]),
        });
        (avg, max, improvements)
    }
}

/// `100 (from - to) / from`; defined as 0 when the baseline is 0.
pub fn reduction_pct(from: f64, to: f64) -> f64 {
    if from == 0.0 {
        0.0
    } else {
        100.0 * (from - to) / from
    }
}

/// Evaluate order-1/2/3 kernels over a suite of test pairs.
///
/// `kernels[p - 1]` must have order `p`; all three must share the same
/// memory length, and the suite must be non-empty.
pub fn evaluate_suite(
    kernels: &[VolterraKernel; 3],
    tests: &[TestSignal],
) -> Result<EvalReport> {
    for (i, k) in kernels.iter().enumerate() {
        if k.order() != i + 1 {
            return Err(Error::InvalidConfig(format!(
                "kernel in slot {i} has order {}, expected {}",
                k.order(),
                i + 1
            )));
        }
        if k.memory() != kernels[0].memory() {
            return Err(Error::InvalidConfig(
                "kernels must share the same memory length".into(),
            ));
        }
    }
    if tests.is_empty() {
        return Err(Error::InvalidSpec("evaluation suite is empty".into()));
    }

    let mut rows = Vec::with_capacity(tests.len());
    for t in tests {
        let mut mse_by_order = [0.0f64; 3];
        for (p, slot) in mse_by_order.iter_mut().enumerate() {
            let y = apply_kernel(&kernels[p], &t.input)?;
            *slot = mse(&y, &t.desired)?;
        }
        rows.push(EvalRow {
            name: t.name.clone(),
            output_range: t.desired.amplitude_range(),
            mse_by_order,
        });
    }
    let (avg_mse_by_order, max_mse_by_order, improvements) = EvalReport::aggregates(&rows);
    Ok(EvalReport {
        rows,
        avg_mse_by_order,
        max_mse_by_order,
        improvements,
    })
}
