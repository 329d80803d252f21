//! Per-sample regressor vectors.
//!
//! At time step `n` the order-1 regressor is the reversed memory window
//!
//! ```text
//! x1(n) = [ x(n), x(n-1), ..., x(n-M+1) ]
//! ```
//!
//! with samples before the start of the signal taken as 0. Higher orders
//! hold the ordered products of window entries, flattened in the same
//! triangular layout as the kernels:
//!
//! ```text
//! x2[idx2(i,j)]   = x1[i] * x1[j]          for i <= j
//! x3[idx3(i,j,k)] = x1[i] * x1[j] * x1[k]  for i <= j <= k
//! ```

use crate::error::Result;
use crate::kernel::coeff_count;
use crate::signal::SignalBuffer;

/// Regressor vectors for one time step, up to a configured order.
#[derive(Debug, Clone, PartialEq)]
pub struct RegressorSet {
    order: usize,
    memory: usize,
    x1: Vec<f64>,
    x2: Vec<f64>,
    x3: Vec<f64>,
}

impl RegressorSet {
    /// Allocate zeroed regressors for the given order and memory.
    pub fn zeroed(order: usize, memory: usize) -> Result<Self> {
        if !(1..=3).contains(&order) {
            return Err(crate::error::Error::InvalidOrder(order));
        }
        let n2 = if order >= 2 { coeff_count(2, memory)? } else { 0 };
        let n3 = if order >= 3 { coeff_count(3, memory)? } else { 0 };
        Ok(Self {
            order,
            memory,
            x1: vec![0.0; coeff_count(1, memory)?],
            x2: vec![0.0; n2],
            x3: vec![0.0; n3],
        })
    }

    /// Recompute the regressors for sample `n` of `x`, reusing storage.
    ///
    /// Panics if `n` is out of bounds.
    pub fn fill(&mut self, x: &SignalBuffer, n: usize) {
        let s = x.samples();
        assert!(n < s.len(), "sample index {n} out of range ({})", s.len());
        let m = self.memory;
        for t in 0..m {
            self.x1[t] = if n >= t { s[n - t] } else { 0.0 };
        }
        if self.order >= 2 {
            let mut f = 0;
            for i in 0..m {
                let xi = self.x1[i];
                for j in i..m {
                    self.x2[f] = xi * self.x1[j];
                    f += 1;
                }
            }
        }
        if self.order >= 3 {
            let mut f = 0;
            for i in 0..m {
                let xi = self.x1[i];
                for j in i..m {
                    let xij = xi * self.x1[j];
                    for k in j..m {
                        self.x3[f] = xij * self.x1[k];
                        f += 1;
                    }
                }
            }
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn memory(&self) -> usize {
        self.memory
    }

    pub fn x1(&self) -> &[f64] {
        &self.x1
    }

    /// Order-2 products; empty when the set was built for order 1.
    pub fn x2(&self) -> &[f64] {
        &self.x2
    }

    /// Order-3 products; empty when the set was built for order < 3.
    pub fn x3(&self) -> &[f64] {
        &self.x3
    }

    /// Regressor slice for one order, if present.
    pub fn order_part(&self, order: usize) -> Option<&[f64]> {
        match order {
            1 => Some(&self.x1),
            2 if self.order >= 2 => Some(&self.x2),
            3 if self.order >= 3 => Some(&self.x3),
            _ => None,
        }
    }
}

/// Full third-order regressor set for sample `n` of `x`.
pub fn build_regressors(x: &SignalBuffer, n: usize, memory: usize) -> Result<RegressorSet> {
    let mut set = RegressorSet::zeroed(3, memory)?;
    set.fill(x, n);
    Ok(set)
}
