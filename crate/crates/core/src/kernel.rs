//! Volterra kernels in symmetry-reduced triangular storage.
//!
//! A kernel of order `p` is symmetric under any permutation of its delay
//! indices, so only ordered tuples are stored:
//!
//! ```text
//! order 1: M coefficients           h1[i]           for i in [0, M)
//! order 2: M(M+1)/2 coefficients    h2[idx2(i,j)]   for 0 <= i <= j < M
//! order 3: M(M+1)(M+2)/6 coeffs     h3[idx3(i,j,k)] for 0 <= i <= j <= k < M
//! ```
//!
//! The flat layout is the lexicographic enumeration of the ordered tuples,
//! i.e. the order produced by nested `i <= j <= k` loops:
//! `(0,0), (0,1), ..., (0,M-1), (1,1), (1,2), ...` and likewise for
//! triples. [`idx2`] and [`idx3`] map a tuple to its flat position.

use crate::error::{Error, Result};

/// Number of stored coefficients for one kernel order.
///
/// Returns `M`, `M(M+1)/2` or `M(M+1)(M+2)/6` for orders 1, 2, 3.
pub fn coeff_count(order: usize, memory: usize) -> Result<usize> {
    if memory == 0 {
        return Err(Error::ZeroMemory);
    }
    let m = memory;
    match order {
        1 => Ok(m),
        2 => Ok(m * (m + 1) / 2),
        3 => Ok(m * (m + 1) * (m + 2) / 6),
        _ => Err(Error::InvalidOrder(order)),
    }
}

/// Flat position of the ordered delay pair `(i, j)` in the order-2 layout.
///
/// Pairs are enumerated lexicographically with `i` outer:
/// `(0,0), (0,1), ..., (0,M-1), (1,1), ...`
pub fn idx2(i: usize, j: usize, memory: usize) -> Result<usize> {
    if i > j || j >= memory {
        return Err(Error::PairIndex { i, j, memory });
    }
    // Pairs with first index < i fill a prefix of Σ_{t<i} (M - t)
    // = i(2M - i + 1)/2 slots; (j - i) steps into the block.
    Ok(i * (2 * memory - i + 1) / 2 + (j - i))
}

/// Flat position of the ordered delay triple `(i, j, k)` in the order-3
/// layout (lexicographic enumeration of `i <= j <= k`).
pub fn idx3(i: usize, j: usize, k: usize, memory: usize) -> Result<usize> {
    if i > j || j > k || k >= memory {
        return Err(Error::TripleIndex { i, j, k, memory });
    }
    // Triples starting with a first index < i fill a prefix of size
    // T(M) - T(M - i), where T(m) = m(m+1)(m+2)/6; inside the block the
    // remaining pair (j - i, k - i) follows the order-2 layout over the
    // shrunken memory M - i.
    let t = |m: usize| m * (m + 1) * (m + 2) / 6;
    let block = t(memory) - t(memory - i);
    Ok(block + idx2(j - i, k - i, memory - i)?)
}

/// A discrete Volterra kernel up to third order with memory `M`.
///
/// `h1` is always present; `h2`/`h3` are present iff the order is at
/// least 2/3. Absent orders behave as all-zero. `h0` is carried for
/// format completeness and is pinned to 0 (audio paths have no DC term).
#[derive(Debug, Clone, PartialEq)]
pub struct VolterraKernel {
    memory: usize,
    h0: f64,
    h1: Vec<f64>,
    h2: Option<Vec<f64>>,
    h3: Option<Vec<f64>>,
}

impl VolterraKernel {
    /// Zero kernel of the given order and memory.
    pub fn zeros(order: usize, memory: usize) -> Result<Self> {
        if !(1..=3).contains(&order) {
            return Err(Error::InvalidOrder(order));
        }
        let h1 = vec![0.0; coeff_count(1, memory)?];
        let h2 = (order >= 2).then(|| vec![0.0; coeff_count(2, memory).unwrap()]);
        let h3 = (order >= 3).then(|| vec![0.0; coeff_count(3, memory).unwrap()]);
        Ok(Self {
            memory,
            h0: 0.0,
            h1,
            h2,
            h3,
        })
    }

    /// Build a kernel from coefficient vectors in canonical triangular
    /// order. The order is implied by which vectors are present; `h3`
    /// without `h2` is rejected. Lengths and finiteness are validated.
    pub fn from_parts(
        memory: usize,
        h1: Vec<f64>,
        h2: Option<Vec<f64>>,
        h3: Option<Vec<f64>>,
    ) -> Result<Self> {
        if memory == 0 {
            return Err(Error::ZeroMemory);
        }
        if h3.is_some() && h2.is_none() {
            return Err(Error::InvalidOrder(3));
        }
        let check = |order: usize, v: &[f64]| -> Result<()> {
            let expected = coeff_count(order, memory)?;
            if v.len() != expected {
                return Err(Error::CoeffLength {
                    order,
                    got: v.len(),
                    expected,
                });
            }
            if let Some(index) = v.iter().position(|c| !c.is_finite()) {
                return Err(Error::NonFiniteCoeff { order, index });
            }
            Ok(())
        };
        check(1, &h1)?;
        if let Some(v) = &h2 {
            check(2, v)?;
        }
        if let Some(v) = &h3 {
            check(3, v)?;
        }
        Ok(Self {
            memory,
            h0: 0.0,
            h1,
            h2,
            h3,
        })
    }

    pub fn memory(&self) -> usize {
        self.memory
    }

    /// Highest order with stored coefficients (1, 2 or 3).
    pub fn order(&self) -> usize {
        1 + self.h2.is_some() as usize + self.h3.is_some() as usize
    }

    /// Constant term; pinned to 0.
    pub fn h0(&self) -> f64 {
        self.h0
    }

    pub fn h1(&self) -> &[f64] {
        &self.h1
    }

    pub fn h2(&self) -> Option<&[f64]> {
        self.h2.as_deref()
    }

    pub fn h3(&self) -> Option<&[f64]> {
        self.h3.as_deref()
    }

    pub(crate) fn h1_mut(&mut self) -> &mut [f64] {
        &mut self.h1
    }

    pub(crate) fn h2_mut(&mut self) -> Option<&mut [f64]> {
        self.h2.as_deref_mut()
    }

    pub(crate) fn h3_mut(&mut self) -> Option<&mut [f64]> {
        self.h3.as_deref_mut()
    }

    /// Coefficient slice for one order, if present.
    pub fn order_part(&self, order: usize) -> Option<&[f64]> {
        match order {
            1 => Some(&self.h1),
            2 => self.h2.as_deref(),
            3 => self.h3.as_deref(),
            _ => None,
        }
    }

    /// Copy of this kernel keeping only the order-`p` coefficients (other
    /// orders zeroed, structure unchanged).
    pub fn isolate_order(&self, order: usize) -> Result<Self> {
        if order > self.order() || order == 0 {
            return Err(Error::InvalidOrder(order));
        }
        let mut out = Self::zeros(self.order(), self.memory)?;
        match order {
            1 => out.h1.copy_from_slice(&self.h1),
            2 => out
                .h2
                .as_deref_mut()
                .unwrap()
                .copy_from_slice(self.h2.as_deref().unwrap()),
            3 => out
                .h3
                .as_deref_mut()
                .unwrap()
                .copy_from_slice(self.h3.as_deref().unwrap()),
            _ => unreachable!(),
        }
        Ok(out)
    }

    /// Largest absolute coefficient difference between two kernels of the
    /// same order and memory, across all orders.
    pub fn max_coeff_distance(&self, other: &Self) -> Result<f64> {
        if self.memory != other.memory {
            return Err(Error::LengthMismatch {
                left: self.memory,
                right: other.memory,
            });
        }
        if self.order() != other.order() {
            return Err(Error::InvalidOrder(other.order()));
        }
        let mut worst = 0.0f64;
        for p in 1..=self.order() {
            let a = self.order_part(p).unwrap();
            let b = other.order_part(p).unwrap();
            for (x, y) in a.iter().zip(b) {
                worst = worst.max((x - y).abs());
            }
        }
        Ok(worst)
    }

    /// True when every stored coefficient is finite.
    pub(crate) fn all_finite(&self) -> bool {
        self.h1.iter().all(|c| c.is_finite())
            && self.h2.iter().flatten().all(|c| c.is_finite())
            && self.h3.iter().flatten().all(|c| c.is_finite())
    }
}
