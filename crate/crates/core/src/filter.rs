//! Kernel application: the fast triangular path and a full-cube reference
//! evaluator.
//!
//! [`apply_kernel`] contracts each order's triangular coefficient vector
//! against the ordered products of the memory window, visiting every
//! stored coefficient exactly once per output sample:
//!
//! ```text
//! y(n) = h0 + Σ_i h1[i] w[i]
//!           + Σ_{i<=j} h2[idx2(i,j)] w[i] w[j]
//!           + Σ_{i<=j<=k} h3[idx3(i,j,k)] w[i] w[j] w[k]
//! ```
//!
//! where `w[t] = x(n-t)` (0 before the start of the signal).
//!
//! [`apply_kernel_naive`] instead sums over the full delay cube using the
//! symmetric kernel expanded from triangular storage: a stored coefficient
//! whose index tuple has `r` distinct permutations contributes `h/r` at
//! each of those `r` cube positions, so both evaluators compute the same
//! polynomial. The naive path is O(M^3) per sample and exists as an
//! independent correctness reference for small `M`.

use crate::error::{Error, Result};
use crate::kernel::{idx2, idx3, VolterraKernel};
use crate::signal::SignalBuffer;

/// Apply a kernel to a signal using the triangular contraction.
///
/// The output has the same length and sample rate as the input. Samples
/// before the start of the signal are treated as 0.
pub fn apply_kernel(kernel: &VolterraKernel, x: &SignalBuffer) -> Result<SignalBuffer> {
    let s = x.samples();
    let m = kernel.memory();
    let mut w = vec![0.0f64; m];
    let mut out = Vec::with_capacity(s.len());

    for n in 0..s.len() {
        for t in 0..m {
            w[t] = if n >= t { s[n - t] } else { 0.0 };
        }
        let mut acc = kernel.h0();
        for (h, &wv) in kernel.h1().iter().zip(&w) {
            acc += h * wv;
        }
        if let Some(h2) = kernel.h2() {
            let mut f = 0;
            for i in 0..m {
                let wi = w[i];
                for j in i..m {
                    acc += h2[f] * wi * w[j];
                    f += 1;
                }
            }
        }
        if let Some(h3) = kernel.h3() {
            let mut f = 0;
            for i in 0..m {
                let wi = w[i];
                for j in i..m {
                    let wij = wi * w[j];
                    for k in j..m {
                        acc += h3[f] * wij * w[k];
                        f += 1;
                    }
                }
            }
        }
        if !acc.is_finite() {
            return Err(Error::NonFiniteOutput(n));
        }
        out.push(acc);
    }
    SignalBuffer::new(out, x.sample_rate())
}

/// Reference evaluator summing over the full delay cube of every order.
///
/// Intended for small memory lengths; cost is O(M^3) per sample.
pub fn apply_kernel_naive(kernel: &VolterraKernel, x: &SignalBuffer) -> Result<SignalBuffer> {
    let s = x.samples();
    let m = kernel.memory();
    let order = kernel.order();

    // Symmetric expansion: stored value divided by the number of distinct
    // permutations of the index tuple.
    let mut sym2 = vec![0.0f64; if order >= 2 { m * m } else { 0 }];
    if let Some(h2) = kernel.h2() {
        for a in 0..m {
            for b in 0..m {
                let (i, j) = (a.min(b), a.max(b));
                let perms = if a == b { 1.0 } else { 2.0 };
                sym2[a * m + b] = h2[idx2(i, j, m)?] / perms;
            }
        }
    }
    let mut sym3 = vec![0.0f64; if order >= 3 { m * m * m } else { 0 }];
    if let Some(h3) = kernel.h3() {
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let mut t = [a, b, c];
                    t.sort_unstable();
                    let perms = if a == b && b == c {
                        1.0
                    } else if a == b || b == c || a == c {
                        3.0
                    } else {
                        6.0
                    };
                    sym3[(a * m + b) * m + c] = h3[idx3(t[0], t[1], t[2], m)?] / perms;
                }
            }
        }
    }

    let mut w = vec![0.0f64; m];
    let mut out = Vec::with_capacity(s.len());
    for n in 0..s.len() {
        for t in 0..m {
            w[t] = if n >= t { s[n - t] } else { 0.0 };
        }
        let mut acc = kernel.h0();
        for t1 in 0..m {
            acc += kernel.h1()[t1] * w[t1];
        }
        if order >= 2 {
            for t1 in 0..m {
                for t2 in 0..m {
                    acc += sym2[t1 * m + t2] * w[t1] * w[t2];
                }
            }
        }
        if order >= 3 {
            for t1 in 0..m {
                for t2 in 0..m {
                    for t3 in 0..m {
                        acc += sym3[(t1 * m + t2) * m + t3] * w[t1] * w[t2] * w[t3];
                    }
                }
            }
        }
        if !acc.is_finite() {
            return Err(Error::NonFiniteOutput(n));
        }
        out.push(acc);
    }
    SignalBuffer::new(out, x.sample_rate())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::coeff_count;
    use crate::rng;
    use rand_chacha::ChaCha8Rng;

    fn buf(samples: Vec<f64>) -> SignalBuffer {
        SignalBuffer::new(samples, 1.0).unwrap()
    }

    fn identity_kernel(order: usize, memory: usize) -> VolterraKernel {
        let mut h1 = vec![0.0; memory];
        h1[0] = 1.0;
        let h2 = (order >= 2).then(|| vec![0.0; coeff_count(2, memory).unwrap()]);
        let h3 = (order >= 3).then(|| vec![0.0; coeff_count(3, memory).unwrap()]);
        VolterraKernel::from_parts(memory, h1, h2, h3).unwrap()
    }

    fn random_kernel(order: usize, memory: usize, rng: &mut ChaCha8Rng) -> VolterraKernel {
        let draw = |n: usize, rng: &mut ChaCha8Rng| -> Vec<f64> {
            (0..n).map(|_| rng::symmetric(rng)).collect()
        };
        let h1 = draw(coeff_count(1, memory).unwrap(), rng);
        let h2 = (order >= 2).then(|| draw(coeff_count(2, memory).unwrap(), rng));
        let h3 = (order >= 3).then(|| draw(coeff_count(3, memory).unwrap(), rng));
        VolterraKernel::from_parts(memory, h1, h2, h3).unwrap()
    }

    fn random_signal(len: usize, rng: &mut ChaCha8Rng) -> SignalBuffer {
        buf((0..len).map(|_| rng::symmetric(rng)).collect())
    }

    #[test]
    fn identity_kernel_is_a_passthrough() {
        let mut rng = rng::seeded(3);
        let x = random_signal(64, &mut rng);
        for order in 1..=3 {
            let k = identity_kernel(order, 5);
            let y = apply_kernel(&k, &x).unwrap();
            assert_eq!(y.samples(), x.samples());
            let y = apply_kernel_naive(&k, &x).unwrap();
            assert_eq!(y.samples(), x.samples());
        }
    }

    #[test]
    fn zero_kernel_gives_zero_output() {
        let mut rng = rng::seeded(4);
        let x = random_signal(32, &mut rng);
        let k = VolterraKernel::zeros(3, 4).unwrap();
        assert!(apply_kernel(&k, &x).unwrap().samples().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn empty_input_gives_empty_output() {
        let k = identity_kernel(3, 4);
        assert!(apply_kernel(&k, &buf(vec![])).unwrap().is_empty());
        assert!(apply_kernel_naive(&k, &buf(vec![])).unwrap().is_empty());
    }

    // With only h2 set and a constant input c, every steady-state output
    // sample is c^2 times the sum of the stored coefficients.
    #[test]
    fn constant_input_through_second_order_sums_coefficients() {
        let m = 4;
        let mut rng = rng::seeded(5);
        let h2: Vec<f64> = (0..coeff_count(2, m).unwrap())
            .map(|_| rng::symmetric(&mut rng))
            .collect();
        let h2_sum: f64 = h2.iter().sum();
        let k = VolterraKernel::from_parts(m, vec![0.0; m], Some(h2), None).unwrap();
        let c = 0.7;
        let y = apply_kernel_naive(&k, &buf(vec![c; 16])).unwrap();
        for (n, &v) in y.samples().iter().enumerate().skip(m - 1) {
            assert!(
                (v - c * c * h2_sum).abs() < 1e-12,
                "sample {n}: {v} vs {}",
                c * c * h2_sum
            );
        }
    }

    #[test]
    fn triangular_and_full_cube_paths_agree() {
        let mut rng = rng::seeded(6);
        for trial in 0..40 {
            let m = 1 + (rng::unit(&mut rng) * 5.0) as usize;
            let order = 1 + trial % 3;
            let k = random_kernel(order, m, &mut rng);
            let x = random_signal(128, &mut rng);
            let fast = apply_kernel(&k, &x).unwrap();
            let naive = apply_kernel_naive(&k, &x).unwrap();
            for (n, (a, b)) in fast.samples().iter().zip(naive.samples()).enumerate() {
                assert!(
                    (a - b).abs() <= 1e-12,
                    "trial {trial} order {order} M={m} sample {n}: {a} vs {b}"
                );
            }
        }
    }

    // Scaling the input by s scales an order-p-only kernel's output by s^p.
    #[test]
    fn output_is_homogeneous_per_order() {
        let mut rng = rng::seeded(7);
        let k = random_kernel(3, 4, &mut rng);
        let x = random_signal(64, &mut rng);
        let s = 1.7;
        let scaled = buf(x.samples().iter().map(|v| v * s).collect());
        for p in 1..=3 {
            let kp = k.isolate_order(p).unwrap();
            let y1 = apply_kernel(&kp, &x).unwrap();
            let y2 = apply_kernel(&kp, &scaled).unwrap();
            let factor = s.powi(p as i32);
            for (a, b) in y1.samples().iter().zip(y2.samples()) {
                assert!((a * factor - b).abs() <= 1e-12 * b.abs().max(1.0));
            }
        }
    }

    #[test]
    fn orders_superpose() {
        let mut rng = rng::seeded(8);
        let k = random_kernel(3, 4, &mut rng);
        let x = random_signal(64, &mut rng);
        let full = apply_kernel(&k, &x).unwrap();
        let parts: Vec<SignalBuffer> = (1..=3)
            .map(|p| apply_kernel(&k.isolate_order(p).unwrap(), &x).unwrap())
            .collect();
        for n in 0..x.len() {
            let sum: f64 = parts.iter().map(|p| p.samples()[n]).sum();
            assert!((full.samples()[n] - sum).abs() <= 1e-12);
        }
    }

    // Zero pre-history means prepending z zeros to the input prepends
    // exactly z zeros to the output.
    #[test]
    fn shift_covariance_with_zero_padding() {
        let mut rng = rng::seeded(9);
        let k = random_kernel(3, 3, &mut rng);
        let x = random_signal(40, &mut rng);
        let y = apply_kernel(&k, &x).unwrap();
        for z in [1usize, 4, 9] {
            let mut padded = vec![0.0; z];
            padded.extend_from_slice(x.samples());
            let yp = apply_kernel(&k, &buf(padded)).unwrap();
            assert!(yp.samples()[..z].iter().all(|&v| v == 0.0));
            assert_eq!(&yp.samples()[z..], y.samples());
        }
    }

    #[test]
    fn overflow_reports_first_offending_sample() {
        let k = VolterraKernel::from_parts(1, vec![f64::MAX], None, None).unwrap();
        let x = buf(vec![0.0, 2.0, 2.0]);
        assert_eq!(apply_kernel(&k, &x), Err(Error::NonFiniteOutput(1)));
        assert_eq!(apply_kernel_naive(&k, &x), Err(Error::NonFiniteOutput(1)));
    }
}
