//! Deterministic excitation and test signal generators: pure sines,
//! linear chirps, multisines, seeded white noise and a noise+chirp
//! composite for training.
//!
//! Every generator is a pure function of its spec; the same spec (and
//! seed) always produces a bit-identical buffer.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::rng;
use crate::signal::SignalBuffer;

/// What to generate, with the per-family parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum SignalKind {
    /// `A sin(2π f t)`.
    Sine { freq: f64 },
    /// Linear frequency ramp `f_start -> f_end` with continuous phase.
    Chirp { f_start: f64, f_end: f64 },
    /// Sum of `count` equal-amplitude sines at `base_freq`,
    /// `base_freq + spacing`, ..., normalized so the peak equals the
    /// spec amplitude.
    Multisine {
        base_freq: f64,
        spacing: f64,
        count: usize,
    },
    /// Seeded uniform samples in [-A, A).
    WhiteNoise { seed: u64 },
    /// Noise segment followed by a chirp segment; the two fractions must
    /// be positive and sum to 1.
    Composite {
        f_start: f64,
        f_end: f64,
        fractions: (f64, f64),
        seed: u64,
    },
}

/// A complete signal description.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalSpec {
    pub kind: SignalKind,
    /// Hz.
    pub sample_rate: f64,
    /// Seconds.
    pub duration: f64,
    /// Peak amplitude.
    pub amplitude: f64,
}

impl SignalSpec {
    pub const DEFAULT_RATE: f64 = 48_000.0;
    pub const DEFAULT_DURATION: f64 = 5.0;
    pub const DEFAULT_AMPLITUDE: f64 = 0.5;
    /// Default noise/chirp split for [`SignalKind::Composite`].
    pub const DEFAULT_FRACTIONS: (f64, f64) = (0.6, 0.4);

    pub fn new(kind: SignalKind) -> Self {
        Self {
            kind,
            sample_rate: Self::DEFAULT_RATE,
            duration: Self::DEFAULT_DURATION,
            amplitude: Self::DEFAULT_AMPLITUDE,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidSpec(msg));
        if !(self.sample_rate.is_finite() && self.sample_rate > 0.0) {
            return fail(format!("sample rate must be positive, got {}", self.sample_rate));
        }
        if !(self.duration.is_finite() && self.duration > 0.0) {
            return fail(format!("duration must be positive, got {}", self.duration));
        }
        if !(self.amplitude.is_finite() && self.amplitude > 0.0) {
            return fail(format!("amplitude must be positive, got {}", self.amplitude));
        }
        let nyquist = self.sample_rate / 2.0;
        let check_freq = |name: &str, f: f64| {
            if !(f.is_finite() && f > 0.0 && f < nyquist) {
                fail(format!("{name} = {f} Hz outside (0, {nyquist}) (Nyquist limit)"))
            } else {
                Ok(())
            }
        };
        match &self.kind {
            SignalKind::Sine { freq } => check_freq("freq", *freq)?,
            SignalKind::Chirp { f_start, f_end } => {
                check_freq("f_start", *f_start)?;
                check_freq("f_end", *f_end)?;
            }
            SignalKind::Multisine {
                base_freq,
                spacing,
                count,
            } => {
                if *count == 0 {
                    return fail("multisine needs at least one component".into());
                }
                if !(spacing.is_finite() && *spacing > 0.0) {
                    return fail(format!("multisine spacing must be positive, got {spacing}"));
                }
                check_freq("base_freq", *base_freq)?;
                let top = base_freq + spacing * (*count as f64 - 1.0);
                check_freq("highest multisine component", top)?;
            }
            SignalKind::WhiteNoise { .. } => {}
            SignalKind::Composite {
                f_start,
                f_end,
                fractions,
                ..
            } => {
                check_freq("f_start", *f_start)?;
                check_freq("f_end", *f_end)?;
                let (a, b) = *fractions;
                if !(a > 0.0 && b > 0.0 && (a + b - 1.0).abs() <= 1e-9) {
                    return fail(format!(
                        "composite fractions ({a}, {b}) must be positive and sum to 1"
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Generate the signal described by `spec`.
pub fn generate(spec: &SignalSpec) -> Result<SignalBuffer> {
    spec.validate()?;
    let n = (spec.duration * spec.sample_rate).round() as usize;
    if n == 0 {
        return Err(Error::InvalidSpec(
            "duration rounds to zero samples at this rate".into(),
        ));
    }
    let samples = render(&spec.kind, n, spec.sample_rate, spec.amplitude)?;
    SignalBuffer::new(samples, spec.sample_rate)
}

fn render(kind: &SignalKind, n: usize, rate: f64, amp: f64) -> Result<Vec<f64>> {
    let dt = 1.0 / rate;
    Ok(match kind {
        SignalKind::Sine { freq } => (0..n)
            .map(|i| amp * (TAU * freq * i as f64 * dt).sin())
            .collect(),
        SignalKind::Chirp { f_start, f_end } => {
            chirp(n, rate, n as f64 * dt, *f_start, *f_end, amp)
        }
        SignalKind::Multisine {
            base_freq,
            spacing,
            count,
        } => {
            let raw: Vec<f64> = (0..n)
                .map(|i| {
                    let t = i as f64 * dt;
                    (0..*count)
                        .map(|c| (TAU * (base_freq + spacing * c as f64) * t).sin())
                        .sum()
                })
                .collect();
            let peak = raw.iter().fold(0.0f64, |p, &s| p.max(s.abs()));
            if peak == 0.0 {
                return Err(Error::InvalidSpec(
                    "multisine is identically zero at this rate".into(),
                ));
            }
            let scale = amp / peak;
            raw.into_iter().map(|s| s * scale).collect()
        }
        SignalKind::WhiteNoise { seed } => {
            let mut rng = rng::seeded(*seed);
            (0..n).map(|_| amp * rng::symmetric(&mut rng)).collect()
        }
        SignalKind::Composite {
            f_start,
            f_end,
            fractions,
            seed,
        } => {
            let n_noise = (fractions.0 * n as f64).round() as usize;
            let n_chirp = n - n_noise;
            let mut samples = render(&SignalKind::WhiteNoise { seed: *seed }, n_noise, rate, amp)?;
            samples.extend(chirp(n_chirp, rate, n_chirp as f64 * dt, *f_start, *f_end, amp));
            samples
        }
    })
}

/// Linear chirp over `sweep_time` seconds: instantaneous frequency
/// `f0 + (f1 - f0) t / T`, phase integrated in closed form.
fn chirp(n: usize, rate: f64, sweep_time: f64, f0: f64, f1: f64, amp: f64) -> Vec<f64> {
    let dt = 1.0 / rate;
    (0..n)
        .map(|i| {
            let t = i as f64 * dt;
            let phase = TAU * (f0 * t + 0.5 * (f1 - f0) * t * t / sweep_time);
            amp * phase.sin()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(kind: SignalKind, rate: f64, duration: f64, amplitude: f64) -> SignalSpec {
        SignalSpec {
            kind,
            sample_rate: rate,
            duration,
            amplitude,
        }
    }

    /// Zero-crossing time near a sample index, by linear interpolation.
    fn crossings(samples: &[f64], rate: f64) -> Vec<f64> {
        let mut out = Vec::new();
        for i in 0..samples.len() - 1 {
            let (a, b) = (samples[i], samples[i + 1]);
            if (a <= 0.0 && b > 0.0) || (a >= 0.0 && b < 0.0) {
                if a == b {
                    continue;
                }
                out.push((i as f64 + a / (a - b)) / rate);
            }
        }
        out
    }

    #[test]
    fn sine_starts_at_zero_and_respects_peak() {
        let s = generate(&spec(SignalKind::Sine { freq: 50.0 }, 48_000.0, 1.0, 0.5)).unwrap();
        assert_eq!(s.len(), 48_000);
        assert_eq!(s.samples()[0], 0.0);
        assert!(s.peak() <= 0.5);
        // ~100 zero crossings for 50 Hz over 1 s.
        let n_crossings = crossings(s.samples(), 48_000.0).len();
        assert!((99..=101).contains(&n_crossings), "{n_crossings} crossings");
    }

    #[test]
    fn multisine_components_and_normalization() {
        let s = generate(&spec(
            SignalKind::Multisine {
                base_freq: 100.0,
                spacing: 6.0,
                count: 3,
            },
            4_000.0,
            1.0,
            0.5,
        ))
        .unwrap();
        assert!((s.peak() - 0.5).abs() < 1e-12, "peak {} != 0.5", s.peak());
        // Goertzel-style single-bin DFT power at each expected component
        // vs. two off-grid frequencies.
        let bin_power = |f: f64| -> f64 {
            let (mut re, mut im) = (0.0f64, 0.0f64);
            for (i, &v) in s.samples().iter().enumerate() {
                let ph = TAU * f * i as f64 / 4_000.0;
                re += v * ph.cos();
                im += v * ph.sin();
            }
            re * re + im * im
        };
        for f in [100.0, 106.0, 112.0] {
            assert!(
                bin_power(f) > 1e4 * bin_power(f + 47.0),
                "component at {f} Hz not dominant"
            );
        }
    }

    #[test]
    fn white_noise_is_seeded_bounded_and_centered() {
        let spec_a = spec(SignalKind::WhiteNoise { seed: 21 }, 48_000.0, 3.0, 0.5);
        let a = generate(&spec_a).unwrap();
        let b = generate(&spec_a).unwrap();
        assert_eq!(a, b);
        let c = generate(&spec(SignalKind::WhiteNoise { seed: 22 }, 48_000.0, 3.0, 0.5)).unwrap();
        assert_ne!(a, c);
        assert!(a.peak() <= 0.5);
        // Mean within 3 sigma / sqrt(N) for uniform noise (sigma = A/sqrt(3)).
        let n = a.len() as f64;
        let mean = a.samples().iter().sum::<f64>() / n;
        let bound = 3.0 * (0.5 / 3.0f64.sqrt()) / n.sqrt();
        assert!(mean.abs() < bound, "mean {mean} exceeds {bound}");
    }

    #[test]
    fn chirp_endpoint_frequencies_from_zero_crossings() {
        let (f0, f1) = (100.0, 1_000.0);
        let s = generate(&spec(
            SignalKind::Chirp {
                f_start: f0,
                f_end: f1,
            },
            48_000.0,
            1.0,
            0.5,
        ))
        .unwrap();
        let t = crossings(s.samples(), 48_000.0);
        // Half-period between adjacent crossings estimates the local frequency.
        let f_head = 0.5 / (t[1] - t[0]);
        let f_tail = 0.5 / (t[t.len() - 1] - t[t.len() - 2]);
        assert!((f_head - f0).abs() / f0 < 0.05, "head {f_head} vs {f0}");
        assert!((f_tail - f1).abs() / f1 < 0.05, "tail {f_tail} vs {f1}");
        assert!(s.peak() <= 0.5);
    }

    #[test]
    fn composite_concatenates_noise_then_chirp() {
        let sp = spec(
            SignalKind::Composite {
                f_start: 20.0,
                f_end: 400.0,
                fractions: (0.6, 0.4),
                seed: 5,
            },
            1_000.0,
            10.0,
            0.5,
        );
        let s = generate(&sp).unwrap();
        assert_eq!(s.len(), 10_000);
        let noise = generate(&spec(SignalKind::WhiteNoise { seed: 5 }, 1_000.0, 6.0, 0.5)).unwrap();
        let chirp = generate(&spec(
            SignalKind::Chirp {
                f_start: 20.0,
                f_end: 400.0,
            },
            1_000.0,
            4.0,
            0.5,
        ))
        .unwrap();
        assert_eq!(&s.samples()[..6_000], noise.samples());
        assert_eq!(&s.samples()[6_000..], chirp.samples());
    }

    #[test]
    fn nyquist_and_fraction_violations_are_rejected() {
        assert!(generate(&spec(SignalKind::Sine { freq: 600.0 }, 1_000.0, 1.0, 0.5)).is_err());
        assert!(generate(&spec(SignalKind::Sine { freq: 500.0 }, 1_000.0, 1.0, 0.5)).is_err());
        assert!(generate(&spec(SignalKind::Sine { freq: -5.0 }, 1_000.0, 1.0, 0.5)).is_err());
        assert!(generate(&spec(
            SignalKind::Multisine {
                base_freq: 400.0,
                spacing: 60.0,
                count: 3
            },
            1_000.0,
            1.0,
            0.5
        ))
        .is_err());
        let bad = SignalKind::Composite {
            f_start: 20.0,
            f_end: 100.0,
            fractions: (0.7, 0.4),
            seed: 0,
        };
        assert!(generate(&spec(bad, 1_000.0, 1.0, 0.5)).is_err());
        assert!(generate(&spec(SignalKind::Sine { freq: 50.0 }, 1_000.0, -1.0, 0.5)).is_err());
        assert!(generate(&spec(SignalKind::Sine { freq: 50.0 }, 1_000.0, 1.0, 0.0)).is_err());
    }

    #[test]
    fn defaults_match_documented_values() {
        let sp = SignalSpec::new(SignalKind::WhiteNoise { seed: 0 });
        assert_eq!(sp.sample_rate, 48_000.0);
        assert_eq!(sp.duration, 5.0);
        assert_eq!(sp.amplitude, 0.5);
    }
}
