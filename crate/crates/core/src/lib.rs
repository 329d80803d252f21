//! Nonlinear system identification with discrete Volterra filters up to
//! third order.
//!
//! The crate models a system as
//!
//! ```text
//! y(n) = h0 + Σ h1(τ1) x(n-τ1)
//!           + Σ h2(τ1,τ2) x(n-τ1) x(n-τ2)
//!           + Σ h3(τ1,τ2,τ3) x(n-τ1) x(n-τ2) x(n-τ3)
//! ```
//!
//! with all delays ranging over a causal memory window `[0, M)`. Kernels
//! are symmetric in their delay indices, so only the ordered index tuples
//! are stored ([`kernel`]). Kernels are estimated from input/desired
//! signal pairs with a normalized LMS loop ([`trainer`]), excitation and
//! test signals come from [`signalgen`], a synthetic nonlinear reference
//! system for closed-loop validation lives in [`oracle`], and model
//! comparison by mean squared error is in [`eval`].

pub mod error;
pub mod eval;
pub mod filter;
pub mod kernel;
pub mod oracle;
pub mod regressor;
mod rng;
pub mod signal;
pub mod signalgen;
pub mod trainer;

pub use error::{Error, Result};
pub use eval::{evaluate_suite, mse, EvalReport, EvalRow, Improvement, TestSignal};
pub use filter::{apply_kernel, apply_kernel_naive};
pub use kernel::{coeff_count, idx2, idx3, VolterraKernel};
pub use oracle::{make_default_speaker, measure, OracleSpec};
pub use regressor::{build_regressors, RegressorSet};
pub use signal::SignalBuffer;
pub use signalgen::{generate, SignalKind, SignalSpec};
pub use trainer::{
    init_kernel, learning_rate, nlms_step, train, train_unchecked, InitPolicy, TrainerConfig,
    TrainingTrace,
};
