use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("filter order must be 1, 2 or 3, got {0}")]
    InvalidOrder(usize),

    #[error("memory length must be at least 1")]
    ZeroMemory,

    #[error("delay pair ({i}, {j}) invalid for memory {memory}: need 0 <= i <= j < memory")]
    PairIndex { i: usize, j: usize, memory: usize },

    #[error(
        "delay triple ({i}, {j}, {k}) invalid for memory {memory}: need 0 <= i <= j <= k < memory"
    )]
    TripleIndex {
        i: usize,
        j: usize,
        k: usize,
        memory: usize,
    },

    #[error("order-{order} coefficient vector has length {got}, expected {expected}")]
    CoeffLength {
        order: usize,
        got: usize,
        expected: usize,
    },

    #[error("non-finite order-{order} coefficient at position {index}")]
    NonFiniteCoeff { order: usize, index: usize },

    #[error("non-finite sample at index {0}")]
    NonFiniteSample(usize),

    #[error("sample rate must be positive and finite, got {0}")]
    BadSampleRate(f64),

    #[error("filter output is non-finite at sample {0}")]
    NonFiniteOutput(usize),

    #[error("non-finite filter update at sample {0}")]
    NonFiniteUpdate(usize),

    #[error("signal lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("sample rates differ: {left} Hz vs {right} Hz")]
    RateMismatch { left: f64, right: f64 },

    #[error("signal must contain at least one sample")]
    EmptySignal,

    #[error("invalid trainer configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid signal spec: {0}")]
    InvalidSpec(String),

    #[error("signal has zero power, SNR is undefined")]
    ZeroPower,

    #[error(
        "training diverged at epoch {epoch}, sample {sample}: error statistic exceeded 1e6 x \
         its initial value; step size alpha = {alpha} is the likely cause (stable range is \
         0 < alpha < 2)"
    )]
    Diverged {
        epoch: usize,
        sample: usize,
        alpha: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
