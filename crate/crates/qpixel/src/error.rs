use thiserror::Error;

use crate::encoding::{Domain, Mapping};

#[derive(Debug, Error)]
pub enum ImageError {
    #[error("image has no pixels")]
    Empty,
    #[error("unsupported channel count {0} (expected 1, 3 or 4)")]
    UnsupportedChannels(usize),
    #[error("unsupported bit depth {0} (expected 1..=16)")]
    UnsupportedBitDepth(u32),
    #[error("expected {expected} samples, got {actual}")]
    SampleCount { expected: usize, actual: usize },
    #[error("sample {index} has value {value} above maximum {max}")]
    SampleOutOfRange { index: usize, value: u32, max: u32 },
    #[error(
        "alpha pairing needs an RGB image and a grayscale mask, got {rgb} and {alpha} channels"
    )]
    AlphaLayout { rgb: usize, alpha: usize },
    #[error("alpha mask is {alpha:?}, image is {rgb:?}")]
    AlphaSize {
        rgb: (usize, usize),
        alpha: (usize, usize),
    },
    #[error("alpha mask bit depth {alpha} differs from image bit depth {rgb}")]
    AlphaDepth { rgb: u32, alpha: u32 },
}

#[derive(Debug, Error)]
pub enum NetpbmError {
    #[error("byte {offset}: unrecognized magic number")]
    BadMagic { offset: usize },
    #[error("byte {offset}: malformed header: {what}")]
    MalformedHeader { offset: usize, what: &'static str },
    #[error("byte {offset}: unsupported maxval {maxval} (must be 2^k - 1, k <= 16)")]
    UnsupportedMaxval { offset: usize, maxval: u32 },
    #[error("byte {offset}: sample out of range ({value} > maxval {maxval})")]
    SampleOutOfRange {
        offset: usize,
        value: u32,
        maxval: u32,
    },
    #[error("byte {offset}: truncated payload, expected {expected} samples, found {found}")]
    Truncated {
        offset: usize,
        expected: usize,
        found: usize,
    },
    #[error("expected a {expected} file, found magic {found}")]
    WrongFormat {
        expected: &'static str,
        found: &'static str,
    },
    #[error("image cannot be written as netpbm: {0}")]
    Unwritable(&'static str),
    #[error(transparent)]
    Image(#[from] ImageError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error)]
pub enum EncodingError {
    #[error("value {value} at index {index} exceeds maximum {max}")]
    ValueExceedsMax { index: usize, value: u32, max: u32 },
    #[error("maximum intensity must be positive")]
    ZeroMax,
    #[error("IFRQI needs an even bit depth, got {0}")]
    OddBitDepth(u32),
    #[error("vector length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("{mapping} expects {expected} channel(s), image has {found}")]
    ChannelCount {
        mapping: Mapping,
        expected: usize,
        found: usize,
    },
    #[error("compression level {0} outside [0, 100]")]
    LevelOutOfRange(f64),
    #[error("unmeasured pixel: both amplitudes vanish")]
    Unmeasured,
    #[error("expected {expected} planes, got {found}")]
    PlaneCount { expected: usize, found: usize },
}

#[derive(Debug, Error)]
pub enum WalshError {
    #[error("vector length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("expected {expected:?}-domain angles, got {found:?}")]
    WrongDomain { expected: Domain, found: Domain },
}

#[derive(Debug, Error)]
pub enum CircuitError {
    #[error("qubit {qubit} out of range for {num_qubits}-qubit circuit")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },
    #[error("target qubit {0} also appears as a control")]
    TargetIsControl(usize),
    #[error("control qubit {0} listed twice")]
    DuplicateControl(usize),
    #[error("{angles} angles cannot be driven by {controls} control qubits")]
    LengthMismatch { angles: usize, controls: usize },
    #[error("multi-controlled rotations have no QASM export")]
    McryNotExportable,
    #[error("baseline circuit limited to {max} pixels, got {found}")]
    BaselineTooLarge { max: usize, found: usize },
    #[error(transparent)]
    Walsh(#[from] WalshError),
    #[error(transparent)]
    Encoding(#[from] EncodingError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error)]
pub enum SimError {
    #[error("{required} qubits exceed the simulation budget of {max}")]
    QubitBudget { required: usize, max: usize },
    #[error("statevector lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("statevector has {found} amplitudes, encoding needs {expected}")]
    StateSize { expected: usize, found: usize },
    #[error("not a valid {mapping} state at position {position}")]
    InvalidState { mapping: Mapping, position: usize },
    #[error("images differ in size, channel count or bit depth")]
    ShapeMismatch,
    #[error(transparent)]
    Encoding(#[from] EncodingError),
    #[error(transparent)]
    Image(#[from] ImageError),
}

/// Umbrella error for the end-to-end pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Image(#[from] ImageError),
    #[error(transparent)]
    Netpbm(#[from] NetpbmError),
    #[error(transparent)]
    Encoding(#[from] EncodingError),
    #[error(transparent)]
    Walsh(#[from] WalshError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Sim(#[from] SimError),
}
