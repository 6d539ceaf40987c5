//! Quantum pixel representation state preparation.
//!
//! Images are mapped to per-pixel rotation angles, the angles are turned into
//! uniformly controlled `RY` rotations via a scaled Walsh–Hadamard transform
//! and a Gray-code permutation, and the resulting circuits can be compressed,
//! exported as OPENQASM 2.0, and verified on a dense statevector simulator.

pub mod bench;
pub mod circuit;
pub mod compress;
pub mod encoding;
pub mod error;
pub mod image;
pub mod netpbm;
pub mod pipeline;
pub mod sim;
pub mod walsh;

pub use circuit::{Circuit, Gate, GateCounts};
pub use compress::CompressionReport;
pub use encoding::{AngleVector, Domain, EncodingSpec, Mapping};
pub use error::Error;
pub use image::ImageBuffer;
pub use sim::{simulate, QualityMetrics, Statevector};
