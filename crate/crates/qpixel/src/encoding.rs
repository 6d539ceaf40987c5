//! Pixel-to-angle maps for the supported color encodings.
//!
//! Every angle vector stores the *circuit* rotation angle `2θ`, never the
//! color angle `θ` itself, so a value can be handed to an `RY` gate as is.
//! Bit `b^0` always denotes the most significant bit of a sample.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::EncodingError;
use crate::image::ImageBuffer;

/// Color mapping of a quantum pixel representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mapping {
    Frqi,
    Ifrqi,
    Neqr,
    Mcrqi,
    Incqi,
}

impl Mapping {
    pub const ALL: [Mapping; 5] = [
        Mapping::Frqi,
        Mapping::Ifrqi,
        Mapping::Neqr,
        Mapping::Mcrqi,
        Mapping::Incqi,
    ];

    /// Number of image channels the mapping consumes.
    pub fn channels(self) -> usize {
        match self {
            Mapping::Frqi | Mapping::Ifrqi | Mapping::Neqr => 1,
            Mapping::Mcrqi => 3,
            Mapping::Incqi => 4,
        }
    }

    /// Number of color qubits for a given bit depth. IFRQI uses `bit_depth / 2`.
    pub fn color_qubits(self, bit_depth: u32) -> usize {
        let depth = bit_depth as usize;
        match self {
            Mapping::Frqi => 1,
            Mapping::Ifrqi => depth / 2,
            Mapping::Neqr => depth,
            Mapping::Mcrqi => 3,
            Mapping::Incqi => 4 * depth,
        }
    }
}

impl fmt::Display for Mapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mapping::Frqi => "FRQI",
            Mapping::Ifrqi => "IFRQI",
            Mapping::Neqr => "NEQR",
            Mapping::Mcrqi => "MCRQI",
            Mapping::Incqi => "INCQI",
        })
    }
}

impl FromStr for Mapping {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "frqi" => Ok(Mapping::Frqi),
            "ifrqi" => Ok(Mapping::Ifrqi),
            "neqr" => Ok(Mapping::Neqr),
            "mcrqi" => Ok(Mapping::Mcrqi),
            "incqi" => Ok(Mapping::Incqi),
            other => Err(format!("unknown mapping `{other}`")),
        }
    }
}

/// Whether an angle vector holds per-pixel angles or solved circuit angles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Pixel,
    Walsh,
}

/// `2^n` rotation angles in radians, tagged with their domain.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleVector {
    values: Vec<f64>,
    domain: Domain,
    n: u32,
}

impl AngleVector {
    pub fn new(values: Vec<f64>, domain: Domain) -> Result<Self, EncodingError> {
        let n = log2_exact(values.len()).ok_or(EncodingError::NotPowerOfTwo(values.len()))?;
        Ok(Self { values, domain, n })
    }

    pub fn pixel(values: Vec<f64>) -> Result<Self, EncodingError> {
        Self::new(values, Domain::Pixel)
    }

    pub fn walsh(values: Vec<f64>) -> Result<Self, EncodingError> {
        Self::new(values, Domain::Walsh)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub(crate) fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub(crate) fn set_domain(&mut self, domain: Domain) {
        self.domain = domain;
    }

    /// Number of position qubits, `log2(len)`.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

pub(crate) fn log2_exact(len: usize) -> Option<u32> {
    len.is_power_of_two().then(|| len.trailing_zeros())
}

/// Number of position qubits needed for `pixels` pixels: `ceil(log2(pixels))`.
pub fn position_qubits(pixels: usize) -> u32 {
    pixels.max(1).next_power_of_two().trailing_zeros()
}

/// Everything needed to synthesize and later decode one encoded image.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EncodingSpec {
    pub mapping: Mapping,
    /// Position qubits.
    pub n: u32,
    pub color_qubits: usize,
    pub original_pixel_count: usize,
    pub padded_pixel_count: usize,
    pub bit_depth: u32,
    /// Bit pairs per sample; nonzero only for IFRQI.
    pub pair_count: u32,
    pub compression_percent: f64,
    pub width: usize,
    pub height: usize,
}

impl EncodingSpec {
    pub fn new(
        mapping: Mapping,
        width: usize,
        height: usize,
        channels: usize,
        bit_depth: u32,
        compression_percent: f64,
    ) -> Result<Self, EncodingError> {
        if channels != mapping.channels() {
            return Err(EncodingError::ChannelCount {
                mapping,
                expected: mapping.channels(),
                found: channels,
            });
        }
        if mapping == Mapping::Ifrqi && !bit_depth.is_multiple_of(2) {
            return Err(EncodingError::OddBitDepth(bit_depth));
        }
        if !(0.0..=100.0).contains(&compression_percent) {
            return Err(EncodingError::LevelOutOfRange(compression_percent));
        }
        let original = width * height;
        let n = position_qubits(original);
        Ok(Self {
            mapping,
            n,
            color_qubits: mapping.color_qubits(bit_depth),
            original_pixel_count: original,
            padded_pixel_count: 1usize << n,
            bit_depth,
            pair_count: if mapping == Mapping::Ifrqi {
                bit_depth / 2
            } else {
                0
            },
            compression_percent,
            width,
            height,
        })
    }

    pub fn for_image(
        img: &ImageBuffer,
        mapping: Mapping,
        compression_percent: f64,
    ) -> Result<Self, EncodingError> {
        Self::new(
            mapping,
            img.width(),
            img.height(),
            img.channels(),
            img.bit_depth(),
            compression_percent,
        )
    }

    pub fn total_qubits(&self) -> usize {
        self.n as usize + self.color_qubits
    }

    pub fn max_value(&self) -> u32 {
        (1u32 << self.bit_depth) - 1
    }

    /// Zero pixels appended to reach a power-of-two length.
    pub fn padding(&self) -> usize {
        self.padded_pixel_count - self.original_pixel_count
    }
}

/// Per-channel pixel arrays padded to `2^n` entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vectorized {
    pub channels: Vec<Vec<u32>>,
    pub n: u32,
    pub original_pixel_count: usize,
}

impl Vectorized {
    pub fn padding(&self) -> usize {
        (1usize << self.n) - self.original_pixel_count
    }

    /// Drops the padding again.
    pub fn unpadded(&self) -> Vec<Vec<u32>> {
        self.channels
            .iter()
            .map(|c| c[..self.original_pixel_count].to_vec())
            .collect()
    }
}

/// Flattens every channel row-major and zero-pads it to a power of two.
pub fn vectorize(img: &ImageBuffer) -> Vectorized {
    let original = img.pixel_count();
    let n = position_qubits(original);
    let padded = 1usize << n;
    let channels = (0..img.channels())
        .map(|c| {
            let mut v = img.channel(c);
            v.resize(padded, 0);
            v
        })
        .collect();
    Vectorized {
        channels,
        n,
        original_pixel_count: original,
    }
}

fn check_range(channel: &[u32], max: u32) -> Result<(), EncodingError> {
    match channel.iter().enumerate().find(|(_, &g)| g > max) {
        Some((index, &value)) => Err(EncodingError::ValueExceedsMax { index, value, max }),
        None => Ok(()),
    }
}

/// FRQI: stored angle `π·g/K` (the color angle is `(π/2)·g/K`).
pub fn frqi_angles(channel: &[u32], max: u32) -> Result<AngleVector, EncodingError> {
    if max == 0 {
        return Err(EncodingError::ZeroMax);
    }
    check_range(channel, max)?;
    let k = f64::from(max);
    AngleVector::pixel(channel.iter().map(|&g| PI * f64::from(g) / k).collect())
}

/// The four IFRQI color angles indexed by a bit pair `b^{2i} b^{2i+1}`.
pub const IFRQI_LEVELS: [f64; 4] = [0.0, PI / 5.0, FRAC_PI_2 - PI / 5.0, FRAC_PI_2];

/// IFRQI: one vector per bit pair; pair `i` is `(b^{2i}, b^{2i+1})`, the first bit
/// being the more significant of the two.
pub fn ifrqi_angles(channel: &[u32], bit_depth: u32) -> Result<Vec<AngleVector>, EncodingError> {
    if !bit_depth.is_multiple_of(2) {
        return Err(EncodingError::OddBitDepth(bit_depth));
    }
    check_range(channel, max_for(bit_depth))?;
    let pairs = bit_depth / 2;
    (0..pairs)
        .map(|i| {
            let shift = bit_depth - 2 * i - 2;
            AngleVector::pixel(
                channel
                    .iter()
                    .map(|&g| 2.0 * IFRQI_LEVELS[((g >> shift) & 0b11) as usize])
                    .collect(),
            )
        })
        .collect()
}

/// NEQR: vector `i` stores `π` where bit `b^i` is set, `0` otherwise.
pub fn neqr_angles(channel: &[u32], bit_depth: u32) -> Result<Vec<AngleVector>, EncodingError> {
    check_range(channel, max_for(bit_depth))?;
    (0..bit_depth)
        .map(|i| {
            let shift = bit_depth - 1 - i;
            AngleVector::pixel(
                channel
                    .iter()
                    .map(|&g| if (g >> shift) & 1 == 1 { PI } else { 0.0 })
                    .collect(),
            )
        })
        .collect()
}

fn max_for(bit_depth: u32) -> u32 {
    if bit_depth >= 32 {
        u32::MAX
    } else {
        (1u32 << bit_depth) - 1
    }
}

/// Pixel-domain angle planes for a vectorized image, ordered by target qubit.
pub fn mapping_planes(
    spec: &EncodingSpec,
    channels: &[Vec<u32>],
) -> Result<Vec<AngleVector>, EncodingError> {
    let expected = spec.mapping.channels();
    if channels.len() != expected {
        return Err(EncodingError::ChannelCount {
            mapping: spec.mapping,
            expected,
            found: channels.len(),
        });
    }
    let planes = match spec.mapping {
        Mapping::Frqi => vec![frqi_angles(&channels[0], spec.max_value())?],
        Mapping::Ifrqi => ifrqi_angles(&channels[0], spec.bit_depth)?,
        Mapping::Neqr => neqr_angles(&channels[0], spec.bit_depth)?,
        Mapping::Mcrqi => channels
            .iter()
            .map(|c| frqi_angles(c, spec.max_value()))
            .collect::<Result<_, _>>()?,
        Mapping::Incqi => {
            let mut planes = Vec::with_capacity(4 * spec.bit_depth as usize);
            for c in channels {
                planes.extend(neqr_angles(c, spec.bit_depth)?);
            }
            planes
        }
    };
    debug_assert_eq!(planes.len(), spec.color_qubits);
    Ok(planes)
}

/// Amplitudes below this are treated as absent when decoding.
pub const UNMEASURED_EPS: f64 = 1e-14;

/// Recovers an FRQI intensity from the `(cos θ, sin θ)` amplitude pair.
pub fn decode_frqi(alpha: f64, beta: f64, max: u32) -> Result<u32, EncodingError> {
    if alpha.abs() < UNMEASURED_EPS && beta.abs() < UNMEASURED_EPS {
        return Err(EncodingError::Unmeasured);
    }
    let k = f64::from(max);
    let g = (k * beta.atan2(alpha) / FRAC_PI_2).round();
    Ok(g.clamp(0.0, k) as u32)
}
