//! Classical image container.

use crate::error::ImageError;

/// A raw pixel grid: row-major, channel-interleaved samples.
///
/// Every sample lies in `0..=max_value()`, where the maximum intensity is
/// always `2^bit_depth - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageBuffer {
    width: usize,
    height: usize,
    channels: usize,
    bit_depth: u32,
    samples: Vec<u32>,
}

impl ImageBuffer {
    pub fn new(
        width: usize,
        height: usize,
        channels: usize,
        bit_depth: u32,
        samples: Vec<u32>,
    ) -> Result<Self, ImageError> {
        if width == 0 || height == 0 {
            return Err(ImageError::Empty);
        }
        if !matches!(channels, 1 | 3 | 4) {
            return Err(ImageError::UnsupportedChannels(channels));
        }
        if !(1..=16).contains(&bit_depth) {
            return Err(ImageError::UnsupportedBitDepth(bit_depth));
        }
        let expected = width * height * channels;
        if samples.len() != expected {
            return Err(ImageError::SampleCount {
                expected,
                actual: samples.len(),
            });
        }
        let max = (1u32 << bit_depth) - 1;
        if let Some((index, &value)) = samples.iter().enumerate().find(|(_, &s)| s > max) {
            return Err(ImageError::SampleOutOfRange { index, value, max });
        }
        Ok(Self {
            width,
            height,
            channels,
            bit_depth,
            samples,
        })
    }

    /// Attaches a same-sized grayscale mask as the alpha channel of an RGB image.
    pub fn with_alpha(rgb: &ImageBuffer, alpha: &ImageBuffer) -> Result<Self, ImageError> {
        if rgb.channels != 3 || alpha.channels != 1 {
            return Err(ImageError::AlphaLayout {
                rgb: rgb.channels,
                alpha: alpha.channels,
            });
        }
        if rgb.width != alpha.width || rgb.height != alpha.height {
            return Err(ImageError::AlphaSize {
                rgb: (rgb.width, rgb.height),
                alpha: (alpha.width, alpha.height),
            });
        }
        if rgb.bit_depth != alpha.bit_depth {
            return Err(ImageError::AlphaDepth {
                rgb: rgb.bit_depth,
                alpha: alpha.bit_depth,
            });
        }
        let samples = rgb
            .samples
            .chunks_exact(3)
            .zip(&alpha.samples)
            .flat_map(|(px, &a)| [px[0], px[1], px[2], a])
            .collect();
        Self::new(rgb.width, rgb.height, 4, rgb.bit_depth, samples)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn bit_depth(&self) -> u32 {
        self.bit_depth
    }

    /// Maximum intensity `K = 2^bit_depth - 1`.
    pub fn max_value(&self) -> u32 {
        (1u32 << self.bit_depth) - 1
    }

    pub fn pixel_count(&self) -> usize {
        self.width * self.height
    }

    pub fn samples(&self) -> &[u32] {
        &self.samples
    }

    /// One channel flattened in row-major order (`k = row * width + col`).
    pub fn channel(&self, c: usize) -> Vec<u32> {
        assert!(c < self.channels, "channel {c} out of range");
        self.samples
            .iter()
            .skip(c)
            .step_by(self.channels)
            .copied()
            .collect()
    }

    /// Splits off the alpha channel of an RGBA image into `(rgb, alpha)`.
    pub fn split_alpha(&self) -> Option<(ImageBuffer, ImageBuffer)> {
        if self.channels != 4 {
            return None;
        }
        let rgb = self
            .samples
            .chunks_exact(4)
            .flat_map(|px| [px[0], px[1], px[2]])
            .collect();
        let alpha = self.channel(3);
        Some((
            ImageBuffer {
                channels: 3,
                samples: rgb,
                ..self.clone()
            },
            ImageBuffer {
                channels: 1,
                samples: alpha,
                ..self.clone()
            },
        ))
    }

    /// Re-interleaves per-channel rows (each `width * height` long).
    pub fn from_channels(
        width: usize,
        height: usize,
        bit_depth: u32,
        planes: &[Vec<u32>],
    ) -> Result<Self, ImageError> {
        let count = width * height;
        if let Some(bad) = planes.iter().find(|p| p.len() != count) {
            return Err(ImageError::SampleCount {
                expected: count,
                actual: bad.len(),
            });
        }
        let mut samples = Vec::with_capacity(count * planes.len());
        for k in 0..count {
            samples.extend(planes.iter().map(|p| p[k]));
        }
        Self::new(width, height, planes.len(), bit_depth, samples)
    }
}
