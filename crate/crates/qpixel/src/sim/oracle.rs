//! Encoded states built by direct tensor arithmetic, never through gates.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::{check_budget, Statevector, DEFAULT_QUBIT_BUDGET};
use crate::encoding::{EncodingSpec, Mapping};
use crate::error::{EncodingError, SimError};

/// Color angles `θ` (not `2θ`) of one pixel, one per color qubit.
fn color_thetas(spec: &EncodingSpec, pixel: &[u32]) -> Vec<f64> {
    let k = f64::from(spec.max_value());
    let depth = spec.bit_depth;
    match spec.mapping {
        Mapping::Frqi | Mapping::Mcrqi => pixel
            .iter()
            .map(|&g| FRAC_PI_2 * f64::from(g) / k)
            .collect(),
        Mapping::Ifrqi => {
            let levels = [0.0, PI / 5.0, FRAC_PI_2 - PI / 5.0, FRAC_PI_2];
            (0..depth / 2)
                .map(|i| {
                    let hi = (pixel[0] >> (depth - 1 - 2 * i)) & 1;
                    let lo = (pixel[0] >> (depth - 2 - 2 * i)) & 1;
                    levels[(2 * hi + lo) as usize]
                })
                .collect()
        }
        Mapping::Neqr | Mapping::Incqi => unreachable!("basis encodings have no angles"),
    }
}

/// Analytic state `2^{-n/2} Σ_k |k⟩ ⊗ |c_k⟩` for the given image channels.
///
/// Channels may be unpadded or already padded to `2^n`; missing pixels are
/// treated as 0, which places `|0…0⟩` on the color register.
pub fn oracle_state(spec: &EncodingSpec, channels: &[Vec<u32>]) -> Result<Statevector, SimError> {
    let expected = spec.mapping.channels();
    if channels.len() != expected {
        return Err(EncodingError::ChannelCount {
            mapping: spec.mapping,
            expected,
            found: channels.len(),
        }
        .into());
    }
    let padded = spec.padded_pixel_count;
    let max = spec.max_value();
    for c in channels {
        if c.len() > padded {
            return Err(SimError::StateSize {
                expected: padded,
                found: c.len(),
            });
        }
        if let Some((index, &value)) = c.iter().enumerate().find(|(_, &g)| g > max) {
            return Err(EncodingError::ValueExceedsMax { index, value, max }.into());
        }
    }
    check_budget(spec.total_qubits(), DEFAULT_QUBIT_BUDGET)?;

    let l = spec.color_qubits;
    let block = 1usize << l;
    let scale = 1.0 / (padded as f64).sqrt();
    let mut amps = vec![Complex64::new(0.0, 0.0); padded << l];
    let mut pixel = vec![0u32; channels.len()];

    for k in 0..padded {
        for (p, c) in pixel.iter_mut().zip(channels) {
            *p = c.get(k).copied().unwrap_or(0);
        }
        let out = &mut amps[k * block..(k + 1) * block];
        match spec.mapping {
            Mapping::Neqr | Mapping::Incqi => {
                let depth = spec.bit_depth;
                let c = pixel
                    .iter()
                    .fold(0usize, |acc, &g| (acc << depth) | g as usize);
                out[c] = Complex64::new(scale, 0.0);
            }
            _ => {
                // Product of (cos θ_i, sin θ_i), color qubit 0 most significant.
                out[0] = Complex64::new(scale, 0.0);
                let mut filled = 1usize;
                for theta in color_thetas(spec, &pixel) {
                    let (s, c) = theta.sin_cos();
                    for j in (0..filled).rev() {
                        let a = out[j];
                        out[2 * j] = a * c;
                        out[2 * j + 1] = a * s;
                    }
                    filled *= 2;
                }
            }
        }
    }
    Statevector::from_amplitudes(amps)
}
