//! Image recovery from amplitudes.
//!
//! Angle encodings are read from per-qubit marginals: for color qubit `i` at
//! position `k`, `p0`/`p1` sum `|a|²` over color states with bit `i` clear/set,
//! and `θ = atan2(√p1, √p0)`. Basis encodings read the occupied color index.

use std::f64::consts::{FRAC_PI_2, PI};

use super::Statevector;
use crate::encoding::{decode_frqi, EncodingSpec, Mapping};
use crate::error::{EncodingError, SimError};
use crate::image::ImageBuffer;

/// Tolerance for "nonzero" amplitudes and position weights in strict mode.
const STATE_EPS: f64 = 1e-8;

#[derive(Clone, Copy, PartialEq)]
enum Mode {
    Strict,
    Nearest,
}

/// Decodes an encoded state back to the image, rejecting states that are not
/// valid for the mapping (wrong position weight, several occupied basis
/// states, unmeasured angle pairs).
pub fn reconstruct(spec: &EncodingSpec, state: &Statevector) -> Result<ImageBuffer, SimError> {
    decode(spec, state, Mode::Strict)
}

/// Like [`reconstruct`] but classifies every color qubit independently to its
/// most likely value. Used for lossy (compressed) states.
pub fn reconstruct_nearest(
    spec: &EncodingSpec,
    state: &Statevector,
) -> Result<ImageBuffer, SimError> {
    decode(spec, state, Mode::Nearest)
}

/// Nearest IFRQI level index for a color angle in `[0, π/2]`.
fn classify_ifrqi(theta: f64) -> u32 {
    let levels = [0.0, PI / 5.0, FRAC_PI_2 - PI / 5.0, FRAC_PI_2];
    let mut idx = 0;
    for (i, w) in levels.windows(2).enumerate() {
        if theta > (w[0] + w[1]) / 2.0 {
            idx = i as u32 + 1;
        }
    }
    idx
}

fn decode(spec: &EncodingSpec, state: &Statevector, mode: Mode) -> Result<ImageBuffer, SimError> {
    let l = spec.color_qubits;
    let block = 1usize << l;
    let expected = spec.padded_pixel_count << l;
    if state.len() != expected {
        return Err(SimError::StateSize {
            expected,
            found: state.len(),
        });
    }
    let depth = spec.bit_depth;
    let max = spec.max_value();
    let weight = 1.0 / spec.padded_pixel_count as f64;
    let mapping = spec.mapping;
    let invalid = |position| SimError::InvalidState { mapping, position };

    let mut planes = vec![Vec::with_capacity(spec.original_pixel_count); mapping.channels()];
    let mut p0 = vec![0.0f64; l];
    let mut p1 = vec![0.0f64; l];

    for k in 0..spec.original_pixel_count {
        let amps = &state.amplitudes()[k * block..(k + 1) * block];

        if mode == Mode::Strict {
            let total: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
            if (total - weight).abs() > STATE_EPS {
                return Err(invalid(k));
            }
        }

        if mode == Mode::Strict && matches!(mapping, Mapping::Neqr | Mapping::Incqi) {
            let mut occupied = amps
                .iter()
                .enumerate()
                .filter(|(_, a)| a.norm() > STATE_EPS);
            let c = match (occupied.next(), occupied.next()) {
                (Some((c, _)), None) => c as u32,
                _ => return Err(invalid(k)),
            };
            push_basis(&mut planes, c, depth, max);
            continue;
        }

        p0.iter_mut().for_each(|p| *p = 0.0);
        p1.iter_mut().for_each(|p| *p = 0.0);
        for (c, a) in amps.iter().enumerate() {
            let w = a.norm_sqr();
            for i in 0..l {
                if (c >> (l - 1 - i)) & 1 == 1 {
                    p1[i] += w;
                } else {
                    p0[i] += w;
                }
            }
        }

        match mapping {
            Mapping::Frqi | Mapping::Mcrqi => {
                for (i, plane) in planes.iter_mut().enumerate() {
                    let g = match decode_frqi(p0[i].sqrt(), p1[i].sqrt(), max) {
                        Ok(g) => g,
                        Err(EncodingError::Unmeasured) if mode == Mode::Nearest => 0,
                        Err(EncodingError::Unmeasured) => return Err(invalid(k)),
                        Err(e) => return Err(e.into()),
                    };
                    plane.push(g);
                }
            }
            Mapping::Ifrqi => {
                let mut g = 0u32;
                for i in 0..l {
                    g = (g << 2) | classify_ifrqi(p1[i].sqrt().atan2(p0[i].sqrt()));
                }
                planes[0].push(g);
            }
            Mapping::Neqr | Mapping::Incqi => {
                let c = (0..l).fold(0u32, |acc, i| (acc << 1) | u32::from(p1[i] > p0[i]));
                push_basis(&mut planes, c, depth, max);
            }
        }
    }
    Ok(ImageBuffer::from_channels(
        spec.width,
        spec.height,
        depth,
        &planes,
    )?)
}

/// Splits a color basis index into channel values, first channel most significant.
fn push_basis(planes: &mut [Vec<u32>], c: u32, depth: u32, max: u32) {
    let count = planes.len() as u32;
    for (j, plane) in planes.iter_mut().enumerate() {
        let shift = depth * (count - 1 - j as u32);
        plane.push((c >> shift) & max);
    }
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;
    use crate::sim::oracle_state;

    #[test]
    fn ifrqi_thresholds_are_midpoints() {
        assert_eq!(classify_ifrqi(0.0), 0);
        assert_eq!(classify_ifrqi(PI / 10.0 - 1e-9), 0);
        assert_eq!(classify_ifrqi(PI / 10.0 + 1e-9), 1);
        assert_eq!(classify_ifrqi(PI / 4.0 - 1e-9), 1);
        assert_eq!(classify_ifrqi(PI / 4.0 + 1e-9), 2);
        assert_eq!(classify_ifrqi(FRAC_PI_2), 3);
    }

    #[test]
    fn oracle_round_trip_small() {
        let cases = [
            (Mapping::Frqi, 1, 8, vec![vec![0, 17, 255]]),
            (Mapping::Ifrqi, 1, 4, vec![vec![0, 5, 10, 15, 9]]),
            (Mapping::Neqr, 1, 3, vec![vec![7, 0, 3]]),
            (
                Mapping::Mcrqi,
                3,
                8,
                vec![vec![1, 2], vec![250, 0], vec![128, 64]],
            ),
            (
                Mapping::Incqi,
                4,
                2,
                vec![vec![3, 0], vec![1, 2], vec![0, 0], vec![2, 3]],
            ),
        ];
        for (mapping, channels, depth, planes) in cases {
            let w = planes[0].len();
            let spec = EncodingSpec::new(mapping, w, 1, channels, depth, 0.0).unwrap();
            let s = oracle_state(&spec, &planes).unwrap();
            let img = reconstruct(&spec, &s).unwrap();
            let expected = ImageBuffer::from_channels(w, 1, depth, &planes).unwrap();
            assert_eq!(img, expected, "{mapping}");
            assert_eq!(
                reconstruct_nearest(&spec, &s).unwrap(),
                expected,
                "{mapping}"
            );
        }
    }

    #[test]
    fn superposed_basis_is_invalid_for_neqr() {
        let spec = EncodingSpec::new(Mapping::Neqr, 1, 1, 1, 1, 0.0).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s = Statevector::from_amplitudes(vec![Complex64::new(h, 0.0), Complex64::new(h, 0.0)])
            .unwrap();
        assert!(matches!(
            reconstruct(&spec, &s),
            Err(SimError::InvalidState { position: 0, .. })
        ));
        assert!(reconstruct_nearest(&spec, &s).is_ok());
    }

    #[test]
    fn wrong_length_is_rejected() {
        let spec = EncodingSpec::new(Mapping::Frqi, 2, 1, 1, 8, 0.0).unwrap();
        let s = Statevector::zero(3);
        assert!(matches!(
            reconstruct(&spec, &s),
            Err(SimError::StateSize {
                expected: 4,
                found: 8
            })
        ));
    }
}
