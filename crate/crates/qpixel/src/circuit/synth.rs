use crate::compress::{compress_coefficients, synth_compressed_ucry, CompressionReport};
use crate::encoding::{AngleVector, Domain, EncodingSpec};
use crate::error::{CircuitError, EncodingError, WalshError};
use crate::walsh::{gray_delta_bit, solve_angles};

use super::{Circuit, Control, Gate};

/// Pixel cap for the multi-controlled baseline; it is an oracle, not a product path.
pub const MAX_BASELINE_PIXELS: usize = 1 << 12;

/// How uniformly controlled rotations are turned into gates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Synthesis {
    /// Full alternating schedule: `2^n` rotations and `2^n` CNOTs, zero angles kept.
    Plain,
    /// Zero the given percentage of smallest coefficients, drop zero rotations
    /// and cancel CNOTs by parity. Level 0 still drops exact zeros.
    Compressed { level: f64 },
}

/// Control qubit of each CNOT in the alternating schedule, in emission order.
///
/// CNOT `ℓ` is controlled by the position bit in which Gray codes `ℓ` and
/// `ℓ + 1` differ; bit `j` (least significant = 0) lives on `controls[n - 1 - j]`.
pub fn ucry_controls(controls: &[usize]) -> Vec<usize> {
    let n = controls.len() as u32;
    if n == 0 {
        return Vec::new();
    }
    (0..1usize << n)
        .map(|l| controls[controls.len() - 1 - gray_delta_bit(l, n) as usize])
        .collect()
}

/// Uniformly controlled `RY` as alternating rotations and CNOTs.
///
/// `controls[0]` carries the most significant position bit.
pub fn ucry(
    theta_hat: &AngleVector,
    controls: &[usize],
    target: usize,
) -> Result<Vec<Gate>, CircuitError> {
    if theta_hat.domain() != Domain::Walsh {
        return Err(WalshError::WrongDomain {
            expected: Domain::Walsh,
            found: theta_hat.domain(),
        }
        .into());
    }
    if theta_hat.len() != 1usize << controls.len() {
        return Err(CircuitError::LengthMismatch {
            angles: theta_hat.len(),
            controls: controls.len(),
        });
    }
    if controls.is_empty() {
        return Ok(vec![Gate::Ry {
            target,
            angle: theta_hat.values()[0],
        }]);
    }
    let sequence = ucry_controls(controls);
    let mut gates = Vec::with_capacity(2 * theta_hat.len());
    for (&angle, &control) in theta_hat.values().iter().zip(&sequence) {
        gates.push(Gate::Ry { target, angle });
        gates.push(Gate::Cnot { control, target });
    }
    Ok(gates)
}

fn check_planes(spec: &EncodingSpec, planes: &[AngleVector]) -> Result<(), CircuitError> {
    if planes.len() != spec.color_qubits {
        return Err(EncodingError::PlaneCount {
            expected: spec.color_qubits,
            found: planes.len(),
        }
        .into());
    }
    for p in planes {
        if p.domain() != Domain::Pixel {
            return Err(WalshError::WrongDomain {
                expected: Domain::Pixel,
                found: p.domain(),
            }
            .into());
        }
        if p.len() != spec.padded_pixel_count {
            return Err(CircuitError::LengthMismatch {
                angles: p.len(),
                controls: spec.n as usize,
            });
        }
    }
    Ok(())
}

fn synthesize_plane(
    plane: AngleVector,
    controls: &[usize],
    target: usize,
    synthesis: Synthesis,
) -> Result<(Vec<Gate>, CompressionReport), CircuitError> {
    let theta_hat = solve_angles(plane)?;
    match synthesis {
        Synthesis::Plain => {
            let total = theta_hat.len();
            let gates = ucry(&theta_hat, controls, target)?;
            Ok((gates, CompressionReport::untouched(total)))
        }
        Synthesis::Compressed { level } => {
            let (sparse, mut report) = compress_coefficients(theta_hat, level)?;
            let gates = synth_compressed_ucry(&sparse, controls, target)?;
            report.record_gates(&gates, controls.len());
            Ok((gates, report))
        }
    }
}

/// `H^{⊗n}` followed by one uniformly controlled rotation per plane.
///
/// Planes are pixel-domain angle vectors ordered by target qubit; plane `i`
/// targets qubit `n + i`. Returns the per-plane compression reports alongside.
pub fn mapping_circuit_with(
    spec: &EncodingSpec,
    planes: Vec<AngleVector>,
    synthesis: Synthesis,
) -> Result<(Circuit, Vec<CompressionReport>), CircuitError> {
    check_planes(spec, &planes)?;
    if let Synthesis::Compressed { level } = synthesis {
        if !(0.0..=100.0).contains(&level) {
            return Err(EncodingError::LevelOutOfRange(level).into());
        }
    }
    let n = spec.n as usize;
    let controls: Vec<usize> = (0..n).collect();

    #[cfg(feature = "parallel")]
    let fragments: Vec<_> = {
        use rayon::prelude::*;
        planes
            .into_par_iter()
            .enumerate()
            .map(|(i, p)| synthesize_plane(p, &controls, n + i, synthesis))
            .collect::<Result<_, _>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let fragments: Vec<_> = planes
        .into_iter()
        .enumerate()
        .map(|(i, p)| synthesize_plane(p, &controls, n + i, synthesis))
        .collect::<Result<_, _>>()?;

    let mut circuit = Circuit::with_spec(spec.clone());
    circuit.extend((0..n).map(|target| Gate::H { target }))?;
    let mut reports = Vec::with_capacity(fragments.len());
    for (gates, report) in fragments {
        circuit.extend(gates)?;
        reports.push(report);
    }
    Ok((circuit, reports))
}

/// Circuit for `spec`, compressed at `spec.compression_percent`.
pub fn mapping_circuit(
    spec: &EncodingSpec,
    planes: Vec<AngleVector>,
) -> Result<Circuit, CircuitError> {
    let synthesis = Synthesis::Compressed {
        level: spec.compression_percent,
    };
    Ok(mapping_circuit_with(spec, planes, synthesis)?.0)
}

/// Single-plane convenience wrapper for grayscale FRQI.
pub fn frqi_circuit(angles: AngleVector, spec: &EncodingSpec) -> Result<Circuit, CircuitError> {
    mapping_circuit(spec, vec![angles])
}

/// Reference construction with one multi-controlled `RY` per pixel and plane.
///
/// Pixel `k` is selected by controls matching the binary pattern of `k`
/// (negative control where the bit is 0).
pub fn mcry_baseline_circuit(
    spec: &EncodingSpec,
    planes: &[AngleVector],
) -> Result<Circuit, CircuitError> {
    check_planes(spec, planes)?;
    let size = spec.padded_pixel_count;
    if size > MAX_BASELINE_PIXELS {
        return Err(CircuitError::BaselineTooLarge {
            max: MAX_BASELINE_PIXELS,
            found: size,
        });
    }
    let n = spec.n as usize;
    let mut circuit = Circuit::with_spec(spec.clone());
    circuit.extend((0..n).map(|target| Gate::H { target }))?;
    for (i, plane) in planes.iter().enumerate() {
        for (k, &angle) in plane.values().iter().enumerate() {
            let controls = (0..n)
                .map(|q| Control {
                    qubit: q,
                    positive: (k >> (n - 1 - q)) & 1 == 1,
                })
                .collect();
            circuit.push(Gate::Mcry {
                controls,
                target: n + i,
                angle,
            })?;
        }
    }
    Ok(circuit)
}
