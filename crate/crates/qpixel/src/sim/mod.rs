//! Dense statevector simulation.
//!
//! Amplitude index `Σ bit_i · 2^(q-1-i)`: qubit 0 is the most significant bit,
//! so for an encoded image the index is `k · 2^ℓ + c`.

mod metrics;
mod oracle;
mod readout;

pub use metrics::{compare, image_quality, ImageQuality, QualityMetrics, StateComparison};
pub use oracle::oracle_state;
pub use readout::{reconstruct, reconstruct_nearest};

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate};
use crate::error::SimError;

/// Default cap on simulated qubits (2^26 amplitudes, 1 GiB).
pub const DEFAULT_QUBIT_BUDGET: usize = 26;

#[cfg(feature = "parallel")]
const PAR_MIN_LEN: usize = 1 << 14;
/// Minimum amplitudes handed to one rayon task.
#[cfg(feature = "parallel")]
const PAR_CHUNK: usize = 1 << 12;

#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    amps: Vec<Complex64>,
    num_qubits: usize,
}

impl Statevector {
    /// `|0…0⟩` on `num_qubits` qubits.
    pub fn zero(num_qubits: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << num_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Self { amps, num_qubits }
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self, SimError> {
        let len = amps.len();
        if !len.is_power_of_two() {
            return Err(SimError::StateSize {
                expected: len.next_power_of_two(),
                found: len,
            });
        }
        Ok(Self {
            num_qubits: len.trailing_zeros() as usize,
            amps,
        })
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Applies one gate. Qubit indices must already be valid for this state.
    pub fn apply(&mut self, gate: &Gate) {
        let q = self.num_qubits;
        let bit = |qubit: usize| 1usize << (q - 1 - qubit);
        match gate {
            Gate::H { target } => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                for_each_pair(&mut self.amps, bit(*target), |_, a, b| {
                    let (x, y) = (*a, *b);
                    *a = (x + y) * s;
                    *b = (x - y) * s;
                });
            }
            Gate::X { target } => {
                for_each_pair(&mut self.amps, bit(*target), |_, a, b| std::mem::swap(a, b));
            }
            Gate::Ry { target, angle } => {
                let (sin, cos) = (angle / 2.0).sin_cos();
                for_each_pair(&mut self.amps, bit(*target), |_, a, b| {
                    rotate(a, b, cos, sin)
                });
            }
            Gate::Cnot { control, target } => {
                let cmask = bit(*control);
                for_each_pair(&mut self.amps, bit(*target), |i, a, b| {
                    if i & cmask != 0 {
                        std::mem::swap(a, b);
                    }
                });
            }
            Gate::Mcry {
                controls,
                target,
                angle,
            } => {
                let (mut mask, mut pattern) = (0usize, 0usize);
                for c in controls {
                    mask |= bit(c.qubit);
                    if c.positive {
                        pattern |= bit(c.qubit);
                    }
                }
                let (sin, cos) = (angle / 2.0).sin_cos();
                for_each_pair(&mut self.amps, bit(*target), |i, a, b| {
                    if i & mask == pattern {
                        rotate(a, b, cos, sin);
                    }
                });
            }
        }
    }
}

#[inline]
fn rotate(a: &mut Complex64, b: &mut Complex64, cos: f64, sin: f64) {
    let (x, y) = (*a, *b);
    *a = x * cos - y * sin;
    *b = x * sin + y * cos;
}

/// Calls `f(i, &mut amps[i], &mut amps[i + stride])` for every index `i` whose
/// `stride` bit is clear.
fn for_each_pair<F>(amps: &mut [Complex64], stride: usize, f: F)
where
    F: Fn(usize, &mut Complex64, &mut Complex64) + Sync + Send,
{
    let block = 2 * stride;
    #[cfg(feature = "parallel")]
    if amps.len() >= PAR_MIN_LEN {
        use rayon::prelude::*;
        let chunk = block.max(PAR_CHUNK);
        if amps.len() / chunk >= 2 {
            amps.par_chunks_mut(chunk).enumerate().for_each(|(j, c)| {
                for (b, sub) in c.chunks_exact_mut(block).enumerate() {
                    pairs_in_block(sub, j * chunk + b * block, stride, &f);
                }
            });
        } else {
            let (lo, hi) = amps.split_at_mut(stride);
            lo.par_iter_mut()
                .zip(hi.par_iter_mut())
                .with_min_len(PAR_CHUNK)
                .enumerate()
                .for_each(|(i, (a, b))| f(i, a, b));
        }
        return;
    }
    for (j, chunk) in amps.chunks_exact_mut(block).enumerate() {
        pairs_in_block(chunk, j * block, stride, &f);
    }
}

#[inline]
fn pairs_in_block<F>(chunk: &mut [Complex64], base: usize, stride: usize, f: &F)
where
    F: Fn(usize, &mut Complex64, &mut Complex64),
{
    let (lo, hi) = chunk.split_at_mut(stride);
    for (i, (a, b)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
        f(base + i, a, b);
    }
}

/// Runs `c` on `|0…0⟩` with the default qubit budget.
pub fn simulate(c: &Circuit) -> Result<Statevector, SimError> {
    simulate_with_budget(c, DEFAULT_QUBIT_BUDGET)
}

pub fn simulate_with_budget(c: &Circuit, max_qubits: usize) -> Result<Statevector, SimError> {
    check_budget(c.num_qubits(), max_qubits)?;
    let mut state = Statevector::zero(c.num_qubits());
    for g in c.gates() {
        state.apply(g);
    }
    Ok(state)
}

pub(crate) fn check_budget(required: usize, max: usize) -> Result<(), SimError> {
    if required > max {
        Err(SimError::QubitBudget { required, max })
    } else {
        Ok(())
    }
}
