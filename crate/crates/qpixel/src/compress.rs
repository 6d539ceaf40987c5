//! Transform-domain compression of uniformly controlled rotations.
//!
//! A percentage of the smallest-magnitude circuit angles is zeroed, the
//! corresponding rotations are dropped, and the CNOT runs left between the
//! surviving rotations collapse by parity: a control used an even number of
//! times cancels, an odd count leaves a single CNOT.

use serde::{Deserialize, Serialize};

use crate::circuit::Gate;
use crate::encoding::{AngleVector, Domain};
use crate::error::{CircuitError, EncodingError, WalshError};
use crate::walsh::gray_delta_bit;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompressionReport {
    pub level_percent: f64,
    pub coefficients_total: usize,
    /// Nonzero coefficients left after compression.
    pub coefficients_kept: usize,
    /// Rotations removed relative to the uncompressed `2^n`.
    pub ry_removed: usize,
    /// CNOTs removed relative to the uncompressed `2^n`.
    pub cnot_removed: usize,
    /// Largest magnitude that was zeroed (0 when nothing was).
    pub threshold_magnitude: f64,
}

impl CompressionReport {
    pub(crate) fn untouched(total: usize) -> Self {
        Self {
            level_percent: 0.0,
            coefficients_total: total,
            coefficients_kept: total,
            ry_removed: 0,
            cnot_removed: 0,
            threshold_magnitude: 0.0,
        }
    }

    pub fn coefficients_zeroed(&self) -> usize {
        self.coefficients_total - self.coefficients_kept
    }

    /// Fills the removed-gate tallies from a synthesized fragment.
    pub(crate) fn record_gates(&mut self, gates: &[Gate], num_controls: usize) {
        let ry = gates
            .iter()
            .filter(|g| matches!(g, Gate::Ry { .. }))
            .count();
        let cnot = gates
            .iter()
            .filter(|g| matches!(g, Gate::Cnot { .. }))
            .count();
        let full_cnot = if num_controls == 0 {
            0
        } else {
            self.coefficients_total
        };
        self.ry_removed = self.coefficients_total - ry;
        self.cnot_removed = full_cnot.saturating_sub(cnot);
    }
}

/// Number of coefficients zeroed at `level` percent of `total`.
pub fn zeroed_count(total: usize, level: f64) -> usize {
    ((level / 100.0) * total as f64).floor() as usize
}

/// Zeroes the `floor(level/100 · 2^n)` smallest-magnitude coefficients.
///
/// Ties on magnitude zero the lower index first, so exact zeros are counted
/// among the zeroed population before anything else.
pub fn compress_coefficients(
    mut theta_hat: AngleVector,
    level: f64,
) -> Result<(AngleVector, CompressionReport), CircuitError> {
    if theta_hat.domain() != Domain::Walsh {
        return Err(WalshError::WrongDomain {
            expected: Domain::Walsh,
            found: theta_hat.domain(),
        }
        .into());
    }
    if !(0.0..=100.0).contains(&level) {
        return Err(EncodingError::LevelOutOfRange(level).into());
    }
    let total = theta_hat.len();
    let cut = zeroed_count(total, level).min(total);
    let mut threshold = 0.0f64;
    if cut > 0 {
        let values = theta_hat.values_mut();
        let mut order: Vec<usize> = (0..total).collect();
        let key = |i: &usize| (values[*i].abs(), *i);
        let cmp = |a: &usize, b: &usize| {
            let (ma, ia) = key(a);
            let (mb, ib) = key(b);
            ma.total_cmp(&mb).then(ia.cmp(&ib))
        };
        if cut < total {
            order.select_nth_unstable_by(cut - 1, cmp);
        }
        for &i in &order[..cut] {
            threshold = threshold.max(values[i].abs());
            values[i] = 0.0;
        }
    }
    let kept = theta_hat.values().iter().filter(|&&x| x != 0.0).count();
    let report = CompressionReport {
        level_percent: level,
        coefficients_total: total,
        coefficients_kept: kept,
        ry_removed: 0,
        cnot_removed: 0,
        threshold_magnitude: threshold,
    };
    Ok((theta_hat, report))
}

/// Uniformly controlled `RY` with zero rotations removed and CNOTs cancelled.
///
/// Walks the full alternating schedule, keeping a parity mask of pending CNOT
/// controls. Before every surviving rotation, and once at the end, the mask is
/// flushed as one CNOT per odd-parity control in ascending qubit order.
pub fn synth_compressed_ucry(
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
    let n = controls.len();
    if theta_hat.len() != 1usize << n {
        return Err(CircuitError::LengthMismatch {
            angles: theta_hat.len(),
            controls: n,
        });
    }
    // flush order: bit positions sorted by their control qubit index
    let mut flush_order: Vec<usize> = (0..n).collect();
    flush_order.sort_by_key(|&bit| controls[n - 1 - bit]);

    let mut gates = Vec::new();
    let mut pending: u64 = 0;
    let flush = |pending: &mut u64, gates: &mut Vec<Gate>| {
        for &bit in &flush_order {
            if *pending >> bit & 1 == 1 {
                gates.push(Gate::Cnot {
                    control: controls[n - 1 - bit],
                    target,
                });
            }
        }
        *pending = 0;
    };
    for (l, &angle) in theta_hat.values().iter().enumerate() {
        if angle != 0.0 {
            flush(&mut pending, &mut gates);
            gates.push(Gate::Ry { target, angle });
        }
        if n > 0 {
            pending ^= 1 << gray_delta_bit(l, n as u32);
        }
    }
    flush(&mut pending, &mut gates);
    Ok(gates)
}
