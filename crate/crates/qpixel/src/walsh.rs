//! Matrix-free solution of the uniformly controlled rotation angle system.
//!
//! The circuit angles `θ̂` and the per-pixel angles `θ` are related by
//! `θ = Ĥ^{⊗n} P_G θ̂`, where `Ĥ = [[1, 1], [1, -1]]` and `P_G` moves the entry at
//! binary index `ℓ` to position `gray_code(ℓ)`. Both factors are applied in
//! place: the Walsh–Hadamard butterfly in `O(N log N)` and the Gray permutation
//! by recursive reflection, which needs no heap memory beyond the vector itself
//! (recursion depth `n`).
//!
//! Kernels exist in a sequential flavor ([`seq`]) and, with the `parallel`
//! feature, a rayon flavor ([`par`]). The top-level functions dispatch to the
//! parallel kernels when the feature is enabled. Both flavors perform the
//! identical floating-point operations in the identical order per element, so
//! their results agree bit for bit.

use crate::encoding::{log2_exact, AngleVector, Domain};
use crate::error::WalshError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Reflected binary Gray code.
#[inline]
pub fn gray_code(k: usize) -> usize {
    k ^ (k >> 1)
}

/// Index of the single bit in which `gray_code(ℓ)` and `gray_code(ℓ + 1 mod 2^n)` differ.
#[inline]
pub fn gray_delta_bit(l: usize, n: u32) -> u32 {
    let next = if n == 0 {
        0
    } else {
        (l + 1) & ((1usize << n) - 1)
    };
    let diff = gray_code(l) ^ gray_code(next);
    if diff == 0 {
        // only when n == 0: a single rotation has no partner
        0
    } else {
        diff.trailing_zeros()
    }
}

/// Blocks at or below this size run all their low butterfly stages while in cache.
const BLOCK: usize = 1 << 12;

pub mod seq {
    //! Single-threaded kernels.

    use super::{Direction, BLOCK};

    #[inline]
    fn butterfly_pair(lo: &mut [f64], hi: &mut [f64], scale: bool) {
        if scale {
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = (x + y) * 0.5;
                *b = (x - y) * 0.5;
            }
        } else {
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
    }

    /// Runs stages `from..to` (stage `s` pairs indices differing in bit `s`).
    pub(super) fn stages(v: &mut [f64], from: u32, to: u32, scale: bool) {
        for s in from..to {
            let half = 1usize << s;
            for chunk in v.chunks_exact_mut(2 * half) {
                let (lo, hi) = chunk.split_at_mut(half);
                butterfly_pair(lo, hi, scale);
            }
        }
    }

    /// In-place Walsh–Hadamard transform; `v.len()` must be a power of two.
    ///
    /// `Forward` computes `Ĥ^{⊗n} v / 2^n` with the halving folded into every
    /// stage; `Inverse` computes the unscaled `Ĥ^{⊗n} v`.
    pub fn sfwht(v: &mut [f64], direction: Direction) {
        debug_assert!(v.len().is_power_of_two());
        let n = v.len().trailing_zeros();
        let scale = direction == Direction::Forward;
        let block = v.len().min(BLOCK);
        let low = block.trailing_zeros();
        for chunk in v.chunks_exact_mut(block) {
            stages(chunk, 0, low, scale);
        }
        stages(v, low, n, scale);
    }

    /// In-place Gray permutation; `v.len()` must be a power of two.
    ///
    /// `Forward` moves entry `ℓ` to position `gray_code(ℓ)`; `Inverse` undoes it.
    pub fn gray_permute(v: &mut [f64], direction: Direction) {
        if v.len() <= 2 {
            return;
        }
        let half = v.len() / 2;
        let (lo, hi) = v.split_at_mut(half);
        match direction {
            Direction::Forward => {
                hi.reverse();
                gray_permute(lo, direction);
                gray_permute(hi, direction);
            }
            Direction::Inverse => {
                gray_permute(lo, direction);
                gray_permute(hi, direction);
                hi.reverse();
            }
        }
    }
}

#[cfg(feature = "parallel")]
pub mod par {
    //! Rayon kernels. Below a few thousand elements they fall back to [`super::seq`].

    use rayon::prelude::*;

    use super::{seq, Direction, BLOCK};

    const SPLIT: usize = 1 << 14;

    pub fn sfwht(v: &mut [f64], direction: Direction) {
        debug_assert!(v.len().is_power_of_two());
        if v.len() < SPLIT {
            return seq::sfwht(v, direction);
        }
        let n = v.len().trailing_zeros();
        let scale = direction == Direction::Forward;
        let low = BLOCK.trailing_zeros();
        v.par_chunks_mut(BLOCK)
            .for_each(|chunk| seq::stages(chunk, 0, low, scale));
        for s in low..n {
            let half = 1usize << s;
            if v.len() / (2 * half) >= 8 {
                v.par_chunks_mut(2 * half).for_each(|chunk| {
                    let (lo, hi) = chunk.split_at_mut(half);
                    pair(lo, hi, scale);
                });
            } else {
                for chunk in v.chunks_mut(2 * half) {
                    let (lo, hi) = chunk.split_at_mut(half);
                    lo.par_chunks_mut(BLOCK)
                        .zip(hi.par_chunks_mut(BLOCK))
                        .for_each(|(a, b)| pair(a, b, scale));
                }
            }
        }
    }

    #[inline]
    fn pair(lo: &mut [f64], hi: &mut [f64], scale: bool) {
        for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
            let (x, y) = (*a, *b);
            if scale {
                *a = (x + y) * 0.5;
                *b = (x - y) * 0.5;
            } else {
                *a = x + y;
                *b = x - y;
            }
        }
    }

    pub fn gray_permute(v: &mut [f64], direction: Direction) {
        if v.len() < SPLIT {
            return seq::gray_permute(v, direction);
        }
        let half = v.len() / 2;
        let (lo, hi) = v.split_at_mut(half);
        match direction {
            Direction::Forward => {
                reverse(hi);
                rayon::join(
                    || gray_permute(lo, direction),
                    || gray_permute(hi, direction),
                );
            }
            Direction::Inverse => {
                rayon::join(
                    || gray_permute(lo, direction),
                    || gray_permute(hi, direction),
                );
                reverse(hi);
            }
        }
    }

    fn reverse(v: &mut [f64]) {
        let half = v.len() / 2;
        let (a, b) = v.split_at_mut(half);
        a.par_chunks_mut(BLOCK)
            .zip(b.par_rchunks_mut(BLOCK))
            .for_each(|(x, y)| {
                for (p, q) in x.iter_mut().zip(y.iter_mut().rev()) {
                    std::mem::swap(p, q);
                }
            });
    }
}

fn check_len(v: &[f64]) -> Result<(), WalshError> {
    log2_exact(v.len())
        .map(|_| ())
        .ok_or(WalshError::NotPowerOfTwo(v.len()))
}

/// Scaled fast Walsh–Hadamard transform, in place.
pub fn sfwht(v: &mut [f64], direction: Direction) -> Result<(), WalshError> {
    check_len(v)?;
    #[cfg(feature = "parallel")]
    par::sfwht(v, direction);
    #[cfg(not(feature = "parallel"))]
    seq::sfwht(v, direction);
    Ok(())
}

/// Gray-code permutation, in place.
pub fn gray_permute(v: &mut [f64], direction: Direction) -> Result<(), WalshError> {
    check_len(v)?;
    #[cfg(feature = "parallel")]
    par::gray_permute(v, direction);
    #[cfg(not(feature = "parallel"))]
    seq::gray_permute(v, direction);
    Ok(())
}

fn expect_domain(v: &AngleVector, expected: Domain) -> Result<(), WalshError> {
    if v.domain() != expected {
        return Err(WalshError::WrongDomain {
            expected,
            found: v.domain(),
        });
    }
    Ok(())
}

/// Solves `Ĥ^{⊗n} P_G θ̂ = θ` for the circuit angles: `θ̂ = P_G⁻¹ Ĥ^{⊗n} θ / 2^n`.
pub fn solve_angles(mut theta: AngleVector) -> Result<AngleVector, WalshError> {
    expect_domain(&theta, Domain::Pixel)?;
    sfwht(theta.values_mut(), Direction::Forward)?;
    gray_permute(theta.values_mut(), Direction::Inverse)?;
    theta.set_domain(Domain::Walsh);
    Ok(theta)
}

/// Maps circuit angles back to per-pixel angles: `θ = Ĥ^{⊗n} P_G θ̂`.
pub fn apply_angles(mut theta_hat: AngleVector) -> Result<AngleVector, WalshError> {
    expect_domain(&theta_hat, Domain::Walsh)?;
    gray_permute(theta_hat.values_mut(), Direction::Forward)?;
    sfwht(theta_hat.values_mut(), Direction::Inverse)?;
    theta_hat.set_domain(Domain::Pixel);
    Ok(theta_hat)
}
