#![allow(dead_code)]

use qpixel::ImageBuffer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The ten 4-wide, 8-tall binary digits, `#` marking black cells, top row first.
pub const DIGITS: [[&str; 8]; 10] = [
    [
        "####", "#..#", "#..#", "#..#", "#..#", "#..#", "#..#", "####",
    ],
    [
        "...#", "...#", "...#", "...#", "...#", "...#", "...#", "...#",
    ],
    [
        "####", "...#", "...#", "####", "#...", "#...", "#...", "####",
    ],
    [
        "####", "...#", "...#", "####", "...#", "...#", "...#", "####",
    ],
    [
        "#..#", "#..#", "#..#", "####", "...#", "...#", "...#", "...#",
    ],
    [
        "####", "#...", "#...", "####", "...#", "...#", "...#", "####",
    ],
    [
        "#...", "#...", "#...", "####", "#..#", "#..#", "#..#", "####",
    ],
    [
        "####", "...#", "...#", "...#", "...#", "...#", "...#", "...#",
    ],
    [
        "####", "#..#", "#..#", "####", "#..#", "#..#", "#..#", "####",
    ],
    [
        "####", "#..#", "#..#", "####", "...#", "...#", "...#", "####",
    ],
];

/// 1-bit digit image with black = 0, white = 1 (the PGM convention).
pub fn digit(d: usize) -> ImageBuffer {
    let samples = DIGITS[d]
        .iter()
        .flat_map(|row| row.chars().map(|c| u32::from(c != '#')))
        .collect();
    ImageBuffer::new(4, 8, 1, 1, samples).unwrap()
}

/// 1-bit digit image with black = 1.
pub fn digit_ink(d: usize) -> ImageBuffer {
    let samples = DIGITS[d]
        .iter()
        .flat_map(|row| row.chars().map(|c| u32::from(c == '#')))
        .collect();
    ImageBuffer::new(4, 8, 1, 1, samples).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_image<R: Rng>(
    rng: &mut R,
    width: usize,
    height: usize,
    channels: usize,
    bit_depth: u32,
) -> ImageBuffer {
    let max = (1u32 << bit_depth) - 1;
    let samples = (0..width * height * channels)
        .map(|_| rng.gen_range(0..=max))
        .collect();
    ImageBuffer::new(width, height, channels, bit_depth, samples).unwrap()
}

/// Smooth 8-bit grayscale scene: gradient, a disc and a few stripes.
pub fn structured(width: usize, height: usize) -> ImageBuffer {
    let mut samples = Vec::with_capacity(width * height);
    for y in 0..height {
        for x in 0..width {
            let (fx, fy) = (x as f64 / width as f64, y as f64 / height as f64);
            let mut v = 60.0 + 120.0 * fx * (1.0 - 0.5 * fy);
            let (dx, dy) = (fx - 0.6, fy - 0.4);
            if dx * dx + dy * dy < 0.06 {
                v += 70.0;
            }
            if (x / 4) % 4 == 0 && y > height / 2 {
                v -= 40.0;
            }
            v += 10.0 * (fx * 25.0).sin() * (fy * 17.0).cos();
            samples.push(v.round().clamp(0.0, 255.0) as u32);
        }
    }
    ImageBuffer::new(width, height, 1, 8, samples).unwrap()
}

/// Dense `Ĥ^{⊗n}` by Kronecker products.
pub fn dense_walsh(n: u32) -> Vec<Vec<f64>> {
    let mut m = vec![vec![1.0]];
    for _ in 0..n {
        let size = m.len();
        let mut next = vec![vec![0.0; 2 * size]; 2 * size];
        for (i, row) in m.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                next[i][j] = x;
                next[i][j + size] = x;
                next[i + size][j] = x;
                next[i + size][j + size] = -x;
            }
        }
        m = next;
    }
    m
}

/// Dense Gray permutation: column `ℓ` has its 1 in row `ℓ ^ (ℓ >> 1)`.
pub fn dense_gray(n: u32) -> Vec<Vec<f64>> {
    let size = 1usize << n;
    let mut p = vec![vec![0.0; size]; size];
    for l in 0..size {
        p[l ^ (l >> 1)][l] = 1.0;
    }
    p
}

pub fn matmul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut c = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    c
}

/// Gaussian elimination with partial pivoting.
#[allow(clippy::needless_range_loop)]
pub fn gauss_solve(a: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .map(|(row, &r)| {
            let mut row = row.clone();
            row.push(r);
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        m.swap(col, piv);
        for row in 0..n {
            if row != col {
                let f = m[row][col] / m[col][col];
                for k in col..=n {
                    m[row][k] -= f * m[col][k];
                }
            }
        }
    }
    (0..n).map(|i| m[i][n] / m[i][i]).collect()
}

/// Runs `fragment` after Hadamards on `controls`, so every control block is exercised.
pub fn simulate_fragment(
    controls: &[usize],
    target: usize,
    fragment: Vec<qpixel::Gate>,
) -> qpixel::Statevector {
    let qubits = controls
        .iter()
        .copied()
        .max()
        .map_or(0, |q| q + 1)
        .max(target + 1);
    let mut c = qpixel::Circuit::new(qubits);
    c.extend(controls.iter().map(|&t| qpixel::Gate::H { target: t }))
        .unwrap();
    c.extend(fragment).unwrap();
    qpixel::simulate(&c).unwrap()
}
