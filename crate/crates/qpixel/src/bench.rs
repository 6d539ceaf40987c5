//! Wall-clock timing of the angle transforms, as used by `qpixel bench`.

use std::time::{Duration, Instant};

use crate::encoding::AngleVector;
use crate::walsh::{gray_permute, sfwht, solve_angles, Direction};

pub const OPS: [&str; 3] = ["sfwht", "gray_permute", "solve_angles"];

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: u32,
    pub op: &'static str,
    pub median_ms: f64,
}

#[derive(Debug, Clone, Default)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// Sizes skipped because the vector could not be allocated.
    pub skipped: Vec<u32>,
}

fn median(mut xs: Vec<Duration>) -> Duration {
    xs.sort();
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        (xs[m - 1] + xs[m]) / 2
    }
}

fn fill(v: &mut Vec<f64>, len: usize) {
    let mut x: u64 = 0x9E37_79B9_7F4A_7C15;
    v.extend((0..len).map(|_| {
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        (x >> 11) as f64 / (1u64 << 53) as f64
    }));
}

/// Median time of each op over `reps` runs for every `n` in `min_n..=max_n`.
pub fn time_transforms(min_n: u32, max_n: u32, reps: usize) -> BenchReport {
    let reps = reps.max(1);
    let mut report = BenchReport::default();
    for n in min_n..=max_n {
        let len = 1usize << n;
        let mut data = Vec::new();
        if data.try_reserve_exact(len).is_err() {
            report.skipped.push(n);
            continue;
        }
        fill(&mut data, len);
        for op in OPS {
            let mut times = Vec::with_capacity(reps);
            for _ in 0..reps {
                let mut v = data.clone();
                let start = Instant::now();
                match op {
                    "sfwht" => sfwht(&mut v, Direction::Forward).expect("power of two"),
                    "gray_permute" => {
                        gray_permute(&mut v, Direction::Inverse).expect("power of two")
                    }
                    _ => {
                        let a = AngleVector::pixel(v).expect("power of two");
                        v = solve_angles(a).expect("pixel domain").into_values();
                    }
                }
                times.push(start.elapsed());
                std::hint::black_box(&v);
            }
            report.rows.push(BenchRow {
                n,
                op,
                median_ms: median(times).as_secs_f64() * 1e3,
            });
        }
    }
    report
}

/// `t(n+1) / t(n)` for consecutive sizes of one op.
pub fn doubling_ratios(rows: &[BenchRow], op: &str) -> Vec<(u32, f64)> {
    let series: Vec<&BenchRow> = rows.iter().filter(|r| r.op == op).collect();
    series
        .windows(2)
        .filter(|w| w[1].n == w[0].n + 1)
        .map(|w| (w[1].n, w[1].median_ms / w[0].median_ms))
        .collect()
}
