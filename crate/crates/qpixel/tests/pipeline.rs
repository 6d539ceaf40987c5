mod common;

use std::f64::consts::PI;

use proptest::prelude::*;
use qpixel::circuit::{to_qasm, Synthesis};
use qpixel::encoding::vectorize;
use qpixel::netpbm::{encode_netpbm, parse_netpbm};
use qpixel::pipeline::{decode, encode, encode_with};
use qpixel::sim::{
    compare, image_quality, oracle_state, reconstruct, reconstruct_nearest, simulate,
};
use qpixel::{ImageBuffer, Mapping};
use rand::Rng;

fn caps(mapping: Mapping) -> (usize, u32) {
    match mapping {
        Mapping::Frqi => (256, 8),
        Mapping::Ifrqi => (64, 4),
        Mapping::Neqr => (64, 4),
        Mapping::Mcrqi => (64, 8),
        Mapping::Incqi => (16, 2),
    }
}

#[test]
fn qasm_for_four_pixel_frqi() {
    // θ = (π, 0, 0, 0): every circuit angle is π/4.
    let img = ImageBuffer::new(2, 2, 1, 8, vec![255, 0, 0, 0]).unwrap();
    let enc = encode(&img, Mapping::Frqi, 0.0).unwrap();
    let ry = "ry(0.78539816339744828) q[2];\n";
    let expected = format!(
        "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\nh q[0];\nh q[1];\n\
         {ry}cx q[1],q[2];\n{ry}cx q[0],q[2];\n{ry}cx q[1],q[2];\n{ry}cx q[0],q[2];\n"
    );
    assert_eq!(to_qasm(&enc.circuit).unwrap(), expected);
}

#[test]
fn qasm_is_deterministic() {
    let img = common::structured(16, 16);
    let a = to_qasm(&encode(&img, Mapping::Frqi, 40.0).unwrap().circuit).unwrap();
    let b = to_qasm(&encode(&img, Mapping::Frqi, 40.0).unwrap().circuit).unwrap();
    assert_eq!(a, b);
}

#[test]
fn frqi_amplitudes_are_real_and_nonnegative() {
    let mut rng = common::rng(11);
    for _ in 0..20 {
        let img = common::random_image(&mut rng, 16, 8, 1, 8);
        let state = simulate(&encode(&img, Mapping::Frqi, 0.0).unwrap().circuit).unwrap();
        for a in state.amplitudes() {
            assert!(a.im.abs() <= 1e-12);
            assert!(a.re >= -1e-12);
        }
    }
}

#[test]
fn neqr_has_one_amplitude_per_pixel() {
    let mut rng = common::rng(12);
    for _ in 0..20 {
        let img = common::random_image(&mut rng, 8, 8, 1, 4);
        let state = simulate(&encode(&img, Mapping::Neqr, 0.0).unwrap().circuit).unwrap();
        let big: Vec<f64> = state
            .amplitudes()
            .iter()
            .map(|a| a.norm())
            .filter(|&m| m > 1e-8)
            .collect();
        assert_eq!(big.len(), 64);
        assert!(big.iter().all(|m| (m - 0.125).abs() <= 1e-10));
    }
}

#[test]
fn padding_positions_hold_color_zero() {
    let img = ImageBuffer::new(3, 1, 1, 8, vec![200, 100, 50]).unwrap();
    let state = simulate(&encode(&img, Mapping::Frqi, 0.0).unwrap().circuit).unwrap();
    // position 3, color |0⟩ and |1⟩
    assert!((state.amplitudes()[6].re - 0.5).abs() < 1e-14);
    assert!(state.amplitudes()[7].norm() < 1e-14);
}

#[test]
fn oracle_round_trip_every_mapping() {
    let mut rng = common::rng(13);
    for mapping in Mapping::ALL {
        let (max, depth) = caps(mapping);
        for _ in 0..20 {
            let w = rng.gen_range(1..=8);
            let h = rng.gen_range(1..=(max / w).min(8));
            let img = common::random_image(&mut rng, w, h, mapping.channels(), depth);
            let spec = qpixel::EncodingSpec::for_image(&img, mapping, 0.0).unwrap();
            let state = oracle_state(&spec, &vectorize(&img).channels).unwrap();
            assert_eq!(reconstruct(&spec, &state).unwrap(), img, "{mapping}");
        }
    }
}

#[test]
fn plain_and_compressed_at_zero_prepare_the_same_state() {
    let mut rng = common::rng(14);
    for mapping in Mapping::ALL {
        let (max, depth) = caps(mapping);
        let img = common::random_image(&mut rng, max.min(8), 2, mapping.channels(), depth);
        let a = encode_with(&img, mapping, 0.0, Synthesis::Plain).unwrap();
        let b = encode(&img, mapping, 0.0).unwrap();
        assert!(b.circuit.counts().ry <= a.circuit.counts().ry);
        let err = compare(
            &simulate(&a.circuit).unwrap(),
            &simulate(&b.circuit).unwrap(),
        )
        .unwrap()
        .max_amp_error;
        assert!(err <= 1e-12, "{mapping}: {err:e}");
    }
}

#[test]
fn compressed_basis_encodings_decode_with_nearest_readout() {
    let mut rng = common::rng(15);
    for mapping in [Mapping::Neqr, Mapping::Incqi] {
        let img = common::random_image(&mut rng, 4, 4, mapping.channels(), 2);
        let enc = encode(&img, mapping, 50.0).unwrap();
        let state = simulate(&enc.circuit).unwrap();
        let recon = reconstruct_nearest(&enc.spec, &state).unwrap();
        assert_eq!(recon.channels(), img.channels());
        assert!((state.norm_sqr() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn mnist_sized_quality_drops_between_sixty_and_ninety() {
    let img = common::structured(28, 28);
    let psnr = |level| {
        let enc = encode(&img, Mapping::Frqi, level).unwrap();
        let recon = decode(&enc.spec, &simulate(&enc.circuit).unwrap()).unwrap();
        image_quality(&img, &recon).unwrap().psnr_db
    };
    let (p60, p90) = (psnr(60.0), psnr(90.0));
    assert!(p90.is_finite());
    assert!(p90 < p60, "{p90} vs {p60}");
}

#[test]
fn mnist_sized_rotation_counts() {
    let img = common::structured(28, 28);
    for (level, ry) in [(30.0, 717), (60.0, 410), (75.0, 256), (90.0, 103)] {
        let enc = encode(&img, Mapping::Frqi, level).unwrap();
        let counts = enc.circuit.counts();
        assert!(counts.ry <= ry, "{level}%: {}", counts.ry);
        assert_eq!(counts.h, 10);
        assert!(counts.cnot <= 1024);
    }
}

#[test]
fn netpbm_bytes_survive_the_pipeline() {
    let img = common::structured(20, 12);
    let parsed = parse_netpbm(&encode_netpbm(&img).unwrap()).unwrap();
    let enc = encode(&parsed, Mapping::Frqi, 0.0).unwrap();
    let recon = decode(&enc.spec, &simulate(&enc.circuit).unwrap()).unwrap();
    assert_eq!(recon, img);
}

#[test]
fn angle_range_is_zero_to_pi() {
    let img = ImageBuffer::new(2, 1, 1, 8, vec![0, 255]).unwrap();
    let spec = qpixel::EncodingSpec::for_image(&img, Mapping::Frqi, 0.0).unwrap();
    let planes = qpixel::encoding::mapping_planes(&spec, &vectorize(&img).channels).unwrap();
    assert_eq!(planes[0].values(), &[0.0, PI]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn simulated_circuit_matches_oracle(
        mapping_idx in 0usize..5,
        seed in any::<u64>(),
        level in prop_oneof![Just(0.0), 0.0f64..100.0],
    ) {
        let mapping = Mapping::ALL[mapping_idx];
        let (max, depth) = caps(mapping);
        let mut rng = common::rng(seed);
        let w = rng.gen_range(1..=16);
        let h = rng.gen_range(1..=(max / w).clamp(1, 16));
        let img = common::random_image(&mut rng, w, h, mapping.channels(), depth);
        let enc = encode(&img, mapping, level).unwrap();
        let state = simulate(&enc.circuit).unwrap();
        prop_assert!((state.norm_sqr() - 1.0).abs() < 1e-10);
        if level == 0.0 {
            let oracle = oracle_state(&enc.spec, &vectorize(&img).channels).unwrap();
            prop_assert!(compare(&state, &oracle).unwrap().max_amp_error <= 1e-10);
            prop_assert_eq!(reconstruct(&enc.spec, &state).unwrap(), img);
        } else {
            let recon = decode(&enc.spec, &state).unwrap();
            prop_assert_eq!(recon.width(), w);
        }
    }

    #[test]
    fn psnr_is_monotone_in_level(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let img = common::random_image(&mut rng, 8, 8, 1, 8);
        let mut last = f64::INFINITY;
        for level in [0.0, 25.0, 50.0, 75.0, 100.0] {
            let enc = encode(&img, Mapping::Frqi, level).unwrap();
            let recon = decode(&enc.spec, &simulate(&enc.circuit).unwrap()).unwrap();
            let p = image_quality(&img, &recon).unwrap().psnr_db;
            prop_assert!(p <= last + 1e-9, "level {} psnr {} after {}", level, p, last);
            last = p;
        }
    }
}
