use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Statevector;
use crate::error::SimError;
use crate::image::ImageBuffer;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateComparison {
    pub max_amp_error: f64,
    /// `|⟨a|b⟩|²`, clamped to `[0, 1]`.
    pub fidelity: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImageQuality {
    pub mse: f64,
    /// Infinite when the images are identical.
    pub psnr_db: f64,
}

impl ImageQuality {
    pub fn is_exact(&self) -> bool {
        self.mse == 0.0
    }
}

/// State and image quality together. Infinite PSNR serializes as `null`
/// alongside `"exact": true`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QualityMetrics {
    pub max_amp_error: f64,
    pub fidelity: f64,
    pub mse: f64,
    #[serde(
        serialize_with = "finite_or_null",
        deserialize_with = "null_as_infinity"
    )]
    pub psnr_db: f64,
    pub exact: bool,
}

impl QualityMetrics {
    pub fn new(state: StateComparison, image: ImageQuality) -> Self {
        Self {
            max_amp_error: state.max_amp_error,
            fidelity: state.fidelity,
            mse: image.mse,
            psnr_db: image.psnr_db,
            exact: image.is_exact(),
        }
    }
}

fn finite_or_null<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else {
        s.serialize_none()
    }
}

fn null_as_infinity<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
}

pub fn compare(a: &Statevector, b: &Statevector) -> Result<StateComparison, SimError> {
    if a.len() != b.len() {
        return Err(SimError::LengthMismatch(a.len(), b.len()));
    }
    let mut max_err = 0.0f64;
    let mut inner = num_complex::Complex64::new(0.0, 0.0);
    for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
        max_err = max_err.max((x - y).norm());
        inner += x.conj() * y;
    }
    Ok(StateComparison {
        max_amp_error: max_err,
        fidelity: inner.norm_sqr().clamp(0.0, 1.0),
    })
}

/// MSE and PSNR over all samples, with the peak taken from the bit depth.
pub fn image_quality(
    original: &ImageBuffer,
    recon: &ImageBuffer,
) -> Result<ImageQuality, SimError> {
    let shape = |i: &ImageBuffer| (i.width(), i.height(), i.channels(), i.bit_depth());
    if shape(original) != shape(recon) {
        return Err(SimError::ShapeMismatch);
    }
    let sum: f64 = original
        .samples()
        .iter()
        .zip(recon.samples())
        .map(|(&a, &b)| {
            let d = f64::from(a) - f64::from(b);
            d * d
        })
        .sum();
    let mse = sum / original.samples().len() as f64;
    let peak = f64::from(original.max_value());
    let psnr_db = if mse == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (peak * peak / mse).log10()
    };
    Ok(ImageQuality { mse, psnr_db })
}
