//! Image → circuit → state → image, one step per function.

use crate::circuit::{mapping_circuit_with, Circuit, Synthesis};
use crate::compress::CompressionReport;
use crate::encoding::{mapping_planes, vectorize, EncodingSpec, Mapping};
use crate::error::Error;
use crate::image::ImageBuffer;
use crate::sim::{reconstruct, reconstruct_nearest, Statevector};

#[derive(Debug, Clone)]
pub struct Encoded {
    pub spec: EncodingSpec,
    pub circuit: Circuit,
    /// One report per color plane.
    pub reports: Vec<CompressionReport>,
}

/// Builds the compressed circuit for `img` under `mapping` at `level` percent.
pub fn encode(img: &ImageBuffer, mapping: Mapping, level: f64) -> Result<Encoded, Error> {
    encode_with(img, mapping, level, Synthesis::Compressed { level })
}

pub fn encode_with(
    img: &ImageBuffer,
    mapping: Mapping,
    level: f64,
    synthesis: Synthesis,
) -> Result<Encoded, Error> {
    let spec = EncodingSpec::for_image(img, mapping, level)?;
    let vec = vectorize(img);
    let planes = mapping_planes(&spec, &vec.channels)?;
    let (circuit, reports) = mapping_circuit_with(&spec, planes, synthesis)?;
    Ok(Encoded {
        spec,
        circuit,
        reports,
    })
}

/// Strict readout for uncompressed encodings, per-qubit nearest readout otherwise.
pub fn decode(spec: &EncodingSpec, state: &Statevector) -> Result<ImageBuffer, Error> {
    let img = if spec.compression_percent == 0.0 {
        reconstruct(spec, state)?
    } else {
        reconstruct_nearest(spec, state)?
    };
    Ok(img)
}
