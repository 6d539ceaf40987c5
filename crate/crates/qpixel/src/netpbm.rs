//! PGM (P2/P5) and PPM (P3/P6) reading and writing.
//!
//! Only maxvals of the form `2^k - 1` are accepted so that the maximum
//! intensity maps onto an integral bit depth. Samples wider than one byte
//! are big-endian, as the format requires.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::NetpbmError;
use crate::image::ImageBuffer;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NetpbmFormat {
    Pgm,
    Ppm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Magic {
    P2,
    P3,
    P5,
    P6,
}

impl Magic {
    fn name(self) -> &'static str {
        match self {
            Magic::P2 => "P2",
            Magic::P3 => "P3",
            Magic::P5 => "P5",
            Magic::P6 => "P6",
        }
    }

    fn channels(self) -> usize {
        match self {
            Magic::P2 | Magic::P5 => 1,
            Magic::P3 | Magic::P6 => 3,
        }
    }

    fn is_ascii(self) -> bool {
        matches!(self, Magic::P2 | Magic::P3)
    }
}

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.data.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.data.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    /// Reads a decimal token; returns `(value, start_offset)`.
    fn number(&mut self, what: &'static str) -> Result<(u64, usize), NetpbmError> {
        self.skip_space_and_comments();
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(&b) = self.data.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(u64::from(b - b'0')))
                .ok_or(NetpbmError::MalformedHeader {
                    offset: start,
                    what: "number overflows",
                })?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(NetpbmError::MalformedHeader {
                offset: start,
                what,
            });
        }
        if let Some(&b) = self.data.get(self.pos) {
            if !b.is_ascii_whitespace() && b != b'#' {
                return Err(NetpbmError::MalformedHeader {
                    offset: self.pos,
                    what: "unexpected character after number",
                });
            }
        }
        Ok((value, start))
    }
}

fn bit_depth_for(maxval: u32) -> Option<u32> {
    let next = maxval.checked_add(1)?;
    (maxval > 0 && maxval <= 65535 && next.is_power_of_two()).then(|| next.trailing_zeros())
}

/// Parses an in-memory PGM/PPM file of either encoding.
pub fn parse_netpbm(data: &[u8]) -> Result<ImageBuffer, NetpbmError> {
    let magic = match data.get(..2) {
        Some(b"P2") => Magic::P2,
        Some(b"P3") => Magic::P3,
        Some(b"P5") => Magic::P5,
        Some(b"P6") => Magic::P6,
        _ => return Err(NetpbmError::BadMagic { offset: 0 }),
    };
    let mut cur = Cursor { data, pos: 2 };
    if !data
        .get(2)
        .is_some_and(|b| b.is_ascii_whitespace() || *b == b'#')
    {
        return Err(NetpbmError::MalformedHeader {
            offset: 2,
            what: "missing whitespace after magic number",
        });
    }
    let (width, woff) = cur.number("missing width")?;
    let (height, hoff) = cur.number("missing height")?;
    let (maxval, moff) = cur.number("missing maxval")?;
    if width == 0 {
        return Err(NetpbmError::MalformedHeader {
            offset: woff,
            what: "zero width",
        });
    }
    if height == 0 {
        return Err(NetpbmError::MalformedHeader {
            offset: hoff,
            what: "zero height",
        });
    }
    let maxval = u32::try_from(maxval).unwrap_or(u32::MAX);
    let bit_depth = bit_depth_for(maxval).ok_or(NetpbmError::UnsupportedMaxval {
        offset: moff,
        maxval,
    })?;
    let channels = magic.channels();
    let expected = usize::try_from(width)
        .ok()
        .and_then(|w| w.checked_mul(usize::try_from(height).ok()?))
        .and_then(|p| p.checked_mul(channels))
        .ok_or(NetpbmError::MalformedHeader {
            offset: woff,
            what: "image dimensions overflow",
        })?;

    let mut samples = Vec::with_capacity(expected.min(1 << 26));
    if magic.is_ascii() {
        for _ in 0..expected {
            cur.skip_space_and_comments();
            if cur.pos >= data.len() {
                return Err(NetpbmError::Truncated {
                    offset: cur.pos,
                    expected,
                    found: samples.len(),
                });
            }
            let (value, offset) = cur.number("expected a decimal sample")?;
            if value > u64::from(maxval) {
                return Err(NetpbmError::SampleOutOfRange {
                    offset,
                    value: u32::try_from(value).unwrap_or(u32::MAX),
                    maxval,
                });
            }
            samples.push(value as u32);
        }
    } else {
        // exactly one whitespace byte separates maxval from the raster
        let mut pos = cur.pos;
        match data.get(pos) {
            Some(b) if b.is_ascii_whitespace() => pos += 1,
            _ => {
                return Err(NetpbmError::MalformedHeader {
                    offset: pos,
                    what: "missing whitespace before raster",
                })
            }
        }
        let width_bytes = if maxval > 255 { 2 } else { 1 };
        for _ in 0..expected {
            let offset = pos;
            let value = match data.get(pos..pos + width_bytes) {
                Some([b]) => u32::from(*b),
                Some([hi, lo]) => (u32::from(*hi) << 8) | u32::from(*lo),
                _ => {
                    return Err(NetpbmError::Truncated {
                        offset: pos,
                        expected,
                        found: samples.len(),
                    })
                }
            };
            if value > maxval {
                return Err(NetpbmError::SampleOutOfRange {
                    offset,
                    value,
                    maxval,
                });
            }
            samples.push(value);
            pos += width_bytes;
        }
    }

    Ok(ImageBuffer::new(
        width as usize,
        height as usize,
        channels,
        bit_depth,
        samples,
    )?)
}

/// Loads a file, checking that its magic number matches the requested format.
pub fn load_image(path: &Path, format: NetpbmFormat) -> Result<ImageBuffer, NetpbmError> {
    let data = fs::read(path)?;
    let img = parse_netpbm(&data)?;
    let found = if img.channels() == 1 {
        NetpbmFormat::Pgm
    } else {
        NetpbmFormat::Ppm
    };
    if found != format {
        let name = |f| match f {
            NetpbmFormat::Pgm => "PGM",
            NetpbmFormat::Ppm => "PPM",
        };
        return Err(NetpbmError::WrongFormat {
            expected: name(format),
            found: name(found),
        });
    }
    Ok(img)
}

/// Loads a PGM or PPM file, detecting the format from its magic number.
pub fn read_image(path: &Path) -> Result<ImageBuffer, NetpbmError> {
    parse_netpbm(&fs::read(path)?)
}

/// Encodes as binary P5 (grayscale) or P6 (RGB).
pub fn encode_netpbm(img: &ImageBuffer) -> Result<Vec<u8>, NetpbmError> {
    let magic = match img.channels() {
        1 => Magic::P5,
        3 => Magic::P6,
        _ => return Err(NetpbmError::Unwritable("only 1 or 3 channels")),
    };
    let maxval = img.max_value();
    let mut out = format!(
        "{}\n{} {}\n{}\n",
        magic.name(),
        img.width(),
        img.height(),
        maxval
    )
    .into_bytes();
    if maxval > 255 {
        for &s in img.samples() {
            out.extend_from_slice(&(s as u16).to_be_bytes());
        }
    } else {
        out.extend(img.samples().iter().map(|&s| s as u8));
    }
    Ok(out)
}

pub fn write_image(path: &Path, img: &ImageBuffer) -> Result<(), NetpbmError> {
    let bytes = encode_netpbm(img)?;
    let mut f = fs::File::create(path)?;
    f.write_all(&bytes)?;
    Ok(())
}
