//! Binary 8-bit grayscale PGM (P5, maxval 255).

use crate::error::FormatError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageBuffer {
    width: u32,
    height: u32,
    pixels: Vec<u8>,
}

impl ImageBuffer {
    pub fn new(width: u32, height: u32, pixels: Vec<u8>) -> Result<Self, FormatError> {
        if width == 0 || height == 0 {
            return Err(FormatError::Pgm(format!(
                "dimensions must be positive, got {width}x{height}"
            )));
        }
        if pixels.len() as u64 != u64::from(width) * u64::from(height) {
            return Err(FormatError::Pgm(format!(
                "{} pixels for a {width}x{height} image",
                pixels.len()
            )));
        }
        Ok(ImageBuffer {
            width,
            height,
            pixels,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// Row-major pixel bytes.
    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }
}

/// Header tokenizer that skips whitespace and `#` comments.
struct Header<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl Header<'_> {
    fn skip_space(&mut self) {
        while self.pos < self.buf.len() {
            match self.buf[self.pos] {
                b'#' => {
                    while self.pos < self.buf.len() && self.buf[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u32, FormatError> {
        self.skip_space();
        let start = self.pos;
        while self.pos < self.buf.len() && self.buf[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(FormatError::Pgm(format!("missing {what}")));
        }
        std::str::from_utf8(&self.buf[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| FormatError::Pgm(format!("{what} out of range")))
    }
}

pub fn decode(buf: &[u8]) -> Result<ImageBuffer, FormatError> {
    if buf.len() < 2 || &buf[..2] != b"P5" {
        return Err(FormatError::Pgm(
            "not a binary PGM (expected P5 magic)".into(),
        ));
    }
    let mut h = Header { buf, pos: 2 };
    let width = h.number("width")?;
    let height = h.number("height")?;
    let maxval = h.number("maxval")?;
    if maxval != 255 {
        return Err(FormatError::Pgm(format!(
            "maxval {maxval} unsupported, only 8-bit (255) images"
        )));
    }
    // exactly one whitespace byte separates the header from the raster
    match buf.get(h.pos) {
        Some(c) if c.is_ascii_whitespace() => h.pos += 1,
        _ => return Err(FormatError::Pgm("missing whitespace after maxval".into())),
    }
    let need = u64::from(width) * u64::from(height);
    let raster = &buf[h.pos..];
    if (raster.len() as u64) < need {
        return Err(FormatError::Pgm(format!(
            "raster has {} bytes, expected {need}",
            raster.len()
        )));
    }
    if raster.len() as u64 > need {
        return Err(FormatError::Pgm(format!(
            "{} bytes after the raster",
            raster.len() as u64 - need
        )));
    }
    ImageBuffer::new(width, height, raster.to_vec())
}

pub fn encode(img: &ImageBuffer) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width, img.height).into_bytes();
    out.extend_from_slice(&img.pixels);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let img = ImageBuffer::new(3, 2, vec![0, 1, 2, 253, 254, 255]).unwrap();
        let bytes = encode(&img);
        assert!(bytes.starts_with(b"P5\n3 2\n255\n"));
        assert_eq!(decode(&bytes).unwrap(), img);
    }

    #[test]
    fn reads_comments_and_odd_spacing() {
        let mut bytes = b"P5 # made by hand\n  2\t1 # size\n255\n".to_vec();
        bytes.extend_from_slice(&[10, 20]);
        let img = decode(&bytes).unwrap();
        assert_eq!((img.width(), img.height()), (2, 1));
        assert_eq!(img.pixels(), &[10, 20]);
    }

    #[test]
    fn raster_may_start_with_whitespace_bytes() {
        let mut bytes = b"P5\n2 1\n255\n".to_vec();
        bytes.extend_from_slice(b"\n ");
        assert_eq!(decode(&bytes).unwrap().pixels(), b"\n ");
    }

    #[test]
    fn rejects_unsupported_files() {
        let cases: [&[u8]; 6] = [
            b"P2\n1 1\n255\n0",
            b"P5\n1 1\n65535\n\0\0",
            b"P5\n2 2\n255\n\0\0\0",
            b"P5\n1 1\n255\n\0\0",
            b"P5\n0 1\n255\n",
            b"P5\nx 1\n255\n\0",
        ];
        for bytes in cases {
            assert!(
                decode(bytes).is_err(),
                "{:?}",
                String::from_utf8_lossy(bytes)
            );
        }
    }

    #[test]
    fn image_buffer_checks_pixel_count() {
        assert!(ImageBuffer::new(2, 2, vec![0; 3]).is_err());
        assert!(ImageBuffer::new(0, 0, vec![]).is_err());
    }
}
