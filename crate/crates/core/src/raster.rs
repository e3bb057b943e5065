//! Hard-edged disc rendering and binary PPM (`P6`) I/O.

use std::fs;
use std::path::Path;

use crate::color::Rgb;
use crate::error::{Error, Result};
use crate::pattern::Pattern;

/// Row-major RGB raster, top row first.
#[derive(Debug, Clone, PartialEq)]
pub struct Image {
    width: usize,
    height: usize,
    pixels: Vec<Rgb>,
}

impl Image {
    pub fn new(width: usize, height: usize, fill: Rgb) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::domain(format!(
                "image size {width}x{height} must be positive"
            )));
        }
        if !fill.is_valid() {
            return Err(Error::domain(format!("fill color {fill} outside [0, 1]")));
        }
        Ok(Image {
            width,
            height,
            pixels: vec![fill; width * height],
        })
    }

    pub fn from_pixels(width: usize, height: usize, pixels: Vec<Rgb>) -> Result<Self> {
        if width == 0 || height == 0 || pixels.len() != width * height {
            return Err(Error::domain(format!(
                "{} pixels do not fill a {width}x{height} image",
                pixels.len()
            )));
        }
        if let Some(bad) = pixels.iter().find(|c| !c.is_valid()) {
            return Err(Error::domain(format!("pixel color {bad} outside [0, 1]")));
        }
        Ok(Image {
            width,
            height,
            pixels,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[Rgb] {
        &self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> Rgb {
        self.pixels[y * self.width + x]
    }

    /// Panics on out-of-range channels; the raster invariant is enforced here.
    pub fn set(&mut self, x: usize, y: usize, c: Rgb) {
        assert!(c.is_valid(), "pixel color {c} outside [0, 1]");
        self.pixels[y * self.width + x] = c;
    }

    pub fn mirror_horizontal(&self) -> Image {
        let mut out = self.clone();
        for y in 0..self.height {
            for x in 0..self.width {
                out.pixels[y * self.width + x] = self.get(self.width - 1 - x, y);
            }
        }
        out
    }

    pub fn mirror_vertical(&self) -> Image {
        let mut out = self.clone();
        for y in 0..self.height {
            for x in 0..self.width {
                out.pixels[y * self.width + x] = self.get(x, self.height - 1 - y);
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CanvasConfig {
    pub width: usize,
    pub height: usize,
    pub background: Rgb,
    /// Disc radius in pixels.
    pub pellet_radius: f64,
    /// Canvas units spanned by the image width.
    pub world_extent: f64,
}

impl Default for CanvasConfig {
    fn default() -> Self {
        CanvasConfig {
            width: 256,
            height: 256,
            background: Rgb::BLACK,
            pellet_radius: 2.0,
            world_extent: 256.0,
        }
    }
}

impl CanvasConfig {
    pub fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 {
            return Err(Error::config("canvas size must be positive"));
        }
        if !(self.pellet_radius > 0.0 && self.pellet_radius.is_finite()) {
            return Err(Error::config(format!(
                "pellet radius {} must be > 0",
                self.pellet_radius
            )));
        }
        if !(self.world_extent > 0.0 && self.world_extent.is_finite()) {
            return Err(Error::config("world extent must be > 0"));
        }
        if !self.background.is_valid() {
            return Err(Error::config("background color outside [0, 1]"));
        }
        Ok(())
    }
}

/// Render visible pellets as filled discs over the background, in placement
/// order. The world origin maps to the image center and world `y` points up.
///
/// A pixel is covered when its center lies within `pellet_radius` of the disc
/// center. Offsets are measured from the image center on both sides, so a disc
/// at `(-a, b)` covers exactly the mirror of the pixels covered at `(a, b)`
/// whenever the width is even.
pub fn render(p: &Pattern, cfg: &CanvasConfig) -> Result<Image> {
    cfg.validate()?;
    let mut img = Image::new(cfg.width, cfg.height, cfg.background)?;
    let scale = cfg.width as f64 / cfg.world_extent;
    let (half_w, half_h) = (cfg.width as f64 / 2.0, cfg.height as f64 / 2.0);
    let r = cfg.pellet_radius;
    let r2 = r * r;

    for (_, pel) in p.pellets() {
        if !pel.visible || !pel.position.is_finite() {
            continue;
        }
        // disc center relative to the image center, pixel units, y down
        let cx = pel.position.x * scale;
        let cy = -(pel.position.y * scale);
        let x_lo = (half_w + cx - r).floor().max(0.0);
        let x_hi = (half_w + cx + r).ceil().min(cfg.width as f64);
        let y_lo = (half_h + cy - r).floor().max(0.0);
        let y_hi = (half_h + cy + r).ceil().min(cfg.height as f64);
        if x_lo >= x_hi || y_lo >= y_hi {
            continue;
        }
        for row in y_lo as usize..y_hi as usize {
            let dy = (row as f64 + 0.5 - half_h) - cy;
            for col in x_lo as usize..x_hi as usize {
                let dx = (col as f64 + 0.5 - half_w) - cx;
                if dx * dx + dy * dy <= r2 {
                    img.pixels[row * cfg.width + col] = pel.color;
                }
            }
        }
    }
    Ok(img)
}

/// Encode as binary PPM: `P6`, width, height, `255`, then RGB bytes.
pub fn encode_ppm(img: &Image) -> Vec<u8> {
    let mut out = format!("P6\n{} {}\n255\n", img.width, img.height).into_bytes();
    out.reserve(img.pixels.len() * 3);
    for c in &img.pixels {
        let (r, g, b) = c.to_u8();
        out.extend_from_slice(&[r, g, b]);
    }
    out
}

/// Decode a binary PPM. Header comments (`#` to end of line) are accepted;
/// maxval must be in `1..=255`.
pub fn decode_ppm(data: &[u8]) -> Result<Image> {
    let bad = |m: &str| Error::MalformedImage(m.to_string());
    let mut pos = 0usize;

    let mut token = |data: &[u8]| -> Result<String> {
        loop {
            match data.get(pos) {
                Some(b'#') => {
                    while data.get(pos).is_some_and(|&c| c != b'\n') {
                        pos += 1;
                    }
                }
                Some(c) if c.is_ascii_whitespace() => pos += 1,
                Some(_) => break,
                None => return Err(bad("truncated header")),
            }
        }
        let start = pos;
        while data.get(pos).is_some_and(|c| !c.is_ascii_whitespace()) {
            pos += 1;
        }
        Ok(String::from_utf8_lossy(&data[start..pos]).into_owned())
    };

    if token(data)? != "P6" {
        return Err(bad("missing P6 magic"));
    }
    let mut dim = |what: &str| -> Result<usize> {
        token(data)?
            .parse::<usize>()
            .map_err(|_| Error::MalformedImage(format!("bad {what}")))
    };
    let width = dim("width")?;
    let height = dim("height")?;
    let maxval = dim("maxval")?;
    if width == 0 || height == 0 {
        return Err(bad("zero image dimension"));
    }
    if !(1..=255).contains(&maxval) {
        return Err(bad("only 8-bit maxval (1..=255) is supported"));
    }
    // exactly one whitespace byte separates the header from the raster
    if !data.get(pos).is_some_and(|c| c.is_ascii_whitespace()) {
        return Err(bad("truncated header"));
    }
    pos += 1;
    let need = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(3))
        .ok_or_else(|| bad("image dimensions overflow"))?;
    let raster = &data[pos..];
    if raster.len() < need {
        return Err(bad(&format!(
            "truncated raster: {} of {need} bytes",
            raster.len()
        )));
    }
    let m = maxval as f64;
    let pixels = raster[..need]
        .chunks_exact(3)
        .map(|px| {
            let ch = |v: u8| (v as f64 / m).min(1.0);
            Rgb::new(ch(px[0]), ch(px[1]), ch(px[2]))
        })
        .collect();
    Image::from_pixels(width, height, pixels)
}

pub fn write_image(img: &Image, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, encode_ppm(img)).map_err(|e| Error::io(path, e))
}

pub fn read_image(path: impl AsRef<Path>) -> Result<Image> {
    let path = path.as_ref();
    let data = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_ppm(&data)
}
