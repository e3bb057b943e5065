//! Computational aesthetic measures on rendered images.
//!
//! * Grid-partition symmetry `SYM`: the image is cut into `g` column bands and
//!   `g` row bands; the leftmost band is compared with each other column band
//!   and the top band with each other row band. Two pixels are similar when
//!   their intensities differ by less than `alpha`; a band pair scores the
//!   fraction of similar pixel pairs. `g = 2` gives `SYM_4`, `g = 4` gives
//!   `SYM_16`, `g = 8` the 64-area variant. Diagonal comparisons are not part
//!   of the measure.
//! * Benford measure `BFL`: compares the sorted 9-bin luminosity histogram
//!   with the Benford first-digit distribution.
//!
//! Band pairs are compared mirror-wise: local column `u` of the left band
//! meets local column `w - 1 - u` of the other band (and likewise for rows),
//! so an image that is mirror-symmetric about its vertical and horizontal
//! center lines scores exactly 1 at `g = 2`.

use crate::error::{Error, Result};
use crate::raster::Image;

/// Per-pixel scalar values in `[0, 1]`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    width: usize,
    height: usize,
    values: Vec<f64>,
}

impl ScalarField {
    pub fn new(width: usize, height: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != width * height {
            return Err(Error::domain(format!(
                "{} values do not fill a {width}x{height} field",
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::domain(format!("field value {v} outside [0, 1]")));
        }
        Ok(ScalarField {
            width,
            height,
            values,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.values[y * self.width + x]
    }

    fn from_image(img: &Image, f: impl Fn(f64, f64, f64) -> f64) -> Self {
        ScalarField {
            width: img.width(),
            height: img.height(),
            values: img
                .pixels()
                .iter()
                .map(|c| f(c.r, c.g, c.b).clamp(0.0, 1.0))
                .collect(),
        }
    }
}

/// Mean of the three channels.
pub fn intensity(img: &Image) -> ScalarField {
    ScalarField::from_image(img, |r, g, b| (r + g + b) / 3.0)
}

pub const LUMA_WEIGHTS: [f64; 3] = [0.2126, 0.7152, 0.0722];

/// Weighted channel sum with [`LUMA_WEIGHTS`].
pub fn luminosity(img: &Image) -> ScalarField {
    let [wr, wg, wb] = LUMA_WEIGHTS;
    ScalarField::from_image(img, |r, g, b| wr * r + wg * g + wb * b)
}

/// A rectangle of the field, optionally read back to front along either axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Region {
    pub x: usize,
    pub y: usize,
    pub width: usize,
    pub height: usize,
    pub flip_x: bool,
    pub flip_y: bool,
}

impl Region {
    pub fn new(x: usize, y: usize, width: usize, height: usize) -> Self {
        Region {
            x,
            y,
            width,
            height,
            flip_x: false,
            flip_y: false,
        }
    }

    pub fn flipped_x(self) -> Self {
        Region {
            flip_x: !self.flip_x,
            ..self
        }
    }

    pub fn flipped_y(self) -> Self {
        Region {
            flip_y: !self.flip_y,
            ..self
        }
    }

    /// Field coordinates of local pixel `(u, v)`.
    #[inline]
    fn at(&self, u: usize, v: usize) -> (usize, usize) {
        let u = if self.flip_x { self.width - 1 - u } else { u };
        let v = if self.flip_y { self.height - 1 - v } else { v };
        (self.x + u, self.y + v)
    }
}

/// Fraction of corresponding pixel pairs of `a` and `b` whose values differ by
/// less than `alpha`.
pub fn area_similarity(f: &ScalarField, a: Region, b: Region, alpha: f64) -> Result<f64> {
    if (a.width, a.height) != (b.width, b.height) {
        return Err(Error::domain(format!(
            "regions {}x{} and {}x{} are not congruent",
            a.width, a.height, b.width, b.height
        )));
    }
    if a.width == 0 || a.height == 0 {
        return Err(Error::domain("empty region"));
    }
    for r in [a, b] {
        if r.x + r.width > f.width || r.y + r.height > f.height {
            return Err(Error::domain("region exceeds the field"));
        }
    }
    if alpha.is_nan() || alpha <= 0.0 {
        return Err(Error::domain(format!(
            "threshold alpha {alpha} must be > 0"
        )));
    }
    Ok(similar_pairs(f, a, b, alpha) as f64 / (a.width * a.height) as f64)
}

fn similar_pairs(f: &ScalarField, a: Region, b: Region, alpha: f64) -> usize {
    let mut count = 0;
    for v in 0..a.height {
        for u in 0..a.width {
            let (ax, ay) = a.at(u, v);
            let (bx, by) = b.at(u, v);
            if (f.get(ax, ay) - f.get(bx, by)).abs() < alpha {
                count += 1;
            }
        }
    }
    count
}

/// Per-axis subdivision: 2 → 4 areas, 4 → 16 areas, 8 → 64 areas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridPartition(u32);

impl GridPartition {
    pub const FOUR: GridPartition = GridPartition(2);
    pub const SIXTEEN: GridPartition = GridPartition(4);
    pub const SIXTY_FOUR: GridPartition = GridPartition(8);

    pub fn new(g: u32) -> Result<Self> {
        match g {
            2 | 4 | 8 => Ok(GridPartition(g)),
            _ => Err(Error::domain(format!(
                "grid subdivision must be 2, 4 or 8, got {g}"
            ))),
        }
    }

    pub fn g(self) -> u32 {
        self.0
    }

    pub fn areas(self) -> u32 {
        self.0 * self.0
    }

    /// `SYM4`, `SYM16`, `SYM64`.
    pub fn label(self) -> String {
        format!("SYM{}", self.areas())
    }
}

/// Horizontal and vertical band terms of the symmetry measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymTerms {
    pub horizontal: f64,
    pub vertical: f64,
}

impl SymTerms {
    pub fn combined(&self) -> f64 {
        (self.horizontal + self.vertical) / 2.0
    }
}

pub fn sym_terms(f: &ScalarField, part: GridPartition, alpha: f64) -> Result<SymTerms> {
    let g = part.g() as usize;
    if !f.width.is_multiple_of(g) || !f.height.is_multiple_of(g) {
        return Err(Error::domain(format!(
            "{}x{} field is not divisible into {g} bands",
            f.width, f.height
        )));
    }
    let (bw, bh) = (f.width / g, f.height / g);
    let column = |k: usize| Region::new(k * bw, 0, bw, f.height);
    let row = |k: usize| Region::new(0, k * bh, f.width, bh);

    let mut horizontal = 0.0;
    let mut vertical = 0.0;
    for k in 1..g {
        horizontal += area_similarity(f, column(0), column(k).flipped_x(), alpha)?;
        vertical += area_similarity(f, row(0), row(k).flipped_y(), alpha)?;
    }
    let pairs = (g - 1) as f64;
    Ok(SymTerms {
        horizontal: horizontal / pairs,
        vertical: vertical / pairs,
    })
}

/// Grid-partition symmetry measure in `[0, 1]`.
pub fn sym(f: &ScalarField, part: GridPartition, alpha: f64) -> Result<f64> {
    Ok(sym_terms(f, part, alpha)?.combined())
}

/// Benford first-digit probabilities for digits 1..=9.
pub const BENFORD: [f64; 9] = [
    0.301, 0.176, 0.125, 0.097, 0.079, 0.067, 0.058, 0.051, 0.046,
];

/// Largest possible total deviation, reached by a one-bin histogram.
pub const BENFORD_D_MAX: f64 = 1.398;

/// Histogram bin of a luminosity value: 9 equal-width bins on `[0, 1]`, the
/// last one closed on the right.
#[inline]
pub fn benford_bin(l: f64) -> usize {
    ((l * 9.0) as usize).min(8)
}

/// Normalized 9-bin luminosity histogram, sorted in descending order.
pub fn sorted_luminosity_histogram(lum: &ScalarField) -> [f64; 9] {
    let mut counts = [0usize; 9];
    for &l in lum.values() {
        counts[benford_bin(l)] += 1;
    }
    let total = lum.values().len() as f64;
    let mut hist = counts.map(|c| c as f64 / total);
    hist.sort_by(|a, b| b.total_cmp(a));
    hist
}

/// `1 - d_total / d_max` for an already sorted, normalized histogram.
///
/// `d_total` sums absolute bin differences. Without the absolute value the sum
/// of two normalized histograms' differences is identically zero, and `d_max =
/// 1.398` is exactly the absolute deviation of the one-bin histogram.
pub fn bfl_from_histogram(hist: &[f64; 9]) -> f64 {
    let d_total: f64 = hist.iter().zip(&BENFORD).map(|(h, b)| (h - b).abs()).sum();
    (1.0 - d_total / BENFORD_D_MAX).clamp(0.0, 1.0)
}

/// Benford-law naturalness measure in `[0, 1]`.
pub fn bfl(img: &Image) -> f64 {
    bfl_from_histogram(&sorted_luminosity_histogram(&luminosity(img)))
}

/// Measures of one image.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureReport {
    pub sym: Vec<(GridPartition, f64)>,
    pub bfl: Option<f64>,
}

pub const DEFAULT_ALPHA: f64 = 0.05;

pub fn evaluate(
    img: &Image,
    grids: &[GridPartition],
    alpha: f64,
    with_bfl: bool,
) -> Result<MeasureReport> {
    let sym = if grids.is_empty() {
        Vec::new()
    } else {
        let f = intensity(img);
        grids
            .iter()
            .map(|&part| Ok((part, sym(&f, part, alpha)?)))
            .collect::<Result<_>>()?
    };
    Ok(MeasureReport {
        sym,
        bfl: with_bfl.then(|| bfl(img)),
    })
}

impl MeasureReport {
    /// Header matching [`MeasureReport::csv_row`] for the given request.
    pub fn csv_header(grids: &[GridPartition], with_bfl: bool) -> String {
        let mut cols = vec!["image".to_string(), "g".to_string()];
        cols.extend(grids.iter().map(|p| p.label()));
        if with_bfl {
            cols.push("BFL".into());
        }
        cols.join(",")
    }

    /// `id, g-list, SYM per g, BFL`; the g-list is `;`-separated.
    pub fn csv_row(&self, id: &str) -> String {
        let gs: Vec<String> = self.sym.iter().map(|(p, _)| p.g().to_string()).collect();
        let mut cols = vec![id.to_string(), gs.join(";")];
        cols.extend(self.sym.iter().map(|(_, v)| v.to_string()));
        if let Some(b) = self.bfl {
            cols.push(b.to_string());
        }
        cols.join(",")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::Rgb;
    use crate::rng;
    use proptest::prelude::*;
    use rand::Rng;

    fn solid(c: Rgb) -> Image {
        Image::new(1, 1, c).unwrap()
    }

    fn field(w: usize, h: usize, f: impl Fn(usize, usize) -> f64) -> ScalarField {
        ScalarField::new(w, h, (0..w * h).map(|i| f(i % w, i / w)).collect()).unwrap()
    }

    #[test]
    fn intensity_examples() {
        assert_eq!(intensity(&solid(Rgb::WHITE)).values(), &[1.0]);
        assert_eq!(
            intensity(&solid(Rgb::new(1.0, 0.0, 0.0))).values(),
            &[1.0 / 3.0]
        );
        let v = intensity(&solid(Rgb::new(0.3, 0.6, 0.9))).values()[0];
        assert!((v - 0.6).abs() < 1e-15);
    }

    #[test]
    fn luminosity_examples() {
        assert!((luminosity(&solid(Rgb::WHITE)).values()[0] - 1.0).abs() < 1e-12);
        assert_eq!(
            luminosity(&solid(Rgb::new(0.0, 1.0, 0.0))).values(),
            &[0.7152]
        );
        assert_eq!(
            luminosity(&solid(Rgb::new(0.0, 0.0, 1.0))).values(),
            &[0.0722]
        );
    }

    #[test]
    fn area_similarity_cases() {
        let f = field(4, 2, |x, _| if x < 2 { 0.0 } else { 1.0 });
        let left = Region::new(0, 0, 2, 2);
        let right = Region::new(2, 0, 2, 2);
        assert_eq!(area_similarity(&f, left, left, 0.05).unwrap(), 1.0);
        assert_eq!(area_similarity(&f, left, right, 0.05).unwrap(), 0.0);

        // 3 of 6 pairs within threshold
        let g = field(6, 2, |x, y| match (x, y) {
            (3, 0) => 0.01,
            (4, 0) => 0.5,
            (5, 0) => 0.04,
            (3, 1) => 0.3,
            (4, 1) => 0.0,
            (5, 1) => 0.06,
            _ => 0.0,
        });
        let a = Region::new(0, 0, 3, 2);
        let b = Region::new(3, 0, 3, 2);
        assert_eq!(area_similarity(&g, a, b, 0.05).unwrap(), 0.5);

        assert!(area_similarity(&f, left, Region::new(2, 0, 2, 1), 0.05).is_err());
        assert!(area_similarity(&f, left, right, 0.0).is_err());
        assert!(area_similarity(&f, left, Region::new(3, 0, 2, 2), 0.05).is_err());
    }

    #[test]
    fn threshold_is_strict() {
        let f = field(2, 1, |x, _| if x == 0 { 0.25 } else { 0.5 });
        let (a, b) = (Region::new(0, 0, 1, 1), Region::new(1, 0, 1, 1));
        assert_eq!(area_similarity(&f, a, b, 0.25).unwrap(), 0.0);
        assert_eq!(area_similarity(&f, a, b, 0.2500001).unwrap(), 1.0);
    }

    #[test]
    fn uniform_field_scores_one() {
        let f = field(16, 16, |_, _| 0.37);
        for g in [2, 4, 8] {
            assert_eq!(sym(&f, GridPartition::new(g).unwrap(), 0.05).unwrap(), 1.0);
        }
    }

    #[test]
    fn mirror_symmetric_field_scores_one_at_g2() {
        let f = field(12, 10, |x, y| {
            let (mx, my) = (x.min(11 - x), y.min(9 - y));
            ((mx * 7 + my * 3) % 10) as f64 / 10.0
        });
        assert_eq!(sym(&f, GridPartition::FOUR, 0.05).unwrap(), 1.0);
    }

    #[test]
    fn half_black_half_white() {
        let f = field(256, 256, |x, _| if x < 128 { 0.0 } else { 1.0 });
        let t = sym_terms(&f, GridPartition::FOUR, 0.05).unwrap();
        assert_eq!(t.horizontal, 0.0);
        assert_eq!(t.vertical, 1.0);
        assert_eq!(t.combined(), 0.5);
    }

    #[test]
    fn indivisible_dimensions() {
        let f = field(10, 8, |_, _| 0.0);
        assert!(sym(&f, GridPartition::SIXTEEN, 0.05).is_err());
        assert!(sym(&f, GridPartition::FOUR, 0.05).is_ok());
        assert!(GridPartition::new(3).is_err());
    }

    #[test]
    fn benford_constants() {
        assert_eq!(BENFORD.iter().sum::<f64>(), 1.0);
        let mut one_bin = [0.0; 9];
        one_bin[0] = 1.0;
        let d: f64 = one_bin
            .iter()
            .zip(&BENFORD)
            .map(|(h, b)| (h - b).abs())
            .sum();
        assert!((d - BENFORD_D_MAX).abs() < 1e-12);
        assert!(bfl_from_histogram(&one_bin).abs() < 1e-12);
        assert!(bfl(&Image::new(8, 8, Rgb::new(0.4, 0.4, 0.4)).unwrap()).abs() < 1e-12);
        assert_eq!(bfl_from_histogram(&BENFORD), 1.0);
    }

    #[test]
    fn bins() {
        assert_eq!(benford_bin(0.0), 0);
        assert_eq!(benford_bin(1.0 / 9.0 - 1e-12), 0);
        assert_eq!(benford_bin(0.5), 4);
        assert_eq!(benford_bin(1.0), 8);
    }

    #[test]
    fn image_with_benford_histogram_scores_one() {
        // 1000 pixels, bin counts proportional to the Benford table.
        let mut pixels = Vec::new();
        for (bin, p) in BENFORD.iter().enumerate() {
            let n = (p * 1000.0).round() as usize;
            let l = (bin as f64 + 0.5) / 9.0;
            pixels.extend(std::iter::repeat_n(Rgb::new(l, l, l), n));
        }
        assert_eq!(pixels.len(), 1000);
        let img = Image::from_pixels(1000, 1, pixels).unwrap();
        assert!((bfl(&img) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn report_csv() {
        let img = Image::new(16, 16, Rgb::WHITE).unwrap();
        let r = evaluate(
            &img,
            &[GridPartition::FOUR, GridPartition::SIXTEEN],
            0.05,
            true,
        )
        .unwrap();
        assert_eq!(
            MeasureReport::csv_header(&[GridPartition::FOUR, GridPartition::SIXTEEN], true),
            "image,g,SYM4,SYM16,BFL"
        );
        assert_eq!(r.csv_row("white"), "white,2;4,1,1,0");
    }

    fn random_image(seed: u64, w: usize, h: usize) -> Image {
        let mut r = rng::seeded(seed);
        let pixels = (0..w * h)
            .map(|_| {
                if r.random_bool(0.3) {
                    Rgb::BLACK
                } else {
                    Rgb::random(&mut r)
                }
            })
            .collect();
        Image::from_pixels(w, h, pixels).unwrap()
    }

    proptest! {
        #[test]
        fn measures_stay_in_unit_interval(seed in any::<u64>()) {
            let img = random_image(seed, 16, 16);
            let f = intensity(&img);
            for g in [2, 4, 8] {
                let s = sym(&f, GridPartition::new(g).unwrap(), 0.05).unwrap();
                prop_assert!((0.0..=1.0).contains(&s));
            }
            let b = bfl(&img);
            prop_assert!((0.0..=1.0).contains(&b));
        }

        #[test]
        fn full_mirror_leaves_sym4_unchanged(seed in any::<u64>()) {
            let img = random_image(seed, 16, 12);
            let flipped = img.mirror_horizontal().mirror_vertical();
            let a = sym(&intensity(&img), GridPartition::FOUR, 0.05).unwrap();
            let b = sym(&intensity(&flipped), GridPartition::FOUR, 0.05).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn bfl_is_position_blind(seed in any::<u64>(), shift in 1usize..255) {
            let img = random_image(seed, 16, 16);
            let mut px = img.pixels().to_vec();
            px.rotate_left(shift);
            px.reverse();
            let shuffled = Image::from_pixels(16, 16, px).unwrap();
            prop_assert_eq!(bfl(&img), bfl(&shuffled));
        }
    }
}
