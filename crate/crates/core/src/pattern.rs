//! Stochastic sand-bubbler patterns.
//!
//! A pattern is a list of burrows; each burrow radiates trenches, and each
//! trench carries pellets placed at increasing radial coordinates along the
//! trench ray, perturbed by Gaussian noise:
//!
//! ```text
//! x_ijk = x_i + r_k cos(theta_j) + N(mu, s^2)
//! y_ijk = y_i + r_k sin(theta_j) + N(mu, s^2)
//! ```

use std::f64::consts::PI;
use std::fmt::Write as _;

use rand::Rng;

use crate::color::Rgb;
use crate::error::{Error, Result};
use crate::rng;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn distance(&self, other: &Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Pellet {
    pub position: Point2,
    pub color: Rgb,
    pub visible: bool,
}

impl Pellet {
    pub fn new(position: Point2, color: Rgb) -> Self {
        Pellet {
            position,
            color,
            visible: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trench {
    /// Trench angle in radians.
    pub angle: f64,
    pub pellets: Vec<Pellet>,
    /// Nominal radial coordinate of each pellet, strictly increasing.
    pub radial_coords: Vec<f64>,
}

impl Trench {
    pub fn new(angle: f64, pellets: Vec<Pellet>, radial_coords: Vec<f64>) -> Self {
        Trench {
            angle,
            pellets,
            radial_coords,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Burrow {
    pub center: Point2,
    pub trenches: Vec<Trench>,
    /// For burrows created by an isometry: index of the burrow they image.
    pub image_of: Option<usize>,
}

impl Burrow {
    pub fn new(center: Point2, trenches: Vec<Trench>) -> Self {
        Burrow {
            center,
            trenches,
            image_of: None,
        }
    }

    pub fn pellet_count(&self) -> usize {
        self.trenches.iter().map(|t| t.pellets.len()).sum()
    }
}

/// Address of a pellet inside a [`Pattern`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PelletId {
    pub burrow: usize,
    pub trench: usize,
    pub pellet: usize,
}

/// Which burrows an operation acts on.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Scope {
    #[default]
    All,
    /// Burrows produced by the generator.
    Originals,
    /// Burrows produced by an isometry.
    Images,
    Burrows(Vec<usize>),
}

impl Scope {
    pub fn contains(&self, index: usize, burrow: &Burrow) -> bool {
        match self {
            Scope::All => true,
            Scope::Originals => burrow.image_of.is_none(),
            Scope::Images => burrow.image_of.is_some(),
            Scope::Burrows(list) => list.contains(&index),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Pattern {
    pub burrows: Vec<Burrow>,
}

impl Pattern {
    pub fn new(burrows: Vec<Burrow>) -> Self {
        Pattern { burrows }
    }

    /// Total pellet count `I_Σ`.
    pub fn pellet_count(&self) -> usize {
        self.burrows.iter().map(Burrow::pellet_count).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.burrows.is_empty()
    }

    /// All pellets in placement order: burrows, then trenches, then pellets.
    pub fn pellets(&self) -> impl Iterator<Item = (PelletId, &Pellet)> + '_ {
        self.burrows.iter().enumerate().flat_map(|(bi, b)| {
            b.trenches.iter().enumerate().flat_map(move |(ti, t)| {
                t.pellets.iter().enumerate().map(move |(pi, p)| {
                    (
                        PelletId {
                            burrow: bi,
                            trench: ti,
                            pellet: pi,
                        },
                        p,
                    )
                })
            })
        })
    }

    pub fn burrow_indices(&self, scope: &Scope) -> Vec<usize> {
        self.burrows
            .iter()
            .enumerate()
            .filter(|(i, b)| scope.contains(*i, b))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn pellet_ids(&self, scope: &Scope) -> Vec<PelletId> {
        self.pellets()
            .filter(|(id, _)| scope.contains(id.burrow, &self.burrows[id.burrow]))
            .map(|(id, _)| id)
            .collect()
    }

    pub fn pellet(&self, id: PelletId) -> &Pellet {
        &self.burrows[id.burrow].trenches[id.trench].pellets[id.pellet]
    }

    pub fn pellet_mut(&mut self, id: PelletId) -> &mut Pellet {
        &mut self.burrows[id.burrow].trenches[id.trench].pellets[id.pellet]
    }

    pub fn visible_count(&self) -> usize {
        self.pellets().filter(|(_, p)| p.visible).count()
    }
}

/// Pellet location for burrow center `center`, trench angle `theta`, radial
/// coordinate `r` and additive noise `noise`.
pub fn pellet_position(center: Point2, theta: f64, r: f64, noise: (f64, f64)) -> Point2 {
    Point2::new(
        center.x + r * theta.cos() + noise.0,
        center.y + r * theta.sin() + noise.1,
    )
}

/// Closed integer interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange {
    pub min: usize,
    pub max: usize,
}

impl IntRange {
    pub const fn new(min: usize, max: usize) -> Self {
        IntRange { min, max }
    }

    pub const fn exactly(n: usize) -> Self {
        IntRange { min: n, max: n }
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        rng.random_range(self.min..=self.max)
    }
}

/// Axis-aligned box (canvas units) in which burrow centers are drawn.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CenterBox {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub burrows: IntRange,
    pub trenches_per_burrow: IntRange,
    pub pellets_per_trench: IntRange,
    pub noise_mean: f64,
    pub noise_std: f64,
    pub radial_step: f64,
    /// Width (and height) of the square canvas in canvas units.
    pub canvas_extent: f64,
    /// Angular span of the arc that trench angles are drawn from, in radians.
    /// `2π` gives full-circle burrows.
    pub trench_arc: f64,
    pub centers: CenterBox,
    /// Color assigned to every generated pellet.
    pub pellet_color: Rgb,
    pub seed: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        let extent = 256.0;
        let pellets = IntRange::new(8, 20);
        // longest trench spans ~40% of the canvas
        let radial_step = 0.4 * extent / pellets.max as f64;
        GenConfig {
            burrows: IntRange::new(1, 4),
            trenches_per_burrow: IntRange::new(6, 12),
            pellets_per_trench: pellets,
            noise_mean: 0.0,
            noise_std: 0.3 * radial_step,
            radial_step,
            canvas_extent: extent,
            trench_arc: 1.2 * PI,
            centers: CenterBox {
                x_min: -0.35 * extent,
                x_max: -0.15 * extent,
                y_min: -0.25 * extent,
                y_max: 0.25 * extent,
            },
            pellet_color: Rgb::from_u8(194, 178, 128),
            seed: 0,
        }
    }
}

impl GenConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, r) in [
            ("burrows", self.burrows),
            ("trenches_per_burrow", self.trenches_per_burrow),
            ("pellets_per_trench", self.pellets_per_trench),
        ] {
            if r.min > r.max {
                return Err(Error::config(format!(
                    "{name} range [{}, {}] is empty",
                    r.min, r.max
                )));
            }
        }
        if self.burrows.min == 0 {
            return Err(Error::config("burrows range must start at 1 or more"));
        }
        if self.trenches_per_burrow.min == 0 {
            return Err(Error::config("every burrow needs at least one trench"));
        }
        let finite = [
            self.noise_mean,
            self.noise_std,
            self.radial_step,
            self.canvas_extent,
            self.trench_arc,
            self.centers.x_min,
            self.centers.x_max,
            self.centers.y_min,
            self.centers.y_max,
        ];
        if finite.iter().any(|v| !v.is_finite()) {
            return Err(Error::config("generation parameters must be finite"));
        }
        if self.noise_std < 0.0 {
            return Err(Error::config(format!("noise std {} < 0", self.noise_std)));
        }
        if self.radial_step <= 0.0 {
            return Err(Error::config(format!(
                "radial step {} <= 0",
                self.radial_step
            )));
        }
        if self.canvas_extent <= 0.0 {
            return Err(Error::config("canvas extent must be positive"));
        }
        if !(0.0..=2.0 * PI).contains(&self.trench_arc) {
            return Err(Error::config("trench arc must lie in [0, 2π]"));
        }
        if self.centers.x_min > self.centers.x_max || self.centers.y_min > self.centers.y_max {
            return Err(Error::config("burrow center box is empty"));
        }
        if !self.pellet_color.is_valid() {
            return Err(Error::config("pellet color outside [0, 1]"));
        }
        Ok(())
    }
}

fn uniform_in<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

/// Generate a pattern; a pure function of `cfg`, seed included.
pub fn generate_pattern(cfg: &GenConfig) -> Result<Pattern> {
    cfg.validate()?;
    let mut rng = rng::seeded(cfg.seed);
    let n_burrows = cfg.burrows.sample(&mut rng);
    let mut burrows = Vec::with_capacity(n_burrows);
    for _ in 0..n_burrows {
        let c = &cfg.centers;
        let center = Point2::new(
            uniform_in(&mut rng, c.x_min, c.x_max),
            uniform_in(&mut rng, c.y_min, c.y_max),
        );
        let n_trenches = cfg.trenches_per_burrow.sample(&mut rng);
        let arc_start = uniform_in(&mut rng, 0.0, 2.0 * PI);
        let mut angles: Vec<f64> = (0..n_trenches)
            .map(|_| arc_start + cfg.trench_arc * rng.random::<f64>())
            .collect();
        angles.sort_by(f64::total_cmp);

        let trenches = angles
            .into_iter()
            .map(|theta| {
                let k = cfg.pellets_per_trench.sample(&mut rng);
                let radial: Vec<f64> = (1..=k).map(|i| i as f64 * cfg.radial_step).collect();
                let pellets = radial
                    .iter()
                    .map(|&r| {
                        let nx = rng::normal(&mut rng, cfg.noise_mean, cfg.noise_std);
                        let ny = rng::normal(&mut rng, cfg.noise_mean, cfg.noise_std);
                        Pellet::new(
                            pellet_position(center, theta, r, (nx, ny)),
                            cfg.pellet_color,
                        )
                    })
                    .collect();
                Trench::new(theta, pellets, radial)
            })
            .collect();
        burrows.push(Burrow::new(center, trenches));
    }
    Ok(Pattern::new(burrows))
}

const TEXT_HEADER: &str = "# bubbler pattern v1";

/// Line-oriented text form.
///
/// ```text
/// # bubbler pattern v1
/// burrow <i> <cx> <cy> <image_of|->
/// trench <i> <j> <angle> <r_1> ... <r_K>
/// <i> <j> <k> <x> <y> <r> <g> <b> <visible 0|1>
/// ```
///
/// Floats are written in shortest round-trip form, so `from_text(to_text(p))`
/// reproduces `p` bit for bit.
pub fn to_text(p: &Pattern) -> String {
    let mut out = String::new();
    out.push_str(TEXT_HEADER);
    out.push('\n');
    for (i, b) in p.burrows.iter().enumerate() {
        let image = b
            .image_of
            .map_or_else(|| "-".to_string(), |s| s.to_string());
        let _ = writeln!(out, "burrow {i} {} {} {image}", b.center.x, b.center.y);
        for (j, t) in b.trenches.iter().enumerate() {
            let _ = write!(out, "trench {i} {j} {}", t.angle);
            for r in &t.radial_coords {
                let _ = write!(out, " {r}");
            }
            out.push('\n');
            for (k, pel) in t.pellets.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{i} {j} {k} {} {} {} {} {} {}",
                    pel.position.x,
                    pel.position.y,
                    pel.color.r,
                    pel.color.g,
                    pel.color.b,
                    u8::from(pel.visible)
                );
            }
        }
    }
    out
}

/// Parse the text form. Pellet lines may appear without `burrow`/`trench`
/// lines; missing structure is filled in with a zero center and angle and
/// radial coordinates `1, 2, ...`.
pub fn from_text(text: &str) -> Result<Pattern> {
    let err = |line: usize, msg: String| Error::Parse {
        kind: "pattern",
        line,
        msg,
    };
    let mut p = Pattern::default();
    let mut explicit_radial: Vec<Vec<bool>> = Vec::new();

    fn ensure(p: &mut Pattern, flags: &mut Vec<Vec<bool>>, i: usize, j: Option<usize>) {
        while p.burrows.len() <= i {
            p.burrows.push(Burrow::new(Point2::default(), Vec::new()));
            flags.push(Vec::new());
        }
        if let Some(j) = j {
            let b = &mut p.burrows[i];
            while b.trenches.len() <= j {
                b.trenches.push(Trench::new(0.0, Vec::new(), Vec::new()));
                flags[i].push(false);
            }
        }
    }

    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| -> Result<f64> {
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| err(line_no, format!("`{s}` is not a finite number")))
        };
        let idx = |s: &str| -> Result<usize> {
            s.parse::<usize>()
                .map_err(|_| err(line_no, format!("`{s}` is not an index")))
        };
        match fields[0] {
            "burrow" => {
                if fields.len() != 5 {
                    return Err(err(line_no, "burrow line needs 4 fields".into()));
                }
                let i = idx(fields[1])?;
                ensure(&mut p, &mut explicit_radial, i, None);
                let b = &mut p.burrows[i];
                b.center = Point2::new(num(fields[2])?, num(fields[3])?);
                b.image_of = match fields[4] {
                    "-" => None,
                    s => Some(idx(s)?),
                };
            }
            "trench" => {
                if fields.len() < 4 {
                    return Err(err(line_no, "trench line needs at least 3 fields".into()));
                }
                let (i, j) = (idx(fields[1])?, idx(fields[2])?);
                ensure(&mut p, &mut explicit_radial, i, Some(j));
                let t = &mut p.burrows[i].trenches[j];
                t.angle = num(fields[3])?;
                t.radial_coords = fields[4..].iter().map(|s| num(s)).collect::<Result<_>>()?;
                explicit_radial[i][j] = true;
            }
            _ => {
                if fields.len() != 9 {
                    return Err(err(
                        line_no,
                        format!("pellet line needs 9 fields, found {}", fields.len()),
                    ));
                }
                let (i, j, k) = (idx(fields[0])?, idx(fields[1])?, idx(fields[2])?);
                ensure(&mut p, &mut explicit_radial, i, Some(j));
                let t = &mut p.burrows[i].trenches[j];
                if k != t.pellets.len() {
                    return Err(err(
                        line_no,
                        format!(
                            "pellet index {k} out of order (expected {})",
                            t.pellets.len()
                        ),
                    ));
                }
                let color = Rgb::try_new(num(fields[5])?, num(fields[6])?, num(fields[7])?)
                    .map_err(|e| err(line_no, e.to_string()))?;
                let visible = match fields[8] {
                    "1" => true,
                    "0" => false,
                    s => return Err(err(line_no, format!("visible flag `{s}` must be 0 or 1"))),
                };
                t.pellets.push(Pellet {
                    position: Point2::new(num(fields[3])?, num(fields[4])?),
                    color,
                    visible,
                });
            }
        }
    }

    for (i, b) in p.burrows.iter_mut().enumerate() {
        for (j, t) in b.trenches.iter_mut().enumerate() {
            if !explicit_radial[i][j] {
                t.radial_coords = (1..=t.pellets.len()).map(|k| k as f64).collect();
            }
            if t.radial_coords.len() != t.pellets.len() {
                return Err(err(
                    0,
                    format!(
                        "trench ({i}, {j}) has {} radial coordinates for {} pellets",
                        t.radial_coords.len(),
                        t.pellets.len()
                    ),
                ));
            }
            if t.radial_coords.windows(2).any(|w| w[0] >= w[1]) {
                return Err(err(
                    0,
                    format!("trench ({i}, {j}) radial coordinates not increasing"),
                ));
            }
        }
    }
    Ok(p)
}
