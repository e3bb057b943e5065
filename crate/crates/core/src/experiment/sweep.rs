//! Batch sweeps over the symmetry-breaking rate.

use std::fmt::Write as _;

use rand::Rng;

use crate::color::{self, ColorBreakSpec, ColorStrategy, ColorWheel, WheelKind};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::measures::{self, GridPartition, MeasureReport};
use crate::pattern::{generate_pattern, GenConfig, Pattern, Scope};
use crate::raster::{render, CanvasConfig, Image};
use crate::rng;
use crate::symmetry::{apply_isometry, break_symmetry, BreakMode, BreakSpec, Isometry};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaAxis {
    Pattern,
    Color,
}

impl SigmaAxis {
    pub fn name(self) -> &'static str {
        match self {
            SigmaAxis::Pattern => "pattern",
            SigmaAxis::Color => "color",
        }
    }
}

/// `n` equidistant rates from 0 to 1 inclusive.
pub fn equidistant(n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..n).map(|i| i as f64 / (n - 1) as f64).collect(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub sigma_axis: SigmaAxis,
    pub sigma_values: Vec<f64>,
    pub images_per_sigma: usize,
    pub isometry: Isometry,
    pub break_mode: BreakMode,
    /// Pellets that breaking (of either kind) may touch.
    pub break_scope: Scope,
    pub color_strategy: ColorStrategy,
    pub wheel: WheelKind,
    /// Generation parameters; the seed is replaced per image.
    pub gen: GenConfig,
    pub canvas: CanvasConfig,
    pub grids: Vec<GridPartition>,
    pub bfl: bool,
    pub alpha: f64,
    pub master_seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        let gen = GenConfig::default();
        SweepConfig {
            sigma_axis: SigmaAxis::Pattern,
            sigma_values: equidistant(21),
            images_per_sigma: 100,
            isometry: Isometry::Reflection,
            break_mode: BreakMode::Remove,
            break_scope: Scope::Images,
            color_strategy: ColorStrategy::RandomRgbShift,
            wheel: WheelKind::Ryb,
            canvas: CanvasConfig {
                world_extent: gen.canvas_extent,
                ..CanvasConfig::default()
            },
            gen,
            grids: vec![GridPartition::FOUR, GridPartition::SIXTEEN],
            bfl: true,
            alpha: measures::DEFAULT_ALPHA,
            master_seed: 2018,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.sigma_values.is_empty() {
            return Err(Error::config("no sigma values"));
        }
        if self.sigma_values.iter().any(|s| !(0.0..=1.0).contains(s)) {
            return Err(Error::config("sigma values must lie in [0, 1]"));
        }
        if self.sigma_values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::config("sigma values must be sorted"));
        }
        if self.images_per_sigma == 0 {
            return Err(Error::config("images_per_sigma must be positive"));
        }
        if self.grids.is_empty() && !self.bfl {
            return Err(Error::config("no measures requested"));
        }
        if self.alpha.is_nan() || self.alpha <= 0.0 {
            return Err(Error::config("alpha must be positive"));
        }
        if let BreakMode::Displace { std } = self.break_mode {
            if !(std >= 0.0 && std.is_finite()) {
                return Err(Error::config("displace_std must be finite and >= 0"));
            }
        }
        self.isometry.validate()?;
        self.gen.validate()?;
        self.canvas.validate()?;
        for part in &self.grids {
            let g = part.g() as usize;
            if !self.canvas.width.is_multiple_of(g) || !self.canvas.height.is_multiple_of(g) {
                return Err(Error::config(format!(
                    "canvas {}x{} is not divisible by g = {g}",
                    self.canvas.width, self.canvas.height
                )));
            }
        }
        Ok(())
    }

    /// The symmetric, colored, broken pattern for one sweep cell.
    pub fn build_pattern(&self, sigma: f64, seed: u64) -> Result<Pattern> {
        let gen = GenConfig {
            seed: rng::substream(seed, 1),
            ..self.gen.clone()
        };
        let mut pattern = generate_pattern(&gen)?;
        let mut color_rng = rng::seeded(rng::substream(seed, 2));
        let wheel = ColorWheel::of_kind(self.wheel);
        if let ColorStrategy::AlternatePermutation(_) = self.color_strategy {
            // permutations act on wheel slots, so start from wheel colors
            let slots: Vec<usize> = (0..pattern.burrows.len())
                .map(|_| color_rng.random_range(0..wheel.slots().len()))
                .collect();
            color::color_burrows_by_slot(&mut pattern, &wheel, &slots, &Scope::All)?;
        } else {
            color::color_uniform_rgb(&mut pattern, &Scope::All, &mut color_rng);
        }
        let pattern = apply_isometry(&pattern, &self.isometry);
        let break_seed = rng::substream(seed, 3);
        match self.sigma_axis {
            SigmaAxis::Pattern => {
                let spec = BreakSpec {
                    rate: sigma,
                    mode: self.break_mode,
                    seed: break_seed,
                };
                break_symmetry(&pattern, &spec, &self.break_scope)
            }
            SigmaAxis::Color => {
                let spec = ColorBreakSpec {
                    rate: sigma,
                    strategy: self.color_strategy.clone(),
                    seed: break_seed,
                };
                color::break_color_symmetry(&pattern, &spec, &wheel, &self.break_scope)
            }
        }
    }

    pub fn render_cell(&self, sigma: f64, seed: u64) -> Result<Image> {
        render(&self.build_pattern(sigma, seed)?, &self.canvas)
    }

    fn evaluate_cell(&self, sigma: f64, seed: u64) -> Result<MeasureReport> {
        let img = self.render_cell(sigma, seed)?;
        measures::evaluate(&img, &self.grids, self.alpha, self.bfl)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Measure {
    Sym(GridPartition),
    Bfl,
}

impl Measure {
    pub fn label(&self) -> String {
        match self {
            Measure::Sym(p) => p.label(),
            Measure::Bfl => "BFL".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub sigma: f64,
    pub measure: Measure,
    pub mean: f64,
    pub std: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub const CSV_HEADER: &'static str = "sigma,measure,g,mean,std";

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let g = match r.measure {
                Measure::Sym(p) => p.g().to_string(),
                Measure::Bfl => String::new(),
            };
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                r.sigma,
                r.measure.label(),
                g,
                r.mean,
                r.std
            );
        }
        out
    }

    /// `(sigma, mean)` pairs of one measure, in sigma order.
    pub fn series(&self, measure: Measure) -> Vec<(f64, f64)> {
        self.rows
            .iter()
            .filter(|r| r.measure == measure)
            .map(|r| (r.sigma, r.mean))
            .collect()
    }
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let std = if xs.len() > 1 {
        (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    (mean, std)
}

/// Run the sweep. Images are evaluated with `exec`; aggregation walks results
/// in image-index order, so the output does not depend on the execution mode.
pub fn run_sweep(cfg: &SweepConfig, exec: Execution) -> Result<SweepResult> {
    cfg.validate()?;
    let per = cfg.images_per_sigma;
    let cells = cfg.sigma_values.len() * per;
    let reports = exec.try_map_indexed(cells, |cell| {
        let (si, ii) = (cell / per, cell % per);
        let seed = rng::child_seed(cfg.master_seed, si as u64, ii as u64);
        cfg.evaluate_cell(cfg.sigma_values[si], seed)
            .map_err(|e| Error::Sweep {
                sigma_index: si,
                image_index: ii,
                source: Box::new(e),
            })
    })?;

    let mut measures_requested: Vec<Measure> = cfg.grids.iter().map(|&p| Measure::Sym(p)).collect();
    if cfg.bfl {
        measures_requested.push(Measure::Bfl);
    }
    let mut rows = Vec::new();
    for (si, &sigma) in cfg.sigma_values.iter().enumerate() {
        let batch = &reports[si * per..(si + 1) * per];
        for &m in &measures_requested {
            let xs: Vec<f64> = batch
                .iter()
                .map(|r| match m {
                    Measure::Sym(p) => r
                        .sym
                        .iter()
                        .find(|(q, _)| *q == p)
                        .map(|(_, v)| *v)
                        .expect("requested grid evaluated"),
                    Measure::Bfl => r.bfl.expect("bfl evaluated"),
                })
                .collect();
            let (mean, std) = mean_std(&xs);
            rows.push(SweepRow {
                sigma,
                measure: m,
                mean,
                std,
            });
        }
    }
    Ok(SweepResult { rows })
}
