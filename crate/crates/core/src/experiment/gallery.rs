//! Sample images: the named illustration panels and per-rate sweep samples.

use std::path::{Path, PathBuf};

use crate::color::{self, ColorBreakSpec, ColorPermutation, ColorStrategy, ColorWheel};
use crate::error::{Error, Result};
use crate::pattern::{generate_pattern, CenterBox, GenConfig, IntRange, Pattern, Scope};
use crate::raster::{render, write_image, Image};
use crate::rng;
use crate::symmetry::{apply_isometry, break_symmetry, BreakMode, BreakSpec, Isometry};

use super::sweep::SweepConfig;

pub const GALLERIES: &[&str] = &["fig1", "fig3", "fig4"];

#[derive(Debug, Clone, PartialEq)]
pub struct Panel {
    /// Panel letter within the figure.
    pub label: char,
    pub sigma: f64,
    pub image: Image,
}

impl Panel {
    pub fn file_name(&self, preset: &str) -> String {
        format!("{preset}_{}_sigma{:.2}.ppm", self.label, self.sigma)
    }
}

fn base(seed: u64, burrows: usize, centers: CenterBox) -> Result<Pattern> {
    let d = GenConfig::default();
    generate_pattern(&GenConfig {
        burrows: IntRange::exactly(burrows),
        pellets_per_trench: IntRange::new(6, 12),
        radial_step: 0.25 * d.canvas_extent / 12.0,
        noise_std: 0.3 * 0.25 * d.canvas_extent / 12.0,
        centers,
        seed,
        ..d
    })
}

fn quadrant_box(extent: f64) -> CenterBox {
    CenterBox {
        x_min: -0.3 * extent,
        x_max: -0.2 * extent,
        y_min: 0.2 * extent,
        y_max: 0.3 * extent,
    }
}

fn pattern_break(p: &Pattern, sigma: f64, mode: BreakMode, seed: u64) -> Result<Pattern> {
    let spec = BreakSpec {
        rate: sigma,
        mode,
        seed,
    };
    break_symmetry(p, &spec, &Scope::Images)
}

/// Dichromatic reflection: originals red, mirror images in the complementary
/// green. Panels a-c remove image pellets; d-f add a translated copy of the
/// whole mirror pair and displace image pellets.
fn fig1(seed: u64) -> Result<Vec<Panel>> {
    let cfg = SweepConfig::default();
    let ryb = ColorWheel::ryb();
    let extent = cfg.gen.canvas_extent;
    let mut panels = Vec::new();

    let mut p = base(rng::substream(seed, 10), 2, GenConfig::default().centers)?;
    color::color_burrows_by_slot(&mut p, &ryb, &[0], &Scope::All)?;
    let mirrored = apply_isometry(&p, &Isometry::Reflection);
    let dichromatic = color::apply_color_permutation(
        &mirrored,
        &ColorPermutation::complementary_swap(),
        &ryb,
        &Scope::Images,
    )?;
    for (label, sigma) in [('a', 0.0), ('b', 0.1), ('c', 0.3)] {
        let broken = pattern_break(&dichromatic, sigma, BreakMode::Remove, seed)?;
        panels.push(Panel {
            label,
            sigma,
            image: render(&broken, &cfg.canvas)?,
        });
    }

    let mut p = base(rng::substream(seed, 11), 1, quadrant_box(extent))?;
    color::color_burrows_by_slot(&mut p, &ryb, &[0], &Scope::All)?;
    let pair = color::apply_color_permutation(
        &apply_isometry(&p, &Isometry::Reflection),
        &ColorPermutation::complementary_swap(),
        &ryb,
        &Scope::Images,
    )?;
    let shifted = apply_isometry(
        &pair,
        &Isometry::Translation {
            dx: 0.0,
            dy: -0.5 * extent,
        },
    );
    let std = 2.0 * cfg.gen.radial_step;
    for (label, sigma) in [('d', 0.0), ('e', 0.1), ('f', 0.3)] {
        let broken = pattern_break(&shifted, sigma, BreakMode::Displace { std }, seed)?;
        panels.push(Panel {
            label,
            sigma,
            image: render(&broken, &cfg.canvas)?,
        });
    }
    Ok(panels)
}

/// Red, yellow and blue burrows with a glide-reflected copy recolored by
/// `r y b / g p o`, then broken towards tertiary colors.
fn fig3(seed: u64) -> Result<Vec<Panel>> {
    let cfg = SweepConfig::default();
    let ryb = ColorWheel::ryb();
    let extent = cfg.gen.canvas_extent;
    let centers = CenterBox {
        x_min: -0.3 * extent,
        x_max: 0.3 * extent,
        y_min: 0.15 * extent,
        y_max: 0.3 * extent,
    };
    let mut p = base(rng::substream(seed, 30), 3, centers)?;
    let slots: Vec<usize> = ["r", "y", "b"]
        .iter()
        .map(|n| ryb.slot_by_name(n).expect("primary slot"))
        .collect();
    color::color_burrows_by_slot(&mut p, &ryb, &slots, &Scope::All)?;
    let glided = apply_isometry(&p, &Isometry::GlideReflection { dx: 0.0 });
    let to_secondary = ColorPermutation::parse_two_line(&ryb, "r y b / g p o")?;
    let pattern = color::apply_color_permutation(&glided, &to_secondary, &ryb, &Scope::Images)?;
    let to_tertiary = ColorPermutation::parse_two_line(&ryb, "r y b g p o / ch te vi ma ve am")?;

    let labels = ['a', 'b', 'c', 'd', 'e', 'f'];
    let sigmas = [0.0, 0.15, 0.35, 0.55, 0.75, 0.95];
    labels
        .into_iter()
        .zip(sigmas)
        .map(|(label, sigma)| {
            let spec = ColorBreakSpec {
                rate: sigma,
                strategy: ColorStrategy::AlternatePermutation(to_tertiary.clone()),
                seed,
            };
            let broken = color::break_color_symmetry(&pattern, &spec, &ryb, &Scope::All)?;
            Ok(Panel {
                label,
                sigma,
                image: render(&broken, &cfg.canvas)?,
            })
        })
        .collect()
}

/// A two-fold rotation followed by a glide reflection. Panels a-c recolor
/// image pellets cyan; d-f move pellets from the RYB wheel onto the RGB wheel.
fn fig4(seed: u64) -> Result<Vec<Panel>> {
    let cfg = SweepConfig::default();
    let extent = cfg.gen.canvas_extent;
    let mut panels = Vec::new();

    let build = |wheel: &ColorWheel| -> Result<Pattern> {
        let mut p = base(rng::substream(seed, 40), 2, quadrant_box(extent))?;
        color::color_burrows_by_slot(&mut p, wheel, &[0, 4], &Scope::All)?;
        let p = apply_isometry(&p, &Isometry::Rotation { n: 2 });
        Ok(apply_isometry(&p, &Isometry::GlideReflection { dx: 0.0 }))
    };

    let rgb = ColorWheel::rgb();
    let pattern = build(&rgb)?;
    for (label, sigma) in [('a', 0.0), ('b', 0.25), ('c', 0.75)] {
        let spec = ColorBreakSpec {
            rate: sigma,
            strategy: ColorStrategy::FixedColor(crate::color::Rgb::CYAN),
            seed,
        };
        let broken = color::break_color_symmetry(&pattern, &spec, &rgb, &Scope::Images)?;
        panels.push(Panel {
            label,
            sigma,
            image: render(&broken, &cfg.canvas)?,
        });
    }

    let ryb = ColorWheel::ryb();
    let pattern = build(&ryb)?;
    for (label, sigma) in [('d', 0.0), ('e', 0.5), ('f', 0.95)] {
        let remapped = color::remap_wheel(&pattern, &ryb, &rgb, sigma, seed, &Scope::All)?;
        panels.push(Panel {
            label,
            sigma,
            image: render(&remapped, &cfg.canvas)?,
        });
    }
    Ok(panels)
}

/// Render the panels of a named gallery.
pub fn gallery(name: &str, seed: u64) -> Result<Vec<Panel>> {
    match name.to_ascii_lowercase().as_str() {
        "fig1" => fig1(seed),
        "fig3" => fig3(seed),
        "fig4" => fig4(seed),
        _ => Err(Error::config(format!(
            "unknown gallery `{name}` (available: {})",
            GALLERIES.join(", ")
        ))),
    }
}

/// Write panels as `{preset}_{label}_sigma{σ}.ppm` into `dir`, creating it
/// if needed.
pub fn write_panels(panels: &[Panel], preset: &str, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    panels
        .iter()
        .map(|panel| {
            let path = dir.join(panel.file_name(preset));
            write_image(&panel.image, &path)?;
            Ok(path)
        })
        .collect()
}

/// The first image of every rate of a sweep, labelled `a`, `b`, ... in
/// rate order (wrapping after `z`).
pub fn sweep_samples(cfg: &SweepConfig) -> Result<Vec<Panel>> {
    cfg.validate()?;
    cfg.sigma_values
        .iter()
        .enumerate()
        .map(|(si, &sigma)| {
            let seed = rng::child_seed(cfg.master_seed, si as u64, 0);
            Ok(Panel {
                label: (b'a' + (si % 26) as u8) as char,
                sigma,
                image: cfg.render_cell(sigma, seed)?,
            })
        })
        .collect()
}
