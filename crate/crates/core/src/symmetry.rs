//! The four planar isometries acting on whole burrows, and pattern-symmetry
//! breaking.
//!
//! Coordinates are canvas-centered: the origin is the middle of the rendered
//! image, so the reflection axis and rotation center land mid-image.

use std::f64::consts::TAU;

use rand::seq::index;
use rand::Rng;

use crate::error::{Error, Result};
pub use crate::pattern::Scope;
use crate::pattern::{Burrow, Pattern, Point2};
use crate::rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Isometry {
    /// `(x, y) -> (-x, y)`
    Reflection,
    /// Rotation by `2π/n` about the origin.
    Rotation { n: u32 },
    /// `(x, y) -> (x + dx, y + dy)`
    Translation { dx: f64, dy: f64 },
    /// `(x, y) -> (x + dx, -y)`
    GlideReflection { dx: f64 },
}

impl Isometry {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Isometry::Rotation { n } if n < 2 => Err(Error::config(format!(
                "rotation order must be at least 2, got {n}"
            ))),
            Isometry::Translation { dx, dy } if !(dx.is_finite() && dy.is_finite()) => {
                Err(Error::config("translation offsets must be finite"))
            }
            Isometry::GlideReflection { dx } if !dx.is_finite() => {
                Err(Error::config("glide offset must be finite"))
            }
            _ => Ok(()),
        }
    }

    pub fn map_point(&self, p: Point2) -> Point2 {
        match *self {
            Isometry::Reflection => Point2::new(-p.x, p.y),
            Isometry::Rotation { n } => {
                let (s, c) = (TAU / n as f64).sin_cos();
                Point2::new(p.x * c - p.y * s, p.x * s + p.y * c)
            }
            Isometry::Translation { dx, dy } => Point2::new(p.x + dx, p.y + dy),
            Isometry::GlideReflection { dx } => Point2::new(p.x + dx, -p.y),
        }
    }

    /// Image of a direction angle under the linear part of the map.
    pub fn map_angle(&self, theta: f64) -> f64 {
        match *self {
            Isometry::Reflection => std::f64::consts::PI - theta,
            Isometry::Rotation { n } => theta + TAU / n as f64,
            Isometry::Translation { .. } => theta,
            Isometry::GlideReflection { .. } => -theta,
        }
    }

    /// Order of the cyclic group the map generates, if finite.
    pub fn order(&self) -> Option<u32> {
        match *self {
            Isometry::Reflection => Some(2),
            Isometry::Rotation { n } => Some(n),
            Isometry::Translation { dx, dy } if dx == 0.0 && dy == 0.0 => Some(1),
            Isometry::GlideReflection { dx: 0.0 } => Some(2),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Isometry::Reflection => "reflection",
            Isometry::Rotation { .. } => "rotation",
            Isometry::Translation { .. } => "translation",
            Isometry::GlideReflection { .. } => "glide",
        }
    }

    fn map_burrow(&self, b: &Burrow, source: usize) -> Burrow {
        let trenches = b
            .trenches
            .iter()
            .map(|t| {
                let mut t = t.clone();
                t.angle = self.map_angle(t.angle);
                for pel in &mut t.pellets {
                    pel.position = self.map_point(pel.position);
                }
                t
            })
            .collect();
        Burrow {
            center: self.map_point(b.center),
            trenches,
            image_of: Some(source),
        }
    }
}

/// Append the image of every burrow of `p` under `iso`. Originals are kept;
/// images copy pellet colors and visibility.
pub fn apply_isometry(p: &Pattern, iso: &Isometry) -> Pattern {
    let mut out = p.clone();
    out.burrows.extend(
        p.burrows
            .iter()
            .enumerate()
            .map(|(i, b)| iso.map_burrow(b, i)),
    );
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BreakMode {
    /// Mark pellets invisible.
    Remove,
    /// Move pellets by independent Gaussian offsets with this std.
    Displace { std: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BreakSpec {
    pub rate: f64,
    pub mode: BreakMode,
    pub seed: u64,
}

/// Number of pellets affected by breaking `n` pellets at `rate`: `⌈rate·n⌉`.
///
/// The product is snapped to the nearest integer when it is within `1e-9`
/// relative of one, so that e.g. `0.3 · 100` (which is `30.000000000000004`
/// in binary) yields 30 rather than 31.
pub fn breaking_count(rate: f64, n: usize) -> usize {
    let x = rate.clamp(0.0, 1.0) * n as f64;
    let nearest = x.round();
    let k = if (x - nearest).abs() <= 1e-9 * nearest.max(1.0) {
        nearest
    } else {
        x.ceil()
    };
    (k as usize).min(n)
}

/// `k` distinct indices out of `0..n`, uniformly.
pub(crate) fn choose_affected<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Vec<usize> {
    let mut chosen = index::sample(rng, n, k).into_vec();
    chosen.sort_unstable();
    chosen
}

/// Break the symmetry of `⌈rate · n⌉` of the `n` scoped pellets.
pub fn break_symmetry(p: &Pattern, spec: &BreakSpec, scope: &Scope) -> Result<Pattern> {
    if !(0.0..=1.0).contains(&spec.rate) {
        return Err(Error::domain(format!(
            "breaking rate {} outside [0, 1]",
            spec.rate
        )));
    }
    if let BreakMode::Displace { std } = spec.mode {
        if !(std >= 0.0 && std.is_finite()) {
            return Err(Error::domain(format!(
                "displacement std {std} must be finite and >= 0"
            )));
        }
    }
    let ids = p.pellet_ids(scope);
    let k = breaking_count(spec.rate, ids.len());
    let mut rng = rng::seeded(spec.seed);
    let mut out = p.clone();
    for idx in choose_affected(&mut rng, ids.len(), k) {
        let pel = out.pellet_mut(ids[idx]);
        match spec.mode {
            BreakMode::Remove => pel.visible = false,
            BreakMode::Displace { std } => {
                pel.position.x += rng::normal(&mut rng, 0.0, std);
                pel.position.y += rng::normal(&mut rng, 0.0, std);
            }
        }
    }
    Ok(out)
}
