//! Flat `key = value` sweep configuration files.
//!
//! One setting per line, `#` starts a comment, unknown keys are errors.
//! Every key is optional; omitted keys keep the defaults of
//! [`SweepConfig::default`]. Lengths are in canvas units unless noted.
//!
//! | key | values |
//! |-----|--------|
//! | `sigma_axis` | `pattern` or `color` |
//! | `sigma_count` | number of equidistant rates on `[0, 1]` |
//! | `sigma_values` | explicit comma-separated rates (overrides `sigma_count`) |
//! | `images_per_sigma` | batch size per rate |
//! | `seed` | master seed |
//! | `isometry` | `reflection`, `rotation`, `translation`, `glide` |
//! | `rotation_order` | `n` for rotation |
//! | `dx`, `dy` | translation / glide offsets (default: half extent, 0) |
//! | `break_mode` | `remove` or `displace` |
//! | `displace_std` | Gaussian std for `displace` |
//! | `break_scope` | `images`, `originals` or `all` |
//! | `color_strategy` | `random_rgb`, `fixed`, `permutation` |
//! | `fixed_color` | `r,g,b` for `fixed` |
//! | `permutation` | two-line notation, e.g. `r y b / g p o` |
//! | `wheel` | `ryb` or `rgb` |
//! | `grids` | comma-separated subdivisions from `2, 4, 8` (may be empty) |
//! | `bfl` | `true` / `false` |
//! | `alpha` | similarity threshold |
//! | `burrows`, `trenches`, `pellets` | `n` or `min-max` |
//! | `noise_mean`, `noise_std`, `radial_step` | pellet placement |
//! | `trench_arc_deg` | angular span of a burrow's trenches |
//! | `center_box` | `x_min,x_max,y_min,y_max` for burrow centers |
//! | `canvas_extent` | canvas units across the image |
//! | `width`, `height`, `pellet_radius`, `background` | rendering |
//! | `output` | CSV path |
//! | `gallery` | directory for one sample image per rate |

use std::collections::BTreeMap;
use std::path::PathBuf;

use crate::color::{ColorPermutation, ColorStrategy, ColorWheel, Rgb, WheelKind};
use crate::error::{Error, Result};
use crate::measures::GridPartition;
use crate::pattern::{CenterBox, IntRange, Scope};
use crate::symmetry::{BreakMode, Isometry};

use super::sweep::{equidistant, SigmaAxis, SweepConfig};

/// A parsed configuration file: the sweep plus where to put its output.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepJob {
    pub sweep: SweepConfig,
    pub output: Option<PathBuf>,
    pub gallery: Option<PathBuf>,
}

const KEYS: &[&str] = &[
    "sigma_axis",
    "sigma_count",
    "sigma_values",
    "images_per_sigma",
    "seed",
    "isometry",
    "rotation_order",
    "dx",
    "dy",
    "break_mode",
    "displace_std",
    "break_scope",
    "color_strategy",
    "fixed_color",
    "permutation",
    "wheel",
    "grids",
    "bfl",
    "alpha",
    "burrows",
    "trenches",
    "pellets",
    "noise_mean",
    "noise_std",
    "radial_step",
    "trench_arc_deg",
    "center_box",
    "canvas_extent",
    "width",
    "height",
    "pellet_radius",
    "background",
    "output",
    "gallery",
];

/// Raw key/value pairs, last assignment wins.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct KeyValues {
    entries: BTreeMap<String, (usize, String)>,
}

impl KeyValues {
    pub fn parse(text: &str) -> Result<Self> {
        let mut kv = KeyValues::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            kv.set_line(n + 1, line)?;
        }
        Ok(kv)
    }

    /// Apply one `key=value` assignment (line 0 marks command-line overrides).
    pub fn set_line(&mut self, line_no: usize, line: &str) -> Result<()> {
        let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
            kind: "config",
            line: line_no,
            msg: format!("expected `key = value`, found `{line}`"),
        })?;
        let key = key.trim().to_ascii_lowercase();
        if !KEYS.contains(&key.as_str()) {
            return Err(Error::Parse {
                kind: "config",
                line: line_no,
                msg: format!("unknown key `{key}`"),
            });
        }
        self.entries
            .insert(key, (line_no, value.trim().to_string()));
        Ok(())
    }

    /// Overlay `other` on top of `self`.
    pub fn merge(&mut self, other: KeyValues) {
        self.entries.extend(other.entries);
    }

    fn get(&self, key: &str) -> Option<(usize, &str)> {
        self.entries.get(key).map(|(l, v)| (*l, v.as_str()))
    }

    fn parse_with<T>(&self, key: &str, f: impl FnOnce(&str) -> Option<T>) -> Result<Option<T>> {
        match self.get(key) {
            None => Ok(None),
            Some((line, v)) => f(v).map(Some).ok_or_else(|| Error::Parse {
                kind: "config",
                line,
                msg: format!("invalid value `{v}` for `{key}`"),
            }),
        }
    }

    fn float(&self, key: &str) -> Result<Option<f64>> {
        self.parse_with(key, |v| v.parse::<f64>().ok().filter(|x| x.is_finite()))
    }

    fn uint<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.parse_with(key, |v| v.parse::<T>().ok())
    }

    fn word(&self, key: &str) -> Option<(usize, String)> {
        self.get(key).map(|(l, v)| (l, v.to_ascii_lowercase()))
    }

    fn bad(&self, key: &str, expected: &str) -> Error {
        let (line, v) = self.get(key).unwrap_or((0, ""));
        Error::Parse {
            kind: "config",
            line,
            msg: format!("`{key}` must be {expected}, found `{v}`"),
        }
    }
}

fn float_list(v: &str) -> Option<Vec<f64>> {
    if v.trim().is_empty() {
        return Some(Vec::new());
    }
    v.split(',')
        .map(|s| s.trim().parse::<f64>().ok().filter(|x| x.is_finite()))
        .collect()
}

fn rgb(v: &str) -> Option<Rgb> {
    match float_list(v)?.as_slice() {
        &[r, g, b] => Rgb::try_new(r, g, b).ok(),
        _ => None,
    }
}

fn int_range(v: &str) -> Option<IntRange> {
    match v.split_once('-') {
        Some((a, b)) => Some(IntRange::new(
            a.trim().parse().ok()?,
            b.trim().parse().ok()?,
        )),
        None => v.trim().parse().ok().map(IntRange::exactly),
    }
}

/// Resolve key/value pairs into a job, filling unset keys with defaults.
pub fn resolve(kv: &KeyValues) -> Result<SweepJob> {
    let mut cfg = SweepConfig::default();

    if let Some((_, axis)) = kv.word("sigma_axis") {
        cfg.sigma_axis = match axis.as_str() {
            "pattern" => SigmaAxis::Pattern,
            "color" | "colour" => SigmaAxis::Color,
            _ => return Err(kv.bad("sigma_axis", "`pattern` or `color`")),
        };
    }
    if let Some(n) = kv.uint::<usize>("sigma_count")? {
        cfg.sigma_values = equidistant(n);
    }
    if let Some(values) = kv.parse_with("sigma_values", float_list)? {
        cfg.sigma_values = values;
    }
    if let Some(n) = kv.uint("images_per_sigma")? {
        cfg.images_per_sigma = n;
    }
    if let Some(s) = kv.uint("seed")? {
        cfg.master_seed = s;
    }

    // generation
    let gen = &mut cfg.gen;
    if let Some(e) = kv.float("canvas_extent")? {
        gen.canvas_extent = e;
        cfg.canvas.world_extent = e;
        let d = crate::pattern::GenConfig::default();
        let scale = e / d.canvas_extent;
        gen.centers = CenterBox {
            x_min: d.centers.x_min * scale,
            x_max: d.centers.x_max * scale,
            y_min: d.centers.y_min * scale,
            y_max: d.centers.y_max * scale,
        };
    }
    if let Some(r) = kv.parse_with("burrows", int_range)? {
        gen.burrows = r;
    }
    if let Some(r) = kv.parse_with("trenches", int_range)? {
        gen.trenches_per_burrow = r;
    }
    if let Some(r) = kv.parse_with("pellets", int_range)? {
        gen.pellets_per_trench = r;
    }
    // radial step and noise default relative to the extent and longest trench
    gen.radial_step = match kv.float("radial_step")? {
        Some(s) => s,
        None => 0.4 * gen.canvas_extent / gen.pellets_per_trench.max.max(1) as f64,
    };
    gen.noise_std = kv.float("noise_std")?.unwrap_or(0.3 * gen.radial_step);
    if let Some(m) = kv.float("noise_mean")? {
        gen.noise_mean = m;
    }
    if let Some(a) = kv.float("trench_arc_deg")? {
        gen.trench_arc = a.to_radians();
    }
    if let Some(b) = kv.parse_with("center_box", float_list)? {
        let [x_min, x_max, y_min, y_max] = b[..] else {
            return Err(kv.bad("center_box", "four numbers"));
        };
        gen.centers = CenterBox {
            x_min,
            x_max,
            y_min,
            y_max,
        };
    }

    // isometry
    let dx = kv.float("dx")?.unwrap_or(gen.canvas_extent / 2.0);
    let dy = kv.float("dy")?.unwrap_or(0.0);
    let n = kv.uint::<u32>("rotation_order")?.unwrap_or(2);
    if let Some((_, iso)) = kv.word("isometry") {
        cfg.isometry = match iso.as_str() {
            "reflection" => Isometry::Reflection,
            "rotation" => Isometry::Rotation { n },
            "translation" => Isometry::Translation { dx, dy },
            "glide" | "glide_reflection" => Isometry::GlideReflection { dx },
            _ => {
                return Err(kv.bad(
                    "isometry",
                    "`reflection`, `rotation`, `translation` or `glide`",
                ))
            }
        };
    }

    // breaking
    let displace_std = kv.float("displace_std")?;
    if let Some((_, mode)) = kv.word("break_mode") {
        cfg.break_mode = match mode.as_str() {
            "remove" => BreakMode::Remove,
            "displace" => BreakMode::Displace {
                std: displace_std.unwrap_or(2.0 * cfg.gen.radial_step),
            },
            _ => return Err(kv.bad("break_mode", "`remove` or `displace`")),
        };
    }
    if let Some((_, scope)) = kv.word("break_scope") {
        cfg.break_scope = match scope.as_str() {
            "images" => Scope::Images,
            "originals" => Scope::Originals,
            "all" => Scope::All,
            _ => return Err(kv.bad("break_scope", "`images`, `originals` or `all`")),
        };
    }
    if let Some((_, w)) = kv.word("wheel") {
        cfg.wheel = match w.as_str() {
            "ryb" => WheelKind::Ryb,
            "rgb" => WheelKind::Rgb,
            _ => return Err(kv.bad("wheel", "`ryb` or `rgb`")),
        };
    }
    if let Some((_, strategy)) = kv.word("color_strategy") {
        cfg.color_strategy = match strategy.as_str() {
            "random_rgb" | "random" => ColorStrategy::RandomRgbShift,
            "fixed" => ColorStrategy::FixedColor(
                kv.parse_with("fixed_color", rgb)?
                    .ok_or_else(|| Error::config("`color_strategy = fixed` needs `fixed_color`"))?,
            ),
            "permutation" => {
                let (_, text) = kv.get("permutation").ok_or_else(|| {
                    Error::config("`color_strategy = permutation` needs `permutation`")
                })?;
                ColorStrategy::AlternatePermutation(ColorPermutation::parse_two_line(
                    &ColorWheel::of_kind(cfg.wheel),
                    text,
                )?)
            }
            _ => return Err(kv.bad("color_strategy", "`random_rgb`, `fixed` or `permutation`")),
        };
    }

    // measures
    if let Some(gs) = kv.parse_with("grids", float_list)? {
        cfg.grids = gs
            .into_iter()
            .map(|g| {
                if g.fract() != 0.0 || g < 0.0 {
                    return Err(kv.bad("grids", "integers from 2, 4, 8"));
                }
                GridPartition::new(g as u32)
            })
            .collect::<Result<_>>()?;
    }
    if let Some(b) = kv.parse_with("bfl", |v| v.parse::<bool>().ok())? {
        cfg.bfl = b;
    }
    if let Some(a) = kv.float("alpha")? {
        cfg.alpha = a;
    }

    // canvas
    if let Some(w) = kv.uint("width")? {
        cfg.canvas.width = w;
    }
    if let Some(h) = kv.uint("height")? {
        cfg.canvas.height = h;
    }
    if let Some(r) = kv.float("pellet_radius")? {
        cfg.canvas.pellet_radius = r;
    }
    if let Some(c) = kv.parse_with("background", rgb)? {
        cfg.canvas.background = c;
    }

    cfg.validate()?;
    Ok(SweepJob {
        sweep: cfg,
        output: kv.get("output").map(|(_, v)| PathBuf::from(v)),
        gallery: kv.get("gallery").map(|(_, v)| PathBuf::from(v)),
    })
}

pub fn parse_config(text: &str) -> Result<SweepJob> {
    resolve(&KeyValues::parse(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_is_default() {
        let job = parse_config("# nothing\n\n").unwrap();
        assert_eq!(job.sweep, SweepConfig::default());
        assert_eq!(job.output, None);
    }

    #[test]
    fn full_config() {
        let text = "
            sigma_axis = color
            sigma_values = 0, 0.5, 1
            images_per_sigma = 3   # small
            seed = 77
            isometry = glide
            dx = 10
            color_strategy = permutation
            wheel = ryb
            permutation = r y b / g p o
            grids = 2, 8
            bfl = false
            burrows = 2-3
            pellets = 5
            width = 64
            height = 64
            background = 1,1,1
            output = out.csv
        ";
        let job = parse_config(text).unwrap();
        let c = &job.sweep;
        assert_eq!(c.sigma_axis, SigmaAxis::Color);
        assert_eq!(c.sigma_values, vec![0.0, 0.5, 1.0]);
        assert_eq!(c.images_per_sigma, 3);
        assert_eq!(c.master_seed, 77);
        assert_eq!(c.isometry, Isometry::GlideReflection { dx: 10.0 });
        assert!(matches!(
            c.color_strategy,
            ColorStrategy::AlternatePermutation(_)
        ));
        assert_eq!(
            c.grids,
            vec![GridPartition::FOUR, GridPartition::SIXTY_FOUR]
        );
        assert!(!c.bfl);
        assert_eq!(c.gen.burrows, IntRange::new(2, 3));
        assert_eq!(c.gen.pellets_per_trench, IntRange::exactly(5));
        assert_eq!(c.gen.radial_step, 0.4 * 256.0 / 5.0);
        assert_eq!(c.canvas.background, Rgb::WHITE);
        assert_eq!(job.output, Some(PathBuf::from("out.csv")));
    }

    #[test]
    fn translation_defaults_to_half_extent() {
        let job = parse_config("isometry = translation\ncanvas_extent = 100").unwrap();
        assert_eq!(
            job.sweep.isometry,
            Isometry::Translation { dx: 50.0, dy: 0.0 }
        );
        assert_eq!(job.sweep.canvas.world_extent, 100.0);
    }

    #[test]
    fn errors_carry_lines() {
        let e = parse_config("seed = 1\nfoo = 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
        let e = parse_config("seed = x\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }), "{e}");
        assert!(parse_config("isometry = spiral").is_err());
        assert!(parse_config("sigma_values = 0.5, 0.2").is_err());
        assert!(parse_config("sigma_values = 0, 2").is_err());
        assert!(parse_config("grids = 3").is_err());
        assert!(parse_config("rotation_order = 1\nisometry = rotation").is_err());
        assert!(parse_config("color_strategy = fixed").is_err());
        assert!(parse_config("no equals sign").is_err());
        assert!(parse_config("width = 250\ngrids = 8").is_err());
    }

    #[test]
    fn later_assignments_win() {
        let mut kv = KeyValues::parse("seed = 1\nseed = 2").unwrap();
        assert_eq!(resolve(&kv).unwrap().sweep.master_seed, 2);
        kv.set_line(0, "seed=9").unwrap();
        assert_eq!(resolve(&kv).unwrap().sweep.master_seed, 9);
    }
}
