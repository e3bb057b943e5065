//! Sand-bubbler pellet patterns with pre-designed degrees of geometric and
//! color symmetry, a hard-edged rasterizer, and grid-partition / Benford
//! aesthetic measures.
//!
//! The pipeline is `pattern` → `symmetry` / `color` → `raster` → `measures`,
//! with `experiment` driving batch sweeps over the symmetry-breaking rate.

pub mod color;
pub mod error;
pub mod exec;
pub mod experiment;
pub mod measures;
pub mod pattern;
pub mod raster;
pub mod rng;
pub mod symmetry;

pub use color::{ColorBreakSpec, ColorPermutation, ColorStrategy, ColorWheel, Rgb, WheelKind};
pub use error::{Error, Result};
pub use measures::{GridPartition, MeasureReport, ScalarField};
pub use pattern::{Burrow, GenConfig, Pattern, Pellet, Point2, Trench};
pub use raster::{CanvasConfig, Image};
pub use symmetry::{BreakMode, BreakSpec, Isometry, Scope};
