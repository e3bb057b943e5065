//! Bundled sweep configurations.
//!
//! All presets use a reflection with the default isometry parameters
//! (`rotation_order = 2`, `dx` = half the canvas extent, `dy = 0`); override
//! `isometry` to sweep the other three.

use crate::error::{Error, Result};

use super::config::{parse_config, KeyValues, SweepJob};

pub const PRESETS: &[(&str, &str)] = &[
    ("fig5a", include_str!("../../presets/fig5a.conf")),
    ("fig5b", include_str!("../../presets/fig5b.conf")),
    ("fig5c", include_str!("../../presets/fig5c.conf")),
    ("fig5d", include_str!("../../presets/fig5d.conf")),
    ("fig6a", include_str!("../../presets/fig6a.conf")),
    ("fig6b", include_str!("../../presets/fig6b.conf")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    PRESETS.iter().map(|(n, _)| *n)
}

/// The raw text of a bundled preset.
pub fn text(name: &str) -> Result<&'static str> {
    PRESETS
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, t)| *t)
        .ok_or_else(|| {
            Error::config(format!(
                "unknown preset `{name}` (available: {})",
                names().collect::<Vec<_>>().join(", ")
            ))
        })
}

pub fn key_values(name: &str) -> Result<KeyValues> {
    KeyValues::parse(text(name)?)
}

pub fn load(name: &str) -> Result<SweepJob> {
    parse_config(text(name)?)
}
