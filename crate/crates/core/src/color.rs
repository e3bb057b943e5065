//! Twelve-slot color wheels, slot permutations, and color-symmetry breaking.
//!
//! Pellet colors that take part in a permutation must be exact slot colors of
//! the wheel in use. Matching is bitwise equality on [`Rgb`]; there is no
//! nearest-slot snapping, so pellets must be colored by slot reference.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::pattern::{Pattern, PelletId, Scope};
use crate::rng;
use crate::symmetry::{breaking_count, choose_affected};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Rgb {
    pub r: f64,
    pub g: f64,
    pub b: f64,
}

impl Rgb {
    pub const BLACK: Rgb = Rgb::new(0.0, 0.0, 0.0);
    pub const WHITE: Rgb = Rgb::new(1.0, 1.0, 1.0);
    pub const CYAN: Rgb = Rgb::new(0.0, 1.0, 1.0);

    /// Unchecked constructor; use [`Rgb::try_new`] for untrusted input.
    pub const fn new(r: f64, g: f64, b: f64) -> Self {
        Rgb { r, g, b }
    }

    pub fn try_new(r: f64, g: f64, b: f64) -> Result<Self> {
        let c = Rgb { r, g, b };
        if c.is_valid() {
            Ok(c)
        } else {
            Err(Error::domain(format!(
                "color channels must lie in [0, 1], got {c}"
            )))
        }
    }

    pub const fn from_u8(r: u8, g: u8, b: u8) -> Self {
        Rgb::new(r as f64 / 255.0, g as f64 / 255.0, b as f64 / 255.0)
    }

    /// Channels rounded to 8 bits.
    pub fn to_u8(&self) -> (u8, u8, u8) {
        let q = |c: f64| (c * 255.0).round().clamp(0.0, 255.0) as u8;
        (q(self.r), q(self.g), q(self.b))
    }

    pub fn is_valid(&self) -> bool {
        [self.r, self.g, self.b]
            .iter()
            .all(|c| (0.0..=1.0).contains(c))
    }

    /// Uniform draw on the RGB cube.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Rgb::new(rng.random(), rng.random(), rng.random())
    }

    /// Full-saturation color from a hue angle in degrees (value 1).
    pub fn from_hue(deg: f64) -> Self {
        let h = deg.rem_euclid(360.0) / 60.0;
        let x = 1.0 - (h % 2.0 - 1.0).abs();
        let (r, g, b) = match h as u32 {
            0 => (1.0, x, 0.0),
            1 => (x, 1.0, 0.0),
            2 => (0.0, 1.0, x),
            3 => (0.0, x, 1.0),
            4 => (x, 0.0, 1.0),
            _ => (1.0, 0.0, x),
        };
        Rgb::new(r, g, b)
    }
}

impl fmt::Display for Rgb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.r, self.g, self.b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WheelKind {
    Ryb,
    Rgb,
}

impl WheelKind {
    pub fn name(self) -> &'static str {
        match self {
            WheelKind::Ryb => "RYB",
            WheelKind::Rgb => "RGB",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Slot {
    pub name: &'static str,
    pub short: &'static str,
    pub color: Rgb,
}

pub const SLOTS: usize = 12;

/// A hue circle with twelve named slots; complementary colors sit six slots
/// apart.
#[derive(Debug, Clone, PartialEq)]
pub struct ColorWheel {
    kind: WheelKind,
    slots: Vec<Slot>,
}

// Artistic red-yellow-blue wheel. The numeric values are a fixed convention.
const RYB_TABLE: [(&str, &str, [u8; 3]); SLOTS] = [
    ("red", "r", [254, 39, 18]),
    ("vermillion", "ve", [253, 83, 8]),
    ("orange", "o", [251, 153, 2]),
    ("amber", "am", [250, 188, 2]),
    ("yellow", "y", [254, 254, 51]),
    ("chartreuse", "ch", [208, 234, 43]),
    ("green", "g", [102, 176, 50]),
    ("teal", "te", [3, 146, 206]),
    ("blue", "b", [2, 71, 254]),
    ("violet", "vi", [61, 1, 164]),
    ("purple", "p", [134, 1, 175]),
    ("magenta", "ma", [167, 25, 75]),
];

// Light wheel, slot k at hue 30k degrees.
const RGB_NAMES: [(&str, &str); SLOTS] = [
    ("red", "r"),
    ("orange", "o"),
    ("yellow", "y"),
    ("chartreuse", "ch"),
    ("green", "g"),
    ("spring", "sp"),
    ("cyan", "c"),
    ("azure", "az"),
    ("blue", "b"),
    ("violet", "vi"),
    ("magenta", "m"),
    ("rose", "ro"),
];

impl ColorWheel {
    pub fn ryb() -> Self {
        let slots = RYB_TABLE
            .iter()
            .map(|&(name, short, [r, g, b])| Slot {
                name,
                short,
                color: Rgb::from_u8(r, g, b),
            })
            .collect();
        ColorWheel {
            kind: WheelKind::Ryb,
            slots,
        }
    }

    pub fn rgb() -> Self {
        let slots = RGB_NAMES
            .iter()
            .enumerate()
            .map(|(k, &(name, short))| Slot {
                name,
                short,
                color: Rgb::from_hue(30.0 * k as f64),
            })
            .collect();
        ColorWheel {
            kind: WheelKind::Rgb,
            slots,
        }
    }

    pub fn of_kind(kind: WheelKind) -> Self {
        match kind {
            WheelKind::Ryb => Self::ryb(),
            WheelKind::Rgb => Self::rgb(),
        }
    }

    pub fn kind(&self) -> WheelKind {
        self.kind
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn color(&self, slot: usize) -> Result<Rgb> {
        check_slot(slot)?;
        Ok(self.slots[slot].color)
    }

    /// Slot index by full name or short code, case-insensitive.
    pub fn slot_by_name(&self, name: &str) -> Option<usize> {
        let name = name.trim();
        self.slots
            .iter()
            .position(|s| s.short.eq_ignore_ascii_case(name) || s.name.eq_ignore_ascii_case(name))
    }

    /// Exact-match lookup of a color on the wheel.
    pub fn slot_of(&self, color: Rgb) -> Option<usize> {
        self.slots.iter().position(|s| s.color == color)
    }
}

fn check_slot(slot: usize) -> Result<()> {
    if slot < SLOTS {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "slot {slot} out of range 0..{SLOTS}"
        )))
    }
}

/// The slot opposite `slot` on the wheel.
pub fn complementary(_wheel: &ColorWheel, slot: usize) -> Result<usize> {
    check_slot(slot)?;
    Ok((slot + SLOTS / 2) % SLOTS)
}

/// A bijection on a set of wheel slots. Slots outside the domain are fixed
/// points when the permutation is applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorPermutation {
    map: BTreeMap<usize, usize>,
}

impl ColorPermutation {
    pub fn identity() -> Self {
        ColorPermutation {
            map: BTreeMap::new(),
        }
    }

    /// Build from an explicit bijection on its own domain.
    pub fn from_map(map: BTreeMap<usize, usize>) -> Result<Self> {
        for (&k, &v) in &map {
            check_slot(k)?;
            check_slot(v)?;
        }
        let domain: BTreeSet<_> = map.keys().copied().collect();
        let image: BTreeSet<_> = map.values().copied().collect();
        if domain != image {
            return Err(Error::domain("mapping is not a bijection on its domain"));
        }
        Ok(ColorPermutation { map })
    }

    /// Two-line (Cauchy) notation: `top[i] -> bottom[i]`.
    ///
    /// When the rows are different sets, as in `(r y b / g p o)`, the partial
    /// map is closed into a permutation of the union by sending every element
    /// of `bottom` that is not in `top` back to the start of its chain. Disjoint
    /// rows therefore become a product of transpositions.
    pub fn from_two_line(top: &[usize], bottom: &[usize]) -> Result<Self> {
        if top.len() != bottom.len() {
            return Err(Error::domain(format!(
                "two-line rows differ in length ({} vs {})",
                top.len(),
                bottom.len()
            )));
        }
        let mut forward = BTreeMap::new();
        let mut backward = BTreeMap::new();
        for (&t, &b) in top.iter().zip(bottom) {
            check_slot(t)?;
            check_slot(b)?;
            if forward.insert(t, b).is_some() {
                return Err(Error::domain(format!(
                    "slot {t} appears twice in the top row"
                )));
            }
            if backward.insert(b, t).is_some() {
                return Err(Error::domain(format!(
                    "slot {b} appears twice in the bottom row"
                )));
            }
        }
        let mut map = forward.clone();
        for &b in bottom {
            if forward.contains_key(&b) {
                continue;
            }
            let mut start = b;
            while let Some(&prev) = backward.get(&start) {
                start = prev;
            }
            map.insert(b, start);
        }
        Ok(ColorPermutation { map })
    }

    /// Parse `"r y b / g p o"` against the slot names of `wheel`.
    pub fn parse_two_line(wheel: &ColorWheel, text: &str) -> Result<Self> {
        let (top, bottom) = text.split_once('/').ok_or_else(|| {
            Error::config(format!("permutation `{text}` needs a `/` between rows"))
        })?;
        let row = |s: &str| -> Result<Vec<usize>> {
            s.split_whitespace()
                .map(|name| {
                    wheel.slot_by_name(name).ok_or_else(|| {
                        Error::config(format!(
                            "unknown {} slot name `{name}`",
                            wheel.kind().name()
                        ))
                    })
                })
                .collect()
        };
        Self::from_two_line(&row(top)?, &row(bottom)?)
    }

    /// `s -> (s + 6) mod 12` on all slots.
    pub fn complementary_swap() -> Self {
        ColorPermutation {
            map: (0..SLOTS).map(|s| (s, (s + SLOTS / 2) % SLOTS)).collect(),
        }
    }

    /// Cycle `slots[0] -> slots[1] -> ... -> slots[0]`.
    pub fn cycle(slots: &[usize]) -> Result<Self> {
        let mut rotated = slots.to_vec();
        rotated.rotate_left(1.min(slots.len()));
        Self::from_two_line(slots, &rotated)
    }

    pub fn apply(&self, slot: usize) -> usize {
        self.map.get(&slot).copied().unwrap_or(slot)
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.map.keys().copied()
    }

    pub fn inverse(&self) -> Self {
        ColorPermutation {
            map: self.map.iter().map(|(&k, &v)| (v, k)).collect(),
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let keys: BTreeSet<usize> = self.map.keys().chain(other.map.keys()).copied().collect();
        ColorPermutation {
            map: keys
                .into_iter()
                .map(|k| (k, self.apply(other.apply(k))))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity();
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|(k, v)| k == v)
    }

    /// Two-line rendering with the wheel's short names, e.g. `(r g / g r)`.
    pub fn to_two_line(&self, wheel: &ColorWheel) -> String {
        let name = |s: usize| wheel.slots()[s].short;
        let top: Vec<_> = self.map.keys().map(|&k| name(k)).collect();
        let bottom: Vec<_> = self.map.values().map(|&v| name(v)).collect();
        format!("{} / {}", top.join(" "), bottom.join(" "))
    }
}

/// True iff `perm` raised to `iso_order` is the identity, i.e. the color map
/// respects the cyclic group generated by an isometry of that order.
pub fn validate_homomorphism(iso_order: u32, perm: &ColorPermutation) -> bool {
    iso_order >= 1 && perm.pow(iso_order).is_identity()
}

#[derive(Debug, Clone, PartialEq)]
pub enum ColorStrategy {
    AlternatePermutation(ColorPermutation),
    RandomRgbShift,
    FixedColor(Rgb),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColorBreakSpec {
    pub rate: f64,
    pub strategy: ColorStrategy,
    pub seed: u64,
}

fn slot_of_pellet(pattern: &Pattern, wheel: &ColorWheel, id: PelletId) -> Result<usize> {
    let color = pattern.pellet(id).color;
    wheel.slot_of(color).ok_or_else(|| Error::OffWheel {
        burrow: id.burrow,
        trench: id.trench,
        pellet: id.pellet,
        color: color.to_string(),
        wheel: wheel.kind().name(),
    })
}

/// Replace the slot of every scoped pellet by `perm(slot)`.
pub fn apply_color_permutation(
    pattern: &Pattern,
    perm: &ColorPermutation,
    wheel: &ColorWheel,
    scope: &Scope,
) -> Result<Pattern> {
    let mut out = pattern.clone();
    for id in pattern.pellet_ids(scope) {
        let slot = slot_of_pellet(pattern, wheel, id)?;
        out.pellet_mut(id).color = wheel.slots()[perm.apply(slot)].color;
    }
    Ok(out)
}

/// Recolor exactly `⌈rate · n⌉` of the `n` scoped pellets, chosen uniformly
/// with the breaking seed. Positions and visibility are never touched.
pub fn break_color_symmetry(
    pattern: &Pattern,
    spec: &ColorBreakSpec,
    wheel: &ColorWheel,
    scope: &Scope,
) -> Result<Pattern> {
    if !(0.0..=1.0).contains(&spec.rate) {
        return Err(Error::domain(format!(
            "breaking rate {} outside [0, 1]",
            spec.rate
        )));
    }
    let ids = pattern.pellet_ids(scope);
    let k = breaking_count(spec.rate, ids.len());
    let mut rng = rng::seeded(spec.seed);
    let chosen = choose_affected(&mut rng, ids.len(), k);
    let mut out = pattern.clone();
    for idx in chosen {
        let id = ids[idx];
        let color = match &spec.strategy {
            ColorStrategy::AlternatePermutation(perm) => {
                let slot = slot_of_pellet(pattern, wheel, id)?;
                wheel.slots()[perm.apply(slot)].color
            }
            ColorStrategy::RandomRgbShift => Rgb::random(&mut rng),
            ColorStrategy::FixedColor(c) => *c,
        };
        out.pellet_mut(id).color = color;
    }
    Ok(out)
}

/// Move a `⌈rate · n⌉` fraction of scoped pellets from wheel `from` onto the
/// same slot index of wheel `to`.
pub fn remap_wheel(
    pattern: &Pattern,
    from: &ColorWheel,
    to: &ColorWheel,
    rate: f64,
    seed: u64,
    scope: &Scope,
) -> Result<Pattern> {
    if !(0.0..=1.0).contains(&rate) {
        return Err(Error::domain(format!("remap rate {rate} outside [0, 1]")));
    }
    let ids = pattern.pellet_ids(scope);
    let k = breaking_count(rate, ids.len());
    let mut rng = rng::seeded(seed);
    let mut out = pattern.clone();
    for idx in choose_affected(&mut rng, ids.len(), k) {
        let id = ids[idx];
        let slot = slot_of_pellet(pattern, from, id)?;
        out.pellet_mut(id).color = to.slots()[slot].color;
    }
    Ok(out)
}

/// Color every scoped pellet by an independent uniform RGB draw.
pub fn color_uniform_rgb<R: Rng + ?Sized>(pattern: &mut Pattern, scope: &Scope, rng: &mut R) {
    for id in pattern.pellet_ids(scope) {
        pattern.pellet_mut(id).color = Rgb::random(rng);
    }
}

/// Color each scoped burrow with one wheel slot, cycling through `slots`.
pub fn color_burrows_by_slot(
    pattern: &mut Pattern,
    wheel: &ColorWheel,
    slots: &[usize],
    scope: &Scope,
) -> Result<()> {
    if slots.is_empty() {
        return Err(Error::domain("no slots given"));
    }
    let colors = slots
        .iter()
        .map(|&s| wheel.color(s))
        .collect::<Result<Vec<_>>>()?;
    for (n, b) in pattern.burrow_indices(scope).into_iter().enumerate() {
        let c = colors[n % colors.len()];
        for trench in &mut pattern.burrows[b].trenches {
            for pellet in &mut trench.pellets {
                pellet.color = c;
            }
        }
    }
    Ok(())
}
