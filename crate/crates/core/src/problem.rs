//! The problem plugin contract plus the scoring helpers the built-in problems share.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::info::InfoRecord;
use crate::space::{SpaceDescriptor, Value};

/// A generative problem: two possibility spaces and five functions.
///
/// `quality`, `diversity` and `controllability` read only [`InfoRecord`]s; the
/// info function is the single place where raw content is interpreted.
pub trait ProblemContract: Send + Sync {
    fn name(&self) -> &str;

    fn params(&self) -> &VariantParams;

    fn content_space(&self) -> &SpaceDescriptor;

    fn control_space(&self) -> &SpaceDescriptor;

    fn info(&self, content: &Value) -> InfoRecord;

    /// Per-constraint scores in `[0, 1]`.
    fn subscores(&self, info: &InfoRecord) -> Vec<f64>;

    fn quality(&self, info: &InfoRecord) -> f64 {
        quality_from_subscores(&self.subscores(info))
    }

    /// Pairwise dissimilarity in `[0, 1]`; symmetric, zero for identical artifacts.
    fn diversity(&self, a: &InfoRecord, b: &InfoRecord) -> f64;

    fn controllability(&self, info: &InfoRecord, control: &Value) -> f64;

    fn render(&self, content: &Value) -> Rendering;
}

impl fmt::Debug for dyn ProblemContract {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemContract").field("name", &self.name()).finish()
    }
}

/// Mean of the subscores, pinned below 1 unless every subscore is exactly 1.
pub fn quality_from_subscores(subscores: &[f64]) -> f64 {
    if subscores.is_empty() {
        return 1.0;
    }
    if subscores.iter().all(|&s| s >= 1.0) {
        return 1.0;
    }
    let mean = subscores.iter().map(|s| s.clamp(0.0, 1.0)).sum::<f64>() / subscores.len() as f64;
    mean.min(1.0 - f64::EPSILON)
}

/// Closeness of `value` to the window `[lo, hi]`: 1 inside, falling linearly to
/// 0 at `min` below the window and at `max` above it.
pub fn closeness(value: f64, (lo, hi): (f64, f64), (min, max): (f64, f64)) -> f64 {
    if value >= lo && value <= hi {
        1.0
    } else if value < lo {
        if lo <= min {
            0.0
        } else {
            ((value - min) / (lo - min)).clamp(0.0, 1.0)
        }
    } else if hi >= max {
        0.0
    } else {
        ((max - value) / (max - hi)).clamp(0.0, 1.0)
    }
}

/// Closeness of an integer count to an exact target within `[0, max]`.
pub fn count_score(count: usize, target: usize, max: usize) -> f64 {
    closeness(count as f64, (target as f64, target as f64), (0.0, max as f64))
}

/// Closeness of an integer count to "at least `min`" within `[0, max]`.
pub fn at_least(count: usize, min: usize, max: usize) -> f64 {
    closeness(count as f64, (min as f64, max.max(min) as f64), (0.0, max.max(min) as f64))
}

/// Closeness of an integer count to "at most `limit`" within `[0, max]`.
pub fn at_most(count: usize, limit: usize, max: usize) -> f64 {
    closeness(count as f64, (0.0, limit as f64), (0.0, max as f64))
}

/// `1 / components`, or 0 when there is nothing to connect.
pub fn connectivity_score(components: usize) -> f64 {
    if components == 0 {
        0.0
    } else {
        1.0 / components as f64
    }
}

/// Hamming distance between equal-length slices, as a fraction of `threshold`
/// differing positions, saturating at 1.
pub fn scaled_hamming(a: &[i64], b: &[i64], threshold: f64) -> f64 {
    let diff = a.iter().zip(b).filter(|(x, y)| x != y).count() + a.len().abs_diff(b.len());
    (diff as f64 / threshold).min(1.0)
}

/// A variant parameter value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Int(i64),
    Real(f64),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(v) => write!(f, "{v}"),
            ParamValue::Real(v) => write!(f, "{v}"),
        }
    }
}

impl std::str::FromStr for ParamValue {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Ok(v) = s.parse::<i64>() {
            return Ok(ParamValue::Int(v));
        }
        s.parse::<f64>()
            .map(ParamValue::Real)
            .map_err(|_| format!("`{s}` is not a number"))
    }
}

/// Named constructor parameters of a problem, in declaration order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariantParams(Vec<(String, ParamValue)>);

impl VariantParams {
    pub fn new<I, K>(entries: I) -> Self
    where
        I: IntoIterator<Item = (K, ParamValue)>,
        K: Into<String>,
    {
        Self(entries.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, ParamValue)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn get(&self, key: &str) -> Option<ParamValue> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
    }

    /// # Panics
    /// If `key` is not declared or is not an integer parameter.
    pub fn int(&self, key: &str) -> i64 {
        match self.get(key) {
            Some(ParamValue::Int(v)) => v,
            other => panic!("variant parameter `{key}` is not an integer: {other:?}"),
        }
    }

    pub fn usize(&self, key: &str) -> usize {
        usize::try_from(self.int(key)).unwrap_or_else(|_| panic!("variant parameter `{key}` is negative"))
    }

    /// # Panics
    /// If `key` is not declared.
    pub fn real(&self, key: &str) -> f64 {
        match self.get(key) {
            Some(ParamValue::Real(v)) => v,
            Some(ParamValue::Int(v)) => v as f64,
            None => panic!("variant parameter `{key}` is not declared"),
        }
    }

    /// Applies overrides, keeping each parameter's declared numeric kind.
    pub fn with_overrides<'a, I>(&self, problem: &str, overrides: I) -> Result<Self, CoreError>
    where
        I: IntoIterator<Item = (&'a String, &'a ParamValue)>,
    {
        let mut out = self.clone();
        for (key, value) in overrides {
            let slot = out.0.iter_mut().find(|(k, _)| k == key).ok_or_else(|| {
                CoreError::UnknownOverride {
                    problem: problem.to_string(),
                    key: key.clone(),
                    known: self.0.iter().map(|(k, _)| k.clone()).collect(),
                }
            })?;
            slot.1 = match (slot.1, *value) {
                (ParamValue::Int(_), ParamValue::Int(v)) => ParamValue::Int(v),
                (ParamValue::Int(_), ParamValue::Real(v)) if v.fract() == 0.0 => ParamValue::Int(v as i64),
                (ParamValue::Int(_), ParamValue::Real(v)) => {
                    return Err(CoreError::InvalidOverride {
                        key: key.clone(),
                        reason: format!("expected an integer, got {v}"),
                    })
                }
                (ParamValue::Real(_), ParamValue::Int(v)) => ParamValue::Real(v as f64),
                (ParamValue::Real(_), ParamValue::Real(v)) => ParamValue::Real(v),
            };
        }
        Ok(out)
    }
}

impl fmt::Display for VariantParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

/// An RGB raster, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RgbImage {
    pub width: u32,
    pub height: u32,
    pub pixels: Vec<[u8; 3]>,
}

impl RgbImage {
    pub fn new(width: u32, height: u32, fill: [u8; 3]) -> Self {
        Self { width, height, pixels: vec![fill; (width * height) as usize] }
    }

    pub fn fill_rect(&mut self, x: u32, y: u32, w: u32, h: u32, color: [u8; 3]) {
        for py in y..(y + h).min(self.height) {
            for px in x..(x + w).min(self.width) {
                self.pixels[(py * self.width + px) as usize] = color;
            }
        }
    }

    /// One `cell`-pixel square per tile, colored through `palette`.
    pub fn from_tiles(tiles: &[i64], width: usize, height: usize, cell: u32, palette: &[[u8; 3]]) -> Self {
        let mut img = RgbImage::new(width as u32 * cell, height as u32 * cell, [0, 0, 0]);
        for y in 0..height {
            for x in 0..width {
                let color = palette[tiles[y * width + x] as usize % palette.len()];
                img.fill_rect(x as u32 * cell, y as u32 * cell, cell, cell, color);
            }
        }
        img
    }

    pub fn pixel(&self, x: u32, y: u32) -> [u8; 3] {
        self.pixels[(y * self.width + x) as usize]
    }

    /// Flat `RGBRGB...` bytes.
    pub fn to_rgb_bytes(&self) -> Vec<u8> {
        self.pixels.iter().flatten().copied().collect()
    }
}

/// The final representation of an artifact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rendering {
    Image(RgbImage),
    Text(String),
    /// An image plus a text companion (e.g. a voxel dump).
    Composite { image: RgbImage, text: String },
}

pub(crate) const TILE_PX: u32 = 16;
