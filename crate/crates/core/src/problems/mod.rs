//! The built-in problems.

pub mod binary;
pub mod building;
pub mod dave;
pub mod elimination;
pub mod isaac;
pub mod minidungeons;
pub mod sokoban;
pub mod zelda;

pub use binary::Binary;
pub use building::Building;
pub use dave::Dave;
pub use elimination::Elimination;
pub use isaac::Isaac;
pub use minidungeons::MiniDungeons;
pub use sokoban::Sokoban;
pub use zelda::Zelda;

use crate::info::InfoRecord;
use crate::problem::{scaled_hamming, RgbImage, Rendering, TILE_PX};
use crate::space::{SpaceDescriptor, Value};

/// Row-major tiles of a validated grid value.
pub(crate) fn grid_tiles(space: &SpaceDescriptor, content: &Value) -> Vec<i64> {
    space.flatten(content).expect("content was validated against the content space")
}

pub(crate) fn tile_counts(tiles: &[i64], kinds: usize) -> Vec<i64> {
    let mut counts = vec![0; kinds];
    for &t in tiles {
        counts[t as usize] += 1;
    }
    counts
}

/// `(x, y)` of the first tile equal to `kind`, in row-major order.
pub(crate) fn first_cell(tiles: &[i64], width: usize, kind: i64) -> Option<(usize, usize)> {
    tiles.iter().position(|&t| t == kind).map(|i| (i % width, i / width))
}

pub(crate) fn tile_image(tiles: &[i64], width: usize, height: usize, palette: &[[u8; 3]]) -> Rendering {
    Rendering::Image(RgbImage::from_tiles(tiles, width, height, TILE_PX, palette))
}

/// Tile Hamming distance between the `tiles` entries of two records.
pub(crate) fn tile_diversity(a: &InfoRecord, b: &InfoRecord, threshold: f64) -> f64 {
    scaled_hamming(a.ints("tiles"), b.ints("tiles"), threshold)
}

/// Closeness of a coordinate to a target within ±`window`, over `[0, max]`.
pub(crate) fn coordinate_closeness(value: Option<usize>, target: i64, window: i64, max: i64) -> f64 {
    match value {
        None => 0.0,
        Some(v) => crate::problem::closeness(
            v as f64,
            ((target - window) as f64, (target + window) as f64),
            (0.0, max as f64),
        ),
    }
}
