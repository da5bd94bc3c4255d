//! Placement checks for one-voxel-tall blocks inside a bounding box.

use serde::{Deserialize, Serialize};

/// Block footprints, `x` extent by `y` extent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockKind {
    OneByOne,
    OneByThree,
    ThreeByOne,
    ThreeByThree,
}

impl BlockKind {
    pub const ALL: [BlockKind; 4] =
        [BlockKind::OneByOne, BlockKind::OneByThree, BlockKind::ThreeByOne, BlockKind::ThreeByThree];

    pub fn from_index(i: i64) -> Option<Self> {
        usize::try_from(i).ok().and_then(|i| Self::ALL.get(i).copied())
    }

    pub fn footprint(self) -> (i64, i64) {
        match self {
            BlockKind::OneByOne => (1, 1),
            BlockKind::OneByThree => (1, 3),
            BlockKind::ThreeByOne => (3, 1),
            BlockKind::ThreeByThree => (3, 3),
        }
    }
}

/// A block whose minimum corner sits at `(x, y, z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Block {
    pub kind: BlockKind,
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl Block {
    pub fn voxels(&self) -> impl Iterator<Item = (i64, i64, i64)> + '_ {
        let (w, d) = self.kind.footprint();
        (0..d).flat_map(move |dy| (0..w).map(move |dx| (self.x + dx, self.y + dy, self.z)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundingBox {
    pub width: i64,
    pub depth: i64,
    pub height: i64,
}

impl BoundingBox {
    pub fn contains(&self, (x, y, z): (i64, i64, i64)) -> bool {
        (0..self.width).contains(&x) && (0..self.depth).contains(&y) && (0..self.height).contains(&z)
    }

    pub fn volume(&self) -> usize {
        (self.width * self.depth * self.height) as usize
    }

    pub fn index(&self, (x, y, z): (i64, i64, i64)) -> usize {
        ((z * self.depth + y) * self.width + x) as usize
    }
}

/// Structural facts about a set of placed blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportReport {
    pub in_bounds: bool,
    pub overlap_free: bool,
    pub supported: bool,
    pub connected: bool,
    /// Highest occupied `z` plus one; 0 when nothing is placed.
    pub height: usize,
    pub blocks_out_of_bounds: usize,
    pub overlapping_voxels: usize,
    pub unsupported_blocks: usize,
    pub components: usize,
    /// Sorted indices of occupied voxels inside the box.
    pub occupied: Vec<usize>,
}

/// Checks overlap, support, 6-neighbour connectivity and height.
///
/// Voxels outside the box are reported through `in_bounds` and otherwise
/// ignored.
pub fn check_support(blocks: &[Block], bounds: BoundingBox) -> SupportReport {
    let mut count = vec![0u8; bounds.volume()];
    let mut out_of_bounds = 0;
    for block in blocks {
        let mut outside = false;
        for v in block.voxels() {
            if bounds.contains(v) {
                let c = &mut count[bounds.index(v)];
                *c = c.saturating_add(1);
            } else {
                outside = true;
            }
        }
        out_of_bounds += usize::from(outside);
    }
    let overlapping_voxels = count.iter().filter(|&&c| c > 1).count();

    let unsupported_blocks = blocks
        .iter()
        .filter(|b| {
            b.z > 0
                && !b.voxels().any(|(x, y, z)| {
                    let below = (x, y, z - 1);
                    bounds.contains(below) && count[bounds.index(below)] > 0
                })
        })
        .count();

    let occupied: Vec<usize> = (0..count.len()).filter(|&i| count[i] > 0).collect();
    let height = occupied
        .last()
        .map_or(0, |&i| i / (bounds.width * bounds.depth) as usize + 1);
    let components = voxel_components(&count, bounds);

    SupportReport {
        in_bounds: out_of_bounds == 0,
        overlap_free: overlapping_voxels == 0,
        supported: unsupported_blocks == 0,
        connected: components <= 1,
        height,
        blocks_out_of_bounds: out_of_bounds,
        overlapping_voxels,
        unsupported_blocks,
        components,
        occupied,
    }
}

fn voxel_components(count: &[u8], bounds: BoundingBox) -> usize {
    let mut seen = vec![false; count.len()];
    let mut components = 0;
    let mut stack = Vec::new();
    let (w, d, h) = (bounds.width, bounds.depth, bounds.height);
    for start in 0..count.len() {
        if count[start] == 0 || seen[start] {
            continue;
        }
        components += 1;
        seen[start] = true;
        stack.push(start);
        while let Some(i) = stack.pop() {
            let i = i as i64;
            let (x, y, z) = (i % w, (i / w) % d, i / (w * d));
            for (nx, ny, nz) in [(x - 1, y, z), (x + 1, y, z), (x, y - 1, z), (x, y + 1, z), (x, y, z - 1), (x, y, z + 1)] {
                if nx < 0 || ny < 0 || nz < 0 || nx >= w || ny >= d || nz >= h {
                    continue;
                }
                let j = bounds.index((nx, ny, nz));
                if count[j] > 0 && !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    components
}
