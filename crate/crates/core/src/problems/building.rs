//! Building: forty Lego-like blocks stacked into a connected, supported tower.

use std::fmt::Write as _;

use crate::info::{InfoRecord, InfoValue};
use crate::problem::{closeness, connectivity_score, ParamValue, ProblemContract, Rendering, RgbImage, VariantParams, TILE_PX};
use crate::solvers::{check_support, Block, BlockKind, BoundingBox};
use crate::space::{SpaceDescriptor, Value};

/// Per-type block counts may miss their target by this many blocks.
const COUNT_WINDOW: f64 = 2.0;

#[derive(Debug, Clone)]
pub struct Building {
    params: VariantParams,
    bounds: BoundingBox,
    block_count: usize,
    content: SpaceDescriptor,
    control: SpaceDescriptor,
}

impl Building {
    pub fn default_params() -> VariantParams {
        VariantParams::new([
            ("width", ParamValue::Int(7)),
            ("depth", ParamValue::Int(7)),
            ("height", ParamValue::Int(12)),
            ("block_count", ParamValue::Int(40)),
            ("min_height", ParamValue::Int(7)),
            ("diversity_fraction", ParamValue::Real(0.2)),
        ])
    }

    pub fn new(params: VariantParams) -> Self {
        let bounds = BoundingBox {
            width: params.int("width"),
            depth: params.int("depth"),
            height: params.int("height"),
        };
        let block_count = params.usize("block_count");
        let block = SpaceDescriptor::record([
            ("type", SpaceDescriptor::discrete(BlockKind::ALL.len() as u32)),
            ("x", SpaceDescriptor::range(0, bounds.width - 1)),
            ("y", SpaceDescriptor::range(0, bounds.depth - 1)),
            ("z", SpaceDescriptor::range(0, bounds.height - 1)),
        ]);
        Self {
            content: SpaceDescriptor::array(block, block_count),
            control: SpaceDescriptor::record([(
                "ratio",
                SpaceDescriptor::array(SpaceDescriptor::range(0, block_count as i64), BlockKind::ALL.len()),
            )]),
            params,
            bounds,
            block_count,
        }
    }

    pub fn bounds(&self) -> BoundingBox {
        self.bounds
    }

    pub fn blocks(&self, content: &Value) -> Vec<Block> {
        content
            .as_list()
            .expect("content was validated against the content space")
            .iter()
            .map(|b| {
                let field = |name| b.field_int(name).expect("block record has every field");
                Block {
                    kind: BlockKind::from_index(field("type")).expect("block type is in range"),
                    x: field("x"),
                    y: field("y"),
                    z: field("z"),
                }
            })
            .collect()
    }

    /// Target block counts from a control ratio, scaled to the block budget.
    pub fn target_counts(&self, control: &Value) -> [f64; 4] {
        let ratio: Vec<f64> = control
            .field("ratio")
            .and_then(Value::as_list)
            .expect("control has a ratio list")
            .iter()
            .map(|v| v.as_int().expect("ratio entries are integers") as f64)
            .collect();
        let total: f64 = ratio.iter().sum();
        let n = self.block_count as f64;
        let mut out = [n / 4.0; 4];
        if total > 0.0 {
            for (o, r) in out.iter_mut().zip(&ratio) {
                *o = r * n / total;
            }
        }
        out
    }
}

impl Default for Building {
    fn default() -> Self {
        Self::new(Self::default_params())
    }
}

impl ProblemContract for Building {
    fn name(&self) -> &str {
        "building-v0"
    }

    fn params(&self) -> &VariantParams {
        &self.params
    }

    fn content_space(&self) -> &SpaceDescriptor {
        &self.content
    }

    fn control_space(&self) -> &SpaceDescriptor {
        &self.control
    }

    fn info(&self, content: &Value) -> InfoRecord {
        let blocks = self.blocks(content);
        let report = check_support(&blocks, self.bounds);
        let mut types = vec![0i64; BlockKind::ALL.len()];
        for b in &blocks {
            types[BlockKind::ALL.iter().position(|&k| k == b.kind).expect("known kind")] += 1;
        }
        InfoRecord::new()
            .with("blocks", InfoValue::Int(blocks.len() as i64))
            .with("out_of_bounds", InfoValue::Int(report.blocks_out_of_bounds as i64))
            .with("overlapping_voxels", InfoValue::Int(report.overlapping_voxels as i64))
            .with("unsupported", InfoValue::Int(report.unsupported_blocks as i64))
            .with("components", InfoValue::Int(report.components as i64))
            .with("height", InfoValue::Int(report.height as i64))
            .with("type_counts", InfoValue::Ints(types))
            .with("voxels", InfoValue::Ints(report.occupied.iter().map(|&i| i as i64).collect()))
    }

    fn subscores(&self, info: &InfoRecord) -> Vec<f64> {
        let n = info.int("blocks").max(1) as f64;
        vec![
            1.0 - info.int("out_of_bounds") as f64 / n,
            f64::from(u8::from(info.int("overlapping_voxels") == 0)),
            1.0 - info.int("unsupported") as f64 / n,
            connectivity_score(info.int("components") as usize),
            (info.int("height") as f64 / self.params.real("min_height")).min(1.0),
        ]
    }

    /// Symmetric difference of the occupied voxel sets, scaled by a fraction of the box volume.
    fn diversity(&self, a: &InfoRecord, b: &InfoRecord) -> f64 {
        let (a, b) = (a.ints("voxels"), b.ints("voxels"));
        let (mut i, mut j, mut diff) = (0, 0, 0usize);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    diff += 1;
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    diff += 1;
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        diff += (a.len() - i) + (b.len() - j);
        let threshold = self.params.real("diversity_fraction") * self.bounds.volume() as f64;
        (diff as f64 / threshold).min(1.0)
    }

    fn controllability(&self, info: &InfoRecord, control: &Value) -> f64 {
        let targets = self.target_counts(control);
        let counts = info.ints("type_counts");
        let n = self.block_count as f64;
        targets
            .iter()
            .zip(counts)
            .map(|(&t, &c)| closeness(c as f64, (t - COUNT_WINDOW, t + COUNT_WINDOW), (0.0, n)))
            .sum::<f64>()
            / targets.len() as f64
    }

    /// Top-down view of every layer side by side, plus a voxel listing.
    fn render(&self, content: &Value) -> Rendering {
        let blocks = self.blocks(content);
        let (w, d, h) = (self.bounds.width as u32, self.bounds.depth as u32, self.bounds.height as u32);
        let gap = 4;
        let mut image = RgbImage::new(h * (w * TILE_PX + gap), d * TILE_PX, [255, 255, 255]);
        let palette = [[200, 40, 40], [40, 120, 220], [40, 170, 60], [230, 190, 30]];
        let mut text = String::from("# type x y z\n");
        for b in &blocks {
            let kind = BlockKind::ALL.iter().position(|&k| k == b.kind).expect("known kind");
            let _ = writeln!(text, "{kind} {} {} {}", b.x, b.y, b.z);
            for (x, y, z) in b.voxels() {
                if self.bounds.contains((x, y, z)) {
                    let ox = z as u32 * (w * TILE_PX + gap);
                    image.fill_rect(ox + x as u32 * TILE_PX, y as u32 * TILE_PX, TILE_PX, TILE_PX, palette[kind]);
                }
            }
        }
        for z in 0..h {
            image.fill_rect(z * (w * TILE_PX + gap) + w * TILE_PX, 0, gap, d * TILE_PX, [120, 120, 120]);
        }
        Rendering::Composite { image, text }
    }
}
