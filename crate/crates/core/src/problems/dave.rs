//! Dangerous Dave: a side-view platformer; collect every diamond, then exit.

use crate::info::{InfoRecord, InfoValue};
use crate::problem::{at_least, at_most, closeness, count_score, ParamValue, ProblemContract, Rendering, VariantParams};
use crate::solvers::{reachable_cells, solve_platformer, PlatformLevel, PlatformTile, PlatformerPhysics};
use crate::space::{SpaceDescriptor, Value};

use super::{coordinate_closeness, grid_tiles, tile_counts, tile_diversity, tile_image};

pub const EMPTY: i64 = 0;
pub const SOLID: i64 = 1;
pub const SPIKE: i64 = 2;
pub const DIAMOND: i64 = 3;
pub const START: i64 = 4;
pub const EXIT: i64 = 5;
const KINDS: usize = 6;

const COORD_WINDOW: i64 = 1;

#[derive(Debug, Clone)]
pub struct Dave {
    params: VariantParams,
    width: usize,
    height: usize,
    physics: PlatformerPhysics,
    content: SpaceDescriptor,
    control: SpaceDescriptor,
}

impl Dave {
    pub fn default_params() -> VariantParams {
        VariantParams::new([
            ("width", ParamValue::Int(11)),
            ("height", ParamValue::Int(7)),
            ("min_jumps", ParamValue::Int(2)),
            ("jump_height", ParamValue::Int(2)),
            ("min_diamonds", ParamValue::Int(1)),
            ("max_diamonds", ParamValue::Int(6)),
            ("max_spikes", ParamValue::Int(8)),
            ("diversity_fraction", ParamValue::Real(0.3)),
        ])
    }

    pub fn new(params: VariantParams) -> Self {
        let (width, height) = (params.usize("width"), params.usize("height"));
        let x = SpaceDescriptor::range(0, width as i64 - 1);
        let y = SpaceDescriptor::range(0, height as i64 - 1);
        Self {
            content: SpaceDescriptor::grid2d(SpaceDescriptor::discrete(KINDS as u32), width, height),
            control: SpaceDescriptor::record([
                ("start_x", x.clone()),
                ("start_y", y.clone()),
                ("exit_x", x),
                ("exit_y", y),
                (
                    "diamonds",
                    SpaceDescriptor::range(params.int("min_diamonds"), params.int("max_diamonds")),
                ),
            ]),
            physics: PlatformerPhysics { jump_height: params.int("jump_height").clamp(0, 255) as u8 },
            params,
            width,
            height,
        }
    }

    fn cells(&self) -> usize {
        self.width * self.height
    }

    pub fn level(&self, tiles: &[i64]) -> PlatformLevel {
        let converted = tiles
            .iter()
            .map(|&t| match t {
                SOLID => PlatformTile::Solid,
                SPIKE => PlatformTile::Spike,
                DIAMOND => PlatformTile::Diamond,
                START => PlatformTile::Start,
                EXIT => PlatformTile::Exit,
                _ => PlatformTile::Empty,
            })
            .collect();
        PlatformLevel::new(self.width, self.height, converted)
    }
}

impl Default for Dave {
    fn default() -> Self {
        Self::new(Self::default_params())
    }
}

impl ProblemContract for Dave {
    fn name(&self) -> &str {
        "dave-v0"
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
        let tiles = grid_tiles(&self.content, content);
        let counts = tile_counts(&tiles, KINDS);
        let level = self.level(&tiles);
        let trace = solve_platformer(&level, self.physics);
        let reached = reachable_cells(&level, self.physics);
        let diamonds: Vec<usize> = (0..tiles.len()).filter(|&i| tiles[i] == DIAMOND).collect();
        let reachable = diamonds.iter().filter(|&&i| reached[i]).count();
        let position = |kind| match counts[kind as usize] {
            1 => {
                let i = tiles.iter().position(|&t| t == kind).expect("counted tile exists");
                vec![(i % self.width) as i64, (i / self.width) as i64]
            }
            _ => Vec::new(),
        };
        InfoRecord::new()
            .with("solvable", InfoValue::Bool(trace.is_some()))
            .with("jumps", InfoValue::Int(trace.as_ref().map_or(0, |t| t.jumps as i64)))
            .with("solution_length", InfoValue::Int(trace.as_ref().map_or(0, |t| t.actions.len() as i64)))
            .with("reachable_diamonds", InfoValue::Int(reachable as i64))
            .with("start", InfoValue::Ints(position(START)))
            .with("exit", InfoValue::Ints(position(EXIT)))
            .with("counts", InfoValue::Ints(counts))
            .with("tiles", InfoValue::Ints(tiles))
    }

    fn subscores(&self, info: &InfoRecord) -> Vec<f64> {
        let counts = info.ints("counts");
        let count = |kind: i64| counts[kind as usize] as usize;
        let cells = self.cells();
        let tiles = [
            count_score(count(START), 1, cells),
            count_score(count(EXIT), 1, cells),
            at_least(count(DIAMOND), self.params.usize("min_diamonds"), cells),
            at_most(count(SPIKE), self.params.usize("max_spikes"), cells),
        ];
        let solvable = info.flag("solvable");
        let jumps = if solvable { info.int("jumps") as f64 / self.params.real("min_jumps") } else { 0.0 };
        let reach = match count(DIAMOND) {
            0 => 1.0,
            n => info.int("reachable_diamonds") as f64 / n as f64,
        };
        vec![
            tiles.iter().sum::<f64>() / tiles.len() as f64,
            f64::from(u8::from(solvable)),
            jumps.min(1.0),
            reach,
        ]
    }

    fn diversity(&self, a: &InfoRecord, b: &InfoRecord) -> f64 {
        tile_diversity(a, b, self.params.real("diversity_fraction") * self.cells() as f64)
    }

    fn controllability(&self, info: &InfoRecord, control: &Value) -> f64 {
        let field = |name: &str| control.field_int(name).expect("control has every field");
        let coord = |pos: &[i64], axis: usize| pos.get(axis).map(|&v| v as usize);
        let (start, exit) = (info.ints("start"), info.ints("exit"));
        let (w, h) = (self.width as i64 - 1, self.height as i64 - 1);
        let diamonds = info.ints("counts")[DIAMOND as usize] as f64;
        let target = field("diamonds") as f64;
        let terms = [
            coordinate_closeness(coord(start, 0), field("start_x"), COORD_WINDOW, w),
            coordinate_closeness(coord(start, 1), field("start_y"), COORD_WINDOW, h),
            coordinate_closeness(coord(exit, 0), field("exit_x"), COORD_WINDOW, w),
            coordinate_closeness(coord(exit, 1), field("exit_y"), COORD_WINDOW, h),
            closeness(diamonds, (target, target), (0.0, self.cells() as f64)),
        ];
        terms.iter().sum::<f64>() / terms.len() as f64
    }

    fn render(&self, content: &Value) -> Rendering {
        let tiles = grid_tiles(&self.content, content);
        let palette = [[20, 20, 60], [150, 80, 40], [200, 200, 210], [60, 220, 240], [40, 200, 40], [240, 120, 0]];
        tile_image(&tiles, self.width, self.height, &palette)
    }
}
