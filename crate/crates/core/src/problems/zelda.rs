//! Zelda: a top-down dungeon where the player fetches a key and walks to the door.

use crate::info::{InfoRecord, InfoValue};
use crate::problem::{closeness, connectivity_score, count_score, ParamValue, ProblemContract, Rendering, VariantParams};
use crate::solvers::{component_labels, shortest_path, GridMap};
use crate::space::{SpaceDescriptor, Value};

use super::{first_cell, grid_tiles, tile_counts, tile_diversity, tile_image};

pub const EMPTY: i64 = 0;
pub const SOLID: i64 = 1;
pub const PLAYER: i64 = 2;
pub const KEY: i64 = 3;
pub const DOOR: i64 = 4;
pub const ENEMY: i64 = 5;
const KINDS: usize = 6;

/// Distances may exceed their target by this much and still count as controlled.
const CONTROL_WINDOW: f64 = 4.0;

#[derive(Debug, Clone)]
pub struct Zelda {
    params: VariantParams,
    width: usize,
    height: usize,
    content: SpaceDescriptor,
    control: SpaceDescriptor,
}

impl Zelda {
    pub fn default_params() -> VariantParams {
        VariantParams::new([
            ("width", ParamValue::Int(11)),
            ("height", ParamValue::Int(7)),
            ("solution_target", ParamValue::Int(16)),
            ("min_enemies", ParamValue::Int(1)),
            ("max_enemies", ParamValue::Int(3)),
            ("diversity_fraction", ParamValue::Real(0.3)),
        ])
    }

    pub fn new(params: VariantParams) -> Self {
        let (width, height) = (params.usize("width"), params.usize("height"));
        let max_dist = (width + height).saturating_sub(1).max(2) as i64;
        let dist = SpaceDescriptor::range(2, max_dist);
        Self {
            content: SpaceDescriptor::grid2d(SpaceDescriptor::discrete(KINDS as u32), width, height),
            control: SpaceDescriptor::record([("key_dist", dist.clone()), ("door_dist", dist)]),
            params,
            width,
            height,
        }
    }

    fn cells(&self) -> usize {
        self.width * self.height
    }
}

impl Default for Zelda {
    fn default() -> Self {
        Self::new(Self::default_params())
    }
}

fn distance(map: &GridMap, from: Option<(usize, usize)>, to: Option<(usize, usize)>) -> i64 {
    match (from, to) {
        (Some(a), Some(b)) => {
            let path = shortest_path(map, a, b);
            if path.reachable {
                path.distance as i64
            } else {
                0
            }
        }
        _ => 0,
    }
}

impl ProblemContract for Zelda {
    fn name(&self) -> &str {
        "zelda-v0"
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
        let map = GridMap::from_tiles(self.width, self.height, &tiles, |t| t != SOLID);
        let (_, components) = component_labels(&map);
        let player = first_cell(&tiles, self.width, PLAYER);
        let key = first_cell(&tiles, self.width, KEY);
        let door = first_cell(&tiles, self.width, DOOR);
        InfoRecord::new()
            .with("counts", InfoValue::Ints(tile_counts(&tiles, KINDS)))
            .with("components", InfoValue::Int(components as i64))
            .with("player_key", InfoValue::Int(distance(&map, player, key)))
            .with("key_door", InfoValue::Int(distance(&map, key, door)))
            .with("tiles", InfoValue::Ints(tiles))
    }

    fn subscores(&self, info: &InfoRecord) -> Vec<f64> {
        let counts = info.ints("counts");
        let count = |kind: i64| counts[kind as usize] as usize;
        let cells = self.cells();
        let enemies = closeness(
            count(ENEMY) as f64,
            (self.params.real("min_enemies"), self.params.real("max_enemies")),
            (0.0, cells as f64),
        );
        let solution = (info.int("player_key") + info.int("key_door")) as f64 / self.params.real("solution_target");
        vec![
            count_score(count(PLAYER), 1, cells),
            count_score(count(KEY), 1, cells),
            count_score(count(DOOR), 1, cells),
            enemies,
            connectivity_score(info.int("components") as usize),
            solution.min(1.0),
        ]
    }

    fn diversity(&self, a: &InfoRecord, b: &InfoRecord) -> f64 {
        tile_diversity(a, b, self.params.real("diversity_fraction") * self.cells() as f64)
    }

    fn controllability(&self, info: &InfoRecord, control: &Value) -> f64 {
        let bound = (0.0, self.cells() as f64);
        let term = |measured: i64, field: &str| {
            let target = control.field_int(field).expect("control has distance targets") as f64;
            closeness(measured as f64, (target, target + CONTROL_WINDOW), bound)
        };
        (term(info.int("player_key"), "key_dist") + term(info.int("key_door"), "door_dist")) / 2.0
    }

    fn render(&self, content: &Value) -> Rendering {
        let tiles = grid_tiles(&self.content, content);
        let palette = [[230, 220, 180], [70, 70, 70], [40, 160, 40], [240, 200, 0], [140, 80, 20], [200, 30, 30]];
        tile_image(&tiles, self.width, self.height, &palette)
    }
}
