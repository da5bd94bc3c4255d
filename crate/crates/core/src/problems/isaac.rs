//! Isaac: a floor plan of rooms with a start, a boss, a treasure room and a shop.

use crate::info::{InfoRecord, InfoValue};
use crate::problem::{closeness, connectivity_score, count_score, ParamValue, ProblemContract, Rendering, RgbImage, VariantParams, TILE_PX};
use crate::solvers::{component_labels, shortest_path, GridMap};
use crate::space::{SpaceDescriptor, Value};

use super::{first_cell, grid_tiles, tile_counts, tile_diversity};

pub const NONE: i64 = 0;
pub const NORMAL: i64 = 1;
pub const START: i64 = 2;
pub const BOSS: i64 = 3;
pub const TREASURE: i64 = 4;
pub const SHOP: i64 = 5;
const KINDS: usize = 6;

/// Total rooms may differ from the target by this much.
const ROOM_WINDOW: f64 = 1.0;

#[derive(Debug, Clone)]
pub struct Isaac {
    params: VariantParams,
    width: usize,
    height: usize,
    content: SpaceDescriptor,
    control: SpaceDescriptor,
}

impl Isaac {
    pub fn default_params() -> VariantParams {
        VariantParams::new([
            ("width", ParamValue::Int(8)),
            ("height", ParamValue::Int(8)),
            ("min_rooms", ParamValue::Int(5)),
            ("max_rooms", ParamValue::Int(20)),
            ("min_boss_distance", ParamValue::Int(3)),
            ("diversity_fraction", ParamValue::Real(0.3)),
        ])
    }

    pub fn new(params: VariantParams) -> Self {
        let (width, height) = (params.usize("width"), params.usize("height"));
        Self {
            content: SpaceDescriptor::grid2d(SpaceDescriptor::discrete(KINDS as u32), width, height),
            control: SpaceDescriptor::record([(
                "rooms",
                SpaceDescriptor::range(params.int("min_rooms"), params.int("max_rooms")),
            )]),
            params,
            width,
            height,
        }
    }

    fn cells(&self) -> usize {
        self.width * self.height
    }
}

impl Default for Isaac {
    fn default() -> Self {
        Self::new(Self::default_params())
    }
}

impl ProblemContract for Isaac {
    fn name(&self) -> &str {
        "isaac-v0"
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
        let map = GridMap::from_tiles(self.width, self.height, &tiles, |t| t != NONE);
        let (_, components) = component_labels(&map);
        let boss_distance = match (first_cell(&tiles, self.width, START), first_cell(&tiles, self.width, BOSS)) {
            (Some(s), Some(b)) => {
                let path = shortest_path(&map, s, b);
                if path.reachable {
                    path.distance as i64
                } else {
                    0
                }
            }
            _ => 0,
        };
        let w = self.width;
        let treasure_by_boss = (0..tiles.len()).any(|i| {
            tiles[i] == TREASURE && {
                let (x, y) = (i % w, i / w);
                [(x.wrapping_sub(1), y), (x + 1, y), (x, y.wrapping_sub(1)), (x, y + 1)]
                    .into_iter()
                    .any(|(nx, ny)| nx < w && ny < self.height && tiles[ny * w + nx] == BOSS)
            }
        });
        InfoRecord::new()
            .with("counts", InfoValue::Ints(tile_counts(&tiles, KINDS)))
            .with("rooms", InfoValue::Int(map.passable_count() as i64))
            .with("components", InfoValue::Int(components as i64))
            .with("boss_distance", InfoValue::Int(boss_distance))
            .with("treasure_by_boss", InfoValue::Bool(treasure_by_boss))
            .with("tiles", InfoValue::Ints(tiles))
    }

    fn subscores(&self, info: &InfoRecord) -> Vec<f64> {
        let counts = info.ints("counts");
        let cells = self.cells();
        let special = [START, BOSS, TREASURE, SHOP]
            .iter()
            .map(|&k| count_score(counts[k as usize] as usize, 1, cells))
            .sum::<f64>()
            / 4.0;
        let distance = info.int("boss_distance") as f64 / self.params.real("min_boss_distance");
        let rooms = closeness(
            info.int("rooms") as f64,
            (self.params.real("min_rooms"), self.params.real("max_rooms")),
            (0.0, cells as f64),
        );
        vec![
            connectivity_score(info.int("components") as usize),
            special,
            distance.min(1.0),
            f64::from(u8::from(!info.flag("treasure_by_boss"))),
            rooms,
        ]
    }

    fn diversity(&self, a: &InfoRecord, b: &InfoRecord) -> f64 {
        tile_diversity(a, b, self.params.real("diversity_fraction") * self.cells() as f64)
    }

    fn controllability(&self, info: &InfoRecord, control: &Value) -> f64 {
        let target = control.field_int("rooms").expect("control has rooms") as f64;
        closeness(
            info.int("rooms") as f64,
            (target - ROOM_WINDOW, target + ROOM_WINDOW),
            (0.0, self.cells() as f64),
        )
    }

    /// Rooms as inset squares with a marker for special rooms, doors between neighbours.
    fn render(&self, content: &Value) -> Rendering {
        let tiles = grid_tiles(&self.content, content);
        let cell = TILE_PX * 2;
        let mut img = RgbImage::new(self.width as u32 * cell, self.height as u32 * cell, [20, 20, 20]);
        let marker = |t: i64| match t {
            START => Some([40, 200, 40]),
            BOSS => Some([220, 30, 30]),
            TREASURE => Some([240, 200, 0]),
            SHOP => Some([40, 120, 230]),
            _ => None,
        };
        for (i, &t) in tiles.iter().enumerate() {
            if t == NONE {
                continue;
            }
            let (x, y) = ((i % self.width) as u32 * cell, (i / self.width) as u32 * cell);
            img.fill_rect(x + 3, y + 3, cell - 6, cell - 6, [170, 160, 150]);
            if let Some(color) = marker(t) {
                img.fill_rect(x + cell / 3, y + cell / 3, cell / 3, cell / 3, color);
            }
            let (cx, cy) = (i % self.width, i / self.width);
            if cx + 1 < self.width && tiles[i + 1] != NONE {
                img.fill_rect(x + cell - 3, y + cell / 2 - 2, 6, 4, [170, 160, 150]);
            }
            if cy + 1 < self.height && tiles[i + self.width] != NONE {
                img.fill_rect(x + cell / 2 - 2, y + cell - 3, 4, 6, [170, 160, 150]);
            }
        }
        Rendering::Image(img)
    }
}
