//! MiniDungeons: reach the exit alive after fighting through monsters.
//!
//! The hero walks a shortest route (walls are the only obstacles) and, among
//! those routes, takes the one that kills the most monsters while staying
//! alive. Entering a monster costs `monster_damage` hp, entering a potion
//! restores `potion_heal` hp with no cap, and the hero dies at 0 hp.

use crate::info::{InfoRecord, InfoValue};
use crate::problem::{at_least, connectivity_score, count_score, closeness, ParamValue, ProblemContract, Rendering, VariantParams};
use crate::solvers::{component_labels, GridMap};
use crate::space::{SpaceDescriptor, Value};

use super::{coordinate_closeness, first_cell, grid_tiles, tile_counts, tile_diversity, tile_image};

pub const FLOOR: i64 = 0;
pub const WALL: i64 = 1;
pub const START: i64 = 2;
pub const EXIT: i64 = 3;
pub const MONSTER: i64 = 4;
pub const TREASURE: i64 = 5;
pub const POTION: i64 = 6;
const KINDS: usize = 7;

/// Start and exit coordinates may be off by this many cells.
const COORD_WINDOW: i64 = 1;

#[derive(Debug, Clone)]
pub struct MiniDungeons {
    params: VariantParams,
    width: usize,
    height: usize,
    content: SpaceDescriptor,
    control: SpaceDescriptor,
}

/// Outcome of the hero's run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DungeonRun {
    pub steps: usize,
    pub kills: usize,
    pub potions: usize,
    pub hp_left: i64,
}

impl MiniDungeons {
    pub fn default_params() -> VariantParams {
        VariantParams::new([
            ("width", ParamValue::Int(8)),
            ("height", ParamValue::Int(12)),
            ("kill_target", ParamValue::Int(12)),
            ("player_hp", ParamValue::Int(40)),
            ("monster_damage", ParamValue::Int(5)),
            ("potion_heal", ParamValue::Int(10)),
            ("min_monsters", ParamValue::Int(12)),
            ("min_potions", ParamValue::Int(2)),
            ("min_treasures", ParamValue::Int(0)),
            ("max_treasures", ParamValue::Int(5)),
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
                ("treasures", SpaceDescriptor::range(0, params.int("max_treasures"))),
            ]),
            params,
            width,
            height,
        }
    }

    fn cells(&self) -> usize {
        self.width * self.height
    }

    /// Plays the level from the first start to the first exit (row-major);
    /// `None` when either is missing or every shortest route kills the hero.
    pub fn play(&self, tiles: &[i64]) -> Option<DungeonRun> {
        let first = |kind| tiles.iter().position(|&t| t == kind);
        let (start, exit) = (first(START)?, first(EXIT)?);
        let map = GridMap::from_tiles(self.width, self.height, tiles, |t| t != WALL);
        let from_start = map.distances_from(map.cell(start));
        let from_exit = map.distances_from(map.cell(exit));
        let total = from_start[exit]?;

        let hp0 = self.params.int("player_hp");
        let damage = self.params.int("monster_damage");
        let heal = self.params.int("potion_heal");
        let monsters = tiles.iter().filter(|&&t| t == MONSTER).count();
        // best[cell][kills] = most potions drunk on a surviving prefix.
        let mut best: Vec<Vec<Option<i64>>> = vec![vec![None; monsters + 1]; tiles.len()];
        best[start][0] = Some(0);
        let mut layers: Vec<Vec<usize>> = vec![Vec::new(); total as usize + 1];
        for (i, (ds, de)) in from_start.iter().zip(&from_exit).enumerate() {
            if let (Some(ds), Some(de)) = (ds, de) {
                if ds + de == total {
                    layers[*ds as usize].push(i);
                }
            }
        }
        for layer in &layers[..total as usize] {
            for &cell in layer {
                let (x, y) = map.cell(cell);
                let next: Vec<usize> = [(x.wrapping_sub(1), y), (x + 1, y), (x, y.wrapping_sub(1)), (x, y + 1)]
                    .into_iter()
                    .filter(|&c| map.is_passable(c))
                    .map(|c| map.index(c))
                    .filter(|&n| {
                        from_start[n] == Some(from_start[cell].unwrap() + 1)
                            && from_exit[n].is_some_and(|d| d + from_start[n].unwrap() == total)
                    })
                    .collect();
                for kills in 0..=monsters {
                    let Some(potions) = best[cell][kills] else { continue };
                    for &n in &next {
                        let k = kills + usize::from(tiles[n] == MONSTER);
                        let p = potions + i64::from(tiles[n] == POTION);
                        if hp0 - damage * k as i64 + heal * p <= 0 {
                            continue;
                        }
                        if best[n][k].is_none_or(|b| b < p) {
                            best[n][k] = Some(p);
                        }
                    }
                }
            }
        }
        let (kills, potions) = best[exit]
            .iter()
            .enumerate()
            .rev()
            .find_map(|(k, p)| p.map(|p| (k, p)))?;
        Some(DungeonRun {
            steps: total as usize,
            kills,
            potions: potions as usize,
            hp_left: hp0 - damage * kills as i64 + heal * potions,
        })
    }
}

impl Default for MiniDungeons {
    fn default() -> Self {
        Self::new(Self::default_params())
    }
}

impl ProblemContract for MiniDungeons {
    fn name(&self) -> &str {
        "minidungeons-v0"
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
        let map = GridMap::from_tiles(self.width, self.height, &tiles, |t| t != WALL);
        let (_, components) = component_labels(&map);
        let run = self.play(&tiles);
        let position = |kind| {
            first_cell(&tiles, self.width, kind).map_or(Vec::new(), |(x, y)| vec![x as i64, y as i64])
        };
        InfoRecord::new()
            .with("counts", InfoValue::Ints(tile_counts(&tiles, KINDS)))
            .with("components", InfoValue::Int(components as i64))
            .with("solvable", InfoValue::Bool(run.is_some()))
            .with("kills", InfoValue::Int(run.map_or(0, |r| r.kills as i64)))
            .with("hp_left", InfoValue::Int(run.map_or(0, |r| r.hp_left)))
            .with("path_length", InfoValue::Int(run.map_or(0, |r| r.steps as i64)))
            .with("start", InfoValue::Ints(position(START)))
            .with("exit", InfoValue::Ints(position(EXIT)))
            .with("tiles", InfoValue::Ints(tiles))
    }

    fn subscores(&self, info: &InfoRecord) -> Vec<f64> {
        let counts = info.ints("counts");
        let count = |kind: i64| counts[kind as usize] as usize;
        let cells = self.cells();
        let tiles = [
            count_score(count(START), 1, cells),
            count_score(count(EXIT), 1, cells),
            at_least(count(MONSTER), self.params.usize("min_monsters"), cells),
            at_least(count(POTION), self.params.usize("min_potions"), cells),
            at_least(count(TREASURE), self.params.usize("min_treasures"), cells),
        ];
        let kills = info.int("kills") as f64 / self.params.real("kill_target");
        vec![
            tiles.iter().sum::<f64>() / tiles.len() as f64,
            connectivity_score(info.int("components") as usize),
            f64::from(u8::from(info.flag("solvable"))),
            kills.min(1.0),
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
        let treasures = info.ints("counts")[TREASURE as usize] as f64;
        let target = field("treasures") as f64;
        let terms = [
            coordinate_closeness(coord(start, 0), field("start_x"), COORD_WINDOW, w),
            coordinate_closeness(coord(start, 1), field("start_y"), COORD_WINDOW, h),
            coordinate_closeness(coord(exit, 0), field("exit_x"), COORD_WINDOW, w),
            coordinate_closeness(coord(exit, 1), field("exit_y"), COORD_WINDOW, h),
            closeness(treasures, (target, target), (0.0, self.cells() as f64)),
        ];
        terms.iter().sum::<f64>() / terms.len() as f64
    }

    fn render(&self, content: &Value) -> Rendering {
        let tiles = grid_tiles(&self.content, content);
        let palette = [
            [210, 200, 170],
            [60, 50, 50],
            [40, 160, 40],
            [40, 90, 220],
            [200, 30, 30],
            [240, 200, 0],
            [220, 90, 220],
        ];
        tile_image(&tiles, self.width, self.height, &palette)
    }
}
