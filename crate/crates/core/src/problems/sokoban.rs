//! Sokoban: small push-puzzles that need a minimum number of moves to solve.

use crate::info::{InfoRecord, InfoValue};
use crate::problem::{at_least, closeness, count_score, ParamValue, ProblemContract, Rendering, VariantParams};
use crate::solvers::{solve_sokoban_bounded, SokobanLevel, SokobanOutcome, SokobanTile};
use crate::space::{SpaceDescriptor, Value};

use super::{grid_tiles, tile_counts, tile_image};

pub const FLOOR: i64 = 0;
pub const WALL: i64 = 1;
pub const PLAYER: i64 = 2;
pub const CRATE: i64 = 3;
pub const TARGET: i64 = 4;
const KINDS: usize = 5;

/// Search budget per level; levels that exhaust it count as unsolvable.
pub const SOLVER_EXPANSIONS: usize = 50_000;

#[derive(Debug, Clone)]
pub struct Sokoban {
    params: VariantParams,
    width: usize,
    height: usize,
    content: SpaceDescriptor,
    control: SpaceDescriptor,
}

impl Sokoban {
    pub fn default_params() -> VariantParams {
        VariantParams::new([
            ("width", ParamValue::Int(5)),
            ("height", ParamValue::Int(5)),
            ("min_solution", ParamValue::Int(10)),
            ("min_crates", ParamValue::Int(1)),
            ("max_crates", ParamValue::Int(3)),
            ("diversity_actions", ParamValue::Int(5)),
        ])
    }

    pub fn new(params: VariantParams) -> Self {
        let (width, height) = (params.usize("width"), params.usize("height"));
        Self {
            content: SpaceDescriptor::grid2d(SpaceDescriptor::discrete(KINDS as u32), width, height),
            control: SpaceDescriptor::record([(
                "crates",
                SpaceDescriptor::range(params.int("min_crates"), params.int("max_crates")),
            )]),
            params,
            width,
            height,
        }
    }

    fn cells(&self) -> usize {
        self.width * self.height
    }

    /// The solver's view of the level, when it has one player and as many crates as targets.
    pub fn level(&self, tiles: &[i64]) -> Option<SokobanLevel> {
        let converted: Vec<SokobanTile> = tiles
            .iter()
            .map(|&t| match t {
                WALL => SokobanTile::Wall,
                PLAYER => SokobanTile::Player,
                CRATE => SokobanTile::Crate,
                TARGET => SokobanTile::Target,
                _ => SokobanTile::Floor,
            })
            .collect();
        SokobanLevel::new(self.width, self.height, &converted).ok()
    }
}

impl Default for Sokoban {
    fn default() -> Self {
        Self::new(Self::default_params())
    }
}

/// Edit distance between two move strings.
pub fn levenshtein(a: &[u8], b: &[u8]) -> usize {
    let mut row: Vec<usize> = (0..=b.len()).collect();
    for (i, &ca) in a.iter().enumerate() {
        let mut diag = row[0];
        row[0] = i + 1;
        for (j, &cb) in b.iter().enumerate() {
            let next = (diag + usize::from(ca != cb)).min(row[j] + 1).min(row[j + 1] + 1);
            diag = row[j + 1];
            row[j + 1] = next;
        }
    }
    row[b.len()]
}

impl ProblemContract for Sokoban {
    fn name(&self) -> &str {
        "sokoban-v0"
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
        let outcome = match self.level(&tiles) {
            Some(level) if counts[CRATE as usize] > 0 => solve_sokoban_bounded(&level, SOLVER_EXPANSIONS),
            _ => SokobanOutcome::Unsolvable,
        };
        let solution: String = outcome.solution().map_or(String::new(), |m| m.iter().map(|mv| mv.letter()).collect());
        InfoRecord::new()
            .with("counts", InfoValue::Ints(counts))
            .with("solvable", InfoValue::Bool(outcome.solution().is_some()))
            .with("budget_exceeded", InfoValue::Bool(outcome == SokobanOutcome::BudgetExceeded))
            .with("solution_length", InfoValue::Int(solution.len() as i64))
            .with("solution", InfoValue::Text(solution))
            .with("tiles", InfoValue::Ints(tiles))
    }

    fn subscores(&self, info: &InfoRecord) -> Vec<f64> {
        let counts = info.ints("counts");
        let cells = self.cells();
        let crates = counts[CRATE as usize] as usize;
        let targets = counts[TARGET as usize] as usize;
        let solvable = info.flag("solvable");
        let length = if solvable {
            (info.int("solution_length") as f64 / self.params.real("min_solution")).min(1.0)
        } else {
            0.0
        };
        vec![
            count_score(counts[PLAYER as usize] as usize, 1, cells),
            at_least(crates, 1, cells),
            1.0 - crates.abs_diff(targets) as f64 / cells as f64,
            f64::from(u8::from(solvable)),
            length,
        ]
    }

    /// Solutions at least `diversity_actions` edits apart are fully diverse;
    /// a solvable and an unsolvable level always are.
    fn diversity(&self, a: &InfoRecord, b: &InfoRecord) -> f64 {
        if a.flag("solvable") != b.flag("solvable") {
            return 1.0;
        }
        let edits = levenshtein(a.text("solution").as_bytes(), b.text("solution").as_bytes());
        (edits as f64 / self.params.real("diversity_actions")).min(1.0)
    }

    fn controllability(&self, info: &InfoRecord, control: &Value) -> f64 {
        let target = control.field_int("crates").expect("control has crates") as f64;
        let crates = info.ints("counts")[CRATE as usize] as f64;
        closeness(crates, (target, target), (0.0, self.cells() as f64))
    }

    fn render(&self, content: &Value) -> Rendering {
        let tiles = grid_tiles(&self.content, content);
        let palette = [[200, 190, 160], [90, 60, 40], [30, 120, 220], [200, 140, 40], [220, 60, 60]];
        tile_image(&tiles, self.width, self.height, &palette)
    }
}
