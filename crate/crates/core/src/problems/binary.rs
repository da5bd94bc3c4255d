//! Binary: a maze of empty and solid tiles with one long connected path.

use crate::info::{InfoRecord, InfoValue};
use crate::problem::{closeness, connectivity_score, ParamValue, ProblemContract, Rendering, VariantParams};
use crate::solvers::{component_labels, graph_diameter, GridMap};
use crate::space::{SpaceDescriptor, Value};

use super::{grid_tiles, tile_diversity, tile_image};

pub const EMPTY: i64 = 0;
pub const SOLID: i64 = 1;

/// Width of the controllability window above the target diameter.
const CONTROL_WINDOW: f64 = 10.0;

#[derive(Debug, Clone)]
pub struct Binary {
    params: VariantParams,
    width: usize,
    height: usize,
    path_target: usize,
    content: SpaceDescriptor,
    control: SpaceDescriptor,
}

impl Binary {
    pub fn default_params() -> VariantParams {
        VariantParams::new([
            ("width", ParamValue::Int(14)),
            ("height", ParamValue::Int(14)),
            ("path_target", ParamValue::Int(28)),
            ("diversity_fraction", ParamValue::Real(0.3)),
        ])
    }

    pub fn new(params: VariantParams) -> Self {
        let (width, height) = (params.usize("width"), params.usize("height"));
        let path_target = params.usize("path_target");
        let control_hi = ((width * height / 2) as i64 - 1).max(path_target as i64);
        Self {
            content: SpaceDescriptor::grid2d(SpaceDescriptor::discrete(2), width, height),
            control: SpaceDescriptor::record([("path_target", SpaceDescriptor::range(path_target as i64, control_hi))]),
            params,
            width,
            height,
            path_target,
        }
    }

    pub fn map(&self, tiles: &[i64]) -> GridMap {
        GridMap::from_tiles(self.width, self.height, tiles, |t| t == EMPTY)
    }
}

impl Default for Binary {
    fn default() -> Self {
        Self::new(Self::default_params())
    }
}

impl ProblemContract for Binary {
    fn name(&self) -> &str {
        "binary-v0"
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
        let map = self.map(&tiles);
        let (_, components) = component_labels(&map);
        let diameter = graph_diameter(&map).unwrap_or(0);
        InfoRecord::new()
            .with("components", InfoValue::Int(components as i64))
            .with("diameter", InfoValue::Int(diameter as i64))
            .with("tiles", InfoValue::Ints(tiles))
    }

    fn subscores(&self, info: &InfoRecord) -> Vec<f64> {
        let path = (info.int("diameter") as f64 / self.path_target as f64).min(1.0);
        vec![connectivity_score(info.int("components") as usize), path]
    }

    fn diversity(&self, a: &InfoRecord, b: &InfoRecord) -> f64 {
        tile_diversity(a, b, self.params.real("diversity_fraction") * (self.width * self.height) as f64)
    }

    fn controllability(&self, info: &InfoRecord, control: &Value) -> f64 {
        let target = control.field_int("path_target").expect("control has path_target") as f64;
        closeness(
            info.int("diameter") as f64,
            (target, target + CONTROL_WINDOW),
            (0.0, (self.width * self.height) as f64),
        )
    }

    fn render(&self, content: &Value) -> Rendering {
        let tiles = grid_tiles(&self.content, content);
        tile_image(&tiles, self.width, self.height, &[[255, 255, 255], [0, 0, 0]])
    }
}
