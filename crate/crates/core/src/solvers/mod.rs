//! Deterministic game-reasoning agents used by the problem evaluators.

pub mod dictionary;
pub mod grid;
pub mod platformer;
pub mod sokoban;
pub mod voxel;

pub use dictionary::{Dictionary, FormableWord};
pub use grid::{component_labels, connected_components, graph_diameter, shortest_path, Cell, GridMap, Move, PathResult};
pub use platformer::{reachable_cells, solve_platformer, PlatformAction, PlatformLevel, PlatformTile, PlatformTrace, PlatformerPhysics};
pub use sokoban::{solve_sokoban, solve_sokoban_bounded, SokobanLevel, SokobanOutcome, SokobanTile};
pub use voxel::{check_support, Block, BlockKind, BoundingBox, SupportReport};
