//! Solvers checked against brute-force oracles written independently in `common`.

use pcgbench_core::solvers::{PlatformLevel, PlatformTile};

mod common;
use common::sweeps;

#[test]
fn grid_bfs_matches_floyd_warshall_on_random_8x8_grids() {
    sweeps::grid_sweep();
}

#[test]
fn sokoban_matches_exhaustive_bfs_on_every_3x3_single_crate_level() {
    sweeps::sokoban_3x3_sweep();
}

#[test]
fn sokoban_matches_exhaustive_bfs_on_random_5x5_levels() {
    sweeps::sokoban_random_sweep();
}

#[test]
fn platformer_matches_layered_bfs_on_small_levels() {
    sweeps::platformer_sweep();
}

#[test]
fn dictionary_lookup_matches_naive_scan() {
    sweeps::dictionary_sweep();
}

#[test]
fn platformer_tiles_parse_as_documented() {
    let level = PlatformLevel::parse("S^*E\n####").unwrap();
    assert_eq!(level.tile(0, 0), PlatformTile::Start);
    assert_eq!(level.tile(1, 0), PlatformTile::Spike);
    assert_eq!(level.tile(-1, 0), PlatformTile::Solid);
}
