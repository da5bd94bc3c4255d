//! Maze-based constructive generation: a Prim spanning-tree maze, optional
//! wall erasure, then random object placement.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

use crate::error::CoreError;
use crate::problem::ProblemContract;
use crate::problems::{binary, sokoban, zelda};
use crate::space::{SpaceDescriptor, Value};

pub const CONSTRUCTIVE_PROBLEMS: [&str; 3] = ["binary-v0", "sokoban-v0", "zelda-v0"];

/// A perfect maze on a `width × height` grid: `true` marks a wall.
///
/// Rooms sit on even coordinates; Prim's algorithm grows a spanning tree over
/// them by carving the wall cell between a visited room and a new one.
pub fn prim_maze<R: Rng + ?Sized>(width: usize, height: usize, rng: &mut R) -> Vec<bool> {
    let mut wall = vec![true; width * height];
    let (rooms_x, rooms_y) = (width.div_ceil(2), height.div_ceil(2));
    let mut visited = vec![false; rooms_x * rooms_y];
    let start = (rng.random_range(0..rooms_x), rng.random_range(0..rooms_y));
    let mut frontier: Vec<((usize, usize), (usize, usize))> = Vec::new();
    let mut visit = |(rx, ry): (usize, usize), wall: &mut Vec<bool>, frontier: &mut Vec<_>| {
        visited[ry * rooms_x + rx] = true;
        wall[2 * ry * width + 2 * rx] = false;
        for (dx, dy) in [(-1isize, 0isize), (1, 0), (0, -1), (0, 1)] {
            let (Some(nx), Some(ny)) = (rx.checked_add_signed(dx), ry.checked_add_signed(dy)) else { continue };
            if nx < rooms_x && ny < rooms_y {
                frontier.push(((rx, ry), (nx, ny)));
            }
        }
    };
    visit(start, &mut wall, &mut frontier);
    while !frontier.is_empty() {
        let (from, to) = frontier.swap_remove(rng.random_range(0..frontier.len()));
        let seen = |(x, y): (usize, usize), wall: &Vec<bool>| !wall[2 * y * width + 2 * x];
        if seen(to, &wall) {
            continue;
        }
        let (mx, my) = (from.0 + to.0, from.1 + to.1);
        wall[my * width + mx] = false;
        visit(to, &mut wall, &mut frontier);
    }
    wall
}

fn grid_dims(space: &SpaceDescriptor) -> Result<(usize, usize), CoreError> {
    match space {
        SpaceDescriptor::Grid2D { width, height, .. } => Ok((*width, *height)),
        _ => Err(CoreError::UnsupportedProblem("content space is not a 2D grid".into())),
    }
}

/// Removes walls uniformly at random until more than half are gone.
fn erase_walls<R: Rng + ?Sized>(wall: &mut [bool], rng: &mut R) {
    let mut walls: Vec<usize> = (0..wall.len()).filter(|&i| wall[i]).collect();
    walls.shuffle(rng);
    let keep = walls.len() / 2 + 1;
    for i in walls.into_iter().take(keep) {
        wall[i] = false;
    }
}

fn blocked_sides(wall: &[bool], width: usize, height: usize, i: usize) -> usize {
    let (x, y) = (i % width, i / width);
    [
        x == 0 || wall[i - 1],
        x + 1 == width || wall[i + 1],
        y == 0 || wall[i - width],
        y + 1 == height || wall[i + width],
    ]
    .iter()
    .filter(|&&b| b)
    .count()
}

/// Takes up to `n` distinct cells from `cells` at random, removing them.
fn take<R: Rng + ?Sized>(cells: &mut Vec<usize>, n: usize, rng: &mut R) -> Vec<usize> {
    cells.shuffle(rng);
    let k = n.min(cells.len());
    cells.drain(..k).collect()
}

fn to_grid(tiles: &[i64], width: usize) -> Value {
    let rows: Vec<Vec<i64>> = tiles.chunks(width).map(<[i64]>::to_vec).collect();
    Value::grid(&rows)
}

/// One `(content, control)` pair for a supported problem; the control is
/// sampled from the control space (Sokoban uses its crate count).
pub fn run_constructive<R: Rng + ?Sized>(problem: &dyn ProblemContract, rng: &mut R) -> Result<(Value, Value), CoreError> {
    let name = problem.name();
    if !CONSTRUCTIVE_PROBLEMS.contains(&name) {
        return Err(CoreError::UnsupportedProblem(name.to_string()));
    }
    let (width, height) = grid_dims(problem.content_space())?;
    let control = problem.control_space().sample(rng);
    let mut wall = prim_maze(width, height, rng);
    if name == "binary-v0" {
        let tiles: Vec<i64> = wall.iter().map(|&w| if w { binary::SOLID } else { binary::EMPTY }).collect();
        return Ok((to_grid(&tiles, width), control));
    }
    erase_walls(&mut wall, rng);
    let mut floor: Vec<usize> = (0..wall.len()).filter(|&i| !wall[i]).collect();
    let tiles = if name == "sokoban-v0" {
        let mut tiles: Vec<i64> = wall.iter().map(|&w| if w { sokoban::WALL } else { sokoban::FLOOR }).collect();
        let crates = control.field_int("crates").unwrap_or(1).max(0) as usize;
        let mut open: Vec<usize> =
            floor.iter().copied().filter(|&i| blocked_sides(&wall, width, height, i) <= 1).collect();
        let placed = take(&mut open, crates, rng);
        floor.retain(|i| !placed.contains(i));
        for &i in &placed {
            tiles[i] = sokoban::CRATE;
        }
        for i in take(&mut floor, placed.len(), rng) {
            tiles[i] = sokoban::TARGET;
        }
        for i in take(&mut floor, 1, rng) {
            tiles[i] = sokoban::PLAYER;
        }
        tiles
    } else {
        let mut tiles: Vec<i64> = wall.iter().map(|&w| if w { zelda::SOLID } else { zelda::EMPTY }).collect();
        let enemies = *[1usize, 2, 3].choose(rng).expect("non-empty");
        for (kind, n) in [(zelda::PLAYER, 1), (zelda::KEY, 1), (zelda::DOOR, 1), (zelda::ENEMY, enemies)] {
            for i in take(&mut floor, n, rng) {
                tiles[i] = kind;
            }
        }
        tiles
    };
    Ok((to_grid(&tiles, width), control))
}

/// `n` independent constructive outputs.
pub fn constructive_batch<R: Rng + ?Sized>(
    problem: &dyn ProblemContract,
    n: usize,
    rng: &mut R,
) -> Result<Vec<(Value, Value)>, CoreError> {
    (0..n).map(|_| run_constructive(problem, rng)).collect()
}
