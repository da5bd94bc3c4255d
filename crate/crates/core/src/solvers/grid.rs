//! Breadth-first path analysis on 4-connected grids.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::SolverError;

/// A cell as `(x, y)`.
pub type Cell = (usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    Up,
    Down,
    Left,
    Right,
}

impl Move {
    pub const ALL: [Move; 4] = [Move::Up, Move::Down, Move::Left, Move::Right];

    pub fn delta(self) -> (isize, isize) {
        match self {
            Move::Up => (0, -1),
            Move::Down => (0, 1),
            Move::Left => (-1, 0),
            Move::Right => (1, 0),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Move::Up => 'u',
            Move::Down => 'd',
            Move::Left => 'l',
            Move::Right => 'r',
        }
    }
}

/// Passability grid with optional per-cell annotations (problem-defined codes).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridMap {
    width: usize,
    height: usize,
    passable: Vec<bool>,
    annotations: Vec<u8>,
}

impl GridMap {
    pub fn new(width: usize, height: usize, passable: Vec<bool>) -> Self {
        assert_eq!(passable.len(), width * height, "passable mask must cover the grid");
        Self { width, height, annotations: vec![0; passable.len()], passable }
    }

    pub fn open(width: usize, height: usize) -> Self {
        Self::new(width, height, vec![true; width * height])
    }

    /// Builds a map from row-major tiles, passable where `is_passable` holds.
    pub fn from_tiles(width: usize, height: usize, tiles: &[i64], is_passable: impl Fn(i64) -> bool) -> Self {
        let mut map = Self::new(width, height, tiles.iter().map(|&t| is_passable(t)).collect());
        map.annotations = tiles.iter().map(|&t| t.clamp(0, 255) as u8).collect();
        map
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn index(&self, (x, y): Cell) -> usize {
        y * self.width + x
    }

    pub fn cell(&self, index: usize) -> Cell {
        (index % self.width, index / self.width)
    }

    pub fn is_passable(&self, cell: Cell) -> bool {
        cell.0 < self.width && cell.1 < self.height && self.passable[self.index(cell)]
    }

    pub fn set_passable(&mut self, cell: Cell, passable: bool) {
        let i = self.index(cell);
        self.passable[i] = passable;
    }

    pub fn annotation(&self, cell: Cell) -> u8 {
        self.annotations[self.index(cell)]
    }

    pub fn passable_count(&self) -> usize {
        self.passable.iter().filter(|&&p| p).count()
    }

    pub fn step(&self, (x, y): Cell, mv: Move) -> Option<Cell> {
        let (dx, dy) = mv.delta();
        let nx = x.checked_add_signed(dx)?;
        let ny = y.checked_add_signed(dy)?;
        (nx < self.width && ny < self.height).then_some((nx, ny))
    }

    fn neighbors(&self, index: usize, out: &mut [usize; 4]) -> usize {
        let (x, y) = self.cell(index);
        let mut n = 0;
        if y > 0 && self.passable[index - self.width] {
            out[n] = index - self.width;
            n += 1;
        }
        if y + 1 < self.height && self.passable[index + self.width] {
            out[n] = index + self.width;
            n += 1;
        }
        if x > 0 && self.passable[index - 1] {
            out[n] = index - 1;
            n += 1;
        }
        if x + 1 < self.width && self.passable[index + 1] {
            out[n] = index + 1;
            n += 1;
        }
        n
    }

    /// BFS distances in cell steps from `src` to every passable cell.
    pub fn distances_from(&self, src: Cell) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.passable.len()];
        if !self.is_passable(src) {
            return dist;
        }
        let mut queue = VecDeque::new();
        let s = self.index(src);
        dist[s] = Some(0);
        queue.push_back(s);
        let mut buf = [0; 4];
        while let Some(i) = queue.pop_front() {
            let d = dist[i].expect("queued cells have a distance");
            let n = self.neighbors(i, &mut buf);
            for &j in &buf[..n] {
                if dist[j].is_none() {
                    dist[j] = Some(d + 1);
                    queue.push_back(j);
                }
            }
        }
        dist
    }
}

/// Result of a point-to-point search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathResult {
    pub reachable: bool,
    pub distance: usize,
    pub actions: Vec<Move>,
}

/// Breadth-first optimal 4-neighbour path from `src` to `dst`.
pub fn shortest_path(map: &GridMap, src: Cell, dst: Cell) -> PathResult {
    let unreachable = PathResult { reachable: false, distance: 0, actions: Vec::new() };
    if src == dst {
        return PathResult { reachable: true, distance: 0, actions: Vec::new() };
    }
    if !map.is_passable(src) || !map.is_passable(dst) {
        return unreachable;
    }
    let n = map.width * map.height;
    let mut parent: Vec<Option<(usize, Move)>> = vec![None; n];
    let mut seen = vec![false; n];
    let (s, t) = (map.index(src), map.index(dst));
    seen[s] = true;
    let mut queue = VecDeque::from([s]);
    while let Some(i) = queue.pop_front() {
        if i == t {
            break;
        }
        for mv in Move::ALL {
            let Some(next) = map.step(map.cell(i), mv) else { continue };
            let j = map.index(next);
            if map.passable[j] && !seen[j] {
                seen[j] = true;
                parent[j] = Some((i, mv));
                queue.push_back(j);
            }
        }
    }
    if !seen[t] {
        return unreachable;
    }
    let mut actions = Vec::new();
    let mut cur = t;
    while let Some((prev, mv)) = parent[cur] {
        actions.push(mv);
        cur = prev;
    }
    actions.reverse();
    PathResult { reachable: true, distance: actions.len(), actions }
}

/// Number of maximal 4-connected passable regions.
pub fn connected_components(map: &GridMap) -> usize {
    component_labels(map).1
}

/// Component label per cell (`usize::MAX` for impassable cells) and the component count.
pub fn component_labels(map: &GridMap) -> (Vec<usize>, usize) {
    let n = map.passable.len();
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    let mut stack = Vec::new();
    let mut buf = [0; 4];
    for start in 0..n {
        if !map.passable[start] || label[start] != usize::MAX {
            continue;
        }
        label[start] = count;
        stack.push(start);
        while let Some(i) = stack.pop() {
            let n = map.neighbors(i, &mut buf);
            for &j in &buf[..n] {
                if label[j] == usize::MAX {
                    label[j] = count;
                    stack.push(j);
                }
            }
        }
        count += 1;
    }
    (label, count)
}

/// Longest shortest-path distance between two mutually reachable passable cells.
pub fn graph_diameter(map: &GridMap) -> Result<usize, SolverError> {
    let n = map.passable.len();
    if !map.passable.iter().any(|&p| p) {
        return Err(SolverError::NoPassableCell);
    }
    let mut dist = vec![u32::MAX; n];
    let mut queue = Vec::with_capacity(n);
    let mut buf = [0; 4];
    let mut best = 0u32;
    for s in 0..n {
        if !map.passable[s] {
            continue;
        }
        dist.iter_mut().for_each(|d| *d = u32::MAX);
        queue.clear();
        dist[s] = 0;
        queue.push(s);
        let mut head = 0;
        while head < queue.len() {
            let i = queue[head];
            head += 1;
            let d = dist[i];
            best = best.max(d);
            let n = map.neighbors(i, &mut buf);
            for &j in &buf[..n] {
                if dist[j] == u32::MAX {
                    dist[j] = d + 1;
                    queue.push(j);
                }
            }
        }
    }
    Ok(best as usize)
}
