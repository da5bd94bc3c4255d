//! A* over push states, counting every player step.
//!
//! The heuristic is the sum over crates of the push distance to the nearest
//! target, computed once per level by reverse ("pull") search from the targets
//! while ignoring other crates. It never overestimates and drops by at most
//! one per push, while every push costs at least one step, so the first goal
//! popped is optimal. Pushes onto dead squares (no push path to any target)
//! or into a frozen 2x2 block are pruned.

use std::cmp::Reverse;
use std::collections::hash_map::Entry;
use std::collections::{BinaryHeap, HashMap, VecDeque};

use crate::error::SolverError;
use crate::solvers::grid::Move;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SokobanTile {
    Wall,
    Floor,
    Target,
    Crate,
    CrateOnTarget,
    Player,
    PlayerOnTarget,
}

impl SokobanTile {
    /// Conventional text symbol (`#`, space, `.`, `$`, `*`, `@`, `+`).
    pub fn from_char(c: char) -> Option<Self> {
        Some(match c {
            '#' => SokobanTile::Wall,
            ' ' | '-' | '_' => SokobanTile::Floor,
            '.' => SokobanTile::Target,
            '$' => SokobanTile::Crate,
            '*' => SokobanTile::CrateOnTarget,
            '@' => SokobanTile::Player,
            '+' => SokobanTile::PlayerOnTarget,
            _ => return None,
        })
    }
}

/// A validated level. Everything outside the grid is wall.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SokobanLevel {
    width: usize,
    height: usize,
    walls: Vec<bool>,
    targets: Vec<bool>,
    crates: Vec<u16>,
    player: u16,
}

impl SokobanLevel {
    pub fn new(width: usize, height: usize, tiles: &[SokobanTile]) -> Result<Self, SolverError> {
        if tiles.len() != width * height || tiles.len() > usize::from(u16::MAX) {
            return Err(SolverError::Dimensions { width, height, cells: tiles.len() });
        }
        let mut walls = vec![false; tiles.len()];
        let mut targets = vec![false; tiles.len()];
        let mut crates = Vec::new();
        let mut players = Vec::new();
        for (i, tile) in tiles.iter().enumerate() {
            use SokobanTile::*;
            match tile {
                Wall => walls[i] = true,
                Floor => {}
                Target => targets[i] = true,
                Crate => crates.push(i as u16),
                CrateOnTarget => {
                    crates.push(i as u16);
                    targets[i] = true;
                }
                Player => players.push(i as u16),
                PlayerOnTarget => {
                    players.push(i as u16);
                    targets[i] = true;
                }
            }
        }
        if players.len() != 1 {
            return Err(SolverError::PlayerCount(players.len()));
        }
        let target_count = targets.iter().filter(|&&t| t).count();
        if crates.len() != target_count {
            return Err(SolverError::CrateTargetMismatch { crates: crates.len(), targets: target_count });
        }
        Ok(Self { width, height, walls, targets, crates, player: players[0] })
    }

    /// Parses rows of conventional symbols; all rows must share one width.
    pub fn parse(text: &str) -> Result<Self, SolverError> {
        let rows: Vec<&str> = text.lines().filter(|l| !l.is_empty()).collect();
        let width = rows.first().map_or(0, |r| r.chars().count());
        let mut tiles = Vec::new();
        for (line, row) in rows.iter().enumerate() {
            if row.chars().count() != width {
                return Err(SolverError::Dimensions { width, height: rows.len(), cells: line });
            }
            for c in row.chars() {
                tiles.push(SokobanTile::from_char(c).ok_or(SolverError::Dimensions {
                    width,
                    height: rows.len(),
                    cells: tiles.len(),
                })?);
            }
        }
        Self::new(width, rows.len(), &tiles)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn player(&self) -> usize {
        usize::from(self.player)
    }

    pub fn crates(&self) -> impl Iterator<Item = usize> + '_ {
        self.crates.iter().map(|&c| usize::from(c))
    }

    pub fn is_wall(&self, i: usize) -> bool {
        self.walls[i]
    }

    pub fn is_target(&self, i: usize) -> bool {
        self.targets[i]
    }

    /// Neighbouring cell index, or `None` when stepping off the grid.
    pub fn neighbor(&self, i: usize, mv: Move) -> Option<usize> {
        let (x, y) = (i % self.width, i / self.width);
        let (dx, dy) = mv.delta();
        let nx = x.checked_add_signed(dx)?;
        let ny = y.checked_add_signed(dy)?;
        (nx < self.width && ny < self.height).then(|| ny * self.width + nx)
    }

    fn open(&self, i: Option<usize>) -> Option<usize> {
        i.filter(|&c| !self.walls[c])
    }

    /// Minimum pushes from each cell to the nearest target, ignoring other crates.
    fn push_distances(&self) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.walls.len()];
        let mut queue = VecDeque::new();
        for (i, &t) in self.targets.iter().enumerate() {
            if t && !self.walls[i] {
                dist[i] = 0;
                queue.push_back(i);
            }
        }
        // A crate at `from` reaches `to` by a push along `mv` if the player can
        // stand behind `from`.
        while let Some(to) = queue.pop_front() {
            for mv in Move::ALL {
                let Some(from) = self.open(self.neighbor(to, opposite(mv))) else { continue };
                if self.open(self.neighbor(from, opposite(mv))).is_none() {
                    continue;
                }
                if dist[from] == u32::MAX {
                    dist[from] = dist[to] + 1;
                    queue.push_back(from);
                }
            }
        }
        dist
    }
}

fn opposite(mv: Move) -> Move {
    match mv {
        Move::Up => Move::Down,
        Move::Down => Move::Up,
        Move::Left => Move::Right,
        Move::Right => Move::Left,
    }
}

/// Outcome of a bounded search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SokobanOutcome {
    Solved(Vec<Move>),
    Unsolvable,
    /// The expansion budget ran out before the search finished.
    BudgetExceeded,
}

impl SokobanOutcome {
    pub fn solution(&self) -> Option<&[Move]> {
        match self {
            SokobanOutcome::Solved(moves) => Some(moves),
            _ => None,
        }
    }
}

/// Default expansion budget used by [`solve_sokoban`].
pub const DEFAULT_EXPANSIONS: usize = 500_000;

/// Minimum-length move sequence that puts every crate on a target.
pub fn solve_sokoban(level: &SokobanLevel) -> Option<Vec<Move>> {
    match solve_sokoban_bounded(level, DEFAULT_EXPANSIONS) {
        SokobanOutcome::Solved(moves) => Some(moves),
        _ => None,
    }
}

/// A search node: crates after a push, with the player on the crate's old cell.
struct Node {
    crates: Box<[u16]>,
    player: u16,
    parent: usize,
    /// Cell the player pushed from, and the push direction.
    push: Option<(u16, Move)>,
}

/// Whether the crate just pushed to `cell` sits in a 2x2 square of walls and
/// crates that holds a crate off target. Such a square can never move again.
fn frozen_square(level: &SokobanLevel, crates: &[u16], cell: usize) -> bool {
    let (w, h) = (level.width as isize, level.height as isize);
    let (cx, cy) = ((cell % level.width) as isize, (cell / level.width) as isize);
    let blocked = |x: isize, y: isize| {
        if x < 0 || y < 0 || x >= w || y >= h {
            return (true, false);
        }
        let i = (y * w + x) as usize;
        let is_crate = crates.binary_search(&(i as u16)).is_ok();
        (level.walls[i] || is_crate, is_crate && !level.targets[i])
    };
    for (ox, oy) in [(-1, -1), (0, -1), (-1, 0), (0, 0)] {
        let square = [(0, 0), (1, 0), (0, 1), (1, 1)].map(|(dx, dy)| blocked(cx + ox + dx, cy + oy + dy));
        if square.iter().all(|&(b, _)| b) && square.iter().any(|&(_, off)| off) {
            return true;
        }
    }
    false
}

/// Player BFS with crates as obstacles. Fills `dist` and `came_from`.
fn walk(level: &SokobanLevel, crates: &[u16], from: usize, dist: &mut [u32], came_from: &mut [Option<Move>]) {
    dist.fill(u32::MAX);
    came_from.fill(None);
    let mut queue = VecDeque::from([from]);
    dist[from] = 0;
    while let Some(cell) = queue.pop_front() {
        for mv in Move::ALL {
            let Some(next) = level.open(level.neighbor(cell, mv)) else { continue };
            if dist[next] != u32::MAX || crates.binary_search(&(next as u16)).is_ok() {
                continue;
            }
            dist[next] = dist[cell] + 1;
            came_from[next] = Some(mv);
            queue.push_back(next);
        }
    }
}

/// A* over push states. Each edge is a shortest walk to a crate followed by
/// one push, so the total player-step count is still minimized exactly.
/// `max_expansions` bounds the number of push states expanded.
pub fn solve_sokoban_bounded(level: &SokobanLevel, max_expansions: usize) -> SokobanOutcome {
    let cells = level.walls.len();
    let push_dist = level.push_distances();
    let heuristic = |crates: &[u16]| -> Option<u32> {
        crates.iter().try_fold(0u32, |acc, &c| {
            let d = push_dist[usize::from(c)];
            (d != u32::MAX).then(|| acc + d)
        })
    };
    let mut crates = level.crates.clone();
    crates.sort_unstable();
    let Some(h0) = heuristic(&crates) else {
        return SokobanOutcome::Unsolvable;
    };

    let mut nodes = vec![Node { crates: crates.into_boxed_slice(), player: level.player, parent: usize::MAX, push: None }];
    let mut best_g: HashMap<(u16, Box<[u16]>), u32> = HashMap::new();
    best_g.insert((level.player, nodes[0].crates.clone()), 0);
    // Ordered by f, then deeper nodes first, then insertion order.
    let mut open = BinaryHeap::from([Reverse((h0, Reverse(0u32), 0usize))]);
    let mut dist = vec![u32::MAX; cells];
    let mut came_from = vec![None; cells];
    let mut expansions = 0usize;

    while let Some(Reverse((_, Reverse(g), id))) = open.pop() {
        let node = &nodes[id];
        if best_g.get(&(node.player, node.crates.clone())).is_some_and(|&b| b < g) {
            continue;
        }
        if node.crates.iter().all(|&c| level.targets[usize::from(c)]) {
            return SokobanOutcome::Solved(reconstruct(level, &nodes, id));
        }
        expansions += 1;
        if expansions > max_expansions {
            return SokobanOutcome::BudgetExceeded;
        }
        walk(level, &node.crates, usize::from(node.player), &mut dist, &mut came_from);
        let current = node.crates.clone();
        for (k, &c) in current.iter().enumerate() {
            let c = usize::from(c);
            for mv in Move::ALL {
                let Some(stand) = level.open(level.neighbor(c, opposite(mv))) else { continue };
                if dist[stand] == u32::MAX {
                    continue;
                }
                let Some(beyond) = level.open(level.neighbor(c, mv)) else { continue };
                if push_dist[beyond] == u32::MAX || current.binary_search(&(beyond as u16)).is_ok() {
                    continue;
                }
                let mut crates = current.clone();
                crates[k] = beyond as u16;
                crates.sort_unstable();
                if !level.targets[beyond] && frozen_square(level, &crates, beyond) {
                    continue;
                }
                let Some(h) = heuristic(&crates) else { continue };
                let ng = g + dist[stand] + 1;
                match best_g.entry((c as u16, crates.clone())) {
                    Entry::Occupied(mut e) => {
                        if *e.get() <= ng {
                            continue;
                        }
                        e.insert(ng);
                    }
                    Entry::Vacant(e) => {
                        e.insert(ng);
                    }
                }
                nodes.push(Node { crates, player: c as u16, parent: id, push: Some((stand as u16, mv)) });
                open.push(Reverse((ng + h, Reverse(ng), nodes.len() - 1)));
            }
        }
    }
    SokobanOutcome::Unsolvable
}

fn reconstruct(level: &SokobanLevel, nodes: &[Node], goal: usize) -> Vec<Move> {
    let mut chain = Vec::new();
    let mut cur = goal;
    while nodes[cur].push.is_some() {
        chain.push(cur);
        cur = nodes[cur].parent;
    }
    chain.reverse();
    let cells = level.walls.len();
    let (mut dist, mut came_from) = (vec![u32::MAX; cells], vec![None; cells]);
    let mut moves = Vec::new();
    for id in chain {
        let parent = &nodes[nodes[id].parent];
        let (stand, mv) = nodes[id].push.expect("chain holds pushes only");
        walk(level, &parent.crates, usize::from(parent.player), &mut dist, &mut came_from);
        let mut path = Vec::new();
        let mut cell = usize::from(stand);
        while let Some(step) = came_from[cell] {
            path.push(step);
            cell = level.neighbor(cell, opposite(step)).expect("walk stays on the grid");
        }
        path.reverse();
        moves.extend(path);
        moves.push(mv);
    }
    moves
}
