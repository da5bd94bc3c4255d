//! A discrete gravity platformer and a search agent for it.
//!
//! Rows grow downward (`y = 0` is the top). Everything outside the grid is
//! solid. One step applies, in order:
//!
//! 1. an optional jump, allowed only when standing on something solid with no
//!    upward momentum left, which grants `jump_height` upward moves;
//! 2. one vertical move: up while momentum remains (a ceiling cancels it),
//!    otherwise down by one cell when unsupported;
//! 3. one horizontal move of a single cell, airborne or not.
//!
//! Entering a spike kills; entering a diamond collects it. The level is solved
//! when the player stands on the exit, alive, with every diamond collected.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlatformTile {
    Solid,
    Empty,
    Spike,
    Diamond,
    Start,
    Exit,
}

impl PlatformTile {
    pub fn from_char(c: char) -> Option<Self> {
        Some(match c {
            '#' => PlatformTile::Solid,
            '.' | ' ' => PlatformTile::Empty,
            '^' => PlatformTile::Spike,
            '*' => PlatformTile::Diamond,
            'S' => PlatformTile::Start,
            'E' => PlatformTile::Exit,
            _ => return None,
        })
    }
}

/// Movement constants for the platformer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlatformerPhysics {
    /// Upward cells granted by one jump.
    pub jump_height: u8,
}

impl Default for PlatformerPhysics {
    fn default() -> Self {
        Self { jump_height: 2 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PlatformAction {
    Stay,
    Left,
    Right,
    Jump,
    JumpLeft,
    JumpRight,
}

impl PlatformAction {
    pub const ALL: [PlatformAction; 6] = [
        PlatformAction::Stay,
        PlatformAction::Left,
        PlatformAction::Right,
        PlatformAction::Jump,
        PlatformAction::JumpLeft,
        PlatformAction::JumpRight,
    ];

    pub fn horizontal(self) -> isize {
        match self {
            PlatformAction::Left | PlatformAction::JumpLeft => -1,
            PlatformAction::Right | PlatformAction::JumpRight => 1,
            _ => 0,
        }
    }

    pub fn jumps(self) -> bool {
        matches!(self, PlatformAction::Jump | PlatformAction::JumpLeft | PlatformAction::JumpRight)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlatformLevel {
    width: usize,
    height: usize,
    tiles: Vec<PlatformTile>,
}

impl PlatformLevel {
    pub fn new(width: usize, height: usize, tiles: Vec<PlatformTile>) -> Self {
        assert_eq!(tiles.len(), width * height, "tile count must match dimensions");
        Self { width, height, tiles }
    }

    /// Parses rows of `#` solid, `.` empty, `^` spike, `*` diamond, `S` start, `E` exit.
    pub fn parse(text: &str) -> Option<Self> {
        let rows: Vec<&str> = text.lines().map(str::trim_end).filter(|l| !l.is_empty()).collect();
        let width = rows.first()?.chars().count();
        let mut tiles = Vec::new();
        for row in &rows {
            if row.chars().count() != width {
                return None;
            }
            for c in row.chars() {
                tiles.push(PlatformTile::from_char(c)?);
            }
        }
        Some(Self::new(width, rows.len(), tiles))
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn tile(&self, x: isize, y: isize) -> PlatformTile {
        if x < 0 || y < 0 || x >= self.width as isize || y >= self.height as isize {
            PlatformTile::Solid
        } else {
            self.tiles[y as usize * self.width + x as usize]
        }
    }

    fn find(&self, tile: PlatformTile) -> Vec<usize> {
        self.tiles.iter().enumerate().filter(|(_, t)| **t == tile).map(|(i, _)| i).collect()
    }

    pub fn diamonds(&self) -> Vec<usize> {
        self.find(PlatformTile::Diamond)
    }

    fn solid(&self, x: isize, y: isize) -> bool {
        self.tile(x, y) == PlatformTile::Solid
    }
}

/// Position and remaining upward momentum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Body {
    pub x: isize,
    pub y: isize,
    pub rise: u8,
}

/// What happened during one step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepResult {
    pub body: Body,
    pub jumped: bool,
    /// Every cell entered during the step, in order.
    pub entered: Vec<(isize, isize)>,
    pub died: bool,
}

/// Applies one action, or returns `None` when the action is not available
/// (jumping while airborne or mid-jump).
pub fn step(level: &PlatformLevel, physics: PlatformerPhysics, body: Body, action: PlatformAction) -> Option<StepResult> {
    let Body { mut x, mut y, mut rise } = body;
    let supported = level.solid(x, y + 1);
    let jumped = action.jumps();
    if jumped {
        if !supported || rise > 0 {
            return None;
        }
        rise = physics.jump_height;
    }
    let mut entered = Vec::with_capacity(2);
    if rise > 0 {
        if level.solid(x, y - 1) {
            rise = 0;
        } else {
            y -= 1;
            rise -= 1;
            entered.push((x, y));
        }
    } else if !supported {
        y += 1;
        entered.push((x, y));
    }
    let dx = action.horizontal();
    if dx != 0 && !level.solid(x + dx, y) {
        x += dx;
        entered.push((x, y));
    }
    let died = entered.iter().any(|&(cx, cy)| level.tile(cx, cy) == PlatformTile::Spike);
    Some(StepResult { body: Body { x, y, rise }, jumped, entered, died })
}

/// A solving run: actions in order with bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlatformTrace {
    pub actions: Vec<PlatformAction>,
    pub jumps: usize,
    pub diamonds: usize,
}

/// Levels with more diamonds than this are not searched.
pub const MAX_TRACKED_DIAMONDS: usize = 12;

fn single(level: &PlatformLevel, tile: PlatformTile) -> Option<usize> {
    let found = level.find(tile);
    (found.len() == 1).then(|| found[0])
}

/// Finds a solution using the fewest jumps, and among those the fewest steps.
///
/// Returns `None` when the level lacks exactly one start and one exit, has
/// more than [`MAX_TRACKED_DIAMONDS`] diamonds, or cannot be solved.
pub fn solve_platformer(level: &PlatformLevel, physics: PlatformerPhysics) -> Option<PlatformTrace> {
    let start = single(level, PlatformTile::Start)?;
    let exit = single(level, PlatformTile::Exit)?;
    let diamonds = level.diamonds();
    if diamonds.len() > MAX_TRACKED_DIAMONDS {
        return None;
    }
    let diamond_bit: HashMap<(isize, isize), u16> = diamonds
        .iter()
        .enumerate()
        .map(|(k, &i)| (((i % level.width) as isize, (i / level.width) as isize), 1u16 << k))
        .collect();
    let all: u16 = if diamonds.is_empty() { 0 } else { u16::MAX >> (16 - diamonds.len()) };
    let exit_cell = ((exit % level.width) as isize, (exit / level.width) as isize);

    type Key = (Body, u16);
    let start_key: Key = (
        Body { x: (start % level.width) as isize, y: (start / level.width) as isize, rise: 0 },
        0,
    );
    let mut best: HashMap<Key, (usize, usize)> = HashMap::from([(start_key, (0, 0))]);
    let mut parent: HashMap<Key, (Key, PlatformAction)> = HashMap::new();
    let mut heap = BinaryHeap::from([Reverse((0usize, 0usize, start_key))]);

    while let Some(Reverse((jumps, steps, key))) = heap.pop() {
        if best.get(&key).is_some_and(|&b| b < (jumps, steps)) {
            continue;
        }
        let (body, mask) = key;
        if mask == all && (body.x, body.y) == exit_cell {
            let mut actions = Vec::with_capacity(steps);
            let mut cur = key;
            while let Some(&(prev, action)) = parent.get(&cur) {
                actions.push(action);
                cur = prev;
            }
            actions.reverse();
            return Some(PlatformTrace { actions, jumps, diamonds: diamonds.len() });
        }
        for action in PlatformAction::ALL {
            let Some(result) = step(level, physics, body, action) else { continue };
            if result.died {
                continue;
            }
            let mut next_mask = mask;
            for cell in &result.entered {
                if let Some(bit) = diamond_bit.get(cell) {
                    next_mask |= bit;
                }
            }
            let next: Key = (result.body, next_mask);
            let cost = (jumps + usize::from(result.jumped), steps + 1);
            if best.get(&next).is_none_or(|&b| cost < b) {
                best.insert(next, cost);
                parent.insert(next, (key, action));
                heap.push(Reverse((cost.0, cost.1, next)));
            }
        }
    }
    None
}

/// Every cell the player can occupy, alive, starting from the single start tile.
/// Empty when the level has no unique start.
pub fn reachable_cells(level: &PlatformLevel, physics: PlatformerPhysics) -> Vec<bool> {
    let mut reached = vec![false; level.width * level.height];
    let Some(start) = single(level, PlatformTile::Start) else {
        return reached;
    };
    let origin = Body { x: (start % level.width) as isize, y: (start / level.width) as isize, rise: 0 };
    let mut seen = std::collections::HashSet::from([origin]);
    let mut queue = VecDeque::from([origin]);
    reached[start] = true;
    while let Some(body) = queue.pop_front() {
        for action in PlatformAction::ALL {
            let Some(result) = step(level, physics, body, action) else { continue };
            if result.died {
                continue;
            }
            for &(cx, cy) in &result.entered {
                reached[cy as usize * level.width + cx as usize] = true;
            }
            if seen.insert(result.body) {
                queue.push_back(result.body);
            }
        }
    }
    reached
}
