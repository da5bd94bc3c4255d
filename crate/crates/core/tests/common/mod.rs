//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use pcgbench_core::solvers::PlatformAction;

pub mod laws;
pub mod sweeps;

pub const INF: u32 = u32::MAX / 4;

/// All-pairs 4-neighbour distances over open cells; `INF` when unreachable.
pub fn floyd_warshall(w: usize, h: usize, open: &[bool]) -> Vec<Vec<u32>> {
    let n = w * h;
    let mut d = vec![vec![INF; n]; n];
    for i in 0..n {
        if !open[i] {
            continue;
        }
        d[i][i] = 0;
        let (x, y) = (i % w, i / w);
        let mut link = |j: usize| {
            if open[j] {
                d[i][j] = 1;
            }
        };
        if x > 0 {
            link(i - 1);
        }
        if x + 1 < w {
            link(i + 1);
        }
        if y > 0 {
            link(i - w);
        }
        if y + 1 < h {
            link(i + w);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// `(x, y, rise)` of the simulated player.
type Pose = (isize, isize, u8);
/// Pose after a step, cells entered, whether a jump was used.
type Step = (Pose, Vec<(isize, isize)>, bool);

/// A second, separately written reading of the platformer rules.
pub struct Sim<'a> {
    pub w: isize,
    pub h: isize,
    pub tiles: &'a [char],
    pub jump: u8,
}

impl Sim<'_> {
    fn at(&self, x: isize, y: isize) -> char {
        if x < 0 || y < 0 || x >= self.w || y >= self.h {
            '#'
        } else {
            self.tiles[(y * self.w + x) as usize]
        }
    }

    /// `(x, y, rise)` after the action, cells entered, whether a jump was used.
    fn advance(&self, (x, y, rise): Pose, dx: isize, jump: bool) -> Option<Step> {
        let on_ground = self.at(x, y + 1) == '#';
        let mut rise = rise;
        if jump {
            if !on_ground || rise != 0 {
                return None;
            }
            rise = self.jump;
        }
        let (mut x, mut y) = (x, y);
        let mut path = Vec::new();
        if rise != 0 {
            if self.at(x, y - 1) == '#' {
                rise = 0;
            } else {
                y -= 1;
                rise -= 1;
                path.push((x, y));
            }
        } else if !on_ground {
            y += 1;
            path.push((x, y));
        }
        if dx != 0 && self.at(x + dx, y) != '#' {
            x += dx;
            path.push((x, y));
        }
        Some(((x, y, rise), path, jump))
    }

    const ACTIONS: [(isize, bool); 6] = [(0, false), (-1, false), (1, false), (0, true), (-1, true), (1, true)];

    /// Lexicographically least (jumps, steps): BFS by steps with a jump cap
    /// raised one at a time.
    pub fn oracle(&self) -> Option<(usize, usize)> {
        let find = |c: char| -> Vec<(isize, isize)> {
            (0..self.w * self.h).filter(|&i| self.tiles[i as usize] == c).map(|i| (i % self.w, i / self.w)).collect()
        };
        let (starts, exits, gems) = (find('S'), find('E'), find('*'));
        if starts.len() != 1 || exits.len() != 1 {
            return None;
        }
        let all = (1u32 << gems.len()) - 1;
        for cap in 0..=(self.w * self.h * 4) as usize {
            let start = ((starts[0].0, starts[0].1, 0u8), 0u32, 0usize);
            let mut seen = HashSet::from([start]);
            let mut queue = VecDeque::from([(start, 0usize)]);
            let mut any_capped = false;
            while let Some(((body, got, used), steps)) = queue.pop_front() {
                if got == all && (body.0, body.1) == exits[0] {
                    return Some((cap, steps));
                }
                for (dx, jump) in Self::ACTIONS {
                    let Some((next, path, jumped)) = self.advance(body, dx, jump) else { continue };
                    if path.iter().any(|&(x, y)| self.at(x, y) == '^') {
                        continue;
                    }
                    let used = used + usize::from(jumped);
                    if used > cap {
                        any_capped = true;
                        continue;
                    }
                    let mut got = got;
                    for cell in &path {
                        if let Some(k) = gems.iter().position(|g| g == cell) {
                            got |= 1 << k;
                        }
                    }
                    // The jump count is part of the state so every cap is explored in full.
                    let state = (next, got, used);
                    if seen.insert(state) {
                        queue.push_back((state, steps + 1));
                    }
                }
            }
            if !any_capped {
                return None;
            }
        }
        None
    }

    pub fn replay(&self, actions: &[PlatformAction]) -> Option<usize> {
        let find = |c: char| (0..self.w * self.h).find(|&i| self.tiles[i as usize] == c).map(|i| (i % self.w, i / self.w));
        let (start, exit) = (find('S')?, find('E')?);
        let gems: HashSet<(isize, isize)> =
            (0..self.w * self.h).filter(|&i| self.tiles[i as usize] == '*').map(|i| (i % self.w, i / self.w)).collect();
        let mut got = HashSet::new();
        let mut body = (start.0, start.1, 0u8);
        let mut jumps = 0;
        for a in actions {
            let (next, path, jumped) = self.advance(body, a.horizontal(), a.jumps())?;
            if path.iter().any(|&(x, y)| self.at(x, y) == '^') {
                return None;
            }
            got.extend(path.into_iter().filter(|c| gems.contains(c)));
            jumps += usize::from(jumped);
            body = next;
        }
        ((body.0, body.1) == exit && got.len() == gems.len()).then_some(jumps)
    }
}

