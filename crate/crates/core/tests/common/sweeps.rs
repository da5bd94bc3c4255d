//! Solver sweeps against the brute-force oracles, each panicking on the first mismatch.

use std::collections::{HashMap, HashSet, VecDeque};

use pcgbench_core::solvers::{
    component_labels, connected_components, graph_diameter, shortest_path, solve_platformer, solve_sokoban, Dictionary,
    GridMap, Move, PlatformLevel, PlatformerPhysics, SokobanLevel,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{floyd_warshall, Sim, INF};

// ---------------------------------------------------------------- grids

fn union_find_components(w: usize, h: usize, open: &[bool]) -> usize {
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    let mut parent: Vec<usize> = (0..w * h).collect();
    for i in 0..w * h {
        if !open[i] {
            continue;
        }
        let right = (i % w + 1 < w).then(|| i + 1);
        let down = (i / w + 1 < h).then(|| i + w);
        for j in [right, down].into_iter().flatten() {
            if open[j] {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    (0..w * h).filter(|&i| open[i] && find(&mut parent, i) == i).count()
}

pub fn grid_sweep() {
    let (w, h) = (8, 8);
    let mut rng = ChaCha8Rng::seed_from_u64(0x8e8);
    for case in 0..1000 {
        let density = rng.random_range(0.1..0.6);
        let open: Vec<bool> = (0..w * h).map(|_| !rng.random_bool(density)).collect();
        let map = GridMap::new(w, h, open.clone());
        let d = floyd_warshall(w, h, &open);

        assert_eq!(connected_components(&map), union_find_components(w, h, &open), "case {case}");
        let (labels, _) = component_labels(&map);

        let expected_diameter =
            d.iter().flatten().copied().filter(|&x| x < INF).max().map(|x| x as usize);
        match expected_diameter {
            Some(diameter) => assert_eq!(graph_diameter(&map).unwrap(), diameter, "case {case}"),
            None => assert!(graph_diameter(&map).is_err()),
        }

        for _ in 0..8 {
            let s = rng.random_range(0..w * h);
            let t = rng.random_range(0..w * h);
            let path = shortest_path(&map, (s % w, s / w), (t % w, t / w));
            let expected = if s == t { Some(0) } else { (d[s][t] < INF).then_some(d[s][t] as usize) };
            assert_eq!(path.reachable, expected.is_some(), "case {case} {s}->{t}");
            if let Some(len) = expected {
                assert_eq!(path.distance, len);
                assert_eq!(path.actions.len(), len);
                if s != t {
                    assert_eq!(labels[s], labels[t]);
                }
                // Replay the actions through open cells only.
                let (mut x, mut y) = ((s % w) as isize, (s / w) as isize);
                for mv in &path.actions {
                    let (dx, dy) = mv.delta();
                    x += dx;
                    y += dy;
                    assert!((0..w as isize).contains(&x) && (0..h as isize).contains(&y));
                    assert!(open[y as usize * w + x as usize]);
                }
                assert_eq!((x as usize, y as usize), (t % w, t / w));
            }
        }
    }
}

// ---------------------------------------------------------------- sokoban

#[derive(Clone, Copy, PartialEq, Eq)]
enum Cell {
    Wall,
    Floor,
}

struct Puzzle {
    w: usize,
    h: usize,
    cells: Vec<Cell>,
    targets: Vec<usize>,
    crates: Vec<usize>,
    player: usize,
}

impl Puzzle {
    fn text(&self) -> String {
        let mut out = String::new();
        for y in 0..self.h {
            for x in 0..self.w {
                let i = y * self.w + x;
                let (c, t, p) = (self.crates.contains(&i), self.targets.contains(&i), self.player == i);
                out.push(match (self.cells[i], c, t, p) {
                    (Cell::Wall, ..) => '#',
                    (_, true, true, _) => '*',
                    (_, true, false, _) => '$',
                    (_, false, true, true) => '+',
                    (_, false, false, true) => '@',
                    (_, false, true, false) => '.',
                    _ => ' ',
                });
            }
            out.push('\n');
        }
        out
    }

    fn step(&self, at: usize, (dx, dy): (isize, isize)) -> Option<usize> {
        let x = (at % self.w) as isize + dx;
        let y = (at / self.w) as isize + dy;
        if x < 0 || y < 0 || x >= self.w as isize || y >= self.h as isize {
            return None;
        }
        let i = y as usize * self.w + x as usize;
        (self.cells[i] == Cell::Floor).then_some(i)
    }

    /// Plain player-step BFS over every reachable (player, crates) state.
    fn oracle_length(&self) -> Option<usize> {
        let mut start_crates = self.crates.clone();
        start_crates.sort_unstable();
        let goal = |c: &[usize]| c.iter().all(|i| self.targets.contains(i));
        let start = (self.player, start_crates);
        let mut seen = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([(start, 0usize)]);
        while let Some(((player, crates), d)) = queue.pop_front() {
            if goal(&crates) {
                return Some(d);
            }
            for delta in [(0, -1), (0, 1), (-1, 0), (1, 0)] {
                let Some(next) = self.step(player, delta) else { continue };
                let mut moved = crates.clone();
                if let Some(k) = crates.iter().position(|&c| c == next) {
                    let Some(beyond) = self.step(next, delta) else { continue };
                    if crates.contains(&beyond) {
                        continue;
                    }
                    moved[k] = beyond;
                    moved.sort_unstable();
                }
                let state = (next, moved);
                if seen.insert(state.clone()) {
                    queue.push_back((state, d + 1));
                }
            }
        }
        None
    }

    /// Replays moves with the puzzle rules; true when every crate ends on a target.
    fn replay(&self, moves: &[Move]) -> bool {
        let mut player = self.player;
        let mut crates = self.crates.clone();
        for mv in moves {
            let delta = mv.delta();
            let Some(next) = self.step(player, delta) else { return false };
            if let Some(k) = crates.iter().position(|&c| c == next) {
                let Some(beyond) = self.step(next, delta) else { return false };
                if crates.contains(&beyond) {
                    return false;
                }
                crates[k] = beyond;
            }
            player = next;
        }
        crates.iter().all(|c| self.targets.contains(c))
    }
}

fn check_sokoban(p: &Puzzle) {
    let text = p.text();
    let level = SokobanLevel::parse(&text).unwrap();
    let solved = solve_sokoban(&level);
    let expected = p.oracle_length();
    assert_eq!(solved.as_ref().map(Vec::len), expected, "level:\n{text}");
    if let Some(moves) = solved {
        assert!(p.replay(&moves), "solution does not replay:\n{text}");
    }
}

pub fn sokoban_3x3_sweep() {
    let n = 9;
    let mut levels = 0;
    for player in 0..n {
        for crate_at in (0..n).filter(|&c| c != player) {
            for target in 0..n {
                let fixed = [player, crate_at, target];
                let free: Vec<usize> = (0..n).filter(|i| !fixed.contains(i)).collect();
                for mask in 0u32..(1 << free.len()) {
                    let mut cells = vec![Cell::Floor; n];
                    for (b, &i) in free.iter().enumerate() {
                        if mask & (1 << b) != 0 {
                            cells[i] = Cell::Wall;
                        }
                    }
                    check_sokoban(&Puzzle { w: 3, h: 3, cells, targets: vec![target], crates: vec![crate_at], player });
                    levels += 1;
                }
            }
        }
    }
    assert!(levels > 30_000);
}

pub fn sokoban_random_sweep() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x50c0);
    let mut solvable = 0;
    for _ in 0..3000 {
        let (w, h) = (rng.random_range(3..=5), rng.random_range(3..=5));
        let n = w * h;
        let crates_n = rng.random_range(1..=2);
        let mut order: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            order.swap(i, rng.random_range(0..=i));
        }
        let player = order[0];
        let crates = order[1..=crates_n].to_vec();
        let targets: Vec<usize> = (0..crates_n)
            .map(|k| if rng.random_bool(0.2) { crates[k] } else { order[1 + crates_n + k] })
            .collect();
        let wall_p = rng.random_range(0.0..0.35);
        let cells = (0..n)
            .map(|i| {
                let keep = i == player || crates.contains(&i) || targets.contains(&i);
                if !keep && rng.random_bool(wall_p) { Cell::Wall } else { Cell::Floor }
            })
            .collect();
        let p = Puzzle { w, h, cells, targets, crates, player };
        solvable += usize::from(p.oracle_length().is_some());
        check_sokoban(&p);
    }
    assert!(solvable > 300, "sweep should include many solvable levels, got {solvable}");
}

// ---------------------------------------------------------------- platformer

pub fn platformer_sweep() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x91a7);
    let mut solved = 0;
    let mut jumped = 0;
    for case in 0..4000 {
        let (w, h) = (rng.random_range(2..=5usize), rng.random_range(2..=5usize));
        let n = w * h;
        let free = rng.random_range(2..=n.min(12));
        let mut order: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            order.swap(i, rng.random_range(0..=i));
        }
        let mut tiles = vec!['#'; n];
        for &i in &order[..free] {
            tiles[i] = '.';
        }
        tiles[order[0]] = 'S';
        tiles[order[1]] = 'E';
        for &i in &order[2..free] {
            tiles[i] = match rng.random_range(0..10) {
                0 => '^',
                1 | 2 => '*',
                _ => '.',
            };
        }
        let text: String = tiles.chunks(w).map(|r| r.iter().collect::<String>() + "\n").collect();
        let level = PlatformLevel::parse(&text).unwrap();
        let sim = Sim { w: w as isize, h: h as isize, tiles: &tiles, jump: 2 };
        let expected = sim.oracle();
        let got = solve_platformer(&level, PlatformerPhysics::default());
        assert_eq!(got.as_ref().map(|t| (t.jumps, t.actions.len())), expected, "case {case}:\n{text}");
        if let Some(trace) = got {
            assert_eq!(sim.replay(&trace.actions), Some(trace.jumps), "case {case}:\n{text}");
            solved += 1;
            jumped += usize::from(trace.jumps > 0);
        }
    }
    assert!(solved > 500 && jumped > 50, "sweep too easy: {solved} solved, {jumped} needing jumps");
}

// ---------------------------------------------------------------- dictionary

pub fn dictionary_sweep() {
    let dict = Dictionary::bundled();
    let mut rng = ChaCha8Rng::seed_from_u64(0xd1c7);
    // Rough English letter weights so most draws spell something.
    let weighted = "eeeeeeeeeeeettttttttaaaaaaaaoooooooiiiiiiinnnnnnnsssssshhhhhhrrrrrrddddllllcccuuummwwffggyyppbbvkjxqz";
    let pool: Vec<u8> = weighted.bytes().collect();
    let mut nonempty = 0;
    for _ in 0..300 {
        let letters: Vec<u8> = (0..8).map(|_| pool[rng.random_range(0..pool.len())]).collect();
        let mut have: HashMap<u8, usize> = HashMap::new();
        for &b in &letters {
            *have.entry(b).or_default() += 1;
        }
        let naive: Vec<(usize, &str)> = dict
            .words()
            .iter()
            .enumerate()
            .filter(|(_, w)| {
                let mut need: HashMap<u8, usize> = HashMap::new();
                for b in w.bytes() {
                    *need.entry(b).or_default() += 1;
                }
                need.iter().all(|(b, n)| have.get(b).copied().unwrap_or(0) >= *n)
            })
            .map(|(i, w)| (i + 1, w.as_str()))
            .collect();
        let fast = dict.formable_words(&letters);
        let fast: Vec<(usize, &str)> = fast.iter().map(|f| (f.rank, f.word.as_str())).collect();
        assert_eq!(fast, naive, "letters {:?}", String::from_utf8_lossy(&letters));
        nonempty += usize::from(!naive.is_empty());
    }
    assert!(nonempty > 250);
}
