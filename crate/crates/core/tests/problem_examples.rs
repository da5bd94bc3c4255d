//! Hand-built artifacts for every problem, checked against oracles where the
//! expected value is not obvious.

mod common;

use std::collections::HashMap;

use common::{floyd_warshall, Sim, INF};
use pcgbench_core::problems::{binary, building, dave, isaac, minidungeons, sokoban, zelda};
use pcgbench_core::solvers::Dictionary;
use pcgbench_core::{make_default, InfoRecord, ProblemContract, Value};

fn problem(name: &str) -> std::sync::Arc<dyn ProblemContract> {
    make_default(name).unwrap()
}

/// Builds a grid from rows of symbols using `legend`.
fn art(rows: &[&str], legend: &[(char, i64)]) -> Value {
    let map: HashMap<char, i64> = legend.iter().copied().collect();
    let grid: Vec<Vec<i64>> = rows.iter().map(|r| r.chars().map(|c| map[&c]).collect()).collect();
    Value::grid(&grid)
}

fn scores(p: &dyn ProblemContract, content: &Value) -> (InfoRecord, Vec<f64>, f64) {
    let info = p.info(content);
    let subs = p.subscores(&info);
    let q = p.quality(&info);
    (info, subs, q)
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() < 1e-9
}

// ---------------------------------------------------------------- binary

const BINARY: &[(char, i64)] = &[('.', binary::EMPTY), ('#', binary::SOLID)];

fn oracle_diameter(rows: &[&str]) -> u32 {
    let (w, h) = (rows[0].len(), rows.len());
    let open: Vec<bool> = rows.iter().flat_map(|r| r.chars().map(|c| c == '.')).collect();
    floyd_warshall(w, h, &open).into_iter().flatten().filter(|&d| d < INF).max().unwrap()
}

#[test]
fn binary_all_empty_grid_is_short_of_the_path_target() {
    let rows = vec![".............."; 14];
    let p = problem("binary-v0");
    let (info, subs, q) = scores(p.as_ref(), &art(&rows, BINARY));
    assert_eq!(oracle_diameter(&rows), 26);
    assert_eq!(info.int("diameter"), 26);
    assert_eq!(subs, vec![1.0, 26.0 / 28.0]);
    assert!(close(q, (1.0 + 26.0 / 28.0) / 2.0));
    assert!(q < 1.0);
}

#[test]
fn binary_all_solid_grid_scores_zero() {
    let rows = vec!["##############"; 14];
    let p = problem("binary-v0");
    let (_, subs, q) = scores(p.as_ref(), &art(&rows, BINARY));
    assert_eq!(subs, vec![0.0, 0.0]);
    assert_eq!(q, 0.0);
}

#[test]
fn binary_comb_maze_is_feasible() {
    // Full rows joined by single gaps at alternating ends: one long corridor.
    let rows: Vec<String> = (0..14)
        .map(|y| match y % 4 {
            0 | 2 => ".".repeat(14),
            1 => "#".repeat(13) + ".",
            _ => ".".to_string() + &"#".repeat(13),
        })
        .collect();
    let rows: Vec<&str> = rows.iter().map(String::as_str).collect();
    let p = problem("binary-v0");
    let (info, subs, q) = scores(p.as_ref(), &art(&rows, BINARY));
    let expected = oracle_diameter(&rows);
    assert!(expected >= 28);
    assert_eq!(info.int("diameter"), i64::from(expected));
    assert_eq!(subs, vec![1.0, 1.0]);
    assert_eq!(q, 1.0);

    let control = |t| Value::record([("path_target", Value::Int(t))]);
    assert_eq!(p.controllability(&info, &control(i64::from(expected) - 5)), 1.0);
    assert!(p.controllability(&info, &control(28)) < 1.0);
}

// ---------------------------------------------------------------- zelda

const ZELDA: &[(char, i64)] = &[
    ('.', zelda::EMPTY),
    ('#', zelda::SOLID),
    ('@', zelda::PLAYER),
    ('k', zelda::KEY),
    ('d', zelda::DOOR),
    ('e', zelda::ENEMY),
];

fn zelda_distance(rows: &[&str], a: char, b: char) -> u32 {
    let (w, h) = (rows[0].len(), rows.len());
    let cells: Vec<char> = rows.iter().flat_map(|r| r.chars()).collect();
    let open: Vec<bool> = cells.iter().map(|&c| c != '#').collect();
    let find = |c| cells.iter().position(|&x| x == c).unwrap();
    floyd_warshall(w, h, &open)[find(a)][find(b)]
}

#[test]
fn zelda_handcrafted_level_meets_the_solution_length() {
    let rows = [
        "...........",
        "..d........",
        "...........",
        "@.......k..",
        "...........",
        "...........",
        "..........e",
    ];
    let (pk, kd) = (zelda_distance(&rows, '@', 'k'), zelda_distance(&rows, 'k', 'd'));
    assert_eq!((pk, kd), (8, 8));
    let p = problem("zelda-v0");
    let (info, subs, q) = scores(p.as_ref(), &art(&rows, ZELDA));
    assert_eq!(info.int("player_key"), i64::from(pk));
    assert_eq!(info.int("key_door"), i64::from(kd));
    assert_eq!(subs, vec![1.0; 6]);
    assert_eq!(q, 1.0);

    let control = Value::record([("key_dist", Value::Int(6)), ("door_dist", Value::Int(8))]);
    assert_eq!(p.controllability(&info, &control), 1.0);
}

#[test]
fn zelda_key_sealed_behind_a_ring() {
    let rows = [
        "@..........",
        "...........",
        "....###....",
        "....#k#....",
        "....###....",
        "...........",
        "d.........e",
    ];
    let p = problem("zelda-v0");
    let (info, subs, q) = scores(p.as_ref(), &art(&rows, ZELDA));
    assert_eq!(info.int("components"), 2);
    assert!(subs[4] < 1.0);
    assert!(q < 1.0);
}

#[test]
fn zelda_duplicate_keys_fail_the_key_count() {
    let rows = [
        "@.........k",
        "...........",
        "...........",
        "...........",
        "...........",
        "...........",
        "d.........k",
    ];
    let p = problem("zelda-v0");
    let (_, subs, q) = scores(p.as_ref(), &art(&rows, ZELDA));
    assert!(subs[1] < 1.0);
    assert_eq!(subs[0], 1.0);
    assert!(q < 1.0);
}

// ---------------------------------------------------------------- sokoban

const SOKOBAN: &[(char, i64)] = &[
    (' ', sokoban::FLOOR),
    ('#', sokoban::WALL),
    ('@', sokoban::PLAYER),
    ('$', sokoban::CRATE),
    ('.', sokoban::TARGET),
];

#[test]
fn sokoban_one_push_level_scores_a_tenth_on_length() {
    let rows = ["@$.  ", "     ", "     ", "     ", "     "];
    let p = problem("sokoban-v0");
    let (info, subs, q) = scores(p.as_ref(), &art(&rows, SOKOBAN));
    assert_eq!(info.int("solution_length"), 1);
    assert_eq!(info.text("solution"), "r");
    assert!(close(subs[4], 0.1));
    assert_eq!(&subs[..4], &[1.0, 1.0, 1.0, 1.0]);
    assert!(q < 1.0);
}

#[test]
fn sokoban_without_player_scores_zero_on_player() {
    let rows = [" $.  ", "     ", "     ", "     ", "     "];
    let p = problem("sokoban-v0");
    let (info, subs, _) = scores(p.as_ref(), &art(&rows, SOKOBAN));
    assert_eq!(subs[0], 0.0);
    assert!(!info.flag("solvable"));
}

#[test]
fn sokoban_corner_crate_is_unsolvable() {
    let rows = ["$    ", "  @  ", "     ", "   . ", "     "];
    let p = problem("sokoban-v0");
    let (info, subs, _) = scores(p.as_ref(), &art(&rows, SOKOBAN));
    assert_eq!(subs[3], 0.0);
    assert!(!info.flag("solvable"));
    assert!(!info.flag("budget_exceeded"));
}

#[test]
fn sokoban_long_level_is_feasible_and_controlled() {
    // The player walks around the crate before pushing it down the column.
    let rows = ["   @ ", " $   ", "     ", "     ", " .   "];
    let p = problem("sokoban-v0");
    let (info, _, q) = scores(p.as_ref(), &art(&rows, SOKOBAN));
    let length = info.int("solution_length");
    assert_eq!(length, 2 + 3, "walk to above the crate, then three pushes");
    assert!(q < 1.0);

    let rows = ["@    ", "   $ ", "     ", "     ", ".    "];
    let (info, subs, q) = scores(p.as_ref(), &art(&rows, SOKOBAN));
    assert!(info.int("solution_length") >= 10, "{:?}", info.text("solution"));
    assert_eq!(subs, vec![1.0; 5]);
    assert_eq!(q, 1.0);
    assert_eq!(p.controllability(&info, &Value::record([("crates", Value::Int(1))])), 1.0);
    assert!(p.controllability(&info, &Value::record([("crates", Value::Int(2))])) < 1.0);
}

#[test]
fn sokoban_diversity_reads_solutions() {
    let p = problem("sokoban-v0");
    let a = p.info(&art(&["@$.  ", "     ", "     ", "     ", "     "], SOKOBAN));
    let b = p.info(&art(&["@$  .", "     ", "     ", "     ", "     "], SOKOBAN));
    let dead = p.info(&art(&["$    ", "  @  ", "     ", "   . ", "     "], SOKOBAN));
    // "r" against "rrr": two edits of the five required.
    assert!(close(p.diversity(&a, &b), 0.4));
    assert_eq!(p.diversity(&a, &dead), 1.0);
}

// ---------------------------------------------------------------- minidungeons

const DUNGEON: &[(char, i64)] = &[
    ('.', minidungeons::FLOOR),
    ('#', minidungeons::WALL),
    ('S', minidungeons::START),
    ('E', minidungeons::EXIT),
    ('m', minidungeons::MONSTER),
    ('t', minidungeons::TREASURE),
    ('p', minidungeons::POTION),
];

/// Serpentine corridor through an 8x12 grid holding `sequence` in walking order.
fn corridor(sequence: &str) -> Vec<String> {
    let (w, h) = (8usize, 12usize);
    let mut grid = vec![vec!['#'; w]; h];
    let mut path = Vec::new();
    for y in (0..h).step_by(2) {
        let row: Vec<usize> = if (y / 2) % 2 == 0 { (0..w).collect() } else { (0..w).rev().collect() };
        path.extend(row.iter().map(|&x| (x, y)));
        if y + 1 < h {
            path.push((*row.last().unwrap(), y + 1));
        }
    }
    for (k, c) in sequence.chars().enumerate() {
        let (x, y) = path[k];
        grid[y][x] = c;
    }
    grid.into_iter().map(|r| r.into_iter().collect()).collect()
}

/// Walks the corridor symbols in order, returning hp at the exit or `None` on death.
fn hp_ledger(sequence: &str, hp: i64, damage: i64, heal: i64) -> Option<i64> {
    let mut hp = hp;
    for c in sequence.chars() {
        match c {
            'm' => hp -= damage,
            'p' => hp += heal,
            _ => {}
        }
        if hp <= 0 {
            return None;
        }
    }
    Some(hp)
}

#[test]
fn minidungeons_corridor_needs_enough_potions() {
    let p = problem("minidungeons-v0");
    let cases = [
        ("Smmmmpmmmmpmmmm.E", false),
        ("Spmmmmpmmmmpmmmm.E", true),
        ("Spmmmmpmmmmpmmmmpp.E", true),
    ];
    for (sequence, expect_alive) in cases {
        let ledger = hp_ledger(sequence, 40, 5, 10);
        assert_eq!(ledger.is_some(), expect_alive, "{sequence}");
        let rows = corridor(sequence);
        let rows: Vec<&str> = rows.iter().map(String::as_str).collect();
        let (info, subs, q) = scores(p.as_ref(), &art(&rows, DUNGEON));
        assert_eq!(info.flag("solvable"), expect_alive, "{sequence}");
        if let Some(hp) = ledger {
            assert_eq!(info.int("kills"), 12);
            assert_eq!(info.int("hp_left"), hp);
            assert_eq!(subs, vec![1.0; 4]);
            assert_eq!(q, 1.0);
        } else {
            assert_eq!(subs[2], 0.0);
            assert!(q < 1.0);
        }
    }
}

#[test]
fn minidungeons_missing_exit() {
    let rows = corridor("Smmmmpmmmmpmmmmp..");
    let rows: Vec<&str> = rows.iter().map(String::as_str).collect();
    let p = problem("minidungeons-v0");
    let (_, subs, _) = scores(p.as_ref(), &art(&rows, DUNGEON));
    assert!(subs[0] < 1.0);
    assert_eq!(subs[2], 0.0);
}

#[test]
fn minidungeons_avoidable_monsters_fall_short_of_the_kill_target() {
    // Monsters fill the lower row; the top row is an equally short bypass.
    let mut rows = vec!["########".to_string(); 12];
    rows[0] = "S......E".into();
    rows[1] = "mmmmmmmm".into();
    rows[2] = "mmmmmpp#".into();
    let rows: Vec<&str> = rows.iter().map(String::as_str).collect();
    let p = problem("minidungeons-v0");
    let (info, subs, q) = scores(p.as_ref(), &art(&rows, DUNGEON));
    assert!(info.flag("solvable"));
    assert_eq!(info.int("path_length"), 7);
    assert_eq!(info.int("kills"), 0);
    assert_eq!(subs[3], 0.0);
    assert!(q < 1.0);
}

// ---------------------------------------------------------------- isaac

const ISAAC: &[(char, i64)] = &[
    ('.', isaac::NONE),
    ('n', isaac::NORMAL),
    ('S', isaac::START),
    ('B', isaac::BOSS),
    ('T', isaac::TREASURE),
    ('$', isaac::SHOP),
];

fn isaac_rows(first: &str) -> Vec<String> {
    let mut rows = vec!["........".to_string(); 8];
    rows[3] = first.to_string();
    rows
}

#[test]
fn isaac_straight_line_is_feasible() {
    let rows = isaac_rows("SnnT$nnB");
    let rows: Vec<&str> = rows.iter().map(String::as_str).collect();
    let p = problem("isaac-v0");
    let (info, subs, q) = scores(p.as_ref(), &art(&rows, ISAAC));
    assert_eq!(info.int("rooms"), 8);
    assert_eq!(info.int("boss_distance"), 7);
    assert_eq!(subs, vec![1.0; 5]);
    assert_eq!(q, 1.0);
    assert_eq!(p.controllability(&info, &Value::record([("rooms", Value::Int(9))])), 1.0);
    assert!(p.controllability(&info, &Value::record([("rooms", Value::Int(12))])) < 1.0);
}

#[test]
fn isaac_two_bosses_and_adjacent_boss() {
    let p = problem("isaac-v0");
    let rows = isaac_rows("SnnT$nBB");
    let rows: Vec<&str> = rows.iter().map(String::as_str).collect();
    let (_, subs, _) = scores(p.as_ref(), &art(&rows, ISAAC));
    assert!(subs[1] < 1.0);

    let rows = isaac_rows("SBnT$nnn");
    let rows: Vec<&str> = rows.iter().map(String::as_str).collect();
    let (info, subs, _) = scores(p.as_ref(), &art(&rows, ISAAC));
    assert_eq!(info.int("boss_distance"), 1);
    assert!(close(subs[2], 1.0 / 3.0));
}

// ---------------------------------------------------------------- dave

const DAVE: &[(char, i64)] = &[
    ('.', dave::EMPTY),
    ('#', dave::SOLID),
    ('^', dave::SPIKE),
    ('*', dave::DIAMOND),
    ('S', dave::START),
    ('E', dave::EXIT),
];

fn oracle_jumps(rows: &[&str]) -> Option<(usize, usize)> {
    let tiles: Vec<char> = rows.iter().flat_map(|r| r.chars()).collect();
    Sim { w: rows[0].len() as isize, h: rows.len() as isize, tiles: &tiles, jump: 2 }.oracle()
}

#[test]
fn dave_flat_walk_needs_no_jump() {
    let rows = ["...........", "...........", "...........", "...........", "...........", "S*E........", "###########"];
    let p = problem("dave-v0");
    let (info, subs, q) = scores(p.as_ref(), &art(&rows, DAVE));
    assert!(info.flag("solvable"));
    assert_eq!(info.int("jumps"), 0);
    assert_eq!(subs[1], 1.0);
    assert_eq!(subs[2], 0.0);
    assert!(q < 1.0);
}

#[test]
fn dave_diamond_on_a_high_ledge_is_unreachable() {
    let rows = ["...........", ".....*.....", ".....#.....", "...........", "...........", "S.........E", "###########"];
    let p = problem("dave-v0");
    let (info, subs, _) = scores(p.as_ref(), &art(&rows, DAVE));
    assert_eq!(info.int("reachable_diamonds"), 0);
    assert!(subs[3] < 1.0);
    assert!(!info.flag("solvable"));
}

#[test]
fn dave_two_spike_pits_force_two_jumps() {
    let rows = ["...........", "...........", "...........", "...........", "...........", "S..^.*.^..E", "###########"];
    assert_eq!(oracle_jumps(&rows).map(|(j, _)| j), Some(2));
    let p = problem("dave-v0");
    let (info, subs, q) = scores(p.as_ref(), &art(&rows, DAVE));
    assert_eq!(info.int("jumps"), 2);
    assert_eq!(Some((2, info.int("solution_length") as usize)), oracle_jumps(&rows));
    assert_eq!(subs, vec![1.0; 4]);
    assert_eq!(q, 1.0);
    let control = Value::record([
        ("start_x", Value::Int(1)),
        ("start_y", Value::Int(5)),
        ("exit_x", Value::Int(10)),
        ("exit_y", Value::Int(4)),
        ("diamonds", Value::Int(1)),
    ]);
    assert_eq!(p.controllability(&info, &control), 1.0);
}

// ---------------------------------------------------------------- elimination

fn letters(word: &str) -> Value {
    Value::ints(&word.bytes().map(|b| i64::from(b - b'a')).collect::<Vec<_>>())
}

#[test]
fn elimination_repeated_z_spells_nothing() {
    let p = problem("elimination-v0");
    let (info, subs, q) = scores(p.as_ref(), &letters("zzzzzzzz"));
    assert!(info.text("words").is_empty());
    assert_eq!(subs[1], 0.0);
    assert_eq!(subs[2], 0.0);
    assert!(q < 1.0);
}

#[test]
fn elimination_seed_satisfies_both_bands() {
    let seed = "clerkvvk";
    // Naive oracle: scan the whole dictionary for spellable words.
    let dict = Dictionary::bundled();
    let mut have = [0usize; 26];
    for b in seed.bytes() {
        have[usize::from(b - b'a')] += 1;
    }
    let spellable: Vec<(usize, f64)> = dict
        .words()
        .iter()
        .enumerate()
        .filter(|(_, w)| {
            let mut need = [0usize; 26];
            w.bytes().for_each(|b| need[usize::from(b - b'a')] += 1);
            need.iter().zip(&have).all(|(n, h)| n <= h)
        })
        .map(|(i, w)| (w.len(), (i + 1) as f64 / dict.len() as f64))
        .collect();
    let short: Vec<f64> = spellable.iter().filter(|(l, _)| (3..=4).contains(l)).map(|&(_, p)| p).collect();
    let long: Vec<f64> = spellable.iter().filter(|(l, _)| (5..=6).contains(l)).map(|&(_, p)| p).collect();
    assert!(short.iter().any(|p| (0.4..=0.6).contains(p)));
    assert!(long.iter().any(|p| (0.6..=0.8).contains(p)));
    assert!(short.iter().all(|p| (0.4..=0.6).contains(p)));
    assert!(long.iter().all(|p| (0.6..=0.8).contains(p)));
    assert!(spellable.iter().all(|(l, _)| *l <= 6));

    let p = problem("elimination-v0");
    let (_, subs, q) = scores(p.as_ref(), &letters(seed));
    assert_eq!(subs, vec![1.0; 5]);
    assert_eq!(q, 1.0);
    assert_eq!(p.render(&letters(seed)), pcgbench_core::Rendering::Text(format!("{seed}\n")));
}

#[test]
fn elimination_diversity_counts_letter_changes() {
    let p = problem("elimination-v0");
    let a = p.info(&letters("clerkvvk"));
    let b = p.info(&letters("kvvkrelc"));
    let c = p.info(&letters("clerkvvz"));
    let d = p.info(&letters("clerzzzz"));
    assert_eq!(p.diversity(&a, &b), 0.0, "same multiset");
    assert!(close(p.diversity(&a, &c), 1.0 / 3.0));
    assert_eq!(p.diversity(&a, &d), 1.0);
}

// ---------------------------------------------------------------- building

fn blocks(list: &[(i64, i64, i64, i64)]) -> Value {
    let mut all: Vec<Value> = list
        .iter()
        .map(|&(t, x, y, z)| {
            Value::record([("type", Value::Int(t)), ("x", Value::Int(x)), ("y", Value::Int(y)), ("z", Value::Int(z))])
        })
        .collect();
    assert_eq!(all.len(), 40);
    Value::List(std::mem::take(&mut all))
}

#[test]
fn building_tower_then_floor_is_feasible() {
    let mut list: Vec<(i64, i64, i64, i64)> = (0..12).map(|z| (0, 0, 0, z)).collect();
    list.extend((1..49).take(28).map(|i| (0, i % 7, i / 7, 0)));
    let p = problem("building-v0");
    let (info, subs, q) = scores(p.as_ref(), &blocks(&list));
    assert_eq!(info.int("height"), 12);
    assert_eq!(subs, vec![1.0; 5]);
    assert_eq!(q, 1.0);
    let _ = building::Building::default();
}

#[test]
fn building_overlap_and_flat_layouts() {
    let p = problem("building-v0");
    let mut list: Vec<(i64, i64, i64, i64)> = (0..40).map(|i| (0, i % 7, i / 7, 0)).collect();
    let (info, subs, q) = scores(p.as_ref(), &blocks(&list));
    assert_eq!(info.int("height"), 1);
    assert!(close(subs[4], 1.0 / 7.0));
    assert!(q < 1.0);

    list[39] = (0, 0, 0, 0);
    let (_, subs, _) = scores(p.as_ref(), &blocks(&list));
    assert_eq!(subs[1], 0.0);
}
