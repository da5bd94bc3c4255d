//! Space, evaluator and fitness laws, each panicking on the first violation.

use pcgbench_core::generators::FitnessKind;
use pcgbench_core::{ProblemContract, Value};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn in_unit(x: f64) -> bool {
    (0.0..=1.0).contains(&x)
}

pub fn fuzz_problem(problem: &dyn ProblemContract, samples: usize, seed: u64) {
    let name = problem.name().to_string();
    let content = problem.content_space();
    let control = problem.control_space();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut previous: Option<(Value, pcgbench_core::InfoRecord)> = None;
    let mut feasible = 0usize;
    for i in 0..samples {
        // Mix in variation operator outputs so their results are fuzzed too.
        let c = match (&previous, i % 3) {
            (Some((prev, _)), 1) => content.mutate(prev, 0.1, &mut rng),
            (Some((prev, _)), 2) => {
                let other = content.sample(&mut rng);
                content.mix(prev, &other, &mut rng)
            }
            _ => content.sample(&mut rng),
        };
        let k = control.sample(&mut rng);
        assert!(content.contains(&c), "{name}: content outside its space");
        assert!(control.contains(&k), "{name}: control outside its space");
        assert_eq!(content.unflatten(&content.flatten(&c).unwrap()).unwrap(), c, "{name}");
        assert_eq!(control.unflatten(&control.flatten(&k).unwrap()).unwrap(), k, "{name}");
        assert_eq!(content.mutate(&c, 0.0, &mut rng), c, "{name}");

        let info = problem.info(&c);
        let subs = problem.subscores(&info);
        assert!(!subs.is_empty(), "{name}: no subscores");
        assert!(subs.iter().copied().all(in_unit), "{name}: subscore out of range {subs:?}");
        let q = problem.quality(&info);
        assert!(in_unit(q), "{name}: quality {q}");
        assert_eq!(q >= 1.0, subs.iter().all(|&s| s >= 1.0), "{name}: feasibility must mean every subscore is 1");
        feasible += usize::from(q >= 1.0);
        let t = problem.controllability(&info, &k);
        assert!(in_unit(t), "{name}: controllability {t}");
        assert_eq!(problem.diversity(&info, &info), 0.0, "{name}: self-diversity");
        if let Some((_, prev_info)) = &previous {
            let d = problem.diversity(&info, prev_info);
            assert!(in_unit(d), "{name}: diversity {d}");
            assert_eq!(d, problem.diversity(prev_info, &info), "{name}: diversity must be symmetric");
        }
        previous = Some((c, info));
    }
    // Random samples are almost never feasible, but the count must be sane.
    assert!(feasible <= samples);
}

/// Every (q, t, d) on a 0.01 grid.
fn grid() -> impl Iterator<Item = f64> + Clone {
    (0..=100).map(|i| f64::from(i) / 100.0)
}

pub fn fitness_branch_sweep() {
    for q in grid() {
        for t in grid() {
            let qt = FitnessKind::Qt.score(q, t, 0.0);
            assert!((0.0..=1.0).contains(&qt));
            assert_eq!(qt < 0.5, q < 1.0, "qt q={q} t={t}");
            for d in grid() {
                let f = FitnessKind::Qtd.score(q, t, d);
                assert!((0.0..=1.0).contains(&f));
                assert_eq!(f < 1.0 / 3.0, q < 1.0, "qtd q={q} t={t} d={d}");
                if q >= 1.0 {
                    assert_eq!(f < 2.0 / 3.0, t < 1.0, "qtd q={q} t={t} d={d}");
                }
            }
        }
        assert_eq!(FitnessKind::Q.score(q, 0.3, 0.7), q);
    }
}

pub fn fitness_monotone_sweep() {
    let values: Vec<f64> = grid().collect();
    for pair in values.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        assert!(FitnessKind::Qt.score(1.0, hi, 0.0) > FitnessKind::Qt.score(1.0, lo, 0.0));
        assert!(FitnessKind::Qtd.score(1.0, 1.0, hi) > FitnessKind::Qtd.score(1.0, 1.0, lo));
        if hi < 1.0 {
            assert!(FitnessKind::Qtd.score(1.0, hi, 0.5) > FitnessKind::Qtd.score(1.0, lo, 0.5));
        }
        // Below feasibility only quality matters.
        assert!(FitnessKind::Qt.score(hi.min(0.99), 0.0, 0.0) >= FitnessKind::Qt.score(lo.min(0.99), 1.0, 0.0));
    }
}

pub fn fitness_dominance_sweep() {
    for q in grid().filter(|&q| q < 1.0) {
        for t in grid() {
            for kind in FitnessKind::ALL {
                let infeasible = kind.score(q, 1.0, 1.0);
                let feasible = kind.score(1.0, t, 0.0);
                assert!(feasible > infeasible, "{kind} q={q} t={t}");
            }
        }
    }
}
