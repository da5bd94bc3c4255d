use pcgbench_core::{evaluate, make, make_default, CoreError, Overrides, ParamValue, Value};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn open_binary() -> Value {
    Value::grid(&vec![vec![0; 14]; 14])
}

#[test]
fn batch_percentages_follow_the_artifacts() {
    let p = make_default("binary-v0").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut contents: Vec<Value> = (0..9).map(|_| p.content_space().sample(&mut rng)).collect();
    contents.push(contents[0].clone());
    let report = evaluate(p.as_ref(), &contents, None).unwrap();
    assert_eq!(report.artifacts.len(), 10);
    // The duplicated pair has diversity 0, so at most 8 are unique.
    assert_eq!(report.artifacts[0].diversity, 0.0);
    assert_eq!(report.artifacts[9].diversity, 0.0);
    assert!(report.r_diversity <= 80.0);
    assert_eq!(report.r_controllability, 0.0);
    let feasible = report.artifacts.iter().filter(|a| a.feasible()).count();
    assert_eq!(report.r_quality, 10.0 * feasible as f64);
}

#[test]
fn singleton_batch_is_unique() {
    let p = make_default("binary-v0").unwrap();
    let report = evaluate(p.as_ref(), &[open_binary()], None).unwrap();
    assert_eq!(report.artifacts[0].diversity, 1.0);
    assert_eq!(report.r_diversity, 100.0);
}

#[test]
fn controls_are_checked_and_scored() {
    let p = make_default("binary-v0").unwrap();
    let control = Value::record([("path_target", Value::Int(28))]);
    let report = evaluate(p.as_ref(), &[open_binary()], Some(&[control])).unwrap();
    // Diameter 26 sits 2 below the window [28, 38]: falloff 26/28.
    assert!((report.artifacts[0].controllability - 26.0 / 28.0).abs() < 1e-12);

    let wrong = Value::record([("path_target", Value::Int(500))]);
    assert!(matches!(
        evaluate(p.as_ref(), &[open_binary()], Some(&[wrong])),
        Err(CoreError::InvalidControl { index: 0, .. })
    ));
    assert!(matches!(
        evaluate(p.as_ref(), &[open_binary()], Some(&[])),
        Err(CoreError::ControlCountMismatch { .. })
    ));
}

#[test]
fn malformed_batches_are_rejected() {
    let p = make_default("binary-v0").unwrap();
    assert!(matches!(evaluate(p.as_ref(), &[], None), Err(CoreError::EmptyBatch)));
    let bad = Value::grid(&vec![vec![7; 14]; 14]);
    assert!(matches!(
        evaluate(p.as_ref(), &[open_binary(), bad], None),
        Err(CoreError::InvalidContent { index: 1, .. })
    ));
    let short = Value::grid(&vec![vec![0; 13]; 14]);
    assert!(evaluate(p.as_ref(), &[short], None).is_err());
}

#[test]
fn variants_resize_the_spaces() {
    let mut overrides = Overrides::new();
    overrides.insert("width".into(), ParamValue::Int(6));
    overrides.insert("height".into(), ParamValue::Int(4));
    let p = make("binary-v0", &overrides).unwrap();
    assert_eq!(p.content_space().leaf_count(), 24);
    assert!(evaluate(p.as_ref(), &[Value::grid(&vec![vec![0; 6]; 4])], None).is_ok());
    assert!(make("no-such-v0", &Overrides::new()).is_err());
    assert!(make("mario-v0", &Overrides::new()).is_err());
}
