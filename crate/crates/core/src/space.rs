//! Possibility spaces for content and control values.
//!
//! A [`SpaceDescriptor`] is a tree whose leaves are bounded integer ranges.
//! Every operation that walks a value does so in the same depth-first order:
//! arrays by index, grids row-major (`[y][x]`, and `[z][y][x]` for 3D), and
//! records in the field order of the descriptor. That order defines the flat
//! representation.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::SpaceError;

/// A description of every valid value of some content or control parameter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceDescriptor {
    /// Values `0..cardinality`.
    Discrete { cardinality: u32 },
    /// Values `lo..=hi`.
    Range { lo: i64, hi: i64 },
    Array { element: Box<SpaceDescriptor>, length: usize },
    Grid2D { element: Box<SpaceDescriptor>, width: usize, height: usize },
    Grid3D { element: Box<SpaceDescriptor>, width: usize, height: usize, depth: usize },
    Record { fields: Vec<(String, SpaceDescriptor)> },
}

/// A value structurally matching some [`SpaceDescriptor`].
///
/// Serializes to plain JSON: integers, nested arrays and (for records) objects.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    List(Vec<Value>),
    Record(BTreeMap<String, Value>),
}

impl Value {
    pub fn grid(rows: &[Vec<i64>]) -> Value {
        Value::List(
            rows.iter()
                .map(|row| Value::List(row.iter().copied().map(Value::Int).collect()))
                .collect(),
        )
    }

    pub fn ints(values: &[i64]) -> Value {
        Value::List(values.iter().copied().map(Value::Int).collect())
    }

    pub fn record<I, K>(fields: I) -> Value
    where
        I: IntoIterator<Item = (K, Value)>,
        K: Into<String>,
    {
        Value::Record(fields.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Value::Int(v) => Some(*v),
            _ => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Value]> {
        match self {
            Value::List(items) => Some(items),
            _ => None,
        }
    }

    /// Integer field of a record value.
    pub fn field_int(&self, name: &str) -> Option<i64> {
        match self {
            Value::Record(map) => map.get(name).and_then(Value::as_int),
            _ => None,
        }
    }

    pub fn field(&self, name: &str) -> Option<&Value> {
        match self {
            Value::Record(map) => map.get(name),
            _ => None,
        }
    }
}

impl SpaceDescriptor {
    pub fn discrete(cardinality: u32) -> Self {
        SpaceDescriptor::Discrete { cardinality }
    }

    pub fn range(lo: i64, hi: i64) -> Self {
        SpaceDescriptor::Range { lo, hi }
    }

    pub fn array(element: SpaceDescriptor, length: usize) -> Self {
        SpaceDescriptor::Array { element: Box::new(element), length }
    }

    pub fn grid2d(element: SpaceDescriptor, width: usize, height: usize) -> Self {
        SpaceDescriptor::Grid2D { element: Box::new(element), width, height }
    }

    pub fn grid3d(element: SpaceDescriptor, width: usize, height: usize, depth: usize) -> Self {
        SpaceDescriptor::Grid3D { element: Box::new(element), width, height, depth }
    }

    pub fn record<I, K>(fields: I) -> Self
    where
        I: IntoIterator<Item = (K, SpaceDescriptor)>,
        K: Into<String>,
    {
        SpaceDescriptor::Record {
            fields: fields.into_iter().map(|(k, v)| (k.into(), v)).collect(),
        }
    }

    /// Checks the structural invariants of the descriptor itself.
    pub fn validate(&self) -> Result<(), SpaceError> {
        use SpaceDescriptor::*;
        match self {
            Discrete { cardinality } if *cardinality == 0 => {
                Err(SpaceError::Malformed("discrete cardinality must be at least 1".into()))
            }
            Range { lo, hi } if lo > hi => {
                Err(SpaceError::Malformed(format!("range lo {lo} exceeds hi {hi}")))
            }
            Discrete { .. } | Range { .. } => Ok(()),
            Array { element, length } => {
                if *length == 0 {
                    return Err(SpaceError::Malformed("array length must be at least 1".into()));
                }
                element.validate()
            }
            Grid2D { element, width, height } => {
                if *width == 0 || *height == 0 {
                    return Err(SpaceError::Malformed("grid dimensions must be at least 1".into()));
                }
                element.validate()
            }
            Grid3D { element, width, height, depth } => {
                if *width == 0 || *height == 0 || *depth == 0 {
                    return Err(SpaceError::Malformed("grid dimensions must be at least 1".into()));
                }
                element.validate()
            }
            Record { fields } => {
                let mut seen = std::collections::BTreeSet::new();
                for (name, field) in fields {
                    if !seen.insert(name.as_str()) {
                        return Err(SpaceError::Malformed(format!("duplicate record field `{name}`")));
                    }
                    field.validate()?;
                }
                Ok(())
            }
        }
    }

    /// Number of integer leaves in any value of this space.
    pub fn leaf_count(&self) -> usize {
        use SpaceDescriptor::*;
        match self {
            Discrete { .. } | Range { .. } => 1,
            Array { element, length } => element.leaf_count() * length,
            Grid2D { element, width, height } => element.leaf_count() * width * height,
            Grid3D { element, width, height, depth } => element.leaf_count() * width * height * depth,
            Record { fields } => fields.iter().map(|(_, f)| f.leaf_count()).sum(),
        }
    }

    /// Inclusive bounds of every leaf, in flat order.
    pub fn leaf_bounds(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::with_capacity(self.leaf_count());
        self.collect_bounds(&mut out);
        out
    }

    fn collect_bounds(&self, out: &mut Vec<(i64, i64)>) {
        use SpaceDescriptor::*;
        match self {
            Discrete { cardinality } => out.push((0, i64::from(*cardinality) - 1)),
            Range { lo, hi } => out.push((*lo, *hi)),
            Array { element, length } => (0..*length).for_each(|_| element.collect_bounds(out)),
            Grid2D { element, width, height } => {
                (0..width * height).for_each(|_| element.collect_bounds(out))
            }
            Grid3D { element, width, height, depth } => {
                (0..width * height * depth).for_each(|_| element.collect_bounds(out))
            }
            Record { fields } => fields.iter().for_each(|(_, f)| f.collect_bounds(out)),
        }
    }

    fn leaf_range(&self) -> Option<(i64, i64)> {
        match self {
            SpaceDescriptor::Discrete { cardinality } => Some((0, i64::from(*cardinality) - 1)),
            SpaceDescriptor::Range { lo, hi } => Some((*lo, *hi)),
            _ => None,
        }
    }

    /// Draws a value with every leaf independent and uniform over its range.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Value {
        self.build(&mut |lo, hi| rng.random_range(lo..=hi))
    }

    fn build(&self, leaf: &mut dyn FnMut(i64, i64) -> i64) -> Value {
        use SpaceDescriptor::*;
        if let Some((lo, hi)) = self.leaf_range() {
            return Value::Int(leaf(lo, hi));
        }
        match self {
            Array { element, length } => Value::List((0..*length).map(|_| element.build(leaf)).collect()),
            Grid2D { element, width, height } => Value::List(
                (0..*height)
                    .map(|_| Value::List((0..*width).map(|_| element.build(leaf)).collect()))
                    .collect(),
            ),
            Grid3D { element, width, height, depth } => Value::List(
                (0..*depth)
                    .map(|_| {
                        Value::List(
                            (0..*height)
                                .map(|_| Value::List((0..*width).map(|_| element.build(leaf)).collect()))
                                .collect(),
                        )
                    })
                    .collect(),
            ),
            Record { fields } => Value::Record(
                fields.iter().map(|(name, f)| (name.clone(), f.build(leaf))).collect(),
            ),
            Discrete { .. } | Range { .. } => unreachable!(),
        }
    }

    /// Walks `value` in flat order, calling `visit(leaf_index, leaf, lo, hi)` per leaf.
    fn walk(
        &self,
        value: &Value,
        leaf: &mut usize,
        visit: &mut dyn FnMut(usize, i64, i64, i64) -> Result<(), SpaceError>,
    ) -> Result<(), SpaceError> {
        use SpaceDescriptor::*;
        let structure = |leaf: usize, reason: String| SpaceError::Structure { leaf, reason };
        if let Some((lo, hi)) = self.leaf_range() {
            let Value::Int(v) = value else {
                return Err(structure(*leaf, "expected an integer".into()));
            };
            visit(*leaf, *v, lo, hi)?;
            *leaf += 1;
            return Ok(());
        }
        match self {
            Array { element, length } => {
                for item in as_list(value, *length, *leaf, "elements")? {
                    element.walk(item, leaf, visit)?;
                }
            }
            Grid2D { element, width, height } => {
                for row in as_list(value, *height, *leaf, "rows")? {
                    for cell in as_list(row, *width, *leaf, "columns")? {
                        element.walk(cell, leaf, visit)?;
                    }
                }
            }
            Grid3D { element, width, height, depth } => {
                for layer in as_list(value, *depth, *leaf, "layers")? {
                    for row in as_list(layer, *height, *leaf, "rows")? {
                        for cell in as_list(row, *width, *leaf, "columns")? {
                            element.walk(cell, leaf, visit)?;
                        }
                    }
                }
            }
            Record { fields } => {
                let Value::Record(map) = value else {
                    return Err(structure(*leaf, "expected a record".into()));
                };
                if map.len() != fields.len() {
                    return Err(structure(
                        *leaf,
                        format!("expected {} record fields, found {}", fields.len(), map.len()),
                    ));
                }
                for (name, field) in fields {
                    let item = map
                        .get(name)
                        .ok_or_else(|| structure(*leaf, format!("missing record field `{name}`")))?;
                    field.walk(item, leaf, visit)?;
                }
            }
            Discrete { .. } | Range { .. } => unreachable!(),
        }
        Ok(())
    }

    /// Checks a value against this space, reporting the first offending leaf.
    pub fn check(&self, value: &Value) -> Result<(), SpaceError> {
        let mut leaf = 0;
        self.walk(value, &mut leaf, &mut |index, v, lo, hi| {
            if (lo..=hi).contains(&v) {
                Ok(())
            } else {
                Err(SpaceError::LeafOutOfRange { leaf: index, value: v, lo, hi })
            }
        })
    }

    pub fn contains(&self, value: &Value) -> bool {
        self.check(value).is_ok()
    }

    /// Flat integer representation in depth-first leaf order.
    pub fn flatten(&self, value: &Value) -> Result<Vec<i64>, SpaceError> {
        let mut out = Vec::with_capacity(self.leaf_count());
        let mut leaf = 0;
        self.walk(value, &mut leaf, &mut |index, v, lo, hi| {
            if !(lo..=hi).contains(&v) {
                return Err(SpaceError::LeafOutOfRange { leaf: index, value: v, lo, hi });
            }
            out.push(v);
            Ok(())
        })?;
        Ok(out)
    }

    pub fn unflatten(&self, flat: &[i64]) -> Result<Value, SpaceError> {
        let expected = self.leaf_count();
        if flat.len() != expected {
            return Err(SpaceError::LengthMismatch { expected, actual: flat.len() });
        }
        for (leaf, (&v, (lo, hi))) in flat.iter().zip(self.leaf_bounds()).enumerate() {
            if !(lo..=hi).contains(&v) {
                return Err(SpaceError::LeafOutOfRange { leaf, value: v, lo, hi });
            }
        }
        let mut it = flat.iter().copied();
        Ok(self.build(&mut |_, _| it.next().expect("length checked above")))
    }

    /// Comma-joined flat form, used for hashing and serialization only.
    pub fn canonical_string(&self, value: &Value) -> Result<String, SpaceError> {
        let flat = self.flatten(value)?;
        let mut out = String::with_capacity(flat.len() * 2);
        for (i, v) in flat.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{v}");
        }
        Ok(out)
    }

    /// Resamples each leaf uniformly with probability `rate`.
    ///
    /// # Panics
    /// If `value` is not contained in the space.
    pub fn mutate<R: Rng + ?Sized>(&self, value: &Value, rate: f64, rng: &mut R) -> Value {
        let mut flat = self.flatten(value).expect("mutate requires a contained value");
        for (v, (lo, hi)) in flat.iter_mut().zip(self.leaf_bounds()) {
            if rng.random_bool(rate) {
                *v = rng.random_range(lo..=hi);
            }
        }
        self.unflatten(&flat).expect("mutation stays in space")
    }

    /// Uniform crossover: each leaf comes from `a` or `b` with probability one half.
    ///
    /// # Panics
    /// If either parent is not contained in the space.
    pub fn mix<R: Rng + ?Sized>(&self, a: &Value, b: &Value, rng: &mut R) -> Value {
        let fa = self.flatten(a).expect("mix requires contained parents");
        let fb = self.flatten(b).expect("mix requires contained parents");
        let child: Vec<i64> = fa
            .iter()
            .zip(&fb)
            .map(|(&x, &y)| if rng.random_bool(0.5) { x } else { y })
            .collect();
        self.unflatten(&child).expect("mixing stays in space")
    }
}

fn as_list<'a>(value: &'a Value, len: usize, leaf: usize, what: &str) -> Result<&'a [Value], SpaceError> {
    match value {
        Value::List(items) if items.len() == len => Ok(items),
        Value::List(items) => Err(SpaceError::Structure {
            leaf,
            reason: format!("expected {len} {what}, found {}", items.len()),
        }),
        _ => Err(SpaceError::Structure { leaf, reason: format!("expected a list of {len} {what}") }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn record_flattens_in_field_order() {
        let space = SpaceDescriptor::record([
            ("a", SpaceDescriptor::discrete(3)),
            ("b", SpaceDescriptor::range(2, 4)),
        ]);
        let v = Value::record([("a", Value::Int(1)), ("b", Value::Int(4))]);
        assert_eq!(space.flatten(&v).unwrap(), vec![1, 4]);
        assert_eq!(space.unflatten(&[1, 4]).unwrap(), v);
    }

    #[test]
    fn unflatten_reports_offending_leaf() {
        let err = SpaceDescriptor::discrete(3).unflatten(&[5]).unwrap_err();
        assert_eq!(err, SpaceError::LeafOutOfRange { leaf: 0, value: 5, lo: 0, hi: 2 });
        let err = SpaceDescriptor::array(SpaceDescriptor::discrete(2), 3)
            .unflatten(&[0, 1])
            .unwrap_err();
        assert_eq!(err, SpaceError::LengthMismatch { expected: 3, actual: 2 });
    }

    #[test]
    fn contains_rejects_range_and_shape_errors() {
        assert!(!SpaceDescriptor::range(0, 5).contains(&Value::Int(6)));
        let rec = SpaceDescriptor::record([("x", SpaceDescriptor::range(0, 10))]);
        assert!(rec.contains(&Value::record([("x", Value::Int(3))])));
        assert!(!rec.contains(&Value::record([("y", Value::Int(3))])));
        let grid = SpaceDescriptor::grid2d(SpaceDescriptor::discrete(2), 14, 14);
        let short = Value::grid(&vec![vec![0; 14]; 13]);
        assert!(!grid.contains(&short));
        assert!(grid.contains(&Value::grid(&vec![vec![1; 14]; 14])));
    }

    #[test]
    fn grid_sample_has_grid_shape() {
        let grid = SpaceDescriptor::grid2d(SpaceDescriptor::discrete(2), 14, 14);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let v = grid.sample(&mut rng);
        let Value::List(rows) = &v else { panic!("grid is a list") };
        assert_eq!(rows.len(), 14);
        assert!(rows.iter().all(|r| matches!(r, Value::List(c) if c.len() == 14)));
        assert!(grid.flatten(&v).unwrap().iter().all(|&x| x == 0 || x == 1));
    }

    #[test]
    fn seeded_sampling_is_reproducible() {
        let space = SpaceDescriptor::grid3d(SpaceDescriptor::range(-2, 9), 3, 4, 2);
        let a = space.sample(&mut ChaCha8Rng::seed_from_u64(42));
        let b = space.sample(&mut ChaCha8Rng::seed_from_u64(42));
        assert_eq!(a, b);
    }

    #[test]
    fn validate_catches_malformed_descriptors() {
        assert!(SpaceDescriptor::discrete(0).validate().is_err());
        assert!(SpaceDescriptor::range(3, 2).validate().is_err());
        assert!(SpaceDescriptor::array(SpaceDescriptor::discrete(2), 0).validate().is_err());
        assert!(SpaceDescriptor::record([
            ("a", SpaceDescriptor::discrete(2)),
            ("a", SpaceDescriptor::discrete(2)),
        ])
        .validate()
        .is_err());
    }

    #[test]
    fn value_json_shape() {
        let v = Value::record([("x", Value::ints(&[1, 2])), ("y", Value::Int(3))]);
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(text, r#"{"x":[1,2],"y":3}"#);
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn canonical_string_is_comma_joined() {
        let space = SpaceDescriptor::array(SpaceDescriptor::range(-1, 20), 3);
        let s = space.canonical_string(&Value::ints(&[-1, 0, 17])).unwrap();
        assert_eq!(s, "-1,0,17");
    }
}
