//! Name-based lookup of problems with variant overrides.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::CoreError;
use crate::problem::{ParamValue, ProblemContract, VariantParams};
use crate::problems::{Binary, Building, Dave, Elimination, Isaac, MiniDungeons, Sokoban, Zelda};

/// Variant overrides keyed by parameter name.
pub type Overrides = BTreeMap<String, ParamValue>;

type Constructor = fn(VariantParams) -> Arc<dyn ProblemContract>;

struct Entry {
    name: &'static str,
    defaults: fn() -> VariantParams,
    make: Constructor,
}

const ENTRIES: &[Entry] = &[
    Entry { name: "binary-v0", defaults: Binary::default_params, make: |p| Arc::new(Binary::new(p)) },
    Entry { name: "building-v0", defaults: Building::default_params, make: |p| Arc::new(Building::new(p)) },
    Entry { name: "dave-v0", defaults: Dave::default_params, make: |p| Arc::new(Dave::new(p)) },
    Entry { name: "elimination-v0", defaults: Elimination::default_params, make: |p| Arc::new(Elimination::new(p)) },
    Entry { name: "isaac-v0", defaults: Isaac::default_params, make: |p| Arc::new(Isaac::new(p)) },
    Entry { name: "minidungeons-v0", defaults: MiniDungeons::default_params, make: |p| Arc::new(MiniDungeons::new(p)) },
    Entry { name: "sokoban-v0", defaults: Sokoban::default_params, make: |p| Arc::new(Sokoban::new(p)) },
    Entry { name: "zelda-v0", defaults: Zelda::default_params, make: |p| Arc::new(Zelda::new(p)) },
];

/// Problems that are named but need external simulators or corpora.
pub const RESERVED: &[&str] = &["arcade-v0", "loderunner-v0", "mario-v0", "talakat-v0"];

/// Registered problem names in alphabetical order.
pub fn names() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.name).collect()
}

/// Default variant parameters of a registered problem.
pub fn default_params(name: &str) -> Result<VariantParams, CoreError> {
    Ok((find(name)?.defaults)())
}

fn find(name: &str) -> Result<&'static Entry, CoreError> {
    if RESERVED.contains(&name) {
        return Err(CoreError::ReservedProblem(name.to_string()));
    }
    ENTRIES.iter().find(|e| e.name == name).ok_or_else(|| CoreError::UnknownProblem {
        name: name.to_string(),
        registered: names().into_iter().map(String::from).collect(),
    })
}

/// Builds a problem from its default variant with `overrides` applied.
pub fn make(name: &str, overrides: &Overrides) -> Result<Arc<dyn ProblemContract>, CoreError> {
    let entry = find(name)?;
    let params = (entry.defaults)().with_overrides(name, overrides)?;
    for (key, value) in params.iter() {
        let positive = match value {
            ParamValue::Int(v) => v > 0,
            ParamValue::Real(v) => v > 0.0,
        };
        let may_be_zero = key.starts_with("min_") || key.ends_with("_lo");
        if !(positive || may_be_zero && matches!(value, ParamValue::Int(0)) || may_be_zero && value == ParamValue::Real(0.0)) {
            return Err(CoreError::InvalidOverride { key: key.to_string(), reason: format!("{value} is out of range") });
        }
    }
    Ok((entry.make)(params))
}

/// Builds a problem with its default variant.
pub fn make_default(name: &str) -> Result<Arc<dyn ProblemContract>, CoreError> {
    make(name, &Overrides::new())
}
