//! Benchmark engine for game content generators.
//!
//! Problems describe their content and control possibility spaces and score
//! artifacts on quality, diversity and controllability. [`evaluate`] turns a
//! batch of contents into a [`BenchmarkReport`]; the [`generators`] module
//! holds the baseline search generators and fitness functions.

pub mod error;
pub mod eval;
pub mod generators;
pub mod info;
pub mod problem;
pub mod problems;
pub mod registry;
pub mod solvers;
pub mod space;

pub use error::{CoreError, SolverError, SpaceError};
pub use eval::{count_unique, evaluate, percentage, set_diversity, ArtifactReport, BenchmarkReport};
pub use info::{InfoRecord, InfoValue};
pub use problem::{ParamValue, ProblemContract, Rendering, RgbImage, VariantParams};
pub use registry::{make, make_default, Overrides};
pub use space::{SpaceDescriptor, Value};
