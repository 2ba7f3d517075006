//! Lattice paths, the cycle method and Chung-Feller type equidistribution.

pub mod bijections;
pub mod cycle;
pub mod error;
pub mod family;
pub mod forms;
pub mod path;
pub mod series;
pub mod stats;
pub mod theorems;

pub use error::{CfError, Result};
pub use family::{Budget, FamilySpec, Statistic};
pub use path::{Path, Step, StepSet};
pub use stats::Selector;
