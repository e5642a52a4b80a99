#![doc = include_str!("../../../README.md")]

pub mod axial;
pub mod catalog;
pub mod characters;
pub mod criteria;
pub mod error;
pub mod lattice;
pub mod oracle;
pub mod tables;
pub mod verify;

pub use axial::{AxialIrrep, AxialLabel, AxialResult};
pub use catalog::{Family, GroupElement, GroupId, Rotations, Structure};
pub use characters::{subduce, subduce_closed, subduce_continuous, subduce_trace, Irrep, Parity};
pub use criteria::{massive_little_groups, ChainCoverage, CriterionVerdict, LittleGroupEntry};
pub use error::{Error, Result};
pub use lattice::{is_subgroup, subgroups, LatticeSlice};
pub use oracle::{CoeffVector, Tesseral};
