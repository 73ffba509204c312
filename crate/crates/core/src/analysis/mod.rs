//! Structural analysis: components, classes, simulation and reachability.

mod relation;
mod scc;
mod sdba;

pub use relation::{direct_simulation, reachability, Reachability, Relation, SimPreorder};
pub use scc::{
    classify, classify_with, is_semi_deterministic, is_weak, scc_decompose, Classification,
    ComponentKind, DispatchClass, SccAnalysis,
};
pub use sdba::{sdba_partition, SdbaPartition};
