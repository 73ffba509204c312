//! Complementation of Büchi automata through class-specialized constructions.
//!
//! Inherently weak automata are complemented with a Miyano-Hayashi style
//! subset construction on an equivalent co-Büchi automaton, optionally
//! adjusting every macrostate by a simulation-based function θ.
//! Semi-deterministic automata go through NCSB-MaxRank. Everything else is
//! reported as unsupported.
//!
//! ```
//! use bacomp::fixtures::w1;
//! use bacomp::pipeline::{complement, PipelineConfig};
//! use bacomp::product::intersection_empty;
//!
//! let a = w1();
//! let (c, report) = complement(&a, &PipelineConfig::default()).unwrap();
//! assert_eq!(report.class().as_str(), "IW");
//! assert_eq!(c.num_states(), 2);
//! assert!(intersection_empty(&a, &c).unwrap().is_empty());
//! ```

pub mod analysis;
pub mod automaton;
pub mod complement;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod graph;
pub mod lasso;
pub mod oracle;
pub mod pipeline;
pub mod preprocess;
pub mod product;
pub mod set;

pub use automaton::{Alphabet, BuchiAutomaton, CoBuchiAutomaton, State, Symbol};
pub use error::{Error, Result};
pub use lasso::Lasso;
pub use set::StateSet;
