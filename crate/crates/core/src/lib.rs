//! Incremental topological ordering and strong-component maintenance.
//!
//! [`TopoMaintainer`] keeps a topological order of a growing directed graph
//! and reports a witness cycle for the first arc that closes one.
//! [`SccMaintainer`] keeps strong components and a topological order of the
//! condensation, absorbing cycles instead of stopping. Both run a balanced,
//! compatible bidirectional search steered by a soft threshold that is either
//! an approximate median or a uniformly random candidate.
//!
//! ```
//! use incr_topo::{Insertion, ThresholdStrategy, TopoMaintainer};
//!
//! let mut m = TopoMaintainer::new(3, ThresholdStrategy::median()).unwrap();
//! assert_eq!(m.insert_arc(2, 1).unwrap(), Insertion::Ok);
//! assert!(m.precedes(2, 1).unwrap());
//! m.insert_arc(1, 0).unwrap();
//! assert!(matches!(m.insert_arc(0, 2).unwrap(), Insertion::Cycle(_)));
//! ```

pub mod error;
pub mod generators;
pub mod graph_store;
pub mod oracle;
pub mod ordered_list;
pub mod scc;
mod search;
pub mod selection;
pub mod stats;
pub mod sweep;
pub mod topo;

pub use error::{Error, Result};
pub use generators::Workload;
pub use graph_store::{Arc, ArcId, Direction, GraphStore, VertexId};
pub use ordered_list::{OrderLabel, OrderedList};
pub use scc::{ComponentChange, ComponentForest, SccConfig, SccInsertion, SccMaintainer};
pub use selection::ThresholdStrategy;
pub use stats::{SearchRecord, Stats};
pub use topo::{CycleReport, Insertion, SubsetOrdering, TopoConfig, TopoMaintainer};
