//! Induced-subgraph counting and edge-inducibility tools.

pub mod blowup;
pub mod bounds;
pub mod cache;
pub mod canon;
pub mod count;
pub mod entropy;
pub mod family;
pub mod fractional;
pub mod graph;
pub mod graph6;
pub mod matching;
pub mod sandwich;
pub mod search;
pub mod tuples;

pub use canon::{automorphism_order, canonical_form, is_isomorphic, CanonicalForm};
pub use count::{count_induced, CountError, CountSummary};
pub use family::Family;
pub use fractional::{alpha_f, alpha_f_bruteforce, optimal_weighting, HalfInt};
pub use graph::{Graph, GraphError};
pub use graph6::{parse_graph6, write_graph6, Graph6Error};
