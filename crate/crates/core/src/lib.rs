//! Spectral certificates for regular graphs: adjacency spectra, quotient
//! matrices and interlacing, perfect-matching families, Tutte witnesses, exact
//! toughness, and the eigenvalue thresholds that predict them.

pub mod certificate;
pub mod config;
pub mod exact;
pub mod format;
pub mod generators;
pub mod graph;
pub mod hypothesis;
pub mod iso;
pub mod matching;
pub mod policy;
pub mod selfcheck;
pub mod spectral;
pub mod toughness;

pub use format::{encode_graph6, parse_edge_list, parse_graph, parse_graph6, InputFormat, ParseError};
pub use graph::{edge_connectivity, EdgeCut, Graph, GraphError, Partition, VertexSet};
pub use certificate::{analyze, Certificate};
pub use config::RunConfig;
pub use spectral::{spectrum, Spectrum};
