//! Decide whether a planar multigraph is a subgraph of a 4-regular planar
//! multigraph, and build an explicit supergraph when it is.

pub mod augment;
pub mod connectivity;
pub mod error;
pub mod matching;
pub mod multigraph;
pub mod oracle;
pub mod pipeline;
pub mod planar;
pub mod witness;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use multigraph::{EdgeId, IdAlloc, Multigraph, VertexId};
pub use pipeline::{decide, Certificate, PieceId, Verdict};
