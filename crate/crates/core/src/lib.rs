//! Exact cluster-algebra seed mutation with c-matrix and g-matrix tracking,
//! reddening and maximal green sequences, the rotation of reddening
//! sequences, bounded enumeration with target-before-source pruning, rank-2
//! preinjective root ladders, and affine (tame) region checks.
//!
//! All arithmetic is exact (`BigInt` / `BigRational`). Vertex labels in the
//! public API are 1-based; matrix indices are 0-based.

pub mod error;
pub mod fixtures;
pub mod io;
pub mod matrix;
pub mod quiver;
pub mod rank2;
pub mod search;
pub mod seed;
pub mod sequence;
pub mod tame;

pub use error::{Error, Result};
pub use matrix::{IntMatrix, Matrix, RatMatrix};
pub use quiver::{mutate_matrix, Arrow, ExchangeMatrix, Sign, ValuedQuiver, Vertex, XMatrix};
pub use rank2::{chebyshev_u, ladder_rotation_check, ChebyshevTable, Rank2Ladder};
pub use search::{
    enumerate_mgs, enumerate_reddening, export_exchange_graph, prune_check, repetition_prune_check,
    CanonicalCMatrix, ExchangeGraphSlice, FoundSequence, GraphEdge, GraphNode, SearchConfig,
    SearchReport,
};
pub use seed::{GMatrix, Seed, VertexColor};
pub use sequence::{
    classify, format_sequence, mutation_formula_check, parse_sequence, post_tail_transport_check,
    rotate, run_sequence, MutationTrajectory, Permutation, SequenceClass, StepRecord,
};
pub use tame::{Direction, RegionClass, RootSets, TameContext};
