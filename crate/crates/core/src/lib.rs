//! Maximal directed embeddings of eulerian digraphs relative to a fixed
//! circuit decomposition, with few antifaces.

pub mod digraph;
pub mod embedding;
pub mod generators;
pub mod interlace;
pub mod io;
pub mod oracle;
pub mod reducer;
pub mod render;
pub mod surgery;
pub mod touch;

pub use digraph::{
    euler_circuit, greedy_circuit_decomposition, CircuitDecomposition, DensityProfile, Digraph, DigraphError,
    DirectedCircuit, HalfArc, SimpleGraph, UndirectedGraph,
};
pub use embedding::{
    embed_from_decomposition, euler_genus, trace_faces, verify_embedding, Embedding, EmbeddingError, FaceColor,
    FaceWalk, Faces, RotationSystem, VerificationReport, Violation,
};
pub use generators::{
    gen_kn_minus_pm, gen_random_dense_eulerian, gen_rotational_tournament, gen_sts, random_circuit_decomposition,
    random_relative_embedding, split_euler_circuit, GenError,
};
pub use interlace::{InterlaceError, InterlacingCertificate, LocalView, TypeTable, VertexType};
pub use oracle::{certify_maximal, enumerate_relative_embeddings, Certification, OracleError, OracleReport};
pub use reducer::{
    reduce_embedding, reduce_to_upper_embedding, relative_upper_from_partial, small_order_embedding,
    undirected_upper_embedding, Mode, Op, ReduceError, ReduceOptions, Reduction, ReductionTrace, Status, TraceStep,
};
pub use render::render_svg;
pub use surgery::{blow_up, merge_interlaced, merge_three_at_vertex, split_swap, SurgeryError};
pub use touch::{Classification, TouchGraph};
