//! JSON interchange for digraphs, circuit decompositions, embeddings and faces.
//!
//! Files may carry several objects at once (a generated Steiner system holds
//! `n`, `arcs` and `circuits`), so every reader ignores fields it does not use.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digraph::{ArcId, CircuitDecomposition, Digraph, DigraphError, HalfArc, UndirectedGraph, VertexId};
use crate::embedding::{Embedding, EmbeddingError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Digraph(#[from] DigraphError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigraphJson {
    pub n: usize,
    pub arcs: Vec<[VertexId; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UndirectedJson {
    pub n: usize,
    pub edges: Vec<[VertexId; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitsJson {
    pub circuits: Vec<Vec<ArcId>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingJson {
    pub rotations: Vec<Vec<HalfArc>>,
}

/// Faces as half-arc sequences: each arc contributes its outgoing then its
/// incoming half-arc.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacesJson {
    pub profaces: Vec<Vec<HalfArc>>,
    pub antifaces: Vec<Vec<HalfArc>>,
}

impl From<&Digraph> for DigraphJson {
    fn from(d: &Digraph) -> Self {
        DigraphJson { n: d.vertex_count(), arcs: d.arcs().iter().map(|&(t, h)| [t, h]).collect() }
    }
}

impl DigraphJson {
    pub fn build(&self) -> Result<Digraph, DigraphError> {
        Digraph::new(self.n, self.arcs.iter().map(|&[t, h]| (t, h)).collect())
    }
}

impl UndirectedJson {
    pub fn build(&self) -> Result<UndirectedGraph, DigraphError> {
        UndirectedGraph::new(self.n, self.edges.iter().map(|&[u, v]| (u, v)).collect())
    }
}

impl From<&CircuitDecomposition> for CircuitsJson {
    fn from(c: &CircuitDecomposition) -> Self {
        CircuitsJson { circuits: c.to_arc_lists() }
    }
}

impl From<&Embedding> for EmbeddingJson {
    fn from(e: &Embedding) -> Self {
        EmbeddingJson { rotations: e.rotations().to_vec() }
    }
}

impl From<&Embedding> for FacesJson {
    fn from(e: &Embedding) -> Self {
        let walks = |faces: &[crate::embedding::FaceWalk]| faces.iter().map(|f| f.half_arcs()).collect();
        FacesJson { profaces: walks(e.profaces()), antifaces: walks(e.antifaces()) }
    }
}

pub fn digraph_to_json(d: &Digraph) -> String {
    serde_json::to_string(&DigraphJson::from(d)).expect("digraphs serialize")
}

pub fn digraph_from_json(text: &str) -> Result<Digraph, IoError> {
    Ok(serde_json::from_str::<DigraphJson>(text)?.build()?)
}

pub fn undirected_from_json(text: &str) -> Result<UndirectedGraph, IoError> {
    Ok(serde_json::from_str::<UndirectedJson>(text)?.build()?)
}

pub fn circuits_to_json(c: &CircuitDecomposition) -> String {
    serde_json::to_string(&CircuitsJson::from(c)).expect("circuits serialize")
}

/// Raw circuit lists, for callers that validate against their own graph.
pub fn circuit_lists_from_json(text: &str) -> Result<Vec<Vec<ArcId>>, IoError> {
    Ok(serde_json::from_str::<CircuitsJson>(text)?.circuits)
}

pub fn circuits_from_json(d: &Digraph, text: &str) -> Result<CircuitDecomposition, IoError> {
    Ok(CircuitDecomposition::new(d, circuit_lists_from_json(text)?)?)
}

/// Digraph and decomposition in one object, as produced by `gen sts`.
pub fn instance_to_json(d: &Digraph, c: &CircuitDecomposition) -> String {
    let mut v = serde_json::to_value(DigraphJson::from(d)).expect("digraphs serialize");
    v["circuits"] = serde_json::to_value(c.to_arc_lists()).expect("circuits serialize");
    v.to_string()
}

pub fn embedding_to_json(e: &Embedding) -> String {
    serde_json::to_string(&EmbeddingJson::from(e)).expect("embeddings serialize")
}

/// Raw rotations, unchecked beyond JSON shape.
pub fn rotations_from_json(text: &str) -> Result<Vec<Vec<HalfArc>>, IoError> {
    Ok(serde_json::from_str::<EmbeddingJson>(text)?.rotations)
}

pub fn embedding_from_json(d: Arc<Digraph>, text: &str) -> Result<Embedding, IoError> {
    Ok(Embedding::from_rotations(d, rotations_from_json(text)?)?)
}

pub fn faces_to_json(e: &Embedding) -> String {
    serde_json::to_string(&FacesJson::from(e)).expect("faces serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::embed_from_decomposition;
    use crate::generators::gen_sts;

    #[test]
    fn round_trips() {
        let (d, c) = gen_sts(7).unwrap();
        let text = digraph_to_json(&d);
        assert!(text.starts_with("{\"n\":7,\"arcs\":[[0,"));
        assert_eq!(digraph_from_json(&text).unwrap(), d);
        assert_eq!(circuits_from_json(&d, &circuits_to_json(&c)).unwrap(), c);

        let both = instance_to_json(&d, &c);
        assert_eq!(digraph_from_json(&both).unwrap(), d);
        assert_eq!(circuits_from_json(&d, &both).unwrap(), c);

        let d = Arc::new(d);
        let e = embed_from_decomposition(d.clone(), &c).unwrap();
        let back = embedding_from_json(d, &embedding_to_json(&e)).unwrap();
        assert_eq!(back.rotations(), e.rotations());
    }

    #[test]
    fn faces_are_half_arc_walks() {
        let d = Arc::new(Digraph::new(2, vec![(0, 1), (1, 0)]).unwrap());
        let c = CircuitDecomposition::new(&d, vec![vec![0, 1]]).unwrap();
        let e = embed_from_decomposition(d, &c).unwrap();
        let f: FacesJson = serde_json::from_str(&faces_to_json(&e)).unwrap();
        assert_eq!(f.profaces, vec![[0, 1, 2, 3].map(HalfArc).to_vec()]);
        assert_eq!(f.antifaces.len(), 1);
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        assert!(matches!(digraph_from_json("{\"n\":2}"), Err(IoError::Json(_))));
        assert!(matches!(digraph_from_json("{\"n\":2,\"arcs\":[[0,5]]}"), Err(IoError::Digraph(_))));
        let d = Arc::new(Digraph::new(1, vec![(0, 0)]).unwrap());
        assert!(matches!(embedding_from_json(d, "{\"rotations\":[[0]]}"), Err(IoError::Embedding(_))));
    }
}
