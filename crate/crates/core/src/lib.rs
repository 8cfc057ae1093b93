//! The edge cone of a finite simple graph: the cone generated by `e_i + e_j` over the
//! edges. Dimension, halfspace descriptions, facets, the bipartite canonical form,
//! integer decomposition and perfect-matching certificates, plus brute-force oracles
//! to check them against.
//!
//! Vertices are 0-based indices into the graph's label list.

pub mod cone;
pub mod error;
pub mod facets;
pub mod graph;
pub mod lattice;
pub mod oracle;
pub mod rational;

pub use cone::{
    affine_hull, cone_dimension, full_representation, membership, ConeRepresentation, Halfspace,
    Hyperplane, Membership, RepresentationKind, Sense, Tag, Witness,
};
pub use error::{Error, Result};
pub use facets::{
    bipartite_facet_check, canonical_representation, characterized_facets, coordinate_faces, dual_facet,
    dual_facet_on_side, face_dimension, facet_check_on_side, facets, is_facet, remove_redundant,
    CoordinateFace, Facet,
};
pub use graph::{parse_graph, Bipartition, Component, EnumerationGate, Graph, Side, VertexSet};
pub use lattice::{
    has_perfect_matching, hall_violator, integer_decompose, parity_check, Decomposition,
    EdgeDecomposition, MatchingAnswer,
};
pub use rational::{parse_rational, RationalVector};
