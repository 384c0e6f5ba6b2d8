//! Finite `(X, M)`-graphs, the adjunction with `Set × Set`, injective hulls
//! and projective covers, and the hypergraph semantics built on top.

pub mod adjunction;
pub mod algebra;
pub mod exec;
pub mod family;
pub mod format;
pub mod graph;
pub mod hullcover;
pub mod hypersem;

pub use algebra::{AlgebraError, Context, FiniteMonoid, RightMSet};
pub use graph::{
    classify_arc, classify_vertex, congruence_quotient, coproduct, hom_enumerate, Element,
    GraphError, GraphMorphism, Sort, Subgraph, XMGraph,
};
