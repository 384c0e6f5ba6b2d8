use std::sync::Arc;

use serde::Serialize;

use super::bridge::{self, Nerve, Realization};
use super::{HyperError, Hypergraph, HypergraphMorphism, PowerSet};
use crate::algebra::Context;
use crate::graph::{GraphError, GraphMorphism, XMGraph};

/// Largest vertex count for which all subsets are tabulated.
pub const SUBSET_TABLE_LIMIT: usize = 24;

/// `I(V)`: one vertex, no edges.
pub fn interpretation_vertex() -> Hypergraph {
    Hypergraph::from_canonical(PowerSet, 1, Vec::new())
}

/// `I(A)` for `|X| = arity`: one edge on all of `X`.
pub fn interpretation_arc(arity: usize) -> Hypergraph {
    edge_object(arity)
}

/// `E_k`: `k` vertices and a single edge incident to all of them.
pub fn edge_object(k: usize) -> Hypergraph {
    Hypergraph::from_canonical(PowerSet, k, vec![(0..k).collect()])
}

/// `I(x): I(V) → I(A)` and `I(m): I(A) → I(A)` as hypergraph morphisms.
pub fn interpretation_action(ctx: &Context, m: usize) -> HypergraphMorphism {
    let a = interpretation_arc(ctx.arity());
    HypergraphMorphism::new_unchecked(a.clone(), a, ctx.carrier().rho(m), vec![0])
}

pub fn interpretation_point(ctx: &Context, x: usize) -> HypergraphMorphism {
    HypergraphMorphism::new_unchecked(
        interpretation_vertex(),
        interpretation_arc(ctx.arity()),
        vec![x],
        Vec::new(),
    )
}

/// `N(H)` over `(X, Aut(X))`: arcs `(e, f)` with `image(f) = φ(e)`.
pub fn nerve_hyper(ctx: &Arc<Context>, h: &Hypergraph) -> Result<Nerve, HyperError> {
    bridge::nerve(ctx, h)
}

/// `R(G)`: edges are arc orbits, `φ([γ]) = {γ.x}`.
pub fn realize_hyper(g: &XMGraph) -> Result<Realization<PowerSet>, HyperError> {
    bridge::realize(PowerSet, g)
}

pub fn realize_hyper_map(f: &GraphMorphism) -> Result<HypergraphMorphism, HyperError> {
    bridge::realize_map(PowerSet, f)
}

pub fn nerve_hyper_map(
    ctx: &Arc<Context>,
    f: &HypergraphMorphism,
) -> Result<GraphMorphism, HyperError> {
    bridge::nerve_map(ctx, f)
}

/// `ε_H: RN(H) → H`.
pub fn counit_hyper(ctx: &Arc<Context>, h: &Hypergraph) -> Result<HypergraphMorphism, HyperError> {
    bridge::counit(ctx, h)
}

/// `η_G: G → NR(G)`.
pub fn unit_hyper(g: &XMGraph) -> Result<GraphMorphism, HyperError> {
    bridge::unit(PowerSet, g)
}

/// `r(H)`: all vertices and the edges with at most `k` vertices, with the
/// inclusion `r(H) → H`.
pub fn coreflect_k(h: &Hypergraph, k: usize) -> (Hypergraph, HypergraphMorphism) {
    let kept: Vec<usize> = (0..h.edge_count())
        .filter(|&e| h.phi(e).len() <= k)
        .collect();
    let r = Hypergraph::from_canonical(
        PowerSet,
        h.vertex_count(),
        kept.iter().map(|&e| h.phi(e).to_vec()).collect(),
    );
    let inclusion = HypergraphMorphism::new_unchecked(
        r.clone(),
        h.clone(),
        (0..h.vertex_count()).collect(),
        kept,
    );
    (r, inclusion)
}

/// Outcome of [`hyper_is_injective`]. Subsets are sorted vertex lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum HyperInjectiveCertificate {
    /// `realizers[mask]` is an edge whose incidence is the subset `mask`.
    Injective {
        realizers: Vec<usize>,
    },
    NoVertex,
    Unrealized {
        subset: Vec<usize>,
    },
}

impl HyperInjectiveCertificate {
    pub fn holds(&self) -> bool {
        matches!(self, HyperInjectiveCertificate::Injective { .. })
    }
}

/// `Q` is injective iff it has a vertex and every subset of `Q(V)` is the
/// incidence of some edge.
pub fn hyper_is_injective(q: &Hypergraph) -> Result<HyperInjectiveCertificate, HyperError> {
    let n = q.vertex_count();
    if n == 0 {
        return Ok(HyperInjectiveCertificate::NoVertex);
    }
    if n > SUBSET_TABLE_LIMIT {
        return Err(GraphError::TooLarge(format!("subsets of {n} vertices")).into());
    }
    let mut realizers = vec![usize::MAX; 1 << n];
    for e in (0..q.edge_count()).rev() {
        let mask = q.phi(e).iter().fold(0usize, |m, &v| m | 1 << v);
        realizers[mask] = e;
    }
    match realizers.iter().position(|&e| e == usize::MAX) {
        Some(mask) => Ok(HyperInjectiveCertificate::Unrealized {
            subset: (0..n).filter(|v| mask >> v & 1 == 1).collect(),
        }),
        None => Ok(HyperInjectiveCertificate::Injective { realizers }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProjectivityMode {
    Plain,
    KBounded(usize),
}

/// Plain: no edges at all. `k`-bounded: every edge has exactly `k`
/// vertices and distinct edges share none, so `P` is a coproduct of
/// `I_k(V)`s and `I_k(A)`s.
pub fn hyper_is_projective(p: &Hypergraph, mode: ProjectivityMode) -> Result<bool, HyperError> {
    match mode {
        ProjectivityMode::Plain => Ok(p.edge_count() == 0),
        ProjectivityMode::KBounded(k) => {
            if let Some(e) = (0..p.edge_count()).find(|&e| p.phi(e).len() > k) {
                return Err(HyperError::NotKBounded {
                    edge: e,
                    size: p.phi(e).len(),
                    k,
                });
            }
            let mut owner = vec![false; p.vertex_count()];
            for e in 0..p.edge_count() {
                if p.phi(e).len() != k {
                    return Ok(false);
                }
                for &v in p.phi(e) {
                    if std::mem::replace(&mut owner[v], true) {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
    }
}
