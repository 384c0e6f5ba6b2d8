//! Nerve and realization for an edge-graph kind, written once for both
//! incidence functors. The interpretation sends `A` to one edge on the
//! vertex set `X` with incidence `q = F(id)(0..|X|)`, so nerve arcs over
//! `e` are the maps `f: X → V` with `F(f)(q) = φ(e)`.

use std::collections::HashMap;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use super::{EdgeGraph, EdgeMorphism, HyperError, Incidence};
use crate::algebra::{Context, FunctionSpace};
use crate::exec;
use crate::graph::{GraphMorphism, XMGraph};

/// `N(H)` with the `(edge, f)` label of each arc.
#[derive(Debug, Clone)]
pub struct Nerve {
    pub graph: XMGraph,
    pub arcs: Vec<(usize, Vec<usize>)>,
}

/// `R(G)` with the edge (arc orbit) of each arc.
#[derive(Debug, Clone)]
pub struct Realization<K> {
    pub object: EdgeGraph<K>,
    pub edge_of_arc: Vec<usize>,
}

pub(super) fn require_aut(ctx: &Context) -> Result<(), HyperError> {
    if ctx.is_full_automorphism_group() {
        Ok(())
    } else {
        Err(HyperError::MonoidNotAut)
    }
}

fn canonical_q(ctx: &Context) -> Vec<usize> {
    (0..ctx.arity()).collect()
}

pub(super) fn nerve<K: Incidence>(
    ctx: &Arc<Context>,
    h: &EdgeGraph<K>,
) -> Result<Nerve, HyperError> {
    require_aut(ctx)?;
    let nx = ctx.arity();
    let q = canonical_q(ctx);
    let space = FunctionSpace::new(nx, h.vertex_count());
    let edges: Vec<usize> = (0..h.edge_count()).collect();
    // Only maps into the support of φ(e) can satisfy F(f)(q) = φ(e).
    let per_edge = exec::map(&edges, |&e| {
        let mut support = h.phi(e).to_vec();
        support.dedup();
        let local = FunctionSpace::new(nx, support.len());
        let n = local.len().unwrap_or(0);
        let mut found: Vec<(usize, Vec<usize>)> = (0..n)
            .filter_map(|i| {
                let f: Vec<usize> = local.decode(i).into_iter().map(|j| support[j]).collect();
                (h.kind().image(&q, &f) == h.phi(e)).then(|| (space.encode(&f), f))
            })
            .collect();
        found.sort_unstable();
        found
    });
    let mut arcs = Vec::new();
    let mut id: HashMap<(usize, usize), usize> = HashMap::new();
    for (e, found) in per_edge.into_iter().enumerate() {
        for (code, f) in found {
            id.insert((e, code), arcs.len());
            arcs.push((e, f));
        }
    }
    let monoid = ctx.monoid();
    let carrier = ctx.carrier();
    let mut inc = Vec::with_capacity(arcs.len() * nx);
    let mut act = Vec::with_capacity(arcs.len() * monoid.size());
    for (e, f) in &arcs {
        inc.extend_from_slice(f);
        for m in monoid.elements() {
            let moved: Vec<usize> = (0..nx).map(|x| f[carrier.act(x, m)]).collect();
            act.push(id[&(*e, space.encode(&moved))]);
        }
    }
    let graph = XMGraph::from_flat_unchecked(ctx, h.vertex_count(), arcs.len(), inc, act);
    Ok(Nerve { graph, arcs })
}

/// Arc orbits under the action, numbered by smallest member.
fn orbits(g: &XMGraph) -> (Vec<usize>, usize) {
    let gens = g.context().monoid().generating_set();
    let mut uf = UnionFind::<usize>::new(g.arc_count());
    for a in g.arcs() {
        for &m in &gens {
            uf.union(a, g.act(a, m));
        }
    }
    let labels = uf.into_labeling();
    let mut rename = vec![usize::MAX; g.arc_count()];
    let mut next = 0;
    let classes = labels
        .into_iter()
        .map(|l| {
            if rename[l] == usize::MAX {
                rename[l] = next;
                next += 1;
            }
            rename[l]
        })
        .collect();
    (classes, next)
}

pub(super) fn realize<K: Incidence>(kind: K, g: &XMGraph) -> Result<Realization<K>, HyperError> {
    let ctx = g.context();
    require_aut(ctx)?;
    let q = canonical_q(ctx);
    let (edge_of_arc, n) = orbits(g);
    let mut edges = vec![Vec::new(); n];
    let mut done = vec![false; n];
    for a in g.arcs() {
        let c = edge_of_arc[a];
        if !std::mem::replace(&mut done[c], true) {
            edges[c] = kind.image(&q, g.incidence(a));
        }
    }
    Ok(Realization {
        object: EdgeGraph::from_canonical(kind, g.vertex_count(), edges),
        edge_of_arc,
    })
}

pub(super) fn realize_map<K: Incidence>(
    kind: K,
    f: &GraphMorphism,
) -> Result<EdgeMorphism<K>, HyperError> {
    let src = realize(kind.clone(), f.source())?;
    let dst = realize(kind, f.target())?;
    let mut emap = vec![0; src.object.edge_count()];
    for a in f.source().arcs() {
        emap[src.edge_of_arc[a]] = dst.edge_of_arc[f.amap()[a]];
    }
    Ok(EdgeMorphism::new_unchecked(
        src.object,
        dst.object,
        f.vmap().to_vec(),
        emap,
    ))
}

/// `ε_H: RN(H) → H`: identity on vertices, `[(e, f)] ↦ e`.
pub(super) fn counit<K: Incidence>(
    ctx: &Arc<Context>,
    h: &EdgeGraph<K>,
) -> Result<EdgeMorphism<K>, HyperError> {
    let n = nerve(ctx, h)?;
    let r = realize(h.kind().clone(), &n.graph)?;
    let mut emap = vec![0; r.object.edge_count()];
    for (a, (e, _)) in n.arcs.iter().enumerate() {
        emap[r.edge_of_arc[a]] = *e;
    }
    Ok(EdgeMorphism::new_unchecked(
        r.object,
        h.clone(),
        (0..h.vertex_count()).collect(),
        emap,
    ))
}

/// `η_G: G → NR(G)`: identity on vertices, `α ↦ ([α], ∂α)`.
pub(super) fn unit<K: Incidence>(kind: K, g: &XMGraph) -> Result<GraphMorphism, HyperError> {
    let ctx = g.context();
    let r = realize(kind, g)?;
    let n = nerve(ctx, &r.object)?;
    let id: HashMap<(usize, &[usize]), usize> = n
        .arcs
        .iter()
        .enumerate()
        .map(|(i, (e, f))| ((*e, f.as_slice()), i))
        .collect();
    let amap = g
        .arcs()
        .map(|a| id[&(r.edge_of_arc[a], g.incidence(a))])
        .collect();
    Ok(GraphMorphism::new_unchecked(
        g.clone(),
        n.graph,
        g.vertices().collect(),
        amap,
    ))
}

/// `N(f)`: `(e, g) ↦ (f_E(e), f_V∘g)`.
pub(super) fn nerve_map<K: Incidence>(
    ctx: &Arc<Context>,
    f: &EdgeMorphism<K>,
) -> Result<GraphMorphism, HyperError> {
    let src = nerve(ctx, f.source())?;
    let dst = nerve(ctx, f.target())?;
    let id: HashMap<(usize, &[usize]), usize> = dst
        .arcs
        .iter()
        .enumerate()
        .map(|(i, (e, g))| ((*e, g.as_slice()), i))
        .collect();
    let amap = src
        .arcs
        .iter()
        .map(|(e, g)| {
            let moved: Vec<usize> = g.iter().map(|&v| f.vmap()[v]).collect();
            id[&(f.emap()[*e], moved.as_slice())]
        })
        .collect();
    Ok(GraphMorphism::new_unchecked(
        src.graph,
        dst.graph,
        f.vmap().to_vec(),
        amap,
    ))
}
