//! `(X, M)`-graphs: presheaves on the two-object theory with objects `V`
//! and `A`, stored as concrete incidence and arc-action tables.
//!
//! An arc `α` has a parametrized incidence `∂(α): X → V` (`α.x`) and
//! `M` acts on arcs by `α.m`. The laws checked by [`XMGraph::new`] are
//!
//! * unit: `α.e = α`
//! * composition: `(α.m).m' = α.(m'·m)`
//! * incidence compatibility: `(α.m).x = α.(x.m)`
//!
//! The composition law is the contravariant reading of `m ∘ m' = m'm` in
//! the theory; the representable `A̲` is built to satisfy exactly it.

mod congruence;
mod hom;
mod morphism;
mod subgraph;

use std::fmt;
use std::sync::Arc;

use petgraph::algo::condensation;
use petgraph::graph::DiGraph;
use petgraph::Direction;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::Context;

pub use congruence::{congruence_quotient, Congruence, Quotient};
#[allow(unused_imports)]
pub(crate) use hom::hom_any;
pub use hom::{hom_count, hom_enumerate, hom_maps, RawMaps};
pub use morphism::{GraphMorphism, MorphismKind};
pub use subgraph::Subgraph;

/// The two sorts of the theory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sort {
    Vertex,
    Arc,
}

/// A vertex or an arc of a graph. Vertices order before arcs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "sort", content = "id", rename_all = "lowercase")]
pub enum Element {
    Vertex(usize),
    Arc(usize),
}

impl Element {
    pub fn sort(self) -> Sort {
        match self {
            Element::Vertex(_) => Sort::Vertex,
            Element::Arc(_) => Sort::Arc,
        }
    }

    pub fn id(self) -> usize {
        match self {
            Element::Vertex(i) | Element::Arc(i) => i,
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "v{v}"),
            Element::Arc(a) => write!(f, "a{a}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", content = "detail", rename_all = "snake_case")]
pub enum GraphError {
    #[error("malformed tables: {0}")]
    Shape(String),
    #[error("unit law fails: a{arc}.e != a{arc}")]
    UnitLaw { arc: usize },
    #[error("composition law fails: (a{arc}.{m}).{m2} != a{arc}.({m2}*{m})")]
    CompositionLaw { arc: usize, m: usize, m2: usize },
    #[error("incidence compatibility fails: (a{arc}.{m}).x{x} != a{arc}.(x{x}.{m})")]
    IncidenceCompat { arc: usize, m: usize, x: usize },
    #[error("graphs live over different contexts")]
    ContextMismatch,
    #[error("unknown arc a{0}")]
    UnknownArc(usize),
    #[error("unknown element {0}")]
    UnknownElement(Element),
    #[error("cannot identify {0} with {1}: different sorts")]
    SortMismatch(Element, Element),
    #[error("morphism breaks incidence: f(a{arc}.x{x}) != f(a{arc}).x{x}")]
    VertexIncidence { arc: usize, x: usize },
    #[error("morphism breaks equivariance: f(a{arc}.{m}) != f(a{arc}).{m}")]
    ArcEquivariance { arc: usize, m: usize },
    #[error("morphisms are not composable")]
    NotComposable,
    #[error("{0} is too large to materialize")]
    TooLarge(String),
}

struct GraphData {
    ctx: Arc<Context>,
    vertices: usize,
    arcs: usize,
    /// `inc[arc * |X| + x] = arc.x`
    inc: Vec<usize>,
    /// `act[arc * |M| + m] = arc.m`
    act: Vec<usize>,
}

/// A finite `(X, M)`-graph. Cloning is cheap (shared storage).
#[derive(Clone)]
pub struct XMGraph(Arc<GraphData>);

impl PartialEq for XMGraph {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.same_context(other)
                && self.0.vertices == other.0.vertices
                && self.0.arcs == other.0.arcs
                && self.0.inc == other.0.inc
                && self.0.act == other.0.act)
    }
}

impl Eq for XMGraph {}

impl fmt::Debug for XMGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("XMGraph")
            .field("vertices", &self.0.vertices)
            .field("incidence", &self.incidence_rows())
            .field("action", &self.action_rows())
            .finish()
    }
}

impl XMGraph {
    /// Builds a graph from row tables and checks all three laws.
    ///
    /// `incidence[a][x]` is the vertex `a.x`, `action[a][m]` the arc `a.m`.
    pub fn new(
        ctx: &Arc<Context>,
        vertices: usize,
        incidence: &[Vec<usize>],
        action: &[Vec<usize>],
    ) -> Result<Self, GraphError> {
        let nx = ctx.arity();
        let nm = ctx.order();
        if incidence.len() != action.len() {
            return Err(GraphError::Shape(format!(
                "{} incidence rows but {} action rows",
                incidence.len(),
                action.len()
            )));
        }
        let arcs = incidence.len();
        let mut inc = Vec::with_capacity(arcs * nx);
        let mut act = Vec::with_capacity(arcs * nm);
        for (a, (irow, arow)) in incidence.iter().zip(action).enumerate() {
            if irow.len() != nx {
                return Err(GraphError::Shape(format!(
                    "arc {a} has {} incidences, expected {nx}",
                    irow.len()
                )));
            }
            if arow.len() != nm {
                return Err(GraphError::Shape(format!(
                    "arc {a} has {} action entries, expected {nm}",
                    arow.len()
                )));
            }
            inc.extend_from_slice(irow);
            act.extend_from_slice(arow);
        }
        Self::from_flat(ctx, vertices, arcs, inc, act)
    }

    /// Flat-table constructor; checks ranges and all graph laws.
    pub fn from_flat(
        ctx: &Arc<Context>,
        vertices: usize,
        arcs: usize,
        inc: Vec<usize>,
        act: Vec<usize>,
    ) -> Result<Self, GraphError> {
        if inc.len() != arcs * ctx.arity() || act.len() != arcs * ctx.order() {
            return Err(GraphError::Shape("flat table length mismatch".into()));
        }
        if let Some(&v) = inc.iter().find(|&&v| v >= vertices) {
            return Err(GraphError::Shape(format!(
                "incidence names vertex {v} but there are {vertices} vertices"
            )));
        }
        if let Some(&a) = act.iter().find(|&&a| a >= arcs) {
            return Err(GraphError::Shape(format!(
                "action names arc {a} but there are {arcs} arcs"
            )));
        }
        let g = Self::from_flat_unchecked(ctx, vertices, arcs, inc, act);
        g.check_laws()?;
        Ok(g)
    }

    pub(crate) fn from_flat_unchecked(
        ctx: &Arc<Context>,
        vertices: usize,
        arcs: usize,
        inc: Vec<usize>,
        act: Vec<usize>,
    ) -> Self {
        XMGraph(Arc::new(GraphData {
            ctx: Arc::clone(ctx),
            vertices,
            arcs,
            inc,
            act,
        }))
    }

    /// Re-checks the unit, composition and incidence laws.
    pub fn check_laws(&self) -> Result<(), GraphError> {
        let ctx = self.context();
        let monoid = ctx.monoid();
        let carrier = ctx.carrier();
        let e = monoid.identity();
        for a in self.arcs() {
            if self.act(a, e) != a {
                return Err(GraphError::UnitLaw { arc: a });
            }
        }
        for a in self.arcs() {
            for m in monoid.elements() {
                let am = self.act(a, m);
                for m2 in monoid.elements() {
                    if self.act(am, m2) != self.act(a, monoid.mul(m2, m)) {
                        return Err(GraphError::CompositionLaw { arc: a, m, m2 });
                    }
                }
            }
        }
        for a in self.arcs() {
            for m in monoid.elements() {
                let am = self.act(a, m);
                for x in 0..ctx.arity() {
                    if self.at(am, x) != self.at(a, carrier.act(x, m)) {
                        return Err(GraphError::IncidenceCompat { arc: a, m, x });
                    }
                }
            }
        }
        Ok(())
    }

    /// The graph with no vertices and no arcs.
    pub fn initial(ctx: &Arc<Context>) -> Self {
        Self::from_flat_unchecked(ctx, 0, 0, Vec::new(), Vec::new())
    }

    /// One vertex and one arc, every action trivial.
    pub fn terminal(ctx: &Arc<Context>) -> Self {
        Self::from_flat_unchecked(ctx, 1, 1, vec![0; ctx.arity()], vec![0; ctx.order()])
    }

    /// `V̲` (one vertex, no arcs) or `A̲` (vertices `X`, arcs `M`,
    /// `∂(a)(x) = x.a`, `a.m = m·a`).
    pub fn representable(ctx: &Arc<Context>, sort: Sort) -> Self {
        match sort {
            Sort::Vertex => Self::from_flat_unchecked(ctx, 1, 0, Vec::new(), Vec::new()),
            Sort::Arc => {
                let monoid = ctx.monoid();
                let carrier = ctx.carrier();
                let nm = monoid.size();
                let mut inc = Vec::with_capacity(nm * ctx.arity());
                let mut act = Vec::with_capacity(nm * nm);
                for a in monoid.elements() {
                    inc.extend((0..ctx.arity()).map(|x| carrier.act(x, a)));
                    act.extend(monoid.elements().map(|m| monoid.mul(m, a)));
                }
                Self::from_flat_unchecked(ctx, ctx.arity(), nm, inc, act)
            }
        }
    }

    /// A graph with `n` vertices and no arcs.
    pub fn discrete(ctx: &Arc<Context>, n: usize) -> Self {
        Self::from_flat_unchecked(ctx, n, 0, Vec::new(), Vec::new())
    }

    #[inline]
    pub fn context(&self) -> &Arc<Context> {
        &self.0.ctx
    }

    pub fn same_context(&self, other: &XMGraph) -> bool {
        Arc::ptr_eq(&self.0.ctx, &other.0.ctx) || *self.0.ctx == *other.0.ctx
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.0.vertices
    }

    #[inline]
    pub fn arc_count(&self) -> usize {
        self.0.arcs
    }

    /// `(|G(V)|, |G(A)|)`.
    pub fn counts(&self) -> (usize, usize) {
        (self.0.vertices, self.0.arcs)
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.0.vertices
    }

    pub fn arcs(&self) -> std::ops::Range<usize> {
        0..self.0.arcs
    }

    pub fn is_initial(&self) -> bool {
        self.0.vertices == 0 && self.0.arcs == 0
    }

    /// `α.x`
    #[inline]
    pub fn at(&self, arc: usize, x: usize) -> usize {
        self.0.inc[arc * self.0.ctx.arity() + x]
    }

    /// `α.m`
    #[inline]
    pub fn act(&self, arc: usize, m: usize) -> usize {
        self.0.act[arc * self.0.ctx.order() + m]
    }

    /// `∂(α)` as a slice indexed by `X`.
    #[inline]
    pub fn incidence(&self, arc: usize) -> &[usize] {
        let nx = self.0.ctx.arity();
        &self.0.inc[arc * nx..(arc + 1) * nx]
    }

    /// The orbit map `m ↦ α.m`.
    #[inline]
    pub fn orbit_map(&self, arc: usize) -> &[usize] {
        let nm = self.0.ctx.order();
        &self.0.act[arc * nm..(arc + 1) * nm]
    }

    pub fn incidence_rows(&self) -> Vec<Vec<usize>> {
        self.arcs().map(|a| self.incidence(a).to_vec()).collect()
    }

    pub fn action_rows(&self) -> Vec<Vec<usize>> {
        self.arcs().map(|a| self.orbit_map(a).to_vec()).collect()
    }

    pub(crate) fn flat_incidence(&self) -> &[usize] {
        &self.0.inc
    }

    pub(crate) fn flat_action(&self) -> &[usize] {
        &self.0.act
    }

    pub fn contains(&self, el: Element) -> bool {
        match el {
            Element::Vertex(v) => v < self.0.vertices,
            Element::Arc(a) => a < self.0.arcs,
        }
    }

    /// All elements, vertices first, each sort in ascending id order.
    pub fn elements(&self) -> Vec<Element> {
        self.vertices()
            .map(Element::Vertex)
            .chain(self.arcs().map(Element::Arc))
            .collect()
    }

    /// Vertices that are not `α.x` for any arc `α` and any `x`.
    pub fn isolated_vertices(&self) -> Vec<usize> {
        let mut touched = vec![false; self.0.vertices];
        for &v in &self.0.inc {
            touched[v] = true;
        }
        self.vertices().filter(|&v| !touched[v]).collect()
    }

    /// A minimum-size set of arcs generating `G(A)` under the action: one
    /// representative (smallest id) per source component of the
    /// condensation of `α → α.m`.
    pub fn generating_arcs(&self) -> Vec<usize> {
        let mut reach: DiGraph<usize, ()> = DiGraph::with_capacity(self.0.arcs, 0);
        let nodes: Vec<_> = self.arcs().map(|a| reach.add_node(a)).collect();
        for a in self.arcs() {
            for &b in self.orbit_map(a) {
                if a != b {
                    reach.update_edge(nodes[a], nodes[b], ());
                }
            }
        }
        let condensed = condensation(reach, true);
        let mut reps: Vec<usize> = condensed
            .node_indices()
            .filter(|&c| {
                condensed
                    .neighbors_directed(c, Direction::Incoming)
                    .next()
                    .is_none()
            })
            .map(|c| *condensed[c].iter().min().expect("components are non-empty"))
            .collect();
        reps.sort_unstable();
        reps
    }
}

/// Disjoint union; returns the coproduct and its injections. Ids of the
/// `i`-th summand follow those of summands `0..i`.
pub fn coproduct(
    ctx: &Arc<Context>,
    graphs: &[XMGraph],
) -> Result<(XMGraph, Vec<GraphMorphism>), GraphError> {
    if graphs.iter().any(|g| **g.context() != **ctx) {
        return Err(GraphError::ContextMismatch);
    }
    let mut inc = Vec::new();
    let mut act = Vec::new();
    let (mut voff, mut aoff) = (0, 0);
    let mut offsets = Vec::with_capacity(graphs.len());
    for g in graphs {
        offsets.push((voff, aoff));
        inc.extend(g.flat_incidence().iter().map(|&v| v + voff));
        act.extend(g.flat_action().iter().map(|&a| a + aoff));
        voff += g.vertex_count();
        aoff += g.arc_count();
    }
    let sum = XMGraph::from_flat_unchecked(ctx, voff, aoff, inc, act);
    let injections = graphs
        .iter()
        .zip(offsets)
        .map(|(g, (vo, ao))| {
            GraphMorphism::new_unchecked(
                g.clone(),
                sum.clone(),
                g.vertices().map(|v| v + vo).collect(),
                g.arcs().map(|a| a + ao).collect(),
            )
        })
        .collect();
    Ok((sum, injections))
}

/// The Yoneda morphism `A̲ → G` classifying `arc`: `x ↦ α.x`, `m ↦ α.m`.
pub fn classify_arc(g: &XMGraph, arc: usize) -> Result<GraphMorphism, GraphError> {
    if arc >= g.arc_count() {
        return Err(GraphError::UnknownArc(arc));
    }
    let rep = XMGraph::representable(g.context(), Sort::Arc);
    Ok(GraphMorphism::new_unchecked(
        rep,
        g.clone(),
        g.incidence(arc).to_vec(),
        g.orbit_map(arc).to_vec(),
    ))
}

/// The morphism `V̲ → G` picking `vertex`.
pub fn classify_vertex(g: &XMGraph, vertex: usize) -> Result<GraphMorphism, GraphError> {
    if vertex >= g.vertex_count() {
        return Err(GraphError::UnknownElement(Element::Vertex(vertex)));
    }
    let rep = XMGraph::representable(g.context(), Sort::Vertex);
    Ok(GraphMorphism::new_unchecked(
        rep,
        g.clone(),
        vec![vertex],
        Vec::new(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s2() -> Arc<Context> {
        Arc::new(Context::symmetric(2))
    }

    #[test]
    fn initial_and_terminal_validate() {
        for (_, ctx) in Context::standard() {
            let ctx = Arc::new(ctx);
            XMGraph::initial(&ctx).check_laws().unwrap();
            XMGraph::terminal(&ctx).check_laws().unwrap();
            assert_eq!(XMGraph::terminal(&ctx).counts(), (1, 1));
        }
    }

    #[test]
    fn incidence_compat_witness() {
        // a.σ = b, ∂(a) = (0,1), ∂(b) = (0,0): (a.σ).x0 = 0 but a.(x0.σ) = 1.
        let err = XMGraph::new(
            &s2(),
            2,
            &[vec![0, 1], vec![0, 0]],
            &[vec![0, 1], vec![1, 0]],
        )
        .unwrap_err();
        assert_eq!(err, GraphError::IncidenceCompat { arc: 0, m: 1, x: 0 });
    }

    #[test]
    fn unit_and_composition_witnesses() {
        let err = XMGraph::new(
            &s2(),
            1,
            &[vec![0, 0], vec![0, 0]],
            &[vec![1, 1], vec![1, 0]],
        )
        .unwrap_err();
        assert_eq!(err, GraphError::UnitLaw { arc: 0 });
        let err = XMGraph::new(
            &s2(),
            1,
            &[vec![0, 0], vec![0, 0]],
            &[vec![0, 1], vec![1, 1]],
        )
        .unwrap_err();
        assert_eq!(
            err,
            GraphError::CompositionLaw {
                arc: 0,
                m: 1,
                m2: 1
            }
        );
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(
            XMGraph::new(&s2(), 1, &[vec![0]], &[vec![0, 0]]),
            Err(GraphError::Shape(_))
        ));
        assert!(matches!(
            XMGraph::new(&s2(), 1, &[vec![0, 3]], &[vec![0, 0]]),
            Err(GraphError::Shape(_))
        ));
    }

    #[test]
    fn representables() {
        let ctx = s2();
        let v = XMGraph::representable(&ctx, Sort::Vertex);
        assert_eq!(v.counts(), (1, 0));
        let a = XMGraph::representable(&ctx, Sort::Arc);
        assert_eq!(a.counts(), (2, 2));
        assert_eq!(a.incidence(0), &[0, 1]);
        assert_eq!(a.incidence(1), &[1, 0]);
        assert_eq!(a.act(0, 1), 1);
        assert_eq!(a.act(1, 1), 0);
        a.check_laws().unwrap();
        let s3 = Arc::new(Context::symmetric(3));
        assert_eq!(XMGraph::representable(&s3, Sort::Arc).counts(), (3, 6));
    }

    #[test]
    fn representables_validate_in_every_context() {
        for (_, ctx) in Context::standard() {
            let ctx = Arc::new(ctx);
            let a = XMGraph::representable(&ctx, Sort::Arc);
            a.check_laws().unwrap();
            assert_eq!(a.counts(), (ctx.arity(), ctx.order()));
        }
    }

    #[test]
    fn classify_arc_of_identity_is_identity() {
        let ctx = Arc::new(Context::symmetric(3));
        let a = XMGraph::representable(&ctx, Sort::Arc);
        let f = classify_arc(&a, ctx.monoid().identity()).unwrap();
        f.check().unwrap();
        assert_eq!(f, GraphMorphism::identity(&a));
        assert_eq!(
            classify_arc(&a, 99).unwrap_err(),
            GraphError::UnknownArc(99)
        );
    }

    #[test]
    fn classify_arc_non_injective_orbit() {
        // The terminal graph's arc has a constant orbit map.
        let ctx = s2();
        let t = XMGraph::terminal(&ctx);
        let f = classify_arc(&t, 0).unwrap();
        f.check().unwrap();
        assert_eq!(f.amap(), &[0, 0]);
        assert!(!f.kind().mono);
    }

    #[test]
    fn coproduct_counts_and_injections() {
        let ctx = s2();
        let (empty, inj) = coproduct(&ctx, &[]).unwrap();
        assert!(empty.is_initial());
        assert!(inj.is_empty());
        let v = XMGraph::representable(&ctx, Sort::Vertex);
        let a = XMGraph::representable(&ctx, Sort::Arc);
        let (sum, inj) = coproduct(&ctx, &[v, a]).unwrap();
        assert_eq!(sum.counts(), (3, 2));
        sum.check_laws().unwrap();
        for i in &inj {
            i.check().unwrap();
            assert!(i.kind().mono);
        }
        let other = Arc::new(Context::trivial(2));
        assert_eq!(
            coproduct(&ctx, &[XMGraph::terminal(&other)]).unwrap_err(),
            GraphError::ContextMismatch
        );
    }

    #[test]
    fn generating_arcs_of_representable_and_chain() {
        let ctx = s2();
        let a = XMGraph::representable(&ctx, Sort::Arc);
        assert_eq!(a.generating_arcs(), vec![0]);
        let (two, _) = coproduct(&ctx, &[a.clone(), a]).unwrap();
        assert_eq!(two.generating_arcs().len(), 2);
        // α.c = β, β.c = β in the idempotent context: only α generates.
        let ctx = Arc::new(Context::idempotent());
        let g = XMGraph::new(
            &ctx,
            1,
            &[vec![0, 0], vec![0, 0]],
            &[vec![0, 1], vec![1, 1]],
        )
        .unwrap();
        assert_eq!(g.generating_arcs(), vec![0]);
    }
}
