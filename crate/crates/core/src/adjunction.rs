//! The adjoint triple `ι_! ⊣ ι^* ⊣ ι_*` between `(X, M)`-graphs and pairs
//! of sets, and the refinements `Proj = ι_!ι^*`, `Inj = ι_*ι^*`.
//!
//! Layouts are fixed so that ids can be computed rather than looked up:
//!
//! * `ι_!S`: vertex copies `0..|S(V)|`, then for arc copy `a` the vertices
//!   `|S(V)| + a·|X| + x` and arcs `a·|M| + m`.
//! * `ι_*S`: the arc `(f, s)` has id `code(f)·|S(A)|^|M| + code(s)`, with
//!   functions encoded little-endian (see [`FunctionSpace`]).

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Context, FunctionSpace};
use crate::exec;
use crate::graph::{GraphError, GraphMorphism, XMGraph};

/// Upper bound on table entries for a materialized `ι_*S`.
pub const COEXTEND_ENTRY_LIMIT: usize = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", content = "detail", rename_all = "snake_case")]
pub enum AdjunctionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{0} is too large to materialize")]
    TooLarge(String),
    #[error("{law} fails at {at}: expected {expected}, got {got}")]
    TriangleFailure {
        law: &'static str,
        at: String,
        expected: String,
        got: String,
    },
}

/// `(S(V), S(A))`, with elements `0..vertices` and `0..arcs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SetPair {
    pub vertices: usize,
    pub arcs: usize,
}

impl SetPair {
    pub fn new(vertices: usize, arcs: usize) -> Self {
        Self { vertices, arcs }
    }
}

/// A map of set pairs, componentwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetPairMap {
    pub source: SetPair,
    pub target: SetPair,
    pub vmap: Vec<usize>,
    pub amap: Vec<usize>,
}

impl SetPairMap {
    pub fn identity(s: SetPair) -> Self {
        Self {
            source: s,
            target: s,
            vmap: (0..s.vertices).collect(),
            amap: (0..s.arcs).collect(),
        }
    }

    pub fn then(&self, next: &SetPairMap) -> SetPairMap {
        SetPairMap {
            source: self.source,
            target: next.target,
            vmap: self.vmap.iter().map(|&v| next.vmap[v]).collect(),
            amap: self.amap.iter().map(|&a| next.amap[a]).collect(),
        }
    }
}

/// `ι^*G = (G(V), G(A))`.
pub fn restrict(g: &XMGraph) -> SetPair {
    SetPair::new(g.vertex_count(), g.arc_count())
}

/// `ι^*f`.
pub fn restrict_map(f: &GraphMorphism) -> SetPairMap {
    SetPairMap {
        source: restrict(f.source()),
        target: restrict(f.target()),
        vmap: f.vmap().to_vec(),
        amap: f.amap().to_vec(),
    }
}

/// Id arithmetic for `ι_!S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtendLayout {
    pub set: SetPair,
    pub arity: usize,
    pub order: usize,
}

impl ExtendLayout {
    pub fn new(ctx: &Context, set: SetPair) -> Self {
        Self {
            set,
            arity: ctx.arity(),
            order: ctx.order(),
        }
    }

    pub fn counts(&self) -> (usize, usize) {
        (
            self.set.vertices + self.set.arcs * self.arity,
            self.set.arcs * self.order,
        )
    }

    /// Vertex `x` of the `A̲`-copy indexed by `a`.
    pub fn arc_copy_vertex(&self, a: usize, x: usize) -> usize {
        self.set.vertices + a * self.arity + x
    }

    /// Arc `m` of the `A̲`-copy indexed by `a`.
    pub fn arc_copy_arc(&self, a: usize, m: usize) -> usize {
        a * self.order + m
    }

    /// Inverse of [`Self::arc_copy_arc`].
    pub fn split_arc(&self, arc: usize) -> (usize, usize) {
        (arc / self.order, arc % self.order)
    }
}

/// `ι_!S = ⊔_{S(V)} V̲ ⊔ ⊔_{S(A)} A̲`.
pub fn iota_extend(ctx: &Arc<Context>, s: SetPair) -> XMGraph {
    let layout = ExtendLayout::new(ctx, s);
    let rep = XMGraph::representable(ctx, crate::graph::Sort::Arc);
    let (nv, na) = layout.counts();
    let mut inc = Vec::with_capacity(na * ctx.arity());
    let mut act = Vec::with_capacity(na * ctx.order());
    for a in 0..s.arcs {
        for m in rep.arcs() {
            inc.extend(
                rep.incidence(m)
                    .iter()
                    .map(|&x| layout.arc_copy_vertex(a, x)),
            );
            act.extend(
                rep.orbit_map(m)
                    .iter()
                    .map(|&m2| layout.arc_copy_arc(a, m2)),
            );
        }
    }
    XMGraph::from_flat_unchecked(ctx, nv, na, inc, act)
}

/// Id arithmetic for `ι_*S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoextendLayout {
    pub set: SetPair,
    pub incidences: FunctionSpace,
    pub orbits: FunctionSpace,
}

impl CoextendLayout {
    pub fn new(ctx: &Context, set: SetPair) -> Self {
        Self {
            set,
            incidences: FunctionSpace::new(ctx.arity(), set.vertices),
            orbits: FunctionSpace::new(ctx.order(), set.arcs),
        }
    }

    /// `|S(V)|^|X| · |S(A)|^|M|`, if it fits in a machine word.
    pub fn arc_count(&self) -> Option<usize> {
        self.incidences.len()?.checked_mul(self.orbits.len()?)
    }

    pub fn encode(&self, f: &[usize], s: &[usize]) -> usize {
        self.incidences.encode(f) * self.orbits.len().expect("checked at construction")
            + self.orbits.encode(s)
    }

    pub fn decode(&self, arc: usize) -> (Vec<usize>, Vec<usize>) {
        let n = self.orbits.len().expect("checked at construction");
        (self.incidences.decode(arc / n), self.orbits.decode(arc % n))
    }
}

/// `ι_*S`: vertices `S(V)`, arcs all pairs `(f: X → S(V), s: M → S(A))`,
/// `(f,s).x = f(x)`, `(f,s).m = (f∘ρ_m, m' ↦ s(m'·m))`.
pub fn iota_coextend(ctx: &Arc<Context>, s: SetPair) -> Result<XMGraph, AdjunctionError> {
    let layout = CoextendLayout::new(ctx, s);
    let (nx, nm) = (ctx.arity(), ctx.order());
    let too_large = || AdjunctionError::TooLarge(format!("ι_* of ({}, {})", s.vertices, s.arcs));
    let nf = layout.incidences.len().ok_or_else(too_large)?;
    let ns = layout.orbits.len().ok_or_else(too_large)?;
    let arcs = layout.arc_count().ok_or_else(too_large)?;
    if arcs.saturating_mul(nx + nm) > COEXTEND_ENTRY_LIMIT {
        return Err(too_large());
    }
    let monoid = ctx.monoid();
    let carrier = ctx.carrier();
    // The two components transform independently, so tabulate each once.
    let f_act: Vec<usize> = exec::map_range(nf, |fi| {
        let f = layout.incidences.decode(fi);
        monoid
            .elements()
            .map(|m| {
                let moved: Vec<usize> = (0..nx).map(|x| f[carrier.act(x, m)]).collect();
                layout.incidences.encode(&moved)
            })
            .collect::<Vec<_>>()
    })
    .concat();
    let s_act: Vec<usize> = exec::map_range(ns, |si| {
        let sv = layout.orbits.decode(si);
        monoid
            .elements()
            .map(|m| {
                let moved: Vec<usize> = monoid.elements().map(|m2| sv[monoid.mul(m2, m)]).collect();
                layout.orbits.encode(&moved)
            })
            .collect::<Vec<_>>()
    })
    .concat();
    let mut inc = Vec::with_capacity(arcs * nx);
    let mut scratch = vec![0; nx];
    for fi in 0..nf {
        layout.incidences.decode_into(fi, &mut scratch);
        for _ in 0..ns {
            inc.extend_from_slice(&scratch);
        }
    }
    let act = exec::map_range(nf, |fi| {
        let mut rows = Vec::with_capacity(ns * nm);
        for si in 0..ns {
            rows.extend((0..nm).map(|m| f_act[fi * nm + m] * ns + s_act[si * nm + m]));
        }
        rows
    })
    .concat();
    Ok(XMGraph::from_flat_unchecked(
        ctx, s.vertices, arcs, inc, act,
    ))
}

/// `Proj(G) = ι_!ι^*G` with the counit `ε_G`, assembled from the
/// classifying maps of vertices and arcs.
pub fn proj_refinement(g: &XMGraph) -> (XMGraph, GraphMorphism) {
    let ctx = g.context();
    let s = restrict(g);
    let layout = ExtendLayout::new(ctx, s);
    let proj = iota_extend(ctx, s);
    let mut vmap: Vec<usize> = g.vertices().collect();
    vmap.extend(g.arcs().flat_map(|a| g.incidence(a).iter().copied()));
    let amap = (0..layout.counts().1)
        .map(|arc| {
            let (a, m) = layout.split_arc(arc);
            g.act(a, m)
        })
        .collect();
    let eps = GraphMorphism::new_unchecked(proj.clone(), g.clone(), vmap, amap);
    (proj, eps)
}

/// `Inj(G) = ι_*ι^*G` with the unit `η_G: α ↦ (∂α, m' ↦ α.m')`.
pub fn inj_refinement(g: &XMGraph) -> Result<(XMGraph, GraphMorphism), AdjunctionError> {
    let ctx = g.context();
    let s = restrict(g);
    let inj = iota_coextend(ctx, s)?;
    let layout = CoextendLayout::new(ctx, s);
    let amap = g
        .arcs()
        .map(|a| layout.encode(g.incidence(a), g.orbit_map(a)))
        .collect();
    let eta = GraphMorphism::new_unchecked(g.clone(), inj.clone(), g.vertices().collect(), amap);
    Ok((inj, eta))
}

/// `ι_!σ` for a map of set pairs.
pub fn extend_map(ctx: &Arc<Context>, sigma: &SetPairMap) -> GraphMorphism {
    let src = ExtendLayout::new(ctx, sigma.source);
    let dst = ExtendLayout::new(ctx, sigma.target);
    let mut vmap = sigma.vmap.clone();
    for &b in &sigma.amap {
        vmap.extend((0..ctx.arity()).map(|x| dst.arc_copy_vertex(b, x)));
    }
    let amap = (0..src.counts().1)
        .map(|arc| {
            let (a, m) = src.split_arc(arc);
            dst.arc_copy_arc(sigma.amap[a], m)
        })
        .collect();
    GraphMorphism::new_unchecked(
        iota_extend(ctx, sigma.source),
        iota_extend(ctx, sigma.target),
        vmap,
        amap,
    )
}

/// `ι_*σ`: `(f, s) ↦ (σ_V∘f, σ_A∘s)`.
pub fn coextend_map(
    ctx: &Arc<Context>,
    sigma: &SetPairMap,
) -> Result<GraphMorphism, AdjunctionError> {
    let source = iota_coextend(ctx, sigma.source)?;
    let target = iota_coextend(ctx, sigma.target)?;
    let src = CoextendLayout::new(ctx, sigma.source);
    let dst = CoextendLayout::new(ctx, sigma.target);
    let amap = exec::map_range(source.arc_count(), |arc| {
        let (f, s) = src.decode(arc);
        let f2: Vec<usize> = f.iter().map(|&v| sigma.vmap[v]).collect();
        let s2: Vec<usize> = s.iter().map(|&a| sigma.amap[a]).collect();
        dst.encode(&f2, &s2)
    });
    Ok(GraphMorphism::new_unchecked(
        source,
        target,
        sigma.vmap.clone(),
        amap,
    ))
}

/// `Proj(f)`.
pub fn proj_map(f: &GraphMorphism) -> GraphMorphism {
    extend_map(f.source().context(), &restrict_map(f))
}

/// `Inj(f)`.
pub fn inj_map(f: &GraphMorphism) -> Result<GraphMorphism, AdjunctionError> {
    coextend_map(f.source().context(), &restrict_map(f))
}

/// Unit of `ι_! ⊣ ι^*` at `S`: `v ↦ v`, `a ↦ (a, e)`.
pub fn extend_unit(ctx: &Context, s: SetPair) -> SetPairMap {
    let layout = ExtendLayout::new(ctx, s);
    let (nv, na) = layout.counts();
    SetPairMap {
        source: s,
        target: SetPair::new(nv, na),
        vmap: (0..s.vertices).collect(),
        amap: (0..s.arcs)
            .map(|a| layout.arc_copy_arc(a, ctx.monoid().identity()))
            .collect(),
    }
}

/// Counit of `ι^* ⊣ ι_*` at `S`, evaluated on one arc: `(f, s) ↦ s(e)`.
pub fn coextend_counit_at(ctx: &Context, s: SetPair, arc: usize) -> usize {
    let layout = CoextendLayout::new(ctx, s);
    let n = layout.orbits.len().expect("caller materialized ι_*S");
    let mut sv = vec![0; ctx.order()];
    layout.orbits.decode_into(arc % n, &mut sv);
    sv[ctx.monoid().identity()]
}

/// Counts of what a triangle check covered.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct TriangleReport {
    pub triangles: usize,
    pub naturality_squares: usize,
    pub points: usize,
}

fn expect_eq(
    law: &'static str,
    at: impl FnOnce() -> String,
    expected: usize,
    got: usize,
) -> Result<(), AdjunctionError> {
    if expected == got {
        Ok(())
    } else {
        Err(AdjunctionError::TriangleFailure {
            law,
            at: at(),
            expected: expected.to_string(),
            got: got.to_string(),
        })
    }
}

fn expect_identity(
    law: &'static str,
    vmap: &[usize],
    amap: &[usize],
) -> Result<usize, AdjunctionError> {
    for (v, &w) in vmap.iter().enumerate() {
        expect_eq(law, || format!("vertex {v}"), v, w)?;
    }
    for (a, &b) in amap.iter().enumerate() {
        expect_eq(law, || format!("arc {a}"), a, b)?;
    }
    Ok(vmap.len() + amap.len())
}

fn expect_same(
    law: &'static str,
    lhs: &GraphMorphism,
    rhs: &GraphMorphism,
) -> Result<usize, AdjunctionError> {
    for (v, (&p, &q)) in lhs.vmap().iter().zip(rhs.vmap()).enumerate() {
        expect_eq(law, || format!("vertex {v}"), p, q)?;
    }
    for (a, (&p, &q)) in lhs.amap().iter().zip(rhs.amap()).enumerate() {
        expect_eq(law, || format!("arc {a}"), p, q)?;
    }
    Ok(lhs.vmap().len() + lhs.amap().len())
}

/// The two triangles of `ι_! ⊣ ι^*` and of `ι^* ⊣ ι_*` on `G` and
/// `S = ι^*G`, plus naturality of `ε`, `η`, and the set-level unit and
/// counit along each supplied morphism out of `G`.
///
/// The triangle `ι_*ε'_S ∘ η_{ι_*S} = id` is evaluated arc by arc, since
/// `ι_*ι^*ι_*S` is far too large to build.
pub fn check_triangles(
    g: &XMGraph,
    morphisms: &[GraphMorphism],
) -> Result<TriangleReport, AdjunctionError> {
    let ctx = g.context();
    let s = restrict(g);
    let mut report = TriangleReport::default();

    let (proj, eps) = proj_refinement(g);
    eps.check()?;
    let eta_s = extend_unit(ctx, s);
    // (ι^*ε_G) ∘ η'_{ι^*G} = id
    let vmap: Vec<usize> = eta_s.vmap.iter().map(|&v| eps.vmap()[v]).collect();
    let amap: Vec<usize> = eta_s.amap.iter().map(|&a| eps.amap()[a]).collect();
    report.points += expect_identity("ε_G ∘ η'_{ι*G} = id", &vmap, &amap)?;
    report.triangles += 1;

    // ε_{ι_!S} ∘ ι_!(η'_S) = id
    let lifted = extend_map(ctx, &eta_s);
    let (_, eps_ext) = proj_refinement(lifted.source());
    let composite = lifted.then(&eps_ext)?;
    report.points += expect_identity("ε_{ι!S} ∘ ι!η'_S = id", composite.vmap(), composite.amap())?;
    report.triangles += 1;

    let (inj, eta) = inj_refinement(g)?;
    eta.check()?;
    // ε'_{ι^*G} ∘ ι^*η_G = id
    let amap: Vec<usize> = eta
        .amap()
        .iter()
        .map(|&a| coextend_counit_at(ctx, s, a))
        .collect();
    report.points += expect_identity("ε'_{ι*G} ∘ η_G = id", eta.vmap(), &amap)?;
    report.triangles += 1;

    // ι_*(ε'_S) ∘ η_{ι_*S} = id, pointwise on ι_*S = Inj(G).
    let layout = CoextendLayout::new(ctx, s);
    let checked = exec::map_range(inj.arc_count(), |arc| -> Result<usize, AdjunctionError> {
        let f = inj.incidence(arc);
        // η_{ι_*S}(arc) = (∂arc, m' ↦ arc.m'); then apply ε'_S to each entry.
        let s2: Vec<usize> = inj
            .orbit_map(arc)
            .iter()
            .map(|&b| coextend_counit_at(ctx, s, b))
            .collect();
        expect_eq(
            "ι*ε'_S ∘ η_{ι*S} = id",
            || format!("arc {arc}"),
            arc,
            layout.encode(f, &s2),
        )?;
        Ok(1)
    });
    for c in checked {
        report.points += c?;
    }
    report.triangles += 1;

    for f in morphisms {
        if f.source() != g {
            return Err(GraphError::NotComposable.into());
        }
        let h = f.target();
        // ε_H ∘ Proj(f) = f ∘ ε_G
        let (_, eps_h) = proj_refinement(h);
        let lhs = proj_map(f).then(&eps_h)?;
        let rhs = eps.then(f)?;
        report.points += expect_same("ε natural", &lhs, &rhs)?;
        // η_H ∘ f = Inj(f) ∘ η_G
        let (_, eta_h) = inj_refinement(h)?;
        let lhs = f.then(&eta_h)?;
        let rhs = eta.then(&inj_map(f)?)?;
        report.points += expect_same("η natural", &lhs, &rhs)?;
        // ι^*ι_!(ι^*f) ∘ η'_{ι^*G} = η'_{ι^*H} ∘ ι^*f
        let sigma = restrict_map(f);
        let lhs = eta_s.then(&restrict_map(&extend_map(ctx, &sigma)));
        let rhs = sigma.then(&extend_unit(ctx, sigma.target));
        for (a, (&p, &q)) in lhs.amap.iter().zip(&rhs.amap).enumerate() {
            expect_eq("η' natural", || format!("arc {a}"), p, q)?;
        }
        report.points += lhs.amap.len();
        // ε'_{ι^*H} ∘ ι^*ι_*(ι^*f) = ι^*f ∘ ε'_{ι^*G}
        let lifted = coextend_map(ctx, &sigma)?;
        let t = sigma.target;
        for arc in inj.arcs() {
            let p = coextend_counit_at(ctx, t, lifted.amap()[arc]);
            let q = f.amap()[coextend_counit_at(ctx, s, arc)];
            expect_eq("ε' natural", || format!("arc {arc}"), q, p)?;
        }
        report.points += inj.arc_count();
        report.naturality_squares += 4;
    }
    debug_assert_eq!(proj.counts(), ExtendLayout::new(ctx, s).counts());
    Ok(report)
}
