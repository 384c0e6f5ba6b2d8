//! Injective and projective `(X, M)`-graphs: deciders, injective hulls,
//! projective covers and essentiality checks.

use std::sync::Arc;

use petgraph::unionfind::UnionFind;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::FunctionSpace;
use crate::exec;
use crate::graph::{
    coproduct, Congruence, Element, GraphError, GraphMorphism, Sort, Subgraph, XMGraph,
};

/// Largest `|V|^|X|` for which incidence maps are tabulated.
pub const INCIDENCE_TABLE_LIMIT: usize = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", content = "detail", rename_all = "snake_case")]
pub enum HullError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("morphism is not a monomorphism")]
    NotMono,
    #[error("morphism is not an epimorphism")]
    NotEpi,
    #[error(
        "no equivariant section for unrealized map {unrealized:?} over realized maps {realized:?}"
    )]
    HullSectionNotFound {
        unrealized: Vec<usize>,
        realized: Vec<Vec<usize>>,
    },
}

/// For every map `f: X → G(V)`, the smallest arc with `∂α = f`, if any.
#[derive(Debug, Clone)]
pub struct IncidenceIndex {
    space: FunctionSpace,
    realizer: Vec<Option<usize>>,
}

impl IncidenceIndex {
    pub fn new(g: &XMGraph) -> Result<Self, GraphError> {
        let space = FunctionSpace::new(g.context().arity(), g.vertex_count());
        let n = space
            .len()
            .filter(|&n| n <= INCIDENCE_TABLE_LIMIT)
            .ok_or_else(|| GraphError::TooLarge(format!("{} incidence maps", g.vertex_count())))?;
        let mut realizer = vec![None; n];
        for a in g.arcs() {
            realizer[space.encode(g.incidence(a))].get_or_insert(a);
        }
        Ok(Self { space, realizer })
    }

    pub fn space(&self) -> FunctionSpace {
        self.space
    }

    pub fn len(&self) -> usize {
        self.realizer.len()
    }

    pub fn is_empty(&self) -> bool {
        self.realizer.is_empty()
    }

    pub fn realizer(&self, code: usize) -> Option<usize> {
        self.realizer[code]
    }

    /// Codes of the maps no arc realizes, ascending.
    pub fn unrealized(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&c| self.realizer[c].is_none())
            .collect()
    }
}

/// Outcome of [`is_injective`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum InjectiveCertificate {
    /// `realizers[code(f)]` is an arc with incidence `f`.
    Injective {
        realizers: Vec<usize>,
    },
    NoVertex,
    Unrealized {
        map: Vec<usize>,
    },
}

impl InjectiveCertificate {
    pub fn holds(&self) -> bool {
        matches!(self, InjectiveCertificate::Injective { .. })
    }
}

/// `Q` is injective iff it has a vertex and every `f: X → Q(V)` is the
/// incidence of some arc.
pub fn is_injective(q: &XMGraph) -> Result<InjectiveCertificate, GraphError> {
    if q.vertex_count() == 0 {
        return Ok(InjectiveCertificate::NoVertex);
    }
    let index = IncidenceIndex::new(q)?;
    match index.unrealized().first() {
        Some(&code) => Ok(InjectiveCertificate::Unrealized {
            map: index.space().decode(code),
        }),
        None => Ok(InjectiveCertificate::Injective {
            realizers: index
                .realizer
                .iter()
                .map(|r| r.expect("all realized"))
                .collect(),
        }),
    }
}

/// `P ≅ ⊔_S V̲ ⊔ ⊔_T A̲`, with the isomorphism out of the coproduct.
#[derive(Debug, Clone)]
pub struct ProjectiveDecomposition {
    pub isolated: Vec<usize>,
    pub generators: Vec<usize>,
    pub iso: GraphMorphism,
}

/// `⊔_S V̲ ⊔ ⊔_T A̲ → G`, each summand sent by its classifying map.
fn classifying_sum(g: &XMGraph, isolated: &[usize], generators: &[usize]) -> GraphMorphism {
    let ctx = g.context();
    let v = XMGraph::representable(ctx, Sort::Vertex);
    let a = XMGraph::representable(ctx, Sort::Arc);
    let parts: Vec<XMGraph> = std::iter::repeat_n(v, isolated.len())
        .chain(std::iter::repeat_n(a, generators.len()))
        .collect();
    let (sum, _) = coproduct(ctx, &parts).expect("representables share the context");
    let mut vmap = isolated.to_vec();
    let mut amap = Vec::with_capacity(sum.arc_count());
    for &t in generators {
        vmap.extend_from_slice(g.incidence(t));
        amap.extend_from_slice(g.orbit_map(t));
    }
    GraphMorphism::new_unchecked(sum, g.clone(), vmap, amap)
}

/// Splits `p` into representables if it is a coproduct of them.
///
/// Arcs are grouped into action-connected blocks. A block is a copy of
/// `A̲` iff it has an arc `g` whose orbit map is a bijection onto the block
/// and whose incidence is injective; the vertex sets of the blocks must
/// also be pairwise disjoint.
pub fn decompose_projective(p: &XMGraph) -> Option<ProjectiveDecomposition> {
    let ctx = p.context();
    let nm = ctx.order();
    let mut uf = UnionFind::<usize>::new(p.arc_count());
    for a in p.arcs() {
        for &b in p.orbit_map(a) {
            uf.union(a, b);
        }
    }
    let labels = uf.into_labeling();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut block_of = vec![usize::MAX; p.arc_count()];
    for a in p.arcs() {
        let root = labels[a];
        if block_of[root] == usize::MAX {
            block_of[root] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[block_of[root]].push(a);
    }
    let mut owner = vec![usize::MAX; p.vertex_count()];
    let mut generators = Vec::with_capacity(blocks.len());
    for (b, block) in blocks.iter().enumerate() {
        if block.len() != nm {
            return None;
        }
        let injective = |xs: &[usize], n: usize| {
            let mut seen = vec![false; n];
            xs.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
        };
        let g = block.iter().copied().find(|&g| {
            injective(p.orbit_map(g), p.arc_count()) && injective(p.incidence(g), p.vertex_count())
        })?;
        for &v in p.incidence(g) {
            if owner[v] != usize::MAX && owner[v] != b {
                return None;
            }
            owner[v] = b;
        }
        generators.push(g);
    }
    let isolated = p.isolated_vertices();
    let iso = classifying_sum(p, &isolated, &generators);
    debug_assert!(iso.kind().iso);
    Some(ProjectiveDecomposition {
        isolated,
        generators,
        iso,
    })
}

pub fn is_projective(p: &XMGraph) -> bool {
    decompose_projective(p).is_some()
}

/// An injective hull `G ↪ G̃`.
#[derive(Debug, Clone)]
pub struct HullResult {
    pub hull: XMGraph,
    pub embedding: GraphMorphism,
    /// Incidence maps of the arcs added to `G`, in id order.
    pub added_arcs: Vec<Vec<usize>>,
    /// Set when `G` had no vertex and one had to be adjoined first.
    pub added_vertex: bool,
}

/// Smallest `c: R → G(A)` with `∂c(g) = g` and `c(g).m = c(g∘ρ_m)`, where
/// `R` is the set of realized maps reached from `F`. Backtracks over the
/// realizing arcs of each orbit representative.
fn equivariant_section(
    g: &XMGraph,
    index: &IncidenceIndex,
    precompose: &[usize],
    reached: &[usize],
) -> Option<Vec<(usize, usize)>> {
    let nm = g.context().order();
    let mut by_code: Vec<Vec<usize>> = vec![Vec::new(); index.len()];
    for a in g.arcs() {
        by_code[index.space().encode(g.incidence(a))].push(a);
    }
    let mut choice: std::collections::BTreeMap<usize, usize> = Default::default();

    fn go(
        i: usize,
        reached: &[usize],
        g: &XMGraph,
        nm: usize,
        precompose: &[usize],
        by_code: &[Vec<usize>],
        choice: &mut std::collections::BTreeMap<usize, usize>,
    ) -> bool {
        let Some(&code) = reached.get(i) else {
            return true;
        };
        if choice.contains_key(&code) {
            return go(i + 1, reached, g, nm, precompose, by_code, choice);
        }
        for &alpha in &by_code[code] {
            let mut placed = Vec::new();
            let ok = (0..nm).all(|m| {
                let target = precompose[code * nm + m];
                let arc = g.act(alpha, m);
                match choice.get(&target) {
                    Some(&cur) => cur == arc,
                    None => {
                        choice.insert(target, arc);
                        placed.push(target);
                        true
                    }
                }
            });
            if ok && go(i + 1, reached, g, nm, precompose, by_code, choice) {
                return true;
            }
            for t in placed {
                choice.remove(&t);
            }
        }
        false
    }

    go(0, reached, g, nm, precompose, &by_code, &mut choice).then(|| choice.into_iter().collect())
}

/// The injective hull: all unrealized incidence maps are added as arcs.
///
/// A graph with no vertex first gets one; for the initial graph this
/// yields the terminal graph. For an added arc `f`, `f.m = f∘ρ_m` when that
/// map is unrealized and `c(f∘ρ_m)` otherwise, with `c` an equivariant
/// section of `∂` found by search. Over a group no added arc ever reaches
/// a realized map, so no search happens.
pub fn injective_hull(g: &XMGraph) -> Result<HullResult, HullError> {
    let ctx = g.context();
    let (nx, nm) = (ctx.arity(), ctx.order());
    let added_vertex = g.vertex_count() == 0;
    let base = if added_vertex {
        let (b, _) = coproduct(ctx, &[g.clone(), XMGraph::representable(ctx, Sort::Vertex)])?;
        b
    } else {
        g.clone()
    };
    let index = IncidenceIndex::new(&base)?;
    let space = index.space();
    let carrier = ctx.carrier();
    // precompose[code * |M| + m] = code(f∘ρ_m)
    let precompose: Vec<usize> = exec::map_range(index.len(), |code| {
        let f = space.decode(code);
        (0..nm)
            .map(|m| {
                let moved: Vec<usize> = (0..nx).map(|x| f[carrier.act(x, m)]).collect();
                space.encode(&moved)
            })
            .collect::<Vec<_>>()
    })
    .concat();
    let unrealized = index.unrealized();
    let mut new_id = vec![usize::MAX; index.len()];
    for (i, &code) in unrealized.iter().enumerate() {
        new_id[code] = base.arc_count() + i;
    }
    let mut reached: Vec<usize> = unrealized
        .iter()
        .flat_map(|&f| (0..nm).map(move |m| (f, m)))
        .map(|(f, m)| precompose[f * nm + m])
        .filter(|&c| index.realizer(c).is_some())
        .collect();
    reached.sort_unstable();
    reached.dedup();
    let section: Vec<(usize, usize)> = if reached.is_empty() {
        Vec::new()
    } else {
        equivariant_section(&base, &index, &precompose, &reached).ok_or_else(|| {
            let f = unrealized
                .iter()
                .copied()
                .find(|&f| (0..nm).any(|m| reached.binary_search(&precompose[f * nm + m]).is_ok()))
                .expect("some unrealized map reaches a realized one");
            HullError::HullSectionNotFound {
                unrealized: space.decode(f),
                realized: reached.iter().map(|&c| space.decode(c)).collect(),
            }
        })?
    };
    let section: std::collections::HashMap<usize, usize> = section.into_iter().collect();
    let mut inc = base.flat_incidence().to_vec();
    let mut act = base.flat_action().to_vec();
    for &f in &unrealized {
        inc.extend(space.decode(f));
        act.extend((0..nm).map(|m| {
            let code = precompose[f * nm + m];
            if new_id[code] != usize::MAX {
                new_id[code]
            } else {
                section[&code]
            }
        }));
    }
    let hull = XMGraph::from_flat_unchecked(
        ctx,
        base.vertex_count(),
        base.arc_count() + unrealized.len(),
        inc,
        act,
    );
    let embedding = GraphMorphism::new_unchecked(
        g.clone(),
        hull.clone(),
        g.vertices().collect(),
        g.arcs().collect(),
    );
    Ok(HullResult {
        hull,
        embedding,
        added_arcs: unrealized.iter().map(|&f| space.decode(f)).collect(),
        added_vertex,
    })
}

/// One representative per source component of the arc-reachability
/// condensation.
pub fn minimal_generating_arcs(g: &XMGraph) -> Vec<usize> {
    g.generating_arcs()
}

/// A projective cover `⊔_S V̲ ⊔ ⊔_T A̲ ↠ G`.
#[derive(Debug, Clone)]
pub struct CoverResult {
    pub cover: XMGraph,
    pub projection: GraphMorphism,
    pub isolated: Vec<usize>,
    pub generators: Vec<usize>,
}

pub fn projective_cover(g: &XMGraph) -> CoverResult {
    let isolated = g.isolated_vertices();
    let generators = minimal_generating_arcs(g);
    let projection = classifying_sum(g, &isolated, &generators);
    CoverResult {
        cover: projection.source().clone(),
        projection,
        isolated,
        generators,
    }
}

/// Result of an essentiality check; the witness shows why it fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "witness", rename_all = "snake_case")]
pub enum Essentiality<W> {
    Essential,
    Inessential(W),
}

impl<W> Essentiality<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Essentiality::Essential)
    }
}

/// Why a mono is not essential: merging `pair` in the target keeps the
/// image injective.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonoWitness {
    pub pair: (Element, Element),
}

/// Why an epi is not essential: restricted to the largest subgraph
/// avoiding `omitted`, it is still epi.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EpiWitness {
    pub omitted: Element,
}

/// `i` is essential iff every congruence generated by one pair of distinct
/// target elements identifies two elements of the image.
pub fn is_essential_mono(i: &GraphMorphism) -> Result<Essentiality<MonoWitness>, HullError> {
    if !i.kind().mono {
        return Err(HullError::NotMono);
    }
    let t = i.target();
    let mut pairs = Vec::new();
    for u in t.vertices() {
        for v in u + 1..t.vertex_count() {
            pairs.push((Element::Vertex(u), Element::Vertex(v)));
        }
    }
    for a in t.arcs() {
        for b in a + 1..t.arc_count() {
            pairs.push((Element::Arc(a), Element::Arc(b)));
        }
    }
    let witness = exec::find_map_first(&pairs, |&pair| {
        let c = Congruence::generated(t, &[pair]).expect("elements exist");
        c.first_identified(i.vmap(), i.amap())
            .is_none()
            .then_some(MonoWitness { pair })
    });
    Ok(witness.map_or(Essentiality::Essential, Essentiality::Inessential))
}

/// `e` is essential iff for every source element `z` the restriction of
/// `e` to the largest subgraph avoiding `z` is not epi.
pub fn is_essential_epi(e: &GraphMorphism) -> Result<Essentiality<EpiWitness>, HullError> {
    if !e.kind().epi {
        return Err(HullError::NotEpi);
    }
    let s = e.source();
    let t = e.target();
    let elements = s.elements();
    let witness = exec::find_map_first(&elements, |&z| {
        let sub = Subgraph::avoiding(s, z).expect("element exists");
        let mut vhit = vec![false; t.vertex_count()];
        let mut ahit = vec![false; t.arc_count()];
        sub.vertex_ids()
            .into_iter()
            .for_each(|v| vhit[e.vmap()[v]] = true);
        sub.arc_ids()
            .into_iter()
            .for_each(|a| ahit[e.amap()[a]] = true);
        (vhit.iter().chain(&ahit).all(|&h| h)).then_some(EpiWitness { omitted: z })
    });
    Ok(witness.map_or(Essentiality::Essential, Essentiality::Inessential))
}

/// Mono from the hull into `Inj(G)` extending `η_G`: a hull arc `β` goes
/// to `(∂β, n ↦ r(β.n))`, where `r` fixes `G(A)` and sends added arcs to
/// arc 0. Absent when `G` has no arc, since then `Inj(G)` has none.
pub fn hull_into_inj(
    g: &XMGraph,
    hull: &HullResult,
) -> Result<Option<GraphMorphism>, crate::adjunction::AdjunctionError> {
    if g.arc_count() == 0 || hull.added_vertex {
        return Ok(None);
    }
    let (inj, _) = crate::adjunction::inj_refinement(g)?;
    let layout =
        crate::adjunction::CoextendLayout::new(g.context(), crate::adjunction::restrict(g));
    let r = |b: usize| if b < g.arc_count() { b } else { 0 };
    let amap = hull
        .hull
        .arcs()
        .map(|b| {
            let s: Vec<usize> = hull.hull.orbit_map(b).iter().map(|&c| r(c)).collect();
            layout.encode(hull.hull.incidence(b), &s)
        })
        .collect();
    Ok(Some(GraphMorphism::new_unchecked(
        hull.hull.clone(),
        inj,
        hull.hull.vertices().collect(),
        amap,
    )))
}

/// The cover as a subgraph of `Proj(G)`: the `V̲`-copies of `S` and the
/// `A̲`-copies of `T`, commuting with `ε_G`.
pub fn cover_into_proj(g: &XMGraph, cover: &CoverResult) -> GraphMorphism {
    let ctx: &Arc<_> = g.context();
    let (proj, _) = crate::adjunction::proj_refinement(g);
    let layout = crate::adjunction::ExtendLayout::new(ctx, crate::adjunction::restrict(g));
    let mut vmap = cover.isolated.clone();
    let mut amap = Vec::new();
    for &t in &cover.generators {
        vmap.extend((0..ctx.arity()).map(|x| layout.arc_copy_vertex(t, x)));
        amap.extend((0..ctx.order()).map(|m| layout.arc_copy_arc(t, m)));
    }
    GraphMorphism::new_unchecked(cover.cover.clone(), proj, vmap, amap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Context;

    fn s2() -> Arc<Context> {
        Arc::new(Context::symmetric(2))
    }

    #[test]
    fn injective_examples() {
        let ctx = s2();
        assert!(is_injective(&XMGraph::terminal(&ctx)).unwrap().holds());
        let two = XMGraph::discrete(&ctx, 2);
        assert_eq!(
            is_injective(&two).unwrap(),
            InjectiveCertificate::Unrealized { map: vec![0, 0] }
        );
        let a = XMGraph::representable(&ctx, Sort::Arc);
        let (inj, _) = crate::adjunction::inj_refinement(&a).unwrap();
        assert!(is_injective(&inj).unwrap().holds());
        assert_eq!(
            is_injective(&XMGraph::initial(&ctx)).unwrap(),
            InjectiveCertificate::NoVertex
        );
    }

    #[test]
    fn projective_examples() {
        let ctx = s2();
        let v = XMGraph::representable(&ctx, Sort::Vertex);
        let a = XMGraph::representable(&ctx, Sort::Arc);
        let (va, _) = coproduct(&ctx, &[v, a.clone()]).unwrap();
        let d = decompose_projective(&va).unwrap();
        assert_eq!((d.isolated.len(), d.generators.len()), (1, 1));
        assert!(d.iso.kind().iso);
        assert!(!is_projective(&XMGraph::terminal(&ctx)));
        assert!(is_projective(&XMGraph::initial(&ctx)));
        // A̲ plus an arc fixed by σ.
        let mut inc = a.incidence_rows();
        let mut act = a.action_rows();
        inc.push(vec![0, 0]);
        act.push(vec![2, 2]);
        let fixed = XMGraph::new(&ctx, 2, &inc, &act).unwrap();
        assert!(!is_projective(&fixed));
    }

    #[test]
    fn hull_of_initial_is_terminal() {
        for (_, ctx) in Context::standard() {
            let ctx = Arc::new(ctx);
            let h = injective_hull(&XMGraph::initial(&ctx)).unwrap();
            assert_eq!(h.hull, XMGraph::terminal(&ctx));
        }
    }

    #[test]
    fn hull_of_two_vertices_and_representable() {
        let ctx = s2();
        let h = injective_hull(&XMGraph::discrete(&ctx, 2)).unwrap();
        assert_eq!(h.added_arcs.len(), 4);
        h.hull.check_laws().unwrap();
        assert!(is_essential_mono(&h.embedding).unwrap().holds());
        let a = XMGraph::representable(&ctx, Sort::Arc);
        let h = injective_hull(&a).unwrap();
        assert_eq!(h.added_arcs, vec![vec![0, 0], vec![1, 1]]);
        assert_eq!(h.hull.arc_count(), 4);
        assert!(is_injective(&h.hull).unwrap().holds());
    }

    #[test]
    fn hull_over_idempotent_monoid_uses_section() {
        let ctx = Arc::new(Context::idempotent());
        let a = XMGraph::representable(&ctx, Sort::Arc);
        let h = injective_hull(&a).unwrap();
        h.hull.check_laws().unwrap();
        assert!(is_injective(&h.hull).unwrap().holds());
    }

    #[test]
    fn cover_examples() {
        let ctx = s2();
        let t = XMGraph::terminal(&ctx);
        let c = projective_cover(&t);
        assert_eq!(c.cover, XMGraph::representable(&ctx, Sort::Arc));
        assert!(c.projection.kind().epi);
        assert!(is_essential_epi(&c.projection).unwrap().holds());
        let c = projective_cover(&XMGraph::initial(&ctx));
        assert!(c.cover.is_initial());
    }

    #[test]
    fn essentiality_witnesses() {
        let ctx = s2();
        let v = XMGraph::representable(&ctx, Sort::Vertex);
        let (vv, inj) = coproduct(&ctx, &[v.clone(), v.clone()]).unwrap();
        assert_eq!(
            is_essential_mono(&inj[0]).unwrap(),
            Essentiality::Inessential(MonoWitness {
                pair: (Element::Vertex(0), Element::Vertex(1))
            })
        );
        let fold = GraphMorphism::new(vv, v.clone(), vec![0, 0], vec![]).unwrap();
        assert!(!is_essential_epi(&fold).unwrap().holds());
        assert_eq!(is_essential_mono(&fold).unwrap_err(), HullError::NotMono);
        let id = GraphMorphism::identity(&v);
        assert!(is_essential_mono(&id).unwrap().holds());
        assert!(is_essential_epi(&id).unwrap().holds());
    }
}
