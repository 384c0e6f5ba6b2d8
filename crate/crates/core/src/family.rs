//! Finite families of test objects: every graph up to isomorphism within
//! size bounds, extensions of a fixed graph, seeded random graphs, and small
//! hypergraph and `Π̲_X`-graph families.

use std::collections::BTreeMap;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Context;
use crate::exec;
use crate::graph::{coproduct, hom_any, Congruence, Element, GraphMorphism, Sort, XMGraph};
use crate::hypersem::{sym_power, Hypergraph, PiGraph};

/// Generator-image odometer over `values`, one digit per `(arc, generator)`.
fn odometer(digits: usize, values: usize, mut visit: impl FnMut(&[usize])) {
    if digits > 0 && values == 0 {
        return;
    }
    let mut word = vec![0; digits];
    loop {
        visit(&word);
        let mut i = 0;
        loop {
            if i == digits {
                return;
            }
            word[i] += 1;
            if word[i] < values {
                break;
            }
            word[i] = 0;
            i += 1;
        }
    }
}

/// Each element as `mul(g, p)` for an earlier `p`, in BFS order from the
/// identity.
fn spelling(ctx: &Context) -> (Vec<usize>, Vec<(usize, usize, usize)>) {
    let monoid = ctx.monoid();
    let gens = monoid.generating_set();
    let mut seen = vec![false; monoid.size()];
    seen[monoid.identity()] = true;
    let mut order = vec![monoid.identity()];
    let mut steps = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let p = order[i];
        for (gi, &g) in gens.iter().enumerate() {
            let q = monoid.mul(g, p);
            if !seen[q] {
                seen[q] = true;
                order.push(q);
                steps.push((q, p, gi));
            }
        }
        i += 1;
    }
    (gens, steps)
}

/// Completes generator images for arcs `fixed..total` into a full action
/// table on top of `base` (the table of arcs `0..fixed`), checking the unit
/// and composition laws.
fn complete_action(
    ctx: &Context,
    gens: &[usize],
    steps: &[(usize, usize, usize)],
    base: &[usize],
    fixed: usize,
    total: usize,
    images: &[usize],
) -> Option<Vec<usize>> {
    let monoid = ctx.monoid();
    let nm = monoid.size();
    let mut act = vec![usize::MAX; total * nm];
    act[..base.len()].copy_from_slice(base);
    for a in fixed..total {
        act[a * nm + monoid.identity()] = a;
    }
    for a in fixed..total {
        for (gi, &g) in gens.iter().enumerate() {
            let img = images[(a - fixed) * gens.len() + gi];
            if act[a * nm + g] != usize::MAX && act[a * nm + g] != img {
                return None;
            }
            act[a * nm + g] = img;
        }
    }
    for &(q, p, gi) in steps {
        for a in fixed..total {
            let via = act[act[a * nm + p] * nm + gens[gi]];
            let slot = &mut act[a * nm + q];
            if *slot != usize::MAX && *slot != via {
                return None;
            }
            *slot = via;
        }
    }
    for a in 0..total {
        for m in monoid.elements() {
            let am = act[a * nm + m];
            for m2 in monoid.elements() {
                if act[am * nm + m2] != act[a * nm + monoid.mul(m2, m)] {
                    return None;
                }
            }
        }
    }
    Some(act)
}

/// Every valid arc-action table on `n` labelled arcs.
pub fn arc_actions(ctx: &Context, n: usize) -> Vec<Vec<usize>> {
    let (gens, steps) = spelling(ctx);
    let mut out = Vec::new();
    odometer(n * gens.len(), n, |images| {
        if let Some(act) = complete_action(ctx, &gens, &steps, &[], 0, n, images) {
            out.push(act);
        }
    });
    out
}

/// Classes of incidence slots `(arc, x)` under `(a.m, x) ~ (a, x.m)`.
fn slot_classes(ctx: &Context, arcs: usize, act: &[usize]) -> Vec<usize> {
    let nx = ctx.arity();
    let nm = ctx.order();
    let carrier = ctx.carrier();
    let mut uf = UnionFind::<usize>::new(arcs * nx);
    for a in 0..arcs {
        for m in ctx.monoid().elements() {
            let am = act[a * nm + m];
            for x in 0..nx {
                uf.union(am * nx + x, a * nx + carrier.act(x, m));
            }
        }
    }
    uf.into_labeling()
}

/// Canonical form up to isomorphism: vertex count, then the least
/// `(action, incidence)` table over arc orders, with vertices numbered by
/// first occurrence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    vertices: usize,
    act: Vec<usize>,
    inc: Vec<usize>,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    fn go(k: usize, perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == perm.len() {
            out.push(perm.clone());
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            go(k + 1, perm, out);
            perm.swap(k, i);
        }
    }
    go(0, &mut perm, &mut out);
    out
}

/// Practical for up to about eight arcs.
pub fn canonical_form(g: &XMGraph) -> CanonicalForm {
    canonical_with(g, &permutations(g.arc_count()))
}

fn canonical_with(g: &XMGraph, perms: &[Vec<usize>]) -> CanonicalForm {
    let n = g.arc_count();
    let nm = g.context().order();
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    let mut inv = vec![0; n];
    for perm in perms {
        for (i, &a) in perm.iter().enumerate() {
            inv[a] = i;
        }
        let mut act = Vec::with_capacity(n * nm);
        for &a in perm {
            act.extend(g.orbit_map(a).iter().map(|&b| inv[b]));
        }
        if let Some((bact, _)) = &best {
            if act > *bact {
                continue;
            }
        }
        let mut label = vec![usize::MAX; g.vertex_count()];
        let mut next = 0;
        let mut inc = Vec::with_capacity(n * g.context().arity());
        for &a in perm {
            for &v in g.incidence(a) {
                if label[v] == usize::MAX {
                    label[v] = next;
                    next += 1;
                }
                inc.push(label[v]);
            }
        }
        let candidate = (act, inc);
        if best.as_ref().is_none_or(|b| candidate < *b) {
            best = Some(candidate);
        }
    }
    let (act, inc) = best.unwrap_or_default();
    CanonicalForm {
        vertices: g.vertex_count(),
        act,
        inc,
    }
}

/// Isomorphism test by search for a bijective morphism.
pub fn are_isomorphic(g: &XMGraph, h: &XMGraph) -> bool {
    g.counts() == h.counts()
        && hom_any(g, h, |vmap, amap| is_bijection(vmap) && is_bijection(amap))
            .expect("same context")
}

fn is_bijection(map: &[usize]) -> bool {
    let mut hit = vec![false; map.len()];
    map.iter()
        .all(|&i| i < hit.len() && !std::mem::replace(&mut hit[i], true))
}

/// Restricted growth strings: labellings of `c` slots by `< n` labels in
/// order of first use.
fn growth_strings(c: usize, n: usize, mut visit: impl FnMut(&[usize])) {
    fn go(s: &mut Vec<usize>, c: usize, n: usize, used: usize, visit: &mut impl FnMut(&[usize])) {
        if s.len() == c {
            visit(s);
            return;
        }
        for v in 0..n.min(used + 1) {
            s.push(v);
            go(s, c, n, used.max(v + 1), visit);
            s.pop();
        }
    }
    go(&mut Vec::with_capacity(c), c, n, 0, &mut visit);
}

fn canonical_tables(ctx: &Context, n: usize, perms: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let nm = ctx.order();
    let mut seen = BTreeMap::new();
    for act in arc_actions(ctx, n) {
        let mut inv = vec![0; n];
        let key = perms
            .iter()
            .map(|perm| {
                for (i, &a) in perm.iter().enumerate() {
                    inv[a] = i;
                }
                perm.iter()
                    .flat_map(|&a| act[a * nm..(a + 1) * nm].iter().map(|&b| inv[b]))
                    .collect::<Vec<_>>()
            })
            .min()
            .unwrap_or_default();
        seen.entry(key).or_insert(act);
    }
    seen.into_values().collect()
}

/// Every graph with at most `max_vertices` vertices and `max_arcs` arcs,
/// one per isomorphism class, sorted by size and canonical form.
pub fn exhaustive(ctx: &Arc<Context>, max_vertices: usize, max_arcs: usize) -> Vec<XMGraph> {
    let mut out = Vec::new();
    for n in 0..=max_arcs {
        let perms = permutations(n);
        let tables = canonical_tables(ctx, n, &perms);
        let found: Vec<(CanonicalForm, XMGraph)> = exec::flat_map(&tables, |act| {
            let classes = slot_classes(ctx, n, act);
            let mut class_ids: Vec<usize> = classes.clone();
            class_ids.sort_unstable();
            class_ids.dedup();
            let index: BTreeMap<usize, usize> =
                class_ids.iter().enumerate().map(|(i, &c)| (c, i)).collect();
            let slots: Vec<usize> = classes.iter().map(|c| index[c]).collect();
            let mut local = BTreeMap::new();
            for v in 0..=max_vertices {
                growth_strings(class_ids.len(), v, |labels| {
                    let inc: Vec<usize> = slots.iter().map(|&s| labels[s]).collect();
                    let g = XMGraph::from_flat_unchecked(ctx, v, n, inc, act.clone());
                    debug_assert!(g.check_laws().is_ok());
                    local.entry(canonical_with(&g, &perms)).or_insert(g);
                });
            }
            local.into_iter().collect()
        });
        let mut by_form: BTreeMap<CanonicalForm, XMGraph> = BTreeMap::new();
        for (k, g) in found {
            by_form.entry(k).or_insert(g);
        }
        out.extend(by_form.into_values());
    }
    out.sort_by_key(|g| (g.vertex_count(), g.arc_count()));
    out
}

/// Every graph `H` on the vertices of `g` (plus `extra_vertices` new ones)
/// whose arcs are those of `g` followed by `new_arcs` new arcs, with `g`
/// included as the first arcs and vertices. Labelled, so isomorphic
/// extensions repeat.
pub fn extensions(g: &XMGraph, extra_vertices: usize, new_arcs: usize) -> Vec<GraphMorphism> {
    let ctx = g.context();
    let (gens, steps) = spelling(ctx);
    let fixed = g.arc_count();
    let total = fixed + new_arcs;
    let nx = ctx.arity();
    let nv = g.vertex_count() + extra_vertices;
    let base = g.flat_action();
    let mut out = Vec::new();
    odometer(new_arcs * gens.len(), total, |images| {
        let Some(act) = complete_action(ctx, &gens, &steps, base, fixed, total, images) else {
            return;
        };
        let classes = slot_classes(ctx, total, &act);
        let mut pinned: BTreeMap<usize, usize> = BTreeMap::new();
        for a in 0..fixed {
            for x in 0..nx {
                let v = g.at(a, x);
                if *pinned.entry(classes[a * nx + x]).or_insert(v) != v {
                    return;
                }
            }
        }
        let mut free: Vec<usize> = classes[fixed * nx..]
            .iter()
            .copied()
            .filter(|c| !pinned.contains_key(c))
            .collect();
        free.sort_unstable();
        free.dedup();
        odometer(free.len(), nv, |labels| {
            let inc: Vec<usize> = classes
                .iter()
                .map(|c| match pinned.get(c) {
                    Some(&v) => v,
                    None => labels[free.binary_search(c).expect("free class")],
                })
                .collect();
            let h = XMGraph::from_flat_unchecked(ctx, nv, total, inc, act.clone());
            debug_assert!(h.check_laws().is_ok());
            out.push(GraphMorphism::new_unchecked(
                g.clone(),
                h,
                g.vertices().collect(),
                g.arcs().collect(),
            ));
        });
    });
    out
}

/// The orbits one can add to `g` over a group context: for every subgroup
/// `K` and every `f: X → G(V)` with `f(x.k) = f(x)`, a transitive orbit
/// whose base arc has incidence `f` and stabilizer `K`. Orbits isomorphic
/// over `G(V)` are listed once.
pub fn orbit_types(g: &XMGraph) -> Vec<XMGraph> {
    let ctx = g.context();
    let monoid = ctx.monoid();
    assert!(monoid.is_group(), "orbit types need a group");
    let mut subgroups: Vec<Vec<usize>> = Vec::new();
    for a in monoid.elements() {
        for b in monoid.elements() {
            let mut s = monoid.generated_by(&[a, b]);
            s.sort_unstable();
            if !subgroups.contains(&s) {
                subgroups.push(s);
            }
        }
    }
    let nx = ctx.arity();
    let nv = g.vertex_count();
    let a_rep = XMGraph::representable(ctx, Sort::Arc);
    let e = monoid.identity();
    let mut seen = BTreeMap::new();
    odometer(nx, nv, |f| {
        for k in &subgroups {
            if k.iter()
                .any(|&h| (0..nx).any(|x| f[ctx.carrier().act(x, h)] != f[x]))
            {
                continue;
            }
            let pairs: Vec<(Element, Element)> = k
                .iter()
                .map(|&h| (Element::Arc(e), Element::Arc(h)))
                .collect();
            let q = Congruence::generated(&a_rep, &pairs)
                .expect("arcs of the representable")
                .quotient(&a_rep);
            let orbit = &q.graph;
            let mut inc = Vec::with_capacity(orbit.arc_count() * nx);
            for b in orbit.arcs() {
                inc.extend(
                    orbit
                        .incidence(b)
                        .iter()
                        .map(|&v| f[vertex_rep(&q.projection, v)]),
                );
            }
            let placed = XMGraph::from_flat_unchecked(
                ctx,
                nv,
                orbit.arc_count(),
                inc,
                orbit.flat_action().to_vec(),
            );
            debug_assert!(placed.check_laws().is_ok());
            seen.entry(orbit_signature(&placed)).or_insert(placed);
        }
    });
    seen.into_values().collect()
}

/// A vertex of the representable that the quotient sends to `v`.
fn vertex_rep(projection: &GraphMorphism, v: usize) -> usize {
    projection
        .vmap()
        .iter()
        .position(|&w| w == v)
        .expect("quotient maps are onto")
}

/// Sorted `(incidence, stabilizer)` pairs of the arcs of a transitive
/// orbit; equal exactly when orbits are isomorphic over fixed vertices.
fn orbit_signature(o: &XMGraph) -> Vec<(Vec<usize>, Vec<usize>)> {
    let monoid = o.context().monoid();
    let mut sig: Vec<_> = o
        .arcs()
        .map(|a| {
            let stab: Vec<usize> = monoid.elements().filter(|&m| o.act(a, m) == a).collect();
            (o.incidence(a).to_vec(), stab)
        })
        .collect();
    sig.sort();
    sig
}

/// `g` together with the given orbits (all on `g`'s vertices), with the
/// inclusion of `g`.
pub fn adjoin_orbits(g: &XMGraph, orbits: &[&XMGraph]) -> GraphMorphism {
    let ctx = g.context();
    let nm = ctx.order();
    let mut inc = g.flat_incidence().to_vec();
    let mut act = g.flat_action().to_vec();
    let mut offset = g.arc_count();
    for o in orbits {
        inc.extend_from_slice(o.flat_incidence());
        act.extend(o.flat_action().iter().map(|&b| b + offset));
        offset += o.arc_count();
    }
    debug_assert_eq!(act.len(), offset * nm);
    let h = XMGraph::from_flat_unchecked(ctx, g.vertex_count(), offset, inc, act);
    debug_assert!(h.check_laws().is_ok());
    GraphMorphism::new_unchecked(g.clone(), h, g.vertices().collect(), g.arcs().collect())
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random quotient of `⊔ V̲ ⊔ A̲`: up to `max_vertex_copies` copies of
/// `V̲`, up to `max_arc_copies` of `A̲`, then up to `max_merges` random
/// same-sort identifications. Every graph arises this way.
pub fn random_graph(
    ctx: &Arc<Context>,
    rng: &mut impl Rng,
    max_vertex_copies: usize,
    max_arc_copies: usize,
    max_merges: usize,
) -> XMGraph {
    let v = XMGraph::representable(ctx, Sort::Vertex);
    let a = XMGraph::representable(ctx, Sort::Arc);
    let nv = rng.gen_range(0..=max_vertex_copies);
    let na = rng.gen_range(0..=max_arc_copies);
    let parts: Vec<XMGraph> = std::iter::repeat_n(v, nv)
        .chain(std::iter::repeat_n(a, na))
        .collect();
    let (sum, _) = coproduct(ctx, &parts).expect("same context");
    let mut pairs = Vec::new();
    for _ in 0..rng.gen_range(0..=max_merges) {
        if sum.arc_count() > 1 && rng.gen_bool(0.5) {
            let x = rng.gen_range(0..sum.arc_count());
            let y = rng.gen_range(0..sum.arc_count());
            pairs.push((Element::Arc(x), Element::Arc(y)));
        } else if sum.vertex_count() > 1 {
            let x = rng.gen_range(0..sum.vertex_count());
            let y = rng.gen_range(0..sum.vertex_count());
            pairs.push((Element::Vertex(x), Element::Vertex(y)));
        }
    }
    Congruence::generated(&sum, &pairs)
        .expect("pairs are in range")
        .quotient(&sum)
        .graph
}

/// Least relabelled edge list over all vertex permutations.
fn least_relabelling(n: usize, edges: &[Vec<usize>], perms: &[Vec<usize>]) -> Vec<Vec<usize>> {
    perms
        .iter()
        .map(|p| {
            let mut es: Vec<Vec<usize>> = edges
                .iter()
                .map(|e| {
                    let mut r: Vec<usize> = e.iter().map(|&v| p[v]).collect();
                    r.sort_unstable();
                    r
                })
                .collect();
            es.sort();
            es
        })
        .min()
        .unwrap_or_else(|| {
            debug_assert_eq!(n, 0);
            edges.to_vec()
        })
}

/// Multisets of edges drawn from `kinds`, one per vertex-relabelling class.
fn edge_multisets(n: usize, kinds: &[Vec<usize>], max_edges: usize) -> Vec<Vec<Vec<usize>>> {
    let perms = permutations(n);
    let mut out = Vec::new();
    fn go(
        start: usize,
        cur: &mut Vec<usize>,
        kinds: &[Vec<usize>],
        max_edges: usize,
        visit: &mut impl FnMut(&[usize]),
    ) {
        visit(cur);
        if cur.len() == max_edges {
            return;
        }
        for k in start..kinds.len() {
            cur.push(k);
            go(k, cur, kinds, max_edges, visit);
            cur.pop();
        }
    }
    go(0, &mut Vec::new(), kinds, max_edges, &mut |picked| {
        let edges: Vec<Vec<usize>> = picked.iter().map(|&k| kinds[k].clone()).collect();
        let mut sorted = edges.clone();
        sorted.sort();
        if least_relabelling(n, &edges, &perms) == sorted {
            out.push(sorted);
        }
    });
    out
}

/// Hypergraphs with at most `max_vertices` vertices and `max_edges` edges,
/// up to isomorphism.
pub fn hypergraphs(max_vertices: usize, max_edges: usize) -> Vec<Hypergraph> {
    let mut out = Vec::new();
    for n in 0..=max_vertices {
        let subsets: Vec<Vec<usize>> = (0..1usize << n)
            .map(|mask| (0..n).filter(|v| mask >> v & 1 == 1).collect())
            .collect();
        for edges in edge_multisets(n, &subsets, max_edges) {
            out.push(Hypergraph::new(n, &edges).expect("subsets are valid edges"));
        }
    }
    out
}

/// `Π̲_X`-graphs for `|X| = arity` with at most `max_vertices` vertices and
/// `max_edges` edges, up to isomorphism.
pub fn pigraphs(arity: usize, max_vertices: usize, max_edges: usize) -> Vec<PiGraph> {
    let mut out = Vec::new();
    for n in 0..=max_vertices {
        for edges in edge_multisets(n, &sym_power(n, arity), max_edges) {
            out.push(PiGraph::new(arity, n, &edges).expect("multisets are valid edges"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::hom_count;

    fn ctx(name: &str) -> Arc<Context> {
        Arc::new(
            Context::standard()
                .into_iter()
                .find(|(n, _)| *n == name)
                .expect("standard context")
                .1,
        )
    }

    #[test]
    fn quiver_family_counts() {
        // Directed multigraphs up to iso: 1 + 1 + 1 + 1 vertex-only graphs,
        // one arc on 1, 2 or 3 vertices: loop (3 ways by vertex count) and
        // edge (2 ways).
        let c = ctx("quiver");
        let fam = exhaustive(&c, 3, 1);
        let no_arcs = fam.iter().filter(|g| g.arc_count() == 0).count();
        let one_arc = fam.iter().filter(|g| g.arc_count() == 1).count();
        assert_eq!(no_arcs, 4);
        assert_eq!(one_arc, 3 + 2);
    }

    #[test]
    fn family_members_are_pairwise_non_isomorphic() {
        for (name, _) in Context::standard() {
            let c = ctx(name);
            let fam = exhaustive(&c, 2, 2);
            for g in &fam {
                g.check_laws().unwrap();
            }
            for (i, g) in fam.iter().enumerate() {
                for h in &fam[i + 1..] {
                    assert!(!are_isomorphic(g, h), "{name}: {g:?} ≅ {h:?}");
                }
            }
        }
    }

    #[test]
    fn family_is_closed_under_relabelling() {
        // Every random small graph is isomorphic to a family member.
        for (name, _) in Context::standard() {
            let c = ctx(name);
            let fam = exhaustive(&c, 2, 2);
            let mut rng = seeded_rng(7);
            for _ in 0..40 {
                let g = random_graph(&c, &mut rng, 2, 1, 3);
                if g.vertex_count() <= 2 && g.arc_count() <= 2 {
                    assert!(fam.iter().any(|h| are_isomorphic(&g, h)), "{name}: {g:?}");
                }
            }
        }
    }

    #[test]
    fn s2_msets_on_two_points() {
        // Trivial action on both, trivial on one only, and the swap.
        let c = ctx("symmetric-2");
        assert_eq!(arc_actions(&c, 2).len(), 2);
        assert_eq!(canonical_tables(&c, 2, &permutations(2)).len(), 2);
    }

    #[test]
    fn extensions_of_the_initial_graph() {
        let c = ctx("quiver");
        let init = XMGraph::initial(&c);
        let exts = extensions(&init, 1, 1);
        assert_eq!(exts.len(), 1);
        assert_eq!(exts[0].target(), &XMGraph::terminal(&c));
    }

    #[test]
    fn orbit_types_over_s2() {
        let c = ctx("symmetric-2");
        let two = XMGraph::discrete(&c, 2);
        // Free orbits on (0,1)~(1,0) and on (0,0), (1,1); fixed arcs on
        // (0,0) and (1,1).
        let types = orbit_types(&two);
        assert_eq!(types.len(), 5);
        let h = adjoin_orbits(&two, &types.iter().collect::<Vec<_>>());
        h.check().unwrap();
        assert_eq!(h.target().arc_count(), 2 + 2 + 2 + 1 + 1);
    }

    #[test]
    fn random_graphs_are_deterministic() {
        let c = ctx("symmetric-3");
        let a = random_graph(&c, &mut seeded_rng(3), 2, 2, 4);
        let b = random_graph(&c, &mut seeded_rng(3), 2, 2, 4);
        assert_eq!(a, b);
        a.check_laws().unwrap();
    }

    #[test]
    fn hypergraph_family_counts() {
        // 0 vertices: edges are copies of ∅. 1 vertex: pairs (#∅, #{0}).
        let fam = hypergraphs(1, 2);
        assert_eq!(fam.iter().filter(|h| h.vertex_count() == 0).count(), 3);
        assert_eq!(fam.iter().filter(|h| h.vertex_count() == 1).count(), 6);
        let two = hypergraphs(2, 1);
        // No edge; or one of ∅, {0}~{1}, {0,1}.
        assert_eq!(two.iter().filter(|h| h.vertex_count() == 2).count(), 4);
    }

    #[test]
    fn pigraph_family_counts() {
        let fam = pigraphs(2, 2, 1);
        // 2 vertices: no edge, {0,0}~{1,1}, {0,1}.
        assert_eq!(fam.iter().filter(|p| p.vertex_count() == 2).count(), 3);
    }

    #[test]
    fn isomorphism_agrees_with_canonical_forms() {
        let c = ctx("symmetric-2");
        let a = XMGraph::representable(&c, Sort::Arc);
        let swapped =
            XMGraph::new(&c, 2, &[vec![1, 0], vec![0, 1]], &[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(are_isomorphic(&a, &swapped));
        assert_eq!(canonical_form(&a), canonical_form(&swapped));
        assert_eq!(hom_count(&a, &swapped).unwrap(), 2);
    }
}
