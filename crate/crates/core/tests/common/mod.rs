//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;
use std::sync::Arc;

use xmgraph::algebra::{build_monoid, validate_mset, FiniteMonoid};
use xmgraph::family::{are_isomorphic, canonical_form};
use xmgraph::graph::{hom_maps, Congruence, Element, Sort};
use xmgraph::hypersem::{edge_hom_maps, EdgeGraph, Incidence};
use xmgraph::{coproduct, Context, GraphMorphism, XMGraph};

pub fn standard(name: &str) -> Arc<Context> {
    Arc::new(
        Context::standard()
            .into_iter()
            .find(|(n, _)| *n == name)
            .unwrap_or_else(|| panic!("no context {name}"))
            .1,
    )
}

pub fn trivial_monoid() -> FiniteMonoid {
    build_monoid(&[vec![0]], 0).unwrap()
}

/// `{e, c}` with `c·c = c`.
pub fn idempotent_monoid() -> FiniteMonoid {
    build_monoid(&[vec![0, 1], vec![1, 1]], 0).unwrap()
}

pub fn s2_monoid() -> FiniteMonoid {
    build_monoid(&[vec![0, 1], vec![1, 0]], 0).unwrap()
}

/// `S₃` as permutations of `{0,1,2}`, `a*b` = apply `a` then `b`.
pub fn s3_monoid() -> FiniteMonoid {
    let perms: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [1, 0, 2],
        [0, 2, 1],
        [2, 1, 0],
        [1, 2, 0],
        [2, 0, 1],
    ];
    let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
    let table: Vec<Vec<usize>> = perms
        .iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| index([b[a[0]], b[a[1]], b[a[2]]]))
                .collect()
        })
        .collect();
    build_monoid(&table, 0).unwrap()
}

/// Every right action of `monoid` on `n` points: generator images are
/// chosen freely, the rest follows from `x.(p*g) = (x.p).g`, and the
/// result is validated.
pub fn all_actions(monoid: &FiniteMonoid, n: usize) -> Vec<Vec<Vec<usize>>> {
    let gens = monoid.generating_set();
    let mut order = vec![monoid.identity()];
    let mut steps = Vec::new();
    let mut seen = vec![false; monoid.size()];
    seen[monoid.identity()] = true;
    let mut i = 0;
    while i < order.len() {
        for &g in &gens {
            let q = monoid.mul(order[i], g);
            if !seen[q] {
                seen[q] = true;
                order.push(q);
                steps.push((q, order[i], g));
            }
        }
        i += 1;
    }
    let slots = n * gens.len();
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
        return out;
    }
    for mut code in 0..(n as u64).pow(slots as u32) {
        let mut rows = vec![vec![usize::MAX; monoid.size()]; n];
        for (x, row) in rows.iter_mut().enumerate() {
            row[monoid.identity()] = x;
            for &g in &gens {
                row[g] = (code % n as u64) as usize;
                code /= n as u64;
            }
        }
        for &(q, p, g) in &steps {
            for x in 0..n {
                rows[x][q] = rows[rows[x][p]][g];
            }
        }
        if validate_mset(monoid, &rows).is_ok() {
            out.push(rows);
        }
    }
    out
}

/// Every context `(X, M)` with `|X| ≤ max_x` for the given monoid.
pub fn contexts_over(monoid: &FiniteMonoid, max_x: usize) -> Vec<Arc<Context>> {
    let mut out = Vec::new();
    for n in 0..=max_x {
        for rows in all_actions(monoid, n) {
            let carrier = validate_mset(monoid, &rows).unwrap();
            out.push(Arc::new(Context::new(monoid.clone(), carrier).unwrap()));
        }
    }
    out
}

/// All morphisms `a → b` as `GraphMorphism`s.
pub fn homs(a: &XMGraph, b: &XMGraph) -> Vec<GraphMorphism> {
    xmgraph::hom_enumerate(a, b).unwrap()
}

/// Every `f: A → Q` extends along `i: A → B`.
pub fn extends_along(q: &XMGraph, i: &GraphMorphism) -> bool {
    let reachable: HashSet<(Vec<usize>, Vec<usize>)> = hom_maps(i.target(), q)
        .unwrap()
        .into_iter()
        .map(|(v, a)| {
            (
                i.vmap().iter().map(|&x| v[x]).collect(),
                i.amap().iter().map(|&x| a[x]).collect(),
            )
        })
        .collect();
    hom_maps(i.source(), q)
        .unwrap()
        .into_iter()
        .all(|f| reachable.contains(&f))
}

/// Every `f: P → C` lifts along `e: B → C`.
pub fn lifts_along(p: &XMGraph, e: &GraphMorphism) -> bool {
    let reachable: HashSet<(Vec<usize>, Vec<usize>)> = hom_maps(p, e.source())
        .unwrap()
        .into_iter()
        .map(|(v, a)| {
            (
                v.iter().map(|&x| e.vmap()[x]).collect(),
                a.iter().map(|&x| e.amap()[x]).collect(),
            )
        })
        .collect();
    hom_maps(p, e.target())
        .unwrap()
        .into_iter()
        .all(|f| reachable.contains(&f))
}

/// Monos and epis between members of `probes`.
pub fn probe_maps(probes: &[XMGraph]) -> (Vec<GraphMorphism>, Vec<GraphMorphism>) {
    let mut monos = Vec::new();
    let mut epis = Vec::new();
    for a in probes {
        for b in probes {
            for f in homs(a, b) {
                let k = f.kind();
                if k.mono {
                    monos.push(f.clone());
                }
                if k.epi {
                    epis.push(f);
                }
            }
        }
    }
    (monos, epis)
}

/// Quotients of `A̲` (optionally beside one extra vertex), one per
/// isomorphism class: every graph generated by one arc.
pub fn one_generator_graphs(ctx: &Arc<Context>) -> Vec<XMGraph> {
    let a = XMGraph::representable(ctx, Sort::Arc);
    let nx = ctx.arity();
    let nm = ctx.order();
    let mut out: Vec<XMGraph> = Vec::new();
    let mut push = |g: XMGraph| {
        if !out.iter().any(|h| are_isomorphic(h, &g)) {
            out.push(g);
        }
    };
    for vmask in 0..1usize << (nx * nx) {
        for amask in 0..1usize << nm {
            let mut pairs = Vec::new();
            for x in 0..nx {
                for y in 0..nx {
                    if vmask >> (x * nx + y) & 1 == 1 {
                        pairs.push((Element::Vertex(x), Element::Vertex(y)));
                    }
                }
            }
            for m in 0..nm {
                if amask >> m & 1 == 1 {
                    pairs.push((Element::Arc(ctx.monoid().identity()), Element::Arc(m)));
                }
            }
            let q = Congruence::generated(&a, &pairs)
                .unwrap()
                .quotient(&a)
                .graph;
            push(q.clone());
            let v = XMGraph::representable(ctx, Sort::Vertex);
            push(coproduct(ctx, &[q, v]).unwrap().0);
        }
    }
    out
}

pub fn dedup_graphs(graphs: Vec<XMGraph>) -> Vec<XMGraph> {
    let mut seen = HashSet::new();
    graphs
        .into_iter()
        .filter(|g| g.arc_count() > 8 || seen.insert(canonical_form(g)))
        .collect()
}

/// Arcs reachable from each arc under the action, by breadth-first search.
pub fn reach(g: &XMGraph) -> Vec<Vec<bool>> {
    g.arcs()
        .map(|a| {
            let mut seen = vec![false; g.arc_count()];
            let mut stack = vec![a];
            seen[a] = true;
            while let Some(b) = stack.pop() {
                for &c in g.orbit_map(b) {
                    if !std::mem::replace(&mut seen[c], true) {
                        stack.push(c);
                    }
                }
            }
            seen
        })
        .collect()
}

/// Number of mutual-reachability classes not reachable from outside.
pub fn source_component_count(g: &XMGraph) -> usize {
    let r = reach(g);
    let n = g.arc_count();
    let mut rep: Vec<usize> = (0..n).collect();
    for a in 0..n {
        for b in 0..a {
            if r[a][b] && r[b][a] {
                rep[a] = rep[b];
                break;
            }
        }
    }
    (0..n)
        .filter(|&a| rep[a] == a)
        .filter(|&a| (0..n).all(|b| !r[b][a] || r[a][b]))
        .count()
}

/// Edge-graph versions of the extension and lifting oracles.
pub fn edge_extends_along<K: Incidence>(
    q: &EdgeGraph<K>,
    source: &EdgeGraph<K>,
    target: &EdgeGraph<K>,
    vmap: &[usize],
    emap: &[usize],
) -> bool {
    let reachable: HashSet<(Vec<usize>, Vec<usize>)> = edge_hom_maps(target, q)
        .unwrap()
        .into_iter()
        .map(|(v, e)| {
            (
                vmap.iter().map(|&x| v[x]).collect(),
                emap.iter().map(|&x| e[x]).collect(),
            )
        })
        .collect();
    edge_hom_maps(source, q)
        .unwrap()
        .into_iter()
        .all(|f| reachable.contains(&f))
}

pub fn edge_lifts_along<K: Incidence>(
    p: &EdgeGraph<K>,
    source: &EdgeGraph<K>,
    target: &EdgeGraph<K>,
    vmap: &[usize],
    emap: &[usize],
) -> bool {
    let reachable: HashSet<(Vec<usize>, Vec<usize>)> = edge_hom_maps(p, source)
        .unwrap()
        .into_iter()
        .map(|(v, e)| {
            (
                v.iter().map(|&x| vmap[x]).collect(),
                e.iter().map(|&x| emap[x]).collect(),
            )
        })
        .collect();
    edge_hom_maps(p, target)
        .unwrap()
        .into_iter()
        .all(|f| reachable.contains(&f))
}

/// A map between two edge graphs of a probe family.
pub struct EdgeProbe {
    pub source: usize,
    pub target: usize,
    pub vmap: Vec<usize>,
    pub emap: Vec<usize>,
}

pub fn edge_probe_maps<K: Incidence>(probes: &[EdgeGraph<K>]) -> (Vec<EdgeProbe>, Vec<EdgeProbe>) {
    let mut monos = Vec::new();
    let mut epis = Vec::new();
    for (i, a) in probes.iter().enumerate() {
        for (j, b) in probes.iter().enumerate() {
            for f in xmgraph::hypersem::edge_hom_enumerate(a, b).unwrap() {
                let probe = || EdgeProbe {
                    source: i,
                    target: j,
                    vmap: f.vmap().to_vec(),
                    emap: f.emap().to_vec(),
                };
                if f.is_mono() {
                    monos.push(probe());
                }
                if f.is_epi() {
                    epis.push(probe());
                }
            }
        }
    }
    (monos, epis)
}

/// Maps `X → V` as little-endian digit vectors.
pub fn all_maps(domain: usize, codomain: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..domain {
        out = out
            .into_iter()
            .flat_map(|f| {
                (0..codomain).map(move |v| {
                    let mut g = f.clone();
                    g.push(v);
                    g
                })
            })
            .collect();
    }
    out
}

/// Maps `X → V` that are the incidence of no arc.
pub fn unrealized_maps(g: &XMGraph, vertices: usize) -> usize {
    all_maps(g.context().arity(), vertices)
        .into_iter()
        .filter(|f| g.arcs().all(|a| g.incidence(a) != f.as_slice()))
        .count()
}

/// The standard contexts, indexed for property tests.
pub fn standard_contexts() -> Vec<(&'static str, Arc<Context>)> {
    Context::standard()
        .into_iter()
        .map(|(n, c)| (n, Arc::new(c)))
        .collect()
}

/// A seeded random graph over the `index`-th standard context.
pub fn random_instance(index: usize, seed: u64, copies: usize, merges: usize) -> XMGraph {
    let ctxs = standard_contexts();
    let (_, ctx) = &ctxs[index % ctxs.len()];
    let mut rng = xmgraph::family::seeded_rng(seed);
    xmgraph::family::random_graph(ctx, &mut rng, copies, copies, merges)
}

/// `|Inj(G)(A)| = |G(V)|^|X| · |G(A)|^|M|`, if it fits in a word.
pub fn inj_size(g: &XMGraph) -> Option<usize> {
    let ctx = g.context();
    g.vertex_count()
        .checked_pow(ctx.arity() as u32)?
        .checked_mul(g.arc_count().checked_pow(ctx.order() as u32)?)
}
