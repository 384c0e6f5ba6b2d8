use super::{GraphError, GraphMorphism, XMGraph};
use crate::exec;

const UNSET: usize = usize::MAX;

struct Search<'a> {
    g: &'a XMGraph,
    h: &'a XMGraph,
    gens: Vec<usize>,
    free: Vec<usize>,
}

struct State {
    vmap: Vec<usize>,
    amap: Vec<usize>,
    trail_v: Vec<usize>,
    trail_a: Vec<usize>,
}

impl State {
    fn undo(&mut self, tv: usize, ta: usize) {
        for v in self.trail_v.drain(tv..) {
            self.vmap[v] = UNSET;
        }
        for a in self.trail_a.drain(ta..) {
            self.amap[a] = UNSET;
        }
    }
}

impl Search<'_> {
    fn new<'a>(g: &'a XMGraph, h: &'a XMGraph) -> Search<'a> {
        Search {
            g,
            h,
            gens: g.generating_arcs(),
            free: g.isolated_vertices(),
        }
    }

    fn state(&self) -> State {
        State {
            vmap: vec![UNSET; self.g.vertex_count()],
            amap: vec![UNSET; self.g.arc_count()],
            trail_v: Vec::new(),
            trail_a: Vec::new(),
        }
    }

    /// Sends generator `gamma` to `beta`, forcing `gamma.m ↦ beta.m` and
    /// `gamma.x ↦ beta.x`. Since every arc of `g` is some `gamma.m`,
    /// consistency of these forced values is exactly naturality.
    fn assign(&self, st: &mut State, gamma: usize, beta: usize) -> bool {
        let ctx = self.g.context();
        for m in ctx.monoid().elements() {
            let a = self.g.act(gamma, m);
            let b = self.h.act(beta, m);
            match st.amap[a] {
                UNSET => {
                    st.amap[a] = b;
                    st.trail_a.push(a);
                }
                cur if cur != b => return false,
                _ => {}
            }
        }
        for x in 0..ctx.arity() {
            let v = self.g.at(gamma, x);
            let w = self.h.at(beta, x);
            match st.vmap[v] {
                UNSET => {
                    st.vmap[v] = w;
                    st.trail_v.push(v);
                }
                cur if cur != w => return false,
                _ => {}
            }
        }
        true
    }

    fn run<F: FnMut(&State) -> bool>(&self, st: &mut State, depth: usize, emit: &mut F) -> bool {
        if depth < self.gens.len() {
            let gamma = self.gens[depth];
            for beta in self.h.arcs() {
                let (tv, ta) = (st.trail_v.len(), st.trail_a.len());
                if self.assign(st, gamma, beta) && !self.run(st, depth + 1, emit) {
                    st.undo(tv, ta);
                    return false;
                }
                st.undo(tv, ta);
            }
            return true;
        }
        let k = depth - self.gens.len();
        if k < self.free.len() {
            let v = self.free[k];
            for w in self.h.vertices() {
                st.vmap[v] = w;
                if !self.run(st, depth + 1, emit) {
                    st.vmap[v] = UNSET;
                    return false;
                }
            }
            st.vmap[v] = UNSET;
            return true;
        }
        emit(st)
    }

    /// Raw maps of all morphisms. The top level is split over the image of
    /// the first generator (or first free vertex) and runs in parallel.
    fn collect(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let branch = |first: usize| {
            let mut st = self.state();
            let mut out = Vec::new();
            let ok = if !self.gens.is_empty() {
                self.assign(&mut st, self.gens[0], first)
            } else if !self.free.is_empty() {
                st.vmap[self.free[0]] = first;
                true
            } else {
                true
            };
            if ok {
                self.run(&mut st, 1, &mut |s: &State| {
                    out.push((s.vmap.clone(), s.amap.clone()));
                    true
                });
            }
            out
        };
        let mut maps = if !self.gens.is_empty() {
            exec::flat_map(&(0..self.h.arc_count()).collect::<Vec<_>>(), |&b| branch(b))
        } else if !self.free.is_empty() {
            exec::flat_map(&(0..self.h.vertex_count()).collect::<Vec<_>>(), |&w| {
                branch(w)
            })
        } else {
            vec![(Vec::new(), Vec::new())]
        };
        maps.sort_unstable();
        maps
    }
}

fn check_ctx(g: &XMGraph, h: &XMGraph) -> Result<(), GraphError> {
    if g.same_context(h) {
        Ok(())
    } else {
        Err(GraphError::ContextMismatch)
    }
}

/// A vertex map and an arc (or edge) map.
pub type RawMaps = (Vec<usize>, Vec<usize>);

/// Vertex and arc maps of every morphism `g → h`, lexicographically sorted.
pub fn hom_maps(g: &XMGraph, h: &XMGraph) -> Result<Vec<RawMaps>, GraphError> {
    check_ctx(g, h)?;
    Ok(Search::new(g, h).collect())
}

/// Every morphism `g → h`, in lexicographic order of `(vmap, amap)`.
pub fn hom_enumerate(g: &XMGraph, h: &XMGraph) -> Result<Vec<GraphMorphism>, GraphError> {
    Ok(hom_maps(g, h)?
        .into_iter()
        .map(|(v, a)| GraphMorphism::new_unchecked(g.clone(), h.clone(), v, a))
        .collect())
}

/// `|hom(g, h)|` without materializing the morphisms.
pub fn hom_count(g: &XMGraph, h: &XMGraph) -> Result<usize, GraphError> {
    check_ctx(g, h)?;
    let search = Search::new(g, h);
    let mut st = search.state();
    let mut n = 0usize;
    search.run(&mut st, 0, &mut |_| {
        n += 1;
        true
    });
    Ok(n)
}

/// Whether some morphism `g → h` satisfies `pred`; stops at the first one.
pub(crate) fn hom_any<F>(g: &XMGraph, h: &XMGraph, mut pred: F) -> Result<bool, GraphError>
where
    F: FnMut(&[usize], &[usize]) -> bool,
{
    check_ctx(g, h)?;
    let search = Search::new(g, h);
    let mut st = search.state();
    let mut found = false;
    search.run(&mut st, 0, &mut |s: &State| {
        found = pred(&s.vmap, &s.amap);
        !found
    });
    Ok(found)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::Context;
    use crate::graph::{coproduct, Sort};

    fn brute_force(g: &XMGraph, h: &XMGraph) -> Vec<(Vec<usize>, Vec<usize>)> {
        let nv = g.vertex_count() as u32;
        let na = g.arc_count() as u32;
        let hv = h.vertex_count();
        let ha = h.arc_count();
        let mut out = Vec::new();
        for vi in 0..hv.pow(nv) {
            let vmap: Vec<usize> = (0..nv).map(|i| vi / hv.pow(i) % hv).collect();
            for ai in 0..ha.pow(na) {
                let amap: Vec<usize> = (0..na).map(|i| ai / ha.pow(i) % ha).collect();
                let f = GraphMorphism::new_unchecked(g.clone(), h.clone(), vmap.clone(), amap);
                if f.check().is_ok() {
                    out.push(f.into_maps());
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn yoneda_counts() {
        for (_, ctx) in Context::standard() {
            let ctx = Arc::new(ctx);
            let a = XMGraph::representable(&ctx, Sort::Arc);
            let v = XMGraph::representable(&ctx, Sort::Vertex);
            assert_eq!(hom_count(&a, &a).unwrap(), ctx.order());
            assert_eq!(hom_count(&v, &a).unwrap(), ctx.arity());
            assert_eq!(hom_count(&a, &v).unwrap(), 0);
        }
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        for (_, ctx) in Context::standard() {
            let ctx = Arc::new(ctx);
            if ctx.order() > 2 || ctx.arity() > 2 {
                continue;
            }
            let a = XMGraph::representable(&ctx, Sort::Arc);
            let v = XMGraph::representable(&ctx, Sort::Vertex);
            let t = XMGraph::terminal(&ctx);
            let (av, _) = coproduct(&ctx, &[a.clone(), v.clone()]).unwrap();
            let graphs = [XMGraph::initial(&ctx), v, a, t, av];
            for g in &graphs {
                for h in &graphs {
                    let fast = hom_maps(g, h).unwrap();
                    assert_eq!(fast, brute_force(g, h));
                    assert_eq!(fast.len(), hom_count(g, h).unwrap());
                }
            }
        }
    }

    #[test]
    fn initial_source_has_one_morphism() {
        let ctx = Arc::new(Context::symmetric(2));
        let t = XMGraph::terminal(&ctx);
        let maps = hom_enumerate(&XMGraph::initial(&ctx), &t).unwrap();
        assert_eq!(maps.len(), 1);
        assert!(hom_enumerate(&t, &XMGraph::initial(&ctx))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn hom_any_stops_early() {
        let ctx = Arc::new(Context::trivial(1));
        let g = XMGraph::discrete(&ctx, 3);
        let mut seen = 0;
        assert!(hom_any(&g, &g, |v, _| {
            seen += 1;
            v == [2, 1, 0]
        })
        .unwrap());
        assert!(seen < 27);
    }
}
