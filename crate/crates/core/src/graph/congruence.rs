use petgraph::unionfind::UnionFind;

use super::{Element, GraphError, GraphMorphism, XMGraph};

/// An equivalence on each sort, closed under the action and incidence.
/// Classes are numbered by first occurrence in ascending id order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    vertex_class: Vec<usize>,
    arc_class: Vec<usize>,
    vertex_classes: usize,
    arc_classes: usize,
}

/// `G/~` together with the projection `G → G/~`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub congruence: Congruence,
    pub graph: XMGraph,
    pub projection: GraphMorphism,
}

fn canonical(labels: impl Iterator<Item = usize>, bound: usize) -> (Vec<usize>, usize) {
    let mut rename = vec![usize::MAX; bound];
    let mut next = 0;
    let classes = labels
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

impl Congruence {
    pub fn discrete(g: &XMGraph) -> Self {
        Self {
            vertex_class: g.vertices().collect(),
            arc_class: g.arcs().collect(),
            vertex_classes: g.vertex_count(),
            arc_classes: g.arc_count(),
        }
    }

    /// The partition induced by arbitrary labels. No closure is applied.
    pub(crate) fn from_labels(vlabels: &[usize], alabels: &[usize]) -> Self {
        let vb = vlabels.iter().max().map_or(0, |m| m + 1);
        let ab = alabels.iter().max().map_or(0, |m| m + 1);
        let (vertex_class, vertex_classes) = canonical(vlabels.iter().copied(), vb);
        let (arc_class, arc_classes) = canonical(alabels.iter().copied(), ab);
        Self {
            vertex_class,
            arc_class,
            vertex_classes,
            arc_classes,
        }
    }

    /// The smallest congruence identifying every given pair.
    pub fn generated(g: &XMGraph, pairs: &[(Element, Element)]) -> Result<Self, GraphError> {
        let ctx = g.context();
        let mut vuf = UnionFind::<usize>::new(g.vertex_count());
        let mut auf = UnionFind::<usize>::new(g.arc_count());
        let mut pending = Vec::new();
        for &(p, q) in pairs {
            for el in [p, q] {
                if !g.contains(el) {
                    return Err(GraphError::UnknownElement(el));
                }
            }
            match (p, q) {
                (Element::Vertex(u), Element::Vertex(v)) => {
                    vuf.union(u, v);
                }
                (Element::Arc(a), Element::Arc(b)) => {
                    if auf.union(a, b) {
                        pending.push((a, b));
                    }
                }
                _ => return Err(GraphError::SortMismatch(p, q)),
            }
        }
        // Merging a and b forces a.m ~ b.m and a.x ~ b.x; the union-find
        // records which merges still need their consequences propagated.
        while let Some((a, b)) = pending.pop() {
            for m in ctx.monoid().elements() {
                let (am, bm) = (g.act(a, m), g.act(b, m));
                if auf.union(am, bm) {
                    pending.push((am, bm));
                }
            }
            for x in 0..ctx.arity() {
                vuf.union(g.at(a, x), g.at(b, x));
            }
        }
        let vl = vuf.into_labeling();
        let al = auf.into_labeling();
        let (vertex_class, vertex_classes) = canonical(vl.into_iter(), g.vertex_count());
        let (arc_class, arc_classes) = canonical(al.into_iter(), g.arc_count());
        Ok(Self {
            vertex_class,
            arc_class,
            vertex_classes,
            arc_classes,
        })
    }

    pub fn vertex_class(&self, v: usize) -> usize {
        self.vertex_class[v]
    }

    pub fn arc_class(&self, a: usize) -> usize {
        self.arc_class[a]
    }

    pub fn vertex_classes(&self) -> &[usize] {
        &self.vertex_class
    }

    pub fn arc_classes(&self) -> &[usize] {
        &self.arc_class
    }

    pub fn class_counts(&self) -> (usize, usize) {
        (self.vertex_classes, self.arc_classes)
    }

    pub fn is_discrete(&self) -> bool {
        self.vertex_classes == self.vertex_class.len() && self.arc_classes == self.arc_class.len()
    }

    pub fn related(&self, p: Element, q: Element) -> bool {
        match (p, q) {
            (Element::Vertex(u), Element::Vertex(v)) => {
                self.vertex_class[u] == self.vertex_class[v]
            }
            (Element::Arc(a), Element::Arc(b)) => self.arc_class[a] == self.arc_class[b],
            _ => false,
        }
    }

    /// First pair (in ascending order) of distinct related elements among
    /// the given vertices and arcs.
    pub fn first_identified(
        &self,
        vertices: &[usize],
        arcs: &[usize],
    ) -> Option<(Element, Element)> {
        let mut seen = std::collections::HashMap::new();
        for &v in vertices {
            if let Some(&u) = seen.get(&self.vertex_class[v]) {
                return Some((Element::Vertex(u), Element::Vertex(v)));
            }
            seen.insert(self.vertex_class[v], v);
        }
        seen.clear();
        for &a in arcs {
            if let Some(&b) = seen.get(&self.arc_class[a]) {
                return Some((Element::Arc(b), Element::Arc(a)));
            }
            seen.insert(self.arc_class[a], a);
        }
        None
    }

    /// Builds `G/~`. The congruence must be closed on `g`.
    pub fn quotient(&self, g: &XMGraph) -> Quotient {
        let ctx = g.context();
        let (nx, nm) = (ctx.arity(), ctx.order());
        let mut inc = vec![0; self.arc_classes * nx];
        let mut act = vec![0; self.arc_classes * nm];
        let mut filled = vec![false; self.arc_classes];
        for a in g.arcs() {
            let c = self.arc_class[a];
            if std::mem::replace(&mut filled[c], true) {
                continue;
            }
            for x in 0..nx {
                inc[c * nx + x] = self.vertex_class[g.at(a, x)];
            }
            for m in 0..nm {
                act[c * nm + m] = self.arc_class[g.act(a, m)];
            }
        }
        let graph =
            XMGraph::from_flat_unchecked(ctx, self.vertex_classes, self.arc_classes, inc, act);
        let projection = GraphMorphism::new_unchecked(
            g.clone(),
            graph.clone(),
            self.vertex_class.clone(),
            self.arc_class.clone(),
        );
        Quotient {
            congruence: self.clone(),
            graph,
            projection,
        }
    }
}

/// Quotient of `g` by the congruence generated by `pairs`.
pub fn congruence_quotient(
    g: &XMGraph,
    pairs: &[(Element, Element)],
) -> Result<Quotient, GraphError> {
    Ok(Congruence::generated(g, pairs)?.quotient(g))
}
