use super::{Element, GraphError, GraphMorphism, XMGraph};

/// A subpresheaf, stored as membership masks over the ambient graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    vertices: Vec<bool>,
    arcs: Vec<bool>,
}

impl Subgraph {
    pub(crate) fn from_masks(vertices: Vec<bool>, arcs: Vec<bool>) -> Self {
        Self { vertices, arcs }
    }

    pub fn full(g: &XMGraph) -> Self {
        Self::from_masks(vec![true; g.vertex_count()], vec![true; g.arc_count()])
    }

    /// The smallest subgraph containing `seeds`.
    pub fn closure(g: &XMGraph, seeds: &[Element]) -> Result<Self, GraphError> {
        let mut vertices = vec![false; g.vertex_count()];
        let mut arcs = vec![false; g.arc_count()];
        let mut stack = Vec::new();
        for &s in seeds {
            if !g.contains(s) {
                return Err(GraphError::UnknownElement(s));
            }
            match s {
                Element::Vertex(v) => vertices[v] = true,
                Element::Arc(a) => {
                    if !std::mem::replace(&mut arcs[a], true) {
                        stack.push(a);
                    }
                }
            }
        }
        while let Some(a) = stack.pop() {
            for &v in g.incidence(a) {
                vertices[v] = true;
            }
            for &b in g.orbit_map(a) {
                if !std::mem::replace(&mut arcs[b], true) {
                    stack.push(b);
                }
            }
        }
        Ok(Self::from_masks(vertices, arcs))
    }

    /// The largest subgraph not containing `z`: every element whose
    /// generated subgraph misses `z`.
    pub fn avoiding(g: &XMGraph, z: Element) -> Result<Self, GraphError> {
        if !g.contains(z) {
            return Err(GraphError::UnknownElement(z));
        }
        // Elements that reach z are found by walking α.m and α.x backwards.
        let mut vertex_preds: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
        let mut arc_preds: Vec<Vec<usize>> = vec![Vec::new(); g.arc_count()];
        for a in g.arcs() {
            for &v in g.incidence(a) {
                vertex_preds[v].push(a);
            }
            for &b in g.orbit_map(a) {
                arc_preds[b].push(a);
            }
        }
        let mut vertices = vec![true; g.vertex_count()];
        let mut arcs = vec![true; g.arc_count()];
        let mut stack = Vec::new();
        match z {
            Element::Vertex(v) => {
                vertices[v] = false;
                for &a in &vertex_preds[v] {
                    if std::mem::replace(&mut arcs[a], false) {
                        stack.push(a);
                    }
                }
            }
            Element::Arc(a) => {
                arcs[a] = false;
                stack.push(a);
            }
        }
        while let Some(b) = stack.pop() {
            for &a in &arc_preds[b] {
                if std::mem::replace(&mut arcs[a], false) {
                    stack.push(a);
                }
            }
        }
        Ok(Self::from_masks(vertices, arcs))
    }

    pub fn contains(&self, el: Element) -> bool {
        match el {
            Element::Vertex(v) => self.vertices.get(v).copied().unwrap_or(false),
            Element::Arc(a) => self.arcs.get(a).copied().unwrap_or(false),
        }
    }

    pub fn vertex_ids(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.vertices[v])
            .collect()
    }

    pub fn arc_ids(&self) -> Vec<usize> {
        (0..self.arcs.len()).filter(|&a| self.arcs[a]).collect()
    }

    pub fn counts(&self) -> (usize, usize) {
        (
            self.vertices.iter().filter(|&&b| b).count(),
            self.arcs.iter().filter(|&&b| b).count(),
        )
    }

    pub fn is_full(&self) -> bool {
        self.vertices.iter().chain(&self.arcs).all(|&b| b)
    }

    /// Whether the masks are closed under incidence and action in `g`.
    pub fn is_closed(&self, g: &XMGraph) -> bool {
        g.arcs().filter(|&a| self.arcs[a]).all(|a| {
            g.incidence(a).iter().all(|&v| self.vertices[v])
                && g.orbit_map(a).iter().all(|&b| self.arcs[b])
        })
    }

    /// Materializes the subgraph (ids renumbered ascending) with its
    /// inclusion into `g`.
    pub fn to_graph(&self, g: &XMGraph) -> Result<(XMGraph, GraphMorphism), GraphError> {
        if self.vertices.len() != g.vertex_count() || self.arcs.len() != g.arc_count() {
            return Err(GraphError::Shape(
                "subgraph masks do not fit the graph".into(),
            ));
        }
        if !self.is_closed(g) {
            return Err(GraphError::Shape("subgraph is not closed".into()));
        }
        let vids = self.vertex_ids();
        let aids = self.arc_ids();
        let mut vpos = vec![usize::MAX; g.vertex_count()];
        let mut apos = vec![usize::MAX; g.arc_count()];
        vids.iter().enumerate().for_each(|(i, &v)| vpos[v] = i);
        aids.iter().enumerate().for_each(|(i, &a)| apos[a] = i);
        let inc = aids
            .iter()
            .flat_map(|&a| g.incidence(a).iter().map(|&v| vpos[v]))
            .collect();
        let act = aids
            .iter()
            .flat_map(|&a| g.orbit_map(a).iter().map(|&b| apos[b]))
            .collect();
        let sub = XMGraph::from_flat_unchecked(g.context(), vids.len(), aids.len(), inc, act);
        let inclusion = GraphMorphism::new_unchecked(sub.clone(), g.clone(), vids, aids);
        Ok((sub, inclusion))
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::Context;
    use crate::graph::Sort;

    #[test]
    fn closure_of_an_arc_is_everything_in_a() {
        let ctx = Arc::new(Context::symmetric(3));
        let a = XMGraph::representable(&ctx, Sort::Arc);
        let sub = Subgraph::closure(&a, &[Element::Arc(4)]).unwrap();
        assert!(sub.is_full());
    }

    #[test]
    fn avoiding_in_idempotent_representable() {
        // A̲ for {id, c0}: arcs e, c with e.c = c; vertices 0, 1 with e.x1 = 1.
        let ctx = Arc::new(Context::idempotent());
        let a = XMGraph::representable(&ctx, Sort::Arc);
        let sub = Subgraph::avoiding(&a, Element::Arc(0)).unwrap();
        assert_eq!(sub.vertex_ids(), vec![0, 1]);
        assert_eq!(sub.arc_ids(), vec![1]);
        let sub = Subgraph::avoiding(&a, Element::Vertex(1)).unwrap();
        assert_eq!(sub.vertex_ids(), vec![0]);
        assert_eq!(sub.arc_ids(), vec![1]);
        let (g, inc) = sub.to_graph(&a).unwrap();
        g.check_laws().unwrap();
        inc.check().unwrap();
        assert!(inc.kind().mono);
    }

    #[test]
    fn avoiding_matches_closure_definition() {
        for (_, ctx) in Context::standard() {
            let ctx = Arc::new(ctx);
            let a = XMGraph::representable(&ctx, Sort::Arc);
            for z in a.elements() {
                let sub = Subgraph::avoiding(&a, z).unwrap();
                assert!(sub.is_closed(&a));
                for w in a.elements() {
                    let reaches = Subgraph::closure(&a, &[w]).unwrap().contains(z);
                    assert_eq!(sub.contains(w), !reaches, "{z} {w}");
                }
            }
        }
    }

    #[test]
    fn unclosed_masks_rejected() {
        let ctx = Arc::new(Context::trivial(2));
        let t = XMGraph::terminal(&ctx);
        let bad = Subgraph::from_masks(vec![false], vec![true]);
        assert!(bad.to_graph(&t).is_err());
    }
}
