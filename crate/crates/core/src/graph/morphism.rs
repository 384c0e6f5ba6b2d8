use super::{Congruence, GraphError, Subgraph, XMGraph};

/// Componentwise classification of a morphism of presheaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct MorphismKind {
    pub mono: bool,
    pub epi: bool,
    pub iso: bool,
}

/// A morphism of `(X, M)`-graphs: a vertex map and an arc map with
/// `f_V(α.x) = f_A(α).x` and `f_A(α.m) = f_A(α).m`.
#[derive(Clone, PartialEq, Eq)]
pub struct GraphMorphism {
    source: XMGraph,
    target: XMGraph,
    vmap: Vec<usize>,
    amap: Vec<usize>,
}

impl std::fmt::Debug for GraphMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GraphMorphism")
            .field("source", &self.source.counts())
            .field("target", &self.target.counts())
            .field("vmap", &self.vmap)
            .field("amap", &self.amap)
            .finish()
    }
}

impl GraphMorphism {
    pub fn new(
        source: XMGraph,
        target: XMGraph,
        vmap: Vec<usize>,
        amap: Vec<usize>,
    ) -> Result<Self, GraphError> {
        if !source.same_context(&target) {
            return Err(GraphError::ContextMismatch);
        }
        if vmap.len() != source.vertex_count() || amap.len() != source.arc_count() {
            return Err(GraphError::Shape(
                "morphism maps have the wrong length".into(),
            ));
        }
        if vmap.iter().any(|&v| v >= target.vertex_count())
            || amap.iter().any(|&a| a >= target.arc_count())
        {
            return Err(GraphError::Shape("morphism maps leave the target".into()));
        }
        let f = Self::new_unchecked(source, target, vmap, amap);
        f.check()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(
        source: XMGraph,
        target: XMGraph,
        vmap: Vec<usize>,
        amap: Vec<usize>,
    ) -> Self {
        Self {
            source,
            target,
            vmap,
            amap,
        }
    }

    pub fn identity(g: &XMGraph) -> Self {
        Self::new_unchecked(
            g.clone(),
            g.clone(),
            g.vertices().collect(),
            g.arcs().collect(),
        )
    }

    /// Verifies both naturality conditions by enumeration.
    pub fn check(&self) -> Result<(), GraphError> {
        let ctx = self.source.context();
        for a in self.source.arcs() {
            let fa = self.amap[a];
            for x in 0..ctx.arity() {
                if self.vmap[self.source.at(a, x)] != self.target.at(fa, x) {
                    return Err(GraphError::VertexIncidence { arc: a, x });
                }
            }
            for m in ctx.monoid().elements() {
                if self.amap[self.source.act(a, m)] != self.target.act(fa, m) {
                    return Err(GraphError::ArcEquivariance { arc: a, m });
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &XMGraph {
        &self.source
    }

    pub fn target(&self) -> &XMGraph {
        &self.target
    }

    pub fn vmap(&self) -> &[usize] {
        &self.vmap
    }

    pub fn amap(&self) -> &[usize] {
        &self.amap
    }

    pub fn into_maps(self) -> (Vec<usize>, Vec<usize>) {
        (self.vmap, self.amap)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GraphMorphism) -> Result<GraphMorphism, GraphError> {
        if self.target != next.source {
            return Err(GraphError::NotComposable);
        }
        Ok(Self::new_unchecked(
            self.source.clone(),
            next.target.clone(),
            self.vmap.iter().map(|&v| next.vmap[v]).collect(),
            self.amap.iter().map(|&a| next.amap[a]).collect(),
        ))
    }

    pub fn kind(&self) -> MorphismKind {
        let injective = |map: &[usize], n: usize| {
            let mut hit = vec![false; n];
            map.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
        };
        let surjective = |map: &[usize], n: usize| {
            let mut hit = vec![false; n];
            map.iter().for_each(|&y| hit[y] = true);
            hit.iter().all(|&h| h)
        };
        let nv = self.target.vertex_count();
        let na = self.target.arc_count();
        let mono = injective(&self.vmap, nv) && injective(&self.amap, na);
        let epi = surjective(&self.vmap, nv) && surjective(&self.amap, na);
        MorphismKind {
            mono,
            epi,
            iso: mono && epi,
        }
    }

    /// The image, as a subgraph of the target.
    pub fn image(&self) -> Subgraph {
        let mut vertices = vec![false; self.target.vertex_count()];
        let mut arcs = vec![false; self.target.arc_count()];
        self.vmap.iter().for_each(|&v| vertices[v] = true);
        self.amap.iter().for_each(|&a| arcs[a] = true);
        Subgraph::from_masks(vertices, arcs)
    }

    /// The congruence on the source identifying elements with equal images.
    pub fn kernel(&self) -> Congruence {
        Congruence::from_labels(&self.vmap, &self.amap)
    }

    /// Restriction of `self` along the inclusion of `sub ⊆ source`.
    pub fn restrict(&self, sub: &Subgraph) -> Result<GraphMorphism, GraphError> {
        let (_, inclusion) = sub.to_graph(&self.source)?;
        inclusion.then(self)
    }

    /// Factors `self` as the quotient by its kernel followed by a mono.
    pub fn image_factorization(&self) -> (GraphMorphism, GraphMorphism) {
        let kernel = self.kernel();
        let quotient = kernel.quotient(&self.source);
        let mut vmap = vec![0; quotient.graph.vertex_count()];
        let mut amap = vec![0; quotient.graph.arc_count()];
        for v in self.source.vertices() {
            vmap[kernel.vertex_class(v)] = self.vmap[v];
        }
        for a in self.source.arcs() {
            amap[kernel.arc_class(a)] = self.amap[a];
        }
        let mono = Self::new_unchecked(quotient.graph.clone(), self.target.clone(), vmap, amap);
        (quotient.projection, mono)
    }
}
