//! Hypergraphs (`𝒫`-graphs) and `Π̲_X`-graphs, and the nerve/realization
//! bridge to `(X, Aut(X))`-graphs.
//!
//! Both are edge graphs `φ: E → F(V)`; they differ only in the functor `F`
//! used for incidences, captured by [`Incidence`]. Hypergraph incidences
//! are sorted duplicate-free vertex lists, `Π̲_X` incidences are sorted
//! tuples of length `|X|`.

mod bridge;
mod hyper;
mod pi;

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::exec;
use crate::graph::{GraphError, RawMaps};

pub use bridge::{Nerve, Realization};
pub use hyper::{
    coreflect_k, counit_hyper, edge_object, hyper_is_injective, hyper_is_projective,
    interpretation_action, interpretation_arc, interpretation_point, interpretation_vertex,
    nerve_hyper, nerve_hyper_map, realize_hyper, realize_hyper_map, unit_hyper,
    HyperInjectiveCertificate, ProjectivityMode,
};
pub use pi::{
    counit_pi, nerve_pi, nerve_pi_map, pi_deciders, pi_interpretation_arc, realize_pi, sym_power,
    sym_power_map, sym_power_unit, unit_pi, PiDeciders,
};

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", content = "detail", rename_all = "snake_case")]
pub enum HyperError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("edge {edge} names vertex {vertex}, but there are {vertices} vertices")]
    OutOfRange {
        edge: usize,
        vertex: usize,
        vertices: usize,
    },
    #[error("edge {edge} lists vertex {vertex} twice")]
    DuplicateIncidence { edge: usize, vertex: usize },
    #[error("edge {edge} has {len} incidences, expected {arity}")]
    ArityMismatch {
        edge: usize,
        len: usize,
        arity: usize,
    },
    #[error("the context monoid is not the full automorphism group of X")]
    MonoidNotAut,
    #[error("edge {edge} has {size} vertices, more than k = {k}")]
    NotKBounded { edge: usize, size: usize, k: usize },
    #[error("morphism breaks incidence at edge {edge}")]
    Incidence { edge: usize },
    #[error("morphism maps have the wrong shape")]
    Shape,
    #[error("objects have different incidence functors")]
    KindMismatch,
    #[error("morphisms are not composable")]
    NotComposable,
}

/// The incidence functor of an edge graph.
pub trait Incidence: Clone + fmt::Debug + PartialEq + Eq + Send + Sync {
    /// Validates one raw incidence and returns its canonical form.
    fn normalize(
        &self,
        edge: usize,
        raw: &[usize],
        vertices: usize,
    ) -> Result<Vec<usize>, HyperError>;

    /// `F(vmap)` applied to a canonical incidence.
    fn image(&self, incidence: &[usize], vmap: &[usize]) -> Vec<usize>;
}

/// The covariant power set: direct image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct PowerSet;

/// The symmetric power `Π̲_X`: multisets of size `arity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SymPower {
    pub arity: usize,
}

fn check_range(edge: usize, raw: &[usize], vertices: usize) -> Result<(), HyperError> {
    match raw.iter().find(|&&v| v >= vertices) {
        Some(&vertex) => Err(HyperError::OutOfRange {
            edge,
            vertex,
            vertices,
        }),
        None => Ok(()),
    }
}

impl Incidence for PowerSet {
    fn normalize(
        &self,
        edge: usize,
        raw: &[usize],
        vertices: usize,
    ) -> Result<Vec<usize>, HyperError> {
        check_range(edge, raw, vertices)?;
        let mut set = raw.to_vec();
        set.sort_unstable();
        if let Some(w) = set.windows(2).find(|w| w[0] == w[1]) {
            return Err(HyperError::DuplicateIncidence { edge, vertex: w[0] });
        }
        Ok(set)
    }

    fn image(&self, incidence: &[usize], vmap: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = incidence.iter().map(|&v| vmap[v]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

impl Incidence for SymPower {
    fn normalize(
        &self,
        edge: usize,
        raw: &[usize],
        vertices: usize,
    ) -> Result<Vec<usize>, HyperError> {
        check_range(edge, raw, vertices)?;
        if raw.len() != self.arity {
            return Err(HyperError::ArityMismatch {
                edge,
                len: raw.len(),
                arity: self.arity,
            });
        }
        let mut ms = raw.to_vec();
        ms.sort_unstable();
        Ok(ms)
    }

    fn image(&self, incidence: &[usize], vmap: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = incidence.iter().map(|&v| vmap[v]).collect();
        out.sort_unstable();
        out
    }
}

/// Vertices `0..vertices`, edges `0..edges.len()`, incidence `φ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeGraph<K> {
    kind: K,
    vertices: usize,
    edges: Vec<Vec<usize>>,
}

pub type Hypergraph = EdgeGraph<PowerSet>;
pub type PiGraph = EdgeGraph<SymPower>;

impl<K: Incidence> EdgeGraph<K> {
    pub fn with_kind(kind: K, vertices: usize, edges: &[Vec<usize>]) -> Result<Self, HyperError> {
        let edges = edges
            .iter()
            .enumerate()
            .map(|(e, raw)| kind.normalize(e, raw, vertices))
            .collect::<Result<_, _>>()?;
        Ok(Self {
            kind,
            vertices,
            edges,
        })
    }

    pub(crate) fn from_canonical(kind: K, vertices: usize, edges: Vec<Vec<usize>>) -> Self {
        Self {
            kind,
            vertices,
            edges,
        }
    }

    pub fn kind(&self) -> &K {
        &self.kind
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `(|V|, |E|)`.
    pub fn counts(&self) -> (usize, usize) {
        (self.vertices, self.edges.len())
    }

    /// `φ(e)` in canonical form.
    pub fn phi(&self, e: usize) -> &[usize] {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// Edges grouped by incidence.
    fn edges_by_incidence(&self) -> HashMap<&[usize], Vec<usize>> {
        let mut map: HashMap<&[usize], Vec<usize>> = HashMap::new();
        for (e, phi) in self.edges.iter().enumerate() {
            map.entry(phi.as_slice()).or_default().push(e);
        }
        map
    }

    /// The largest `|φ(e)|` (as a list), or 0 without edges.
    pub fn max_edge_size(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(0)
    }
}

impl Hypergraph {
    pub fn new(vertices: usize, edges: &[Vec<usize>]) -> Result<Self, HyperError> {
        Self::with_kind(PowerSet, vertices, edges)
    }
}

impl PiGraph {
    pub fn new(arity: usize, vertices: usize, edges: &[Vec<usize>]) -> Result<Self, HyperError> {
        Self::with_kind(SymPower { arity }, vertices, edges)
    }

    pub fn arity(&self) -> usize {
        self.kind.arity
    }
}

/// A morphism of edge graphs: `φ'(emap(e)) = F(vmap)(φ(e))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeMorphism<K> {
    source: EdgeGraph<K>,
    target: EdgeGraph<K>,
    vmap: Vec<usize>,
    emap: Vec<usize>,
}

pub type HypergraphMorphism = EdgeMorphism<PowerSet>;
pub type PiMorphism = EdgeMorphism<SymPower>;

impl<K: Incidence> EdgeMorphism<K> {
    pub fn new(
        source: EdgeGraph<K>,
        target: EdgeGraph<K>,
        vmap: Vec<usize>,
        emap: Vec<usize>,
    ) -> Result<Self, HyperError> {
        if source.kind != target.kind {
            return Err(HyperError::KindMismatch);
        }
        if vmap.len() != source.vertices
            || emap.len() != source.edges.len()
            || vmap.iter().any(|&v| v >= target.vertices)
            || emap.iter().any(|&e| e >= target.edges.len())
        {
            return Err(HyperError::Shape);
        }
        let f = Self::new_unchecked(source, target, vmap, emap);
        f.check()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(
        source: EdgeGraph<K>,
        target: EdgeGraph<K>,
        vmap: Vec<usize>,
        emap: Vec<usize>,
    ) -> Self {
        Self {
            source,
            target,
            vmap,
            emap,
        }
    }

    pub fn identity(g: &EdgeGraph<K>) -> Self {
        Self::new_unchecked(
            g.clone(),
            g.clone(),
            (0..g.vertices).collect(),
            (0..g.edges.len()).collect(),
        )
    }

    pub fn check(&self) -> Result<(), HyperError> {
        for (e, phi) in self.source.edges.iter().enumerate() {
            if self.source.kind.image(phi, &self.vmap) != self.target.edges[self.emap[e]] {
                return Err(HyperError::Incidence { edge: e });
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &EdgeGraph<K> {
        &self.source
    }

    pub fn target(&self) -> &EdgeGraph<K> {
        &self.target
    }

    pub fn vmap(&self) -> &[usize] {
        &self.vmap
    }

    pub fn emap(&self) -> &[usize] {
        &self.emap
    }

    pub fn then(&self, next: &EdgeMorphism<K>) -> Result<EdgeMorphism<K>, HyperError> {
        if self.target != next.source {
            return Err(HyperError::NotComposable);
        }
        Ok(Self::new_unchecked(
            self.source.clone(),
            next.target.clone(),
            self.vmap.iter().map(|&v| next.vmap[v]).collect(),
            self.emap.iter().map(|&e| next.emap[e]).collect(),
        ))
    }

    /// Injective on both vertices and edges.
    pub fn is_mono(&self) -> bool {
        let inj = |m: &[usize], n: usize| {
            let mut seen = vec![false; n];
            m.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
        };
        inj(&self.vmap, self.target.vertices) && inj(&self.emap, self.target.edges.len())
    }

    /// Surjective on both vertices and edges.
    pub fn is_epi(&self) -> bool {
        let surj = |m: &[usize], n: usize| {
            let mut hit = vec![false; n];
            m.iter().for_each(|&y| hit[y] = true);
            hit.into_iter().all(|h| h)
        };
        surj(&self.vmap, self.target.vertices) && surj(&self.emap, self.target.edges.len())
    }
}

/// Every morphism `g → h`, ordered lexicographically by `(vmap, emap)`.
pub fn edge_hom_enumerate<K: Incidence>(
    g: &EdgeGraph<K>,
    h: &EdgeGraph<K>,
) -> Result<Vec<EdgeMorphism<K>>, HyperError> {
    Ok(edge_hom_maps(g, h)?
        .into_iter()
        .map(|(v, e)| EdgeMorphism::new_unchecked(g.clone(), h.clone(), v, e))
        .collect())
}

/// Raw `(vmap, emap)` pairs of [`edge_hom_enumerate`].
pub fn edge_hom_maps<K: Incidence>(
    g: &EdgeGraph<K>,
    h: &EdgeGraph<K>,
) -> Result<Vec<RawMaps>, HyperError> {
    if g.kind != h.kind {
        return Err(HyperError::KindMismatch);
    }
    let index = h.edges_by_incidence();
    let n = g.vertices;
    let branch = |first: usize| -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut out = Vec::new();
        let mut vmap = vec![0; n];
        if n > 0 {
            vmap[0] = first;
        }
        vertex_maps(g, h, &index, &mut vmap, n.min(1), &mut out);
        out
    };
    if n == 0 {
        return Ok(branch(0));
    }
    let firsts: Vec<usize> = (0..h.vertices).collect();
    Ok(exec::flat_map(&firsts, |&w| branch(w)))
}

fn vertex_maps<K: Incidence>(
    g: &EdgeGraph<K>,
    h: &EdgeGraph<K>,
    index: &HashMap<&[usize], Vec<usize>>,
    vmap: &mut Vec<usize>,
    pos: usize,
    out: &mut Vec<(Vec<usize>, Vec<usize>)>,
) {
    if pos < vmap.len() {
        for w in 0..h.vertices {
            vmap[pos] = w;
            vertex_maps(g, h, index, vmap, pos + 1, out);
        }
        return;
    }
    let mut candidates = Vec::with_capacity(g.edges.len());
    for phi in &g.edges {
        match index.get(g.kind.image(phi, vmap).as_slice()) {
            Some(c) => candidates.push(c.as_slice()),
            None => return,
        }
    }
    let mut emap = vec![0; g.edges.len()];
    edge_choices(&candidates, &mut emap, 0, &mut |em| {
        out.push((vmap.clone(), em.to_vec()))
    });
}

fn edge_choices(
    candidates: &[&[usize]],
    emap: &mut [usize],
    pos: usize,
    emit: &mut impl FnMut(&[usize]),
) {
    if pos == candidates.len() {
        emit(emap);
        return;
    }
    for &e in candidates[pos] {
        emap[pos] = e;
        edge_choices(candidates, emap, pos + 1, emit);
    }
}

/// `|hom(g, h)|` without materializing the morphisms.
pub fn edge_hom_count<K: Incidence>(
    g: &EdgeGraph<K>,
    h: &EdgeGraph<K>,
) -> Result<usize, HyperError> {
    if g.kind != h.kind {
        return Err(HyperError::KindMismatch);
    }
    let index = h.edges_by_incidence();
    let n = g.vertices;
    if n > 0 && h.vertices == 0 {
        return Ok(0);
    }
    let mut vmap = vec![0; n];
    let mut total = 0usize;
    loop {
        total += g
            .edges
            .iter()
            .map(|phi| {
                index
                    .get(g.kind.image(phi, &vmap).as_slice())
                    .map_or(0, Vec::len)
            })
            .product::<usize>();
        // Odometer over vertex maps, last coordinate fastest.
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(total);
            }
            i -= 1;
            vmap[i] += 1;
            if vmap[i] < h.vertices {
                break;
            }
            vmap[i] = 0;
        }
    }
}
