use std::sync::Arc;

use serde::Serialize;

use super::bridge::{self, Nerve, Realization};
use super::{HyperError, PiGraph, PiMorphism, SymPower};
use crate::algebra::Context;
use crate::graph::{GraphMorphism, XMGraph};
use crate::hullcover;

/// All multisets of size `arity` over `0..n`, as sorted tuples in
/// lexicographic order.
pub fn sym_power(n: usize, arity: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, start: usize, cur: &mut Vec<usize>, left: usize, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(n, v, cur, left - 1, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 0, &mut Vec::with_capacity(arity), arity, &mut out);
    out
}

/// `Π̲_X(j)` on one multiset: relabel, then re-sort.
pub fn sym_power_map(multiset: &[usize], j: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = multiset.iter().map(|&y| j[y]).collect();
    out.sort_unstable();
    out
}

/// `η_Y(y)`: the constant multiset.
pub fn sym_power_unit(y: usize, arity: usize) -> Vec<usize> {
    vec![y; arity]
}

/// `I(A)` in `Π̲_X`-graphs: one edge on `X` with the unordered tuple.
pub fn pi_interpretation_arc(arity: usize) -> PiGraph {
    PiGraph::from_canonical(SymPower { arity }, arity, vec![(0..arity).collect()])
}

fn check_arity(ctx: &Context, p: &PiGraph) -> Result<(), HyperError> {
    if p.arity() == ctx.arity() {
        Ok(())
    } else {
        Err(HyperError::KindMismatch)
    }
}

/// `N(P)`: arcs `(e, g)` with `Π̲_X(g) = φ(e)`.
pub fn nerve_pi(ctx: &Arc<Context>, p: &PiGraph) -> Result<Nerve, HyperError> {
    check_arity(ctx, p)?;
    bridge::nerve(ctx, p)
}

/// `R(G)`: edges are arc orbits, `φ([α])` the multiset of `∂α`.
pub fn realize_pi(g: &XMGraph) -> Result<Realization<SymPower>, HyperError> {
    bridge::realize(
        SymPower {
            arity: g.context().arity(),
        },
        g,
    )
}

pub fn nerve_pi_map(ctx: &Arc<Context>, f: &PiMorphism) -> Result<GraphMorphism, HyperError> {
    check_arity(ctx, f.source())?;
    bridge::nerve_map(ctx, f)
}

/// `η_G: G → NR(G)`, `v ↦ v`, `α ↦ ([α], ∂α)`.
pub fn unit_pi(g: &XMGraph) -> Result<GraphMorphism, HyperError> {
    bridge::unit(
        SymPower {
            arity: g.context().arity(),
        },
        g,
    )
}

/// `ε_P: RN(P) → P`.
pub fn counit_pi(ctx: &Arc<Context>, p: &PiGraph) -> Result<PiMorphism, HyperError> {
    check_arity(ctx, p)?;
    bridge::counit(ctx, p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PiDeciders {
    pub injective: bool,
    pub projective: bool,
}

/// Injectivity and projectivity of `Q`, read off the nerve.
pub fn pi_deciders(ctx: &Arc<Context>, q: &PiGraph) -> Result<PiDeciders, HyperError> {
    let n = nerve_pi(ctx, q)?;
    Ok(PiDeciders {
        injective: hullcover::is_injective(&n.graph)?.holds(),
        projective: hullcover::is_projective(&n.graph),
    })
}
