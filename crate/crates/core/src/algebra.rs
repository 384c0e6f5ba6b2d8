//! Finite monoids, right M-sets and the contexts `(X, M)` that every graph
//! in this crate is built over.
//!
//! Elements are dense indices `0..size`. All tables are total and validated
//! on construction, so downstream code indexes them without further checks.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Errors raised while building monoids, M-sets and contexts.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", content = "detail", rename_all = "snake_case")]
pub enum AlgebraError {
    #[error("monoid must have at least one element")]
    EmptyMonoid,
    #[error("multiplication table is not square: row {row} has {len} entries, expected {size}")]
    NotSquare { row: usize, len: usize, size: usize },
    #[error("table entry {value} is out of range for a set of size {size}")]
    OutOfRange { value: usize, size: usize },
    #[error("associativity fails: ({a}*{b})*{c} != {a}*({b}*{c})")]
    AssociativityViolation { a: usize, b: usize, c: usize },
    #[error("identity law fails at element {a}")]
    IdentityViolation { a: usize },
    #[error("generator {index} is not a total map on {n} points")]
    EmptyGeneratorMap { index: usize, n: usize },
    #[error("action table row {row} has {len} entries, expected {expected}")]
    ActionShape {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("unit law fails: {x}.e != {x}")]
    UnitLawViolation { x: usize },
    #[error("action law fails: ({x}.{m}).{m2} != {x}.({m}*{m2})")]
    ActionLawViolation { x: usize, m: usize, m2: usize },
    #[error("carrier is acted on by a monoid of size {carrier}, context monoid has size {monoid}")]
    MonoidSizeMismatch { carrier: usize, monoid: usize },
}

/// A finite monoid given by its full multiplication table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteMonoid {
    size: usize,
    identity: usize,
    table: Vec<usize>,
}

impl fmt::Debug for FiniteMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteMonoid")
            .field("size", &self.size)
            .field("identity", &self.identity)
            .finish()
    }
}

impl FiniteMonoid {
    /// The one-element monoid.
    pub fn trivial() -> Self {
        Self {
            size: 1,
            identity: 0,
            table: vec![0],
        }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.size)
            .map(<[usize]>::to_vec)
            .collect()
    }

    /// Two-sided inverse of `a`, if it has one.
    pub fn inverse(&self, a: usize) -> Option<usize> {
        self.elements()
            .find(|&b| self.mul(a, b) == self.identity && self.mul(b, a) == self.identity)
    }

    pub fn is_group(&self) -> bool {
        self.elements().all(|a| self.inverse(a).is_some())
    }

    /// Submonoid generated by `gens`, as a sorted list of elements.
    pub fn generated_by(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.size];
        let mut queue = VecDeque::from([self.identity]);
        seen[self.identity] = true;
        while let Some(a) = queue.pop_front() {
            for &g in gens {
                let b = self.mul(a, g);
                if !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        self.elements().filter(|&a| seen[a]).collect()
    }

    /// A generating set chosen greedily by ascending element id.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut covered = vec![false; self.size];
        covered[self.identity] = true;
        for a in self.elements() {
            if !covered[a] {
                gens.push(a);
                for b in self.generated_by(&gens) {
                    covered[b] = true;
                }
            }
        }
        gens
    }
}

/// Validates a multiplication table and returns the monoid it defines.
pub fn build_monoid(table: &[Vec<usize>], identity: usize) -> Result<FiniteMonoid, AlgebraError> {
    let size = table.len();
    if size == 0 {
        return Err(AlgebraError::EmptyMonoid);
    }
    let mut flat = Vec::with_capacity(size * size);
    for (row, entries) in table.iter().enumerate() {
        if entries.len() != size {
            return Err(AlgebraError::NotSquare {
                row,
                len: entries.len(),
                size,
            });
        }
        for &value in entries {
            if value >= size {
                return Err(AlgebraError::OutOfRange { value, size });
            }
            flat.push(value);
        }
    }
    if identity >= size {
        return Err(AlgebraError::OutOfRange {
            value: identity,
            size,
        });
    }
    let monoid = FiniteMonoid {
        size,
        identity,
        table: flat,
    };
    for a in monoid.elements() {
        for b in monoid.elements() {
            let ab = monoid.mul(a, b);
            for c in monoid.elements() {
                if monoid.mul(ab, c) != monoid.mul(a, monoid.mul(b, c)) {
                    return Err(AlgebraError::AssociativityViolation { a, b, c });
                }
            }
        }
    }
    for a in monoid.elements() {
        if monoid.mul(identity, a) != a || monoid.mul(a, identity) != a {
            return Err(AlgebraError::IdentityViolation { a });
        }
    }
    Ok(monoid)
}

/// A finite set with a right action `x.m` of a [`FiniteMonoid`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RightMSet {
    size: usize,
    monoid_size: usize,
    act: Vec<usize>,
}

impl fmt::Debug for RightMSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RightMSet")
            .field("size", &self.size)
            .field("act", &self.table_rows())
            .finish()
    }
}

impl RightMSet {
    /// The carrier `{0, .., n-1}` with every element acting as the identity.
    pub fn trivial_action(monoid: &FiniteMonoid, n: usize) -> Self {
        let act = (0..n)
            .flat_map(|x| std::iter::repeat_n(x, monoid.size()))
            .collect();
        Self {
            size: n,
            monoid_size: monoid.size(),
            act,
        }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn act(&self, x: usize, m: usize) -> usize {
        self.act[x * self.monoid_size + m]
    }

    /// The map `x ↦ x.m`.
    pub fn rho(&self, m: usize) -> Vec<usize> {
        (0..self.size).map(|x| self.act(x, m)).collect()
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        if self.monoid_size == 0 {
            return vec![Vec::new(); self.size];
        }
        self.act
            .chunks(self.monoid_size)
            .map(<[usize]>::to_vec)
            .collect()
    }
}

/// Checks the unit and action laws of `act` (rows indexed by carrier
/// element, columns by monoid element).
pub fn validate_mset(monoid: &FiniteMonoid, act: &[Vec<usize>]) -> Result<RightMSet, AlgebraError> {
    let size = act.len();
    let msize = monoid.size();
    let mut flat = Vec::with_capacity(size * msize);
    for (row, entries) in act.iter().enumerate() {
        if entries.len() != msize {
            return Err(AlgebraError::ActionShape {
                row,
                len: entries.len(),
                expected: msize,
            });
        }
        for &value in entries {
            if value >= size {
                return Err(AlgebraError::OutOfRange { value, size });
            }
            flat.push(value);
        }
    }
    let mset = RightMSet {
        size,
        monoid_size: msize,
        act: flat,
    };
    for x in 0..size {
        if mset.act(x, monoid.identity()) != x {
            return Err(AlgebraError::UnitLawViolation { x });
        }
        for m in monoid.elements() {
            let xm = mset.act(x, m);
            for m2 in monoid.elements() {
                if mset.act(xm, m2) != mset.act(x, monoid.mul(m, m2)) {
                    return Err(AlgebraError::ActionLawViolation { x, m, m2 });
                }
            }
        }
    }
    Ok(mset)
}

/// Closes `generators ∪ {id}` under composition.
///
/// Multiplication is diagrammatic: `mul(f, g)` applies `f` first, then `g`,
/// so evaluation `x.f = f(x)` is a right action. The identity gets index 0
/// and the remaining elements are numbered in breadth-first discovery order.
pub fn transformation_monoid(
    n: usize,
    generators: &[Vec<usize>],
) -> Result<(FiniteMonoid, RightMSet), AlgebraError> {
    for (index, g) in generators.iter().enumerate() {
        if g.len() != n || g.iter().any(|&y| y >= n) {
            return Err(AlgebraError::EmptyGeneratorMap { index, n });
        }
    }
    let identity: Vec<usize> = (0..n).collect();
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in generators {
            let h: Vec<usize> = elements[i].iter().map(|&y| g[y]).collect();
            if !index.contains_key(&h) {
                index.insert(h.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(h);
            }
        }
    }
    let size = elements.len();
    let mut table = Vec::with_capacity(size * size);
    for f in &elements {
        for g in &elements {
            let fg: Vec<usize> = f.iter().map(|&y| g[y]).collect();
            table.push(index[&fg]);
        }
    }
    let monoid = FiniteMonoid {
        size,
        identity: 0,
        table,
    };
    let act = (0..n)
        .flat_map(|x| elements.iter().map(move |f| f[x]))
        .collect();
    let mset = RightMSet {
        size: n,
        monoid_size: size,
        act,
    };
    Ok((monoid, mset))
}

/// A context `(X, M)`: a finite monoid together with a right M-set.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Context {
    monoid: FiniteMonoid,
    carrier: RightMSet,
}

impl Context {
    pub fn new(monoid: FiniteMonoid, carrier: RightMSet) -> Result<Self, AlgebraError> {
        if carrier.monoid_size != monoid.size() {
            return Err(AlgebraError::MonoidSizeMismatch {
                carrier: carrier.monoid_size,
                monoid: monoid.size(),
            });
        }
        Ok(Self { monoid, carrier })
    }

    /// `n` points acted on by the trivial monoid (`n = 2` gives quivers).
    pub fn trivial(n: usize) -> Self {
        let monoid = FiniteMonoid::trivial();
        let carrier = RightMSet::trivial_action(&monoid, n);
        Self { monoid, carrier }
    }

    /// `X = {0..n}` with `M = Aut(X)`, generated by adjacent transpositions.
    pub fn symmetric(n: usize) -> Self {
        let gens: Vec<Vec<usize>> = (0..n.saturating_sub(1))
            .map(|i| {
                let mut p: Vec<usize> = (0..n).collect();
                p.swap(i, i + 1);
                p
            })
            .collect();
        let (monoid, carrier) =
            transformation_monoid(n, &gens).expect("transpositions are total maps");
        Self { monoid, carrier }
    }

    /// `X = {0, 1}` with the two-element monoid `{id, c}` where `c` is the
    /// constant map onto `0`; `c` is idempotent and not invertible.
    pub fn idempotent() -> Self {
        let (monoid, carrier) =
            transformation_monoid(2, &[vec![0, 0]]).expect("constant map is total");
        Self { monoid, carrier }
    }

    pub fn from_generators(n: usize, generators: &[Vec<usize>]) -> Result<Self, AlgebraError> {
        let (monoid, carrier) = transformation_monoid(n, generators)?;
        Ok(Self { monoid, carrier })
    }

    #[inline]
    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    #[inline]
    pub fn carrier(&self) -> &RightMSet {
        &self.carrier
    }

    /// `|X|`.
    #[inline]
    pub fn arity(&self) -> usize {
        self.carrier.size()
    }

    /// `|M|`.
    #[inline]
    pub fn order(&self) -> usize {
        self.monoid.size()
    }

    /// True when `M` acts on `X` as the full permutation group `Aut(X)`.
    pub fn is_full_automorphism_group(&self) -> bool {
        let n = self.arity();
        let factorial = (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k));
        if factorial != Some(self.order()) {
            return false;
        }
        let mut seen = std::collections::HashSet::new();
        for m in self.monoid.elements() {
            let rho = self.carrier.rho(m);
            let mut hit = vec![false; n];
            for &y in &rho {
                hit[y] = true;
            }
            if hit.iter().any(|h| !h) || !seen.insert(rho) {
                return false;
            }
        }
        true
    }

    /// The contexts used by the desk-scale test families: the trivial monoid
    /// on `|X| ≤ 3` points, `Aut` of a 2- and a 3-set, and the idempotent
    /// monoid on a 2-set.
    pub fn standard() -> Vec<(&'static str, Context)> {
        vec![
            ("trivial-0", Context::trivial(0)),
            ("trivial-1", Context::trivial(1)),
            ("quiver", Context::trivial(2)),
            ("trivial-3", Context::trivial(3)),
            ("symmetric-2", Context::symmetric(2)),
            ("symmetric-3", Context::symmetric(3)),
            ("idempotent-2", Context::idempotent()),
        ]
    }
}

/// The set of all maps `{0..domain} → {0..codomain}`, indexed densely.
///
/// A map `f` is encoded little-endian in base `codomain`:
/// `index(f) = Σ f(x) · codomain^x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FunctionSpace {
    pub domain: usize,
    pub codomain: usize,
}

impl FunctionSpace {
    pub fn new(domain: usize, codomain: usize) -> Self {
        Self { domain, codomain }
    }

    /// `codomain^domain`, or `None` on overflow.
    pub fn len(&self) -> Option<usize> {
        (0..self.domain).try_fold(1usize, |acc, _| acc.checked_mul(self.codomain))
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    pub fn encode(&self, f: &[usize]) -> usize {
        f.iter().rev().fold(0, |acc, &y| acc * self.codomain + y)
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut f = Vec::with_capacity(self.domain);
        for _ in 0..self.domain {
            f.push(index % self.codomain);
            index /= self.codomain;
        }
        f
    }

    /// Writes the decoding of `index` into `out` (which must have length `domain`).
    pub fn decode_into(&self, mut index: usize, out: &mut [usize]) {
        for slot in out.iter_mut() {
            *slot = index % self.codomain;
            index /= self.codomain;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s2_table() -> Vec<Vec<usize>> {
        vec![vec![0, 1], vec![1, 0]]
    }

    #[test]
    fn trivial_monoid_table() {
        let m = build_monoid(&[vec![0]], 0).unwrap();
        assert_eq!(m.size(), 1);
        assert!(m.is_group());
    }

    #[test]
    fn cyclic_group_of_order_two() {
        let m = build_monoid(&s2_table(), 0).unwrap();
        assert_eq!(m.size(), 2);
        assert_eq!(m.mul(1, 1), 0);
        assert!(m.is_group());
    }

    #[test]
    fn every_non_associative_two_element_magma_is_rejected() {
        let mut seen = 0;
        for bits in 0..16usize {
            let t = vec![
                vec![bits & 1, (bits >> 1) & 1],
                vec![(bits >> 2) & 1, (bits >> 3) & 1],
            ];
            let first_failure = (0..2)
                .flat_map(|a| (0..2).flat_map(move |b| (0..2).map(move |c| (a, b, c))))
                .find(|&(a, b, c)| t[t[a][b]][c] != t[a][t[b][c]]);
            if let Some((a, b, c)) = first_failure {
                seen += 1;
                assert_eq!(
                    build_monoid(&t, 0).unwrap_err(),
                    AlgebraError::AssociativityViolation { a, b, c }
                );
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn identity_violation_names_witness() {
        let t = vec![vec![0, 0], vec![0, 1]];
        assert_eq!(
            build_monoid(&t, 0).unwrap_err(),
            AlgebraError::IdentityViolation { a: 1 }
        );
    }

    #[test]
    fn non_square_table() {
        let err = build_monoid(&[vec![0, 1], vec![1]], 0).unwrap_err();
        assert!(matches!(err, AlgebraError::NotSquare { row: 1, .. }));
    }

    #[test]
    fn swap_generates_aut_of_two_set() {
        let (m, x) = transformation_monoid(2, &[vec![1, 0]]).unwrap();
        assert_eq!(m.size(), 2);
        assert!(m.is_group());
        assert_eq!(x.act(0, 1), 1);
    }

    #[test]
    fn transpositions_generate_s3() {
        let gens = vec![vec![1, 0, 2], vec![0, 2, 1], vec![2, 1, 0]];
        let (m, _) = transformation_monoid(3, &gens).unwrap();
        assert_eq!(m.size(), 6);
        assert!(Context::symmetric(3).is_full_automorphism_group());
    }

    #[test]
    fn constant_map_closure() {
        let (m, x) = transformation_monoid(2, &[vec![0, 0]]).unwrap();
        assert_eq!(m.size(), 2);
        assert_eq!(m.mul(1, 1), 1);
        assert!(!m.is_group());
        assert_eq!(x.rho(1), vec![0, 0]);
    }

    #[test]
    fn partial_generator_rejected() {
        assert_eq!(
            transformation_monoid(2, &[vec![0]]).unwrap_err(),
            AlgebraError::EmptyGeneratorMap { index: 0, n: 2 }
        );
        assert_eq!(
            transformation_monoid(2, &[vec![0, 2]]).unwrap_err(),
            AlgebraError::EmptyGeneratorMap { index: 0, n: 2 }
        );
    }

    #[test]
    fn trivial_monoid_accepts_any_carrier() {
        let m = FiniteMonoid::trivial();
        for n in 0..4 {
            let rows: Vec<Vec<usize>> = (0..n).map(|x| vec![x]).collect();
            assert_eq!(validate_mset(&m, &rows).unwrap().size(), n);
        }
    }

    #[test]
    fn evaluation_and_ignoring_actions_of_s2() {
        let m = build_monoid(&s2_table(), 0).unwrap();
        validate_mset(&m, &[vec![0, 1], vec![1, 0]]).unwrap();
        // x.σ = x: (x.σ).σ = x = x.e = x.(σσ), so the trivial action is valid.
        validate_mset(&m, &[vec![0, 0], vec![1, 1]]).unwrap();
    }

    #[test]
    fn mset_law_witnesses() {
        let m = build_monoid(&s2_table(), 0).unwrap();
        assert_eq!(
            validate_mset(&m, &[vec![1, 1], vec![1, 0]]).unwrap_err(),
            AlgebraError::UnitLawViolation { x: 0 }
        );
        // σ acting as a constant is not compatible with σσ = e.
        assert_eq!(
            validate_mset(&m, &[vec![0, 0], vec![1, 0]]).unwrap_err(),
            AlgebraError::ActionLawViolation { x: 1, m: 1, m2: 1 }
        );
    }

    #[test]
    fn evaluation_is_a_right_action_exhaustively() {
        for (_, ctx) in Context::standard() {
            let m = ctx.monoid();
            let x = ctx.carrier();
            for p in 0..x.size() {
                for f in m.elements() {
                    for g in m.elements() {
                        assert_eq!(x.act(p, m.mul(f, g)), x.act(x.act(p, f), g));
                    }
                }
            }
        }
    }

    #[test]
    fn closure_is_idempotent() {
        for (_, ctx) in Context::standard() {
            let maps: Vec<Vec<usize>> = ctx
                .monoid()
                .elements()
                .map(|m| ctx.carrier().rho(m))
                .collect();
            let again = Context::from_generators(ctx.arity(), &maps).unwrap();
            assert_eq!(again.order(), ctx.order());
            // Same set of maps, hence an isomorphic monoid.
            let mut a = maps.clone();
            let mut b: Vec<Vec<usize>> = again
                .monoid()
                .elements()
                .map(|m| again.carrier().rho(m))
                .collect();
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn generating_set_generates() {
        for (_, ctx) in Context::standard() {
            let m = ctx.monoid();
            let gens = m.generating_set();
            assert_eq!(m.generated_by(&gens).len(), m.size());
        }
    }

    #[test]
    fn function_space_codec() {
        let fs = FunctionSpace::new(3, 2);
        assert_eq!(fs.len(), Some(8));
        for i in 0..8 {
            assert_eq!(fs.encode(&fs.decode(i)), i);
        }
        assert_eq!(FunctionSpace::new(0, 0).len(), Some(1));
        assert_eq!(FunctionSpace::new(2, 0).len(), Some(0));
    }
}
