//! Extended dual graphs of minimal resolutions of integral surface pairs.
//!
//! White vertices are smooth rational exceptional curves `E_j` with `E_j² = -e_j`;
//! edges are transversal intersection points between them; branches are the
//! strict transforms `D_k` of the boundary, with orbifold multiplicity `m_k` and
//! intersection number `D_k·E_j`.
//!
//! The discrepancies `a_j` of `K' + Δ' = f*(K + Δ) + Σ a_j E_j` are the unique
//! solution of `M·a = d`, where `M` is the intersection matrix and
//! `d_j = (K' + Δ')·E_j = (e_j - 2) + Σ_k (1 - 1/m_k)(D_k·E_j)`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::GraphError;
use crate::exact::{Multiplicity, Rational};
use crate::linalg;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WhiteVertex {
    /// `e_j = -E_j²`.
    pub self_intersection_negated: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BranchAttachment {
    pub vertex: usize,
    pub multiplicity: Multiplicity,
    /// `D_k·E_j`, counted transversally.
    pub intersection: u64,
}

impl BranchAttachment {
    pub fn new(vertex: usize, multiplicity: u64, intersection: u64) -> Result<Self, GraphError> {
        let mult = Multiplicity::new(multiplicity).map_err(|_| GraphError::BranchMultiplicity {
            index: vertex,
            mult: multiplicity,
        })?;
        Ok(BranchAttachment {
            vertex,
            multiplicity: mult,
            intersection,
        })
    }
}

/// A validated, connected extended dual graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DualGraph {
    vertices: Vec<WhiteVertex>,
    edges: Vec<(usize, usize)>,
    branches: Vec<BranchAttachment>,
}

impl DualGraph {
    /// Builds a graph from the negated self-intersections, an edge multiset and branches.
    ///
    /// Edges are stored normalized as `(min, max)` in sorted order; parallel edges
    /// are kept.
    pub fn new(
        self_intersections: &[u64],
        edges: &[(usize, usize)],
        branches: Vec<BranchAttachment>,
    ) -> Result<Self, GraphError> {
        let n = self_intersections.len();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        for (index, &value) in self_intersections.iter().enumerate() {
            if value == 0 {
                return Err(GraphError::BadSelfIntersection { index, value });
            }
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(GraphError::EdgeOutOfRange(i, j));
            }
            if i == j {
                return Err(GraphError::SelfLoop(i));
            }
            normalized.push((i.min(j), i.max(j)));
        }
        normalized.sort_unstable();
        for (index, b) in branches.iter().enumerate() {
            if b.vertex >= n {
                return Err(GraphError::BranchOutOfRange(index));
            }
            if b.multiplicity.get() < 2 {
                return Err(GraphError::BranchMultiplicity {
                    index,
                    mult: b.multiplicity.get(),
                });
            }
            if b.intersection == 0 {
                return Err(GraphError::BranchIntersection(index));
            }
        }
        let graph = DualGraph {
            vertices: self_intersections
                .iter()
                .map(|&e| WhiteVertex {
                    self_intersection_negated: e,
                })
                .collect(),
            edges: normalized,
            branches,
        };
        if !graph.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(graph)
    }

    pub fn vertices(&self) -> &[WhiteVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn branches(&self) -> &[BranchAttachment] {
        &self.branches
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn e(&self, j: usize) -> u64 {
        self.vertices[j].self_intersection_negated
    }

    /// Simple-graph adjacency lists; parallel edges appear once per edge.
    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.len()];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        adj
    }

    fn is_connected(&self) -> bool {
        let adj = self.adjacency();
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn has_parallel_edges(&self) -> bool {
        self.edges.windows(2).any(|w| w[0] == w[1])
    }

    /// Vertex order along the graph when it is a simple path, starting from the end
    /// with the lower index.
    pub fn chain_order(&self) -> Option<Vec<usize>> {
        if self.has_parallel_edges() || self.edges.len() + 1 != self.len() {
            return None;
        }
        let adj = self.adjacency();
        if adj.iter().any(|nbrs| nbrs.len() > 2) {
            return None;
        }
        let start = (0..self.len()).find(|&v| adj[v].len() <= 1)?;
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
            order.push(next);
            prev = cur;
            cur = next;
        }
        Some(order)
    }

    fn branches_at(&self, vertex: usize) -> impl Iterator<Item = &BranchAttachment> {
        self.branches.iter().filter(move |b| b.vertex == vertex)
    }
}

pub type IntersectionMatrix = Vec<Vec<i64>>;

/// `M_jj = -e_j`, `M_ij` = number of edges between `i` and `j`.
pub fn intersection_matrix(g: &DualGraph) -> IntersectionMatrix {
    let n = g.len();
    let mut m = vec![vec![0i64; n]; n];
    for (j, row) in m.iter_mut().enumerate() {
        row[j] = -(g.e(j) as i64);
    }
    for &(i, j) in &g.edges {
        m[i][j] += 1;
        m[j][i] += 1;
    }
    m
}

fn rational_matrix(m: &IntersectionMatrix) -> Vec<Vec<Rational>> {
    m.iter()
        .map(|row| row.iter().map(|&x| Rational::from_integer(x)).collect())
        .collect()
}

/// Sylvester's criterion on `-M`, in exact arithmetic.
pub fn is_negative_definite(g: &DualGraph) -> bool {
    let neg: Vec<Vec<Rational>> = rational_matrix(&intersection_matrix(g))
        .into_iter()
        .map(|row| row.into_iter().map(|x| -x).collect())
        .collect();
    linalg::leading_minors_positive(neg)
}

/// `d_j = (e_j - 2) + Σ_{branches at j} (1 - 1/m_k)(D_k·E_j)`.
pub fn adjunction_degrees(g: &DualGraph) -> Vec<Rational> {
    (0..g.len())
        .map(|j| {
            let base = Rational::from_integer(g.e(j) as i64 - 2);
            g.branches_at(j).fold(base, |acc, b| {
                acc + b.multiplicity.coeff() * Rational::from_integer(b.intersection as i64)
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscrepancyResult {
    /// Discrepancies `a_j`, indexed like the vertices.
    pub a: Vec<Rational>,
    /// Adjunction degrees `d_j`.
    pub d: Vec<Rational>,
    /// `a_j > -1` for every `j`.
    pub is_klt: bool,
}

/// Solves `M·a = d` exactly and applies the strict klt test `a_j > -1`.
pub fn solve_discrepancies(g: &DualGraph) -> Result<DiscrepancyResult, GraphError> {
    if !is_negative_definite(g) {
        return Err(GraphError::NotNegativeDefinite);
    }
    let m = rational_matrix(&intersection_matrix(g));
    let d = adjunction_degrees(g);
    let a = linalg::solve(m, d.clone()).ok_or(GraphError::NotNegativeDefinite)?;
    let minus_one = Rational::from_integer(-1);
    let is_klt = a.iter().all(|x| *x > minus_one);
    Ok(DiscrepancyResult { a, d, is_klt })
}

/// `M·a - d`, component-wise.
pub fn residual(g: &DualGraph, a: &[Rational]) -> Vec<Rational> {
    let m = intersection_matrix(g);
    let d = adjunction_degrees(g);
    m.iter()
        .zip(d)
        .map(|(row, dj)| {
            let lhs: Rational = row
                .iter()
                .zip(a)
                .map(|(&mij, ai)| Rational::from_integer(mij) * ai)
                .sum();
            lhs - dj
        })
        .collect()
}

/// Shapes of extended dual graphs of klt integral pairs on a singular germ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GraphClass {
    /// Hirzebruch–Jung chain with one boundary branch at each end.
    ChainTwoBlackEnds,
    /// `D`-type fork of (-2)-curves, one boundary branch at the end of the long arm.
    ForkHalfWeights,
    /// Chain of (-2)-curves with one boundary branch at an end.
    ChainOneBlackEnd,
    /// No boundary; ADE diagram of (-2)-curves.
    DuValDynkin,
    Unrecognized,
}

impl GraphClass {
    pub fn name(self) -> &'static str {
        match self {
            GraphClass::ChainTwoBlackEnds => "ChainTwoBlackEnds",
            GraphClass::ForkHalfWeights => "ForkHalfWeights",
            GraphClass::ChainOneBlackEnd => "ChainOneBlackEnd",
            GraphClass::DuValDynkin => "DuValDynkin",
            GraphClass::Unrecognized => "Unrecognized",
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Dynkin {
    A(usize),
    D(usize),
    E(usize),
}

impl fmt::Display for Dynkin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dynkin::A(n) => write!(f, "A{n}"),
            Dynkin::D(n) => write!(f, "D{n}"),
            Dynkin::E(n) => write!(f, "E{n}"),
        }
    }
}

/// A tree with exactly one vertex of degree 3: its center and the three arms,
/// each listed outward from the center.
struct Fork {
    arms: Vec<Vec<usize>>,
}

fn as_fork(g: &DualGraph) -> Option<Fork> {
    if g.has_parallel_edges() || g.edges.len() + 1 != g.len() {
        return None;
    }
    let adj = g.adjacency();
    let mut centers = (0..g.len()).filter(|&v| adj[v].len() >= 3);
    let center = centers.next()?;
    if centers.next().is_some() || adj[center].len() != 3 {
        return None;
    }
    let mut arms: Vec<Vec<usize>> = adj[center]
        .iter()
        .map(|&first| {
            let mut arm = vec![first];
            let (mut prev, mut cur) = (center, first);
            while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
                arm.push(next);
                prev = cur;
                cur = next;
            }
            arm
        })
        .collect();
    arms.sort_by_key(|arm| arm.len());
    Some(Fork { arms })
}

/// ADE type of the white graph, if it is a Dynkin diagram of (-2)-curves.
pub fn dynkin_type(g: &DualGraph) -> Option<Dynkin> {
    if g.vertices.iter().any(|v| v.self_intersection_negated != 2) {
        return None;
    }
    if g.chain_order().is_some() {
        return Some(Dynkin::A(g.len()));
    }
    let fork = as_fork(g)?;
    match [fork.arms[0].len(), fork.arms[1].len(), fork.arms[2].len()] {
        [1, 1, _] => Some(Dynkin::D(g.len())),
        [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => Some(Dynkin::E(g.len())),
        _ => None,
    }
}

/// Matches `g` against the shapes occurring for klt integral pairs on a singular germ.
///
/// Only simple-edge trees of curves with `e_j ≥ 2` and transversal boundary
/// branches are recognized; everything else is `Unrecognized`.
pub fn classify_graph(g: &DualGraph) -> GraphClass {
    if g.has_parallel_edges()
        || g.edges.len() + 1 != g.len()
        || g.branches.iter().any(|b| b.intersection != 1)
        || g.vertices.iter().any(|v| v.self_intersection_negated < 2)
    {
        return GraphClass::Unrecognized;
    }
    let all_minus_two = g.vertices.iter().all(|v| v.self_intersection_negated == 2);
    match g.branches.as_slice() {
        [] => {
            if dynkin_type(g).is_some() {
                GraphClass::DuValDynkin
            } else {
                GraphClass::Unrecognized
            }
        }
        [branch] => {
            if !all_minus_two {
                return GraphClass::Unrecognized;
            }
            if let Some(order) = g.chain_order() {
                if branch.vertex == order[0] || branch.vertex == order[order.len() - 1] {
                    return GraphClass::ChainOneBlackEnd;
                }
                return GraphClass::Unrecognized;
            }
            match as_fork(g) {
                Some(fork) if fork.arms[0].len() == 1 && fork.arms[1].len() == 1 => {
                    // D4 has three equally long arms; any leaf is the end of a long arm.
                    let long = fork.arms[2].len();
                    let on_long_end = fork
                        .arms
                        .iter()
                        .filter(|arm| arm.len() == long)
                        .any(|arm| arm.last() == Some(&branch.vertex));
                    if on_long_end {
                        GraphClass::ForkHalfWeights
                    } else {
                        GraphClass::Unrecognized
                    }
                }
                _ => GraphClass::Unrecognized,
            }
        }
        [b1, b2] => match two_end_chain(g, b1, b2) {
            Some(_) => GraphClass::ChainTwoBlackEnds,
            None => GraphClass::Unrecognized,
        },
        _ => GraphClass::Unrecognized,
    }
}

/// Chain data for a two-branch chain: vertex order from `E_1`, the end with the smaller
/// `(m, e)` signature, and the multiplicities `(m_1, m_2)` at `E_1` and `E_n`.
struct EndChain {
    order: Vec<usize>,
    m1: u64,
    m2: u64,
}

fn two_end_chain(g: &DualGraph, b1: &BranchAttachment, b2: &BranchAttachment) -> Option<EndChain> {
    let order = g.chain_order()?;
    let n = order.len();
    let (first, last) = (order[0], order[n - 1]);
    if n == 1 {
        // Both branches meet the single curve; the multiplicities are unconstrained.
        return Some(EndChain {
            order,
            m1: b1.multiplicity.get().min(b2.multiplicity.get()),
            m2: b1.multiplicity.get().max(b2.multiplicity.get()),
        });
    }
    let (m1, m2) = if b1.vertex == first && b2.vertex == last {
        (b1.multiplicity.get(), b2.multiplicity.get())
    } else if b2.vertex == first && b1.vertex == last {
        (b2.multiplicity.get(), b1.multiplicity.get())
    } else {
        return None;
    };
    if order[1..n - 1].iter().any(|&v| g.e(v) != 2) {
        return None;
    }
    let (e1, en) = (g.e(first), g.e(last));
    if (e1 - 1) * m1 != (en - 1) * m2 {
        return None;
    }
    if (m2, en) < (m1, e1) {
        let mut order = order;
        order.reverse();
        return Some(EndChain { order, m1: m2, m2: m1 });
    }
    Some(EndChain { order, m1, m2 })
}

fn require_two_end_chain(g: &DualGraph) -> Result<EndChain, GraphError> {
    let class = classify_graph(g);
    if class != GraphClass::ChainTwoBlackEnds {
        return Err(GraphError::WrongClass { found: class.name() });
    }
    two_end_chain(g, &g.branches[0], &g.branches[1]).ok_or(GraphError::WrongClass {
        found: class.name(),
    })
}

/// `(N, q)` of the cyclic quotient singularity `A_{N,q}` contracted by a
/// `ChainTwoBlackEnds` graph. `E_1` is the end carrying the smaller multiplicity
/// (equivalently the larger `e`), so the result does not depend on vertex numbering.
///
/// For `n ≥ 2`, `N = (n-1)(e_1-1)(e_n-1) + (e_1-1) + (e_n-1)` and
/// `q = (n-1)(e_1-1) + 1`. A single curve `E_1` contracts to `A_{e_1,1}`.
pub fn cyclic_invariants(g: &DualGraph) -> Result<(u64, u64), GraphError> {
    let chain = require_two_end_chain(g)?;
    Ok(chain_invariants(g, &chain.order))
}

fn chain_invariants(g: &DualGraph, order: &[usize]) -> (u64, u64) {
    let n = order.len() as u64;
    let e1 = g.e(order[0]);
    if n == 1 {
        return (e1, 1);
    }
    let en = g.e(order[order.len() - 1]);
    let (u, w) = (e1 - 1, en - 1);
    ((n - 1) * u * w + u + w, (n - 1) * u + 1)
}

/// Order `N·m_1·m_2` of the local fundamental group for a `ChainTwoBlackEnds` graph.
///
/// `N` is the order of the cyclic group of `A_{N,q}` from [`cyclic_invariants`].
pub fn local_group_order(g: &DualGraph) -> Result<u64, GraphError> {
    match classify_graph(g) {
        GraphClass::ChainTwoBlackEnds => {}
        GraphClass::ForkHalfWeights => {
            return Err(GraphError::Unsupported(
                "fork graphs reduce to the chain case only through a double cover",
            ))
        }
        GraphClass::DuValDynkin => {
            return Err(GraphError::Unsupported(
                "boundary-free graphs are Du Val; use the Dynkin type",
            ))
        }
        GraphClass::ChainOneBlackEnd | GraphClass::Unrecognized => {
            return Err(GraphError::Unsupported(
                "no closed order formula for this graph class",
            ))
        }
    }
    let chain = require_two_end_chain(g)?;
    let (n, _) = chain_invariants(g, &chain.order);
    n.checked_mul(chain.m1)
        .and_then(|x| x.checked_mul(chain.m2))
        .ok_or(GraphError::Unsupported("local group order overflows u64"))
}

/// Per-vertex listing used by reports: `e_j` and branch multiplicities at `j`.
pub fn branch_map(g: &DualGraph) -> BTreeMap<usize, Vec<u64>> {
    let mut map: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    for b in &g.branches {
        map.entry(b.vertex).or_default().push(b.multiplicity.get());
    }
    for mults in map.values_mut() {
        mults.sort_unstable();
    }
    map
}
