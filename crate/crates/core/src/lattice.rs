//! Integer points of bipartite edge cones: decomposition into edges via integral
//! flow, and perfect matchings.

use std::collections::{BTreeMap, VecDeque};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::cone::{membership, Halfspace, Membership, Witness};
use crate::error::{Error, Result};
use crate::graph::{EnumerationGate, Graph, VertexSet};
use crate::rational::RationalVector;

/// Nonnegative integer multiplicities per edge index; edges with multiplicity zero
/// are omitted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDecomposition {
    pub multiplicities: BTreeMap<usize, u64>,
}

impl EdgeDecomposition {
    /// `Σ multiplicity · (e_u + e_v)`.
    pub fn sum(&self, g: &Graph) -> Vec<i64> {
        let mut out = vec![0i64; g.vertex_count()];
        for (&k, &m) in &self.multiplicities {
            let (a, b) = g.edges()[k];
            out[a] += m as i64;
            out[b] += m as i64;
        }
        out
    }

    pub fn total(&self) -> u64 {
        self.multiplicities.values().sum()
    }
}

/// Result of [`integer_decompose`]: either the decomposition or a violated inequality
/// of the membership system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposition {
    Found(EdgeDecomposition),
    Absent(Witness),
}

/// Whether the coordinate sum is even. Every integer point of a bipartite edge cone
/// passes; the converse fails.
pub fn parity_check(b: &[i64]) -> bool {
    b.iter().fold(0i64, |acc, &x| acc.wrapping_add(x)) % 2 == 0
}

fn require_bipartite(g: &Graph, operation: &'static str) -> Result<()> {
    if g.is_bipartite() {
        Ok(())
    } else {
        Err(Error::NotBipartite { operation })
    }
}

fn witness_for_set(g: &Graph, a: &VertexSet, b: &[i64]) -> Result<Witness> {
    let halfspace = Halfspace::independent_set(g, a)?;
    let value = BigRational::from_integer(halfspace.hyperplane.eval_int(b).into());
    Ok(Witness::Halfspace { halfspace, value })
}

/// Writes an integer vector `b` as a nonnegative integer combination of edge vectors of
/// a bipartite graph, or returns a violated inequality proving none exists.
///
/// Each component is solved as a transshipment: supply `b_v` at left vertices, demand
/// `b_w` at right vertices, uncapacitated arcs left to right along edges. An integral
/// maximum flow saturating every supply is the decomposition; otherwise the
/// source side of a minimum cut yields a left set `A` with `b(A) > b(N(A))`.
pub fn integer_decompose(g: &Graph, b: &[i64]) -> Result<Decomposition> {
    require_bipartite(g, "integer decomposition")?;
    let n = g.vertex_count();
    if b.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.len(),
        });
    }
    if let Some(i) = (0..n).find(|&i| b[i] < 0) {
        let halfspace = Halfspace::coordinate(n, i);
        return Ok(Decomposition::Absent(Witness::Halfspace {
            halfspace,
            value: BigRational::from_integer(b[i].into()),
        }));
    }

    let mut result = EdgeDecomposition::default();
    for comp in g.components() {
        let bip = comp.bipartition.as_ref().expect("bipartite checked");
        let left_sum: i64 = bip.left.iter().map(|v| b[v]).sum();
        let right_sum: i64 = bip.right.iter().map(|v| b[v]).sum();
        if left_sum != right_sum {
            // the heavier side violates its own inequality
            let heavy = if left_sum > right_sum { &bip.left } else { &bip.right };
            return Ok(Decomposition::Absent(witness_for_set(g, heavy, b)?));
        }
        if left_sum == 0 {
            continue;
        }
        let edges: Vec<usize> = (0..g.edge_count())
            .filter(|&k| comp.vertices.contains(g.edges()[k].0))
            .collect();
        match transshipment(g, &bip.left, &bip.right, &edges, b, left_sum) {
            Ok(flows) => result.multiplicities.extend(flows),
            Err(cut) => return Ok(Decomposition::Absent(witness_for_set(g, &cut, b)?)),
        }
    }
    debug_assert_eq!(result.sum(g), b);
    Ok(Decomposition::Found(result))
}

struct Arc {
    to: usize,
    cap: i64,
    rev: usize,
}

struct Network {
    arcs: Vec<Vec<Arc>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network {
            arcs: (0..nodes).map(|_| Vec::new()).collect(),
        }
    }

    fn add(&mut self, from: usize, to: usize, cap: i64) -> (usize, usize) {
        let fwd = self.arcs[from].len();
        let bwd = self.arcs[to].len();
        self.arcs[from].push(Arc { to, cap, rev: bwd });
        self.arcs[to].push(Arc {
            to: from,
            cap: 0,
            rev: fwd,
        });
        (from, fwd)
    }

    /// Shortest (fewest arcs) augmenting path by breadth-first search.
    fn augment(&mut self, source: usize, sink: usize) -> Option<i64> {
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.arcs.len()];
        let mut seen = vec![false; self.arcs.len()];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            if u == sink {
                break;
            }
            for (k, arc) in self.arcs[u].iter().enumerate() {
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    parent[arc.to] = Some((u, k));
                    queue.push_back(arc.to);
                }
            }
        }
        if !seen[sink] {
            return None;
        }
        let mut bottleneck = i64::MAX;
        let mut v = sink;
        while let Some((u, k)) = parent[v] {
            bottleneck = bottleneck.min(self.arcs[u][k].cap);
            v = u;
        }
        let mut v = sink;
        while let Some((u, k)) = parent[v] {
            self.arcs[u][k].cap -= bottleneck;
            let rev = self.arcs[u][k].rev;
            self.arcs[v][rev].cap += bottleneck;
            v = u;
        }
        Some(bottleneck)
    }

    fn reachable(&self, source: usize) -> Vec<bool> {
        let mut seen = vec![false; self.arcs.len()];
        seen[source] = true;
        let mut stack = vec![source];
        while let Some(u) = stack.pop() {
            for arc in &self.arcs[u] {
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    stack.push(arc.to);
                }
            }
        }
        seen
    }
}

/// Integral flow from `left` to `right` meeting `b` exactly, as per-edge flows, or the
/// left vertices on the source side of a minimum cut.
fn transshipment(
    g: &Graph,
    left: &VertexSet,
    right: &VertexSet,
    edges: &[usize],
    b: &[i64],
    total: i64,
) -> std::result::Result<Vec<(usize, u64)>, VertexSet> {
    let n = g.vertex_count();
    let (source, sink) = (n, n + 1);
    let mut net = Network::new(n + 2);
    // arc capacities bounded by the largest supply
    let cap = left.iter().map(|v| b[v]).max().unwrap_or(0);
    let mut edge_arcs = Vec::with_capacity(edges.len());
    for &k in edges {
        let (u, w) = g.edges()[k];
        let (from, to) = if left.contains(u) { (u, w) } else { (w, u) };
        edge_arcs.push((k, net.add(from, to, cap), cap));
    }
    for v in left.iter() {
        net.add(source, v, b[v]);
    }
    for w in right.iter() {
        net.add(w, sink, b[w]);
    }

    let mut flow = 0;
    while let Some(delta) = net.augment(source, sink) {
        flow += delta;
    }
    if flow < total {
        let side = net.reachable(source);
        return Err(left.iter().filter(|&v| side[v]).collect());
    }
    Ok(edge_arcs
        .into_iter()
        .filter_map(|(k, (node, idx), cap)| {
            let used = cap - net.arcs[node][idx].cap;
            (used > 0).then_some((k, used as u64))
        })
        .collect())
}

/// A perfect matching, or an independent set with more vertices than neighbours.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchingAnswer {
    /// Edge indices of a perfect matching.
    Matching(Vec<usize>),
    HallViolator(VertexSet),
}

impl MatchingAnswer {
    pub fn has_perfect_matching(&self) -> bool {
        matches!(self, MatchingAnswer::Matching(_))
    }
}

/// The independent set maximising `|A| - |N(A)|` when that is positive; ties go to
/// the smaller set, then lexicographically.
pub fn hall_violator(g: &Graph, gate: EnumerationGate) -> Result<Option<VertexSet>> {
    let mut best: Option<(usize, VertexSet)> = None;
    for a in g.independent_sets(gate)? {
        let deficiency = a.len().saturating_sub(g.neighbor_set(&a)?.len());
        if deficiency == 0 {
            continue;
        }
        let better = match &best {
            None => true,
            Some((d, s)) => deficiency > *d || (deficiency == *d && a.len() < s.len()),
        };
        if better {
            best = Some((deficiency, a));
        }
    }
    Ok(best.map(|(_, a)| a))
}

/// Decides whether a bipartite graph has a perfect matching, by testing whether the
/// all-ones vector lies in the edge cone.
///
/// Positive answers come from an integral decomposition of the all-ones vector.
/// Negative answers carry the independent set from [`hall_violator`], which needs the
/// enumeration gate.
pub fn has_perfect_matching(g: &Graph, gate: EnumerationGate) -> Result<MatchingAnswer> {
    require_bipartite(g, "perfect matching decision")?;
    let n = g.vertex_count();
    gate.check(n)?;
    let ones = RationalVector::from_integers(&vec![1; n]);
    let inside = membership(g, &ones, gate)?;
    match integer_decompose(g, &vec![1; n])? {
        Decomposition::Found(d) => {
            assert!(inside.is_member(), "decomposable point must pass membership");
            assert!(d.multiplicities.values().all(|&m| m == 1));
            Ok(MatchingAnswer::Matching(d.multiplicities.into_keys().collect()))
        }
        Decomposition::Absent(_) => {
            assert!(matches!(inside, Membership::Outside(_)));
            let a = hall_violator(g, gate)?
                .expect("a point outside the cone violates an independent-set inequality");
            Ok(MatchingAnswer::HallViolator(a))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::Tag;
    use crate::graph::parse_graph;

    fn set(v: &[usize]) -> VertexSet {
        VertexSet::new(v.iter().copied())
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::with_vertex_count(n, &edges).unwrap()
    }

    #[test]
    fn parity() {
        assert!(parity_check(&[1, 1, 1, 1]));
        assert!(!parity_check(&[1, 0]));
        assert!(parity_check(&[0, 0, 0]));
        assert!(parity_check(&[]));
        assert!(parity_check(&[-1, 3]));
    }

    #[test]
    fn single_edge_decompositions() {
        let g = parse_graph("a b").unwrap();
        match integer_decompose(&g, &[2, 2]).unwrap() {
            Decomposition::Found(d) => assert_eq!(d.multiplicities, BTreeMap::from([(0, 2)])),
            other => panic!("expected a decomposition, got {other:?}"),
        }
        match integer_decompose(&g, &[1, 0]).unwrap() {
            Decomposition::Absent(w) => {
                assert_eq!(w.tag(), &Tag::IndependentSet { set: set(&[0]) });
            }
            other => panic!("expected absence, got {other:?}"),
        }
        assert!(!parity_check(&[1, 0]));
    }

    #[test]
    fn four_cycle_perfect_matching() {
        let g = cycle(4);
        let Decomposition::Found(d) = integer_decompose(&g, &[1, 1, 1, 1]).unwrap() else {
            panic!("C4 all-ones decomposes");
        };
        assert_eq!(d.sum(&g), vec![1, 1, 1, 1]);
        assert_eq!(d.total(), 2);
    }

    #[test]
    fn negative_entry_is_a_coordinate_witness() {
        let g = cycle(4);
        let Decomposition::Absent(w) = integer_decompose(&g, &[1, -1, 1, 1]).unwrap() else {
            panic!("negative entries cannot decompose");
        };
        assert_eq!(w.tag(), &Tag::Coordinate { vertex: 1 });
    }

    #[test]
    fn hall_cut_witness() {
        // path v1 - v2 - v3 - v4, left {v1, v3}, right {v2, v4}; sides balance but
        // b(v1) = 2 exceeds b(v2) = 1
        let g = Graph::with_vertex_count(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let b = [2, 1, 1, 2];
        let Decomposition::Absent(w) = integer_decompose(&g, &b).unwrap() else {
            panic!("no decomposition exists");
        };
        assert!(w.excess() > BigRational::from_integer(0.into()));
        assert!(matches!(w.tag(), Tag::IndependentSet { .. }));
    }

    #[test]
    fn rejects_non_bipartite_and_bad_dimension() {
        let tri = parse_graph("a b\nb c\nc a").unwrap();
        assert!(matches!(
            integer_decompose(&tri, &[2, 2, 2]),
            Err(Error::NotBipartite { .. })
        ));
        assert!(matches!(
            has_perfect_matching(&tri, EnumerationGate::default()),
            Err(Error::NotBipartite { .. })
        ));
        let g = cycle(4);
        assert!(matches!(
            integer_decompose(&g, &[1, 1]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn matchings() {
        let gate = EnumerationGate::default();
        match has_perfect_matching(&cycle(6), gate).unwrap() {
            MatchingAnswer::Matching(m) => assert_eq!(m.len(), 3),
            other => panic!("{other:?}"),
        }
        let star = Graph::with_vertex_count(4, &[(0, 3), (1, 3), (2, 3)]).unwrap();
        assert_eq!(
            has_perfect_matching(&star, gate).unwrap(),
            MatchingAnswer::HallViolator(set(&[0, 1, 2]))
        );
        let k33: Vec<_> = (0..3).flat_map(|i| (3..6).map(move |j| (i, j))).collect();
        let k33 = Graph::with_vertex_count(6, &k33).unwrap();
        assert!(has_perfect_matching(&k33, gate).unwrap().has_perfect_matching());
    }

    #[test]
    fn isolated_vertex_blocks_matching() {
        let g = parse_graph("a b\nz").unwrap();
        assert_eq!(
            has_perfect_matching(&g, EnumerationGate::default()).unwrap(),
            MatchingAnswer::HallViolator(set(&[2]))
        );
        assert!(matches!(
            integer_decompose(&g, &[0, 0, 1]).unwrap(),
            Decomposition::Absent(_)
        ));
        assert!(matches!(
            integer_decompose(&g, &[3, 3, 0]).unwrap(),
            Decomposition::Found(_)
        ));
    }
}
