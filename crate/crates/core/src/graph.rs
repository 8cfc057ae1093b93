//! Finite simple graphs and the combinatorial queries the edge cone is built from.
//!
//! Vertices are addressed by 0-based indices in first-appearance order; labels are
//! kept only for input and output.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sorted, deduplicated set of vertex indices.
///
/// The derived ordering is lexicographic on the sorted index sequence, which is the
/// order used everywhere sets are listed.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = indices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(vec![v])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::new(self.iter().chain(other.iter()))
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| other.contains(v)).collect())
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// Upper bound on the vertex count for operations that enumerate independent sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationGate(pub usize);

impl EnumerationGate {
    pub const DEFAULT_MAX_N: usize = 20;

    pub fn check(self, n: usize) -> Result<()> {
        if n > self.0 {
            Err(Error::EnumerationGate { n, max_n: self.0 })
        } else {
            Ok(())
        }
    }
}

impl Default for EnumerationGate {
    fn default() -> Self {
        EnumerationGate(Self::DEFAULT_MAX_N)
    }
}

/// The two colour classes of a bipartite component. `left` holds the component's
/// smallest vertex index; `right` is empty exactly for an isolated vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    pub left: VertexSet,
    pub right: VertexSet,
}

/// Which side of a [`Bipartition`] a vertex set is drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl Bipartition {
    pub fn side(&self, side: Side) -> &VertexSet {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: VertexSet,
    pub bipartition: Option<Bipartition>,
}

/// Immutable simple graph. Edges are stored as `(u, v)` with `u < v`, in input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    component_of: Vec<usize>,
    components: Vec<Component>,
}

impl Graph {
    /// Builds a graph from explicit labels and index pairs. Errors report the 1-based
    /// position of the offending pair in `edges` as the line.
    pub fn from_edges(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Graph> {
        let n = labels.len();
        let mut seen = HashSet::new();
        let mut normalized = Vec::with_capacity(edges.len());
        for (pos, &(a, b)) in edges.iter().enumerate() {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { index: v, n });
                }
            }
            if a == b {
                return Err(Error::LoopEdge {
                    line: pos + 1,
                    label: labels[a].clone(),
                });
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(Error::DuplicateEdge {
                    line: pos + 1,
                    a: labels[a].clone(),
                    b: labels[b].clone(),
                });
            }
            normalized.push(e);
        }
        Ok(Self::build(labels, normalized))
    }

    /// Graph on `n` vertices labelled `v1..vn`.
    pub fn with_vertex_count(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let labels = (1..=n).map(|i| format!("v{i}")).collect();
        Self::from_edges(labels, edges)
    }

    fn build(labels: Vec<String>, edges: Vec<(usize, usize)>) -> Graph {
        let n = labels.len();
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in &edges {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }

        let mut component_of = vec![usize::MAX; n];
        let mut colour = vec![0u8; n];
        let mut components = Vec::new();
        for start in 0..n {
            if component_of[start] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut members = vec![start];
            let mut bipartite = true;
            component_of[start] = id;
            colour[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &adjacency[u] {
                    if component_of[w] == usize::MAX {
                        component_of[w] = id;
                        colour[w] = 1 - colour[u];
                        members.push(w);
                        queue.push_back(w);
                    } else if colour[w] == colour[u] {
                        bipartite = false;
                    }
                }
            }
            // `start` is the smallest index of the component and has colour 0.
            let bipartition = bipartite.then(|| Bipartition {
                left: members.iter().copied().filter(|&v| colour[v] == 0).collect(),
                right: members.iter().copied().filter(|&v| colour[v] == 1).collect(),
            });
            components.push(Component {
                vertices: VertexSet::new(members),
                bipartition,
            });
        }

        Graph {
            labels,
            edges,
            adjacency,
            component_of,
            components,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.component_of[v]
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    pub fn is_bipartite(&self) -> bool {
        self.components.iter().all(|c| c.bipartition.is_some())
    }

    /// The bipartition of a connected bipartite graph.
    pub fn connected_bipartition(&self) -> Option<&Bipartition> {
        match self.components.as_slice() {
            [only] => only.bipartition.as_ref(),
            _ => None,
        }
    }

    /// Number of bipartite components; isolated vertices count.
    pub fn count_bipartite_components(&self) -> usize {
        self.components
            .iter()
            .filter(|c| c.bipartition.is_some())
            .count()
    }

    pub fn check_set(&self, a: &VertexSet) -> Result<()> {
        let n = self.vertex_count();
        match a.iter().find(|&v| v >= n) {
            Some(index) => Err(Error::VertexOutOfRange { index, n }),
            None => Ok(()),
        }
    }

    /// All vertices adjacent to some member of `a`.
    pub fn neighbor_set(&self, a: &VertexSet) -> Result<VertexSet> {
        self.check_set(a)?;
        Ok(a.iter()
            .flat_map(|v| self.adjacency[v].iter().copied())
            .collect())
    }

    pub fn is_independent(&self, a: &VertexSet) -> Result<bool> {
        self.check_set(a)?;
        Ok(a.iter()
            .all(|v| self.adjacency[v].iter().all(|&w| !a.contains(w))))
    }

    /// Every nonempty independent set, in lexicographic order of the sorted index
    /// sequences.
    pub fn independent_sets(&self, gate: EnumerationGate) -> Result<IndependentSets<'_>> {
        gate.check(self.vertex_count())?;
        Ok(IndependentSets {
            graph: self,
            stack: Vec::new(),
            blocked: vec![0; self.vertex_count()],
            cursor: 0,
        })
    }

    /// Columns of the incidence matrix: `e_u + e_v` for each edge, in edge order.
    pub fn edge_vectors(&self) -> Vec<Vec<i64>> {
        let n = self.vertex_count();
        self.edges
            .iter()
            .map(|&(a, b)| {
                let mut col = vec![0; n];
                col[a] = 1;
                col[b] = 1;
                col
            })
            .collect()
    }

    /// Whether the subgraph induced on `set` is connected. The empty set is not.
    pub fn induces_connected(&self, set: &VertexSet) -> bool {
        let Some(start) = set.iter().next() else {
            return false;
        };
        let mut seen = HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if set.contains(w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen.len() == set.len()
    }

    /// Formats a vertex set with labels, for diagnostics.
    pub fn display_set(&self, a: &VertexSet) -> String {
        let names: Vec<&str> = a.iter().map(|v| self.label(v)).collect();
        format!("{{{}}}", names.join(", "))
    }
}

/// Lexicographic stream of nonempty independent sets, see [`Graph::independent_sets`].
#[derive(Debug, Clone)]
pub struct IndependentSets<'g> {
    graph: &'g Graph,
    stack: Vec<usize>,
    // number of stack members adjacent to each vertex
    blocked: Vec<u32>,
    cursor: usize,
}

impl Iterator for IndependentSets<'_> {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        let n = self.graph.vertex_count();
        loop {
            if let Some(v) = (self.cursor..n).find(|&v| self.blocked[v] == 0) {
                for &w in self.graph.neighbors(v) {
                    self.blocked[w] += 1;
                }
                self.stack.push(v);
                self.cursor = v + 1;
                return Some(VertexSet(self.stack.clone()));
            }
            let u = self.stack.pop()?;
            for &w in self.graph.neighbors(u) {
                self.blocked[w] -= 1;
            }
            self.cursor = u + 1;
        }
    }
}

/// Parses the edge-list format: one edge per line as two whitespace-separated labels,
/// a single label declares a (possibly isolated) vertex, blank lines and `#` comments
/// are skipped.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges = Vec::new();
    let mut seen = HashSet::new();

    let mut intern = |label: &str, labels: &mut Vec<String>| -> usize {
        *index.entry(label.to_owned()).or_insert_with(|| {
            labels.push(label.to_owned());
            labels.len() - 1
        })
    };

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        match tokens.as_slice() {
            [single] => {
                intern(single, &mut labels);
            }
            [a, b] => {
                if a == b {
                    return Err(Error::LoopEdge {
                        line,
                        label: (*a).to_owned(),
                    });
                }
                let u = intern(a, &mut labels);
                let v = intern(b, &mut labels);
                let e = (u.min(v), u.max(v));
                if !seen.insert(e) {
                    return Err(Error::DuplicateEdge {
                        line,
                        a: (*a).to_owned(),
                        b: (*b).to_owned(),
                    });
                }
                edges.push(e);
            }
            other => {
                return Err(Error::MalformedLine {
                    line,
                    found: other.len(),
                })
            }
        }
    }
    Ok(Graph::build(labels, edges))
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Graph> {
        parse_graph(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        parse_graph("a b\nb c\nc a").unwrap()
    }

    fn star_k13() -> Graph {
        // leaves first, centre last
        Graph::with_vertex_count(4, &[(0, 3), (1, 3), (2, 3)]).unwrap()
    }

    fn set(v: &[usize]) -> VertexSet {
        VertexSet::new(v.iter().copied())
    }

    #[test]
    fn parses_triangle() {
        let g = triangle();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.components().len(), 1);
        assert!(!g.is_bipartite());
        assert_eq!(g.labels(), ["a", "b", "c"]);
    }

    #[test]
    fn parses_single_edge() {
        let g = parse_graph("a b").unwrap();
        assert_eq!(g.components().len(), 1);
        assert_eq!(g.count_bipartite_components(), 1);
    }

    #[test]
    fn rejects_loop_with_line_number() {
        assert_eq!(
            parse_graph("a a").unwrap_err(),
            Error::LoopEdge {
                line: 1,
                label: "a".into()
            }
        );
        let err = parse_graph("# header\n\na b\nc c").unwrap_err();
        assert!(matches!(err, Error::LoopEdge { line: 4, .. }));
    }

    #[test]
    fn rejects_duplicates_and_malformed_lines() {
        assert!(matches!(
            parse_graph("a b\nb a").unwrap_err(),
            Error::DuplicateEdge { line: 2, .. }
        ));
        assert!(matches!(
            parse_graph("a b c").unwrap_err(),
            Error::MalformedLine { line: 1, found: 3 }
        ));
    }

    #[test]
    fn isolated_vertex_declaration() {
        let g = parse_graph("a b\n# comment\nz\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.components().len(), 2);
        let iso = &g.components()[1];
        assert_eq!(iso.vertices, set(&[2]));
        let bip = iso.bipartition.as_ref().unwrap();
        assert_eq!(bip.left, set(&[2]));
        assert!(bip.right.is_empty());
    }

    #[test]
    fn from_edges_validates() {
        assert!(matches!(
            Graph::with_vertex_count(2, &[(0, 0)]),
            Err(Error::LoopEdge { .. })
        ));
        assert!(matches!(
            Graph::with_vertex_count(2, &[(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge { .. })
        ));
        assert!(matches!(
            Graph::with_vertex_count(2, &[(0, 2)]),
            Err(Error::VertexOutOfRange { index: 2, n: 2 })
        ));
    }

    #[test]
    fn bipartition_left_side_holds_smallest_index() {
        // path v3 - v1 - v2 - v4 written in a scrambled order
        let g = Graph::with_vertex_count(4, &[(2, 0), (0, 1), (1, 3)]).unwrap();
        let bip = g.connected_bipartition().unwrap();
        assert_eq!(bip.left, set(&[0, 3]));
        assert_eq!(bip.right, set(&[1, 2]));
    }

    #[test]
    fn neighbor_sets() {
        let star = star_k13();
        assert_eq!(star.neighbor_set(&set(&[3])).unwrap(), set(&[0, 1, 2]));
        assert_eq!(star.neighbor_set(&VertexSet::empty()).unwrap(), VertexSet::empty());
        let path = Graph::with_vertex_count(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.neighbor_set(&set(&[0, 2])).unwrap(), set(&[1]));
        assert!(matches!(
            path.neighbor_set(&set(&[5])),
            Err(Error::VertexOutOfRange { index: 5, .. })
        ));
    }

    #[test]
    fn independence() {
        assert!(!triangle().is_independent(&set(&[0, 1])).unwrap());
        assert!(star_k13().is_independent(&set(&[0, 1, 2])).unwrap());
        assert!(triangle().is_independent(&VertexSet::empty()).unwrap());
    }

    #[test]
    fn enumerates_independent_sets() {
        let edge = Graph::with_vertex_count(2, &[(0, 1)]).unwrap();
        let sets: Vec<_> = edge.independent_sets(EnumerationGate::default()).unwrap().collect();
        assert_eq!(sets, vec![set(&[0]), set(&[1])]);

        let sets: Vec<_> = triangle().independent_sets(EnumerationGate::default()).unwrap().collect();
        assert_eq!(sets, vec![set(&[0]), set(&[1]), set(&[2])]);

        let sets: Vec<_> = star_k13().independent_sets(EnumerationGate::default()).unwrap().collect();
        assert_eq!(
            sets,
            vec![
                set(&[0]),
                set(&[0, 1]),
                set(&[0, 1, 2]),
                set(&[0, 2]),
                set(&[1]),
                set(&[1, 2]),
                set(&[2]),
                set(&[3]),
            ]
        );
    }

    #[test]
    fn enumeration_gate_refuses() {
        let g = Graph::with_vertex_count(5, &[]).unwrap();
        assert_eq!(
            g.independent_sets(EnumerationGate(4)).unwrap_err(),
            Error::EnumerationGate { n: 5, max_n: 4 }
        );
        assert_eq!(g.independent_sets(EnumerationGate(5)).unwrap().count(), 31);
    }

    #[test]
    fn bipartite_component_counts() {
        assert_eq!(triangle().count_bipartite_components(), 0);
        assert_eq!(parse_graph("a b").unwrap().count_bipartite_components(), 1);
        assert_eq!(
            parse_graph("a b\nb c\nc a\nx y").unwrap().count_bipartite_components(),
            1
        );
    }

    #[test]
    fn edge_vector_columns() {
        assert_eq!(
            triangle().edge_vectors(),
            vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]
        );
        assert_eq!(parse_graph("a b").unwrap().edge_vectors(), vec![vec![1, 1]]);
        assert!(parse_graph("a\nb").unwrap().edge_vectors().is_empty());
    }

    #[test]
    fn induced_connectivity() {
        let path = Graph::with_vertex_count(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(path.induces_connected(&set(&[1, 2, 3])));
        assert!(!path.induces_connected(&set(&[0, 2])));
        assert!(path.induces_connected(&set(&[3])));
        assert!(!path.induces_connected(&VertexSet::empty()));
    }
}
