//! The edge cone: dimension, affine hull, the halfspace system over all independent
//! sets, and exact point membership against that system.

use std::collections::HashSet;
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EnumerationGate, Graph, VertexSet};
use crate::rational::{integer_rank, RationalVector};

/// Combinatorial origin of a hyperplane.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Tag {
    /// `x_vertex = 0`.
    Coordinate { vertex: usize },
    /// `sum over A = sum over N(A)`.
    IndependentSet { set: VertexSet },
    /// Side-sum balance of a bipartite component (or `x_i = 0` for an isolated vertex).
    AffineComponent { component: usize },
}

/// Hyperplane through the origin with a primitive integer normal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hyperplane {
    normal: Vec<i64>,
    tag: Tag,
}

impl Hyperplane {
    /// Divides `normal` by the gcd of its entries. A zero normal is rejected.
    pub fn new(normal: Vec<i64>, tag: Tag) -> Option<Hyperplane> {
        let normal = primitive(normal)?;
        Some(Hyperplane { normal, tag })
    }

    pub fn coordinate(n: usize, vertex: usize) -> Hyperplane {
        let mut normal = vec![0; n];
        normal[vertex] = 1;
        Hyperplane {
            normal,
            tag: Tag::Coordinate { vertex },
        }
    }

    /// `H_A`: normal `+1` on `A`, `-1` on `N(A)`. `A` must be nonempty and independent.
    pub fn independent_set(g: &Graph, a: &VertexSet) -> Result<Hyperplane> {
        if a.is_empty() || !g.is_independent(a)? {
            return Err(Error::NotIndependent);
        }
        let mut normal = vec![0; g.vertex_count()];
        for v in a.iter() {
            normal[v] = 1;
        }
        for w in g.neighbor_set(a)?.iter() {
            normal[w] = -1;
        }
        Ok(Hyperplane {
            normal,
            tag: Tag::IndependentSet { set: a.clone() },
        })
    }

    pub fn normal(&self) -> &[i64] {
        &self.normal
    }

    pub fn tag(&self) -> &Tag {
        &self.tag
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn eval_int(&self, x: &[i64]) -> i64 {
        self.normal.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn eval(&self, x: &RationalVector) -> BigRational {
        x.dot_int(&self.normal)
    }

    /// Edge indices whose edge vectors lie on this hyperplane.
    pub fn edges_on(&self, g: &Graph) -> Vec<usize> {
        g.edges()
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| self.normal[a] + self.normal[b] == 0)
            .map(|(k, _)| k)
            .collect()
    }
}

fn primitive(mut normal: Vec<i64>) -> Option<Vec<i64>> {
    let g = normal.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g == 0 {
        return None;
    }
    for x in &mut normal {
        *x /= g;
    }
    Some(normal)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sense {
    #[serde(rename = ">=0")]
    AtLeastZero,
    #[serde(rename = "<=0")]
    AtMostZero,
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sense::AtLeastZero => ">= 0",
            Sense::AtMostZero => "<= 0",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Halfspace {
    pub hyperplane: Hyperplane,
    pub sense: Sense,
}

impl Halfspace {
    /// `x_i >= 0`.
    pub fn coordinate(n: usize, vertex: usize) -> Halfspace {
        Halfspace {
            hyperplane: Hyperplane::coordinate(n, vertex),
            sense: Sense::AtLeastZero,
        }
    }

    /// `sum over A - sum over N(A) <= 0`.
    pub fn independent_set(g: &Graph, a: &VertexSet) -> Result<Halfspace> {
        Ok(Halfspace {
            hyperplane: Hyperplane::independent_set(g, a)?,
            sense: Sense::AtMostZero,
        })
    }

    fn orient(&self, value: i64) -> i64 {
        match self.sense {
            Sense::AtLeastZero => value,
            Sense::AtMostZero => -value,
        }
    }

    /// Signed slack of `x`: nonnegative exactly when `x` is in the halfspace.
    pub fn slack(&self, x: &RationalVector) -> BigRational {
        let v = self.hyperplane.eval(x);
        match self.sense {
            Sense::AtLeastZero => v,
            Sense::AtMostZero => -v,
        }
    }

    pub fn slack_int(&self, x: &[i64]) -> i64 {
        self.orient(self.hyperplane.eval_int(x))
    }

    pub fn contains(&self, x: &RationalVector) -> bool {
        !self.slack(x).is_negative()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepresentationKind {
    /// One halfspace per coordinate and per nonempty independent set.
    Full,
    /// No halfspace can be dropped.
    Irreducible,
    /// The unique irreducible form of a connected bipartite graph, tags on the left side.
    CanonicalBipartite,
}

/// The affine hull as a list of equations, intersected with a list of halfspaces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeRepresentation {
    pub equations: Vec<Hyperplane>,
    pub halfspaces: Vec<Halfspace>,
    pub kind: RepresentationKind,
}

impl ConeRepresentation {
    pub fn contains(&self, x: &RationalVector) -> bool {
        self.equations.iter().all(|h| h.eval(x).is_zero())
            && self.halfspaces.iter().all(|h| h.contains(x))
    }

    /// Like [`contains`](Self::contains) with halfspace `skip` ignored.
    pub fn contains_without(&self, x: &RationalVector, skip: usize) -> bool {
        self.equations.iter().all(|h| h.eval(x).is_zero())
            && self
                .halfspaces
                .iter()
                .enumerate()
                .all(|(k, h)| k == skip || h.contains(x))
    }
}

/// `n - c0(G)`, checked against the exact rank of the incidence columns.
pub fn cone_dimension(g: &Graph) -> usize {
    let dim = g.vertex_count() - g.count_bipartite_components();
    let rank = integer_rank(&g.edge_vectors()).expect("edge vectors share one dimension");
    assert_eq!(
        dim, rank,
        "edge cone dimension disagrees with the incidence matrix rank"
    );
    dim
}

/// One equation per bipartite component: left side-sum equals right side-sum. For an
/// isolated vertex this is `x_i = 0`.
pub fn affine_hull(g: &Graph) -> Vec<Hyperplane> {
    let n = g.vertex_count();
    g.components()
        .iter()
        .enumerate()
        .filter_map(|(k, comp)| {
            let bip = comp.bipartition.as_ref()?;
            let mut normal = vec![0; n];
            for v in bip.left.iter() {
                normal[v] = 1;
            }
            for v in bip.right.iter() {
                normal[v] = -1;
            }
            Some(Hyperplane {
                normal,
                tag: Tag::AffineComponent { component: k },
            })
        })
        .collect()
}

/// Every coordinate halfspace `x_i >= 0` followed by `H_A^-` for every nonempty
/// independent set `A` in lexicographic order, with the affine hull attached.
pub fn full_representation(g: &Graph, gate: EnumerationGate) -> Result<ConeRepresentation> {
    let n = g.vertex_count();
    let mut halfspaces: Vec<Halfspace> = (0..n).map(|i| Halfspace::coordinate(n, i)).collect();
    let mut seen: HashSet<(Vec<i64>, Sense)> = halfspaces
        .iter()
        .map(|h| (h.hyperplane.normal.clone(), h.sense))
        .collect();
    for a in g.independent_sets(gate)? {
        let h = Halfspace::independent_set(g, &a)?;
        if seen.insert((h.hyperplane.normal.clone(), h.sense)) {
            halfspaces.push(h);
        }
    }
    Ok(ConeRepresentation {
        equations: affine_hull(g),
        halfspaces,
        kind: RepresentationKind::Full,
    })
}

/// A constraint of the membership system together with its value at the tested point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Halfspace {
        halfspace: Halfspace,
        /// `normal . x`
        value: BigRational,
    },
    Equation {
        equation: Hyperplane,
        value: BigRational,
    },
}

impl Witness {
    pub fn tag(&self) -> &Tag {
        match self {
            Witness::Halfspace { halfspace, .. } => &halfspace.hyperplane.tag,
            Witness::Equation { equation, .. } => &equation.tag,
        }
    }

    /// How far the point is from satisfying the constraint.
    pub fn excess(&self) -> BigRational {
        match self {
            Witness::Halfspace { halfspace, value } => match halfspace.sense {
                Sense::AtLeastZero => -value.clone(),
                Sense::AtMostZero => value.clone(),
            },
            Witness::Equation { value, .. } => value.abs(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    Inside,
    Outside(Witness),
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Inside)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Membership::Inside => None,
            Membership::Outside(w) => Some(w),
        }
    }
}

/// Decides `x` in the edge cone by checking `x_i >= 0`, the independent-set
/// inequalities and the affine hull equations. When `x` is outside, the witness is the
/// most violated constraint; ties go to the earliest in that order (coordinates by
/// index, sets lexicographically, then equations).
pub fn membership(g: &Graph, x: &RationalVector, gate: EnumerationGate) -> Result<Membership> {
    let n = g.vertex_count();
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x.len(),
        });
    }
    gate.check(n)?;

    let mut worst: Option<Witness> = None;
    let mut consider = |w: Witness| {
        let excess = w.excess();
        if excess.is_positive() && worst.as_ref().is_none_or(|b| excess > b.excess()) {
            worst = Some(w);
        }
    };

    for i in 0..n {
        if x[i].is_negative() {
            consider(Witness::Halfspace {
                halfspace: Halfspace::coordinate(n, i),
                value: x[i].clone(),
            });
        }
    }
    for a in g.independent_sets(gate)? {
        let neighbors = g.neighbor_set(&a)?;
        let value = a.iter().map(|v| &x[v]).sum::<BigRational>()
            - neighbors.iter().map(|v| &x[v]).sum::<BigRational>();
        if value.is_positive() {
            consider(Witness::Halfspace {
                halfspace: Halfspace::independent_set(g, &a)?,
                value,
            });
        }
    }
    for eq in affine_hull(g) {
        let value = eq.eval(x);
        if !value.is_zero() {
            consider(Witness::Equation {
                equation: eq,
                value,
            });
        }
    }
    Ok(match worst {
        None => Membership::Inside,
        Some(w) => Membership::Outside(w),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn set(v: &[usize]) -> VertexSet {
        VertexSet::new(v.iter().copied())
    }

    fn star_k13() -> Graph {
        Graph::with_vertex_count(4, &[(0, 3), (1, 3), (2, 3)]).unwrap()
    }

    fn complete_bipartite(m: usize, n: usize) -> Graph {
        let edges: Vec<_> = (0..m)
            .flat_map(|i| (0..n).map(move |j| (i, m + j)))
            .collect();
        Graph::with_vertex_count(m + n, &edges).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(cone_dimension(&parse_graph("a b\nb c\nc a").unwrap()), 3);
        assert_eq!(cone_dimension(&parse_graph("a b").unwrap()), 1);
        assert_eq!(cone_dimension(&parse_graph("a\nb").unwrap()), 0);
        for m in 1..=4 {
            for n in m..=4 {
                assert_eq!(cone_dimension(&complete_bipartite(m, n)), m + n - 1);
            }
        }
    }

    #[test]
    fn affine_hulls() {
        let edge = parse_graph("a b").unwrap();
        let hull = affine_hull(&edge);
        assert_eq!(hull.len(), 1);
        assert_eq!(hull[0].normal(), [1, -1]);

        assert!(affine_hull(&parse_graph("a b\nb c\nc a").unwrap()).is_empty());

        let k23 = complete_bipartite(2, 3);
        let hull = affine_hull(&k23);
        assert_eq!(hull.len(), 1);
        assert_eq!(hull[0].normal(), [1, 1, -1, -1, -1]);
        assert_eq!(hull[0].tag(), &Tag::AffineComponent { component: 0 });

        let iso = parse_graph("a b\nz").unwrap();
        let hull = affine_hull(&iso);
        assert_eq!(hull[1].normal(), [0, 0, 1]);
    }

    #[test]
    fn full_representation_of_single_edge() {
        let g = parse_graph("a b").unwrap();
        let rep = full_representation(&g, EnumerationGate::default()).unwrap();
        let listed: Vec<(Vec<i64>, Sense)> = rep
            .halfspaces
            .iter()
            .map(|h| (h.hyperplane.normal().to_vec(), h.sense))
            .collect();
        assert_eq!(
            listed,
            vec![
                (vec![1, 0], Sense::AtLeastZero),
                (vec![0, 1], Sense::AtLeastZero),
                (vec![1, -1], Sense::AtMostZero),
                (vec![-1, 1], Sense::AtMostZero),
            ]
        );
        assert_eq!(rep.equations.len(), 1);
        assert_eq!(rep.kind, RepresentationKind::Full);
    }

    #[test]
    fn full_representation_of_triangle_and_point() {
        let tri = parse_graph("a b\nb c\nc a").unwrap();
        let rep = full_representation(&tri, EnumerationGate::default()).unwrap();
        assert_eq!(rep.halfspaces.len(), 6);
        assert!(rep.equations.is_empty());

        let point = parse_graph("a").unwrap();
        let rep = full_representation(&point, EnumerationGate::default()).unwrap();
        assert_eq!(rep.equations.len(), 1);
        assert_eq!(rep.equations[0].normal(), [1]);
        // x_1 >= 0 plus the isolated singleton's x_1 <= 0
        assert_eq!(rep.halfspaces[0], Halfspace::coordinate(1, 0));
    }

    #[test]
    fn membership_in_the_star() {
        let g = star_k13();
        let gate = EnumerationGate::default();
        let x = RationalVector::from_integers(&[1, 1, 1, 3]);
        assert!(membership(&g, &x, gate).unwrap().is_member());

        let x = RationalVector::from_integers(&[1, 1, 1, 1]);
        let m = membership(&g, &x, gate).unwrap();
        let w = m.witness().unwrap();
        assert_eq!(w.tag(), &Tag::IndependentSet { set: set(&[0, 1, 2]) });
        assert_eq!(w.excess(), BigRational::from_integer(2.into()));

        assert!(membership(&g, &RationalVector::zeros(4), gate).unwrap().is_member());
    }

    #[test]
    fn membership_rejects_wrong_dimension() {
        let g = star_k13();
        assert_eq!(
            membership(&g, &RationalVector::zeros(3), EnumerationGate::default()).unwrap_err(),
            Error::DimensionMismatch {
                expected: 4,
                found: 3
            }
        );
    }

    #[test]
    fn negative_coordinate_witness() {
        let g = parse_graph("a b\nb c\nc a").unwrap();
        let x = RationalVector::parse_list("-1/2,1,1").unwrap();
        let m = membership(&g, &x, EnumerationGate::default()).unwrap();
        assert!(!m.is_member());
        assert!(matches!(m.witness().unwrap().tag(), Tag::Coordinate { .. } | Tag::IndependentSet { .. }));
    }

    #[test]
    fn hyperplanes_are_primitive() {
        let h = Hyperplane::new(vec![2, -4, 0], Tag::Coordinate { vertex: 0 }).unwrap();
        assert_eq!(h.normal(), [1, -2, 0]);
        assert!(Hyperplane::new(vec![0, 0], Tag::Coordinate { vertex: 0 }).is_none());
    }

    #[test]
    fn independent_set_hyperplane_requires_independence() {
        let tri = parse_graph("a b\nb c\nc a").unwrap();
        assert_eq!(
            Hyperplane::independent_set(&tri, &set(&[0, 1])).unwrap_err(),
            Error::NotIndependent
        );
        let h = Hyperplane::independent_set(&tri, &set(&[0])).unwrap();
        assert_eq!(h.normal(), [1, -1, -1]);
        assert_eq!(h.edges_on(&tri), vec![0, 2]);
    }
}
