//! Facets of the edge cone.
//!
//! Facets are identified by the set of edge vectors lying on them: on the affine hull,
//! different normals can cut out the same facet, but the generator set cannot differ.
//! Detection uses the rank test (a supporting hyperplane cuts a facet iff the edge
//! vectors on it span a space of dimension one less than the cone). For connected
//! bipartite graphs there is also a purely combinatorial test and a duality map
//! between tags on opposite sides of the bipartition.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cone::{
    affine_hull, cone_dimension, ConeRepresentation, Halfspace, Hyperplane, RepresentationKind,
    Tag,
};
use crate::error::{Error, Result};
use crate::graph::{Bipartition, EnumerationGate, Graph, Side, VertexSet};
use crate::rational::integer_rank;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Facet {
    pub halfspace: Halfspace,
    /// Indices of the edges whose vectors lie on the bounding hyperplane.
    pub generators_on: Vec<usize>,
}

/// Edges on `h`, or [`Error::NotSupporting`] if edge vectors lie strictly on both sides.
fn supported_edges(g: &Graph, h: &Hyperplane) -> Result<Vec<usize>> {
    if h.dim() != g.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: g.vertex_count(),
            found: h.dim(),
        });
    }
    let normal = h.normal();
    let (mut pos, mut neg) = (false, false);
    let mut on = Vec::new();
    for (k, &(a, b)) in g.edges().iter().enumerate() {
        match (normal[a] + normal[b]).signum() {
            0 => on.push(k),
            1 => pos = true,
            _ => neg = true,
        }
    }
    if pos && neg {
        Err(Error::NotSupporting)
    } else {
        Ok(on)
    }
}

fn rank_of_edges(g: &Graph, edges: &[usize]) -> usize {
    let all = g.edge_vectors();
    let selected: Vec<Vec<i64>> = edges.iter().map(|&k| all[k].clone()).collect();
    integer_rank(&selected).expect("edge vectors share one dimension")
}

/// Dimension of the face `h ∩ cone`.
pub fn face_dimension(g: &Graph, h: &Hyperplane) -> Result<usize> {
    let on = supported_edges(g, h)?;
    Ok(rank_of_edges(g, &on))
}

fn facet_test(g: &Graph, h: &Hyperplane, dim: usize) -> Result<Option<Vec<usize>>> {
    let on = supported_edges(g, h)?;
    // The apex is never reported as a facet, so rays and the zero cone have none.
    if on.is_empty() {
        return Ok(None);
    }
    Ok((rank_of_edges(g, &on) + 1 == dim).then_some(on))
}

/// Whether `h` cuts a facet of the edge cone.
pub fn is_facet(g: &Graph, h: &Hyperplane) -> Result<bool> {
    Ok(facet_test(g, h, cone_dimension(g))?.is_some())
}

/// Whether `tag` is the preferred label for a facet of a connected bipartite graph:
/// a coordinate on the right side or a proper subset of the left side.
fn is_canonical(bip: &Bipartition, tag: &Tag) -> bool {
    match tag {
        Tag::Coordinate { vertex } => bip.right.contains(*vertex),
        Tag::IndependentSet { set } => set.is_subset(&bip.left) && set.len() < bip.left.len(),
        Tag::AffineComponent { .. } => false,
    }
}

fn candidates(g: &Graph, gate: EnumerationGate) -> Result<Vec<Halfspace>> {
    let n = g.vertex_count();
    let mut out: Vec<Halfspace> = (0..n).map(|i| Halfspace::coordinate(n, i)).collect();
    for a in g.independent_sets(gate)? {
        out.push(Halfspace::independent_set(g, &a)?);
    }
    Ok(out)
}

/// Groups facet-defining halfspaces by generator set and picks one tag per facet.
fn merge_by_generators(
    g: &Graph,
    found: Vec<(Halfspace, Vec<usize>)>,
) -> Vec<Facet> {
    let bip = g.connected_bipartition();
    let mut groups: BTreeMap<Vec<usize>, Vec<Halfspace>> = BTreeMap::new();
    for (h, on) in found {
        groups.entry(on).or_default().push(h);
    }
    let mut facets: Vec<Facet> = groups
        .into_iter()
        .map(|(on, mut tags)| {
            let pick = bip
                .and_then(|b| tags.iter().position(|h| is_canonical(b, h.hyperplane.tag())))
                .unwrap_or(0);
            Facet {
                halfspace: tags.swap_remove(pick),
                generators_on: on,
            }
        })
        .collect();
    facets.sort_by(|a, b| a.halfspace.hyperplane.tag().cmp(b.halfspace.hyperplane.tag()));
    facets
}

/// All facets, found by running the rank test over every coordinate hyperplane and
/// every `H_A`. Tags cutting the same facet are merged; for connected bipartite
/// graphs the surviving tag is the canonical one (coordinate on the right side or a
/// proper subset of the left side). Output order: coordinate facets by vertex, then
/// set facets lexicographically.
pub fn facets(g: &Graph, gate: EnumerationGate) -> Result<Vec<Facet>> {
    let dim = cone_dimension(g);
    let mut found = Vec::new();
    for h in candidates(g, gate)? {
        if let Some(on) = facet_test(g, &h.hyperplane, dim)? {
            found.push((h, on));
        }
    }
    Ok(merge_by_generators(g, found))
}

/// The face cut out by `x_vertex = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordinateFace {
    pub vertex: usize,
    pub dimension: usize,
    pub is_facet: bool,
    pub generators_on: Vec<usize>,
}

/// Every coordinate face, facet or not, in vertex order.
pub fn coordinate_faces(g: &Graph) -> Vec<CoordinateFace> {
    let n = g.vertex_count();
    let dim = cone_dimension(g);
    (0..n)
        .map(|v| {
            let h = Hyperplane::coordinate(n, v);
            let on = supported_edges(g, &h).expect("coordinate hyperplanes support the cone");
            CoordinateFace {
                vertex: v,
                dimension: rank_of_edges(g, &on),
                is_facet: facet_test(g, &h, dim).expect("supporting").is_some(),
                generators_on: on,
            }
        })
        .collect()
}

fn require_connected_bipartite<'g>(g: &'g Graph, operation: &'static str) -> Result<&'g Bipartition> {
    g.connected_bipartition()
        .ok_or(Error::NotConnectedBipartite { operation })
}

fn require_side_subset(g: &Graph, bip: &Bipartition, a: &VertexSet, side: Side) -> Result<()> {
    g.check_set(a)?;
    if !g.is_independent(a)? {
        return Err(Error::NotIndependent);
    }
    let s = bip.side(side);
    if a.is_empty() || !a.is_subset(s) || a.len() == s.len() {
        return Err(Error::NotProperSideSubset);
    }
    Ok(())
}

/// Combinatorial facet test for `H_A`, `A` a nonempty proper subset of `side`.
///
/// With `S = A ∪ N(A)` and `T` its complement, `H_A` cuts a facet iff either the graph
/// induced on `S` is connected and misses exactly one vertex, that vertex lying on
/// `side`; or the graphs induced on `S` and on `T` are both connected and together
/// cover every vertex.
pub fn facet_check_on_side(g: &Graph, a: &VertexSet, side: Side) -> Result<bool> {
    let bip = require_connected_bipartite(g, "bipartite facet check")?;
    require_side_subset(g, bip, a, side)?;
    let all = VertexSet::new(0..g.vertex_count());
    let neighbors = g.neighbor_set(a)?;
    let s = a.union(&neighbors);
    let rest = all.difference(&s);

    let case_a =
        rest.len() == 1 && bip.side(side).contains(rest.as_slice()[0]) && g.induces_connected(&s);
    let t = bip
        .side(side.opposite())
        .difference(&neighbors)
        .union(&bip.side(side).difference(a));
    let case_b =
        g.induces_connected(&s) && g.induces_connected(&t) && s.union(&t).len() == all.len();
    Ok(case_a || case_b)
}

/// [`facet_check_on_side`] for subsets of the left side.
pub fn bipartite_facet_check(g: &Graph, a: &VertexSet) -> Result<bool> {
    facet_check_on_side(g, a, Side::Left)
}

/// The halfspace from the opposite description of the facet cut by `H_A`.
///
/// If `N(A)` is the whole opposite side, `A` misses one vertex `v_i` of its own side
/// and the facet is `x_i >= 0`. Otherwise it is `H_B^-` for `B` = opposite side minus
/// `N(A)`, and `N(B)` = own side minus `A`.
pub fn dual_facet_on_side(g: &Graph, a: &VertexSet, side: Side) -> Result<Halfspace> {
    if !facet_check_on_side(g, a, side)? {
        return Err(Error::NotFacetDefining);
    }
    let bip = g.connected_bipartition().expect("checked above");
    let own_rest = bip.side(side).difference(a);
    let neighbors = g.neighbor_set(a)?;
    let other = bip.side(side.opposite());
    if &neighbors == other {
        assert_eq!(own_rest.len(), 1, "a facet set covering the opposite side misses one vertex");
        return Ok(Halfspace::coordinate(g.vertex_count(), own_rest.as_slice()[0]));
    }
    let b = other.difference(&neighbors);
    assert_eq!(
        g.neighbor_set(&b)?,
        own_rest,
        "dual set neighbourhood must be the complement of A on its side"
    );
    Halfspace::independent_set(g, &b)
}

/// [`dual_facet_on_side`] for subsets of the left side.
pub fn dual_facet(g: &Graph, a: &VertexSet) -> Result<Halfspace> {
    dual_facet_on_side(g, a, Side::Left)
}

fn proper_subsets(side: &VertexSet) -> impl Iterator<Item = VertexSet> + '_ {
    let members = side.as_slice();
    let full = (1u64 << members.len()) - 1;
    (1..full).map(move |mask| {
        members
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &v)| v)
            .collect()
    })
}

/// Facets of a connected bipartite graph from the combinatorial test alone: every
/// proper subset of either side that passes [`facet_check_on_side`], re-tagged
/// canonically through [`dual_facet_on_side`] when it comes from the right side.
pub fn characterized_facets(g: &Graph, gate: EnumerationGate) -> Result<Vec<Facet>> {
    let bip = require_connected_bipartite(g, "combinatorial facet enumeration")?;
    gate.check(g.vertex_count())?;
    let mut found = Vec::new();
    for side in [Side::Left, Side::Right] {
        for a in proper_subsets(bip.side(side)) {
            if !facet_check_on_side(g, &a, side)? {
                continue;
            }
            let h = match side {
                Side::Left => Halfspace::independent_set(g, &a)?,
                Side::Right => dual_facet_on_side(g, &a, side)?,
            };
            let on = h.hyperplane.edges_on(g);
            found.push((h, on));
        }
    }
    Ok(merge_by_generators(g, found))
}

fn ray_representation(g: &Graph, bip: &Bipartition) -> ConeRepresentation {
    let n = g.vertex_count();
    ConeRepresentation {
        equations: affine_hull(g),
        halfspaces: bip.right.iter().map(|v| Halfspace::coordinate(n, v)).collect(),
        kind: RepresentationKind::CanonicalBipartite,
    }
}

/// The unique irreducible representation of the edge cone of a connected bipartite
/// graph: the affine hull, `H_A^-` for proper subsets `A` of the left side, and
/// `x_i >= 0` for vertices `v_i` on the right side, one halfspace per facet.
///
/// A single edge has no facets; its ray is carved out of the affine line by the
/// right-hand coordinate.
pub fn canonical_representation(g: &Graph, gate: EnumerationGate) -> Result<ConeRepresentation> {
    let bip = require_connected_bipartite(g, "canonical representation")?;
    if g.edge_count() == 0 {
        return Err(Error::NoEdges {
            operation: "canonical representation",
        });
    }
    if cone_dimension(g) <= 1 {
        return Ok(ray_representation(g, bip));
    }
    let facets = facets(g, gate)?;
    let halfspaces: Vec<Halfspace> = facets.into_iter().map(|f| f.halfspace).collect();
    for h in &halfspaces {
        assert!(
            is_canonical(bip, h.hyperplane.tag()),
            "every facet of a connected bipartite edge cone has a canonical tag"
        );
    }
    Ok(ConeRepresentation {
        equations: affine_hull(g),
        halfspaces,
        kind: RepresentationKind::CanonicalBipartite,
    })
}

/// Reduces a full representation of a connected bipartite graph to the canonical
/// one: mixed-side sets and non-facet halfspaces are dropped, halfspaces cutting the
/// same facet are collapsed, and the survivors are re-tagged canonically.
pub fn remove_redundant(g: &Graph, rep: &ConeRepresentation) -> Result<ConeRepresentation> {
    let bip = require_connected_bipartite(g, "redundancy removal")?;
    if rep.kind != RepresentationKind::Full {
        return Err(Error::NotFullRepresentation);
    }
    let n = g.vertex_count();
    if rep.equations.iter().chain(rep.halfspaces.iter().map(|h| &h.hyperplane)).any(|h| h.dim() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: rep.halfspaces.first().map_or(0, |h| h.hyperplane.dim()),
        });
    }
    let dim = cone_dimension(g);
    if dim <= 1 {
        return Ok(ConeRepresentation {
            equations: rep.equations.clone(),
            halfspaces: rep
                .halfspaces
                .iter()
                .filter(|h| matches!(h.hyperplane.tag(), Tag::Coordinate { vertex } if bip.right.contains(*vertex)))
                .cloned()
                .collect(),
            kind: RepresentationKind::CanonicalBipartite,
        });
    }

    let mut found = Vec::new();
    for h in &rep.halfspaces {
        if let Tag::IndependentSet { set } = h.hyperplane.tag() {
            let mixed = !set.is_subset(&bip.left) && !set.is_subset(&bip.right);
            if mixed {
                continue;
            }
        }
        if let Some(on) = facet_test(g, &h.hyperplane, dim)? {
            found.push((h.clone(), on));
        }
    }
    let mut facets = merge_by_generators(g, found);
    for f in &mut facets {
        let tag = f.halfspace.hyperplane.tag().clone();
        if is_canonical(bip, &tag) {
            continue;
        }
        // Only the right-side description survived; move it across.
        f.halfspace = match tag {
            Tag::Coordinate { vertex } => {
                Halfspace::independent_set(g, &bip.left.difference(&VertexSet::singleton(vertex)))?
            }
            Tag::IndependentSet { set } => dual_facet_on_side(g, &set, Side::Right)?,
            Tag::AffineComponent { .. } => unreachable!("halfspaces never carry affine tags"),
        };
    }
    facets.sort_by(|a, b| a.halfspace.hyperplane.tag().cmp(b.halfspace.hyperplane.tag()));
    Ok(ConeRepresentation {
        equations: rep.equations.clone(),
        halfspaces: facets.into_iter().map(|f| f.halfspace).collect(),
        kind: RepresentationKind::CanonicalBipartite,
    })
}
