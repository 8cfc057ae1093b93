//! Cross-checks of every graph-derived answer against the brute-force oracles.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{brute_force_facets, fm_membership, OracleGate};
use crate::cone::{cone_dimension, full_representation, membership, ConeRepresentation};
use crate::error::{Error, Result};
use crate::facets::{canonical_representation, characterized_facets, facets};
use crate::graph::{EnumerationGate, Graph};
use crate::lattice::has_perfect_matching;
use crate::rational::{integer_rank, RationalVector};

#[derive(Debug, Clone, Copy)]
pub struct ValidationOptions {
    pub gate: EnumerationGate,
    pub oracle_gate: OracleGate,
    /// Random nonnegative combinations of edge vectors in the battery.
    pub combinations: usize,
    /// Random points, half of them perturbed combinations.
    pub random_points: usize,
    pub seed: u64,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions {
            gate: EnumerationGate::default(),
            oracle_gate: OracleGate::default(),
            combinations: 16,
            random_points: 16,
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

fn ratio(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> BigRational {
    BigRational::new(
        BigInt::from(rng.gen_range(lo..=hi)),
        BigInt::from(rng.gen_range(1..=3i64)),
    )
}

fn combination(g: &Graph, rng: &mut ChaCha8Rng) -> RationalVector {
    let mut x = RationalVector::zeros(g.vertex_count());
    for e in g.edge_vectors() {
        if rng.gen_bool(0.3) {
            continue;
        }
        x = x.add_scaled(&ratio(rng, 0, 4), &RationalVector::from_integers(&e));
    }
    x
}

/// Test points for membership: edge vectors, all-ones, random nonnegative combinations,
/// random points and combinations nudged in one coordinate.
pub fn point_battery(g: &Graph, combinations: usize, random_points: usize, seed: u64) -> Vec<RationalVector> {
    let n = g.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<RationalVector> = g
        .edge_vectors()
        .iter()
        .map(|e| RationalVector::from_integers(e))
        .collect();
    points.push(RationalVector::from_integers(&vec![1; n]));
    points.push(RationalVector::zeros(n));
    for _ in 0..combinations {
        points.push(combination(g, &mut rng));
    }
    for k in 0..random_points {
        if n == 0 {
            break;
        }
        if k % 2 == 0 {
            points.push(RationalVector::new((0..n).map(|_| ratio(&mut rng, -1, 5)).collect()));
        } else {
            let x = combination(g, &mut rng);
            let mut nudge = vec![0; n];
            nudge[rng.gen_range(0..n)] = if rng.gen_bool(0.5) { 1 } else { -1 };
            points.push(x.add_scaled(&ratio(&mut rng, 1, 1), &RationalVector::from_integers(&nudge)));
        }
    }
    points
}

/// Maximum matching size of a bipartite graph by augmenting paths, as edge indices.
pub fn augmenting_path_matching(g: &Graph) -> Result<Vec<usize>> {
    if !g.is_bipartite() {
        return Err(Error::NotBipartite {
            operation: "augmenting path matching",
        });
    }
    let n = g.vertex_count();
    let mut left = vec![false; n];
    for c in g.components() {
        if let Some(b) = &c.bipartition {
            for v in b.left.iter() {
                left[v] = true;
            }
        }
    }
    let mut mate: Vec<Option<usize>> = vec![None; n];

    fn augment(g: &Graph, u: usize, seen: &mut [bool], mate: &mut [Option<usize>]) -> bool {
        for &w in g.neighbors(u) {
            if seen[w] {
                continue;
            }
            seen[w] = true;
            if mate[w].is_none_or(|m| augment(g, m, seen, mate)) {
                mate[w] = Some(u);
                mate[u] = Some(w);
                return true;
            }
        }
        false
    }

    for u in (0..n).filter(|&u| left[u]) {
        let mut seen = vec![false; n];
        augment(g, u, &mut seen, &mut mate);
    }
    let mut edges: Vec<usize> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, &(a, b))| mate[a] == Some(b))
        .map(|(k, _)| k)
        .collect();
    edges.sort_unstable();
    Ok(edges)
}

/// A point satisfying every constraint of `rep` except halfspace `k` and lying outside
/// the cone, confirmed by elimination. `None` if no such point was found, which means
/// halfspace `k` looks redundant.
pub fn irreducibility_witness(
    g: &Graph,
    rep: &ConeRepresentation,
    k: usize,
    gate: OracleGate,
) -> Result<Option<RationalVector>> {
    let n = g.vertex_count();
    let h = &rep.halfspaces[k];
    let generators = g.edge_vectors();
    let on = h.hyperplane.edges_on(g);
    let mut p = RationalVector::zeros(n);
    let one = BigRational::from_integer(BigInt::from(1));
    for &e in &on {
        p = p.add_scaled(&one, &RationalVector::from_integers(&generators[e]));
    }
    // step off the face in the forbidden direction, staying inside the affine hull
    let outward: Vec<i64> = match h.sense {
        crate::cone::Sense::AtLeastZero => h.hyperplane.normal().iter().map(|x| -x).collect(),
        crate::cone::Sense::AtMostZero => h.hyperplane.normal().to_vec(),
    };
    let outward = project_to_span(&generators, &outward, n);
    let mut eps = BigRational::new(BigInt::from(1), BigInt::from(1));
    for _ in 0..24 {
        let x = p.add_scaled(&eps, &outward);
        if rep.contains_without(&x, k) && !h.contains(&x) {
            return Ok((!fm_membership(&generators, &x, gate)?).then_some(x));
        }
        eps /= BigInt::from(2);
    }
    Ok(None)
}

/// Orthogonal projection onto the span of `generators`, as a rational vector.
fn project_to_span(generators: &[Vec<i64>], v: &[i64], n: usize) -> RationalVector {
    let wide: Vec<Vec<i128>> = generators.iter().map(|g| super::integer::widen(g)).collect();
    let complement = super::integer::nullspace(&wide, n).expect("small entries");
    let mut x = RationalVector::from_integers(v);
    let basis: Vec<RationalVector> = complement
        .iter()
        .map(|z| RationalVector::from_integers(&z.iter().map(|&c| c as i64).collect::<Vec<_>>()))
        .collect();
    // Gram-Schmidt on the complement, then remove each component
    let mut ortho: Vec<RationalVector> = Vec::new();
    for b in basis {
        let mut u = b;
        for o in &ortho {
            let c = u.dot(o) / o.dot(o);
            u = u.add_scaled(&-c, o);
        }
        ortho.push(u);
    }
    for o in &ortho {
        let c = x.dot(o) / o.dot(o);
        x = x.add_scaled(&-c, o);
    }
    x
}

fn check(name: &str, outcome: Result<(bool, String)>) -> CheckResult {
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    CheckResult {
        name: name.to_string(),
        passed,
        detail,
    }
}

fn check_dimension(g: &Graph) -> Result<(bool, String)> {
    let d = cone_dimension(g);
    let r = integer_rank(&g.edge_vectors())?;
    Ok((d == r, format!("formula {d}, incidence rank {r}")))
}

fn check_facets(g: &Graph, o: &ValidationOptions) -> Result<(bool, String)> {
    let oracle: Vec<Vec<usize>> = brute_force_facets(&g.edge_vectors(), o.oracle_gate)?
        .into_iter()
        .map(|f| f.generators_on)
        .collect();
    let mut derived: Vec<Vec<usize>> = facets(g, o.gate)?.into_iter().map(|f| f.generators_on).collect();
    derived.sort();
    if derived != oracle {
        let extra = derived.iter().find(|f| !oracle.contains(f));
        let missing = oracle.iter().find(|f| !derived.contains(f));
        return Ok((
            false,
            format!("facet edge sets differ: extra {extra:?}, missing {missing:?}"),
        ));
    }
    if g.connected_bipartition().is_some() {
        let mut chars: Vec<Vec<usize>> = characterized_facets(g, o.gate)?
            .into_iter()
            .map(|f| f.generators_on)
            .collect();
        chars.sort();
        if chars != oracle {
            return Ok((false, "combinatorial facet test disagrees with oracle".into()));
        }
    }
    Ok((true, format!("{} facets", oracle.len())))
}

fn check_membership(g: &Graph, o: &ValidationOptions) -> Result<(bool, String)> {
    let generators = g.edge_vectors();
    let rep = full_representation(g, o.gate)?;
    let points = point_battery(g, o.combinations, o.random_points, o.seed);
    for x in &points {
        let fm = fm_membership(&generators, x, o.oracle_gate)?;
        let ours = membership(g, x, o.gate)?.is_member();
        if fm != ours || rep.contains(x) != fm {
            return Ok((false, format!("disagreement at ({x}): oracle {fm}, library {ours}")));
        }
    }
    Ok((true, format!("{} points agree", points.len())))
}

fn check_irreducible(g: &Graph, o: &ValidationOptions) -> Result<(bool, String)> {
    let rep = canonical_representation(g, o.gate)?;
    for k in 0..rep.halfspaces.len() {
        if irreducibility_witness(g, &rep, k, o.oracle_gate)?.is_none() {
            return Ok((false, format!("halfspace {k} has no separating witness")));
        }
    }
    Ok((true, format!("{} halfspaces, each needed", rep.halfspaces.len())))
}

fn check_matching(g: &Graph, o: &ValidationOptions) -> Result<(bool, String)> {
    let perfect = 2 * augmenting_path_matching(g)?.len() == g.vertex_count();
    let ours = has_perfect_matching(g, o.gate)?.has_perfect_matching();
    Ok((perfect == ours, format!("augmenting paths {perfect}, cone {ours}")))
}

/// Runs every applicable check; failures are reported, not raised.
pub fn cross_validate(g: &Graph, options: &ValidationOptions) -> ValidationReport {
    let mut checks = vec![
        check("dimension", check_dimension(g)),
        check("facets", check_facets(g, options)),
        check("membership", check_membership(g, options)),
    ];
    if g.connected_bipartition().is_some() && g.edge_count() > 0 {
        checks.push(check("canonical irreducibility", check_irreducible(g, options)));
    }
    if g.is_bipartite() {
        checks.push(check("perfect matching", check_matching(g, options)));
    }
    ValidationReport {
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    #[test]
    fn matching_on_paths() {
        let p4 = Graph::with_vertex_count(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(augmenting_path_matching(&p4).unwrap(), vec![0, 2]);
        let star = Graph::with_vertex_count(4, &[(0, 3), (1, 3), (2, 3)]).unwrap();
        assert_eq!(augmenting_path_matching(&star).unwrap().len(), 1);
    }

    #[test]
    fn battery_is_reproducible() {
        let g = Graph::with_vertex_count(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(point_battery(&g, 5, 5, 7), point_battery(&g, 5, 5, 7));
    }

    #[test]
    fn small_graphs_validate() {
        for text in ["a b\nb c\nc a\n", "a b\nb c\nc d\nd a\n", "a d\nb d\nc d\n", "a b\nc d\n", "a b\nb c\nc d\nd e\ne f\nf a\n"] {
            let g = parse_graph(text).unwrap();
            let report = cross_validate(&g, &ValidationOptions::default());
            assert!(report.passed, "{text}: {report:?}");
        }
    }
}
