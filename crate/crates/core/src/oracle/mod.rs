//! Brute-force polyhedral computations that know nothing about graphs: facet
//! enumeration from generators and membership by eliminating multipliers. Everything
//! the graph-theoretic modules derive is checked against these.

mod fm;
mod integer;
mod validate;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::cone::Sense;
use crate::error::{Error, Result};
use crate::rational::RationalVector;

pub use fm::fm_membership;
pub use validate::{
    augmenting_path_matching, cross_validate, irreducibility_witness, point_battery, CheckResult,
    ValidationOptions, ValidationReport,
};

/// Size limits for oracle computations, separate from the library's enumeration gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleGate {
    pub max_generators: usize,
    pub max_dim: usize,
}

impl Default for OracleGate {
    fn default() -> Self {
        OracleGate {
            max_generators: 24,
            max_dim: 10,
        }
    }
}

impl OracleGate {
    pub fn check(self, generators: usize, dim: usize) -> Result<()> {
        // multiplier histories are 64-bit masks
        let limit = self.max_generators.min(64);
        if generators > limit {
            return Err(Error::OracleGate {
                what: "generator count",
                value: generators,
                limit,
            });
        }
        if dim > self.max_dim {
            return Err(Error::OracleGate {
                what: "dimension",
                value: dim,
                limit: self.max_dim,
            });
        }
        Ok(())
    }
}

/// A facet found by exhaustive search: `normal . g >= 0` for every generator, with
/// equality exactly on `generators_on`. The normal lies in the linear span of the
/// generators and is primitive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleFacet {
    pub normal: Vec<i64>,
    pub generators_on: Vec<usize>,
}

fn dimension_of(generators: &[Vec<i64>]) -> Result<Option<usize>> {
    let Some(first) = generators.first() else {
        return Ok(None);
    };
    let n = first.len();
    match generators.iter().find(|g| g.len() != n) {
        Some(bad) => Err(Error::DimensionMismatch {
            expected: n,
            found: bad.len(),
        }),
        None => Ok(Some(n)),
    }
}

fn narrow(v: &[i128]) -> Result<Vec<i64>> {
    v.iter()
        .map(|&x| i64::try_from(x).map_err(|_| Error::Overflow))
        .collect()
}

struct FacetSearch<'a> {
    generators: &'a [Vec<i128>],
    complement: &'a [Vec<i128>],
    target: usize,
    found: Vec<OracleFacet>,
    normals: HashSet<Vec<i64>>,
}

impl FacetSearch<'_> {
    fn visit(&mut self, start: usize, basis: &integer::EchelonBasis, chosen: &mut Vec<usize>) -> Result<()> {
        if chosen.len() == self.target {
            return self.test(chosen);
        }
        let needed = self.target - chosen.len();
        for i in start..self.generators.len() {
            if self.generators.len() - i < needed {
                break;
            }
            let Some(reduced) = basis.reduce(&self.generators[i])? else {
                continue;
            };
            let mut next = basis.clone();
            next.push(reduced);
            chosen.push(i);
            self.visit(i + 1, &next, chosen)?;
            chosen.pop();
        }
        Ok(())
    }

    fn test(&mut self, chosen: &[usize]) -> Result<()> {
        if self
            .found
            .iter()
            .any(|f| chosen.iter().all(|c| f.generators_on.binary_search(c).is_ok()))
        {
            return Ok(());
        }
        let n = self.generators[0].len();
        let mut rows: Vec<Vec<i128>> = chosen.iter().map(|&i| self.generators[i].clone()).collect();
        rows.extend(self.complement.iter().cloned());
        let kernel = integer::nullspace(&rows, n)?;
        assert_eq!(kernel.len(), 1, "independent subset of corank one has a unique normal");
        let mut normal = kernel.into_iter().next().expect("one vector");

        let values = self
            .generators
            .iter()
            .map(|g| integer::dot(&normal, g))
            .collect::<Result<Vec<_>>>()?;
        let pos = values.iter().any(|&v| v > 0);
        let neg = values.iter().any(|&v| v < 0);
        if pos && neg {
            return Ok(());
        }
        if neg {
            for x in &mut normal {
                *x = -*x;
            }
        }
        let normal = narrow(&normal)?;
        if self.normals.insert(normal.clone()) {
            let generators_on = values
                .iter()
                .enumerate()
                .filter(|(_, &v)| v == 0)
                .map(|(k, _)| k)
                .collect();
            self.found.push(OracleFacet {
                normal,
                generators_on,
            });
        }
        Ok(())
    }
}

/// Every facet of the cone generated by `generators`, by trying each set of
/// `rank - 1` linearly independent generators as the spanning set of a facet.
/// The apex is not reported, so cones of dimension below two have no facets.
/// Sorted by generator set.
pub fn brute_force_facets(generators: &[Vec<i64>], gate: OracleGate) -> Result<Vec<OracleFacet>> {
    let Some(n) = dimension_of(generators)? else {
        return Ok(Vec::new());
    };
    gate.check(generators.len(), n)?;
    let wide: Vec<Vec<i128>> = generators.iter().map(|g| integer::widen(g)).collect();
    let d = integer::rank(&wide, n)?;
    if d < 2 {
        return Ok(Vec::new());
    }
    let complement = integer::nullspace(&wide, n)?;
    let mut search = FacetSearch {
        generators: &wide,
        complement: &complement,
        target: d - 1,
        found: Vec::new(),
        normals: HashSet::new(),
    };
    search.visit(0, &integer::EchelonBasis::default(), &mut Vec::new())?;
    let mut found = search.found;
    found.sort_by(|a, b| a.generators_on.cmp(&b.generators_on));
    Ok(found)
}

/// Homogeneous description of a cone: `normal . x >= 0` / `<= 0` rows plus
/// `normal . x = 0` equations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalitySystem {
    pub rows: Vec<(Vec<i64>, Sense)>,
    pub equalities: Vec<Vec<i64>>,
}

impl InequalitySystem {
    /// The cone of `generators` in dimension `dim`: equations cut out the linear span,
    /// rows are the facets from [`brute_force_facets`]. A ray gets its own direction as
    /// its single row.
    pub fn from_generators(generators: &[Vec<i64>], dim: usize, gate: OracleGate) -> Result<Self> {
        if let Some(n) = dimension_of(generators)? {
            if n != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: n,
                });
            }
        }
        gate.check(generators.len(), dim)?;
        let wide: Vec<Vec<i128>> = generators.iter().map(|g| integer::widen(g)).collect();
        let equalities = integer::nullspace(&wide, dim)?
            .iter()
            .map(|z| narrow(z))
            .collect::<Result<Vec<_>>>()?;
        let rank = integer::rank(&wide, dim)?;
        let rows = if rank == 1 {
            let mut ray = wide
                .iter()
                .find(|g| g.iter().any(|&x| x != 0))
                .expect("rank one")
                .clone();
            integer::normalize(&mut ray);
            vec![(narrow(&ray)?, Sense::AtLeastZero)]
        } else {
            brute_force_facets(generators, gate)?
                .into_iter()
                .map(|f| (f.normal, Sense::AtLeastZero))
                .collect()
        };
        Ok(InequalitySystem { rows, equalities })
    }

    pub fn contains(&self, x: &RationalVector) -> bool {
        use num_traits::{Signed, Zero};
        self.equalities.iter().all(|z| x.dot_int(z).is_zero())
            && self.rows.iter().all(|(a, sense)| {
                let v = x.dot_int(a);
                match sense {
                    Sense::AtLeastZero => !v.is_negative(),
                    Sense::AtMostZero => !v.is_positive(),
                }
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Vec<Vec<i64>> {
        vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]
    }

    fn star() -> Vec<Vec<i64>> {
        vec![vec![1, 0, 0, 1], vec![0, 1, 0, 1], vec![0, 0, 1, 1]]
    }

    #[test]
    fn star_has_three_facets() {
        let f = brute_force_facets(&star(), OracleGate::default()).unwrap();
        assert_eq!(f.len(), 3);
        let ons: Vec<_> = f.iter().map(|f| f.generators_on.clone()).collect();
        assert_eq!(ons, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        // each facet kills exactly one leaf's edge: x_leaf >= 0 modulo the span
        for f in &f {
            let off: Vec<usize> = (0..3).filter(|k| !f.generators_on.contains(k)).collect();
            assert_eq!(off.len(), 1);
        }
    }

    #[test]
    fn ray_has_no_facets() {
        assert!(brute_force_facets(&[vec![1, 1]], OracleGate::default()).unwrap().is_empty());
        assert!(brute_force_facets(&[], OracleGate::default()).unwrap().is_empty());
    }

    #[test]
    fn triangle_is_simplicial() {
        let f = brute_force_facets(&triangle(), OracleGate::default()).unwrap();
        assert_eq!(f.len(), 3);
        let ons: Vec<_> = f.iter().map(|f| f.generators_on.clone()).collect();
        assert_eq!(ons, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn facet_system_recontains_generators() {
        for gens in [triangle(), star(), vec![vec![1, 1]]] {
            let n = gens[0].len();
            let sys = InequalitySystem::from_generators(&gens, n, OracleGate::default()).unwrap();
            for g in &gens {
                assert!(sys.contains(&RationalVector::from_integers(g)));
            }
            let neg: Vec<i64> = gens[0].iter().map(|x| -x).collect();
            assert!(!sys.contains(&RationalVector::from_integers(&neg)));
        }
    }

    #[test]
    fn gate_refuses_large_inputs() {
        let gens = vec![vec![1; 11]];
        assert!(matches!(
            brute_force_facets(&gens, OracleGate::default()),
            Err(Error::OracleGate { what: "dimension", .. })
        ));
    }
}
