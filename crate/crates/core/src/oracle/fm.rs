//! Cone membership by eliminating the multipliers of `Σ λ_j g_j = x, λ >= 0`.
//!
//! Equalities are used first as substitutions. What remains is a pure inequality
//! system `a . λ <= b` handled by Fourier–Motzkin elimination with two prunings:
//! rows with identical coefficients keep only the smallest right-hand side, and
//! Chernikov's rule drops any row combined from more than `t + 1` original rows after
//! `t` eliminations.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::integer::{add, mul, sub};
use super::OracleGate;
use crate::error::{Error, Result};
use crate::rational::RationalVector;

#[derive(Clone)]
struct Row {
    coeffs: Vec<i128>,
    rhs: i128,
    /// original inequality rows this one was combined from
    history: u64,
}

impl Row {
    fn normalize(&mut self) {
        let g = self
            .coeffs
            .iter()
            .fold(self.rhs.abs(), |acc, &x| acc.gcd(&x));
        if g > 1 {
            for x in &mut self.coeffs {
                *x /= g;
            }
            self.rhs /= g;
        }
    }

    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// `p * target - f * pivot` for equality `pivot` with `pivot[col] = p > 0`.
fn substitute(target: &mut Row, pivot: &Row, col: usize) -> Result<()> {
    let f = target.coeffs[col];
    if f == 0 {
        return Ok(());
    }
    let p = pivot.coeffs[col];
    let g = p.gcd(&f);
    let (p, f) = (p / g, f / g);
    for (t, &q) in target.coeffs.iter_mut().zip(&pivot.coeffs) {
        *t = sub(mul(p, *t)?, mul(f, q)?)?;
    }
    target.rhs = sub(mul(p, target.rhs)?, mul(f, pivot.rhs)?)?;
    target.normalize();
    Ok(())
}

/// Scales `x` by the lcm of its denominators.
fn integral_target(x: &RationalVector) -> Result<Vec<i128>> {
    let lcm = x
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    x.iter()
        .map(|c| {
            (c.numer() * (&lcm / c.denom()))
                .to_i128()
                .ok_or(Error::Overflow)
        })
        .collect()
}

/// Whether `x` is a nonnegative combination of `generators`.
pub fn fm_membership(generators: &[Vec<i64>], x: &RationalVector, gate: OracleGate) -> Result<bool> {
    let n = x.len();
    if let Some(bad) = generators.iter().find(|g| g.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.len(),
        });
    }
    gate.check(generators.len(), n)?;
    let q = generators.len();
    let target = integral_target(x)?;

    let mut equalities: Vec<Row> = (0..n)
        .map(|i| Row {
            coeffs: generators.iter().map(|g| g[i] as i128).collect(),
            rhs: target[i],
            history: 0,
        })
        .collect();
    // -λ_j <= 0
    let mut rows: Vec<Row> = (0..q)
        .map(|j| {
            let mut coeffs = vec![0; q];
            coeffs[j] = -1;
            Row {
                coeffs,
                rhs: 0,
                history: 1 << j,
            }
        })
        .collect();

    while let Some(mut pivot) = equalities.pop() {
        let Some(col) = pivot.coeffs.iter().position(|&c| c != 0) else {
            if pivot.rhs != 0 {
                return Ok(false);
            }
            continue;
        };
        if pivot.coeffs[col] < 0 {
            for c in &mut pivot.coeffs {
                *c = -*c;
            }
            pivot.rhs = -pivot.rhs;
        }
        for e in &mut equalities {
            substitute(e, &pivot, col)?;
        }
        for r in &mut rows {
            substitute(r, &pivot, col)?;
        }
    }

    let mut eliminated = 0u32;
    loop {
        if rows.iter().any(|r| r.is_trivial() && r.rhs < 0) {
            return Ok(false);
        }
        rows.retain(|r| !r.is_trivial());
        rows = prune(rows, eliminated)?;
        if rows.is_empty() {
            return Ok(true);
        }
        let var = pick_variable(&rows, q);
        let (mut pos, mut neg, mut keep) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            match r.coeffs[var].signum() {
                1 => pos.push(r),
                -1 => neg.push(r),
                _ => keep.push(r),
            }
        }
        for p in &pos {
            for m in &neg {
                keep.push(combine(p, m, var)?);
            }
        }
        rows = keep;
        eliminated += 1;
    }
}

/// Positive combination of `p` (coefficient > 0 on `var`) and `m` (< 0) cancelling `var`.
fn combine(p: &Row, m: &Row, var: usize) -> Result<Row> {
    let a = p.coeffs[var];
    let b = -m.coeffs[var];
    let g = a.gcd(&b);
    let (a, b) = (a / g, b / g);
    let coeffs = p
        .coeffs
        .iter()
        .zip(&m.coeffs)
        .map(|(&x, &y)| add(mul(b, x)?, mul(a, y)?))
        .collect::<Result<Vec<_>>>()?;
    let mut row = Row {
        coeffs,
        rhs: add(mul(b, p.rhs)?, mul(a, m.rhs)?)?,
        history: p.history | m.history,
    };
    row.coeffs[var] = 0;
    row.normalize();
    Ok(row)
}

fn prune(rows: Vec<Row>, eliminated: u32) -> Result<Vec<Row>> {
    // keyed by the direction of the coefficient vector; value scaled by that gcd
    let mut best: HashMap<Vec<i128>, (Row, i128)> = HashMap::new();
    let mut order = Vec::new();
    for r in rows {
        if r.history.count_ones() > eliminated + 1 {
            continue;
        }
        let scale = r.coeffs.iter().fold(0i128, |acc, &x| acc.gcd(&x));
        let key: Vec<i128> = r.coeffs.iter().map(|&x| x / scale).collect();
        match best.get_mut(&key) {
            // r.rhs / scale < e.rhs / e_scale
            Some((existing, e_scale)) => {
                if mul(r.rhs, *e_scale)? < mul(existing.rhs, scale)? {
                    *existing = r;
                    *e_scale = scale;
                }
            }
            None => {
                order.push(key.clone());
                best.insert(key, (r, scale));
            }
        }
    }
    Ok(order
        .into_iter()
        .map(|k| best.remove(&k).expect("key recorded").0)
        .collect())
}

/// The variable whose elimination creates the fewest new rows; lowest index on ties.
fn pick_variable(rows: &[Row], q: usize) -> usize {
    (0..q)
        .filter(|&j| rows.iter().any(|r| r.coeffs[j] != 0))
        .min_by_key(|&j| {
            let p = rows.iter().filter(|r| r.coeffs[j] > 0).count();
            let m = rows.iter().filter(|r| r.coeffs[j] < 0).count();
            (p * m, j)
        })
        .expect("some row is nontrivial")
}
