//! Fraction-free elimination over `i128` with overflow checks.
//!
//! This is deliberately separate from the rational elimination used by the library so
//! that oracle answers do not share an arithmetic path with what they check.

use num_integer::Integer;

use crate::error::{Error, Result};

pub(crate) fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

pub(crate) fn sub(a: i128, b: i128) -> Result<i128> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

pub(crate) fn add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow)
}

/// Divides a row by the gcd of its entries.
pub(crate) fn normalize(row: &mut [i128]) {
    let g = row.iter().fold(0i128, |acc, &x| acc.gcd(&x));
    if g > 1 {
        for x in row.iter_mut() {
            *x /= g;
        }
    }
}

/// `p * target - f * pivot`, gcd-normalized: clears `target[col]`.
fn eliminate(target: &mut [i128], pivot: &[i128], col: usize) -> Result<()> {
    let p = pivot[col];
    let f = target[col];
    if f == 0 {
        return Ok(());
    }
    let (p, f) = {
        let g = p.gcd(&f);
        (p / g, f / g)
    };
    for (t, &q) in target.iter_mut().zip(pivot) {
        *t = sub(mul(p, *t)?, mul(f, q)?)?;
    }
    normalize(target);
    Ok(())
}

/// Reduced echelon form, fraction-free. Returns the nonzero rows and their pivot
/// columns; every pivot column is zero outside its own row.
pub(crate) fn reduced_echelon(rows: &[Vec<i128>], dim: usize) -> Result<(Vec<Vec<i128>>, Vec<usize>)> {
    let mut rows: Vec<Vec<i128>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..dim {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank {
                eliminate(row, &pivot, col)?;
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    Ok((rows, pivots))
}

pub(crate) fn rank(rows: &[Vec<i128>], dim: usize) -> Result<usize> {
    Ok(reduced_echelon(rows, dim)?.1.len())
}

/// Integer basis of `{z : row . z = 0 for every row}`.
pub(crate) fn nullspace(rows: &[Vec<i128>], dim: usize) -> Result<Vec<Vec<i128>>> {
    let (echelon, pivots) = reduced_echelon(rows, dim)?;
    let lcm = echelon
        .iter()
        .zip(&pivots)
        .fold(1i128, |acc, (row, &c)| acc.lcm(&row[c]));
    let mut basis = Vec::new();
    for free in (0..dim).filter(|c| !pivots.contains(c)) {
        let mut z = vec![0i128; dim];
        z[free] = lcm;
        for (row, &c) in echelon.iter().zip(&pivots) {
            // row[c] * z[c] + row[free] * lcm = 0
            z[c] = -mul(row[free], lcm / row[c])?;
        }
        normalize(&mut z);
        basis.push(z);
    }
    Ok(basis)
}

/// Incremental echelon basis for independence tests.
#[derive(Clone, Default)]
pub(crate) struct EchelonBasis {
    rows: Vec<(usize, Vec<i128>)>,
}

impl EchelonBasis {
    /// Reduces `v` against the basis; `Some(reduced)` if it is independent.
    pub(crate) fn reduce(&self, v: &[i128]) -> Result<Option<(usize, Vec<i128>)>> {
        let mut v = v.to_vec();
        for (col, row) in &self.rows {
            eliminate(&mut v, row, *col)?;
        }
        Ok(v.iter().position(|&x| x != 0).map(|c| (c, v)))
    }

    pub(crate) fn push(&mut self, reduced: (usize, Vec<i128>)) {
        self.rows.push(reduced);
    }
}

pub(crate) fn widen(v: &[i64]) -> Vec<i128> {
    v.iter().map(|&x| x as i128).collect()
}

pub(crate) fn dot(a: &[i128], b: &[i128]) -> Result<i128> {
    a.iter()
        .zip(b)
        .try_fold(0i128, |acc, (&x, &y)| add(acc, mul(x, y)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks() {
        let tri = vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]];
        assert_eq!(rank(&tri, 3).unwrap(), 3);
        let c4 = vec![
            vec![1, 1, 0, 0],
            vec![0, 1, 1, 0],
            vec![0, 0, 1, 1],
            vec![1, 0, 0, 1],
        ];
        assert_eq!(rank(&c4, 4).unwrap(), 3);
    }

    #[test]
    fn nullspace_of_four_cycle() {
        let c4 = vec![
            vec![1, 1, 0, 0],
            vec![0, 1, 1, 0],
            vec![0, 0, 1, 1],
            vec![1, 0, 0, 1],
        ];
        let ns = nullspace(&c4, 4).unwrap();
        assert_eq!(ns.len(), 1);
        for row in &c4 {
            assert_eq!(dot(row, &ns[0]).unwrap(), 0);
        }
        assert_eq!(ns[0].iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn nullspace_general() {
        let rows = vec![vec![2, 4, 6, 8], vec![1, 3, 5, 7]];
        let ns = nullspace(&rows, 4).unwrap();
        assert_eq!(ns.len(), 2);
        for z in &ns {
            for row in &rows {
                assert_eq!(dot(row, z).unwrap(), 0);
            }
        }
        assert_eq!(rank(&ns, 4).unwrap(), 2);
    }

    #[test]
    fn incremental_basis() {
        let mut b = EchelonBasis::default();
        for v in [vec![1, 1, 0], vec![0, 1, 1]] {
            let r = b.reduce(&v).unwrap().unwrap();
            b.push(r);
        }
        assert!(b.reduce(&[1, 2, 1]).unwrap().is_none());
        assert!(b.reduce(&[1, 0, 1]).unwrap().is_some());
    }
}
