//! Exact rational vectors and Gaussian elimination.

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Vertex-indexed vector of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalVector(Vec<BigRational>);

impl RationalVector {
    pub fn new(coords: Vec<BigRational>) -> Self {
        RationalVector(coords)
    }

    pub fn zeros(n: usize) -> Self {
        RationalVector(vec![BigRational::zero(); n])
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        RationalVector(coords.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &BigRational> {
        self.0.iter()
    }

    /// Inner product with an integer vector of the same length.
    pub fn dot_int(&self, normal: &[i64]) -> BigRational {
        self.0
            .iter()
            .zip(normal)
            .filter(|(_, &a)| a != 0)
            .fold(BigRational::zero(), |acc, (x, &a)| {
                acc + x * BigRational::from_integer(a.into())
            })
    }

    pub fn dot(&self, other: &RationalVector) -> BigRational {
        self.0
            .iter()
            .zip(&other.0)
            .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// `self + scale * other`.
    pub fn add_scaled(&self, scale: &BigRational, other: &RationalVector) -> RationalVector {
        RationalVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + scale * b)
                .collect(),
        )
    }

    /// The coordinates as integers, if they all are.
    pub fn to_integers(&self) -> Result<Vec<i64>> {
        self.0
            .iter()
            .enumerate()
            .map(|(index, c)| {
                if !c.is_integer() {
                    return Err(Error::NonInteger { index });
                }
                i64::try_from(c.to_integer()).map_err(|_| Error::Overflow)
            })
            .collect()
    }

    /// Parses a comma-separated list of exact rationals such as `3/2,0,-1,0.25`.
    pub fn parse_list(text: &str) -> Result<RationalVector> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(RationalVector(Vec::new()));
        }
        text.split(',')
            .map(|t| parse_rational(t.trim()))
            .collect::<Result<Vec<_>>>()
            .map(RationalVector)
    }
}

impl Index<usize> for RationalVector {
    type Output = BigRational;

    fn index(&self, i: usize) -> &BigRational {
        &self.0[i]
    }
}

impl From<Vec<BigRational>> for RationalVector {
    fn from(v: Vec<BigRational>) -> Self {
        RationalVector(v)
    }
}

impl FromStr for RationalVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RationalVector::parse_list(s)
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Parses an integer, a fraction `p/q`, or a finite decimal `-1.25`, exactly.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let invalid = || Error::InvalidRational {
        text: text.to_owned(),
    };
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| invalid())?;
        let den: BigInt = den.trim().parse().map_err(|_| invalid())?;
        if den.is_zero() {
            return Err(invalid());
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        let negative = whole.starts_with('-');
        let digits_ok = |s: &str| s.chars().all(|c| c.is_ascii_digit());
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if frac.is_empty() && whole_digits.is_empty()
            || !digits_ok(frac)
            || !digits_ok(whole_digits)
            || whole.len() > whole_digits.len() + 1
        {
            return Err(invalid());
        }
        let int_part: BigInt = if whole_digits.is_empty() {
            BigInt::zero()
        } else {
            whole_digits.parse().map_err(|_| invalid())?
        };
        let frac_part: BigInt = if frac.is_empty() {
            BigInt::zero()
        } else {
            frac.parse().map_err(|_| invalid())?
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let magnitude = BigRational::new(int_part * &scale + frac_part, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    text.parse::<BigInt>()
        .map(BigRational::from_integer)
        .map_err(|_| invalid())
}

/// Rank over the rationals, by exact Gaussian elimination.
pub fn rational_rank(vectors: &[RationalVector]) -> Result<usize> {
    let Some(first) = vectors.first() else {
        return Ok(0);
    };
    let dim = first.len();
    if let Some(bad) = vectors.iter().find(|v| v.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: bad.len(),
        });
    }
    let rows: Vec<Vec<BigRational>> = vectors.iter().map(|v| v.0.clone()).collect();
    Ok(row_echelon(rows, dim).len())
}

/// Rank of integer vectors, converted exactly.
pub fn integer_rank(vectors: &[Vec<i64>]) -> Result<usize> {
    let converted: Vec<RationalVector> = vectors
        .iter()
        .map(|v| RationalVector::from_integers(v))
        .collect();
    rational_rank(&converted)
}

/// Reduces `rows` to row echelon form and returns the nonzero rows, each scaled so its
/// pivot is one.
pub(crate) fn row_echelon(mut rows: Vec<Vec<BigRational>>, dim: usize) -> Vec<Vec<BigRational>> {
    let mut rank = 0;
    for col in 0..dim {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].recip();
        for x in rows[rank].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x -= &factor * p;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    rows
}
