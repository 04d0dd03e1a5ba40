//! Exact rank over the rationals of sparse integer matrices.
//!
//! Rows are reduced by fraction-free elimination: a row whose leading column
//! already owns a pivot is replaced by `p·row − a·pivot` (with `p`, `a` the
//! two leading entries divided by their gcd) and then divided by its content.
//! Only nonzero scalings are applied, so the rank over Q is preserved. The
//! fast path uses checked `i64` arithmetic and restarts in `BigInt` on
//! overflow.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A sparse row: `(column, value)` pairs, strictly increasing columns, no zeros.
pub type SparseRow = Vec<(usize, i64)>;

trait Scalar: Clone + PartialEq + Zero + One {
    /// `p·x − a·y`, or `None` on overflow.
    fn mul_sub(p: &Self, x: &Self, a: &Self, y: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Self;
    fn from_i64(v: i64) -> Self;
}

impl Scalar for i64 {
    fn mul_sub(p: &i64, x: &i64, a: &i64, y: &i64) -> Option<i64> {
        p.checked_mul(*x)?.checked_sub(a.checked_mul(*y)?)
    }
    fn gcd(&self, other: &i64) -> i64 {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &i64) -> i64 {
        self / d
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> i64 {
        -self
    }
    fn from_i64(v: i64) -> i64 {
        v
    }
}

impl Scalar for BigInt {
    fn mul_sub(p: &BigInt, x: &BigInt, a: &BigInt, y: &BigInt) -> Option<BigInt> {
        Some(p * x - a * y)
    }
    fn gcd(&self, other: &BigInt) -> BigInt {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &BigInt) -> BigInt {
        self / d
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> BigInt {
        -self
    }
    fn from_i64(v: i64) -> BigInt {
        BigInt::from(v)
    }
}

struct Overflow;

/// Rank over Q of the matrix with the given sparse rows.
pub fn sparse_rank(rows: &[SparseRow]) -> usize {
    match eliminate::<i64>(rows) {
        Ok(r) => r,
        Err(Overflow) => eliminate::<BigInt>(rows).unwrap_or_else(|_| unreachable!()),
    }
}

/// Rank over Q of a dense integer matrix.
pub fn dense_rank(matrix: &[Vec<i64>]) -> usize {
    let rows: Vec<SparseRow> = matrix
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, v)| **v != 0)
                .map(|(c, v)| (c, *v))
                .collect()
        })
        .collect();
    sparse_rank(&rows)
}

fn eliminate<T: Scalar>(rows: &[SparseRow]) -> Result<usize, Overflow> {
    let mut pivots: HashMap<usize, Vec<(usize, T)>> = HashMap::new();
    for row in rows {
        let mut cur: Vec<(usize, T)> = row.iter().map(|(c, v)| (*c, T::from_i64(*v))).collect();
        while let Some(&(lead, _)) = cur.first() {
            match pivots.get(&lead) {
                None => {
                    normalize(&mut cur);
                    pivots.insert(lead, cur);
                    break;
                }
                Some(piv) => cur = cancel_lead(&cur, piv)?,
            }
        }
    }
    Ok(pivots.len())
}

/// Combination of `row` and `piv` (same leading column) with that column cleared.
fn cancel_lead<T: Scalar>(row: &[(usize, T)], piv: &[(usize, T)]) -> Result<Vec<(usize, T)>, Overflow> {
    let a = &row[0].1;
    let p = &piv[0].1;
    let g = a.gcd(p);
    let a = a.div_exact(&g);
    let p = p.div_exact(&g);
    let zero = T::zero();
    let mut out = Vec::with_capacity(row.len() + piv.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < piv.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = piv.get(j).map_or(usize::MAX, |e| e.0);
        let (col, x, y) = if ci < cj {
            i += 1;
            (ci, &row[i - 1].1, &zero)
        } else if cj < ci {
            j += 1;
            (cj, &zero, &piv[j - 1].1)
        } else {
            i += 1;
            j += 1;
            (ci, &row[i - 1].1, &piv[j - 1].1)
        };
        let v = T::mul_sub(&p, x, &a, y).ok_or(Overflow)?;
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    normalize(&mut out);
    Ok(out)
}

fn normalize<T: Scalar>(row: &mut [(usize, T)]) {
    let Some(first) = row.first() else { return };
    let mut g = first.1.clone();
    for (_, v) in row.iter().skip(1) {
        if g.is_one() {
            break;
        }
        g = g.gcd(v);
    }
    if row[0].1.is_negative() {
        g = g.neg();
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = v.div_exact(&g);
        }
    }
}
