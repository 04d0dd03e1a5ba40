//! Integer column echelon form with a unimodular transform, used to
//! parametrize the integer solutions of `A w = b` as `w = w0 + K z`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// `A U = E` with `U` unimodular and `E` in column echelon form: the first
/// `rank` columns of `E` have strictly increasing leading rows, the rest are
/// zero.
#[derive(Debug, Clone)]
pub struct ColumnEchelon {
    echelon: Vec<Vec<BigInt>>,
    transform: Vec<Vec<BigInt>>,
    pivot_rows: Vec<usize>,
}

impl ColumnEchelon {
    pub fn new(a: &[Vec<i64>], cols: usize) -> ColumnEchelon {
        let rows = a.len();
        let mut e: Vec<Vec<BigInt>> = a
            .iter()
            .map(|r| r.iter().map(|v| BigInt::from(*v)).collect())
            .collect();
        let mut u: Vec<Vec<BigInt>> = (0..cols)
            .map(|i| {
                (0..cols)
                    .map(|j| if i == j { BigInt::from(1) } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        let mut pivot_rows = Vec::new();
        let mut col = 0;
        for row in 0..rows {
            if col == cols {
                break;
            }
            loop {
                // smallest nonzero |entry| in this row among the active columns
                let best = (col..cols)
                    .filter(|&j| !e[row][j].is_zero())
                    .min_by(|&x, &y| e[row][x].abs().cmp(&e[row][y].abs()));
                let Some(best) = best else { break };
                swap_cols(&mut e, &mut u, col, best);
                let mut done = true;
                for j in col + 1..cols {
                    if e[row][j].is_zero() {
                        continue;
                    }
                    let q = e[row][j].div_floor(&e[row][col]);
                    add_col_multiple(&mut e, &mut u, j, col, &(-q));
                    if !e[row][j].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if !e[row][col].is_zero() {
                pivot_rows.push(row);
                col += 1;
            }
        }
        ColumnEchelon {
            echelon: e,
            transform: u,
            pivot_rows,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    pub fn cols(&self) -> usize {
        self.transform.len()
    }

    /// Absolute product of the pivot entries; `|det A|` when `A` is square of full rank.
    pub fn pivot_product(&self) -> BigInt {
        self.pivot_rows
            .iter()
            .enumerate()
            .map(|(k, &row)| self.echelon[row][k].abs())
            .product()
    }

    /// Columns of `U` past the rank: a Z-basis of the integer kernel of `A`,
    /// returned as an `cols × (cols − rank)` matrix.
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        let r = self.rank();
        self.transform.iter().map(|row| row[r..].to_vec()).collect()
    }

    /// Some integer `w` with `A w = b`, or `None` if there is none.
    pub fn particular_solution(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let r = self.rank();
        let mut y: Vec<BigInt> = Vec::with_capacity(r);
        let mut next_pivot = 0;
        for (row, target) in b.iter().enumerate() {
            let partial: BigInt = (0..y.len()).map(|j| &self.echelon[row][j] * &y[j]).sum();
            if next_pivot < r && self.pivot_rows[next_pivot] == row {
                let (q, rem) = (target - &partial).div_rem(&self.echelon[row][next_pivot]);
                if !rem.is_zero() {
                    return None;
                }
                y.push(q);
                next_pivot += 1;
            } else if partial != *target {
                return None;
            }
        }
        Some(
            self.transform
                .iter()
                .map(|urow| urow[..r].iter().zip(&y).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }
}

fn swap_cols(e: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in e.iter_mut().chain(u.iter_mut()) {
        row.swap(a, b);
    }
}

/// column `dst += f · column src`
fn add_col_multiple(e: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], dst: usize, src: usize, f: &BigInt) {
    for row in e.iter_mut().chain(u.iter_mut()) {
        if !row[src].is_zero() {
            let delta = &row[src] * f;
            row[dst] += delta;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul(a: &[Vec<i64>], w: &[BigInt]) -> Vec<BigInt> {
        a.iter()
            .map(|r| r.iter().zip(w).map(|(x, y)| BigInt::from(*x) * y).sum())
            .collect()
    }

    #[test]
    fn kernel_and_particular_solution() {
        let a = vec![vec![2, 3, 5], vec![1, 0, 4]];
        let ce = ColumnEchelon::new(&a, 3);
        assert_eq!(ce.rank(), 2);
        let k = ce.kernel();
        let kv: Vec<BigInt> = k.iter().map(|r| r[0].clone()).collect();
        assert!(mul(&a, &kv).iter().all(Zero::is_zero));
        assert!(!kv.iter().all(Zero::is_zero));
        let b = vec![BigInt::from(10), BigInt::from(5)];
        let w = ce.particular_solution(&b).unwrap();
        assert_eq!(mul(&a, &w), b);
        // the column lattice has index 3 in Z^2
        assert!(ce.particular_solution(&[BigInt::from(1), BigInt::from(0)]).is_none());
    }

    #[test]
    fn no_integer_solution() {
        let a = vec![vec![2, 4]];
        let ce = ColumnEchelon::new(&a, 2);
        assert!(ce.particular_solution(&[BigInt::from(3)]).is_none());
        assert!(ce.particular_solution(&[BigInt::from(6)]).is_some());
    }

    #[test]
    fn rank_deficient_rows_checked_for_consistency() {
        let a = vec![vec![1, 1], vec![2, 2]];
        let ce = ColumnEchelon::new(&a, 2);
        assert_eq!(ce.rank(), 1);
        assert!(ce.particular_solution(&[BigInt::from(1), BigInt::from(3)]).is_none());
        assert!(ce.particular_solution(&[BigInt::from(1), BigInt::from(2)]).is_some());
    }
}
