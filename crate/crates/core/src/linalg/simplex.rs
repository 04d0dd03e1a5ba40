//! Dense two-phase simplex over exact rationals, Bland's pivoting rule.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rational, point: Vec<Rational> },
}

pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Maximize `c·x` subject to `A x = b`, `x ≥ 0`.
pub fn maximize(c: &[Rational], a: &[Vec<Rational>], b: &[Rational]) -> LpOutcome {
    let n = c.len();
    debug_assert!(a.iter().all(|r| r.len() == n));
    debug_assert_eq!(a.len(), b.len());
    let mut t = Tableau::phase_one(a, b, n);
    t.run(false);
    if t.obj[t.width()].is_negative() {
        return LpOutcome::Infeasible;
    }
    t.expel_artificials(n);
    t.drop_artificial_columns(n);
    t.install_objective(c);
    if !t.run(true) {
        return LpOutcome::Unbounded;
    }
    let mut point = vec![Rational::zero(); n];
    for (row, &var) in t.basis.iter().enumerate() {
        point[var] = t.rows[row][n].clone();
    }
    LpOutcome::Optimal {
        value: t.obj[n].clone(),
        point,
    }
}

/// Whether `{x ≥ 0 : A x = b}` is nonempty.
pub fn feasible(a: &[Vec<Rational>], b: &[Rational]) -> bool {
    let n = a.first().map_or(0, Vec::len);
    let mut t = Tableau::phase_one(a, b, n);
    t.run(false);
    !t.obj[t.width()].is_negative()
}

struct Tableau {
    /// Each row holds the coefficients followed by the right-hand side.
    rows: Vec<Vec<Rational>>,
    /// Reduced costs `z_j − c_j`; last entry is the objective value.
    obj: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn width(&self) -> usize {
        self.obj.len() - 1
    }

    fn phase_one(a: &[Vec<Rational>], b: &[Rational], n: usize) -> Tableau {
        let m = a.len();
        let width = n + m;
        let mut rows = Vec::with_capacity(m);
        for (i, (ar, br)) in a.iter().zip(b).enumerate() {
            let flip = br.is_negative();
            let mut row = Vec::with_capacity(width + 1);
            row.extend(ar.iter().map(|v| if flip { -v } else { v.clone() }));
            row.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
            row.push(if flip { -br } else { br.clone() });
            rows.push(row);
        }
        let mut obj = vec![Rational::zero(); width + 1];
        for row in &rows {
            for j in 0..n {
                obj[j] -= &row[j];
            }
            obj[width] -= &row[width];
        }
        Tableau {
            rows,
            obj,
            basis: (n..n + m).collect(),
        }
    }

    /// Pivot to optimality. Returns false if the objective is unbounded.
    fn run(&mut self, report_unbounded: bool) -> bool {
        let width = self.width();
        loop {
            let Some(enter) = (0..width).find(|&j| self.obj[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[width] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((row, _)) => self.pivot(row, enter),
                None => {
                    debug_assert!(report_unbounded, "phase one is always bounded");
                    return false;
                }
            }
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *v -= &f * p;
                    }
                }
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for (v, p) in self.obj.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Pivot zero-level artificials out of the basis; drop redundant rows.
    fn expel_artificials(&mut self, n: usize) {
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] < n {
                r += 1;
                continue;
            }
            match (0..n).find(|&j| !self.rows[r][j].is_zero()) {
                Some(j) => {
                    self.pivot(r, j);
                    r += 1;
                }
                None => {
                    self.rows.remove(r);
                    self.basis.remove(r);
                }
            }
        }
    }

    fn drop_artificial_columns(&mut self, n: usize) {
        let width = self.width();
        for row in self.rows.iter_mut() {
            let rhs = row[width].clone();
            row.truncate(n);
            row.push(rhs);
        }
    }

    fn install_objective(&mut self, c: &[Rational]) {
        let n = c.len();
        let mut obj: Vec<Rational> = c.iter().map(|v| -v).collect();
        obj.push(Rational::zero());
        for (row, &var) in self.rows.iter().zip(&self.basis) {
            let cb = &c[var];
            if cb.is_zero() {
                continue;
            }
            for j in 0..=n {
                obj[j] += cb * &row[j];
            }
        }
        self.obj = obj;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|x| rat(*x)).collect()
    }

    #[test]
    fn simple_optimum() {
        // max x + y, x + 2y + s = 4, 3x + y + t = 6
        let out = maximize(&r(&[1, 1, 0, 0]), &[r(&[1, 2, 1, 0]), r(&[3, 1, 0, 1])], &r(&[4, 6]));
        match out {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, Rational::new(14.into(), 5.into())),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        assert_eq!(maximize(&r(&[0, 0]), &[r(&[1, 1])], &r(&[-1])), LpOutcome::Infeasible);
        assert_eq!(maximize(&r(&[1, 0]), &[r(&[1, -1])], &r(&[0])), LpOutcome::Unbounded);
        assert!(feasible(&[r(&[1, -1])], &r(&[-3])));
        assert!(!feasible(&[r(&[1, 1])], &r(&[-3])));
    }

    #[test]
    fn redundant_rows_are_handled() {
        let out = maximize(&r(&[1, 0]), &[r(&[1, 1]), r(&[2, 2])], &r(&[3, 6]));
        assert!(matches!(out, LpOutcome::Optimal { value, .. } if value == rat(3)));
    }
}
