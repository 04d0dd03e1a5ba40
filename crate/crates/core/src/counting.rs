//! Neg-group cardinalities `|(α,σ)|`: the number of `u ∈ Z^n` of class `α`
//! whose negative entries are exactly the coordinates in `σ`.
//!
//! Substituting `u_i = −1 − w_i` for `i ∈ σ` and `u_i = w_i` otherwise turns
//! the question into counting `w ≥ 0` with `A w = β`, where column `i` of `A`
//! is `∓q_i` and `β = α + Σ_{i∈σ} q_i`.
//!
//! Two independent routes are implemented:
//! * [`NegGroupCounter::count`] parametrizes the integer solutions of
//!   `A w = β` as `w0 + K z` and walks the `z` lattice, bounding each
//!   coordinate by exact LP over the remaining ones (the innermost coordinate
//!   is bounded directly from the inequalities).
//! * [`enumerate_neg_group`] walks the `w` coordinates in order with exact
//!   LP bounds, producing points in lexicographic order of `u`.
//!
//! A group is infinite iff `A` has a nonzero nonnegative kernel vector and
//! the system has at least one nonnegative integer solution. Let `U` be the
//! coordinates on which some such kernel vector is positive; the others are
//! bounded on the solution polyhedron. A solution exists iff some admissible
//! integer choice of the bounded coordinates leaves `A_U y = β − A_B v`
//! solvable over Z: adding a large multiple of a kernel vector positive on
//! all of `U` then makes `y` nonnegative.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, simplex::rat, ColumnEchelon, LpOutcome, Rational};
use crate::model::{DegreeVector, DivisorClass, ToricVarietyModel};
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CountResult {
    Finite(BigUint),
    Infinite,
}

impl CountResult {
    pub fn is_infinite(&self) -> bool {
        matches!(self, CountResult::Infinite)
    }

    pub fn finite(&self) -> Option<&BigUint> {
        match self {
            CountResult::Finite(v) => Some(v),
            CountResult::Infinite => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.finite().is_some_and(Zero::is_zero)
    }
}

impl fmt::Display for CountResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountResult::Finite(v) => write!(f, "{v}"),
            CountResult::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegGroupQuery {
    pub alpha: DivisorClass,
    pub sigma: VertexSet,
}

impl NegGroupQuery {
    pub fn new(alpha: DivisorClass, sigma: VertexSet) -> Self {
        NegGroupQuery { alpha, sigma }
    }
}

/// Whether `{w ≥ 0, w ≠ 0 : A w = 0}` is nonempty, decided by maximizing
/// `Σ w` over `A w = 0`, `0 ≤ w ≤ 1`.
pub fn recession_test(a: &[Vec<i64>]) -> bool {
    let n = a.first().map_or(0, Vec::len);
    if n == 0 {
        return false;
    }
    // variables: w (n), then slacks s with w + s = 1
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(a.len() + n);
    let mut rhs: Vec<Rational> = Vec::with_capacity(a.len() + n);
    for r in a {
        let mut row: Vec<Rational> = r.iter().map(|v| rat(*v)).collect();
        row.resize(2 * n, Rational::zero());
        rows.push(row);
        rhs.push(Rational::zero());
    }
    for i in 0..n {
        let mut row = vec![Rational::zero(); 2 * n];
        row[i] = Rational::one();
        row[n + i] = Rational::one();
        rows.push(row);
        rhs.push(Rational::one());
    }
    let mut c = vec![Rational::one(); n];
    c.resize(2 * n, Rational::zero());
    match linalg::maximize(&c, &rows, &rhs) {
        LpOutcome::Optimal { value, .. } => value.is_positive(),
        // the feasible region is a nonempty polytope
        LpOutcome::Infeasible | LpOutcome::Unbounded => unreachable!("bounded and feasible"),
    }
}

/// Coordinates on which some `w ≥ 0`, `w ≠ 0` with `A w = 0` is positive.
fn recession_support(a: &[Vec<i64>]) -> VertexSet {
    let n = a.first().map_or(0, Vec::len);
    if n == 0 || !recession_test(a) {
        return VertexSet::EMPTY;
    }
    // maximize w_i subject to A w = 0, w ≥ 0, w_i + s = 1
    let mut rows: Vec<Vec<Rational>> = a
        .iter()
        .map(|r| {
            let mut row: Vec<Rational> = r.iter().map(|v| rat(*v)).collect();
            row.push(Rational::zero());
            row
        })
        .collect();
    let mut rhs = vec![Rational::zero(); a.len()];
    rows.push(vec![Rational::zero(); n + 1]);
    rhs.push(Rational::one());
    let mut support = VertexSet::EMPTY;
    for i in 0..n {
        if support.contains(i) {
            continue;
        }
        let cap = rows.last_mut().expect("cap row");
        cap.iter_mut().for_each(|v| *v = Rational::zero());
        cap[i] = Rational::one();
        cap[n] = Rational::one();
        let mut c = vec![Rational::zero(); n + 1];
        c[i] = Rational::one();
        match linalg::maximize(&c, &rows, &rhs) {
            LpOutcome::Optimal { value, point } if value.is_positive() => {
                // every coordinate positive in this witness is unbounded too
                for (j, v) in point.iter().take(n).enumerate() {
                    if v.is_positive() {
                        support = support.with(j);
                    }
                }
            }
            LpOutcome::Optimal { .. } => {}
            LpOutcome::Infeasible | LpOutcome::Unbounded => unreachable!("bounded and feasible"),
        }
    }
    support
}

/// Integer range of `w_target` over `{w ≥ 0 : A w = β}` with the `pinned`
/// coordinates fixed, or `None` if that set is empty. `w_target` must be
/// bounded there.
fn coordinate_range(
    a: &[Vec<i64>],
    beta: &[BigInt],
    pinned: &[(usize, BigInt)],
    target: usize,
) -> Option<(BigInt, BigInt)> {
    let n = a.first().map_or(0, Vec::len);
    let free: Vec<usize> = (0..n).filter(|i| pinned.iter().all(|(p, _)| p != i)).collect();
    let rows: Vec<Vec<Rational>> = a.iter().map(|r| free.iter().map(|&i| rat(r[i])).collect()).collect();
    let rhs: Vec<Rational> = a
        .iter()
        .zip(beta)
        .map(|(r, b)| {
            let used: BigInt = pinned.iter().map(|(i, v)| BigInt::from(r[*i]) * v).sum();
            Rational::from_integer(b - used)
        })
        .collect();
    let pos = free.iter().position(|&i| i == target).expect("target is free");
    let mut c = vec![Rational::zero(); free.len()];
    c[pos] = Rational::one();
    let hi = match linalg::maximize(&c, &rows, &rhs) {
        LpOutcome::Optimal { value, .. } => value.floor().to_integer(),
        LpOutcome::Infeasible => return None,
        LpOutcome::Unbounded => unreachable!("target coordinate is bounded"),
    };
    c[pos] = -Rational::one();
    let lo = match linalg::maximize(&c, &rows, &rhs) {
        LpOutcome::Optimal { value, .. } => (-value).ceil().to_integer(),
        LpOutcome::Infeasible => return None,
        LpOutcome::Unbounded => unreachable!("target coordinate is bounded"),
    };
    Some((lo, hi))
}

/// Data that depends on `σ` only.
#[derive(Debug)]
struct Signature {
    sigma: VertexSet,
    matrix: Vec<Vec<i64>>,
    echelon: ColumnEchelon,
    kernel: Vec<Vec<BigInt>>,
    recedes: bool,
    /// Coordinates unbounded on the solution polyhedron (empty unless `recedes`).
    unbounded: VertexSet,
    /// Column echelon of the `unbounded` columns of `matrix`.
    unbounded_echelon: ColumnEchelon,
}

impl Signature {
    fn new(charges: &[Vec<i64>], sigma: VertexSet) -> Signature {
        let n = charges.len();
        let m = charges.first().map_or(0, Vec::len);
        let matrix: Vec<Vec<i64>> = (0..m)
            .map(|j| {
                (0..n)
                    .map(|i| if sigma.contains(i) { -charges[i][j] } else { charges[i][j] })
                    .collect()
            })
            .collect();
        let echelon = ColumnEchelon::new(&matrix, n);
        let kernel = echelon.kernel();
        let unbounded = recession_support(&matrix);
        let sub: Vec<Vec<i64>> = matrix.iter().map(|r| unbounded.iter().map(|i| r[i]).collect()).collect();
        let unbounded_echelon = ColumnEchelon::new(&sub, unbounded.len());
        Signature {
            sigma,
            matrix,
            echelon,
            kernel,
            recedes: !unbounded.is_empty(),
            unbounded,
            unbounded_echelon,
        }
    }

    fn rhs(&self, charges: &[Vec<i64>], alpha: &[i64]) -> Vec<BigInt> {
        let mut beta: Vec<BigInt> = alpha.iter().map(|a| BigInt::from(*a)).collect();
        for i in self.sigma.iter() {
            for (b, q) in beta.iter_mut().zip(&charges[i]) {
                *b += *q;
            }
        }
        beta
    }

    /// Whether `A w = β` has a solution in nonnegative integers, for a
    /// signature that recedes.
    fn has_integer_point(&self, beta: &[BigInt]) -> bool {
        let bounded: Vec<usize> = self.unbounded.complement(self.echelon.cols()).iter().collect();
        self.search_bounded(beta, &bounded, &mut Vec::new())
    }

    fn search_bounded(&self, beta: &[BigInt], bounded: &[usize], fixed: &mut Vec<BigInt>) -> bool {
        if fixed.len() == bounded.len() {
            let rest: Vec<BigInt> = self
                .matrix
                .iter()
                .zip(beta)
                .map(|(r, b)| b - bounded.iter().zip(fixed.iter()).map(|(&i, v)| BigInt::from(r[i]) * v).sum::<BigInt>())
                .collect();
            return self.unbounded_echelon.particular_solution(&rest).is_some();
        }
        let pinned: Vec<(usize, BigInt)> = bounded.iter().copied().zip(fixed.iter().cloned()).collect();
        let Some((lo, hi)) = coordinate_range(&self.matrix, beta, &pinned, bounded[fixed.len()]) else {
            return false;
        };
        let mut v = lo;
        while v <= hi {
            fixed.push(v.clone());
            let found = self.search_bounded(beta, bounded, fixed);
            fixed.pop();
            if found {
                return true;
            }
            v += 1;
        }
        false
    }

    fn count(&self, beta: &[BigInt]) -> CountResult {
        let Some(w0) = self.echelon.particular_solution(beta) else {
            return CountResult::Finite(BigUint::zero());
        };
        if self.recedes {
            return if self.has_integer_point(beta) {
                CountResult::Infinite
            } else {
                CountResult::Finite(BigUint::zero())
            };
        }
        let k = self.kernel.first().map_or(0, Vec::len);
        if k == 0 {
            let inside = w0.iter().all(|v| !v.is_negative());
            return CountResult::Finite(if inside { BigUint::one() } else { BigUint::zero() });
        }
        let mut total = BigInt::zero();
        self.walk(0, &w0, &mut total);
        CountResult::Finite(total.to_biguint().expect("nonnegative count"))
    }

    /// Count `z_level..` with `offset + Σ_{j ≥ level} K_j z_j ≥ 0`.
    fn walk(&self, level: usize, offset: &[BigInt], total: &mut BigInt) {
        let k = self.kernel[0].len();
        if level + 1 == k {
            if let Some((lo, hi)) = self.last_interval(level, offset) {
                if hi >= lo {
                    *total += hi - lo + 1;
                }
            }
            return;
        }
        let Some((lo, hi)) = self.lp_range(level, offset) else {
            return;
        };
        let mut z = lo;
        let mut next = offset.to_vec();
        while z <= hi {
            for (i, o) in next.iter_mut().enumerate() {
                *o = &offset[i] + &self.kernel[i][level] * &z;
            }
            self.walk(level + 1, &next, total);
            z += 1;
        }
    }

    /// Integer range of the last lattice coordinate, read off row by row.
    fn last_interval(&self, level: usize, offset: &[BigInt]) -> Option<(BigInt, BigInt)> {
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for (row, o) in self.kernel.iter().zip(offset) {
            let c = &row[level];
            if c.is_zero() {
                if o.is_negative() {
                    return None;
                }
            } else if c.is_positive() {
                // z ≥ ⌈−o / c⌉
                let b = (-o).div_ceil(c);
                if lo.as_ref().is_none_or(|l| b > *l) {
                    lo = Some(b);
                }
            } else {
                // z ≤ ⌊o / −c⌋
                let b = o.div_floor(&-c);
                if hi.as_ref().is_none_or(|h| b < *h) {
                    hi = Some(b);
                }
            }
        }
        Some((lo.expect("bounded polytope"), hi.expect("bounded polytope")))
    }

    /// Exact LP bounds on `z_level` over the remaining coordinates.
    fn lp_range(&self, level: usize, offset: &[BigInt]) -> Option<(BigInt, BigInt)> {
        let k = self.kernel[0].len();
        let p = k - level;
        let n = self.kernel.len();
        // variables: z+ (p), z- (p), surplus s (n); K z − s = −offset
        let rows: Vec<Vec<Rational>> = self
            .kernel
            .iter()
            .enumerate()
            .map(|(i, krow)| {
                let mut row = Vec::with_capacity(2 * p + n);
                row.extend(krow[level..].iter().map(|v| Rational::from_integer(v.clone())));
                row.extend(krow[level..].iter().map(|v| Rational::from_integer(-v)));
                row.extend((0..n).map(|j| if i == j { -Rational::one() } else { Rational::zero() }));
                row
            })
            .collect();
        let rhs: Vec<Rational> = offset.iter().map(|o| Rational::from_integer(-o)).collect();
        let mut c = vec![Rational::zero(); 2 * p + n];
        c[0] = Rational::one();
        c[p] = -Rational::one();
        let hi = match linalg::maximize(&c, &rows, &rhs) {
            LpOutcome::Optimal { value, .. } => value.floor().to_integer(),
            LpOutcome::Infeasible => return None,
            LpOutcome::Unbounded => unreachable!("bounded polytope"),
        };
        for v in c.iter_mut() {
            *v = -v.clone();
        }
        let lo = match linalg::maximize(&c, &rows, &rhs) {
            LpOutcome::Optimal { value, .. } => (-value).ceil().to_integer(),
            LpOutcome::Infeasible => return None,
            LpOutcome::Unbounded => unreachable!("bounded polytope"),
        };
        Some((lo, hi))
    }

    /// Exact LP bounds on `w_level` given `w_0..w_{level-1}` in `fixed`.
    fn w_range(&self, beta: &[BigInt], fixed: &[BigInt]) -> Option<(BigInt, BigInt)> {
        let level = fixed.len();
        let n = self.echelon.cols();
        let rows: Vec<Vec<Rational>> = self
            .matrix
            .iter()
            .map(|r| r[level..].iter().map(|v| rat(*v)).collect())
            .collect();
        let rhs: Vec<Rational> = self
            .matrix
            .iter()
            .zip(beta)
            .map(|(r, b)| {
                let used: BigInt = r[..level].iter().zip(fixed).map(|(a, w)| BigInt::from(*a) * w).sum();
                Rational::from_integer(b - used)
            })
            .collect();
        let mut c = vec![Rational::zero(); n - level];
        c[0] = Rational::one();
        let hi = match linalg::maximize(&c, &rows, &rhs) {
            LpOutcome::Optimal { value, .. } => value.floor().to_integer(),
            LpOutcome::Infeasible => return None,
            LpOutcome::Unbounded => unreachable!("bounded polytope"),
        };
        c[0] = -Rational::one();
        let lo = match linalg::maximize(&c, &rows, &rhs) {
            LpOutcome::Optimal { value, .. } => (-value).ceil().to_integer(),
            LpOutcome::Infeasible => return None,
            LpOutcome::Unbounded => unreachable!("bounded polytope"),
        };
        Some((lo, hi))
    }

    fn enumerate(&self, beta: &[BigInt], limit: usize, fixed: &mut Vec<BigInt>, out: &mut Vec<Vec<BigInt>>) {
        if out.len() >= limit {
            return;
        }
        let n = self.echelon.cols();
        if fixed.len() == n {
            out.push(fixed.clone());
            return;
        }
        let Some((lo, hi)) = self.w_range(beta, fixed) else {
            return;
        };
        if lo > hi {
            return;
        }
        // u_i = −1 − w_i on σ, so ascending u means descending w there
        let descending = self.sigma.contains(fixed.len());
        let mut w = if descending { hi.clone() } else { lo.clone() };
        loop {
            fixed.push(w.clone());
            self.enumerate(beta, limit, fixed, out);
            fixed.pop();
            if out.len() >= limit {
                return;
            }
            if descending {
                if w == lo {
                    break;
                }
                w -= 1;
            } else {
                if w == hi {
                    break;
                }
                w += 1;
            }
        }
    }
}

/// Neg-group counter with per-`σ` caching of the `α`-independent data.
#[derive(Debug)]
pub struct NegGroupCounter {
    charges: Vec<Vec<i64>>,
    cache: RwLock<HashMap<VertexSet, Arc<Signature>>>,
}

impl NegGroupCounter {
    pub fn new(model: &ToricVarietyModel) -> NegGroupCounter {
        NegGroupCounter {
            charges: model.charges().to_vec(),
            cache: RwLock::new(HashMap::new()),
        }
    }

    fn signature(&self, sigma: VertexSet) -> Arc<Signature> {
        if let Some(s) = self.cache.read().expect("cache lock").get(&sigma) {
            return Arc::clone(s);
        }
        let built = Arc::new(Signature::new(&self.charges, sigma));
        let mut w = self.cache.write().expect("cache lock");
        Arc::clone(w.entry(sigma).or_insert(built))
    }

    /// Whether `A_σ` admits a nonzero nonnegative kernel vector.
    pub fn recedes(&self, sigma: VertexSet) -> bool {
        self.signature(sigma).recedes
    }

    /// `|(α,σ)|`. The class length must match the model's class rank.
    pub fn count(&self, alpha: &[i64], sigma: VertexSet) -> CountResult {
        let sig = self.signature(sigma);
        let beta = sig.rhs(&self.charges, alpha);
        sig.count(&beta)
    }

    /// Up to `limit` elements of `(α,σ)` in lexicographic order.
    pub fn enumerate(&self, alpha: &[i64], sigma: VertexSet, limit: usize) -> Result<Vec<DegreeVector>> {
        let sig = self.signature(sigma);
        let beta = sig.rhs(&self.charges, alpha);
        if sig.recedes {
            if sig.has_integer_point(&beta) {
                return Err(Error::InfiniteGroup { sigma });
            }
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        if limit > 0 && sig.echelon.particular_solution(&beta).is_some() {
            sig.enumerate(&beta, limit, &mut Vec::new(), &mut out);
        }
        out.into_iter()
            .map(|w| {
                let u = w
                    .iter()
                    .enumerate()
                    .map(|(i, wi)| {
                        let ui = if sigma.contains(i) { -BigInt::one() - wi } else { wi.clone() };
                        ui.to_i64().ok_or(Error::ResourceLimit {
                            what: "lattice point coordinate magnitude",
                            actual: usize::MAX,
                            cap: i64::MAX as usize,
                        })
                    })
                    .collect::<Result<Vec<i64>>>()?;
                Ok(DegreeVector(u))
            })
            .collect()
    }
}

fn check_query(model: &ToricVarietyModel, query: &NegGroupQuery) -> Result<()> {
    model.check_class(&query.alpha)?;
    if !query.sigma.is_subset(VertexSet::full(model.n())) {
        return Err(Error::Dimension(format!(
            "neg-set {} outside the {} coordinates",
            query.sigma,
            model.n()
        )));
    }
    Ok(())
}

pub fn neg_group_count(model: &ToricVarietyModel, query: &NegGroupQuery) -> Result<CountResult> {
    check_query(model, query)?;
    Ok(NegGroupCounter::new(model).count(query.alpha.as_slice(), query.sigma))
}

pub fn enumerate_neg_group(
    model: &ToricVarietyModel,
    query: &NegGroupQuery,
    limit: usize,
) -> Result<Vec<DegreeVector>> {
    check_query(model, query)?;
    NegGroupCounter::new(model).enumerate(query.alpha.as_slice(), query.sigma, limit)
}
