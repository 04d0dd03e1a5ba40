//! Independent reference implementations shared by the integration tests.
//! Everything here is deliberately naive: dense matrices, full power-set
//! scans and brute-force lattice point boxes.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};
use toric_cohom::{ToricVarietyModel, VertexSet};

/// Rank over Q by dense Gaussian elimination.
#[allow(clippy::needless_range_loop)]
pub fn rational_rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &pivot;
                for k in c..cols {
                    let delta = &f * &m[rank][k];
                    m[r][k] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Reduced homology dims `[H̃_{-1}, H̃_0, ..]` of an arbitrary face
/// collection, with the boundary projected onto the faces present.
pub fn naive_homology(faces: &[u64], n: usize) -> Vec<usize> {
    let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); n + 2];
    for &f in faces {
        by_size[f.count_ones() as usize].push(f);
    }
    for b in by_size.iter_mut() {
        b.sort_unstable();
        b.dedup();
    }
    // boundary from size k to size k-1
    let rank_of = |k: usize| -> usize {
        if k == 0 || by_size[k].is_empty() || by_size[k - 1].is_empty() {
            return 0;
        }
        let index: HashMap<u64, usize> = by_size[k - 1].iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let m: Vec<Vec<BigRational>> = by_size[k]
            .iter()
            .map(|&f| {
                let mut row = vec![BigRational::zero(); by_size[k - 1].len()];
                let mut pos = 0;
                for v in 0..n {
                    if f >> v & 1 == 1 {
                        if let Some(&i) = index.get(&(f & !(1 << v))) {
                            row[i] = if pos % 2 == 0 { BigRational::one() } else { -BigRational::one() };
                        }
                        pos += 1;
                    }
                }
                row
            })
            .collect();
        rational_rank(m)
    };
    let ranks: Vec<usize> = (0..=n + 1).map(rank_of).collect();
    (0..=n)
        .map(|k| by_size[k].len() - ranks[k] - if k < n { ranks[k + 1] } else { 0 })
        .collect()
}

/// Trim trailing zeros so dimension vectors compare independent of length.
pub fn trim(mut v: Vec<usize>) -> Vec<usize> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Every subset-closed family of subsets of `[n]` (the void one included).
pub fn all_downsets(n: usize) -> Vec<Vec<u64>> {
    let mut subsets: Vec<u64> = (0..1u64 << n).collect();
    subsets.sort_by_key(|s| (s.count_ones(), *s));
    let mut out = Vec::new();
    let mut chosen = vec![false; 1 << n];
    fn go(k: usize, subsets: &[u64], n: usize, chosen: &mut Vec<bool>, out: &mut Vec<Vec<u64>>) {
        if k == subsets.len() {
            out.push((0..chosen.len() as u64).filter(|s| chosen[*s as usize]).collect());
            return;
        }
        let s = subsets[k];
        let allowed = (0..n)
            .filter(|v| s >> v & 1 == 1)
            .all(|v| chosen[(s & !(1 << v)) as usize]);
        if allowed {
            chosen[s as usize] = true;
            go(k + 1, subsets, n, chosen, out);
            chosen[s as usize] = false;
        }
        go(k + 1, subsets, n, chosen, out);
    }
    go(0, &subsets, n, &mut chosen, &mut out);
    out
}

/// Downward closure of a list of generating faces.
pub fn closure(gens: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    for &g in gens {
        let mut s = g;
        loop {
            out.push(s);
            if s == 0 {
                break;
            }
            s = (s - 1) & g;
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Union of generator supports for every generator subset, by full scan.
pub fn naive_scan(gens: &[VertexSet]) -> BTreeMap<VertexSet, Vec<VertexSet>> {
    let t = gens.len();
    let mut out: BTreeMap<VertexSet, Vec<VertexSet>> = BTreeMap::new();
    for mask in 0..1u64 << t {
        let tau = VertexSet::from_bits(mask);
        let union = tau.iter().fold(VertexSet::EMPTY, |u, j| u.union(gens[j]));
        out.entry(union).or_default().push(tau);
    }
    for v in out.values_mut() {
        v.sort();
    }
    out
}

/// `|(α, σ)|` for every class and neg-set met by a point of `[-b, b]^n`.
pub fn box_counts(model: &ToricVarietyModel, b: i64) -> HashMap<(Vec<i64>, VertexSet), u64> {
    let n = model.n();
    let q = model.charges();
    let k = model.class_rank();
    let mut counts = HashMap::new();
    let mut u = vec![-b; n];
    loop {
        let mut alpha = vec![0i64; k];
        for (i, ui) in u.iter().enumerate() {
            for (a, c) in alpha.iter_mut().zip(&q[i]) {
                *a += c * ui;
            }
        }
        let neg = VertexSet::from_indices((0..n).filter(|&i| u[i] < 0));
        *counts.entry((alpha, neg)).or_insert(0) += 1;
        let mut i = 0;
        while i < n && u[i] == b {
            u[i] = -b;
            i += 1;
        }
        if i == n {
            break;
        }
        u[i] += 1;
    }
    counts
}

/// Number of `w ∈ N^n` with `Σ q_i w_i = m`, positive weights.
pub fn coin_change(q: &[i64], m: i64) -> u64 {
    if m < 0 {
        return 0;
    }
    let m = m as usize;
    let mut ways = vec![0u64; m + 1];
    ways[0] = 1;
    for &c in q {
        let c = c as usize;
        for v in c..=m {
            ways[v] += ways[v - c];
        }
    }
    ways[m]
}

/// `h^•(P^1; O(m))`.
pub fn p1(m: i64) -> [u64; 2] {
    if m >= 0 {
        [(m + 1) as u64, 0]
    } else {
        [0, (-m - 1).max(0) as u64]
    }
}

/// `C(n, k)` for small arguments, zero when `n < k`.
pub fn binomial(n: i64, k: i64) -> u64 {
    if n < k || k < 0 {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// `h^•(P^2; O(m))`.
pub fn p2(m: i64) -> [u64; 3] {
    if m >= 0 {
        [binomial(m + 2, 2), 0, 0]
    } else if m <= -3 {
        [0, 0, binomial(-m - 1, 2)]
    } else {
        [0, 0, 0]
    }
}

/// Künneth product of line bundle cohomology on factors.
pub fn kunneth(factors: &[Vec<u64>]) -> Vec<u64> {
    factors.iter().fold(vec![1u64], |acc, f| {
        let mut out = vec![0u64; acc.len() + f.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in f.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        out
    })
}

/// Apply a coordinate permutation `perm[i] = new index of i` to a model.
pub fn permute_model(model: &ToricVarietyModel, perm: &[usize]) -> ToricVarietyModel {
    let n = model.n();
    let mut names = vec![String::new(); n];
    let mut charges = vec![Vec::new(); n];
    for i in 0..n {
        names[perm[i]] = model.coordinate_names()[i].clone();
        charges[perm[i]] = model.charges()[i].clone();
    }
    let map = |s: &VertexSet| VertexSet::from_indices(s.iter().map(|i| perm[i]));
    ToricVarietyModel::new(
        names,
        model.dimension(),
        charges,
        Some(model.sr_generators().iter().map(map).collect()),
        model.max_cones().map(|c| c.iter().map(map).collect()),
    )
    .expect("permuted model is valid")
}

pub fn permute_set(s: VertexSet, perm: &[usize]) -> VertexSet {
    VertexSet::from_indices(s.iter().map(|i| perm[i]))
}
