//! Unions of Stanley–Reisner generator supports.
//!
//! For every subset `τ` of the generators the union of their supports (the
//! squarefree degree of their lcm) is recorded. The distinct unions form the
//! degree set; the subsets landing on one union form that degree's exact-degree
//! collection, which is generally not closed under taking subsets.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::simplicial::FaceSet;
use crate::vertex_set::{VertexSet, MAX_VERTICES};

pub const DEFAULT_GENERATOR_CAP: usize = 28;

/// Generator subsets sharing one union degree, bucketed by cardinality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DegreeClass {
    by_size: Vec<Vec<VertexSet>>,
}

impl DegreeClass {
    fn push(&mut self, tau: VertexSet) {
        let k = tau.len();
        if self.by_size.len() <= k {
            self.by_size.resize(k + 1, Vec::new());
        }
        self.by_size[k].push(tau);
    }

    fn finish(&mut self) {
        for b in self.by_size.iter_mut() {
            b.sort_unstable();
        }
    }

    pub fn faces_of_size(&self, k: usize) -> &[VertexSet] {
        self.by_size.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn faces(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.by_size.iter().flatten().copied()
    }

    pub fn len(&self) -> usize {
        self.by_size.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSet {
    n: usize,
    generators: Vec<VertexSet>,
    classes: BTreeMap<VertexSet, DegreeClass>,
}

impl DegreeSet {
    /// Number of coordinates.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Generators in scan order; generator-subset indices refer to this order.
    pub fn generators(&self) -> &[VertexSet] {
        &self.generators
    }

    pub fn degrees(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.classes.keys().copied()
    }

    pub fn classes(&self) -> impl Iterator<Item = (VertexSet, &DegreeClass)> + '_ {
        self.classes.iter().map(|(d, c)| (*d, c))
    }

    pub fn class(&self, degree: VertexSet) -> Option<&DegreeClass> {
        self.classes.get(&degree)
    }

    pub fn contains(&self, degree: VertexSet) -> bool {
        self.classes.contains_key(&degree)
    }

    /// Number of distinct degrees.
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Total number of generator subsets recorded (always `2^t`).
    pub fn subset_count(&self) -> usize {
        self.classes.values().map(DegreeClass::len).sum()
    }
}

/// Scan all generator subsets with the default cap on `t`.
pub fn scan_powerset(generators: &[VertexSet], n: usize) -> Result<DegreeSet> {
    scan_powerset_with_cap(generators, n, DEFAULT_GENERATOR_CAP)
}

/// Increasing-index DFS over generator subsets. Once the running union
/// contains every remaining generator, all extensions land in the same
/// degree and are recorded directly without recomputing unions.
pub fn scan_powerset_with_cap(generators: &[VertexSet], n: usize, cap: usize) -> Result<DegreeSet> {
    let t = generators.len();
    let cap = cap.min(MAX_VERTICES);
    if t > cap {
        return Err(Error::ResourceLimit {
            what: "Stanley-Reisner generator count",
            actual: t,
            cap,
        });
    }
    let mut gens = generators.to_vec();
    gens.sort_unstable();

    let mut suffix = vec![VertexSet::EMPTY; t + 1];
    for k in (0..t).rev() {
        suffix[k] = suffix[k + 1].union(gens[k]);
    }

    let mut classes: HashMap<VertexSet, DegreeClass> = HashMap::new();
    let mut stack = vec![(VertexSet::EMPTY, VertexSet::EMPTY, 0usize)];
    while let Some((union, tau, next)) = stack.pop() {
        let class = classes.entry(union).or_default();
        class.push(tau);
        if next == t {
            continue;
        }
        if suffix[next].is_subset(union) {
            let rest = VertexSet::full(t).difference(VertexSet::full(next));
            for s in rest.subsets().filter(|s| !s.is_empty()) {
                class.push(tau.union(s));
            }
            continue;
        }
        for j in (next..t).rev() {
            stack.push((union.union(gens[j]), tau.with(j), j + 1));
        }
    }
    let classes = classes
        .into_iter()
        .map(|(d, mut c)| {
            c.finish();
            (d, c)
        })
        .collect();
    Ok(DegreeSet {
        n,
        generators: gens,
        classes,
    })
}

/// The collection `{τ : union of τ's supports = degree}` over the generator indices.
pub fn gamma_complex(degrees: &DegreeSet, degree: VertexSet) -> Result<FaceSet> {
    let class = degrees.class(degree).ok_or(Error::DegreeNotPresent(degree))?;
    Ok(FaceSet::from_buckets(
        degrees.generators.len(),
        class.by_size.clone(),
    ))
}

/// Degrees whose complement within `[n]` is also a degree.
pub fn contributing_degrees(degrees: &DegreeSet, n: usize) -> Vec<VertexSet> {
    degrees
        .degrees()
        .filter(|d| degrees.contains(d.complement(n)))
        .collect()
}
