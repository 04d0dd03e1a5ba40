//! Face collections over a small vertex set and their reduced homology over Q.
//!
//! A [`FaceSet`] need not be closed under taking subsets. Homology of such a
//! collection is taken with the projected boundary: summands whose face is
//! not in the collection are dropped. Faces with `k` elements sit in chain
//! degree `k − 1`; the empty face, when present, spans degree −1.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{sparse_rank, SparseRow};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// Largest vertex count for operations that scan the full power set.
pub const MAX_POWERSET_VERTICES: usize = 26;

#[derive(Clone, PartialEq, Eq)]
pub struct FaceSet {
    vertex_count: usize,
    /// `by_size[k]` holds the faces with `k` elements, sorted.
    by_size: Vec<Vec<VertexSet>>,
}

impl FaceSet {
    /// The collection with no faces at all.
    pub fn void(vertex_count: usize) -> FaceSet {
        assert!(vertex_count <= MAX_VERTICES, "too many vertices");
        FaceSet {
            vertex_count,
            by_size: vec![Vec::new(); vertex_count + 1],
        }
    }

    pub fn new(vertex_count: usize, faces: impl IntoIterator<Item = VertexSet>) -> Result<FaceSet> {
        if vertex_count > MAX_VERTICES {
            return Err(Error::ResourceLimit {
                what: "vertex count",
                actual: vertex_count,
                cap: MAX_VERTICES,
            });
        }
        let ambient = VertexSet::full(vertex_count);
        let mut out = FaceSet::void(vertex_count);
        for f in faces {
            if !f.is_subset(ambient) {
                return Err(Error::Dimension(format!(
                    "face {f} outside vertex set of size {vertex_count}"
                )));
            }
            out.by_size[f.len()].push(f);
        }
        for bucket in out.by_size.iter_mut() {
            bucket.sort_unstable();
            bucket.dedup();
        }
        Ok(out)
    }

    /// Build from per-size buckets that are already sorted and deduplicated.
    pub(crate) fn from_buckets(vertex_count: usize, mut by_size: Vec<Vec<VertexSet>>) -> FaceSet {
        by_size.resize(vertex_count + 1, Vec::new());
        debug_assert!(by_size
            .iter()
            .enumerate()
            .all(|(k, b)| b.windows(2).all(|w| w[0] < w[1]) && b.iter().all(|f| f.len() == k)));
        FaceSet {
            vertex_count,
            by_size,
        }
    }

    /// All subsets of the vertex set, including the empty face.
    pub fn simplex(vertex_count: usize) -> FaceSet {
        assert!(vertex_count <= MAX_POWERSET_VERTICES, "power set too large");
        FaceSet::new(vertex_count, VertexSet::full(vertex_count).subsets())
            .expect("subsets of the ambient set")
    }

    /// Downward closure of `generators`, always including the empty face.
    pub fn closure(vertex_count: usize, generators: &[VertexSet]) -> Result<FaceSet> {
        let mut faces: Vec<VertexSet> = vec![VertexSet::EMPTY];
        for g in generators {
            faces.extend(g.subsets());
        }
        FaceSet::new(vertex_count, faces)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Number of faces.
    pub fn len(&self) -> usize {
        self.by_size.iter().map(Vec::len).sum()
    }

    /// True for the void collection (no faces, not even the empty one).
    pub fn is_void(&self) -> bool {
        self.by_size.iter().all(Vec::is_empty)
    }

    /// Same as [`is_void`](Self::is_void).
    pub fn is_empty(&self) -> bool {
        self.is_void()
    }

    pub fn contains(&self, face: VertexSet) -> bool {
        self.by_size
            .get(face.len())
            .is_some_and(|b| b.binary_search(&face).is_ok())
    }

    pub fn faces_of_size(&self, k: usize) -> &[VertexSet] {
        self.by_size.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn faces(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.by_size.iter().flatten().copied()
    }

    /// Size of the largest face, or `None` for the void collection.
    pub fn max_face_size(&self) -> Option<usize> {
        self.by_size.iter().rposition(|b| !b.is_empty())
    }

    pub fn is_subset_closed(&self) -> bool {
        self.faces()
            .all(|f| f.iter().all(|i| self.contains(f.without(i))))
    }

    /// Inclusion-maximal faces.
    pub fn facets(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        for (k, bucket) in self.by_size.iter().enumerate() {
            for &f in bucket {
                let covered = self.by_size[k + 1..]
                    .iter()
                    .flatten()
                    .any(|g| f.is_subset(*g));
                if !covered {
                    out.push(f);
                }
            }
        }
        out
    }
}

impl fmt::Debug for FaceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FaceSet")
            .field("vertex_count", &self.vertex_count)
            .field("faces", &self.faces().collect::<Vec<_>>())
            .finish()
    }
}

/// `Δ|_σ = {τ ∈ Δ : τ ⊆ σ}`, re-indexed onto `σ` in ascending order.
pub fn restrict(delta: &FaceSet, sigma: VertexSet) -> FaceSet {
    let sigma = sigma.intersection(VertexSet::full(delta.vertex_count));
    let by_size = delta
        .by_size
        .iter()
        .take(sigma.len() + 1)
        .map(|bucket| {
            let mut b: Vec<VertexSet> = bucket
                .iter()
                .filter(|f| f.is_subset(sigma))
                .map(|f| f.compress(sigma))
                .collect();
            b.sort_unstable();
            b
        })
        .collect();
    FaceSet::from_buckets(sigma.len(), by_size)
}

/// `link_Δ(σ) = {τ : τ ∪ σ ∈ Δ, τ ∩ σ = ∅}`, re-indexed onto the complement of `σ`.
pub fn link(delta: &FaceSet, sigma: VertexSet) -> FaceSet {
    let n = delta.vertex_count;
    let rest = sigma.complement(n);
    let k = sigma.len();
    let mut by_size = vec![Vec::new(); rest.len() + 1];
    for (size, bucket) in delta.by_size.iter().enumerate().skip(k) {
        for f in bucket {
            if sigma.is_subset(*f) {
                by_size[size - k].push(f.difference(sigma).compress(rest));
            }
        }
    }
    for b in by_size.iter_mut() {
        b.sort_unstable();
    }
    FaceSet::from_buckets(rest.len(), by_size)
}

/// `Δ* = {σ ⊆ V : V ∖ σ ∉ Δ}` on the same vertex set.
pub fn alexander_dual(delta: &FaceSet) -> FaceSet {
    let n = delta.vertex_count;
    assert!(n <= MAX_POWERSET_VERTICES, "power set too large");
    let all = VertexSet::full(n);
    let faces = all.subsets().filter(|s| !delta.contains(s.complement(n)));
    FaceSet::new(n, faces).expect("subsets of the ambient set")
}

/// Reduced homology dimensions, indexed by chain degree `j ≥ −1`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct HomologyDims {
    /// `dims[j + 1] = dim H̃_j`
    dims: Vec<usize>,
}

impl HomologyDims {
    pub fn from_dims(dims: Vec<usize>) -> HomologyDims {
        HomologyDims { dims }
    }

    /// `dim H̃_j`, zero outside the computed range.
    pub fn get(&self, j: isize) -> usize {
        if j < -1 {
            return 0;
        }
        self.dims.get((j + 1) as usize).copied().unwrap_or(0)
    }

    /// `(j, dim H̃_j)` for every computed degree.
    pub fn iter(&self) -> impl Iterator<Item = (isize, usize)> + '_ {
        self.dims.iter().enumerate().map(|(k, d)| (k as isize - 1, *d))
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|d| *d == 0)
    }

    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }
}

impl fmt::Debug for HomologyDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.iter().filter(|(_, d)| *d != 0)).finish()
    }
}

/// Boundary of every face with `k` elements, projected onto the faces of
/// size `k − 1` present in `faces`. Row `i` is the image of the `i`-th face.
fn boundary_rows(faces: &FaceSet, k: usize) -> Vec<SparseRow> {
    let lower = faces.faces_of_size(k - 1);
    faces
        .faces_of_size(k)
        .iter()
        .map(|tau| {
            let mut row: SparseRow = tau
                .iter()
                .enumerate()
                .filter_map(|(pos, i)| {
                    let sign = if pos % 2 == 0 { 1 } else { -1 };
                    lower.binary_search(&tau.without(i)).ok().map(|idx| (idx, sign))
                })
                .collect();
            row.sort_unstable_by_key(|e| e.0);
            row
        })
        .collect()
}

/// Verify `∂ ∘ ∂ = 0` from faces of size `k` down to size `k − 2`.
fn check_boundary_squares_to_zero(faces: &FaceSet, k: usize) -> Result<()> {
    let mut acc: HashMap<VertexSet, i64> = HashMap::new();
    for tau in faces.faces_of_size(k) {
        acc.clear();
        for (p, i) in tau.iter().enumerate() {
            let face = tau.without(i);
            if !faces.contains(face) {
                continue;
            }
            let s1 = if p % 2 == 0 { 1 } else { -1 };
            for (q, l) in face.iter().enumerate() {
                let sub = face.without(l);
                if faces.contains(sub) {
                    let s2 = if q % 2 == 0 { 1 } else { -1 };
                    *acc.entry(sub).or_insert(0) += s1 * s2;
                }
            }
        }
        if acc.values().any(|v| *v != 0) {
            return Err(Error::NotAComplex {
                degree: k as isize - 1,
            });
        }
    }
    Ok(())
}

/// Reduced homology over Q of the projected-boundary chain complex of `faces`.
///
/// Dimensions are reported for degrees −1 through (largest face size − 1);
/// the void collection yields no entries.
pub fn reduced_homology(faces: &FaceSet) -> Result<HomologyDims> {
    let Some(top) = faces.max_face_size() else {
        return Ok(HomologyDims::default());
    };
    for k in 2..=top {
        check_boundary_squares_to_zero(faces, k)?;
    }
    // ranks[k] = rank of the boundary out of the faces with k elements
    let mut ranks = vec![0usize; top + 2];
    for (k, rank) in ranks.iter_mut().enumerate().take(top + 1).skip(1) {
        if !faces.faces_of_size(k).is_empty() && !faces.faces_of_size(k - 1).is_empty() {
            *rank = sparse_rank(&boundary_rows(faces, k));
        }
    }
    let dims: Vec<usize> = (0..=top)
        .map(|k| faces.faces_of_size(k).len() - ranks[k] - ranks[k + 1])
        .collect();
    debug_assert_eq!(
        dims.iter().enumerate().map(|(k, d)| sign(k) * *d as i64).sum::<i64>(),
        (0..=top).map(|k| sign(k) * faces.faces_of_size(k).len() as i64).sum::<i64>(),
        "Euler characteristic mismatch"
    );
    Ok(HomologyDims { dims })
}

fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}
