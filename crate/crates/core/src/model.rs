//! Toric variety input data: coordinates, charges, Stanley–Reisner
//! generators and (optionally) the maximal cones of the fan.
//!
//! Files are JSON documents of the form
//!
//! ```json
//! { "coordinates": ["x1", "x2", "x3"], "dimension": 2,
//!   "charges": [[1], [1], [1]],
//!   "sr_ideal": [[1, 2, 3]],
//!   "max_cones": [[1, 2], [1, 3], [2, 3]] }
//! ```
//!
//! Charges are given one row per coordinate. Vertex indices are 1-based in
//! files and 0-based in memory. At least one of `sr_ideal` / `max_cones` is
//! required; when both are present they are cross-validated.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dense_rank, ColumnEchelon};
use crate::vertex_set::{minimalize, VertexSet, MAX_VERTICES};

/// An element of `Cl(X) ≅ Z^(n−d)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DivisorClass(pub Vec<i64>);

impl DivisorClass {
    pub fn new(alpha: Vec<i64>) -> Self {
        DivisorClass(alpha)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// An element of `Z^n`: the exponent vector of a Laurent monomial.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegreeVector(pub Vec<i64>);

impl DegreeVector {
    /// Coordinates with a negative entry.
    pub fn neg_set(&self) -> VertexSet {
        VertexSet::from_indices(self.0.iter().enumerate().filter(|(_, u)| **u < 0).map(|(i, _)| i))
    }

    /// The 0/1 vector of a vertex set.
    pub fn squarefree(set: VertexSet, n: usize) -> DegreeVector {
        DegreeVector((0..n).map(|i| i64::from(set.contains(i))).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricVarietyModel {
    coordinate_names: Vec<String>,
    dimension: usize,
    charges: Vec<Vec<i64>>,
    sr_generators: Vec<VertexSet>,
    max_cones: Option<Vec<VertexSet>>,
}

impl ToricVarietyModel {
    /// Validate and assemble a model. If `sr_generators` is `None` it is
    /// derived from `max_cones`.
    pub fn new(
        coordinate_names: Vec<String>,
        dimension: usize,
        charges: Vec<Vec<i64>>,
        sr_generators: Option<Vec<VertexSet>>,
        max_cones: Option<Vec<VertexSet>>,
    ) -> Result<ToricVarietyModel> {
        let n = coordinate_names.len();
        if n == 0 {
            return Err(Error::Dimension("no coordinates".into()));
        }
        if n > MAX_VERTICES {
            return Err(Error::ResourceLimit {
                what: "coordinate count",
                actual: n,
                cap: MAX_VERTICES,
            });
        }
        if dimension > n {
            return Err(Error::Dimension(format!("dimension {dimension} exceeds coordinate count {n}")));
        }
        let rank = n - dimension;
        if charges.len() != n {
            return Err(Error::Dimension(format!(
                "{} charge rows for {n} coordinates",
                charges.len()
            )));
        }
        if let Some((i, row)) = charges.iter().enumerate().find(|(_, r)| r.len() != rank) {
            return Err(Error::Dimension(format!(
                "charge row {} has {} entries, expected n - d = {rank}",
                i + 1,
                row.len()
            )));
        }
        if dense_rank(&charges) != rank {
            return Err(Error::Dimension(format!("charge matrix does not have rank n - d = {rank}")));
        }
        let ambient = VertexSet::full(n);

        let max_cones = match max_cones {
            None => None,
            Some(cones) => {
                if cones.is_empty() {
                    return Err(Error::EmptyConeList);
                }
                let mut cones = cones;
                for c in &cones {
                    if !c.is_subset(ambient) {
                        return Err(Error::InvalidFan(format!("cone {c} outside the coordinate range")));
                    }
                    if c.len() != dimension {
                        return Err(Error::InvalidFan(format!(
                            "maximal cone {c} has {} rays, expected {dimension}",
                            c.len()
                        )));
                    }
                }
                cones.sort_unstable();
                cones.dedup();
                Some(cones)
            }
        };

        let sr_generators = match (sr_generators, &max_cones) {
            (Some(gens), _) => {
                let gens = canonical_generators(gens, ambient)?;
                if let Some(cones) = &max_cones {
                    for g in &gens {
                        if let Some(c) = cones.iter().find(|c| g.is_subset(**c)) {
                            return Err(Error::InvalidFan(format!(
                                "Stanley-Reisner generator {g} is a face of cone {c}"
                            )));
                        }
                    }
                    let derived = sr_from_max_cones(cones, n)?;
                    if derived != gens {
                        return Err(Error::InvalidFan(format!(
                            "Stanley-Reisner generators {} disagree with those of the fan {}",
                            list(&gens),
                            list(&derived)
                        )));
                    }
                }
                gens
            }
            (None, Some(cones)) => sr_from_max_cones(cones, n)?,
            (None, None) => {
                return Err(Error::Malformed("one of sr_ideal or max_cones is required".into()));
            }
        };

        Ok(ToricVarietyModel {
            coordinate_names,
            dimension,
            charges,
            sr_generators,
            max_cones,
        })
    }

    /// Number of homogeneous coordinates.
    pub fn n(&self) -> usize {
        self.coordinate_names.len()
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Rank of the class group, `n − d`.
    pub fn class_rank(&self) -> usize {
        self.n() - self.dimension
    }

    pub fn coordinate_names(&self) -> &[String] {
        &self.coordinate_names
    }

    /// One row per coordinate: the class of its coordinate divisor.
    pub fn charges(&self) -> &[Vec<i64>] {
        &self.charges
    }

    /// Sorted by bitmask value.
    pub fn sr_generators(&self) -> &[VertexSet] {
        &self.sr_generators
    }

    pub fn max_cones(&self) -> Option<&[VertexSet]> {
        self.max_cones.as_deref()
    }

    /// The grading map `f: Z^n → Cl(X)`.
    pub fn class_of(&self, u: &DegreeVector) -> DivisorClass {
        let mut alpha = vec![0i64; self.class_rank()];
        for (row, ui) in self.charges.iter().zip(&u.0) {
            for (a, q) in alpha.iter_mut().zip(row) {
                *a += q * ui;
            }
        }
        DivisorClass(alpha)
    }

    /// `K = −Σ_i [D_i]`.
    pub fn canonical_class(&self) -> DivisorClass {
        let mut k = vec![0i64; self.class_rank()];
        for row in &self.charges {
            for (a, q) in k.iter_mut().zip(row) {
                *a -= q;
            }
        }
        DivisorClass(k)
    }

    pub fn check_class(&self, alpha: &DivisorClass) -> Result<()> {
        if alpha.len() != self.class_rank() {
            return Err(Error::Dimension(format!(
                "divisor class {alpha} has {} entries, expected {}",
                alpha.len(),
                self.class_rank()
            )));
        }
        Ok(())
    }

    /// Smoothness from charges and cones: for every maximal cone the charge
    /// rows of the coordinates outside it must form a unimodular matrix.
    /// `None` when there is no fan data.
    pub fn is_smooth(&self) -> Option<bool> {
        let cones = self.max_cones.as_ref()?;
        let n = self.n();
        Some(cones.iter().all(|c| {
            let rows: Vec<Vec<i64>> = c
                .complement(n)
                .iter()
                .map(|i| self.charges[i].clone())
                .collect();
            determinant(&rows).abs() == BigInt::from(1)
        }))
    }

    pub fn parse(text: &str) -> Result<ToricVarietyModel> {
        let doc: VarietyDocument =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        doc.into_model()
    }

    pub fn to_document(&self) -> VarietyDocument {
        VarietyDocument {
            coordinates: self.coordinate_names.clone(),
            dimension: self.dimension,
            charges: self
                .charges
                .iter()
                .map(|r| r.iter().map(|v| serde_json::Number::from(*v)).collect())
                .collect(),
            sr_ideal: Some(self.sr_generators.iter().map(|g| g.to_one_based()).collect()),
            max_cones: self
                .max_cones
                .as_ref()
                .map(|cs| cs.iter().map(|c| c.to_one_based()).collect()),
        }
    }
}

/// Parse a variety document.
pub fn parse_variety(text: &str) -> Result<ToricVarietyModel> {
    ToricVarietyModel::parse(text)
}

/// On-disk form of a model.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietyDocument {
    pub coordinates: Vec<String>,
    pub dimension: usize,
    pub charges: Vec<Vec<serde_json::Number>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sr_ideal: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_cones: Option<Vec<Vec<usize>>>,
}

impl VarietyDocument {
    pub fn into_model(self) -> Result<ToricVarietyModel> {
        let n = self.coordinates.len();
        if n > MAX_VERTICES {
            return Err(Error::ResourceLimit {
                what: "coordinate count",
                actual: n,
                cap: MAX_VERTICES,
            });
        }
        let mut charges = Vec::with_capacity(self.charges.len());
        for (i, row) in self.charges.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (j, v) in row.iter().enumerate() {
                out.push(v.as_i64().ok_or(Error::NonIntegerCharge { row: i + 1, col: j + 1 })?);
            }
            charges.push(out);
        }
        let sets = |lists: Vec<Vec<usize>>, what: &str| -> Result<Vec<VertexSet>> {
            lists
                .into_iter()
                .map(|l| {
                    let mut s = VertexSet::EMPTY;
                    for i in l {
                        if i == 0 || i > n {
                            return Err(Error::Malformed(format!(
                                "{what} index {i} outside 1..={n}"
                            )));
                        }
                        s = s.with(i - 1);
                    }
                    Ok(s)
                })
                .collect()
        };
        let sr = self.sr_ideal.map(|l| sets(l, "sr_ideal")).transpose()?;
        let cones = self.max_cones.map(|l| sets(l, "max_cones")).transpose()?;
        ToricVarietyModel::new(self.coordinates, self.dimension, charges, sr, cones)
    }
}

/// Minimal Stanley–Reisner generators of the fan with the given maximal cones.
///
/// The irrelevant ideal is generated by the complements of the maximal
/// cones; its Alexander dual is the intersection of the monomial primes
/// `⟨x_i : i ∉ σ⟩`, computed one prime at a time with lcm products and
/// minimalization after each step.
pub fn sr_from_max_cones(max_cones: &[VertexSet], n: usize) -> Result<Vec<VertexSet>> {
    if max_cones.is_empty() {
        return Err(Error::EmptyConeList);
    }
    // start from the unit ideal ⟨1⟩
    let mut gens = vec![VertexSet::EMPTY];
    for cone in max_cones {
        let prime = cone.complement(n);
        let mut next = Vec::with_capacity(gens.len() * prime.len());
        for g in &gens {
            if !g.is_disjoint(prime) {
                // already inside the prime
                next.push(*g);
            } else {
                next.extend(prime.iter().map(|i| g.with(i)));
            }
        }
        gens = minimalize(next);
        if gens.is_empty() {
            break;
        }
    }
    Ok(gens)
}

fn canonical_generators(gens: Vec<VertexSet>, ambient: VertexSet) -> Result<Vec<VertexSet>> {
    let mut gens = gens;
    for g in &gens {
        if g.is_empty() {
            return Err(Error::Malformed("empty Stanley-Reisner generator".into()));
        }
        if !g.is_subset(ambient) {
            return Err(Error::Malformed(format!("generator {g} outside the coordinate range")));
        }
    }
    gens.sort_unstable();
    gens.dedup();
    for a in &gens {
        if let Some(b) = gens.iter().find(|b| *b != a && a.is_subset(**b)) {
            return Err(Error::NonMinimalGenerators {
                smaller: *a,
                larger: *b,
            });
        }
    }
    Ok(gens)
}

fn list(sets: &[VertexSet]) -> String {
    sets.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// Exact determinant of a square integer matrix.
fn determinant(rows: &[Vec<i64>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::from(1);
    }
    // |det A| = product of the echelon pivots of A (unimodular column ops)
    let ce = ColumnEchelon::new(rows, n);
    if ce.rank() < n {
        return BigInt::zero();
    }
    ce.pivot_product()
}
