//! Second route to line bundle cohomology, through the fan complex:
//!
//! `h^i(X; O(α)) = Σ_{σ ⊆ [n]} |(α,σ)| · dim H̃_{d−i−1}(Σ|_{[n]∖σ})`
//!
//! plus a cross-check of multiplicity factors against restriction homology of
//! the fan complex.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::counting::{CountResult, NegGroupCounter};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::model::{DivisorClass, ToricVarietyModel};
use crate::multiplicity::{multiplicity_factors, Factors};
use crate::simplicial::{reduced_homology, restrict, FaceSet, HomologyDims};
use crate::srscan::{scan_powerset, DegreeSet};
use crate::vertex_set::VertexSet;

/// Largest coordinate count the fan route accepts (it scans all `2^n` subsets).
pub const MAX_ORACLE_COORDINATES: usize = 20;

/// Downward closure of the maximal cones, `∅` included.
pub fn fan_complex(model: &ToricVarietyModel) -> Result<FaceSet> {
    let cones = model.max_cones().ok_or(Error::MissingFan)?;
    FaceSet::closure(model.n(), cones)
}

/// Restriction homology of the fan complex on every subset, kept for the
/// subsets where it does not vanish.
#[derive(Debug)]
pub struct FanOracle {
    model: ToricVarietyModel,
    complex: FaceSet,
    nonvanishing: BTreeMap<VertexSet, HomologyDims>,
    counter: NegGroupCounter,
    execution: Execution,
}

impl FanOracle {
    pub fn new(model: &ToricVarietyModel) -> Result<FanOracle> {
        FanOracle::with_execution(model, Execution::default())
    }

    pub fn with_execution(model: &ToricVarietyModel, execution: Execution) -> Result<FanOracle> {
        let n = model.n();
        if n > MAX_ORACLE_COORDINATES {
            return Err(Error::ResourceLimit {
                what: "coordinate count for the fan route",
                actual: n,
                cap: MAX_ORACLE_COORDINATES,
            });
        }
        let complex = fan_complex(model)?;
        let subsets: Vec<VertexSet> = VertexSet::full(n).subsets().collect();
        let dims = exec::map(execution, &subsets, |s| reduced_homology(&restrict(&complex, *s)));
        let mut nonvanishing = BTreeMap::new();
        for (s, h) in subsets.into_iter().zip(dims) {
            let h = h?;
            if !h.is_zero() {
                nonvanishing.insert(s, h);
            }
        }
        Ok(FanOracle {
            model: model.clone(),
            complex,
            nonvanishing,
            counter: NegGroupCounter::new(model),
            execution,
        })
    }

    pub fn complex(&self) -> &FaceSet {
        &self.complex
    }

    /// `dim H̃_•(Σ|_s)`.
    pub fn restriction_homology(&self, s: VertexSet) -> HomologyDims {
        self.nonvanishing.get(&s).cloned().unwrap_or_default()
    }

    /// Subsets with nonzero restriction homology.
    pub fn nonvanishing(&self) -> impl Iterator<Item = (VertexSet, &HomologyDims)> + '_ {
        self.nonvanishing.iter().map(|(s, h)| (*s, h))
    }

    pub fn cohomology_via_fan(&self, alpha: &DivisorClass) -> Result<Vec<BigUint>> {
        self.model.check_class(alpha)?;
        let n = self.model.n();
        let d = self.model.dimension() as isize;
        let terms: Vec<(VertexSet, &HomologyDims)> = self.nonvanishing().collect();
        let counts = exec::map(self.execution, &terms, |(hat, _)| {
            self.counter.count(alpha.as_slice(), hat.complement(n))
        });
        let mut h = vec![BigUint::zero(); d as usize + 1];
        for ((hat, dims), count) in terms.into_iter().zip(counts) {
            let sigma = hat.complement(n);
            let c = match count {
                CountResult::Infinite => {
                    return Err(Error::NonFinite {
                        alpha: alpha.0.clone(),
                        degree: sigma,
                    })
                }
                CountResult::Finite(c) => c,
            };
            for (j, m) in dims.iter().filter(|(_, m)| *m != 0) {
                let i = d - 1 - j;
                if i < 0 || i > d {
                    return Err(Error::DegreeOutOfRange {
                        index: i.max(0) as usize,
                        dimension: d as usize,
                    });
                }
                h[i as usize] += &c * m;
            }
        }
        Ok(h)
    }

    /// Compare multiplicity factors on every degree against restriction
    /// homology (`β_{r,σ} = dim H̃_{|σ|−r−1}(Σ|_σ)`, dimensions over Q), and
    /// confirm restriction homology vanishes on every subset outside the
    /// degree set.
    pub fn hochster_check(&self, degrees: &DegreeSet) -> Result<HochsterReport> {
        let list: Vec<VertexSet> = degrees.degrees().collect();
        let gamma = exec::map(self.execution, &list, |d| multiplicity_factors(degrees, *d));
        let mut mismatches = Vec::new();
        for (degree, g) in list.iter().zip(gamma) {
            let g = g?;
            let h = self.hochster_factors(*degree);
            if g != h {
                mismatches.push(HochsterMismatch {
                    degree: *degree,
                    gamma: g,
                    hochster: h,
                });
            }
        }
        let mut stray = Vec::new();
        for (s, _) in self.nonvanishing() {
            if !degrees.contains(s) {
                stray.push(s);
            }
        }
        Ok(HochsterReport {
            degrees_checked: list.len(),
            vanishing_checked: (1usize << self.model.n()) - list.len(),
            mismatches,
            nonvanishing_outside: stray,
        })
    }

    /// `r ↦ dim H̃_{|σ|−r−1}(Σ|_σ)`, nonzero entries only.
    pub fn hochster_factors(&self, sigma: VertexSet) -> Factors {
        let k = sigma.len() as isize;
        self.restriction_homology(sigma)
            .iter()
            .filter(|(_, m)| *m != 0)
            .map(|(j, m)| ((k - 1 - j) as usize, m as u64))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HochsterMismatch {
    pub degree: VertexSet,
    pub gamma: Factors,
    pub hochster: Factors,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HochsterReport {
    pub degrees_checked: usize,
    /// Subsets outside the degree set whose restriction homology was examined.
    pub vanishing_checked: usize,
    pub mismatches: Vec<HochsterMismatch>,
    /// Subsets outside the degree set with nonzero restriction homology.
    pub nonvanishing_outside: Vec<VertexSet>,
}

impl HochsterReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.nonvanishing_outside.is_empty()
    }
}

/// One-shot fan-route cohomology.
pub fn cohomology_via_fan(model: &ToricVarietyModel, alpha: &DivisorClass) -> Result<Vec<BigUint>> {
    FanOracle::new(model)?.cohomology_via_fan(alpha)
}

/// One-shot Hochster comparison with the default generator cap.
pub fn hochster_check(model: &ToricVarietyModel) -> Result<HochsterReport> {
    let oracle = FanOracle::new(model)?;
    let degrees = scan_powerset(model.sr_generators(), model.n())?;
    oracle.hochster_check(&degrees)
}
