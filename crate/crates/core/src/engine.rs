//! Line bundle cohomology from Stanley–Reisner data:
//!
//! `h^i(X; O(α)) = Σ_σ |(α,σ)| · β_{|σ|−i, σ}(S/I)`
//!
//! summed over squarefree degrees `σ` that are unions of generator supports
//! and whose complement is one as well. The degree set and the multiplicity
//! table depend only on the model and are built once per [`Engine`]; only the
//! neg-group counts depend on `α`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::counting::{CountResult, NegGroupCounter};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::model::{DegreeVector, DivisorClass, ToricVarietyModel};
use crate::multiplicity::{multiplicity_table_with, Factors, MultiplicityTable};
use crate::srscan::{contributing_degrees, scan_powerset_with_cap, DegreeSet, DEFAULT_GENERATOR_CAP};
use crate::vertex_set::VertexSet;

/// How the complement ("dual-degree") filter is applied.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum DualFilter {
    /// Evaluate factors on every degree once, confirm the filtered-out ones
    /// all vanish, and sum over the unfiltered set otherwise. The filter only
    /// holds for complete fans; this mode keeps other inputs from silently
    /// losing terms.
    #[default]
    Checked,
    /// Apply the filter without confirmation; factors are evaluated on the
    /// contributing degrees only.
    Trusted,
    /// Ignore the filter and sum over every degree (debug mode).
    Off,
}

#[derive(Debug, Clone, Copy)]
pub struct EngineOptions {
    pub generator_cap: usize,
    pub filter: DualFilter,
    pub execution: Execution,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            generator_cap: DEFAULT_GENERATOR_CAP,
            filter: DualFilter::default(),
            execution: Execution::default(),
        }
    }
}

/// One degree's share of a cohomology computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contribution {
    pub degree: VertexSet,
    pub count: CountResult,
    pub factors: Factors,
    /// `i ↦ |(α,σ)| · β_{|σ|−i}`, nonzero entries only.
    pub by_index: BTreeMap<usize, BigUint>,
}

impl Contribution {
    pub fn support_size(&self) -> usize {
        self.degree.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyResult {
    pub alpha: DivisorClass,
    /// `h^0, .., h^d`.
    pub dims: Vec<BigUint>,
    pub breakdown: Vec<Contribution>,
}

impl CohomologyResult {
    /// Dimensions as machine integers, when they fit.
    pub fn dims_u64(&self) -> Option<Vec<u64>> {
        self.dims.iter().map(|d| u64::try_from(d).ok()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SerreReport {
    pub alpha: DivisorClass,
    pub dual_alpha: DivisorClass,
    pub dims: Vec<BigUint>,
    pub dual_dims: Vec<BigUint>,
    pub pass: bool,
}

#[derive(Debug)]
pub struct Engine {
    model: ToricVarietyModel,
    degrees: DegreeSet,
    table: MultiplicityTable,
    contributing: Vec<VertexSet>,
    filter_sound: Option<bool>,
    counter: NegGroupCounter,
    options: EngineOptions,
}

impl Engine {
    pub fn new(model: &ToricVarietyModel) -> Result<Engine> {
        Engine::with_options(model, EngineOptions::default())
    }

    pub fn with_options(model: &ToricVarietyModel, options: EngineOptions) -> Result<Engine> {
        let n = model.n();
        let degrees = scan_powerset_with_cap(model.sr_generators(), n, options.generator_cap)?;
        let contributing = contributing_degrees(&degrees, n);
        let all: Vec<VertexSet> = degrees.degrees().collect();
        let (table, filter_sound) = match options.filter {
            DualFilter::Trusted => (
                multiplicity_table_with(&degrees, &contributing, options.execution)?,
                None,
            ),
            DualFilter::Off => (multiplicity_table_with(&degrees, &all, options.execution)?, None),
            DualFilter::Checked => {
                let table = multiplicity_table_with(&degrees, &all, options.execution)?;
                let sound = table
                    .nonzero()
                    .all(|(d, _)| degrees.contains(d.complement(n)));
                (table, Some(sound))
            }
        };
        Ok(Engine {
            model: model.clone(),
            degrees,
            table,
            contributing,
            filter_sound,
            counter: NegGroupCounter::new(model),
            options,
        })
    }

    pub fn model(&self) -> &ToricVarietyModel {
        &self.model
    }

    pub fn degree_set(&self) -> &DegreeSet {
        &self.degrees
    }

    /// Multiplicity factors of every evaluated degree.
    pub fn table(&self) -> &MultiplicityTable {
        &self.table
    }

    pub fn contributing_degrees(&self) -> &[VertexSet] {
        &self.contributing
    }

    pub fn options(&self) -> EngineOptions {
        self.options
    }

    /// With [`DualFilter::Checked`]: whether every degree dropped by the
    /// complement filter has vanishing factors. `None` in the other modes.
    pub fn filter_is_sound(&self) -> Option<bool> {
        self.filter_sound
    }

    /// Degrees summed over, with their nonzero factors.
    fn active_terms(&self) -> Vec<(VertexSet, &Factors)> {
        let n = self.model.n();
        self.table
            .nonzero()
            .filter(|(d, _)| match (self.options.filter, self.filter_sound) {
                (DualFilter::Trusted, _) | (DualFilter::Checked, Some(true)) => {
                    self.degrees.contains(d.complement(n))
                }
                _ => true,
            })
            .collect()
    }

    pub fn cohomology(&self, alpha: &DivisorClass) -> Result<CohomologyResult> {
        self.model.check_class(alpha)?;
        let terms = self.active_terms();
        let counts = exec::map(self.options.execution, &terms, |(d, _)| {
            self.counter.count(alpha.as_slice(), *d)
        });
        self.assemble(alpha, &terms, counts)
    }

    fn assemble(
        &self,
        alpha: &DivisorClass,
        terms: &[(VertexSet, &Factors)],
        counts: Vec<CountResult>,
    ) -> Result<CohomologyResult> {
        let d = self.model.dimension();
        let mut dims = vec![BigUint::zero(); d + 1];
        let mut breakdown = Vec::with_capacity(terms.len());
        for ((degree, factors), count) in terms.iter().zip(counts) {
            let c = match &count {
                CountResult::Infinite => {
                    return Err(Error::NonFinite {
                        alpha: alpha.0.clone(),
                        degree: *degree,
                    })
                }
                CountResult::Finite(c) => c.clone(),
            };
            let mut by_index = BTreeMap::new();
            for (&r, &beta) in factors.iter() {
                let i = degree.len() - r;
                if i > d {
                    return Err(Error::DegreeOutOfRange { index: i, dimension: d });
                }
                let v = &c * beta;
                if !v.is_zero() {
                    dims[i] += &v;
                    by_index.insert(i, v);
                }
            }
            breakdown.push(Contribution {
                degree: *degree,
                count,
                factors: (*factors).clone(),
                by_index,
            });
        }
        Ok(CohomologyResult {
            alpha: alpha.clone(),
            dims,
            breakdown,
        })
    }

    /// Element-wise [`cohomology`](Self::cohomology), in input order.
    pub fn cohomology_all(&self, alphas: &[DivisorClass]) -> Vec<Result<CohomologyResult>> {
        let terms = self.active_terms();
        exec::map(self.options.execution, alphas, |alpha| {
            self.model.check_class(alpha)?;
            let counts = terms
                .iter()
                .map(|(d, _)| self.counter.count(alpha.as_slice(), *d))
                .collect();
            self.assemble(alpha, &terms, counts)
        })
    }

    /// Up to `limit` elements of the neg-group `(α, σ)`, lexicographically.
    pub fn neg_group(&self, alpha: &DivisorClass, sigma: VertexSet, limit: usize) -> Result<Vec<DegreeVector>> {
        self.model.check_class(alpha)?;
        self.counter.enumerate(alpha.as_slice(), sigma, limit)
    }

    /// Compare `h^i(α)` with `h^{d−i}(K − α)`.
    pub fn serre_check(&self, alpha: &DivisorClass) -> Result<SerreReport> {
        let k = self.model.canonical_class();
        let dual_alpha = DivisorClass(k.0.iter().zip(&alpha.0).map(|(a, b)| a - b).collect());
        let dims = self.cohomology(alpha)?.dims;
        let dual_dims = self.cohomology(&dual_alpha)?.dims;
        let pass = dims.iter().eq(dual_dims.iter().rev());
        Ok(SerreReport {
            alpha: alpha.clone(),
            dual_alpha,
            dims,
            dual_dims,
            pass,
        })
    }
}

/// One-shot cohomology with default options.
pub fn cohomology(model: &ToricVarietyModel, alpha: &DivisorClass) -> Result<CohomologyResult> {
    Engine::new(model)?.cohomology(alpha)
}

/// One-shot batch cohomology with default options.
pub fn cohomology_all(model: &ToricVarietyModel, alphas: &[DivisorClass]) -> Result<Vec<Result<CohomologyResult>>> {
    Ok(Engine::new(model)?.cohomology_all(alphas))
}

/// Every class in the inclusive box, lexicographically ordered.
pub fn class_box(ranges: &[(i64, i64)]) -> Vec<DivisorClass> {
    let mut out = vec![Vec::new()];
    for &(lo, hi) in ranges {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (lo..=hi).map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(DivisorClass).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(ix: &[usize]) -> VertexSet {
        VertexSet::from_indices(ix.iter().map(|i| i - 1))
    }

    fn p2() -> ToricVarietyModel {
        ToricVarietyModel::new(
            vec!["x1".into(), "x2".into(), "x3".into()],
            2,
            vec![vec![1], vec![1], vec![1]],
            Some(vec![vs(&[1, 2, 3])]),
            None,
        )
        .unwrap()
    }

    fn p1p1() -> ToricVarietyModel {
        ToricVarietyModel::new(
            (1..=4).map(|i| format!("x{i}")).collect(),
            2,
            vec![vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1]],
            Some(vec![vs(&[1, 2]), vs(&[3, 4])]),
            None,
        )
        .unwrap()
    }

    fn dims(e: &Engine, alpha: &[i64]) -> Vec<u64> {
        e.cohomology(&DivisorClass(alpha.to_vec())).unwrap().dims_u64().unwrap()
    }

    #[test]
    fn engine_examples() {
        let e = Engine::new(&p2()).unwrap();
        assert_eq!(dims(&e, &[2]), vec![6, 0, 0]);
        assert_eq!(dims(&e, &[-3]), vec![0, 0, 1]);
        assert_eq!(dims(&e, &[0]), vec![1, 0, 0]);
        let e = Engine::new(&p1p1()).unwrap();
        assert_eq!(dims(&e, &[-2, 3]), vec![0, 4, 0]);
        assert_eq!(dims(&e, &[0, 0]), vec![1, 0, 0]);
        assert_eq!(e.filter_is_sound(), Some(true));
    }

    #[test]
    fn breakdown_sums_to_dims() {
        let e = Engine::new(&p1p1()).unwrap();
        let r = e.cohomology(&DivisorClass(vec![-2, 3])).unwrap();
        let mut sums = vec![BigUint::zero(); 3];
        for c in &r.breakdown {
            for (i, v) in &c.by_index {
                sums[*i] += v;
            }
        }
        assert_eq!(sums, r.dims);
        let hit = r.breakdown.iter().find(|c| !c.by_index.is_empty()).unwrap();
        assert_eq!(hit.degree, vs(&[1, 2]));
        assert_eq!(hit.count, CountResult::Finite(BigUint::from(4u32)));
    }

    #[test]
    fn batch_examples() {
        let e = Engine::new(&p2()).unwrap();
        let alphas = class_box(&[(-1, 1)]);
        let got: Vec<_> = e
            .cohomology_all(&alphas)
            .into_iter()
            .map(|r| r.unwrap().dims_u64().unwrap())
            .collect();
        assert_eq!(got, vec![vec![0, 0, 0], vec![1, 0, 0], vec![3, 0, 0]]);
        assert!(e.cohomology_all(&[]).is_empty());
    }

    #[test]
    fn wrong_class_length() {
        let e = Engine::new(&p2()).unwrap();
        assert!(matches!(e.cohomology(&DivisorClass(vec![0, 1])), Err(Error::Dimension(_))));
        let r = e.cohomology_all(&[DivisorClass(vec![1]), DivisorClass(vec![])]);
        assert!(r[0].is_ok() && r[1].is_err());
    }

    #[test]
    fn serre_examples() {
        let e = Engine::new(&p2()).unwrap();
        let rep = e.serre_check(&DivisorClass(vec![2])).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.dual_alpha, DivisorClass(vec![-5]));
        assert_eq!(rep.dual_dims, vec![0u32, 0, 6].into_iter().map(BigUint::from).collect::<Vec<_>>());
        let e = Engine::new(&p1p1()).unwrap();
        assert!(e.serre_check(&DivisorClass(vec![0, 0])).unwrap().pass);
    }

    #[test]
    fn class_box_order() {
        let b = class_box(&[(-1, 0), (2, 3)]);
        let v: Vec<_> = b.iter().map(|c| c.0.clone()).collect();
        assert_eq!(v, vec![vec![-1, 2], vec![-1, 3], vec![0, 2], vec![0, 3]]);
    }
}
