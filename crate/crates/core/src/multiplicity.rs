//! Multiplicity factors: graded Betti numbers `β_{r,σ}(S/I)` read off as
//! `dim H̃_{r−1}` of the exact-degree collection of generator subsets.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::exec::{self, Execution};
use crate::simplicial::reduced_homology;
use crate::srscan::{gamma_complex, DegreeSet};
use crate::vertex_set::VertexSet;

/// Sparse `r ↦ β_r`, nonzero entries only.
pub type Factors = BTreeMap<usize, u64>;

/// Nonzero multiplicity factors of one squarefree degree.
pub fn multiplicity_factors(degrees: &DegreeSet, degree: VertexSet) -> Result<Factors> {
    let gamma = gamma_complex(degrees, degree)?;
    let h = reduced_homology(&gamma)?;
    // faces of size r sit in chain degree r − 1, so r ≤ |degree| automatically
    Ok(h.iter()
        .filter(|(_, d)| *d != 0)
        .map(|(j, d)| ((j + 1) as usize, d as u64))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiplicityTable {
    entries: BTreeMap<VertexSet, Factors>,
}

impl MultiplicityTable {
    /// Factors for a degree in the table; empty maps mean "evaluated, all zero".
    pub fn get(&self, degree: VertexSet) -> Option<&Factors> {
        self.entries.get(&degree)
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexSet, &Factors)> + '_ {
        self.entries.iter().map(|(d, f)| (*d, f))
    }

    /// Entries with at least one nonzero factor.
    pub fn nonzero(&self) -> impl Iterator<Item = (VertexSet, &Factors)> + '_ {
        self.iter().filter(|(_, f)| !f.is_empty())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Tabulate the factors of every listed degree.
pub fn multiplicity_table(degrees: &DegreeSet, contributing: &[VertexSet]) -> Result<MultiplicityTable> {
    multiplicity_table_with(degrees, contributing, Execution::default())
}

pub fn multiplicity_table_with(
    degrees: &DegreeSet,
    contributing: &[VertexSet],
    execution: Execution,
) -> Result<MultiplicityTable> {
    let rows = exec::map(execution, contributing, |d| {
        multiplicity_factors(degrees, *d).map(|f| (*d, f))
    });
    Ok(MultiplicityTable {
        entries: rows.into_iter().collect::<Result<_>>()?,
    })
}
