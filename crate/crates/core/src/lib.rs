//! Dimensions of line bundle cohomology on simplicial projective toric
//! varieties.
//!
//! The main route ([`engine`]) combines neg-group lattice point counts with
//! graded Betti numbers of the Stanley–Reisner ring, read off from unions of
//! generator supports. An independent route through the fan complex lives in
//! [`oracle`].
//!
//! ```
//! use toric_cohom::{bundled, DivisorClass, Engine};
//!
//! let p2 = bundled::model("P2").unwrap();
//! let r = Engine::new(&p2).unwrap().cohomology(&DivisorClass(vec![-3])).unwrap();
//! assert_eq!(r.dims_u64().unwrap(), vec![0, 0, 1]);
//! ```

pub mod bundled;
pub mod counting;
pub mod engine;
pub mod error;
pub mod exec;
pub mod linalg;
pub mod model;
pub mod multiplicity;
pub mod oracle;
pub mod simplicial;
pub mod srscan;
pub mod vertex_set;

pub use counting::{enumerate_neg_group, neg_group_count, CountResult, NegGroupCounter, NegGroupQuery};
pub use engine::{class_box, CohomologyResult, Contribution, DualFilter, Engine, EngineOptions, SerreReport};
pub use error::{Error, Result};
pub use exec::Execution;
pub use model::{parse_variety, DegreeVector, DivisorClass, ToricVarietyModel};
pub use multiplicity::{multiplicity_factors, multiplicity_table, Factors, MultiplicityTable};
pub use oracle::{cohomology_via_fan, fan_complex, hochster_check, FanOracle, HochsterReport};
pub use simplicial::{alexander_dual, link, reduced_homology, restrict, FaceSet, HomologyDims};
pub use srscan::{contributing_degrees, gamma_complex, scan_powerset, DegreeSet};
pub use vertex_set::VertexSet;
