//! Extremal-configuration search: numerical coherence minimization over
//! `R^d`/`C^d`, and exact enumeration of equiangular families over `Q(t)`.

mod classical;
mod na;

pub use classical::{classical_search, sic_construct_d2, SearchParams, SearchResult};
pub use na::{na_circle_point, na_search, GeneratorSet, NaSearchHit};
