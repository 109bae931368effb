//! Monte Carlo and numerical-rank experiments.
//!
//! Every sampler draws sample `i` from its own counter-based stream, so
//! results are bit-identical between [`ExecMode::Parallel`] and
//! [`ExecMode::Sequential`] and independent of the worker count.
//!
//! [`ExecMode::Parallel`]: crate::ExecMode::Parallel
//! [`ExecMode::Sequential`]: crate::ExecMode::Sequential

mod census;
mod density;
mod dimension;
mod gribov;
mod kmin;
mod pushforward;
mod report;
pub mod suite;

pub use census::{census_probes, stratum_census, stratum_census_in, CensusReport, CENSUS_SLACK};
pub use density::{density_histogram, quotient_density_histogram, trace_cdf, DensityHistogram};
pub use dimension::{
    codim_check, dimension_probe, family, family_type_probe, Family, FAMILIES, PROBE_STEPS, RANK_THRESHOLD,
};
pub use gribov::{fixed_pivot_coverage, gribov_path, gribov_trace, GribovTrace, FROZEN_PIVOT, JUMP_THRESHOLD};
pub use kmin::kmin_search;
pub use pushforward::{chi_half, chi_one, pushforward_haar_test};
pub use report::{stat_tolerance, ProbeReport};
pub use suite::{verify_suite, SuiteConfig, CRITERIA};
