//! Exact combinatorial subroutines behind Monroe, max-Phragmén and perfect
//! representation.

pub mod flow;
mod load;
mod monroe;
pub mod oracle;
mod pr;

pub use load::{
    min_max_load, min_max_load_value, DualCertificate, LoadDistribution, LoadError, MinMaxLoad,
};
pub use monroe::{monroe_min_misrep, BalancedAssignment};
pub use pr::{pr_assignment, PrError, PrPartition};
pub(crate) use pr::require_divisible;
