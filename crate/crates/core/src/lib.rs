//! Exact verification of log-concavity hierarchies for integer and rational
//! sequences.
//!
//! Every verdict is decided in exact rational arithmetic, with quadratic
//! surds `α + β√d` compared symbolically. The crate covers:
//!
//! - [`exact`]: rationals and the rational/surd comparator,
//! - [`sequences`]: generators (partition numbers, binomial rows, Hermite and
//!   Laguerre coefficients), normalizations and CSV ingestion,
//! - [`checks`]: the `L` operator hierarchy, Turán and higher order Turán
//!   inequalities, the two-sided ratio bounds and their implications,
//! - [`realroots`]: Sturm-sequence certification of real-rootedness,
//! - [`partition_scan`]: reproducible scans over `p(n)`,
//! - [`cli`]: the `turan` command line front end.

pub mod checks;
pub mod cli;
pub mod dispatch;
pub mod error;
pub mod exact;
pub mod partition_scan;
pub mod realroots;
pub mod report;
pub mod sequences;

pub use checks::{CheckRecord, CheckReport, CheckStatus, NaReason, Summary, Witness};
pub use error::{Error, Result};
pub use exact::{compare_rational_to_surd, surd_bound_pair, ExactRational, SurdValue};
pub use realroots::{certify, RootCertificate};
pub use sequences::{PartitionTable, PolynomialCoeffs, SequenceWindow};
