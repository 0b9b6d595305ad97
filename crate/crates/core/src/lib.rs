//! Toolkit for corpus studies of preventative expressions in instructional
//! text: *Do not scrub the parquet*, *Be careful not to burn the garlic*.
//!
//! The crate covers the whole study workflow:
//!
//! * [`corpus`]: sentence breaking, pattern probing, seeded sampling and
//!   filtering of hits that are not negative imperatives;
//! * [`annotation`]: the form / intentionality / awareness coding schema,
//!   multi-coder coding sets and form × feature contingency tables;
//! * [`stats`]: percent agreement, the K coefficient, reliability bands and
//!   the continuity-corrected 2×2 χ²;
//! * [`induction`]: a gain-ratio decision tree from function features to
//!   form;
//! * [`realizer`]: template realization of preventative imperatives;
//! * [`cli`]: the `preventkit` command line.
//!
//! ```
//! use preventkit::annotation::ContingencyTable2x2;
//! use preventkit::stats::{chi_square_yates, Significance};
//!
//! let table = ContingencyTable2x2::new(61, 45, 0, 59);
//! let result = chi_square_yates(&table).unwrap();
//! assert!((result.statistic - 51.4).abs() < 0.05);
//! assert_eq!(result.significance, Significance::P001);
//! ```

pub mod annotation;
pub mod cli;
pub mod corpus;
mod error;
pub mod fixtures;
pub mod induction;
pub mod realizer;
pub mod stats;

pub use error::{Error, Result};
