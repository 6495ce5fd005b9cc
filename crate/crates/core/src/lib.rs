//! Decision calculus built on fuzzy temporal logic.
//!
//! Every judgment is a comparison of wealth changes `x` (factor `1 + x`)
//! brought to a common sense of truth:
//!
//! * [`math`]: generalized exponential/logarithm and change algebra.
//! * [`membership`]: the fuzzy goal "the bigger the better" and the `max` judgment.
//! * [`temporal`]: `N`/`F`/`G`/`GF` hypotheses, meiosis and hyperbole,
//!   and a seeded time-average simulator.
//! * [`discounting`]: the `e_h^(-rho n)` discount family, subadditivity and fitting.
//! * [`time_preference`]: small-soon vs large-late and preference reversal.
//! * [`prospect`]: S-curve lottery valuation, risk-seeking crossover, fairness.
//! * [`cli`]: scenario files and reproduction tables behind the `ftl` binary.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(a < b)` deliberately rejects NaN

pub mod cli;
pub mod discounting;
pub mod error;
pub mod math;
pub mod membership;
pub mod prospect;
mod simplex;
pub mod temporal;
pub mod time_preference;

pub use error::{Error, Result};
pub use math::{gexp, glog, hyperbolic_change, meiotic_change, Change};
pub use membership::{Alternative, MembershipParams};
