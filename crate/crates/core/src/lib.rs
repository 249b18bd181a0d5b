//! Exactness certificates for weighted LP relaxations of nonnegative 0-1
//! programs.
//!
//! The pipeline: reformulate `min sum(x) s.t. Ax >= b, x in {0,1}^n` with
//! slacks, bound the goodness quantity of the constraint matrix through `n`
//! small infinity-norm LPs, solve the weighted relaxation `min c.x`, and when
//! the bound certifies a unique sparse optimum, round it up to a 0-1 optimum.

pub mod instance;
pub mod lp;
pub mod goodness;
pub mod certify;
pub mod report;
