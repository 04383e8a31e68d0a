//! Numerical verification: weak-form residuals, a finite-volume reference
//! solver and the seeded property suite.

pub mod fv;
pub mod quadrature;
pub mod suite;

pub use fv::{compare_fan_fv, fv_solve_trans, refinement_table, FvField, FvGrid};
pub use quadrature::{
    battery, max_weak_residual, tol_weak, weak_residual, weak_residuals, QuadratureConfig, TestFunction, WeakResidual,
};
pub use suite::{property_suite, property_suite_with, Check, Report, SuiteConfig};
