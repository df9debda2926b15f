//! Closed-form complexity values and the named verification suites.

mod formulas;
mod suites;

pub use formulas::{
    decompose, rho_tm_formula, tau_doubled_sturmian_formula, tau_doubled_tm_formula,
    tau_tm_formula, Convention, NDecomposition,
};
pub use suites::{verify_suite, SuiteConfig, SuiteName, SuiteReport, SuiteRow, Verdict};
