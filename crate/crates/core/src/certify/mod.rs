//! Certification of degree, equitability, design orthogonality and junta
//! structure for families of subspaces.

pub mod covering;
pub mod degree;
pub mod design;
pub mod equitable;
pub mod junta;
pub mod replay;

pub use covering::{covering_family_search, covering_success_rate, default_budget, verify_covering, CoveringOutcome};
pub use degree::{degree_test, dense_degree_test, DegreeStatus, DegreeVerdict, GramSolver};
pub use design::{design_orthogonality_check, divisibility_report, divisibility_table, DivisibilityEntry, DivisibilityReport, OrthogonalityOutcome};
pub use equitable::{equitable_check, quotient_eigen_check, quotient_eigenvalues, EquitableOutcome, QuotientMatrix};
pub use junta::{junta_cover_bound, junta_depends, CoverBound, JuntaOutcome, JuntaVar};
pub use replay::{eval_certificate, evaluate_certificate, ReplayOutcome};
