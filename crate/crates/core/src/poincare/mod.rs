//! Named operator expressions and the symbolic verification suites.

mod library;
mod report;
mod suite;

pub use library::{
    build, build_named, casimir_c1, casimir_c2, cross, dot, foldy_j, foldy_k,
    foldy_k_with_inverse_h, helicity_relations, pauli_lubanski_vector, q_massless, q_pnw, spin_s,
    vector_of, ExpressionName, NamedExpression, PoincareError, Vector3,
};
pub use report::{CheckResult, CheckStatus, VerificationReport};
pub use suite::{jacobi_scan, run_massive_suite, run_massless_suite, DEFAULT_DEGREE_CUTOFF};
