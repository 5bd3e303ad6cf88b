//! Exact polynomial invariants of 2×2 generic matrices.
//!
//! Every arrow `a` carries a generic matrix `X_a` with entries `x_ij(a)`. A
//! closed path `a_1 ⋯ a_s` gives `σ_k(X_{a_s} ⋯ X_{a_1})`. An invariant is
//! decomposable when it is a polynomial in invariants of strictly lower
//! degree; the oracle here decides this by linear algebra in one graded
//! component at a time.

pub mod amitsur;
pub mod crossval;
pub mod echelon;
pub mod field;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod relations;

pub use amitsur::{
    amitsur_polynomial, amitsur_residual, amitsur_terms, check_amitsur, check_linearizations, partial_linearization,
    AmitsurCheck, AmitsurError, AmitsurTerm, LinearizationCheck,
};
pub use crossval::{closed_paths_up_to, cross_validate, cross_validate_over, CrossValidationError, CrossValidationReport};
pub use echelon::Echelon;
pub use field::{Field, FieldKind, Fp, Gf2, Gf3, Rational};
pub use matrix::{path_product, sigma_of_word, variable_index, variable_name, GMat};
pub use poly::{Monomial, Poly};
pub use oracle::{decomposability_oracle, DecomposabilityOracle, OracleError, OracleReport};
pub use relations::{
    check_random_identities, check_relation_identities, Ansatz, Generator, RandomIdentityReport, RelationCheck,
    RelationKind, RelationReport,
};
