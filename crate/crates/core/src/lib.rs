//! Linear discrepancy laboratory.
//!
//! `lindisc(A) = max_{w ∈ [0,1]^n} min_{x ∈ {0,1}^n} ‖A(w − x)‖∞`. This crate
//! evaluates the inner minimum exactly, brackets the outer maximum with a
//! certified branch-and-bound, and builds the gadget-based reductions from
//! NAE3SAT and NAE∀∃3SAT whose images have discrepancy at most 4/3 on YES
//! instances and at least 3/2 on NO instances.
//!
//! All arithmetic is exact ([`Rational`] is backed by arbitrary-precision
//! integers).

pub mod error;
pub mod gadget;
pub mod nae;
pub mod numeric;
pub mod pipeline;
pub mod reduction;
pub mod solver;

pub use error::{Error, Result};
pub use gadget::{check_gadget_soundness, gadget_matrix, round_gadget, GadgetCase, GadgetRounding, Sign};
pub use nae::{
    eval_nae, parse_formula, solve_forall_exists, solve_nae, Assignment, Clause, ForallExists, Literal,
    NaeFormula, QuantifiedNaeFormula,
};
pub use numeric::{inf_norm, mat_vec_mul, RMatrix, RVector, Rational};
pub use pipeline::{verify_gap, GapConfig, GapReport, Mode};
pub use reduction::{
    adversary_point, build_clause_matrix, build_np_matrix, build_pi2_matrix, completeness_witness,
    extract_assignment, pi2_completeness_witness, pi2_soundness_check, BlockView, ReducedInstance,
    ReductionKind, WitnessResult,
};
pub use solver::{
    certify_upper, grid_oracle, lindisc_at, lindisc_global, lipschitz_constant, Certificate, InnerResult,
    SearchConfig, UpperCheck, UpperVerdict,
};

/// The YES-side bound: every reduced YES instance has discrepancy at most 4/3.
pub fn completeness_bound() -> Rational {
    Rational::frac(4, 3)
}

/// The NO-side bound: every reduced NO instance has discrepancy at least 3/2.
pub fn soundness_bound() -> Rational {
    Rational::frac(3, 2)
}
