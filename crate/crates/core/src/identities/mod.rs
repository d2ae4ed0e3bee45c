//! Verification engine: builds both sides of each identity and compares
//! them, exactly wherever possible.

mod delta;
mod exact;
mod report;
mod theorems;

pub use delta::{
    delta_at, delta_q_series, delta_tail_bound, verify_delta_hecke, UpperHalfPoint,
};
pub use exact::{
    lemma32_closed_forms, verify_exp_identity, verify_lemma32, verify_moebius_relations,
};
pub use report::{IdentityId, Mismatch, VerifyReport};
pub use theorems::{
    factor_for, integral_lhs, prop_factor, theorem_factors, theorem_lhs, theorem_rhs,
    verify_prop_q, verify_theorem_consistency, verify_theorem_main, verify_theorem_prime,
    verify_with_cosets,
};

/// Default truncation for the theorem checks, `max(4N, 48)`.
pub fn default_trunc(n: u64) -> usize {
    (4 * n as usize).max(48)
}
