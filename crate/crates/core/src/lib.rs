//! Exact verification of partition identities attached to the Hecke coset
//! sets `C_N` and `C'_N`.
//!
//! - [`arith`]: phi, mu, sigma, the Dedekind psi and friends
//! - [`matrices`]: coset enumeration, the stripping bijection, coset sums
//! - [`cyclotomic`]: exact arithmetic in `Z[zeta_N]`
//! - [`series`]: truncated power series, partition numbers, Euler products
//! - [`identities`]: the checks themselves and their reports

pub mod arith;
pub mod cyclotomic;
pub mod error;
pub mod identities;
pub mod matrices;
pub mod series;

pub use cyclotomic::{cyclotomic_poly, zeta_pow, CycInt, CyclotomicRing, IntPolynomial};
pub use error::{Error, Result};
pub use identities::{IdentityId, Mismatch, UpperHalfPoint, VerifyReport};
pub use matrices::{enumerate_c, enumerate_c_prime, lemma_sums, strip, HeckeMatrix, LemmaSums};
pub use series::{
    euler_product, partition_numbers, partition_series, product_of, Coefficient, CycSeries,
    IntSeries, Integers, TruncSeries,
};
