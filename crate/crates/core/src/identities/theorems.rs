//! Exact checks of the partition product identities over `Z[zeta_N]`.
//!
//! For each coset `(a, b; 0, d)` of level `N` the theorem factor is
//! `1 + sum_n zeta_N^(abn) p(n) X^(a^2 n)`; the product over `C_N` (resp.
//! `C'_N`) must equal `P(X^N)^psi(N)` (resp. `sigma(N)`). The q-product form
//! is checked after the substitution `q = Q^N`, which turns
//! `1 - zeta_d^(bn) q^(Nn/d^2)` into `1 - zeta_N^(abn) Q^(a^2 n)`.

use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::report::{IdentityId, Mismatch, Params, VerifyReport};
use crate::arith;
use crate::cyclotomic::{CycInt, CyclotomicRing};
use crate::error::{Error, Result};
use crate::matrices::{enumerate_c, enumerate_c_prime, HeckeMatrix};
use crate::series::{
    euler_product, partition_numbers, partition_series, product_of, CycSeries, IntSeries,
};

fn check_level(m: &HeckeMatrix, n: u64) -> Result<()> {
    if m.level != n || m.a * m.d != n || m.b >= m.d {
        return Err(Error::InvalidMatrix {
            a: m.a,
            b: m.b,
            d: m.d,
            level: n,
        });
    }
    Ok(())
}

fn exponent_of(m: &HeckeMatrix) -> (usize, i64) {
    ((m.a * m.a) as usize, (m.a * m.b) as i64)
}

/// `1 + sum_{a^2 n <= T} zeta_N^(abn) p(n) X^(a^2 n)`.
pub fn factor_for(m: &HeckeMatrix, n: u64, trunc: usize) -> Result<CycSeries> {
    check_level(m, n)?;
    let ring = CyclotomicRing::of(n)?;
    let (step, twist) = exponent_of(m);
    let p = partition_numbers(trunc / step);
    let mut coeffs = vec![CycInt::zero(&ring); trunc + 1];
    for (k, pk) in p.into_iter().enumerate() {
        let z = CycInt::zeta_pow(&ring, (twist * k as i64) % n as i64);
        coeffs[step * k] = &z * &CycInt::from_integer(&ring, pk);
    }
    CycSeries::from_coeffs(ring, coeffs)
}

/// Theorem factors for every coset, built in parallel, in input order.
pub fn theorem_factors(cosets: &[HeckeMatrix], n: u64, trunc: usize) -> Result<Vec<CycSeries>> {
    cosets
        .par_iter()
        .map(|m| factor_for(m, n, trunc))
        .collect()
}

pub fn theorem_lhs(cosets: &[HeckeMatrix], n: u64, trunc: usize) -> Result<CycSeries> {
    let factors = theorem_factors(cosets, n, trunc)?;
    product_of(&CyclotomicRing::of(n)?, trunc, &factors)
}

/// `(1 + sum p(n) X^(Nn))^exponent` truncated at `T`.
pub fn theorem_rhs(n: u64, exponent: u64, trunc: usize) -> Result<IntSeries> {
    if n == 0 {
        return Err(Error::ZeroArgument { op: "theorem_rhs" });
    }
    let n = n as usize;
    Ok(partition_series(trunc / n)
        .inflate_to(n, trunc)?
        .pow(exponent))
}

/// First degree where `lhs` is not the rational integer `rhs` says.
fn first_integer_mismatch(lhs: &CycSeries, rhs: &IntSeries) -> Option<Mismatch> {
    lhs.coeffs()
        .iter()
        .zip(rhs.coeffs())
        .enumerate()
        .find(|(_, (l, r))| l.as_integer().as_ref() != Some(*r))
        .map(|(deg, (l, r))| Mismatch::new(deg as u64, l, r))
}

fn first_mismatch(lhs: &CycSeries, rhs: &CycSeries) -> Option<Mismatch> {
    lhs.coeffs()
        .iter()
        .zip(rhs.coeffs())
        .enumerate()
        .find(|(_, (l, r))| l != r)
        .map(|(deg, (l, r))| Mismatch::new(deg as u64, l, r))
}

/// Compares the product of theorem factors over `cosets` with
/// `P(X^N)^exponent`, coefficient by coefficient. Every LHS coefficient must
/// also collapse to a rational integer.
pub fn verify_with_cosets(
    identity: IdentityId,
    n: u64,
    trunc: usize,
    cosets: &[HeckeMatrix],
    exponent: u64,
) -> Result<VerifyReport> {
    let started = Instant::now();
    let lhs = theorem_lhs(cosets, n, trunc)?;
    let rhs = theorem_rhs(n, exponent, trunc)?;
    let params = Params::new()
        .with("N", n)
        .with("T", trunc)
        .with("factors", cosets.len())
        .with("exponent", exponent);
    let mismatch = first_integer_mismatch(&lhs, &rhs);
    Ok(VerifyReport::finish(identity, params, mismatch, started))
}

/// Product over `C_N` against `P(X^N)^psi(N)`.
pub fn verify_theorem_main(n: u64, trunc: usize) -> Result<VerifyReport> {
    let cosets = enumerate_c(n)?;
    verify_with_cosets(IdentityId::ThmMain, n, trunc, &cosets, arith::psi(n)?)
}

/// Product over `C'_N` against `P(X^N)^sigma(N)`.
pub fn verify_theorem_prime(n: u64, trunc: usize) -> Result<VerifyReport> {
    let cosets = enumerate_c_prime(n)?;
    verify_with_cosets(IdentityId::ThmPrime, n, trunc, &cosets, arith::sigma(n)?)
}

/// Rebuilds the `C'_N` product from the `C_{N/f^2}` products through the
/// stripping bijection: a coset `f * c` contributes the level-`N/f^2` factor
/// of `c` evaluated at `X^(f^2)`. The two routes are compared exactly in
/// `Z[zeta_N]`.
pub fn verify_theorem_consistency(n: u64, trunc: usize) -> Result<VerifyReport> {
    let started = Instant::now();
    let ring = CyclotomicRing::of(n)?;
    let direct = theorem_lhs(&enumerate_c_prime(n)?, n, trunc)?;

    let mut pieces = Vec::new();
    for f in arith::square_divisors(n)? {
        let sub = n / (f * f);
        let f2 = (f * f) as usize;
        let sub_lhs = theorem_lhs(&enumerate_c(sub)?, sub, trunc / f2)?;
        let inflated = sub_lhs.inflate_to(f2, trunc)?;
        let coeffs = inflated
            .coeffs()
            .iter()
            .map(|c| c.embed(&ring))
            .collect::<Result<Vec<_>>>()?;
        pieces.push(CycSeries::from_coeffs(ring.clone(), coeffs)?);
    }
    let rebuilt = product_of(&ring, trunc, &pieces)?;
    let params = Params::new()
        .with("N", n)
        .with("T", trunc)
        .with("route", "moebius_consistency")
        .with("levels", pieces.len());
    let mismatch = first_mismatch(&direct, &rebuilt);
    Ok(VerifyReport::finish(
        IdentityId::ThmPrime,
        params,
        mismatch,
        started,
    ))
}

/// `prod_{a^2 n <= T} (1 - zeta_N^(abn) Q^(a^2 n))`.
pub fn prop_factor(m: &HeckeMatrix, n: u64, trunc: usize) -> Result<CycSeries> {
    check_level(m, n)?;
    let ring = CyclotomicRing::of(n)?;
    let (step, twist) = exponent_of(m);
    let mut out = CycSeries::one(&ring, trunc);
    for k in 1..=trunc / step {
        let z = CycInt::zeta_pow(&ring, (twist * k as i64) % n as i64);
        out.mul_one_minus(&z, step * k);
    }
    Ok(out)
}

/// The q-product identity in the variable `Q` with `q = Q^N`. `primitive`
/// selects `C_N` with exponent `psi(N)`; otherwise `C'_N` with `sigma(N)`.
pub fn verify_prop_q(n: u64, trunc: usize, primitive: bool) -> Result<VerifyReport> {
    let started = Instant::now();
    let (identity, cosets, exponent) = if primitive {
        (IdentityId::PropQ2, enumerate_c(n)?, arith::psi(n)?)
    } else {
        (IdentityId::PropQ1, enumerate_c_prime(n)?, arith::sigma(n)?)
    };
    let ring: Arc<CyclotomicRing> = CyclotomicRing::of(n)?;
    let factors = cosets
        .par_iter()
        .map(|m| prop_factor(m, n, trunc))
        .collect::<Result<Vec<_>>>()?;
    let lhs = product_of(&ring, trunc, &factors)?;
    let nu = n as usize;
    let rhs = euler_product(trunc / nu, exponent as i64).inflate_to(nu, trunc)?;
    let params = Params::new()
        .with("N", n)
        .with("T", trunc)
        .with("factors", cosets.len())
        .with("exponent", exponent)
        .with("primitive", primitive);
    let mismatch = first_integer_mismatch(&lhs, &rhs);
    Ok(VerifyReport::finish(identity, params, mismatch, started))
}

/// Integer coefficients of a theorem LHS, if they all collapse.
pub fn integral_lhs(cosets: &[HeckeMatrix], n: u64, trunc: usize) -> Result<Option<Vec<BigInt>>> {
    Ok(theorem_lhs(cosets, n, trunc)?
        .as_integer_series()
        .map(IntSeries::into_coeffs))
}
