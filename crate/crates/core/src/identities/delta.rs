//! Floating-point check of the product formula
//! `prod_{gamma in C_N} Delta(gamma tau) = (-Delta(tau))^psi(N)`.
//!
//! Values are carried as `(log |Delta|, arg Delta)` pairs so that products
//! of many small values never underflow. The truncated q-series is summed
//! in double-double arithmetic: near `Im(tau) ~ 0.15` the alternating
//! coefficients cancel by ten orders of magnitude.

use std::f64::consts::{PI, TAU};
use std::time::Instant;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_traits::{FromPrimitive, ToPrimitive};
use twofloat::TwoFloat;
use serde::{Deserialize, Serialize};

use super::report::{IdentityId, Mismatch, Params, VerifyReport};
use crate::arith;
use crate::error::{Error, Result};
use crate::matrices::{enumerate_c, HeckeMatrix};
use crate::series::{euler_product, IntSeries, Integers};

/// A point `tau` with `Im(tau) > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UpperHalfPoint {
    re: f64,
    im: f64,
}

impl UpperHalfPoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !(im > 0.0) || !re.is_finite() || !im.is_finite() {
            return Err(Error::NotInUpperHalfPlane { im });
        }
        Ok(UpperHalfPoint { re, im })
    }

    pub fn i() -> Self {
        UpperHalfPoint { re: 0.0, im: 1.0 }
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    /// `(a tau + b) / d`.
    pub fn act(&self, m: &HeckeMatrix) -> Self {
        let (a, b, d) = (m.a as f64, m.b as f64, m.d as f64);
        UpperHalfPoint {
            re: (a * self.re + b) / d,
            im: a * self.im / d,
        }
    }

    /// `|q|` for `q = e^{2 pi i tau}`.
    pub fn nome_abs(&self) -> f64 {
        (-TAU * self.im).exp()
    }

    pub fn nome(&self) -> Complex64 {
        Complex64::from_polar(self.nome_abs(), TAU * self.re)
    }
}

/// `q prod_{n >= 1} (1 - q^n)^24` truncated at `q^T`; requires `T >= 1`.
pub fn delta_q_series(trunc: usize) -> Result<IntSeries> {
    if trunc == 0 {
        return Err(Error::ZeroArgument {
            op: "delta_q_series",
        });
    }
    let mut coeffs = vec![BigInt::default()];
    coeffs.extend(euler_product(trunc - 1, 24).into_coeffs());
    IntSeries::from_coeffs(Integers, coeffs)
}

/// Bound on `|Delta(tau) - Delta_T(tau)| / |Delta(tau)|` for the series
/// truncated at `q^T`.
///
/// The difference to the series at `2T` is measured directly; the terms
/// beyond `2T` are bounded with `|tau(n)| <= d(n) n^{11/2} <= 2 n^6`. The
/// result is infinite when the error is not dominated by the computed value.
pub fn delta_tail_bound(tau: &UpperHalfPoint, trunc: usize) -> f64 {
    let short = euler24_coeffs(trunc);
    let long = euler24_coeffs(2 * trunc);
    tail_bound_with(&short, &long, tau, 2 * trunc)
}

/// `ln sum_{n > T} 2 n^6 |q|^n`.
fn ln_abs_tail(tau: &UpperHalfPoint, trunc: usize) -> f64 {
    let ln_r = -TAU * tau.im;
    let peak = 6.0 / -ln_r;
    let ln_term = |n: f64| 2f64.ln() + 6.0 * n.ln() + n * ln_r;
    // factor out the first term so the sum stays representable
    let first = trunc as f64 + 1.0;
    let ln_first = ln_term(first);
    let mut sum = 0.0;
    let mut n = first;
    loop {
        let rel = (ln_term(n) - ln_first).exp();
        sum += rel;
        if n > peak && rel <= sum * 1e-17 {
            break;
        }
        if n - first > 1e6 {
            return f64::INFINITY;
        }
        n += 1.0;
    }
    ln_first + sum.ln()
}

fn tail_bound_with(
    short: &[TwoFloat],
    long: &[TwoFloat],
    tau: &UpperHalfPoint,
    long_trunc: usize,
) -> f64 {
    // work with Delta / q so nothing underflows
    let q = tau.nome();
    let value = eval_compensated(short, q);
    let reference = eval_compensated(long, q);
    let far_tail = (ln_abs_tail(tau, long_trunc) + TAU * tau.im).exp();
    let ratio = ((value - reference).norm() + far_tail) / value.norm();
    if ratio >= 1.0 || ratio.is_nan() {
        f64::INFINITY
    } else {
        ratio / (1.0 - ratio)
    }
}

/// Exact-as-possible double-double image of an integer coefficient.
fn to_two_float(c: &BigInt) -> TwoFloat {
    let hi = c.to_f64().unwrap_or(f64::NAN);
    let lo = BigInt::from_f64(hi)
        .map(|h| (c - h).to_f64().unwrap_or(0.0))
        .unwrap_or(0.0);
    TwoFloat::new_add(hi, lo)
}

/// Horner evaluation with a double-double accumulator.
fn eval_compensated(coeffs: &[TwoFloat], q: Complex64) -> Complex64 {
    let q = Complex::new(TwoFloat::from(q.re), TwoFloat::from(q.im));
    let mut acc = Complex::new(TwoFloat::from(0.0), TwoFloat::from(0.0));
    for c in coeffs.iter().rev() {
        acc = acc * q + Complex::new(*c, TwoFloat::from(0.0));
    }
    Complex64::new(f64::from(acc.re), f64::from(acc.im))
}

/// `(log |Delta(tau)|, arg Delta(tau))` from precomputed `prod (1 - q^n)^24`
/// coefficients; the `q` prefactor is applied in log space.
fn log_delta(euler24: &[TwoFloat], tau: &UpperHalfPoint) -> (f64, f64) {
    let value = eval_compensated(euler24, tau.nome());
    (-TAU * tau.im + value.norm().ln(), TAU * tau.re + value.arg())
}

fn euler24_coeffs(trunc: usize) -> Vec<TwoFloat> {
    euler_product(trunc.saturating_sub(1), 24)
        .coeffs()
        .iter()
        .map(to_two_float)
        .collect()
}

/// `Delta(tau)` from the series truncated at `q^T`.
pub fn delta_at(tau: &UpperHalfPoint, trunc: usize) -> Result<Complex64> {
    let series = delta_q_series(trunc)?;
    let coeffs: Vec<TwoFloat> = series.coeffs().iter().map(to_two_float).collect();
    Ok(eval_compensated(&coeffs, tau.nome()))
}

fn wrap_angle(x: f64) -> f64 {
    let w = (x + PI).rem_euclid(TAU) - PI;
    if w <= -PI {
        w + TAU
    } else {
        w
    }
}

/// Compares `prod Delta(gamma tau)` with `(-Delta(tau))^psi(N)` through the
/// relative error `|e^{dL + i dArg} - 1|`.
pub fn verify_delta_hecke(
    n: u64,
    tau: UpperHalfPoint,
    trunc: usize,
    tol: f64,
) -> Result<VerifyReport> {
    let started = Instant::now();
    let cosets = enumerate_c(n)?;
    let psi = arith::psi(n)? as f64;
    if trunc == 0 {
        return Err(Error::ZeroArgument {
            op: "verify_delta_hecke",
        });
    }

    // first-order propagation of the per-point truncation errors
    let euler24 = euler24_coeffs(trunc);
    let reference = euler24_coeffs(2 * trunc);
    let images: Vec<UpperHalfPoint> = cosets.iter().map(|m| tau.act(m)).collect();
    let mut total_bound = psi * tail_bound_with(&euler24, &reference, &tau, 2 * trunc);
    let mut worst = (total_bound, tau.im);
    for p in &images {
        let bound = tail_bound_with(&euler24, &reference, p, 2 * trunc);
        total_bound += bound;
        if bound > worst.0 {
            worst = (bound, p.im);
        }
    }
    if !(total_bound <= tol) {
        return Err(Error::TruncationTooShort {
            trunc,
            im: worst.1,
            bound: total_bound,
            tol,
        });
    }

    let (mut lhs_log, mut lhs_arg) = (0.0, 0.0);
    for p in &images {
        let (l, a) = log_delta(&euler24, p);
        lhs_log += l;
        lhs_arg += a;
    }
    let (base_log, base_arg) = log_delta(&euler24, &tau);
    let rhs_log = psi * base_log;
    let rhs_arg = psi * (base_arg + PI);

    let diff = Complex64::new(lhs_log - rhs_log, wrap_angle(lhs_arg - rhs_arg));
    let rel_error = (diff.exp() - 1.0).norm();

    let mut params = Params::new()
        .with("N", n)
        .with("T", trunc)
        .with("tau_re", tau.re)
        .with("tau_im", tau.im)
        .with("tol", tol)
        .with("tail_bound", total_bound)
        .with("lhs_log_abs", lhs_log)
        .with("lhs_arg", wrap_angle(lhs_arg))
        .with("rhs_log_abs", rhs_log)
        .with("rhs_arg", wrap_angle(rhs_arg))
        .with("rel_error", rel_error);
    let mismatch = if n == 1 {
        params.set(
            "special_case",
            "N = 1: the product is Delta(tau) itself while the right side is -Delta(tau); \
             recorded, not asserted",
        );
        None
    } else if !(rel_error < tol) {
        Some(Mismatch::new(
            0,
            format!("log|.| = {lhs_log}, arg = {}", wrap_angle(lhs_arg)),
            format!("log|.| = {rhs_log}, arg = {}", wrap_angle(rhs_arg)),
        ))
    } else {
        None
    };
    Ok(VerifyReport::finish(
        IdentityId::DeltaHecke,
        params,
        mismatch,
        started,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau(re: f64, im: f64) -> UpperHalfPoint {
        UpperHalfPoint::new(re, im).unwrap()
    }

    #[test]
    fn rejects_lower_half_plane() {
        assert!(UpperHalfPoint::new(0.0, 0.0).is_err());
        assert!(UpperHalfPoint::new(0.3, -1.0).is_err());
        assert!(UpperHalfPoint::new(0.3, f64::NAN).is_err());
    }

    #[test]
    fn q_series_examples() {
        assert_eq!(delta_q_series(1).unwrap(), IntSeries::from_i64(&[0, 1]).unwrap());
        assert_eq!(
            delta_q_series(2).unwrap(),
            IntSeries::from_i64(&[0, 1, -24]).unwrap()
        );
        assert_eq!(
            delta_q_series(3).unwrap(),
            IntSeries::from_i64(&[0, 1, -24, 252]).unwrap()
        );
        assert!(delta_q_series(0).is_err());
    }

    // tau(n) is multiplicative with tau(p^2) = tau(p)^2 - p^11 tau(1)
    #[test]
    fn ramanujan_tau_relations() {
        let t = delta_q_series(30).unwrap().into_coeffs();
        assert_eq!(t[6], &t[2] * &t[3]);
        assert_eq!(t[10], &t[2] * &t[5]);
        assert_eq!(t[4], &t[2] * &t[2] - BigInt::from(2i64.pow(11)));
        assert_eq!(t[9], &t[3] * &t[3] - BigInt::from(3i64.pow(11)));
    }

    #[test]
    fn delta_at_i() {
        let d40 = delta_at(&UpperHalfPoint::i(), 40).unwrap();
        let d60 = delta_at(&UpperHalfPoint::i(), 60).unwrap();
        assert!(d40.re > 0.0);
        assert!(d40.im.abs() <= 1e-15 * d40.re);
        assert!((d40 - d60).norm() <= 1e-12 * d60.norm());

        let shifted = delta_at(&tau(1.0, 1.0), 40).unwrap();
        assert!((shifted - d40).norm() <= 1e-12 * d40.norm());

        let d2i = delta_at(&tau(0.0, 2.0), 40).unwrap();
        assert!(d2i.re > 0.0 && d2i.norm() < d40.norm());
    }

    #[test]
    fn log_form_matches_direct_evaluation() {
        let trunc = 60;
        let e24 = euler24_coeffs(trunc);
        for p in [tau(0.0, 1.0), tau(0.3, 0.9), tau(1.0 / 3.0, 4.0 / 3.0)] {
            let (l, a) = log_delta(&e24, &p);
            let direct = delta_at(&p, trunc).unwrap();
            let from_log = Complex64::from_polar(l.exp(), a);
            assert!((from_log - direct).norm() <= 1e-13 * direct.norm());
        }
    }

    /// `q prod (1 - q^n)^24` straight from the product, which is well
    /// conditioned in floating point.
    fn delta_by_product(p: &UpperHalfPoint) -> Complex64 {
        let q = p.nome();
        let mut acc = q;
        let mut qn = Complex64::new(1.0, 0.0);
        for _ in 1..=400 {
            qn *= q;
            acc *= (Complex64::new(1.0, 0.0) - qn).powu(24);
        }
        acc
    }

    #[test]
    fn series_evaluation_survives_cancellation() {
        for p in [tau(0.0, 1.0 / 6.0), tau(0.05, 0.15), tau(0.3 / 6.0, 0.15), tau(0.3, 0.9)] {
            let series = delta_at(&p, 120).unwrap();
            let product = delta_by_product(&p);
            assert!(
                (series - product).norm() <= 1e-12 * product.norm(),
                "{p:?}: {series} vs {product}"
            );
        }
    }

    #[test]
    fn tail_bound_behaves() {
        let p = UpperHalfPoint::i();
        assert!(delta_tail_bound(&p, 60) < 1e-100);
        assert!(delta_tail_bound(&p, 60) < delta_tail_bound(&p, 20));
        assert!(delta_tail_bound(&tau(0.0, 0.01), 60) > 1.0);
    }

    #[test]
    fn hecke_product_small_levels() {
        let r = verify_delta_hecke(2, UpperHalfPoint::i(), 60, 1e-9).unwrap();
        assert!(r.pass(), "{r}");
        let r = verify_delta_hecke(3, tau(1.0 / 3.0, 4.0 / 3.0), 60, 1e-9).unwrap();
        assert!(r.pass(), "{r}");
    }

    #[test]
    fn level_one_is_recorded() {
        let r = verify_delta_hecke(1, UpperHalfPoint::i(), 60, 1e-8).unwrap();
        assert!(r.pass());
        assert!(r.param("special_case").is_some());
        // the raw sides differ by the sign: arguments are pi apart
        let la = r.param("lhs_arg").unwrap().as_f64().unwrap();
        let ra = r.param("rhs_arg").unwrap().as_f64().unwrap();
        assert!((wrap_angle(la - ra).abs() - PI).abs() < 1e-12);
    }

    #[test]
    fn short_truncation_is_rejected() {
        let err = verify_delta_hecke(6, tau(0.0, 0.2), 10, 1e-8).unwrap_err();
        assert!(matches!(err, Error::TruncationTooShort { .. }));
    }
}
