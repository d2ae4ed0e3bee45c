//! Exact arithmetic in `Z[zeta_N]`.
//!
//! Elements are stored as their residue modulo the cyclotomic polynomial
//! `Phi_N`, which is monic of degree `phi(N)`. Two elements are equal
//! exactly when their residue vectors are equal.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Mul, Neg};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::series::Coefficient;

/// Dense integer polynomial, index = degree, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[n] += 1;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        Self::new(out)
    }

    /// Quotient and remainder by a monic divisor; exact over the integers.
    ///
    /// # Panics
    ///
    /// Panics if `divisor` is not monic.
    pub fn div_rem_monic(&self, divisor: &Self) -> (Self, Self) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::default(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = std::mem::take(&mut rem[i]);
            if c.is_zero() {
                continue;
            }
            for (j, m) in divisor.coeffs[..dd].iter().enumerate() {
                rem[i - dd + j] -= &c * m;
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.coeffs, "x")
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, coeffs: &[BigInt], var: &str) -> fmt::Result {
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
        }
        first = false;
        match (k, mag.is_one()) {
            (0, _) => write!(f, "{mag}")?,
            (1, true) => write!(f, "{var}")?,
            (1, false) => write!(f, "{mag}*{var}")?,
            (_, true) => write!(f, "{var}^{k}")?,
            (_, false) => write!(f, "{mag}*{var}^{k}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

fn phi_table() -> &'static RwLock<HashMap<u64, Arc<IntPolynomial>>> {
    static TABLE: OnceLock<RwLock<HashMap<u64, Arc<IntPolynomial>>>> = OnceLock::new();
    TABLE.get_or_init(Default::default)
}

/// The `n`-th cyclotomic polynomial, `(x^n - 1) / prod_{d | n, d < n} Phi_d`.
///
/// Results are memoized process-wide.
pub fn cyclotomic_poly(n: u64) -> Result<Arc<IntPolynomial>> {
    if n == 0 {
        return Err(Error::ZeroArgument {
            op: "cyclotomic_poly",
        });
    }
    if let Some(p) = phi_table().read().unwrap().get(&n) {
        return Ok(p.clone());
    }
    let mut poly = IntPolynomial::x_pow_minus_one(n as usize);
    for d in arith::divisors(n)? {
        if d == n {
            continue;
        }
        let (q, r) = poly.div_rem_monic(cyclotomic_poly(d)?.as_ref());
        debug_assert!(r.is_zero());
        poly = q;
    }
    let poly = Arc::new(poly);
    // a concurrent caller may have inserted the same value; keep the first
    Ok(phi_table()
        .write()
        .unwrap()
        .entry(n)
        .or_insert(poly)
        .clone())
}

/// The ring `Z[zeta_N] = Z[x] / Phi_N`, with the residues of `x^k` for
/// `0 <= k < N` precomputed.
#[derive(Debug)]
pub struct CyclotomicRing {
    level: u64,
    modulus: Arc<IntPolynomial>,
    powers: Vec<Vec<BigInt>>,
}

impl PartialEq for CyclotomicRing {
    fn eq(&self, other: &Self) -> bool {
        self.level == other.level
    }
}

impl Eq for CyclotomicRing {}

impl CyclotomicRing {
    /// Shared ring of level `n`; memoized.
    pub fn of(n: u64) -> Result<Arc<CyclotomicRing>> {
        static RINGS: OnceLock<RwLock<HashMap<u64, Arc<CyclotomicRing>>>> = OnceLock::new();
        let rings = RINGS.get_or_init(Default::default);
        if n == 0 {
            return Err(Error::ZeroArgument {
                op: "CyclotomicRing::of",
            });
        }
        if let Some(r) = rings.read().unwrap().get(&n) {
            return Ok(r.clone());
        }
        let ring = Arc::new(Self::build(n)?);
        Ok(rings.write().unwrap().entry(n).or_insert(ring).clone())
    }

    fn build(n: u64) -> Result<Self> {
        let modulus = cyclotomic_poly(n)?;
        let deg = modulus.coeffs().len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut current = vec![BigInt::zero(); deg];
        current[0] = BigInt::one();
        for _ in 0..n {
            powers.push(current.clone());
            // multiply by x: shift up, then fold x^deg = -(Phi_N - x^deg)
            let top = current.pop().unwrap();
            current.insert(0, BigInt::zero());
            if !top.is_zero() {
                for (c, m) in current.iter_mut().zip(&modulus.coeffs()[..deg]) {
                    *c -= &top * m;
                }
            }
        }
        Ok(CyclotomicRing {
            level: n,
            modulus,
            powers,
        })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// `phi(N)`, the length of every residue vector.
    pub fn degree(&self) -> usize {
        self.modulus.coeffs().len() - 1
    }

    pub fn modulus(&self) -> &IntPolynomial {
        &self.modulus
    }

    /// Reduces an arbitrary-length coefficient vector modulo `Phi_N`.
    pub fn reduce(&self, mut coeffs: Vec<BigInt>) -> Vec<BigInt> {
        let deg = self.degree();
        let phi = self.modulus.coeffs();
        for i in (deg..coeffs.len()).rev() {
            let c = std::mem::take(&mut coeffs[i]);
            if c.is_zero() {
                continue;
            }
            for (j, m) in phi[..deg].iter().enumerate() {
                if !m.is_zero() {
                    coeffs[i - deg + j] -= &c * m;
                }
            }
        }
        coeffs.resize(deg, BigInt::zero());
        coeffs
    }
}

/// Element of `Z[zeta_N]` in canonical residue form.
#[derive(Clone)]
pub struct CycInt {
    ring: Arc<CyclotomicRing>,
    coeffs: Vec<BigInt>,
}

impl PartialEq for CycInt {
    fn eq(&self, other: &Self) -> bool {
        self.ring.level == other.ring.level && self.coeffs == other.coeffs
    }
}

impl Eq for CycInt {}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt[{}]({})", self.ring.level, self)
    }
}

/// Prints the residue as a polynomial in `z = zeta_N`.
impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.coeffs, "z")
    }
}

impl CycInt {
    pub fn from_integer(ring: &Arc<CyclotomicRing>, value: BigInt) -> Self {
        let mut coeffs = vec![BigInt::zero(); ring.degree()];
        coeffs[0] = value;
        CycInt {
            ring: ring.clone(),
            coeffs,
        }
    }

    pub fn zero(ring: &Arc<CyclotomicRing>) -> Self {
        Self::from_integer(ring, BigInt::zero())
    }

    pub fn one(ring: &Arc<CyclotomicRing>) -> Self {
        Self::from_integer(ring, BigInt::one())
    }

    /// Builds an element from any coefficient vector in powers of `zeta_N`.
    pub fn from_coeffs(ring: &Arc<CyclotomicRing>, coeffs: Vec<BigInt>) -> Self {
        CycInt {
            ring: ring.clone(),
            coeffs: ring.reduce(coeffs),
        }
    }

    /// `zeta_N^k` with `k` taken mod `N`.
    pub fn zeta_pow(ring: &Arc<CyclotomicRing>, k: i64) -> Self {
        let idx = k.rem_euclid(ring.level as i64) as usize;
        CycInt {
            ring: ring.clone(),
            coeffs: ring.powers[idx].clone(),
        }
    }

    pub fn level(&self) -> u64 {
        self.ring.level
    }

    pub fn ring(&self) -> &Arc<CyclotomicRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_level(&self, other: &Self) -> Result<()> {
        if self.ring.level != other.ring.level {
            return Err(Error::LevelMismatch {
                left: self.ring.level,
                right: other.ring.level,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(x, y)| x + y)
            .collect();
        Ok(CycInt {
            ring: self.ring.clone(),
            coeffs,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        let mut wide = vec![BigInt::zero(); 2 * self.coeffs.len() - 1];
        mul_into(&mut wide, &self.coeffs, &other.coeffs);
        Ok(CycInt {
            ring: self.ring.clone(),
            coeffs: self.ring.reduce(wide),
        })
    }

    /// The rational integer this element equals, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Evaluates at `zeta_N = e^{2 pi i / N}` in double precision.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.ring.level as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                Complex64::from_polar(c, TAU * j as f64 / n)
            })
            .sum()
    }

    /// Image under `Z[zeta_M] -> Z[zeta_N]`, `zeta_M -> zeta_N^(N/M)`, for `M | N`.
    pub fn embed(&self, target: &Arc<CyclotomicRing>) -> Result<Self> {
        let (m, n) = (self.ring.level, target.level);
        if n % m != 0 {
            return Err(Error::NotASubfield { sub: m, level: n });
        }
        let step = (n / m) as i64;
        let mut out = CycInt::zero(target);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let z = CycInt::zeta_pow(target, step * j as i64);
            for (o, zc) in out.coeffs.iter_mut().zip(&z.coeffs) {
                *o += c * zc;
            }
        }
        Ok(out)
    }
}

fn mul_into(acc: &mut [BigInt], x: &[BigInt], y: &[BigInt]) {
    for (i, a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.iter().enumerate() {
            if !b.is_zero() {
                acc[i + j] += a * b;
            }
        }
    }
}

/// `zeta_N^k` as a canonical element of `Z[zeta_N]`.
pub fn zeta_pow(n: u64, k: i64) -> Result<CycInt> {
    Ok(CycInt::zeta_pow(&CyclotomicRing::of(n)?, k))
}

impl Add for &CycInt {
    type Output = CycInt;

    /// # Panics
    ///
    /// Panics on a level mismatch; use [`CycInt::checked_add`] to handle it.
    fn add(self, rhs: &CycInt) -> CycInt {
        self.checked_add(rhs).expect("CycInt addition")
    }
}

impl Mul for &CycInt {
    type Output = CycInt;

    /// # Panics
    ///
    /// Panics on a level mismatch; use [`CycInt::checked_mul`] to handle it.
    fn mul(self, rhs: &CycInt) -> CycInt {
        self.checked_mul(rhs).expect("CycInt multiplication")
    }
}

impl Neg for &CycInt {
    type Output = CycInt;

    fn neg(self) -> CycInt {
        CycInt {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Coefficient for CycInt {
    type Ring = Arc<CyclotomicRing>;
    type Acc = Vec<BigInt>;

    fn level(ring: &Self::Ring) -> u64 {
        ring.level
    }

    fn ring_zero(ring: &Self::Ring) -> Self {
        CycInt::zero(ring)
    }

    fn ring_one(ring: &Self::Ring) -> Self {
        CycInt::one(ring)
    }

    fn vanishes(&self) -> bool {
        CycInt::is_zero(self)
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn negated(&self) -> Self {
        -self
    }

    fn acc_zero(ring: &Self::Ring) -> Vec<BigInt> {
        vec![BigInt::zero(); 2 * ring.degree() - 1]
    }

    fn mul_acc(acc: &mut Vec<BigInt>, x: &Self, y: &Self) {
        mul_into(acc, &x.coeffs, &y.coeffs);
    }

    fn from_acc(ring: &Self::Ring, acc: Vec<BigInt>) -> Self {
        CycInt {
            ring: ring.clone(),
            coeffs: ring.reduce(acc),
        }
    }
}
