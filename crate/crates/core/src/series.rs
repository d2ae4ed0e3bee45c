//! Truncated power series over a commutative coefficient ring.
//!
//! A series carries its truncation order `T` (coefficients `c_0..=c_T`);
//! arithmetic between series of different orders is an error.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cyclotomic::{CycInt, CyclotomicRing};
use crate::error::{Error, Result};

/// Coefficient ring interface used by [`TruncSeries`].
///
/// Products are accumulated in an unreduced `Acc` form and reduced once per
/// output coefficient.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    /// Runtime ring parameters (the cyclotomic level, or nothing for `Z`).
    type Ring: Clone + PartialEq + fmt::Debug + Send + Sync;
    type Acc;

    /// Cyclotomic level of the ring; `Z` counts as level 1.
    fn level(ring: &Self::Ring) -> u64;
    fn ring_zero(ring: &Self::Ring) -> Self;
    fn ring_one(ring: &Self::Ring) -> Self;
    fn vanishes(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;

    fn acc_zero(ring: &Self::Ring) -> Self::Acc;
    /// `acc += x * y`
    fn mul_acc(acc: &mut Self::Acc, x: &Self, y: &Self);
    fn from_acc(ring: &Self::Ring, acc: Self::Acc) -> Self;

    fn times(ring: &Self::Ring, x: &Self, y: &Self) -> Self {
        let mut acc = Self::acc_zero(ring);
        Self::mul_acc(&mut acc, x, y);
        Self::from_acc(ring, acc)
    }
}

/// The ring of rational integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Integers;

impl Coefficient for BigInt {
    type Ring = Integers;
    type Acc = BigInt;

    fn level(_: &Integers) -> u64 {
        1
    }

    fn ring_zero(_: &Integers) -> Self {
        BigInt::zero()
    }

    fn ring_one(_: &Integers) -> Self {
        BigInt::one()
    }

    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn negated(&self) -> Self {
        -self
    }

    fn acc_zero(_: &Integers) -> BigInt {
        BigInt::zero()
    }

    fn mul_acc(acc: &mut BigInt, x: &Self, y: &Self) {
        *acc += x * y;
    }

    fn from_acc(_: &Integers, acc: BigInt) -> Self {
        acc
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruncSeries<R: Coefficient> {
    ring: R::Ring,
    coeffs: Vec<R>,
}

pub type IntSeries = TruncSeries<BigInt>;
pub type CycSeries = TruncSeries<CycInt>;

impl<R: Coefficient> TruncSeries<R> {
    /// Series truncated at `coeffs.len() - 1`.
    pub fn from_coeffs(ring: R::Ring, coeffs: Vec<R>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        Ok(TruncSeries { ring, coeffs })
    }

    pub fn zero(ring: &R::Ring, trunc: usize) -> Self {
        TruncSeries {
            ring: ring.clone(),
            coeffs: vec![R::ring_zero(ring); trunc + 1],
        }
    }

    pub fn one(ring: &R::Ring, trunc: usize) -> Self {
        let mut s = Self::zero(ring, trunc);
        s.coeffs[0] = R::ring_one(ring);
        s
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn ring(&self) -> &R::Ring {
        &self.ring
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Option<&R> {
        self.coeffs.get(n)
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.trunc() != other.trunc() {
            return Err(Error::TruncationMismatch {
                left: self.trunc(),
                right: other.trunc(),
            });
        }
        if self.ring != other.ring {
            return Err(Error::LevelMismatch {
                left: R::level(&self.ring),
                right: R::level(&other.ring),
            });
        }
        Ok(())
    }

    /// Cauchy product truncated at `T`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let support: Vec<usize> = (0..self.coeffs.len())
            .filter(|&i| !self.coeffs[i].vanishes())
            .collect();
        let coeffs = (0..self.coeffs.len())
            .map(|k| {
                let mut acc = R::acc_zero(&self.ring);
                for &i in support.iter().take_while(|&&i| i <= k) {
                    let y = &other.coeffs[k - i];
                    if !y.vanishes() {
                        R::mul_acc(&mut acc, &self.coeffs[i], y);
                    }
                }
                R::from_acc(&self.ring, acc)
            })
            .collect();
        Ok(TruncSeries {
            ring: self.ring.clone(),
            coeffs,
        })
    }

    /// `self^e` by square-and-multiply; `e = 0` gives the constant 1.
    pub fn pow(&self, e: u64) -> Self {
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul(&base).expect("same ring and truncation"),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ring and truncation");
            }
        }
        result.unwrap_or_else(|| Self::one(&self.ring, self.trunc()))
    }

    /// Substitutes `q -> q^k`, keeping the truncation order.
    ///
    /// # Panics
    ///
    /// Panics if `k == 0`.
    pub fn inflate(&self, k: usize) -> Self {
        self.inflate_to(k, self.trunc())
            .expect("inflation never exceeds the input order")
    }

    /// Substitutes `q -> q^k` and truncates at `trunc`, which must stay below
    /// `k * (T + 1)` so that every output coefficient is determined.
    pub fn inflate_to(&self, k: usize, trunc: usize) -> Result<Self> {
        assert!(k >= 1, "inflation factor must be positive");
        if trunc >= k * (self.trunc() + 1) {
            return Err(Error::InflationOutOfRange {
                input: self.trunc(),
                factor: k,
                requested: trunc,
            });
        }
        let mut out = Self::zero(&self.ring, trunc);
        for (n, c) in self.coeffs.iter().enumerate() {
            if k * n > trunc {
                break;
            }
            out.coeffs[k * n] = c.clone();
        }
        Ok(out)
    }

    /// Multiplies in place by `(1 - c q^m)`.
    pub fn mul_one_minus(&mut self, c: &R, m: usize) {
        assert!(m >= 1, "binomial degree must be positive");
        for k in (m..self.coeffs.len()).rev() {
            let prev = &self.coeffs[k - m];
            if prev.vanishes() {
                continue;
            }
            let t = R::times(&self.ring, c, prev);
            self.coeffs[k] = self.coeffs[k].plus(&t.negated());
        }
    }

    pub fn map<S: Coefficient>(&self, ring: &S::Ring, f: impl Fn(&R) -> S) -> TruncSeries<S> {
        TruncSeries {
            ring: ring.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

/// Product of all factors, reduced along a balanced binary tree.
///
/// Subtrees are evaluated in parallel; exact coefficient arithmetic makes the
/// result independent of grouping and order. An empty list gives 1.
pub fn product_of<R: Coefficient>(
    ring: &R::Ring,
    trunc: usize,
    factors: &[TruncSeries<R>],
) -> Result<TruncSeries<R>> {
    let one = TruncSeries::one(ring, trunc);
    for f in factors {
        one.check_compatible(f)?;
    }
    if factors.is_empty() {
        return Ok(one);
    }
    Ok(product_tree(factors))
}

fn product_tree<R: Coefficient>(factors: &[TruncSeries<R>]) -> TruncSeries<R> {
    match factors.len() {
        1 => factors[0].clone(),
        n => {
            let (left, right) = factors.split_at(n / 2);
            let (l, r) = if n >= 4 {
                rayon::join(|| product_tree(left), || product_tree(right))
            } else {
                (product_tree(left), product_tree(right))
            };
            l.mul(&r).expect("factors checked compatible")
        }
    }
}

impl IntSeries {
    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(Integers, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Image in `Z[zeta_N]`.
    pub fn lift(&self, ring: &Arc<CyclotomicRing>) -> CycSeries {
        self.map(ring, |c| CycInt::from_integer(ring, c.clone()))
    }
}

impl CycSeries {
    /// Multiplies the degree-`n` coefficient by `zeta_N^(k n)`.
    pub fn twist(&self, n: u64, k: i64) -> Result<Self> {
        if self.ring.level() != n {
            return Err(Error::LevelMismatch {
                left: self.ring.level(),
                right: n,
            });
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(deg, c)| {
                let z = CycInt::zeta_pow(&self.ring, (k.rem_euclid(n as i64) * deg as i64) % n as i64);
                c * &z
            })
            .collect();
        Ok(TruncSeries {
            ring: self.ring.clone(),
            coeffs,
        })
    }

    /// Collapses to an integer series when every coefficient is rational.
    pub fn as_integer_series(&self) -> Option<IntSeries> {
        let coeffs = self
            .coeffs
            .iter()
            .map(CycInt::as_integer)
            .collect::<Option<Vec<_>>>()?;
        Some(TruncSeries {
            ring: Integers,
            coeffs,
        })
    }
}

impl<R: Coefficient> fmt::Display for TruncSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.vanishes() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*q")?,
                _ => write!(f, "({c})*q^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.trunc() + 1)
    }
}

/// `p(0..=T)` by Euler's pentagonal recurrence.
pub fn partition_numbers(trunc: usize) -> Vec<BigInt> {
    let mut p: Vec<BigInt> = Vec::with_capacity(trunc + 1);
    p.push(BigInt::one());
    for n in 1..=trunc {
        let mut total = BigInt::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let mut term = p[n - g1].clone();
            if g2 <= n {
                term += &p[n - g2];
            }
            if k % 2 == 1 {
                total += term;
            } else {
                total -= term;
            }
        }
        p.push(total);
    }
    p
}

/// `sum_{n <= T} p(n) q^n`.
pub fn partition_series(trunc: usize) -> IntSeries {
    TruncSeries {
        ring: Integers,
        coeffs: partition_numbers(trunc),
    }
}

/// `prod_{n=1}^{T} (1 - q^n)^e` truncated at `T`, for any integer `e`.
///
/// Each factor is expanded with generalized binomial coefficients, so a
/// negative exponent expands the reciprocal as a power of a geometric series.
pub fn euler_product(trunc: usize, e: i64) -> IntSeries {
    let mut coeffs = vec![BigInt::zero(); trunc + 1];
    coeffs[0] = BigInt::one();
    // coefficients of (1 - x)^e up to x^trunc
    let mut binom = Vec::with_capacity(trunc + 1);
    binom.push(BigInt::one());
    for j in 1..=trunc as i64 {
        let prev: &BigInt = binom.last().unwrap();
        binom.push(-(prev * BigInt::from(e - j + 1)) / j);
    }
    for n in 1..=trunc {
        for k in (n..=trunc).rev() {
            let mut acc = BigInt::zero();
            for j in 1..=k / n {
                let b = &binom[j];
                if !b.is_zero() && !coeffs[k - n * j].is_zero() {
                    acc += b * &coeffs[k - n * j];
                }
            }
            coeffs[k] += acc;
        }
    }
    TruncSeries {
        ring: Integers,
        coeffs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn s(c: &[i64]) -> IntSeries {
        IntSeries::from_i64(c).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    /// Counts partitions of `n` by generating each one as a non-increasing
    /// list of parts.
    fn enumerate_partitions(n: usize) -> u64 {
        fn go(rest: usize, max_part: usize) -> u64 {
            if rest == 0 {
                return 1;
            }
            (1..=max_part.min(rest)).map(|part| go(rest - part, part)).sum()
        }
        go(n, n)
    }

    /// Coin-change DP with coins 1..=T.
    fn coin_partitions(trunc: usize) -> Vec<BigInt> {
        let mut ways = vec![BigInt::zero(); trunc + 1];
        ways[0] = BigInt::one();
        for coin in 1..=trunc {
            for v in coin..=trunc {
                let add = ways[v - coin].clone();
                ways[v] += add;
            }
        }
        ways
    }

    #[test]
    fn partition_number_examples() {
        assert_eq!(partition_numbers(0), ints(&[1]));
        assert_eq!(partition_numbers(1), ints(&[1, 1]));
        let oracle: Vec<i64> = (0..=6).map(|n| enumerate_partitions(n) as i64).collect();
        assert_eq!(oracle, vec![1, 1, 2, 3, 5, 7, 11]);
        assert_eq!(partition_numbers(6), ints(&oracle));
    }

    #[test]
    fn partition_numbers_match_oracles() {
        assert_eq!(partition_numbers(200), coin_partitions(200));
        let p = partition_numbers(40);
        for n in 0..=40 {
            assert_eq!(p[n], BigInt::from(enumerate_partitions(n)), "p({n})");
        }
    }

    #[test]
    fn partition_series_examples() {
        assert_eq!(partition_series(2), s(&[1, 1, 2]));
        assert_eq!(partition_series(0), s(&[1]));
        assert_eq!(partition_series(5), s(&[1, 1, 2, 3, 5, 7]));
    }

    #[test]
    fn euler_product_examples() {
        assert_eq!(euler_product(4, -1), s(&[1, 1, 2, 3, 5]));
        assert_eq!(euler_product(3, 1), s(&[1, -1, -1, 0]));
        assert_eq!(euler_product(0, 17), s(&[1]));
    }

    #[test]
    fn euler_product_reciprocal_is_partition_series() {
        for t in [0, 1, 2, 17, 100, 300] {
            assert_eq!(euler_product(t, -1), partition_series(t), "T = {t}");
        }
    }

    #[test]
    fn euler_product_inverse_pairs() {
        let trunc = 100;
        for e in 1..=30 {
            let prod = euler_product(trunc, e).mul(&euler_product(trunc, -e)).unwrap();
            assert_eq!(prod, IntSeries::one(&Integers, trunc), "e = {e}");
        }
        for t in [0, 1, 5, 33] {
            let prod = euler_product(t, 7).mul(&euler_product(t, -7)).unwrap();
            assert_eq!(prod, IntSeries::one(&Integers, t));
        }
    }

    #[test]
    fn pentagonal_number_theorem() {
        let trunc = 300;
        let mut sparse = vec![BigInt::zero(); trunc + 1];
        for k in -20i64..=20 {
            let g = k * (3 * k - 1) / 2;
            if (g as usize) <= trunc {
                sparse[g as usize] = BigInt::from(if k % 2 == 0 { 1 } else { -1 });
            }
        }
        assert_eq!(euler_product(trunc, 1).into_coeffs(), sparse);
    }

    #[test]
    fn euler_product_matches_repeated_multiplication() {
        let trunc = 30;
        let mut naive = IntSeries::one(&Integers, trunc);
        for n in 1..=trunc {
            for _ in 0..5 {
                naive.mul_one_minus(&BigInt::one(), n);
            }
        }
        assert_eq!(euler_product(trunc, 5), naive);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(s(&[1, 1, 0]).mul(&s(&[1, -1, 0])).unwrap(), s(&[1, 0, -1]));
        assert_eq!(s(&[1, 1]).mul(&s(&[1, 0])).unwrap(), s(&[1, 1]));
        let one = partition_series(4).mul(&euler_product(4, 1)).unwrap();
        assert_eq!(one, IntSeries::one(&Integers, 4));
        assert_eq!(
            s(&[1, 1]).mul(&s(&[1, 1, 1])),
            Err(Error::TruncationMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn pow_examples() {
        let x = s(&[3, 1, 4, 1]);
        assert_eq!(x.pow(1), x);
        assert_eq!(x.pow(0), IntSeries::one(&Integers, 3));
        assert_eq!(s(&[1, 1, 0]).pow(2), s(&[1, 2, 1]));

        // triple Cauchy convolution of p(0..=4)
        let p = [1i64, 1, 2, 3, 5];
        let mut oracle = 0;
        for i in 0..=4 {
            for j in 0..=4 - i {
                oracle += p[i] * p[j] * p[4 - i - j];
            }
        }
        assert_eq!(oracle, 51);
        assert_eq!(partition_series(4).pow(3).coeffs()[4], BigInt::from(oracle));

        for e in 1..=12 {
            let mut naive = x.clone();
            for _ in 1..e {
                naive = naive.mul(&x).unwrap();
            }
            assert_eq!(x.pow(e), naive);
        }
    }

    #[test]
    fn product_of_examples() {
        let x = s(&[1, 1]);
        assert_eq!(product_of(&Integers, 1, std::slice::from_ref(&x)).unwrap(), x);
        assert_eq!(
            product_of::<BigInt>(&Integers, 3, &[]).unwrap(),
            IntSeries::one(&Integers, 3)
        );
        assert!(product_of(&Integers, 2, &[x]).is_err());
    }

    #[test]
    fn product_of_is_order_independent() {
        let mut rng = rand_chacha_like();
        let trunc = 50;
        let factors: Vec<IntSeries> = (1..=9)
            .map(|k| partition_series(trunc / k).inflate_to(k, trunc).unwrap())
            .collect();
        let reference = product_of(&Integers, trunc, &factors).unwrap();
        for _ in 0..20 {
            let mut shuffled = factors.clone();
            shuffled.shuffle(&mut rng);
            assert_eq!(product_of(&Integers, trunc, &shuffled).unwrap(), reference);
        }
    }

    fn rand_chacha_like() -> rand::rngs::StdRng {
        rand::rngs::StdRng::seed_from_u64(0x5eed)
    }

    #[test]
    fn inflate_examples() {
        assert_eq!(s(&[1, 1, 0, 0, 0]).inflate(2), s(&[1, 0, 1, 0, 0]));
        assert_eq!(
            partition_series(2).inflate_to(4, 8).unwrap(),
            s(&[1, 0, 0, 0, 1, 0, 0, 0, 2])
        );
        let x = s(&[2, 7, 1, 8]);
        assert_eq!(x.inflate(1), x);
        assert!(partition_series(2).inflate_to(4, 12).is_err());
    }

    #[test]
    fn twist_examples() {
        let r2 = CyclotomicRing::of(2).unwrap();
        let x = s(&[1, 1, 2]).lift(&r2);
        assert_eq!(x.twist(2, 0).unwrap(), x);
        assert_eq!(x.twist(2, 1).unwrap(), s(&[1, -1, 2]).lift(&r2));
        assert!(x.twist(3, 1).is_err());

        let r5 = CyclotomicRing::of(5).unwrap();
        let y = partition_series(10).lift(&r5);
        for k in 0..5 {
            let back = y.twist(5, k).unwrap().twist(5, 5 - k).unwrap();
            assert_eq!(back, y);
        }
    }

    #[test]
    fn cyclotomic_series_mismatch_is_rejected() {
        let a = partition_series(3).lift(&CyclotomicRing::of(3).unwrap());
        let b = partition_series(3).lift(&CyclotomicRing::of(4).unwrap());
        assert_eq!(a.mul(&b), Err(Error::LevelMismatch { left: 3, right: 4 }));
    }

    fn int_series(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-20i64..20, 1..max_len)
    }

    proptest! {
        #[test]
        fn inflate_is_multiplicative(x in int_series(12), y in int_series(12), k in 1usize..5) {
            let t = x.len().min(y.len()) - 1;
            let x = s(&x[..=t]);
            let y = s(&y[..=t]);
            prop_assert_eq!(
                x.mul(&y).unwrap().inflate(k),
                x.inflate(k).mul(&y.inflate(k)).unwrap()
            );
        }

        #[test]
        fn twist_is_multiplicative(x in int_series(10), y in int_series(10), n in 1u64..13, k in -20i64..20) {
            let t = x.len().min(y.len()) - 1;
            let ring = CyclotomicRing::of(n).unwrap();
            let x = s(&x[..=t]).lift(&ring);
            let y = s(&y[..=t]).lift(&ring);
            prop_assert_eq!(
                x.mul(&y).unwrap().twist(n, k).unwrap(),
                x.twist(n, k).unwrap().mul(&y.twist(n, k).unwrap()).unwrap()
            );
        }
    }
}
