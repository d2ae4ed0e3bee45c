//! Elementary multiplicative functions: factorization, divisors, and the
//! counting functions phi, mu, sigma and the Dedekind psi.

use num_integer::Integer;

use crate::error::{Error, Result};

/// Prime factorization as `(p, e)` pairs with `p` ascending.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization(Vec<(u64, u32)>);

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.0
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().map(|&(p, _)| p)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&(_, e)| e == 1)
    }

    /// Multiplies the factors back together.
    pub fn value(&self) -> u64 {
        self.0.iter().map(|&(p, e)| p.pow(e)).product()
    }
}

fn nonzero(n: u64, op: &'static str) -> Result<u64> {
    if n == 0 {
        Err(Error::ZeroArgument { op })
    } else {
        Ok(n)
    }
}

/// Trial division up to the square root.
pub fn factorize(n: u64) -> Result<Factorization> {
    let mut n = nonzero(n, "factorize")?;
    let mut pairs = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            pairs.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        pairs.push((n, 1));
    }
    Ok(Factorization(pairs))
}

pub fn divisors(n: u64) -> Result<Vec<u64>> {
    let fact = factorize(n)?;
    let mut divs = vec![1u64];
    for &(p, e) in fact.pairs() {
        let current = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..current {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    Ok(divs)
}

pub fn euler_phi(n: u64) -> Result<u64> {
    let fact = factorize(n)?;
    Ok(fact.primes().fold(n, |acc, p| acc / p * (p - 1)))
}

pub fn moebius(n: u64) -> Result<i8> {
    let fact = factorize(n)?;
    if !fact.is_squarefree() {
        return Ok(0);
    }
    Ok(if fact.pairs().len() % 2 == 0 { 1 } else { -1 })
}

pub fn sigma(n: u64) -> Result<u64> {
    let fact = factorize(n)?;
    Ok(fact
        .pairs()
        .iter()
        .map(|&(p, e)| (p.pow(e + 1) - 1) / (p - 1))
        .product())
}

/// Dedekind psi, `n * prod_{p | n} (1 + 1/p)`.
///
/// Each prime is applied as `acc / p * (p + 1)`. The running value still
/// contains every unprocessed prime, so each division is exact.
pub fn psi(n: u64) -> Result<u64> {
    let fact = factorize(n)?;
    Ok(fact.primes().fold(n, |acc, p| acc / p * (p + 1)))
}

/// Dedekind psi through the divisor sum `sum_{d | n} d * phi(r) / r` with
/// `r = gcd(d, n / d)`.
pub fn psi_by_divisor_sum(n: u64) -> Result<u64> {
    let mut total = 0;
    for d in divisors(n)? {
        let r = d.gcd(&(n / d));
        let phi_r = euler_phi(r)?;
        // r | d, so d / r is exact
        total += d / r * phi_r;
    }
    Ok(total)
}

/// Number of distinct odd primes dividing `n`.
pub fn odd_prime_count(n: u64) -> Result<u32> {
    Ok(factorize(n)?.primes().filter(|&p| p != 2).count() as u32)
}

/// Number of distinct primes dividing `n`.
pub fn prime_count(n: u64) -> Result<u32> {
    Ok(factorize(n)?.pairs().len() as u32)
}

/// The `f >= 1` with `f^2 | n`, ascending.
pub fn square_divisors(n: u64) -> Result<Vec<u64>> {
    nonzero(n, "square_divisors")?;
    Ok((1..)
        .take_while(|f| f * f <= n)
        .filter(|f| n.is_multiple_of(f * f))
        .collect())
}
