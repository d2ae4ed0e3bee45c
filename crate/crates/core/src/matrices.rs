//! Upper-triangular coset representatives of determinant `N`.
//!
//! `C'_N` is every `(a, b; 0, d)` with `ad = N`, `a >= 1`, `0 <= b < d`;
//! `C_N` keeps only those with `gcd(a, b, d) = 1`. Both are listed in
//! ascending `a`, then ascending `b`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HeckeMatrix {
    pub a: u64,
    pub b: u64,
    pub d: u64,
    pub level: u64,
}

impl HeckeMatrix {
    pub fn new(a: u64, b: u64, d: u64) -> Result<Self> {
        if a == 0 || d == 0 || b >= d {
            return Err(Error::InvalidMatrix {
                a,
                b,
                d,
                level: a * d,
            });
        }
        Ok(HeckeMatrix {
            a,
            b,
            d,
            level: a * d,
        })
    }

    /// `gcd(a, b, d)`.
    pub fn content(&self) -> u64 {
        self.a.gcd(&self.b).gcd(&self.d)
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    /// Divides out `f = gcd(a, b, d)`, landing in `C_{N / f^2}`.
    pub fn strip(&self) -> (u64, HeckeMatrix) {
        let f = self.content();
        let reduced = HeckeMatrix {
            a: self.a / f,
            b: self.b / f,
            d: self.d / f,
            level: self.level / (f * f),
        };
        (f, reduced)
    }

    /// Inverse of [`strip`](Self::strip): scales every entry by `f`.
    pub fn scale(&self, f: u64) -> HeckeMatrix {
        HeckeMatrix {
            a: self.a * f,
            b: self.b * f,
            d: self.d * f,
            level: self.level * f * f,
        }
    }
}

fn enumerate(n: u64, primitive_only: bool, op: &'static str) -> Result<Vec<HeckeMatrix>> {
    if n == 0 {
        return Err(Error::ZeroArgument { op });
    }
    let mut out = Vec::new();
    for a in arith::divisors(n)? {
        let d = n / a;
        let r = a.gcd(&d);
        for b in 0..d {
            if primitive_only && b.gcd(&r) != 1 {
                continue;
            }
            out.push(HeckeMatrix { a, b, d, level: n });
        }
    }
    Ok(out)
}

/// The primitive coset set `C_N`; its length is `psi(N)`.
pub fn enumerate_c(n: u64) -> Result<Vec<HeckeMatrix>> {
    enumerate(n, true, "enumerate_c")
}

/// The full coset set `C'_N`; its length is `sigma(N)`.
pub fn enumerate_c_prime(n: u64) -> Result<Vec<HeckeMatrix>> {
    enumerate(n, false, "enumerate_c_prime")
}

pub fn strip(m: &HeckeMatrix) -> (u64, HeckeMatrix) {
    m.strip()
}

/// Exact sums of `a/d` and `b/d` over `C_N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaSums {
    pub sum_a_over_d: BigRational,
    pub sum_b_over_d: BigRational,
}

pub fn lemma_sums(n: u64) -> Result<LemmaSums> {
    if n == 0 {
        return Err(Error::ZeroArgument { op: "lemma_sums" });
    }
    let mut sum_a = BigRational::zero();
    let mut sum_b = BigRational::zero();
    for m in enumerate_c(n)? {
        let d = BigInt::from(m.d);
        sum_a += BigRational::new(BigInt::from(m.a), d.clone());
        sum_b += BigRational::new(BigInt::from(m.b), d);
    }
    Ok(LemmaSums {
        sum_a_over_d: sum_a,
        sum_b_over_d: sum_b,
    })
}
