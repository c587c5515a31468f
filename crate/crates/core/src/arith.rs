//! Small integer helpers: primality and factorization by trial division.

use alloc::vec::Vec;

pub use num_integer::gcd;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2u64;
    while q.saturating_mul(q) <= p {
        if p % q == 0 {
            return false;
        }
        q += 1;
    }
    true
}

/// A prime power `prime^exponent` with `exponent >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: u32,
}

impl PrimePower {
    pub fn value(self) -> u64 {
        self.prime.pow(self.exponent)
    }
}

/// Prime factorization of `n >= 1` by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<PrimePower> {
    let mut out = Vec::new();
    let mut q = 2u64;
    while q.saturating_mul(q) <= n {
        if n % q == 0 {
            let mut exponent = 0;
            while n % q == 0 {
                n /= q;
                exponent += 1;
            }
            out.push(PrimePower { prime: q, exponent });
        }
        q += 1;
    }
    if n > 1 {
        out.push(PrimePower {
            prime: n,
            exponent: 1,
        });
    }
    out
}

/// If `n = base^r` with `r >= 1`, returns `r`.
pub fn exact_log(base: u64, n: u64) -> Option<u32> {
    if base < 2 || n < base {
        return None;
    }
    let mut r = 0;
    let mut acc = 1u64;
    while acc < n {
        acc = acc.checked_mul(base)?;
        r += 1;
    }
    (acc == n).then_some(r)
}
