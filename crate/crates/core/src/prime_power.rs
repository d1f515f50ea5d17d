//! The context `G = Z/p^n Z`.

use crate::error::{Error, Result};
use crate::field::{is_prime, Fp};

const MAX_ORDER: u64 = 1 << 16;

/// `p` and `n` with `|G| = p^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePower {
    p: u32,
    n: u32,
    pn: u32,
}

impl PrimePower {
    pub fn new(p: u32, n: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::ZeroExponent);
        }
        let mut pn: u64 = 1;
        for _ in 0..n {
            pn *= p as u64;
            if pn > MAX_ORDER {
                return Err(Error::OrderTooLarge { p, n });
            }
        }
        Ok(PrimePower {
            p,
            n,
            pn: pn as u32,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `p^n`, the order of `G` and the length of a free summand.
    pub fn order(&self) -> u32 {
        self.pn
    }

    pub fn field(&self) -> Fp {
        Fp::new(self.p)
    }

    pub fn pow(&self, k: u32) -> u32 {
        self.p.pow(k)
    }

    /// Smallest `k` with `p^k >= i`, for `i >= 1`.
    pub fn ceil_log(&self, i: u32) -> u32 {
        assert!(i >= 1);
        let mut k = 0;
        let mut q = 1u64;
        while q < i as u64 {
            q *= self.p as u64;
            k += 1;
        }
        k
    }

    /// Largest `k` with `p^k <= i`, for `i >= 1`.
    pub fn floor_log(&self, i: u32) -> u32 {
        assert!(i >= 1);
        let mut k = 0;
        let mut q = self.p as u64;
        while q <= i as u64 {
            q *= self.p as u64;
            k += 1;
        }
        k
    }

    pub fn is_p_power(&self, i: u32) -> bool {
        i >= 1 && self.pow(self.floor_log(i)) == i
    }
}
