//! Arithmetic in the prime field F_p.
//!
//! Scalars are residues `0..p` stored as `u16`; products are taken in `u32`.

/// The prime field F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    p: u32,
}

pub type Scalar = u16;

impl Fp {
    /// Caller guarantees `p` is prime and below 2^16.
    pub const fn new(p: u32) -> Self {
        Fp { p }
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: Scalar, b: Scalar) -> Scalar {
        let s = a as u32 + b as u32;
        (if s >= self.p { s - self.p } else { s }) as Scalar
    }

    #[inline]
    pub fn sub(self, a: Scalar, b: Scalar) -> Scalar {
        let (a, b) = (a as u32, b as u32);
        (if a >= b { a - b } else { a + self.p - b }) as Scalar
    }

    #[inline]
    pub fn neg(self, a: Scalar) -> Scalar {
        if a == 0 {
            0
        } else {
            (self.p - a as u32) as Scalar
        }
    }

    #[inline]
    pub fn mul(self, a: Scalar, b: Scalar) -> Scalar {
        ((a as u32 * b as u32) % self.p) as Scalar
    }

    /// `a + c*b`
    #[inline]
    pub fn mul_add(self, a: Scalar, c: Scalar, b: Scalar) -> Scalar {
        ((a as u32 + c as u32 * b as u32) % self.p) as Scalar
    }

    pub fn inv(self, a: Scalar) -> Scalar {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        t0.rem_euclid(self.p as i64) as Scalar
    }

    pub fn from_int(self, x: i64) -> Scalar {
        x.rem_euclid(self.p as i64) as Scalar
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
