//! Elements of the truncated ring `F_p[G] = F_p[s]/(s^{p^n})`, `s = sigma - 1`.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::prime_power::PrimePower;

/// Polynomial in `s`; coefficient `k` multiplies `s^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    pp: PrimePower,
    coeffs: Vec<Scalar>,
}

impl RingElement {
    pub fn from_coeffs(pp: PrimePower, mut coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.len() > pp.order() as usize {
            return Err(Error::ContextMismatch(format!(
                "{} coefficients for a ring of s-degree below {}",
                coeffs.len(),
                pp.order()
            )));
        }
        let f = pp.field();
        for c in coeffs.iter_mut() {
            *c = f.from_int(*c as i64);
        }
        coeffs.resize(pp.order() as usize, 0);
        Ok(RingElement { pp, coeffs })
    }

    pub fn zero(pp: PrimePower) -> Self {
        RingElement {
            pp,
            coeffs: vec![0; pp.order() as usize],
        }
    }

    pub fn one(pp: PrimePower) -> Self {
        Self::s_pow(pp, 0)
    }

    /// `s^k`, which is zero once `k >= p^n`.
    pub fn s_pow(pp: PrimePower, k: u32) -> Self {
        let mut r = Self::zero(pp);
        if k < pp.order() {
            r.coeffs[k as usize] = 1;
        }
        r
    }

    /// `sigma^j = (1 + s)^j`, expanded by Pascal's rule mod p.
    pub fn sigma_pow(pp: PrimePower, j: u32) -> Self {
        let f = pp.field();
        let len = pp.order() as usize;
        let mut c = vec![0 as Scalar; len];
        c[0] = 1;
        for _ in 0..j {
            for k in (1..len).rev() {
                c[k] = f.add(c[k], c[k - 1]);
            }
        }
        RingElement { pp, coeffs: c }
    }

    pub fn context(&self) -> PrimePower {
        self.pp
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn mul(&self, other: &RingElement) -> Result<RingElement> {
        if self.pp != other.pp {
            return Err(Error::ContextMismatch(
                "ring elements over different G".into(),
            ));
        }
        let f = self.pp.field();
        let len = self.coeffs.len();
        let mut out = vec![0; len];
        for (i, &a) in self.coeffs.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (j, &b) in other.coeffs[..len - i].iter().enumerate() {
                out[i + j] = f.mul_add(out[i + j], a, b);
            }
        }
        Ok(RingElement {
            pp: self.pp,
            coeffs: out,
        })
    }
}
