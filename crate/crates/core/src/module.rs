//! Concrete direct sums of cyclic F_p[G]-modules.
//!
//! A block of length `L` with generator `g` has basis `g, s g, ..., s^{L-1} g`;
//! coordinate `k` of an element is the coefficient of `s^k g`. Applying `s`
//! shifts every block one place to the right and drops the last coordinate.

use crate::error::{Error, Result};
use crate::field::{Fp, Scalar};
use crate::prime_power::PrimePower;
use crate::ring::RingElement;
use crate::shape::ModuleShape;

pub const MAX_AMBIENT_DIM: usize = 64;

/// An element of a [`Module`], stored blockwise in the generator-power basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleElement {
    pub coords: Vec<Scalar>,
}

impl ModuleElement {
    pub fn new(coords: Vec<Scalar>) -> Self {
        ModuleElement { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl AsRef<[Scalar]> for ModuleElement {
    fn as_ref(&self) -> &[Scalar] {
        &self.coords
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Module {
    pp: PrimePower,
    lengths: Vec<u32>,
    offsets: Vec<usize>,
    dim: usize,
}

impl Module {
    /// Blocks in the given order.
    pub fn from_block_lengths(pp: PrimePower, lengths: Vec<u32>) -> Result<Self> {
        let mut offsets = Vec::with_capacity(lengths.len());
        let mut dim = 0usize;
        for &l in &lengths {
            if l == 0 || l > pp.order() {
                return Err(Error::BadLength {
                    len: l,
                    max: pp.order(),
                });
            }
            offsets.push(dim);
            dim += l as usize;
        }
        if dim > MAX_AMBIENT_DIM {
            return Err(Error::DimensionCap {
                dim,
                cap: MAX_AMBIENT_DIM,
            });
        }
        Ok(Module {
            pp,
            lengths,
            offsets,
            dim,
        })
    }

    /// Blocks in ascending length order.
    pub fn from_shape(pp: PrimePower, shape: &ModuleShape) -> Result<Self> {
        shape.validate(&pp)?;
        Self::from_block_lengths(pp, shape.lengths())
    }

    pub fn context(&self) -> PrimePower {
        self.pp
    }

    pub fn field(&self) -> Fp {
        self.pp.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn block_count(&self) -> usize {
        self.lengths.len()
    }

    pub fn block_lengths(&self) -> &[u32] {
        &self.lengths
    }

    pub fn block_offset(&self, b: usize) -> usize {
        self.offsets[b]
    }

    pub fn shape(&self) -> ModuleShape {
        ModuleShape::from_lengths(self.lengths.iter().copied())
    }

    pub fn zero(&self) -> ModuleElement {
        ModuleElement::new(vec![0; self.dim])
    }

    /// Generator `g` of block `b`.
    pub fn generator(&self, b: usize) -> ModuleElement {
        self.basis_vector(b, 0)
    }

    /// `s^k g_b`.
    pub fn basis_vector(&self, b: usize, k: u32) -> ModuleElement {
        let mut v = self.zero();
        if k < self.lengths[b] {
            v.coords[self.offsets[b] + k as usize] = 1;
        }
        v
    }

    pub fn block<'a>(&self, v: &'a ModuleElement, b: usize) -> &'a [Scalar] {
        let o = self.offsets[b];
        &v.coords[o..o + self.lengths[b] as usize]
    }

    pub fn check(&self, v: &ModuleElement) -> Result<()> {
        if v.coords.len() != self.dim {
            return Err(Error::ContextMismatch(format!(
                "element of dimension {} in a module of dimension {}",
                v.coords.len(),
                self.dim
            )));
        }
        Ok(())
    }

    /// `s^k v` on a raw coordinate slice.
    pub fn shift(&self, v: &[Scalar], k: u32) -> Vec<Scalar> {
        let mut out = vec![0; self.dim];
        for (&l, &o) in self.lengths.iter().zip(&self.offsets) {
            let l = l as usize;
            let k = k as usize;
            if k < l {
                out[o + k..o + l].copy_from_slice(&v[o..o + l - k]);
            }
        }
        out
    }

    pub fn apply_s(&self, v: &ModuleElement) -> ModuleElement {
        ModuleElement::new(self.shift(&v.coords, 1))
    }

    pub fn apply_s_pow(&self, v: &ModuleElement, k: u32) -> ModuleElement {
        ModuleElement::new(self.shift(&v.coords, k))
    }

    /// `f(s) v` on a raw coordinate slice.
    pub fn apply_ring(&self, f: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let fp = self.field();
        let mut out = vec![0; self.dim];
        for (&l, &o) in self.lengths.iter().zip(&self.offsets) {
            let l = l as usize;
            for (k, &c) in f.iter().enumerate().take(l).filter(|(_, &c)| c != 0) {
                for t in 0..l - k {
                    out[o + t + k] = fp.mul_add(out[o + t + k], c, v[o + t]);
                }
            }
        }
        out
    }

    pub fn poly_apply(&self, f: &RingElement, v: &ModuleElement) -> Result<ModuleElement> {
        if f.context() != self.pp {
            return Err(Error::ContextMismatch(
                "ring element over a different G".into(),
            ));
        }
        self.check(v)?;
        Ok(ModuleElement::new(self.apply_ring(f.coeffs(), &v.coords)))
    }

    pub fn apply_sigma(&self, v: &ModuleElement) -> ModuleElement {
        let fp = self.field();
        let sv = self.shift(&v.coords, 1);
        ModuleElement::new(
            v.coords
                .iter()
                .zip(&sv)
                .map(|(&a, &b)| fp.add(a, b))
                .collect(),
        )
    }

    pub fn add(&self, a: &ModuleElement, b: &ModuleElement) -> ModuleElement {
        let fp = self.field();
        ModuleElement::new(
            a.coords
                .iter()
                .zip(&b.coords)
                .map(|(&x, &y)| fp.add(x, y))
                .collect(),
        )
    }

    pub fn scale(&self, c: Scalar, a: &ModuleElement) -> ModuleElement {
        let fp = self.field();
        ModuleElement::new(a.coords.iter().map(|&x| fp.mul(c, x)).collect())
    }

    /// `l(v)`: least `l` with `s^l v = 0`; zero for the identity.
    pub fn length_of(&self, v: &[Scalar]) -> u32 {
        let mut best = 0;
        for (&l, &o) in self.lengths.iter().zip(&self.offsets) {
            if let Some(k) = v[o..o + l as usize].iter().position(|&c| c != 0) {
                best = best.max(l - k as u32);
            }
        }
        best
    }

    pub fn length(&self, v: &ModuleElement) -> u32 {
        self.length_of(&v.coords)
    }

    /// Coordinates spanning `ker s^k`: the last `k` places of every block.
    pub fn ker_s_pow_mask(&self, k: u32) -> Vec<bool> {
        let mut m = vec![false; self.dim];
        for (&l, &o) in self.lengths.iter().zip(&self.offsets) {
            for t in l.saturating_sub(k)..l {
                m[o + t as usize] = true;
            }
        }
        m
    }

    /// Coordinates spanning the fixed submodule.
    pub fn socle_mask(&self) -> Vec<bool> {
        self.ker_s_pow_mask(1)
    }
}
