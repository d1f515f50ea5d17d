//! The extension groups `G(A, c)` and their canonical forms.
//!
//! Elements are pairs `(a, j)` with `a` in the kernel module and `j` mod `p^n`,
//! multiplied by the carry cocycle
//!
//! ```text
//! (a, j)(b, k) = (a + sigma^j b + [j + k >= p^n] z_c, (j + k) mod p^n)
//! ```
//!
//! where `z_c = sum_i c_i s^{l_i - 1} alpha_i` is the prescribed value of the
//! `p^n`-th power of the lift `(0, 1)`. With this product `(0,1)(a,0)(0,1)^{-1}`
//! is `(sigma a, 0)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::module::{Module, ModuleElement};
use crate::prime_power::PrimePower;
use crate::ring::RingElement;
use crate::shape::ModuleShape;

/// Largest group order `build_group` accepts.
pub const MAX_GROUP_ORDER: u64 = 1 << 20;

/// Kernel shape with generators `alpha_1..alpha_rk` taken as the block
/// generators in ascending length order, plus the vector `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionSpec {
    module: Arc<Module>,
    shape: ModuleShape,
    c: Vec<Scalar>,
}

impl ExtensionSpec {
    pub fn new(pp: PrimePower, shape: ModuleShape, c: Vec<Scalar>) -> Result<Self> {
        let module = Arc::new(Module::from_shape(pp, &shape)?);
        if c.len() != module.block_count() {
            return Err(Error::CoefficientLength {
                got: c.len(),
                rank: module.block_count(),
            });
        }
        let f = pp.field();
        let c = c.into_iter().map(|x| f.from_int(x as i64)).collect();
        Ok(ExtensionSpec { module, shape, c })
    }

    pub fn split(pp: PrimePower, shape: ModuleShape) -> Result<Self> {
        let rk = shape.rank() as usize;
        Self::new(pp, shape, vec![0; rk])
    }

    pub fn context(&self) -> PrimePower {
        self.module.context()
    }

    pub fn module(&self) -> &Arc<Module> {
        &self.module
    }

    pub fn shape(&self) -> &ModuleShape {
        &self.shape
    }

    pub fn c(&self) -> &[Scalar] {
        &self.c
    }

    /// `z_c`, a fixed point of the kernel.
    pub fn cocycle_value(&self) -> ModuleElement {
        let m = &self.module;
        let mut z = m.zero();
        for (b, (&ci, &l)) in self.c.iter().zip(m.block_lengths()).enumerate() {
            if ci != 0 {
                z.coords[m.block_offset(b) + l as usize - 1] = ci;
            }
        }
        z
    }
}

/// `A bullet_lambda G`; `lambda = p^n` stands for the split group `A ⋊ G`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalExtension {
    pub shape: ModuleShape,
    pub lambda: u32,
}

impl CanonicalExtension {
    pub fn new(pp: &PrimePower, shape: ModuleShape, lambda: u32) -> Result<Self> {
        shape.validate(pp)?;
        if lambda == 0 || lambda > pp.order() {
            return Err(Error::InvalidLambda {
                lambda,
                reason: format!("outside [1, {}]", pp.order()),
            });
        }
        if lambda < pp.order() && !shape.contains_length(lambda) {
            return Err(Error::InvalidLambda {
                lambda,
                reason: "no summand of that length".into(),
            });
        }
        Ok(CanonicalExtension { shape, lambda })
    }

    pub fn is_split(&self, pp: &PrimePower) -> bool {
        self.lambda == pp.order()
    }

    /// Rewrites as `G(A, e_i)` with `i` the first summand of length lambda, or `c = 0`.
    pub fn to_spec(&self, pp: PrimePower) -> Result<ExtensionSpec> {
        let lens = self.shape.lengths();
        let mut c = vec![0; lens.len()];
        if self.lambda < pp.order() {
            let i = lens.iter().position(|&l| l == self.lambda).ok_or_else(|| {
                Error::InvalidLambda {
                    lambda: self.lambda,
                    reason: "no summand of that length".into(),
                }
            })?;
            c[i] = 1;
        }
        ExtensionSpec::new(pp, self.shape.clone(), c)
    }
}

/// Drop `c_i` at free summands; the remaining minimal length carrying a nonzero
/// coordinate is lambda.
pub fn canonicalize(spec: &ExtensionSpec) -> CanonicalExtension {
    let pn = spec.context().order();
    let lambda = spec
        .module
        .block_lengths()
        .iter()
        .zip(&spec.c)
        .filter(|(&l, &c)| c != 0 && l < pn)
        .map(|(&l, _)| l)
        .min()
        .unwrap_or(pn);
    CanonicalExtension {
        shape: spec.shape.clone(),
        lambda,
    }
}

/// The split type followed by one type per distinct non-free summand length.
pub fn iso_types(pp: &PrimePower, shape: &ModuleShape) -> Vec<CanonicalExtension> {
    let mut out = vec![CanonicalExtension {
        shape: shape.clone(),
        lambda: pp.order(),
    }];
    for l in shape.distinct_nonfree_lengths(pp) {
        out.push(CanonicalExtension {
            shape: shape.clone(),
            lambda: l,
        });
    }
    out
}

/// `nf-rk(A) + 1`, the count as stated for the classification; it exceeds
/// `iso_types(..).len()` whenever a non-free length repeats.
pub fn stated_type_count(pp: &PrimePower, shape: &ModuleShape) -> u32 {
    shape.stats(pp).nf_rk + 1
}

pub fn same_embedding_problem(a: &ExtensionSpec, b: &ExtensionSpec) -> Result<bool> {
    if a.context() != b.context() {
        return Err(Error::ContextMismatch("specs over different G".into()));
    }
    Ok(a.shape == b.shape && canonicalize(a).lambda == canonicalize(b).lambda)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub a: ModuleElement,
    pub j: u32,
}

/// Multiplication context for `G(A, c)`.
#[derive(Debug, Clone)]
pub struct ExtensionGroup {
    spec: ExtensionSpec,
    z: Vec<Scalar>,
    /// `sigma^j` truncated to the longest block, for `j < p^n`.
    sigma_pows: Vec<Vec<Scalar>>,
    order: u64,
}

impl ExtensionGroup {
    pub fn build(spec: &ExtensionSpec) -> Result<Self> {
        let z = spec.cocycle_value().coords;
        Self::build_inner(spec, z)
    }

    /// Same multiplication rule with an arbitrary carry value `z`. Only a fixed
    /// `z` gives a group; other values exist to exercise the verifiers.
    pub fn with_raw_cocycle(spec: &ExtensionSpec, z: ModuleElement) -> Result<Self> {
        spec.module.check(&z)?;
        Self::build_inner(spec, z.coords)
    }

    fn build_inner(spec: &ExtensionSpec, z: Vec<Scalar>) -> Result<Self> {
        let pp = spec.context();
        let dim = spec.module.dim() as u32;
        let mut order: u64 = pp.order() as u64;
        for _ in 0..dim {
            order = order.saturating_mul(pp.p() as u64);
            if order > MAX_GROUP_ORDER {
                return Err(Error::GroupOrderCap { exp: dim + pp.n() });
            }
        }
        let keep = spec
            .module
            .block_lengths()
            .iter()
            .copied()
            .max()
            .unwrap_or(1) as usize;
        let sigma_pows = (0..pp.order())
            .map(|j| {
                RingElement::sigma_pow(pp, j).coeffs()[..keep.min(pp.order() as usize)].to_vec()
            })
            .collect();
        Ok(ExtensionGroup {
            spec: spec.clone(),
            z,
            sigma_pows,
            order,
        })
    }

    pub fn spec(&self) -> &ExtensionSpec {
        &self.spec
    }

    pub fn module(&self) -> &Module {
        &self.spec.module
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            a: self.module().zero(),
            j: 0,
        }
    }

    /// The lift `(0, 1)` of sigma.
    pub fn sigma_hat(&self) -> GroupElement {
        GroupElement {
            a: self.module().zero(),
            j: 1 % self.spec.context().order(),
        }
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        self.module().check(&g.a)?;
        if g.j >= self.spec.context().order() {
            return Err(Error::ContextMismatch(format!(
                "exponent {} out of range",
                g.j
            )));
        }
        Ok(())
    }

    pub fn gmul(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.mul(g, h))
    }

    pub fn ginv(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        Ok(self.inv(g))
    }

    pub(crate) fn mul(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let m = self.module();
        let f = m.field();
        let pn = self.spec.context().order();
        let mut a = m.apply_ring(&self.sigma_pows[g.j as usize], &h.a.coords);
        for (x, &y) in a.iter_mut().zip(&g.a.coords) {
            *x = f.add(*x, y);
        }
        let s = g.j + h.j;
        if s >= pn {
            for (x, &y) in a.iter_mut().zip(&self.z) {
                *x = f.add(*x, y);
            }
        }
        GroupElement {
            a: ModuleElement::new(a),
            j: s % pn,
        }
    }

    pub(crate) fn inv(&self, g: &GroupElement) -> GroupElement {
        // (a, j)^{-1} = (-sigma^{-j}(a + [j > 0] z), -j)
        let m = self.module();
        let f = m.field();
        let pn = self.spec.context().order();
        let mut t = g.a.coords.clone();
        if g.j > 0 {
            for (x, &y) in t.iter_mut().zip(&self.z) {
                *x = f.add(*x, y);
            }
        }
        let back = (pn - g.j) % pn;
        let b: Vec<Scalar> = m
            .apply_ring(&self.sigma_pows[back as usize], &t)
            .into_iter()
            .map(|x| f.neg(x))
            .collect();
        GroupElement {
            a: ModuleElement::new(b),
            j: back,
        }
    }

    pub fn pow(&self, g: &GroupElement, mut e: u64) -> GroupElement {
        let mut base = g.clone();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order; always a power of p dividing `p^{n+1}`.
    pub fn element_order(&self, g: &GroupElement) -> u64 {
        let p = self.spec.context().p() as u64;
        let id = self.identity();
        let mut x = g.clone();
        let mut ord = 1u64;
        while x != id {
            x = self.pow(&x, p);
            ord *= p;
        }
        ord
    }

    /// Elements are numbered `j * p^dim + sum_k a_k p^k`.
    pub fn element_at(&self, idx: u64) -> GroupElement {
        let p = self.spec.context().p() as u64;
        let dim = self.module().dim();
        let kernel = self.order / self.spec.context().order() as u64;
        let mut r = idx % kernel;
        let mut a = vec![0 as Scalar; dim];
        for x in a.iter_mut() {
            *x = (r % p) as Scalar;
            r /= p;
        }
        GroupElement {
            a: ModuleElement::new(a),
            j: (idx / kernel) as u32,
        }
    }

    pub fn index_of(&self, g: &GroupElement) -> u64 {
        let p = self.spec.context().p() as u64;
        let kernel = self.order / self.spec.context().order() as u64;
        let mut r = 0u64;
        for &x in g.a.coords.iter().rev() {
            r = r * p + x as u64;
        }
        g.j as u64 * kernel + r
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(|i| self.element_at(i))
    }

    pub fn order_census(&self) -> BTreeMap<u64, u64> {
        let mut census = BTreeMap::new();
        for g in self.elements() {
            *census.entry(self.element_order(&g)).or_insert(0) += 1;
        }
        census
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(p: u32, n: u32) -> PrimePower {
        PrimePower::new(p, n).unwrap()
    }

    fn census(p: u32, n: u32, lens: &[u32], c: &[Scalar]) -> Vec<(u64, u64)> {
        let spec = ExtensionSpec::new(
            pp(p, n),
            ModuleShape::from_lengths(lens.iter().copied()),
            c.to_vec(),
        )
        .unwrap();
        ExtensionGroup::build(&spec)
            .unwrap()
            .order_census()
            .into_iter()
            .collect()
    }

    #[test]
    fn small_censuses() {
        assert_eq!(census(2, 1, &[1], &[0]), vec![(1, 1), (2, 3)]);
        assert_eq!(census(2, 1, &[1], &[1]), vec![(1, 1), (2, 1), (4, 2)]);
        assert_eq!(census(3, 2, &[], &[]), vec![(1, 1), (3, 2), (9, 6)]);
        // dihedral of order 8
        assert_eq!(census(2, 1, &[2], &[0]), vec![(1, 1), (2, 5), (4, 2)]);
    }

    #[test]
    fn cocycle_fires() {
        let spec = ExtensionSpec::new(pp(2, 1), ModuleShape::from_lengths([1]), vec![1]).unwrap();
        let g = ExtensionGroup::build(&spec).unwrap();
        let s = g.sigma_hat();
        let sq = g.gmul(&s, &s).unwrap();
        assert_eq!(
            sq,
            GroupElement {
                a: ModuleElement::new(vec![1]),
                j: 0
            }
        );
        assert_eq!(g.element_order(&s), 4);
        assert_eq!(g.element_order(&g.identity()), 1);
        assert_eq!(g.element_order(&sq), 2);
    }

    #[test]
    fn canonical_forms() {
        let s = ExtensionSpec::new(pp(2, 1), ModuleShape::from_lengths([2]), vec![1]).unwrap();
        assert_eq!(canonicalize(&s).lambda, 2);
        let s =
            ExtensionSpec::new(pp(2, 2), ModuleShape::from_lengths([1, 2]), vec![1, 1]).unwrap();
        assert_eq!(canonicalize(&s).lambda, 1);
        let s = ExtensionSpec::split(pp(3, 1), ModuleShape::from_lengths([1, 2])).unwrap();
        assert_eq!(canonicalize(&s).lambda, 3);
    }

    #[test]
    fn type_lists() {
        let p22 = pp(2, 2);
        let t = iso_types(&p22, &ModuleShape::from_lengths([1, 2, 4]));
        assert_eq!(
            t.iter().map(|x| x.lambda).collect::<Vec<_>>(),
            vec![4, 1, 2]
        );
        assert_eq!(
            iso_types(&pp(2, 1), &ModuleShape::from_pairs([(1, 2)])).len(),
            2
        );
        assert_eq!(
            iso_types(&pp(3, 1), &ModuleShape::from_pairs([(3, 3)])).len(),
            1
        );
        assert_eq!(
            stated_type_count(&pp(2, 1), &ModuleShape::from_pairs([(1, 2)])),
            3
        );
    }

    #[test]
    fn embedding_problem_equality() {
        let a = ExtensionSpec::new(pp(2, 1), ModuleShape::from_lengths([1]), vec![1]).unwrap();
        let b = ExtensionSpec::new(pp(2, 1), ModuleShape::from_lengths([2]), vec![0]).unwrap();
        assert!(same_embedding_problem(&a, &a).unwrap());
        assert!(!same_embedding_problem(&a, &b).unwrap());
        let c =
            ExtensionSpec::new(pp(3, 1), ModuleShape::from_lengths([1, 2]), vec![1, 0]).unwrap();
        let d =
            ExtensionSpec::new(pp(3, 1), ModuleShape::from_lengths([1, 2]), vec![1, 1]).unwrap();
        assert!(same_embedding_problem(&c, &d).unwrap());
    }

    #[test]
    fn inverse_and_identity() {
        let spec =
            ExtensionSpec::new(pp(3, 1), ModuleShape::from_lengths([2, 3]), vec![1, 2]).unwrap();
        let g = ExtensionGroup::build(&spec).unwrap();
        assert_eq!(g.order(), 3 * 3u64.pow(5));
        for x in g.elements().step_by(7) {
            let xi = g.ginv(&x).unwrap();
            assert_eq!(g.gmul(&x, &xi).unwrap(), g.identity());
            assert_eq!(g.gmul(&xi, &x).unwrap(), g.identity());
            assert_eq!(g.gmul(&g.identity(), &x).unwrap(), x);
            assert_eq!(g.index_of(&x), g.index_of(&g.element_at(g.index_of(&x))));
        }
    }

    #[test]
    fn order_cap() {
        let spec = ExtensionSpec::split(pp(2, 2), ModuleShape::from_pairs([(4, 5)])).unwrap();
        assert!(ExtensionGroup::build(&spec).is_err());
    }
}
