//! sigma-stable subspaces, their filtrations, and cyclic decompositions.

use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{solve, Subspace};
use crate::module::{Module, ModuleElement};
use crate::shape::{ModuleShape, ShapeStats};

#[derive(Debug, Clone)]
pub struct Submodule {
    ambient: Arc<Module>,
    space: Subspace,
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space
            && (Arc::ptr_eq(&self.ambient, &other.ambient) || self.ambient == other.ambient)
    }
}

impl Eq for Submodule {}

impl Hash for Submodule {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.space.hash(state);
    }
}

/// `V_{i} = s^{i-1}(V) ∩ V^G` for `i = 1..=p^n`.
#[derive(Debug, Clone)]
pub struct Filtration {
    /// `deltas[i-1] = Delta(V_{i})`
    pub deltas: Vec<u32>,
    /// `bases[i-1]` realizes `V_{i}`; trailing zero spaces are omitted.
    pub bases: Vec<Subspace>,
}

impl Filtration {
    pub fn delta(&self, i: u32) -> u32 {
        self.deltas.get(i as usize - 1).copied().unwrap_or(0)
    }
}

/// Closes a subspace under `s`.
fn s_closure(ambient: &Module, mut space: Subspace) -> Subspace {
    let mut frontier: Vec<Vec<Scalar>> = space.rows().to_vec();
    while let Some(v) = frontier.pop() {
        let w = ambient.shift(&v, 1);
        if space.insert(&w) {
            frontier.push(w);
        }
    }
    space
}

impl Submodule {
    pub fn zero(ambient: Arc<Module>) -> Self {
        let space = Subspace::zero(ambient.field(), ambient.dim());
        Submodule { ambient, space }
    }

    pub fn full(ambient: Arc<Module>) -> Self {
        let space = Subspace::full(ambient.field(), ambient.dim());
        Submodule { ambient, space }
    }

    /// Smallest submodule containing `gens`.
    pub fn span(ambient: Arc<Module>, gens: &[ModuleElement]) -> Result<Self> {
        for g in gens {
            ambient.check(g)?;
        }
        let space = Subspace::from_vectors(ambient.field(), ambient.dim(), gens);
        let space = s_closure(&ambient, space);
        Ok(Submodule { ambient, space })
    }

    /// Wraps a subspace, checking that it is sigma-stable.
    pub fn from_space(ambient: Arc<Module>, space: Subspace) -> Result<Self> {
        if space.ambient_dim() != ambient.dim() || space.field() != ambient.field() {
            return Err(Error::ContextMismatch(
                "subspace does not live in the ambient module".into(),
            ));
        }
        let sub = Submodule { ambient, space };
        if !sub.is_stable() {
            return Err(Error::Internal("subspace is not sigma-stable".into()));
        }
        Ok(sub)
    }

    /// Wraps a subspace the caller already knows is stable.
    pub(crate) fn from_space_unchecked(ambient: Arc<Module>, space: Subspace) -> Self {
        debug_assert!(Submodule {
            ambient: ambient.clone(),
            space: space.clone()
        }
        .is_stable());
        Submodule { ambient, space }
    }

    pub fn ambient(&self) -> &Arc<Module> {
        &self.ambient
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.rank()
    }

    pub fn contains(&self, v: &ModuleElement) -> bool {
        self.space.contains(&v.coords)
    }

    pub fn is_stable(&self) -> bool {
        self.space
            .rows()
            .iter()
            .all(|r| self.space.contains(&self.ambient.shift(r, 1)))
    }

    pub fn is_submodule_of(&self, other: &Submodule) -> bool {
        self.space.is_subspace_of(&other.space)
    }

    /// `s^k(self)`.
    pub fn image_s_pow(&self, k: u32) -> Subspace {
        Subspace::from_vectors(
            self.ambient.field(),
            self.ambient.dim(),
            self.space.rows().iter().map(|r| self.ambient.shift(r, k)),
        )
    }

    /// `self ∩ ker s^k`.
    pub fn ker_s_pow(&self, k: u32) -> Subspace {
        self.space.intersect_coords(&self.ambient.ker_s_pow_mask(k))
    }

    /// `self^G`.
    pub fn fixed(&self) -> Subspace {
        self.ker_s_pow(1)
    }

    pub fn filtration(&self) -> Filtration {
        let pn = self.ambient.context().order();
        let socle = self.ambient.socle_mask();
        let mut deltas = vec![0u32; pn as usize];
        let mut bases = Vec::new();
        let mut img = self.space.clone();
        for i in 1..=pn {
            if img.rank() == 0 {
                break;
            }
            let vi = img.intersect_coords(&socle);
            deltas[i as usize - 1] = vi.rank() as u32;
            bases.push(vi);
            img = Subspace::from_vectors(
                img.field(),
                img.ambient_dim(),
                img.rows().iter().map(|r| self.ambient.shift(r, 1)),
            );
        }
        Filtration { deltas, bases }
    }

    pub fn shape(&self) -> ModuleShape {
        let f = self.filtration();
        let mut s = ModuleShape::new();
        for i in 1..=f.bases.len() as u32 {
            s.add(i, f.delta(i) - f.delta(i + 1));
        }
        s
    }

    pub fn shape_stats(&self) -> ShapeStats {
        self.shape().stats(&self.ambient.context())
    }

    /// Cyclic decomposition by pulling back filtration bases.
    ///
    /// Generators come out in ascending length order.
    pub fn decompose(&self) -> Result<(ModuleShape, Vec<ModuleElement>)> {
        let filt = self.filtration();
        let top = filt.bases.len();
        let field = self.ambient.field();
        let dim = self.ambient.dim();
        let mut shape = ModuleShape::new();
        let mut gens: Vec<ModuleElement> = Vec::new();
        let mut higher = Subspace::zero(field, dim);
        for i in (1..=top).rev() {
            let vi = &filt.bases[i - 1];
            let images: Vec<Vec<Scalar>> = self
                .space
                .rows()
                .iter()
                .map(|r| self.ambient.shift(r, i as u32 - 1))
                .collect();
            let mut layer = Vec::new();
            for x in vi.rows() {
                if !higher.insert(x) {
                    continue;
                }
                let c = solve(field, &images, x)
                    .ok_or_else(|| Error::Internal(format!("no preimage under s^{}", i - 1)))?;
                let mut v = vec![0; dim];
                for (&ci, r) in c.iter().zip(self.space.rows()) {
                    for (a, &b) in v.iter_mut().zip(r) {
                        *a = field.mul_add(*a, ci, b);
                    }
                }
                layer.push(ModuleElement::new(v));
            }
            shape.add(i as u32, layer.len() as u32);
            gens.extend(layer);
        }
        gens.reverse();
        Ok((shape, gens))
    }
}
