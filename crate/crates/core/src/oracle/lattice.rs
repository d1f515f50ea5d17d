//! Naive submodule lattice walk.
//!
//! Every nonzero submodule `U'` has a maximal submodule `U` of codimension one,
//! and then `U' = U + F_p v` for some `v` with `s v ∈ U`. Walking upward one
//! dimension at a time from zero therefore reaches every submodule.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{linear_relations, Subspace};
use crate::submodule::Submodule;

/// Default cap on `dim(A)`.
pub const LATTICE_DIM_CAP: usize = 8;

/// `{v ∈ A : s v ∈ U}` for submodules `U ⊆ A`.
fn s_preimage(a: &Submodule, u: &Subspace) -> Subspace {
    let m = a.ambient();
    let rows = a.space().rows();
    let residues: Vec<Vec<Scalar>> = rows.iter().map(|r| u.reduce(&m.shift(r, 1))).collect();
    let f = m.field();
    let mut out = u.clone();
    for rel in linear_relations(f, &residues) {
        let mut v = vec![0; m.dim()];
        for (&c, r) in rel.iter().zip(rows) {
            for (x, &y) in v.iter_mut().zip(r) {
                *x = f.mul_add(*x, c, y);
            }
        }
        out.insert(&v);
    }
    out
}

fn check_cap(a: &Submodule, cap: usize) -> Result<()> {
    let p = a.ambient().field().p();
    // the cap is stated for p in {2, 3}; larger p get the same p^dim budget as p = 3
    let budget = 3f64.powi(cap as i32);
    if a.dim() > cap || (p as f64).powi(a.dim() as i32) > budget {
        return Err(Error::EnumerationCap(format!(
            "lattice walk needs dim(A) <= {cap} (p = {p}, dim = {})",
            a.dim()
        )));
    }
    Ok(())
}

/// All submodules of `A`, sorted by dimension then canonical basis.
pub fn enum_submodules(a: &Submodule) -> Result<Vec<Submodule>> {
    check_cap(a, LATTICE_DIM_CAP)?;
    Ok(walk(a, None))
}

/// All submodules of `A` of dimension at most `max_sub_dim`, under an explicit cap.
pub fn enum_submodules_bounded(
    a: &Submodule,
    max_sub_dim: usize,
    dim_cap: usize,
) -> Result<Vec<Submodule>> {
    check_cap(a, dim_cap)?;
    Ok(walk(a, Some(max_sub_dim)))
}

fn walk(a: &Submodule, max_sub_dim: Option<usize>) -> Vec<Submodule> {
    let m = a.ambient();
    let f = m.field();
    let top = max_sub_dim.unwrap_or(a.dim()).min(a.dim());
    let mut level = vec![Subspace::zero(f, m.dim())];
    let mut all: Vec<Subspace> = level.clone();
    for _ in 0..top {
        let mut seen: HashSet<Subspace> = HashSet::new();
        for u in &level {
            let pre = s_preimage(a, u);
            let quotient =
                Subspace::from_vectors(f, m.dim(), pre.rows().iter().map(|r| u.reduce(r)));
            for v in quotient.line_representatives() {
                let mut w = u.clone();
                w.insert(&v);
                seen.insert(w);
            }
        }
        let mut next: Vec<Subspace> = seen.into_iter().collect();
        next.sort();
        all.extend(next.iter().cloned());
        level = next;
    }
    all.into_iter()
        .map(|s| Submodule::from_space_unchecked(m.clone(), s))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::Module;
    use crate::prime_power::PrimePower;
    use std::sync::Arc;

    fn full(p: u32, n: u32, lens: &[u32]) -> Submodule {
        Submodule::full(Arc::new(
            Module::from_block_lengths(PrimePower::new(p, n).unwrap(), lens.to_vec()).unwrap(),
        ))
    }

    #[test]
    fn small_lattices() {
        let z = Submodule::zero(full(2, 1, &[1]).ambient().clone());
        assert_eq!(enum_submodules(&z).unwrap().len(), 1);
        assert_eq!(enum_submodules(&full(2, 1, &[2])).unwrap().len(), 3);
        assert_eq!(enum_submodules(&full(2, 1, &[1, 1])).unwrap().len(), 5);
        // all subspaces of F_3^3: 1 + 13 + 13 + 1
        assert_eq!(enum_submodules(&full(3, 1, &[1, 1, 1])).unwrap().len(), 28);
        // a uniserial module has a chain of submodules
        assert_eq!(enum_submodules(&full(2, 3, &[8])).unwrap().len(), 9);
    }

    #[test]
    fn every_result_is_stable_and_distinct() {
        let a = full(2, 2, &[1, 2, 4]);
        let subs = enum_submodules(&a).unwrap();
        let set: HashSet<&Submodule> = subs.iter().collect();
        assert_eq!(set.len(), subs.len());
        assert!(subs.iter().all(|u| u.is_stable()));
        // cross-check against brute force over all subspaces spanned by pairs of elements plus closure
        let elems = a.space().elements();
        let mut brute: HashSet<Subspace> = HashSet::new();
        for x in &elems {
            for y in &elems {
                let u = Submodule::span(
                    a.ambient().clone(),
                    &[
                        crate::module::ModuleElement::new(x.clone()),
                        crate::module::ModuleElement::new(y.clone()),
                    ],
                )
                .unwrap();
                brute.insert(u.space().clone());
            }
        }
        // every submodule generated by two elements appears in the walk
        let walked: HashSet<Subspace> = subs.iter().map(|u| u.space().clone()).collect();
        assert!(brute.is_subset(&walked));
    }

    #[test]
    fn cap_enforced() {
        assert!(enum_submodules(&full(2, 1, &[1; 9])).is_err());
        assert!(enum_submodules_bounded(&full(2, 1, &[1; 9]), 2, 10).is_ok());
    }
}
