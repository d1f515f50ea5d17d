//! Subspaces of F_p^d in reduced row echelon form.
//!
//! The RREF basis is canonical, so two subspaces are equal exactly when their
//! row lists are equal. This is what makes submodules hashable.

use crate::field::{Fp, Scalar};

/// A subspace of `F_p^dim`, held as its reduced row echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    dim: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    field: Fp,
}

fn leading(v: &[Scalar]) -> Option<usize> {
    v.iter().position(|&x| x != 0)
}

/// `dst -= c * src`
#[inline]
fn axpy_neg(f: Fp, dst: &mut [Scalar], c: Scalar, src: &[Scalar]) {
    if c == 0 {
        return;
    }
    let nc = f.neg(c);
    for (d, &s) in dst.iter_mut().zip(src) {
        if s != 0 {
            *d = f.mul_add(*d, nc, s);
        }
    }
}

fn scale(f: Fp, v: &mut [Scalar], c: Scalar) {
    for x in v.iter_mut() {
        *x = f.mul(*x, c);
    }
}

impl Subspace {
    pub fn zero(field: Fp, dim: usize) -> Self {
        Subspace {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            field,
        }
    }

    pub fn full(field: Fp, dim: usize) -> Self {
        let rows = (0..dim)
            .map(|i| {
                let mut r = vec![0; dim];
                r[i] = 1;
                r
            })
            .collect();
        Subspace {
            dim,
            rows,
            pivots: (0..dim).collect(),
            field,
        }
    }

    pub fn from_vectors<I, V>(field: Fp, dim: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[Scalar]>,
    {
        let mut s = Subspace::zero(field, dim);
        for v in vectors {
            s.insert(v.as_ref());
        }
        s
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    /// Dimension of the ambient space.
    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical coset representative of `v` modulo this subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        debug_assert_eq!(v.len(), self.dim);
        let mut r = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = r[pc];
            axpy_neg(self.field, &mut r, c, row);
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        leading(&self.reduce(v)).is_none()
    }

    /// Adds `v` to the span. Returns whether the rank grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let f = self.field;
        let mut r = self.reduce(v);
        let Some(pc) = leading(&r) else {
            return false;
        };
        let inv = f.inv(r[pc]);
        scale(f, &mut r, inv);
        for row in self.rows.iter_mut() {
            let c = row[pc];
            axpy_neg(f, row, c, &r);
        }
        let at = self.pivots.partition_point(|&q| q < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, r);
        true
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r);
        }
        s
    }

    /// Intersection with the coordinate subspace `{v : v_j = 0 whenever !keep[j]}`.
    pub fn intersect_coords(&self, keep: &[bool]) -> Subspace {
        assert_eq!(keep.len(), self.dim);
        let order: Vec<usize> = (0..self.dim)
            .filter(|&j| !keep[j])
            .chain((0..self.dim).filter(|&j| keep[j]))
            .collect();
        let ech = echelon_in_order(self.field, self.rows.clone(), &order);
        Subspace::from_vectors(
            self.field,
            self.dim,
            ech.into_iter().filter(|(pc, _)| keep[*pc]).map(|(_, r)| r),
        )
    }

    /// General intersection (Zassenhaus).
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let d = self.dim;
        let rows: Vec<Vec<Scalar>> = self
            .rows
            .iter()
            .map(|r| r.iter().chain(r.iter()).copied().collect())
            .chain(
                other
                    .rows
                    .iter()
                    .map(|r| r.iter().copied().chain(std::iter::repeat_n(0, d)).collect()),
            )
            .collect();
        let order: Vec<usize> = (0..2 * d).collect();
        let ech = echelon_in_order(self.field, rows, &order);
        Subspace::from_vectors(
            self.field,
            d,
            ech.into_iter()
                .filter(|(pc, _)| *pc >= d)
                .map(|(_, r)| r[d..].to_vec()),
        )
    }

    /// Every vector of the subspace, `p^rank` of them.
    pub fn elements(&self) -> Vec<Vec<Scalar>> {
        let f = self.field;
        let mut out = vec![vec![0; self.dim]];
        for row in &self.rows {
            let mut next = Vec::with_capacity(out.len() * f.p() as usize);
            for v in &out {
                for c in 0..f.p() as Scalar {
                    let mut w = v.clone();
                    for (x, &y) in w.iter_mut().zip(row) {
                        *x = f.mul_add(*x, c, y);
                    }
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }

    /// One normalized spanning vector per line, `(p^rank - 1)/(p - 1)` of them.
    pub fn line_representatives(&self) -> Vec<Vec<Scalar>> {
        let f = self.field;
        let k = self.rows.len();
        let mut out = Vec::new();
        for lead in 0..k {
            // coefficient vectors whose first nonzero entry is a 1 at `lead`
            let mut partial = vec![self.rows[lead].clone()];
            for row in &self.rows[lead + 1..] {
                let mut next = Vec::with_capacity(partial.len() * f.p() as usize);
                for v in &partial {
                    for c in 0..f.p() as Scalar {
                        let mut w = v.clone();
                        for (x, &y) in w.iter_mut().zip(row) {
                            *x = f.mul_add(*x, c, y);
                        }
                        next.push(w);
                    }
                }
                partial = next;
            }
            out.extend(partial);
        }
        out
    }
}

/// Gauss-Jordan elimination with pivots searched in the column order `order`.
/// Returns `(pivot column, row)` pairs; each row vanishes on every column that
/// precedes its pivot in `order`.
pub fn echelon_in_order(
    f: Fp,
    mut rows: Vec<Vec<Scalar>>,
    order: &[usize],
) -> Vec<(usize, Vec<Scalar>)> {
    let mut out: Vec<(usize, Vec<Scalar>)> = Vec::new();
    let mut start = 0;
    for &col in order {
        let Some(k) = (start..rows.len()).find(|&k| rows[k][col] != 0) else {
            continue;
        };
        rows.swap(start, k);
        let inv = f.inv(rows[start][col]);
        scale(f, &mut rows[start], inv);
        let piv = rows[start].clone();
        for (i, r) in rows.iter_mut().enumerate() {
            if i != start {
                let c = r[col];
                axpy_neg(f, r, c, &piv);
            }
        }
        for (_, r) in out.iter_mut() {
            let c = r[col];
            axpy_neg(f, r, c, &piv);
        }
        out.push((col, piv));
        start += 1;
    }
    out
}

/// Basis of `{c : sum c_i v_i = 0}`.
pub fn linear_relations(f: Fp, vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let k = vectors.len();
    if k == 0 {
        return Vec::new();
    }
    let d = vectors[0].len();
    let rows: Vec<Vec<Scalar>> = vectors
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut r = v.clone();
            r.extend((0..k).map(|j| (i == j) as Scalar));
            r
        })
        .collect();
    let order: Vec<usize> = (0..d + k).collect();
    echelon_in_order(f, rows, &order)
        .into_iter()
        .filter(|(pc, _)| *pc >= d)
        .map(|(_, r)| r[d..].to_vec())
        .collect()
}

/// Some `c` with `sum c_i v_i = target`, if one exists.
pub fn solve(f: Fp, vectors: &[Vec<Scalar>], target: &[Scalar]) -> Option<Vec<Scalar>> {
    let mut all = vectors.to_vec();
    all.push(target.to_vec());
    let k = vectors.len();
    for rel in linear_relations(f, &all) {
        if rel[k] != 0 {
            let m = f.neg(f.inv(rel[k]));
            return Some(rel[..k].iter().map(|&c| f.mul(c, m)).collect());
        }
    }
    None
}
