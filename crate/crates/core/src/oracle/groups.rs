//! Cayley tables of `G(A, c)`, group-axiom checks, and an isomorphism search
//! that respects the projection to `Z/p^nZ`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::extension::{iso_types, CanonicalExtension, ExtensionGroup};
use crate::prime_power::PrimePower;
use crate::shape::ModuleShape;

/// Largest group order for which tables are built by default.
pub const CAYLEY_CAP: u64 = 512;

/// Multiplication table together with the projection `(a, j) -> j`.
#[derive(Debug, Clone)]
pub struct CayleyTable {
    n: usize,
    p: u32,
    table: Vec<u16>,
    proj: Vec<u32>,
    inverse: Vec<u16>,
}

impl CayleyTable {
    pub fn from_group(g: &ExtensionGroup) -> Result<Self> {
        Self::from_group_capped(g, CAYLEY_CAP)
    }

    pub fn from_group_capped(g: &ExtensionGroup, cap: u64) -> Result<Self> {
        if g.order() > cap.min(u16::MAX as u64 + 1) {
            return Err(Error::EnumerationCap(format!(
                "Cayley table of order {} exceeds {cap}",
                g.order()
            )));
        }
        let n = g.order() as usize;
        let elems: Vec<_> = g.elements().collect();
        let mut table = vec![0u16; n * n];
        for (x, ex) in elems.iter().enumerate() {
            for (y, ey) in elems.iter().enumerate() {
                table[x * n + y] = g.index_of(&g.gmul(ex, ey)?) as u16;
            }
        }
        let mut inverse = vec![0u16; n];
        for (x, ex) in elems.iter().enumerate() {
            inverse[x] = g.index_of(&g.ginv(ex)?) as u16;
        }
        let proj = elems.iter().map(|e| e.j).collect();
        Ok(CayleyTable {
            n,
            p: g.spec().context().p(),
            table,
            proj,
            inverse,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y] as usize
    }

    pub fn projection(&self, x: usize) -> u32 {
        self.proj[x]
    }

    /// `(xy)z = x(yz)` for every triple.
    pub fn is_associative(&self) -> bool {
        let n = self.n;
        for x in 0..n {
            let row_x = &self.table[x * n..(x + 1) * n];
            for y in 0..n {
                let xy = row_x[y] as usize;
                let row_xy = &self.table[xy * n..(xy + 1) * n];
                let row_y = &self.table[y * n..(y + 1) * n];
                if row_y
                    .iter()
                    .zip(row_xy)
                    .any(|(&yz, &xy_z)| row_x[yz as usize] != xy_z)
                {
                    return false;
                }
            }
        }
        true
    }

    pub fn power(&self, x: usize, e: u64) -> usize {
        (0..e).fold(0, |acc, _| self.mul(acc, x))
    }

    pub fn element_order(&self, x: usize) -> u64 {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Subgroup generated by `gens`, as a membership mask.
    fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.n];
        mask[0] = true;
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !mask[y] {
                    mask[y] = true;
                    stack.push(y);
                }
            }
        }
        mask
    }

    fn commutator(&self, x: usize, y: usize) -> usize {
        let xy = self.mul(x, y);
        let xi = self.inverse[x] as usize;
        let yi = self.inverse[y] as usize;
        self.mul(self.mul(xy, xi), yi)
    }

    /// Terms of the lower central series, down to the trivial group.
    pub fn lower_central_series(&self) -> Vec<Vec<bool>> {
        let mut series = vec![vec![true; self.n]];
        loop {
            let last = series.last().expect("nonempty");
            let mut gens: Vec<usize> = Vec::new();
            let mut mask = self.closure(&gens);
            for x in (0..self.n).filter(|&x| last[x]) {
                for g in 0..self.n {
                    let c = self.commutator(x, g);
                    if !mask[c] {
                        gens.push(c);
                        mask = self.closure(&gens);
                    }
                }
            }
            let done = mask == *last;
            let trivial = mask.iter().filter(|&&b| b).count() == 1;
            if done {
                break;
            }
            series.push(mask);
            if trivial {
                break;
            }
        }
        series
    }

    /// Per element: projection, order, depth in the lower central series,
    /// centralizer size.
    pub fn signatures(&self) -> Vec<(u32, u64, usize, usize)> {
        let lcs = self.lower_central_series();
        (0..self.n)
            .map(|x| {
                let depth = lcs.iter().take_while(|m| m[x]).count();
                let cent = (0..self.n)
                    .filter(|&y| self.mul(x, y) == self.mul(y, x))
                    .count();
                (self.proj[x], self.element_order(x), depth, cent)
            })
            .collect()
    }
}

/// Outcome of [`verify_group_axioms`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxiomReport {
    pub associative: bool,
    pub identity: bool,
    pub inverses: bool,
    /// `sigma-hat (a, 0) sigma-hat^{-1} = (sigma a, 0)` for every `a`.
    pub conjugation: bool,
    /// `(a, j) -> j` is a homomorphism.
    pub projection: bool,
}

impl AxiomReport {
    pub fn all(&self) -> bool {
        self.associative && self.identity && self.inverses && self.conjugation && self.projection
    }
}

pub fn verify_group_axioms(g: &ExtensionGroup) -> Result<AxiomReport> {
    let t = CayleyTable::from_group(g)?;
    verify_table(g, &t)
}

/// Axiom checks against an already built table of `g`.
pub fn verify_table(g: &ExtensionGroup, t: &CayleyTable) -> Result<AxiomReport> {
    let n = t.order();
    let e = g.index_of(&g.identity()) as usize;
    let identity = (0..n).all(|x| t.mul(e, x) == x && t.mul(x, e) == x);
    let inverses = (0..n).all(|x| {
        let y = t.inverse[x] as usize;
        t.mul(x, y) == e && t.mul(y, x) == e
    });
    let pn = g.spec().context().order();
    let projection = (0..n).all(|x| {
        (0..n).all(|y| t.projection(t.mul(x, y)) == (t.projection(x) + t.projection(y)) % pn)
    });
    let sh = g.sigma_hat();
    let sh_inv = g.ginv(&sh)?;
    let mut conjugation = true;
    for x in g.elements().filter(|x| x.j == 0) {
        let conj = g.gmul(&g.gmul(&sh, &x)?, &sh_inv)?;
        if conj.j != 0 || conj.a != g.module().apply_sigma(&x.a) {
            conjugation = false;
            break;
        }
    }
    Ok(AxiomReport {
        associative: t.is_associative(),
        identity,
        inverses,
        conjugation,
        projection,
    })
}

/// Joint color refinement of two tables. Starting from the element
/// signatures, each round recolors `x` by its color, the color of `x^p`, and
/// the multiset of `(color(y), color(xy))` over all `y`. Colors are named consistently across
/// both tables, so any isomorphism compatible with the projections preserves
/// them. Returns `None` as soon as the color censuses differ.
fn refine(g1: &CayleyTable, g2: &CayleyTable) -> Option<(Refiner, Vec<u32>, Vec<u32>)> {
    let mut names: BTreeMap<(u32, u64, usize, usize), u32> = BTreeMap::new();
    let s1 = g1.signatures();
    let s2 = g2.signatures();
    for s in s1.iter().chain(&s2) {
        let k = names.len() as u32;
        names.entry(*s).or_insert(k);
    }
    let c1: Vec<u32> = s1.iter().map(|s| names[s]).collect();
    let c2: Vec<u32> = s2.iter().map(|s| names[s]).collect();
    let pth = |t: &CayleyTable| -> Vec<usize> {
        (0..t.order()).map(|x| t.power(x, t.p as u64)).collect()
    };
    let r = Refiner {
        pw1: pth(g1),
        pw2: pth(g2),
    };
    let (c1, c2) = r.run(g1, g2, c1, c2)?;
    Some((r, c1, c2))
}

/// Color of `x`, color of `x^p`, sorted `(color(y), color(xy))` pairs.
type RefineKey = (u32, u32, Vec<(u32, u32)>);

/// Joint color refinement of two tables, colors named consistently across both.
struct Refiner {
    pw1: Vec<usize>,
    pw2: Vec<usize>,
}

impl Refiner {
    /// Refines `(c1, c2)` until stable; `None` once the color censuses differ.
    fn run(
        &self,
        g1: &CayleyTable,
        g2: &CayleyTable,
        mut c1: Vec<u32>,
        mut c2: Vec<u32>,
    ) -> Option<(Vec<u32>, Vec<u32>)> {
        let mut classes = census(&c1).len();
        loop {
            if census(&c1) != census(&c2) {
                return None;
            }
            let key = |t: &CayleyTable, c: &[u32], pw: &[usize], x: usize| {
                let mut pairs: Vec<(u32, u32)> =
                    (0..t.order()).map(|y| (c[y], c[t.mul(x, y)])).collect();
                pairs.sort_unstable();
                (c[x], c[pw[x]], pairs)
            };
            let k1: Vec<_> = (0..g1.order())
                .map(|x| key(g1, &c1, &self.pw1, x))
                .collect();
            let k2: Vec<_> = (0..g2.order())
                .map(|x| key(g2, &c2, &self.pw2, x))
                .collect();
            let mut fresh: BTreeMap<&RefineKey, u32> = BTreeMap::new();
            for k in k1.iter().chain(&k2) {
                let id = fresh.len() as u32;
                fresh.entry(k).or_insert(id);
            }
            let n1: Vec<u32> = k1.iter().map(|k| fresh[k]).collect();
            let n2: Vec<u32> = k2.iter().map(|k| fresh[k]).collect();
            let done = fresh.len() == classes;
            classes = fresh.len();
            c1 = n1;
            c2 = n2;
            if done {
                return (census(&c1) == census(&c2)).then_some((c1, c2));
            }
        }
    }
}

fn census(c: &[u32]) -> BTreeMap<u32, usize> {
    let mut m = BTreeMap::new();
    for &x in c {
        *m.entry(x).or_insert(0) += 1;
    }
    m
}

/// Node budget for [`find_isomorphism`]. Every node runs a joint refinement.
pub const ISO_SEARCH_BUDGET: u64 = 20_000;

/// Searches for a bijective homomorphism `phi: G1 -> G2` with
/// `proj_2 ∘ phi = proj_1`, by backtracking over images of generators. Each
/// tentative image is individualized and the joint coloring refined again,
/// pruning as soon as the two colorings diverge. Errors if the search
/// outgrows [`ISO_SEARCH_BUDGET`] nodes, so a `None` is always a proof of
/// non-isomorphism.
pub fn find_isomorphism(g1: &CayleyTable, g2: &CayleyTable) -> Result<Option<Vec<usize>>> {
    if g1.order() != g2.order() {
        return Ok(None);
    }
    let Some((refiner, c1, c2)) = refine(g1, g2) else {
        return Ok(None);
    };
    let mut search = Search {
        g1,
        g2,
        refiner,
        gens: Vec::new(),
        images: Vec::new(),
        nodes: 0,
    };
    search.run(c1, c2)
}

struct Search<'a> {
    g1: &'a CayleyTable,
    g2: &'a CayleyTable,
    refiner: Refiner,
    gens: Vec<usize>,
    images: Vec<usize>,
    nodes: u64,
}

impl Search<'_> {
    fn run(&mut self, c1: Vec<u32>, c2: Vec<u32>) -> Result<Option<Vec<usize>>> {
        self.nodes += 1;
        if self.nodes > ISO_SEARCH_BUDGET {
            return Err(Error::EnumerationCap(format!(
                "isomorphism search exceeded {ISO_SEARCH_BUDGET} nodes"
            )));
        }
        let Some(partial) = extend(self.g1, self.g2, (&c1, &c2), &self.gens, &self.images) else {
            return Ok(None);
        };
        let sizes = census(&c1);
        // next generator: smallest color class outside the current span
        let Some(x) = (0..self.g1.order())
            .filter(|&x| partial[x].is_none())
            .min_by_key(|&x| (sizes[&c1[x]], std::cmp::Reverse(self.g1.element_order(x))))
        else {
            return Ok(Some(
                partial.into_iter().map(|y| y.expect("total map")).collect(),
            ));
        };
        let fresh = sizes.keys().next_back().map_or(0, |k| k + 1);
        for y in (0..self.g2.order()).filter(|&y| c2[y] == c1[x]) {
            let (mut d1, mut d2) = (c1.clone(), c2.clone());
            d1[x] = fresh;
            d2[y] = fresh;
            let Some((d1, d2)) = self.refiner.run(self.g1, self.g2, d1, d2) else {
                continue;
            };
            self.gens.push(x);
            self.images.push(y);
            let found = self.run(d1, d2)?;
            self.gens.pop();
            self.images.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

type Colors<'a> = (&'a [u32], &'a [u32]);

/// The homomorphism on `<gens>` determined by `gens[i] -> images[i]`, if it
/// is well defined, injective and color preserving.
fn extend(
    g1: &CayleyTable,
    g2: &CayleyTable,
    colors: Colors<'_>,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<Option<usize>>> {
    let mut phi: Vec<Option<usize>> = vec![None; g1.order()];
    let mut hit = vec![false; g2.order()];
    phi[0] = Some(0);
    hit[0] = true;
    let mut stack = vec![0usize];
    while let Some(x) = stack.pop() {
        let fx = phi[x].expect("mapped");
        for (&g, &h) in gens.iter().zip(images) {
            let y = g1.mul(x, g);
            let fy = g2.mul(fx, h);
            match phi[y] {
                Some(v) if v != fy => return None,
                Some(_) => {}
                None => {
                    if hit[fy] || colors.0[y] != colors.1[fy] {
                        return None;
                    }
                    phi[y] = Some(fy);
                    hit[fy] = true;
                    stack.push(y);
                }
            }
        }
    }
    Some(phi)
}

/// For every pair of listed types of `shape`, whether an isomorphism of
/// embedding problems exists.
pub fn distinguish_iso_types(
    pp: &PrimePower,
    shape: &ModuleShape,
) -> Result<Vec<(CanonicalExtension, CanonicalExtension, bool)>> {
    let types = iso_types(pp, shape);
    let mut tables = Vec::new();
    for t in &types {
        tables.push(CayleyTable::from_group(&ExtensionGroup::build(
            &t.to_spec(*pp)?,
        )?)?);
    }
    let mut out = Vec::new();
    for i in 0..types.len() {
        for j in i + 1..types.len() {
            let iso = find_isomorphism(&tables[i], &tables[j])?.is_some();
            out.push((types[i].clone(), types[j].clone(), iso));
        }
    }
    Ok(out)
}
