//! Enumeration of solutions `U ⊆ A` by choosing a flag and lifting it.
//!
//! A solution is fixed by its filtration `W_{P} ⊆ ... ⊆ W_{1}` together with
//! preimages under `s^{i-1}` of a basis of each layer `W_{i} / W_{i+1}`. The
//! enumerator walks every admissible flag, every choice of preimages, and keeps
//! the distinct spans that really have shape `M` and `lambda = mu`.

use std::collections::HashSet;

use crate::counting::validate_mu;
use crate::environment::Environment;
use crate::error::{Error, Result};
use crate::field::{Fp, Scalar};
use crate::linalg::{solve, Subspace};
use crate::module::Module;
use crate::shape::ModuleShape;
use crate::submodule::Submodule;

/// Default limit on lift combinations tried per case.
pub const DEFAULT_LIFT_BUDGET: u64 = 50_000_000;

/// Outcome of one enumeration.
#[derive(Debug, Clone)]
pub struct SolutionEnumeration {
    /// Distinct verified solutions, sorted.
    pub solutions: Vec<Submodule>,
    /// Flags visited.
    pub flags: u64,
    /// Lift combinations spanned.
    pub lifts: u64,
    /// Distinct spans that failed the shape or lambda check.
    pub rejected: u64,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Case {
    Split,
    AtLambda,
    AboveLambda,
}

/// Every `U ⊆ A` with `U ≅ M` and `lambda(U) = mu`.
pub fn enum_solutions(
    env: &Environment,
    a: &Submodule,
    m: &ModuleShape,
    mu: u32,
) -> Result<Vec<Submodule>> {
    Ok(enum_solutions_detailed(env, a, m, mu, DEFAULT_LIFT_BUDGET)?.solutions)
}

/// Subspaces of `C` that contain `W` with dimension `dim W + k`; each is
/// reported by the list of new basis vectors.
fn extensions(f: Fp, w: &Subspace, c: &Subspace, k: usize) -> Vec<Vec<Vec<Scalar>>> {
    let quotient = Subspace::from_vectors(f, w.ambient_dim(), c.rows().iter().map(|r| w.reduce(r)));
    let q = quotient.rank();
    if k > q {
        return Vec::new();
    }
    let basis = quotient.rows();
    let p = f.p() as Scalar;
    let mut out = Vec::new();
    // one k x q coefficient matrix in reduced row echelon form per subspace
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                ((pivots[r] + 1)..q)
                    .filter(|c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let mut vals = vec![0 as Scalar; free.len()];
        loop {
            let mut coeffs = vec![vec![0 as Scalar; q]; k];
            for (r, &pc) in pivots.iter().enumerate() {
                coeffs[r][pc] = 1;
            }
            for (&(r, c), &v) in free.iter().zip(&vals) {
                coeffs[r][c] = v;
            }
            let vecs = coeffs
                .iter()
                .map(|row| {
                    let mut v = vec![0; w.ambient_dim()];
                    for (&cf, b) in row.iter().zip(basis) {
                        if cf != 0 {
                            for (x, &y) in v.iter_mut().zip(b) {
                                *x = f.mul_add(*x, cf, y);
                            }
                        }
                    }
                    v
                })
                .collect();
            out.push(vecs);
            // odometer over the free entries
            let mut idx = 0;
            while idx < vals.len() {
                vals[idx] += 1;
                if vals[idx] < p {
                    break;
                }
                vals[idx] = 0;
                idx += 1;
            }
            if idx == vals.len() {
                break;
            }
        }
        // next pivot combination
        let mut r = k;
        loop {
            if r == 0 {
                return out;
            }
            r -= 1;
            if pivots[r] < q - k + r {
                pivots[r] += 1;
                for t in r + 1..k {
                    pivots[t] = pivots[t - 1] + 1;
                }
                break;
            }
        }
    }
}

struct Ctx<'a> {
    env: &'a Environment,
    module: &'a Module,
    a: &'a Submodule,
    m: &'a ModuleShape,
    mu: u32,
    pn: u32,
    case: Case,
    /// `constraint[i-1]`: the space `W_{i}` must lie in
    constraint: Vec<Subspace>,
    a0_lambda: Option<Subspace>,
    /// `kernels[i-1] = A ∩ ker s^{i-1}`, as element lists
    kernels: Vec<Vec<Vec<Scalar>>>,
    /// images of `A`'s basis under `s^{i-1}`
    images: Vec<Vec<Vec<Scalar>>>,
    budget: u64,
    seen: HashSet<Subspace>,
    out: SolutionEnumeration,
}

impl Ctx<'_> {
    fn walk(
        &mut self,
        i: u32,
        w: Subspace,
        layers: &mut Vec<(u32, Vec<Vec<Scalar>>)>,
    ) -> Result<()> {
        if i == 0 {
            self.out.flags += 1;
            return self.lift(layers);
        }
        let c = &self.constraint[i as usize - 1];
        if !w.is_subspace_of(c) {
            return Ok(());
        }
        let mi = (self.m.delta(i) - self.m.delta(i + 1)) as usize;
        let f = self.module.field();
        for new in extensions(f, &w, c, mi) {
            let mut wi = w.clone();
            for v in &new {
                wi.insert(v);
            }
            if self.case == Case::AtLambda
                && i == self.a0_lambda_level()
                && wi.is_subspace_of(self.a0_lambda.as_ref().expect("lambda layer"))
            {
                continue;
            }
            layers.push((i, new));
            self.walk(i - 1, wi, layers)?;
            layers.pop();
        }
        Ok(())
    }

    fn a0_lambda_level(&self) -> u32 {
        self.mu
    }

    /// Admissible preimages of `x` under `s^{i-1}`, split by index value.
    fn preimages(&self, i: u32, x: &[Scalar]) -> Result<Vec<Vec<Scalar>>> {
        let f = self.module.field();
        let rows = self.a.space().rows();
        let coeffs = solve(f, &self.images[i as usize - 1], x)
            .ok_or_else(|| Error::Internal("flag vector has no preimage in A".into()))?;
        let mut base = vec![0; self.module.dim()];
        for (&c, r) in coeffs.iter().zip(rows) {
            for (t, &y) in base.iter_mut().zip(r) {
                *t = f.mul_add(*t, c, y);
            }
        }
        let zero_index = match self.case {
            Case::Split => i < self.pn,
            Case::AtLambda => false,
            Case::AboveLambda => i < self.mu,
        };
        let mut out = Vec::new();
        for k in &self.kernels[i as usize - 1] {
            let v: Vec<Scalar> = base.iter().zip(k).map(|(&b, &y)| f.add(b, y)).collect();
            if !zero_index || self.env.e_raw(&v) == 0 {
                out.push(v);
            }
        }
        Ok(out)
    }

    fn lift(&mut self, layers: &[(u32, Vec<Vec<Scalar>>)]) -> Result<()> {
        let mut choices: Vec<(u32, Vec<Vec<Scalar>>)> = Vec::new();
        for (i, vecs) in layers {
            for x in vecs {
                choices.push((*i, self.preimages(*i, x)?));
            }
        }
        if choices.iter().any(|(_, c)| c.is_empty()) {
            return Ok(());
        }
        let dim = self.module.dim();
        let shifts = Subspace::zero(self.module.field(), dim);
        let mut chosen = Vec::with_capacity(choices.len());
        self.lift_from(&choices, 0, &shifts, &mut chosen)
    }

    /// Depth-first over lift choices, highest level first. `shifts` spans
    /// `s^k alpha` for `k >= 1` over the lifts chosen so far; adding one of its
    /// elements to a later lift leaves the span unchanged and, since `e`
    /// vanishes on `s(J)`, leaves every index condition unchanged too. So only
    /// one lift per coset is tried.
    fn lift_from(
        &mut self,
        choices: &[(u32, Vec<Vec<Scalar>>)],
        t: usize,
        shifts: &Subspace,
        chosen: &mut Vec<Vec<Scalar>>,
    ) -> Result<()> {
        if t == choices.len() {
            self.out.lifts += 1;
            if self.out.lifts > self.budget {
                return Err(Error::EnumerationCap(format!(
                    "more than {} lift combinations for M = {}",
                    self.budget, self.m
                )));
            }
            if self.case == Case::AboveLambda
                && !choices
                    .iter()
                    .zip(chosen.iter())
                    .any(|((i, _), v)| *i == self.mu && self.env.e_raw(v) != 0)
            {
                return Ok(());
            }
            let mut span = shifts.clone();
            for v in chosen.iter() {
                span.insert(v);
            }
            if !self.seen.contains(&span) {
                self.seen.insert(span.clone());
                self.accept(span)?;
            }
            return Ok(());
        }
        let (i, options) = &choices[t];
        let known = shifts.intersect_coords(&self.module.ker_s_pow_mask(i - 1));
        let mut reps: HashSet<Vec<Scalar>> = HashSet::new();
        for v in options {
            let r = known.reduce(v);
            if !reps.insert(r.clone()) {
                continue;
            }
            let mut next = shifts.clone();
            let mut w = self.module.shift(&r, 1);
            while next.insert(&w) {
                w = self.module.shift(&w, 1);
            }
            chosen.push(r);
            self.lift_from(choices, t + 1, &next, chosen)?;
            chosen.pop();
        }
        Ok(())
    }

    fn accept(&mut self, span: Subspace) -> Result<()> {
        let u = Submodule::from_space(self.a.ambient().clone(), span)?;
        if u.shape() == *self.m && self.env.lambda_of(&u)? == self.mu && u.is_submodule_of(self.a) {
            self.out.solutions.push(u);
        } else {
            self.out.rejected += 1;
        }
        Ok(())
    }
}

/// [`enum_solutions`] with bookkeeping and an explicit budget on lift combinations.
pub fn enum_solutions_detailed(
    env: &Environment,
    a: &Submodule,
    m: &ModuleShape,
    mu: u32,
    lift_budget: u64,
) -> Result<SolutionEnumeration> {
    let pp = env.context();
    m.validate(&pp)?;
    validate_mu(&pp, m, mu)?;
    if **a.ambient() != **env.module() {
        return Err(Error::ContextMismatch("A is not a submodule of J".into()));
    }
    let pn = pp.order();
    let lambda = env.lambda_of(a)?;
    let mut out = SolutionEnumeration {
        solutions: Vec::new(),
        flags: 0,
        lifts: 0,
        rejected: 0,
    };
    if mu < lambda {
        return Ok(out);
    }
    let case = if mu == pn {
        Case::Split
    } else if mu == lambda {
        Case::AtLambda
    } else {
        Case::AboveLambda
    };
    let module = env.module().as_ref();
    let f = module.field();
    let dim = module.dim();
    let layer = |filt: &crate::submodule::Filtration, i: u32| {
        filt.bases
            .get(i as usize - 1)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(f, dim))
    };
    let fa = a.filtration();
    let f0 = env.a0(a)?.filtration();
    let threshold = match case {
        Case::Split => pn,
        Case::AtLambda => lambda,
        Case::AboveLambda => mu,
    };
    let constraint: Vec<Subspace> = (1..=pn)
        .map(|i| {
            if i < threshold {
                layer(&f0, i)
            } else {
                layer(&fa, i)
            }
        })
        .collect();
    let a0_lambda = (case == Case::AtLambda).then(|| layer(&f0, lambda));
    let top = m.max_length();
    let kernels = (1..=top.max(1))
        .map(|i| a.ker_s_pow(i - 1).elements())
        .collect();
    let images = (1..=top.max(1))
        .map(|i| {
            a.space()
                .rows()
                .iter()
                .map(|r| module.shift(r, i - 1))
                .collect()
        })
        .collect();
    let mut ctx = Ctx {
        env,
        module,
        a,
        m,
        mu,
        pn,
        case,
        constraint,
        a0_lambda,
        kernels,
        images,
        budget: lift_budget,
        seen: HashSet::new(),
        out,
    };
    let mut layers = Vec::new();
    ctx.walk(pn, Subspace::zero(f, dim), &mut layers)?;
    out = ctx.out;
    out.solutions.sort_by(|x, y| x.space().cmp(y.space()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::environment::{EnvironmentSpec, Mult};
    use crate::oracle::lattice::enum_submodules;
    use crate::prime_power::PrimePower;

    fn ambient_env(p: u32, n: u32, i_kf: Option<u32>, d: &[u32]) -> Environment {
        let spec = EnvironmentSpec {
            pp: PrimePower::new(p, n).unwrap(),
            i_kf,
            d: d.iter().map(|&x| Mult::Finite(x)).collect(),
            char_p: false,
        };
        Environment::build_ambient(&spec).unwrap()
    }

    fn by_lattice(env: &Environment, m: &ModuleShape, mu: u32) -> usize {
        enum_submodules(&env.j())
            .unwrap()
            .into_iter()
            .filter(|u| u.shape() == *m && env.lambda_of(u).unwrap() == mu)
            .count()
    }

    #[test]
    fn index_zero_lines_in_small_ambient() {
        // J = <chi> ⊕ F_2 ⊕ F_2[G], deltas (3, 1), lambda 1
        let env = ambient_env(2, 1, None, &[1, 1]);
        let m = ModuleShape::from_lengths([2]);
        assert_eq!(enum_solutions(&env, &env.j(), &m, 2).unwrap().len(), 4);
        let m1 = ModuleShape::from_lengths([1]);
        assert_eq!(enum_solutions(&env, &env.j(), &m1, 2).unwrap().len(), 3);
        assert_eq!(enum_solutions(&env, &env.j(), &m1, 1).unwrap().len(), 4);
    }

    #[test]
    fn agrees_with_lattice_filter() {
        for (p, n, ikf, d) in [
            (2u32, 1u32, None, vec![1u32, 1]),
            (3, 1, Some(0), vec![1, 1]),
            (3, 1, None, vec![2, 1]),
            (2, 2, Some(0), vec![1, 0, 1]),
            (2, 2, Some(1), vec![0, 1, 0]),
        ] {
            let env = ambient_env(p, n, ikf, &d);
            let pp = env.context();
            for m in crate::shape::shapes_up_to_dim(&pp, env.module().dim() as u32) {
                let mut mus = vec![pp.order()];
                mus.extend(m.lengths().into_iter().filter(|&l| l < pp.order()));
                mus.dedup();
                for mu in mus {
                    let got = enum_solutions_detailed(&env, &env.j(), &m, mu, DEFAULT_LIFT_BUDGET)
                        .unwrap();
                    assert_eq!(got.rejected, 0, "{m} mu={mu}");
                    assert_eq!(
                        got.solutions.len(),
                        by_lattice(&env, &m, mu),
                        "p={p} n={n} d={d:?} M={m} mu={mu}"
                    );
                }
            }
        }
    }
}
