//! Closed-form solution counts, solvability criteria and realization operators.
//!
//! Notation: `P = p^n`, `DA(i) = Delta(A_{i})`, `DM(i) = Delta(M_{i})`,
//! `m_i = DM(i) - DM(i+1)`, and `A0(i) = Delta(A^0_{i})`, which is
//! `DA(i) - [i = lambda(A)]` for `i < P` and zero at `i = P`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::environment::{EnvironmentSpec, Mult};
use crate::error::{Error, Result};
use crate::extension::CanonicalExtension;
use crate::prime_power::PrimePower;
use crate::shape::ModuleShape;

/// A solution count: an exact integer, or infinitely many.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Count {
    Finite(BigUint),
    Infinite,
}

impl Count {
    pub fn zero() -> Self {
        Count::Finite(BigUint::zero())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Count::Finite(x) if x.is_zero())
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero()
    }

    pub fn finite(&self) -> Option<&BigUint> {
        match self {
            Count::Finite(x) => Some(x),
            Count::Infinite => None,
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.finite().and_then(|x| x.to_u64())
    }
}

impl From<u64> for Count {
    fn from(x: u64) -> Self {
        Count::Finite(BigUint::from(x))
    }
}

impl From<BigUint> for Count {
    fn from(x: BigUint) -> Self {
        Count::Finite(x)
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(x) => write!(f, "{x}"),
            Count::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn big_pow(p: u32, e: u64) -> BigUint {
    BigUint::from(p).pow(e as u32)
}

/// Gaussian binomial at `q = p`; zero when `b < 0` or `b > a`.
pub fn gauss_binom(a: i64, b: i64, p: u32) -> BigUint {
    if b < 0 || b > a {
        return BigUint::zero();
    }
    let mut r = BigUint::one();
    for k in 0..b {
        let num = big_pow(p, (a - k) as u64) - 1u32;
        let den = big_pow(p, (k + 1) as u64) - 1u32;
        r *= num;
        let (q, rem) = r.div_rem(&den);
        assert!(rem.is_zero(), "p-binomial step is not exact");
        r = q;
    }
    r
}

pub fn p_binom(a: i64, b: i64, p: u32) -> Count {
    Count::Finite(gauss_binom(a, b, p))
}

/// Flags `W_1 ⊇ ... ⊇ W_P` with `W_i ⊆ V_i` and `dim W_i = target[i-1]`.
pub fn count_flags(ambient: &[u32], target: &[u32], p: u32) -> Count {
    let len = ambient.len().max(target.len());
    let at = |v: &[u32], i: usize| v.get(i).copied().unwrap_or(0) as i64;
    let mut r = BigUint::one();
    for i in 0..len {
        let (v, d, dn) = (at(ambient, i), at(target, i), at(target, i + 1));
        r *= gauss_binom(v - dn, d - dn, p);
        if r.is_zero() {
            break;
        }
    }
    Count::Finite(r)
}

/// The filtration profile of an ambient module `A ⊆ J`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AmbientProfile {
    /// `deltas[i-1] = Delta(A_{i})` for `i = 1..=P`.
    pub deltas: Vec<u32>,
    pub lambda: u32,
}

impl AmbientProfile {
    pub fn new(pp: &PrimePower, mut deltas: Vec<u32>, lambda: u32) -> Result<Self> {
        let pn = pp.order();
        if deltas.len() > pn as usize {
            return Err(Error::InvalidEnvironment(format!(
                "{} deltas for p^n = {pn}",
                deltas.len()
            )));
        }
        deltas.resize(pn as usize, 0);
        if deltas.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidEnvironment(
                "deltas must weakly decrease".into(),
            ));
        }
        if lambda == 0 || lambda > pn {
            return Err(Error::InvalidLambda {
                lambda,
                reason: format!("outside [1, {pn}]"),
            });
        }
        Ok(AmbientProfile { deltas, lambda })
    }

    /// Profile of `J` read from the environment structure.
    pub fn of_environment(spec: &EnvironmentSpec) -> Result<Self> {
        let pn = spec.pp.order();
        let chi = spec.chi_length();
        let mut deltas = Vec::with_capacity(pn as usize);
        for i in 1..=pn {
            let d = spec.frak_d(i).to_u64().ok_or(Error::InfiniteEnvironment)?;
            deltas.push(d as u32 + (i == chi) as u32);
        }
        Ok(AmbientProfile {
            deltas,
            lambda: spec.lambda_j(),
        })
    }

    fn da(&self, i: u32) -> i64 {
        if i == 0 {
            return 0;
        }
        self.deltas.get(i as usize - 1).copied().unwrap_or(0) as i64
    }

    fn a0(&self, i: u32, pn: u32) -> i64 {
        if i >= pn {
            0
        } else {
            self.da(i) - (i == self.lambda) as i64
        }
    }
}

pub fn validate_mu(pp: &PrimePower, m: &ModuleShape, mu: u32) -> Result<()> {
    if mu == pp.order() || (mu >= 1 && mu < pp.order() && m.contains_length(mu)) {
        Ok(())
    } else {
        Err(Error::InvalidMu { mu })
    }
}

/// Exponent sum `sum_i m_i * sum_{j<i} term(i, j)`.
fn exp_sum(pn: u32, dm: &dyn Fn(u32) -> i64, term: &dyn Fn(u32, u32) -> i64) -> i64 {
    let mut total = 0i64;
    for i in 1..=pn {
        let mi = dm(i) - dm(i + 1);
        if mi == 0 {
            continue;
        }
        let inner: i64 = (1..i).map(|j| term(i, j)).sum();
        total += mi * inner;
    }
    total
}

fn nonneg(e: i64, what: &str) -> Result<u64> {
    u64::try_from(e).map_err(|_| Error::Internal(format!("negative exponent {e} in {what}")))
}

/// Number of `U ⊆ A` with `U ≅ M` and `lambda(U) = mu`.
pub fn count_in_ambient(
    amb: &AmbientProfile,
    m: &ModuleShape,
    mu: u32,
    pp: &PrimePower,
) -> Result<Count> {
    m.validate(pp)?;
    validate_mu(pp, m, mu)?;
    let pn = pp.order();
    let p = pp.p();
    let lam = amb.lambda;
    if mu < lam {
        return Ok(Count::zero());
    }
    let dm = |i: u32| m.delta(i) as i64;
    let mi = |i: u32| dm(i) - dm(i + 1);
    let e3 = exp_sum(pn, &dm, &|_, j| dm(j));

    if mu == pn {
        let mut flags = BigUint::one();
        for i in 1..=pn {
            let top = if i < pn { amb.a0(i, pn) } else { amb.da(pn) };
            flags *= gauss_binom(top - dm(i + 1), mi(i), p);
            if flags.is_zero() {
                return Ok(Count::zero());
            }
        }
        let e1 = exp_sum(pn, &dm, &|i, j| {
            if i == pn {
                amb.da(j)
            } else {
                amb.a0(j, pn)
            }
        });
        let e = nonneg(e1 - e3, "split count")?;
        return Ok(Count::Finite(flags * big_pow(p, e)));
    }

    if mu == lam {
        let hi = gauss_binom(amb.da(lam) - dm(lam + 1), mi(lam), p);
        let lo = gauss_binom(amb.a0(lam, pn) - dm(lam + 1), mi(lam), p);
        let mut flags = hi - lo;
        for i in (1..=pn).filter(|&i| i != lam) {
            if flags.is_zero() {
                break;
            }
            flags *= gauss_binom(amb.da(i) - dm(i + 1), mi(i), p);
        }
        if flags.is_zero() {
            return Ok(Count::zero());
        }
        let e1 = exp_sum(pn, &dm, &|_, j| amb.da(j));
        let e = nonneg(e1 - e3, "lambda count")?;
        return Ok(Count::Finite(flags * big_pow(p, e)));
    }

    // lambda < mu < P
    let mut flags = BigUint::one();
    for i in 1..=pn {
        let top = if i < mu { amb.a0(i, pn) } else { amb.da(i) };
        flags *= gauss_binom(top - dm(i + 1), mi(i), p);
        if flags.is_zero() {
            return Ok(Count::zero());
        }
    }
    let ind = |j: u32| (j == lam) as i64;
    let e1 = exp_sum(pn, &dm, &|i, j| amb.da(j) - ind(j) * (i < mu) as i64);
    let e2 = exp_sum(pn, &dm, &|i, j| amb.da(j) - ind(j) * (i <= mu) as i64);
    let (e1, e2, e3) = (
        nonneg(e1, "mu count")?,
        nonneg(e2, "mu count")?,
        nonneg(e3, "mu count")?,
    );
    let lifts = big_pow(p, e1) - big_pow(p, e2);
    let (q, rem) = (flags * lifts).div_rem(&big_pow(p, e3));
    if !rem.is_zero() {
        return Err(Error::Internal("mu count is not integral".into()));
    }
    Ok(Count::Finite(q))
}

/// The `mu = lambda` count with the subtracted binomial written as
/// `[DA(lambda) - DM(lambda+1) - 1, m_lambda]`, its alternative displayed form.
pub fn count_lambda_case_displayed(
    amb: &AmbientProfile,
    m: &ModuleShape,
    pp: &PrimePower,
) -> Result<Count> {
    let pn = pp.order();
    let p = pp.p();
    let lam = amb.lambda;
    if lam >= pn || !m.contains_length(lam) {
        return Err(Error::InvalidMu { mu: lam });
    }
    let dm = |i: u32| m.delta(i) as i64;
    let mi = |i: u32| dm(i) - dm(i + 1);
    let hi = gauss_binom(amb.da(lam) - dm(lam + 1), mi(lam), p);
    let lo = gauss_binom(amb.da(lam) - dm(lam + 1) - 1, mi(lam), p);
    let mut flags = hi - lo;
    for i in (1..=pn).filter(|&i| i != lam) {
        flags *= gauss_binom(amb.da(i) - dm(i + 1), mi(i), p);
    }
    if flags.is_zero() {
        return Ok(Count::zero());
    }
    let e = exp_sum(pn, &dm, &|_, j| amb.da(j) - dm(j));
    Ok(Count::Finite(
        flags * big_pow(p, nonneg(e, "displayed lambda count")?),
    ))
}

/// Value of the product displayed for split problems over a finite environment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DisplayedValue {
    Integer(BigUint),
    /// `numerator / p^denominator_exp`, produced when an exponent goes negative.
    Fraction {
        numerator: BigUint,
        denominator_exp: u64,
    },
}

impl fmt::Display for DisplayedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DisplayedValue::Integer(x) => write!(f, "{x}"),
            DisplayedValue::Fraction {
                numerator,
                denominator_exp,
            } => write!(f, "{numerator}/p^{denominator_exp}"),
        }
    }
}

/// The split-problem product written in terms of `frak D_i`, evaluated literally:
///
/// ```text
/// prod_i [D_i - DM(i+1) - [i = l(chi)], m_i]_p
///        * p^{m_i * sum_{j<i} (D_j - DM(j) - [j = l(chi)] [i = P])}
/// ```
pub fn displayed_split_count(spec: &EnvironmentSpec, m: &ModuleShape) -> Result<DisplayedValue> {
    let pp = spec.pp;
    m.validate(&pp)?;
    let pn = pp.order();
    let p = pp.p();
    let chi = spec.chi_length();
    let dd = |i: u32| -> Result<i64> {
        Ok(spec.frak_d(i).to_u64().ok_or(Error::InfiniteEnvironment)? as i64)
    };
    let dm = |i: u32| m.delta(i) as i64;
    let mut value = BigUint::one();
    let mut exp = 0i64;
    for i in 1..=pn {
        let mi = dm(i) - dm(i + 1);
        value *= gauss_binom(dd(i)? - dm(i + 1) - (i == chi) as i64, mi, p);
        let mut inner = 0i64;
        for j in 1..i {
            inner += dd(j)? - dm(j) - ((j == chi) && (i == pn)) as i64;
        }
        exp += mi * inner;
    }
    if value.is_zero() || exp >= 0 {
        return Ok(DisplayedValue::Integer(
            value * big_pow(p, exp.max(0) as u64),
        ));
    }
    let den = (-exp) as u64;
    let mut num = value;
    let mut den_left = den;
    let pb = BigUint::from(p);
    while den_left > 0 {
        let (q, r) = num.div_rem(&pb);
        if !r.is_zero() {
            break;
        }
        num = q;
        den_left -= 1;
    }
    if den_left == 0 {
        Ok(DisplayedValue::Integer(num))
    } else {
        Ok(DisplayedValue::Fraction {
            numerator: num,
            denominator_exp: den_left,
        })
    }
}

fn dd_plus(spec: &EnvironmentSpec, i: u32, extra: bool) -> Count {
    match spec.frak_d(i) {
        Count::Finite(x) => Count::Finite(x + extra as u32),
        Count::Infinite => Count::Infinite,
    }
}

fn le(x: u32, bound: &Count) -> bool {
    match bound {
        Count::Finite(b) => BigUint::from(x) <= *b,
        Count::Infinite => true,
    }
}

/// Solvability over the environment: `DM(i) <= D_i + [i = l(chi)][l(chi) = mu]`
/// for every `i`, and `mu >= l(chi)`.
pub fn solvable(spec: &EnvironmentSpec, m: &ModuleShape, mu: u32) -> Result<bool> {
    let pp = spec.pp;
    m.validate(&pp)?;
    validate_mu(&pp, m, mu)?;
    let chi = spec.chi_length();
    if mu < chi {
        return Ok(false);
    }
    for i in 1..=pp.order() {
        if !le(m.delta(i), &dd_plus(spec, i, i == chi && chi == mu)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The coarse criterion that only inspects `D_1` and `D_{p^{k+1}}`.
pub fn solvable_coarse(spec: &EnvironmentSpec, m: &ModuleShape, mu: u32) -> Result<bool> {
    let pp = spec.pp;
    m.validate(&pp)?;
    validate_mu(&pp, m, mu)?;
    let chi = spec.chi_length();
    if !le(
        m.delta(1),
        &dd_plus(spec, 1, spec.i_kf.is_none() && mu == 1),
    ) {
        return Ok(false);
    }
    for k in 0..pp.n() {
        let extra = spec.i_kf == Some(k) && chi == mu;
        if !le(m.delta(pp.pow(k) + 1), &dd_plus(spec, pp.pow(k + 1), extra)) {
            return Ok(false);
        }
    }
    Ok(mu >= chi)
}

/// Solutions over the environment; `Infinite` for solvable problems over an
/// environment with an infinite multiplicity.
pub fn count_in_env(spec: &EnvironmentSpec, m: &ModuleShape, mu: u32) -> Result<Count> {
    if !solvable(spec, m, mu)? {
        return Ok(Count::zero());
    }
    if spec.d.contains(&Mult::Infinite) {
        return Ok(Count::Infinite);
    }
    let amb = AmbientProfile::of_environment(spec)?;
    count_in_ambient(&amb, m, mu, &spec.pp)
}

/// Every length `i` replaced by `p^{ceil(log_p i)}`.
pub fn ceil_shape(s: &ModuleShape, pp: &PrimePower) -> Result<ModuleShape> {
    s.validate(pp)?;
    Ok(ModuleShape::from_pairs(
        s.multiplicities()
            .iter()
            .map(|(&l, &m)| (pp.pow(pp.ceil_log(l)), m)),
    ))
}

/// `p^{floor(log_p(lambda - 1))} + 1`, read as 1 when `lambda = 1`.
pub fn floor_length(lambda: u32, pp: &PrimePower) -> u32 {
    if lambda <= 1 {
        1
    } else {
        pp.pow(pp.floor_log(lambda - 1)) + 1
    }
}

/// One summand of length lambda (a free summand when `lambda = p^n`) drops to
/// `floor_length(lambda)`; the others are rounded up to p-powers.
pub fn floor_shape(s: &ModuleShape, lambda: u32, pp: &PrimePower) -> Result<(ModuleShape, u32)> {
    s.validate(pp)?;
    if lambda == 0 || lambda > pp.order() {
        return Err(Error::InvalidLambda {
            lambda,
            reason: format!("outside [1, {}]", pp.order()),
        });
    }
    let mut rest = s.clone();
    if !rest.remove_one(lambda) {
        let reason = if lambda == pp.order() {
            "the split case needs a free summand".to_string()
        } else {
            "no summand of that length".to_string()
        };
        return Err(Error::InvalidLambda { lambda, reason });
    }
    let target = floor_length(lambda, pp);
    let mut out = ceil_shape(&rest, pp)?;
    out.add(target, 1);
    Ok((out, target))
}

/// The target of the automatic realization attached to `(S, lambda)`.
pub fn auto_realize(s: &ModuleShape, lambda: u32, pp: &PrimePower) -> Result<CanonicalExtension> {
    if lambda == pp.order() {
        return Ok(CanonicalExtension {
            shape: ceil_shape(s, pp)?,
            lambda,
        });
    }
    let (shape, l) = floor_shape(s, lambda, pp)?;
    Ok(CanonicalExtension { shape, lambda: l })
}

/// Whether `S` is one block of length in `{1} ∪ {p^j + 1}` plus p-power blocks.
pub fn is_excluded_form(s: &ModuleShape, pp: &PrimePower) -> bool {
    let special = std::iter::once(1).chain((0..pp.n()).map(|j| pp.pow(j) + 1));
    special.into_iter().any(|len| {
        let mut rest = s.clone();
        rest.remove_one(len) && rest.multiplicities().keys().all(|&l| pp.is_p_power(l))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicityBound {
    pub bound: Count,
    pub excluded_form: bool,
    /// `k <= f-rk(S)`.
    pub within_free_rank: bool,
}

/// Lower bound `p^k` on realization multiplicity unless `S` has the excluded form.
pub fn multiplicity_bound(
    s: &ModuleShape,
    lambda: u32,
    k: u32,
    pp: &PrimePower,
) -> Result<MultiplicityBound> {
    s.validate(pp)?;
    validate_mu(pp, s, lambda).map_err(|_| Error::InvalidLambda {
        lambda,
        reason: "neither p^n nor a summand length".into(),
    })?;
    let st = s.stats(pp);
    if k > st.rk {
        return Err(Error::RankExceeded { k, rank: st.rk });
    }
    let excluded = is_excluded_form(s, pp);
    let bound = if excluded {
        Count::from(1u64)
    } else {
        Count::Finite(big_pow(pp.p(), k as u64))
    };
    Ok(MultiplicityBound {
        bound,
        excluded_form: excluded,
        within_free_rank: k <= st.f_rk,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pp(p: u32, n: u32) -> PrimePower {
        PrimePower::new(p, n).unwrap()
    }

    fn c(x: u64) -> Count {
        Count::from(x)
    }

    #[test]
    fn p_binom_examples() {
        assert_eq!(p_binom(5, -1, 2), c(0));
        assert_eq!(p_binom(7, 0, 3), c(1));
        assert_eq!(p_binom(2, 1, 2), c(3));
        assert_eq!(p_binom(4, 2, 2), c(35));
        assert_eq!(p_binom(-1, 0, 2), c(0));
        assert_eq!(p_binom(3, 4, 5), c(0));
    }

    #[test]
    fn flag_examples() {
        assert_eq!(count_flags(&[2, 1], &[1, 0], 2), c(3));
        assert_eq!(count_flags(&[2, 1], &[1, 1], 2), c(1));
        assert_eq!(count_flags(&[2, 1], &[2, 2], 2), c(0));
    }

    #[test]
    fn ambient_examples() {
        let p21 = pp(2, 1);
        let amb = AmbientProfile::new(&p21, vec![3, 1], 1).unwrap();
        let one = ModuleShape::from_lengths([1]);
        let two = ModuleShape::from_lengths([2]);
        assert_eq!(count_in_ambient(&amb, &one, 2, &p21).unwrap(), c(3));
        assert_eq!(count_in_ambient(&amb, &one, 1, &p21).unwrap(), c(4));
        assert_eq!(count_in_ambient(&amb, &two, 2, &p21).unwrap(), c(4));
        assert_eq!(
            count_in_ambient(&amb, &ModuleShape::new(), 2, &p21).unwrap(),
            c(1)
        );
        assert!(count_in_ambient(&amb, &two, 1, &p21).is_err());
        let amb2 = AmbientProfile::new(&p21, vec![3, 1], 2).unwrap();
        assert_eq!(count_in_ambient(&amb2, &one, 1, &p21).unwrap(), c(0));
    }

    #[test]
    fn lambda_display_agrees() {
        let p = pp(3, 1);
        let amb = AmbientProfile::new(&p, vec![3, 1, 1], 1).unwrap();
        for m in crate::shape::shapes_up_to_dim(&p, 5) {
            if m.contains_length(1) {
                assert_eq!(
                    count_in_ambient(&amb, &m, 1, &p).unwrap(),
                    count_lambda_case_displayed(&amb, &m, &p).unwrap()
                );
            }
        }
    }

    #[test]
    fn solvable_examples() {
        let s = EnvironmentSpec::finite(pp(3, 1), None, &[1, 1]).unwrap();
        assert!(solvable(&s, &ModuleShape::from_pairs([(1, 2)]), 3).unwrap());
        assert!(!solvable(&s, &ModuleShape::from_pairs([(1, 3)]), 3).unwrap());
        let t = EnvironmentSpec::finite(pp(2, 2), Some(0), &[3, 3, 3]).unwrap();
        assert!(!solvable(&t, &ModuleShape::from_lengths([1]), 1).unwrap());
        assert!(!solvable_coarse(&t, &ModuleShape::from_lengths([1]), 1).unwrap());
        let inf =
            EnvironmentSpec::new(pp(3, 1), None, vec![Mult::Infinite, Mult::Finite(1)]).unwrap();
        assert_eq!(
            count_in_env(&inf, &ModuleShape::from_pairs([(1, 2)]), 3).unwrap(),
            Count::Infinite
        );
        assert_eq!(
            count_in_env(&s, &ModuleShape::from_pairs([(1, 3)]), 3).unwrap(),
            c(0)
        );
    }

    #[test]
    fn realization_examples() {
        let p22 = pp(2, 2);
        assert_eq!(
            ceil_shape(&ModuleShape::from_lengths([3]), &p22).unwrap(),
            ModuleShape::from_lengths([4])
        );
        let p32 = pp(3, 2);
        assert_eq!(
            ceil_shape(&ModuleShape::from_lengths([2, 2, 4]), &p32).unwrap(),
            ModuleShape::from_lengths([3, 3, 9])
        );
        let (s, l) = floor_shape(&ModuleShape::from_lengths([3, 2]), 3, &p22).unwrap();
        assert_eq!((s, l), (ModuleShape::from_lengths([3, 2]), 3));
        let (s, l) = floor_shape(&ModuleShape::from_lengths([5]), 5, &p32).unwrap();
        assert_eq!((s, l), (ModuleShape::from_lengths([4]), 4));
        let (_, l) = floor_shape(&ModuleShape::from_lengths([1, 2]), 1, &p22).unwrap();
        assert_eq!(l, 1);
        assert!(floor_shape(&ModuleShape::from_lengths([1]), 4, &p22).is_err());
        assert_eq!(
            auto_realize(&ModuleShape::from_lengths([3]), 3, &p22).unwrap(),
            CanonicalExtension {
                shape: ModuleShape::from_lengths([3]),
                lambda: 3
            }
        );
        assert_eq!(
            auto_realize(&ModuleShape::from_lengths([3]), 4, &p22)
                .unwrap()
                .shape,
            ModuleShape::from_lengths([4])
        );
    }

    #[test]
    fn bound_examples() {
        let p31 = pp(3, 1);
        let b = multiplicity_bound(&ModuleShape::from_pairs([(2, 2)]), 2, 2, &p31).unwrap();
        assert_eq!(b.bound, c(9));
        assert!(!b.within_free_rank);
        let b = multiplicity_bound(&ModuleShape::from_lengths([2, 3, 3]), 3, 2, &p31).unwrap();
        assert_eq!(b.bound, c(1));
        assert!(
            multiplicity_bound(&ModuleShape::from_lengths([3]), 3, 0, &p31)
                .unwrap()
                .bound
                == c(1)
        );
        assert!(multiplicity_bound(&ModuleShape::from_lengths([3]), 3, 2, &p31).is_err());
        assert!(is_excluded_form(&ModuleShape::from_lengths([1, 3]), &p31));
        assert!(!is_excluded_form(&ModuleShape::from_lengths([3]), &p31));
        assert!(!is_excluded_form(&ModuleShape::new(), &p31));
    }

    proptest! {
        #[test]
        fn q_pascal(p in prop::sample::select(vec![2u32, 3, 5]), a in 1i64..14, b in -1i64..15) {
            let lhs = gauss_binom(a, b, p);
            let rhs = gauss_binom(a - 1, b - 1, p) + big_pow(p, b.max(0) as u64) * gauss_binom(a - 1, b, p);
            prop_assert_eq!(lhs, rhs);
            if (0..=a).contains(&b) {
                prop_assert_eq!(gauss_binom(a, b, p), gauss_binom(a, a - b, p));
            }
        }
    }
}
