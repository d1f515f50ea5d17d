//! Synthetic parameterizing module `J = <chi> ⊕ Y_0 ⊕ ... ⊕ Y_n`.
//!
//! `chi` generates a block of length `p^{i(K/F)} + 1` (length 1 when
//! `i(K/F) = -inf`), and `Y_i` is `d_i` blocks of length `p^i`. The index
//! functional `e` reads the coefficient of `chi` itself, so every `Y` element
//! and every `s`-image has trivial index.

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::counting::Count;
use crate::error::{Error, Result};
use crate::extension::CanonicalExtension;
use crate::field::Scalar;
use crate::linalg::Subspace;
use crate::module::{Module, ModuleElement};
use crate::prime_power::PrimePower;
use crate::submodule::Submodule;

/// A multiplicity `d_i`, possibly infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mult {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Mult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mult::Finite(x) => write!(f, "{x}"),
            Mult::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EnvironmentSpec {
    pub pp: PrimePower,
    /// `None` encodes `-inf`.
    pub i_kf: Option<u32>,
    /// `d[i]` for `i = 0..=n`.
    pub d: Vec<Mult>,
    /// Characteristic-p mode: forces `i_kf = -inf` and `d_i = 0` for `i < n`.
    pub char_p: bool,
}

impl EnvironmentSpec {
    pub fn new(pp: PrimePower, i_kf: Option<u32>, d: Vec<Mult>) -> Result<Self> {
        let s = EnvironmentSpec {
            pp,
            i_kf,
            d,
            char_p: false,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn finite(pp: PrimePower, i_kf: Option<u32>, d: &[u32]) -> Result<Self> {
        Self::new(pp, i_kf, d.iter().map(|&x| Mult::Finite(x)).collect())
    }

    /// `J = <chi> ⊕ Y_n` with `chi` of length 1.
    pub fn char_p(pp: PrimePower, free: Mult) -> Result<Self> {
        let mut d = vec![Mult::Finite(0); pp.n() as usize + 1];
        d[pp.n() as usize] = free;
        let s = EnvironmentSpec {
            pp,
            i_kf: None,
            d,
            char_p: true,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if (self.pp.p(), self.pp.n()) == (2, 1) {
            return Err(Error::ExcludedPrimePower);
        }
        self.validate_structure()
    }

    /// Shape checks only; `(p, n) = (2, 1)` passes.
    pub fn validate_structure(&self) -> Result<()> {
        let n = self.pp.n();
        if let Some(k) = self.i_kf {
            if k >= n {
                return Err(Error::InvalidEnvironment(format!(
                    "i_kf = {k} must be below n = {n}"
                )));
            }
        }
        if self.d.len() != n as usize + 1 {
            return Err(Error::InvalidEnvironment(format!(
                "expected {} multiplicities d_0..d_n, got {}",
                n + 1,
                self.d.len()
            )));
        }
        if self.char_p {
            if self.i_kf.is_some() {
                return Err(Error::InvalidEnvironment(
                    "characteristic p requires i_kf = -inf".into(),
                ));
            }
            if self.d[..n as usize].iter().any(|&m| m != Mult::Finite(0)) {
                return Err(Error::InvalidEnvironment(
                    "characteristic p requires d_i = 0 for i < n".into(),
                ));
            }
        }
        Ok(())
    }

    /// `l(chi) = p^{i_kf} + 1`, or 1 when `i_kf = -inf`.
    pub fn chi_length(&self) -> u32 {
        match self.i_kf {
            None => 1,
            Some(k) => self.pp.pow(k) + 1,
        }
    }

    /// `lambda(J) = min(l(chi), p^n)`.
    pub fn lambda_j(&self) -> u32 {
        self.chi_length().min(self.pp.order())
    }

    pub fn is_finite(&self) -> bool {
        self.d.iter().all(|m| matches!(m, Mult::Finite(_)))
    }

    /// `frak D_i = Delta(J_{i}) - [i = l(chi)]`, the number of `Y` blocks of
    /// length at least `i` plus `[i < l(chi)]`.
    pub fn frak_d(&self, i: u32) -> Count {
        assert!(
            i >= 1 && i <= self.pp.order(),
            "frak_d index {i} out of range"
        );
        let mut total: u64 = (i < self.chi_length()) as u64;
        for (k, m) in self.d.iter().enumerate() {
            if self.pp.pow(k as u32) >= i {
                match m {
                    Mult::Finite(x) => total += *x as u64,
                    Mult::Infinite => return Count::Infinite,
                }
            }
        }
        Count::from(total)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value =
            serde_json::from_str(text).map_err(|e| Error::InvalidEnvironment(e.to_string()))?;
        let bad = |what: &str| Error::InvalidEnvironment(what.to_string());
        let p = v
            .get("p")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing integer field p"))?;
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing integer field n"))?;
        let pp = PrimePower::new(p as u32, n as u32)?;
        let i_kf = match v.get("i_kf") {
            None => None,
            Some(Value::String(s)) if s == "-inf" => None,
            Some(Value::Number(x)) => Some(
                x.as_u64()
                    .ok_or_else(|| bad("i_kf must be -inf or a non-negative integer"))?
                    as u32,
            ),
            Some(_) => return Err(bad("i_kf must be \"-inf\" or an integer")),
        };
        let d = v
            .get("d")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing array field d"))?
            .iter()
            .map(|x| match x {
                Value::String(s) if s == "inf" => Ok(Mult::Infinite),
                Value::Number(k) => k
                    .as_u64()
                    .map(|k| Mult::Finite(k as u32))
                    .ok_or_else(|| bad("d entries must be non-negative")),
                _ => Err(bad("d entries must be integers or \"inf\"")),
            })
            .collect::<Result<Vec<_>>>()?;
        let char_p = v.get("char_p").and_then(Value::as_bool).unwrap_or(false);
        let s = EnvironmentSpec {
            pp,
            i_kf,
            d,
            char_p,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        let i_kf = match self.i_kf {
            None => json!("-inf"),
            Some(k) => json!(k),
        };
        let d: Vec<Value> = self
            .d
            .iter()
            .map(|m| match m {
                Mult::Finite(x) => json!(x),
                Mult::Infinite => json!("inf"),
            })
            .collect();
        let mut v = json!({"p": self.pp.p(), "n": self.pp.n(), "i_kf": i_kf, "d": d});
        if self.char_p {
            v["char_p"] = json!(true);
        }
        v.to_string()
    }
}

impl fmt::Display for EnvironmentSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = self.i_kf.map_or("-inf".to_string(), |k| k.to_string());
        let d: Vec<String> = self.d.iter().map(|m| m.to_string()).collect();
        write!(
            f,
            "p={} n={} i_kf={} d=({})",
            self.pp.p(),
            self.pp.n(),
            i,
            d.join(" ")
        )
    }
}

/// A concrete finite `J` with `chi` as block 0.
#[derive(Debug, Clone)]
pub struct Environment {
    spec: EnvironmentSpec,
    module: Arc<Module>,
}

impl Environment {
    pub fn build(spec: &EnvironmentSpec) -> Result<Self> {
        spec.validate()?;
        Self::assemble(spec)
    }

    /// Builds the module for a pure ambient computation, where the field
    /// hypotheses play no role and `(p, n) = (2, 1)` is allowed.
    pub fn build_ambient(spec: &EnvironmentSpec) -> Result<Self> {
        spec.validate_structure()?;
        Self::assemble(spec)
    }

    fn assemble(spec: &EnvironmentSpec) -> Result<Self> {
        let mut lengths = vec![spec.chi_length()];
        for (k, m) in spec.d.iter().enumerate() {
            match m {
                Mult::Finite(x) => {
                    lengths.extend(std::iter::repeat_n(spec.pp.pow(k as u32), *x as usize))
                }
                Mult::Infinite => return Err(Error::InfiniteEnvironment),
            }
        }
        let module = Arc::new(Module::from_block_lengths(spec.pp, lengths)?);
        Ok(Environment {
            spec: spec.clone(),
            module,
        })
    }

    pub fn spec(&self) -> &EnvironmentSpec {
        &self.spec
    }

    pub fn context(&self) -> PrimePower {
        self.spec.pp
    }

    pub fn module(&self) -> &Arc<Module> {
        &self.module
    }

    pub fn j(&self) -> Submodule {
        Submodule::full(self.module.clone())
    }

    pub fn chi(&self) -> ModuleElement {
        self.module.generator(0)
    }

    /// Generators of the `Y` blocks, in block order.
    pub fn y_generators(&self) -> Vec<ModuleElement> {
        (1..self.module.block_count())
            .map(|b| self.module.generator(b))
            .collect()
    }

    /// Raw index functional, defined on all of `J`.
    pub(crate) fn e_raw(&self, v: &[Scalar]) -> Scalar {
        v[0]
    }

    pub fn index_e(&self, alpha: &ModuleElement) -> Result<Scalar> {
        self.module.check(alpha)?;
        let l = self.module.length(alpha);
        if l >= self.spec.pp.order() {
            return Err(Error::UndefinedIndex(l));
        }
        Ok(self.e_raw(&alpha.coords))
    }

    fn check_sub(&self, a: &Submodule) -> Result<()> {
        if **a.ambient() != *self.module {
            return Err(Error::ContextMismatch(
                "submodule of a different module".into(),
            ));
        }
        Ok(())
    }

    /// `lambda(A)`: the first `l < p^n` for which `A ∩ ker s^l` contains an
    /// element with nonzero `chi` coefficient, else `p^n`.
    pub fn lambda_of(&self, a: &Submodule) -> Result<u32> {
        self.check_sub(a)?;
        let pn = self.spec.pp.order();
        let top = (self
            .module
            .block_lengths()
            .iter()
            .copied()
            .max()
            .unwrap_or(1))
        .min(pn - 1);
        for l in 1..=top {
            if a.ker_s_pow(l).rows().iter().any(|r| self.e_raw(r) != 0) {
                return Ok(l);
            }
        }
        Ok(pn)
    }

    /// `A^0 = {alpha in A : l(alpha) < p^n, e(alpha) = 0}` as a submodule.
    pub fn a0(&self, a: &Submodule) -> Result<Submodule> {
        self.check_sub(a)?;
        let pn = self.spec.pp.order();
        let mut keep = self.module.ker_s_pow_mask(pn - 1);
        keep[0] = false;
        let space = a.space().intersect_coords(&keep);
        Ok(Submodule::from_space_unchecked(self.module.clone(), space))
    }

    /// `Delta(A^0_{i})` for `i = 1..=p^n`.
    pub fn a0_dims(&self, a: &Submodule) -> Result<Vec<u32>> {
        let a0 = self.a0(a)?;
        Ok(a0.filtration().deltas)
    }

    pub fn galois_group_of(&self, a: &Submodule) -> Result<CanonicalExtension> {
        Ok(CanonicalExtension {
            shape: a.shape(),
            lambda: self.lambda_of(a)?,
        })
    }

    pub fn frak_d(&self, i: u32) -> Count {
        self.spec.frak_d(i)
    }

    /// Zero subspace of the ambient coordinate space.
    pub fn zero_space(&self) -> Subspace {
        Subspace::zero(self.module.field(), self.module.dim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pp(p: u32, n: u32) -> PrimePower {
        PrimePower::new(p, n).unwrap()
    }

    #[test]
    fn build_examples() {
        let s = EnvironmentSpec::finite(pp(3, 1), None, &[1, 1]).unwrap();
        let e = Environment::build(&s).unwrap();
        assert_eq!(e.module().block_lengths(), &[1, 1, 3]);
        assert_eq!(e.lambda_of(&e.j()).unwrap(), 1);
        let s = EnvironmentSpec::finite(pp(2, 2), Some(0), &[0, 0, 1]).unwrap();
        let e = Environment::build(&s).unwrap();
        assert_eq!(e.module().block_lengths(), &[2, 4]);
        assert_eq!(e.lambda_of(&e.j()).unwrap(), 2);
        assert_eq!(
            EnvironmentSpec::finite(pp(2, 1), None, &[1, 1]).unwrap_err(),
            Error::ExcludedPrimePower
        );
        assert!(EnvironmentSpec::finite(pp(3, 1), Some(1), &[1, 1]).is_err());
    }

    #[test]
    fn index_examples() {
        let s = EnvironmentSpec::finite(pp(3, 1), None, &[1, 1]).unwrap();
        let e = Environment::build(&s).unwrap();
        assert_eq!(e.index_e(&e.chi()).unwrap(), 1);
        let ys = e.y_generators();
        assert_eq!(e.index_e(&ys[0]).unwrap(), 0);
        assert_eq!(e.index_e(&ys[1]), Err(Error::UndefinedIndex(3)));
    }

    #[test]
    fn lambda_and_groups() {
        let s = EnvironmentSpec::finite(pp(3, 1), None, &[1, 1]).unwrap();
        let e = Environment::build(&s).unwrap();
        let m = e.module().clone();
        let ys = e.y_generators();
        let chi = Submodule::span(m.clone(), &[e.chi()]).unwrap();
        assert_eq!(e.lambda_of(&chi).unwrap(), 1);
        let y = Submodule::span(m.clone(), &[ys[1].clone()]).unwrap();
        assert_eq!(e.galois_group_of(&y).unwrap().lambda, 3);
        let mix = Submodule::span(m.clone(), &[m.add(&e.chi(), &ys[0])]).unwrap();
        assert_eq!(e.lambda_of(&mix).unwrap(), 1);
        let both = Submodule::span(m.clone(), &[e.chi(), ys[1].clone()]).unwrap();
        let g = e.galois_group_of(&both).unwrap();
        assert_eq!((g.shape.to_string(), g.lambda), ("1,3".to_string(), 1));
        assert_eq!(e.a0_dims(&e.j()).unwrap(), vec![2, 1, 0]);
    }

    #[test]
    fn frak_d_examples() {
        let s = EnvironmentSpec::finite(pp(3, 1), None, &[1, 1]).unwrap();
        assert_eq!(s.frak_d(1), Count::from(2u64));
        assert_eq!(s.frak_d(2), Count::from(1u64));
        assert_eq!(s.frak_d(3), Count::from(1u64));
        let inf =
            EnvironmentSpec::new(pp(3, 1), None, vec![Mult::Infinite, Mult::Finite(1)]).unwrap();
        assert_eq!(inf.frak_d(1), Count::Infinite);
        assert_eq!(inf.frak_d(2), Count::from(1u64));
    }

    #[test]
    fn json_round_trip() {
        let s = EnvironmentSpec::from_json(r#"{"p":3,"n":1,"i_kf":"-inf","d":[1,1]}"#).unwrap();
        assert_eq!(s, EnvironmentSpec::finite(pp(3, 1), None, &[1, 1]).unwrap());
        assert_eq!(EnvironmentSpec::from_json(&s.to_json()).unwrap(), s);
        let t = EnvironmentSpec::from_json(r#"{"p":2,"n":2,"i_kf":1,"d":["inf",0,2]}"#).unwrap();
        assert_eq!(t.d[0], Mult::Infinite);
        assert_eq!(EnvironmentSpec::from_json(&t.to_json()).unwrap(), t);
        assert!(EnvironmentSpec::from_json(r#"{"p":3,"n":1,"i_kf":"-inf","d":[1]}"#).is_err());
        let c = EnvironmentSpec::char_p(pp(3, 2), Mult::Finite(2)).unwrap();
        assert_eq!(EnvironmentSpec::from_json(&c.to_json()).unwrap(), c);
    }

    fn spec_strategy() -> impl Strategy<Value = EnvironmentSpec> {
        (
            prop::sample::select(vec![(2u32, 2u32), (3, 1), (3, 2), (2, 3)]),
            0u32..3,
            prop::collection::vec(0u32..3, 4),
        )
            .prop_map(|((p, n), i, d)| {
                let i_kf = if i >= n { None } else { Some(i) };
                EnvironmentSpec::finite(pp(p, n), i_kf, &d[..=n as usize]).unwrap()
            })
    }

    proptest! {
        #[test]
        fn structural_invariants(s in spec_strategy()) {
            let pn = s.pp.order();
            let chi_len = s.chi_length();
            // D constant on (p^k, p^{k+1}]
            for k in 0..s.pp.n() {
                let lo = s.pp.pow(k) + 1;
                for i in lo..=s.pp.pow(k + 1) {
                    prop_assert_eq!(s.frak_d(i), s.frak_d(lo));
                }
            }
            let Ok(e) = Environment::build(&s) else { return Ok(()) };
            prop_assert_eq!(e.lambda_of(&e.j()).unwrap(), chi_len.min(pn));
            let f = e.j().filtration();
            for i in 1..=pn {
                let diff = f.delta(i) as u64 - s.frak_d(i).to_u64().unwrap();
                prop_assert_eq!(diff, (i == chi_len) as u64);
            }
        }
    }
}
