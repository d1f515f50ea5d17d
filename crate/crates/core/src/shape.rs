//! Isomorphism types of finite F_p[G]-modules.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prime_power::PrimePower;

/// Multiset of cyclic summand lengths: `mult[i] = d_i`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModuleShape {
    mult: BTreeMap<u32, u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ShapeStats {
    pub rk: u32,
    pub f_rk: u32,
    pub nf_rk: u32,
    pub dim: u32,
}

impl ModuleShape {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_lengths<I: IntoIterator<Item = u32>>(lengths: I) -> Self {
        let mut s = Self::new();
        for l in lengths {
            s.add(l, 1);
        }
        s
    }

    pub fn from_pairs<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Self {
        let mut s = Self::new();
        for (l, m) in pairs {
            s.add(l, m);
        }
        s
    }

    pub fn add(&mut self, len: u32, mult: u32) {
        assert!(len >= 1, "summand length must be positive");
        if mult > 0 {
            *self.mult.entry(len).or_insert(0) += mult;
        }
    }

    /// Removes one summand of length `len`; false if there is none.
    pub fn remove_one(&mut self, len: u32) -> bool {
        match self.mult.get_mut(&len) {
            Some(m) if *m > 1 => {
                *m -= 1;
                true
            }
            Some(_) => {
                self.mult.remove(&len);
                true
            }
            None => false,
        }
    }

    pub fn mult(&self, len: u32) -> u32 {
        self.mult.get(&len).copied().unwrap_or(0)
    }

    pub fn multiplicities(&self) -> &BTreeMap<u32, u32> {
        &self.mult
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    /// Summand lengths in ascending order, repeated by multiplicity.
    pub fn lengths(&self) -> Vec<u32> {
        self.mult
            .iter()
            .flat_map(|(&l, &m)| std::iter::repeat_n(l, m as usize))
            .collect()
    }

    pub fn contains_length(&self, len: u32) -> bool {
        self.mult(len) > 0
    }

    pub fn max_length(&self) -> u32 {
        self.mult.keys().next_back().copied().unwrap_or(0)
    }

    pub fn validate(&self, pp: &PrimePower) -> Result<()> {
        for &l in self.mult.keys() {
            if l == 0 || l > pp.order() {
                return Err(Error::BadLength {
                    len: l,
                    max: pp.order(),
                });
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> u32 {
        self.mult.values().sum()
    }

    pub fn dim(&self) -> u32 {
        self.mult.iter().map(|(l, m)| l * m).sum()
    }

    pub fn stats(&self, pp: &PrimePower) -> ShapeStats {
        let f_rk = self.mult(pp.order());
        let rk = self.rank();
        ShapeStats {
            rk,
            f_rk,
            nf_rk: rk - f_rk,
            dim: self.dim(),
        }
    }

    /// `Delta(A_{i}) = sum_{j >= i} d_j`.
    pub fn delta(&self, i: u32) -> u32 {
        self.mult.range(i..).map(|(_, m)| m).sum()
    }

    /// `[Delta(A_{1}), ..., Delta(A_{p^n})]`.
    pub fn deltas(&self, pp: &PrimePower) -> Vec<u32> {
        (1..=pp.order()).map(|i| self.delta(i)).collect()
    }

    /// Distinct summand lengths below `p^n`, ascending.
    pub fn distinct_nonfree_lengths(&self, pp: &PrimePower) -> Vec<u32> {
        self.mult
            .keys()
            .copied()
            .filter(|&l| l < pp.order())
            .collect()
    }
}

/// Renders as `1^2,2,4`; the empty shape renders as `0`.
impl fmt::Display for ModuleShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mult.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .mult
            .iter()
            .map(|(l, m)| {
                if *m == 1 {
                    l.to_string()
                } else {
                    format!("{l}^{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Every shape of dimension at most `max_dim` with lengths in `[1, p^n]`.
pub fn shapes_up_to_dim(pp: &PrimePower, max_dim: u32) -> Vec<ModuleShape> {
    fn rec(len: u32, remaining: u32, cur: &mut ModuleShape, out: &mut Vec<ModuleShape>) {
        if len == 0 {
            out.push(cur.clone());
            return;
        }
        let mut m = 0;
        while m * len <= remaining {
            let mut next = cur.clone();
            next.add(len, m);
            rec(len - 1, remaining - m * len, &mut next, out);
            m += 1;
        }
    }
    let mut out = Vec::new();
    rec(
        pp.order().min(max_dim.max(1)),
        max_dim,
        &mut ModuleShape::new(),
        &mut out,
    );
    out.sort_by(|a, b| (a.dim(), a).cmp(&(b.dim(), b)));
    out
}
