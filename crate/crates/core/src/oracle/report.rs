//! Side-by-side comparison of closed-form counts with enumeration.

use serde::Serialize;

use crate::counting::{count_in_ambient, AmbientProfile, Count};
use crate::environment::Environment;
use crate::error::Result;
use crate::oracle::lattice::enum_submodules;
use crate::oracle::solutions::{enum_solutions_detailed, DEFAULT_LIFT_BUDGET};
use crate::prime_power::PrimePower;
use crate::shape::ModuleShape;
use crate::submodule::Submodule;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Match,
    Mismatch,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub case: String,
    pub closed_form: Count,
    pub enumerated: u64,
    /// Count from filtering the full submodule lattice, when requested.
    pub lattice: Option<u64>,
    /// Spans produced by the lift recipe that failed the shape or lambda check.
    pub rejected: u64,
    /// Cyclic generators of the first few solutions, as coordinate vectors.
    pub witnesses: Vec<Vec<Vec<u16>>>,
    pub status: Status,
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub lattice: bool,
    pub witnesses: usize,
    pub lift_budget: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            lattice: false,
            witnesses: 3,
            lift_budget: DEFAULT_LIFT_BUDGET,
        }
    }
}

/// Filtration profile and `lambda` of `A ⊆ J`.
pub fn profile_of(env: &Environment, a: &Submodule) -> Result<AmbientProfile> {
    AmbientProfile::new(&env.context(), a.filtration().deltas, env.lambda_of(a)?)
}

pub fn verify_counts(
    env: &Environment,
    a: &Submodule,
    m: &ModuleShape,
    mu: u32,
) -> Result<VerificationReport> {
    verify_counts_with(env, a, m, mu, VerifyOptions::default(), count_in_ambient)
}

/// [`verify_counts`] against an arbitrary closed form.
pub fn verify_counts_with<F>(
    env: &Environment,
    a: &Submodule,
    m: &ModuleShape,
    mu: u32,
    opts: VerifyOptions,
    closed: F,
) -> Result<VerificationReport>
where
    F: Fn(&AmbientProfile, &ModuleShape, u32, &PrimePower) -> Result<Count>,
{
    let pp = env.context();
    let profile = profile_of(env, a)?;
    let closed_form = closed(&profile, m, mu, &pp)?;
    let found = enum_solutions_detailed(env, a, m, mu, opts.lift_budget)?;
    let enumerated = found.solutions.len() as u64;
    let lattice = if opts.lattice {
        let all = enum_submodules(a)?;
        let mut k = 0u64;
        for u in &all {
            if u.shape() == *m && env.lambda_of(u)? == mu {
                k += 1;
            }
        }
        Some(k)
    } else {
        None
    };
    let mut witnesses = Vec::new();
    for u in found.solutions.iter().take(opts.witnesses) {
        let (_, gens) = u.decompose()?;
        witnesses.push(gens.into_iter().map(|g| g.coords).collect());
    }
    let agree = closed_form == Count::from(enumerated)
        && lattice.is_none_or(|l| l == enumerated)
        && found.rejected == 0;
    Ok(VerificationReport {
        case: format!("{} A={} M={} mu={}", env.spec(), a.shape(), m, mu),
        closed_form,
        enumerated,
        lattice,
        rejected: found.rejected,
        witnesses,
        status: if agree {
            Status::Match
        } else {
            Status::Mismatch
        },
    })
}
