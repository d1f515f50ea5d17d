//! The desk matrix: small environments crossed with small targets.

use crate::counting::count_in_ambient;
use crate::counting::validate_mu;
use crate::environment::{Environment, EnvironmentSpec, Mult};
use crate::error::Result;
use crate::oracle::report::{verify_counts_with, Status, VerificationReport, VerifyOptions};
use crate::prime_power::PrimePower;
use crate::shape::{shapes_up_to_dim, ModuleShape};

/// All `d = (d_0, ..., d_n)` with `l(chi) + sum d_i p^i <= max_dim`, for every `i_kf`.
///
/// For `(p, n) = (2, 1)` the specs are returned anyway; build them with
/// [`Environment::build_ambient`].
pub fn desk_environments(pp: PrimePower, max_dim: u32) -> Vec<EnvironmentSpec> {
    let n = pp.n();
    let mut out = Vec::new();
    let ikfs = std::iter::once(None).chain((0..n).map(Some));
    for i_kf in ikfs {
        let probe = EnvironmentSpec {
            pp,
            i_kf,
            d: vec![Mult::Finite(0); n as usize + 1],
            char_p: false,
        };
        let chi = probe.chi_length();
        if chi > max_dim {
            continue;
        }
        let mut d = vec![0u32; n as usize + 1];
        fill(&pp, 0, max_dim - chi, &mut d, &mut |d| {
            out.push(EnvironmentSpec {
                pp,
                i_kf,
                d: d.iter().map(|&x| Mult::Finite(x)).collect(),
                char_p: false,
            });
        });
    }
    out
}

fn fill(pp: &PrimePower, k: usize, room: u32, d: &mut Vec<u32>, emit: &mut dyn FnMut(&[u32])) {
    if k == d.len() {
        emit(d);
        return;
    }
    let len = pp.pow(k as u32);
    let mut x = 0;
    while x * len <= room {
        d[k] = x;
        fill(pp, k + 1, room - x * len, d, emit);
        x += 1;
    }
    d[k] = 0;
}

/// Every `(M, mu)` with `dim M <= max_dim` and `mu` valid for `M`.
pub fn desk_targets(pp: &PrimePower, max_dim: u32) -> Vec<(ModuleShape, u32)> {
    let mut out = Vec::new();
    for m in shapes_up_to_dim(pp, max_dim) {
        let mut mus: Vec<u32> = m
            .lengths()
            .into_iter()
            .filter(|&l| l < pp.order())
            .collect();
        mus.dedup();
        mus.push(pp.order());
        for mu in mus {
            debug_assert!(validate_mu(pp, &m, mu).is_ok());
            out.push((m.clone(), mu));
        }
    }
    out
}

pub fn build_desk_environment(spec: &EnvironmentSpec) -> Result<Environment> {
    Environment::build_ambient(spec)
}

/// Which part of the desk matrix to run.
#[derive(Debug, Clone)]
pub struct DeskConfig {
    /// `(p, n, max dim J)`
    pub contexts: Vec<(u32, u32, u32)>,
    pub max_target_dim: u32,
    pub options: VerifyOptions,
}

impl DeskConfig {
    /// The matrix run by the acceptance suite.
    pub fn standard() -> Self {
        DeskConfig {
            contexts: vec![(2, 1, 8), (2, 2, 8), (3, 1, 7), (3, 2, 7)],
            max_target_dim: 6,
            options: VerifyOptions {
                lattice: false,
                witnesses: 0,
                lift_budget: 20_000_000,
            },
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct DeskSummary {
    pub cases: u64,
    pub mismatches: u64,
}

/// Runs every case and hands each report to `visit`.
pub fn run_desk<V>(config: &DeskConfig, mut visit: V) -> Result<DeskSummary>
where
    V: FnMut(&EnvironmentSpec, &ModuleShape, u32, &VerificationReport),
{
    let mut summary = DeskSummary::default();
    for &(p, n, max_dim) in &config.contexts {
        let pp = PrimePower::new(p, n)?;
        for spec in desk_environments(pp, max_dim) {
            let env = build_desk_environment(&spec)?;
            let j = env.j();
            let cap = config.max_target_dim.min(env.module().dim() as u32);
            for (m, mu) in desk_targets(&pp, cap) {
                let r = verify_counts_with(&env, &j, &m, mu, config.options, count_in_ambient)?;
                summary.cases += 1;
                if r.status == Status::Mismatch {
                    summary.mismatches += 1;
                }
                visit(&spec, &m, mu, &r);
            }
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn environment_census() {
        let pp = PrimePower::new(3, 1).unwrap();
        // i_kf = -inf: chi of length 1, d_0 + 3 d_1 <= 2 -> 3 choices;
        // i_kf = 0: chi of length 2, d_0 + 3 d_1 <= 1 -> 2 choices
        assert_eq!(desk_environments(pp, 3).len(), 5);
        assert!(desk_environments(pp, 3)
            .iter()
            .all(|s| build_desk_environment(s).unwrap().module().dim() <= 3));
    }

    #[test]
    fn targets_have_valid_mu() {
        let pp = PrimePower::new(2, 2).unwrap();
        for (m, mu) in desk_targets(&pp, 4) {
            assert!(validate_mu(&pp, &m, mu).is_ok());
        }
    }

    #[test]
    fn tiny_desk_runs_clean() {
        let cfg = DeskConfig {
            contexts: vec![(2, 1, 4), (3, 1, 3)],
            max_target_dim: 3,
            options: VerifyOptions::default(),
        };
        let s = run_desk(&cfg, |_, _, _, r| {
            assert_eq!(r.status, Status::Match, "{}", r.case)
        })
        .unwrap();
        assert!(s.cases > 0);
        assert_eq!(s.mismatches, 0);
    }
}
