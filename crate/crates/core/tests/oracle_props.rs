//! Closed-form counts against enumeration inside random sub-ambients `A ⊆ J`.

use std::collections::HashSet;

use embedcount::counting::count_in_ambient;
use embedcount::oracle::desk::{desk_environments, desk_targets};
use embedcount::oracle::report::{verify_counts_with, Status, VerifyOptions};
use embedcount::oracle::solutions::enum_solutions;
use embedcount::{Environment, ModuleElement, PrimePower, Submodule};
use proptest::prelude::*;

const CONTEXTS: [(u32, u32); 4] = [(2, 1), (2, 2), (3, 1), (3, 2)];

fn sub_ambient(env: &Environment, raw: &[Vec<u16>]) -> Submodule {
    let m = env.module();
    let p = m.field().p() as u16;
    let gens: Vec<ModuleElement> = raw
        .iter()
        .map(|v| ModuleElement::new((0..m.dim()).map(|i| v[i % v.len()] % p).collect()))
        .collect();
    Submodule::span(m.clone(), &gens).unwrap()
}

fn case() -> impl Strategy<Value = (usize, usize, Vec<Vec<u16>>)> {
    (
        0..CONTEXTS.len(),
        any::<prop::sample::Index>(),
        prop::collection::vec(prop::collection::vec(0u16..3, 1..9), 1..4),
    )
        .prop_map(|(c, i, raw)| {
            let (p, n) = CONTEXTS[c];
            let specs = desk_environments(PrimePower::new(p, n).unwrap(), 5);
            (c, i.index(specs.len()), raw)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closed_form_matches_lattice_and_lift_enumeration((c, i, raw) in case()) {
        let (p, n) = CONTEXTS[c];
        let pp = PrimePower::new(p, n).unwrap();
        let spec = &desk_environments(pp, 5)[i];
        let env = Environment::build_ambient(spec).unwrap();
        let a = sub_ambient(&env, &raw);
        let opts = VerifyOptions { lattice: true, witnesses: 0, ..VerifyOptions::default() };
        for (m, mu) in desk_targets(&pp, a.dim() as u32) {
            let r = verify_counts_with(&env, &a, &m, mu, opts, count_in_ambient).unwrap();
            prop_assert_eq!(r.status, Status::Match, "{} A={} M={} mu={}", spec, a.shape(), m, mu);
            prop_assert_eq!(r.lattice, Some(r.enumerated));
        }
    }

    #[test]
    fn solutions_are_distinct_submodules_of_the_right_type((c, i, raw) in case()) {
        let (p, n) = CONTEXTS[c];
        let pp = PrimePower::new(p, n).unwrap();
        let spec = &desk_environments(pp, 5)[i];
        let env = Environment::build_ambient(spec).unwrap();
        let a = sub_ambient(&env, &raw);
        for (m, mu) in desk_targets(&pp, a.dim() as u32) {
            let sols = enum_solutions(&env, &a, &m, mu).unwrap();
            let mut seen = HashSet::new();
            for u in &sols {
                prop_assert!(u.is_submodule_of(&a));
                prop_assert_eq!(u.shape(), m.clone());
                prop_assert_eq!(env.lambda_of(u).unwrap(), mu);
                prop_assert!(seen.insert(u.clone()), "duplicate solution for M={} mu={}", m, mu);
            }
        }
    }
}
