//! Property-based checks: serialization round-trips, algebraic identities
//! of the moment map, and structural consequences the classification theory
//! guarantees for every law.

mod common;

use nilrad::catalog::Catalog;
use nilrad::degeneration::{assess, degeneration_candidates, Assessment};
use nilrad::format::{parse, parse_numeric, serialize, serialize_numeric};
use nilrad::moment::{moment_map, norm_sq};
use nilrad::nice::nice_criterion;
use nilrad::pre_einstein::{graded_slots, pre_einstein, EigenvalueType};
use nilrad::rational::rat;
use nilrad::LieLaw;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand::seq::SliceRandom;

fn arb_law() -> impl Strategy<Value = LieLaw> {
    (3usize..=6, any::<u64>()).prop_map(|(dim, seed)| {
        let mut r = common::rng(seed);
        common::random_skew_law(&mut r, dim)
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 64,
        // Integration tests have no source tree to persist regressions in.
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn serialization_round_trips(law in arb_law()) {
        let text = serialize(&law).unwrap();
        prop_assert_eq!(parse(&text).unwrap(), law);
    }

    #[test]
    fn moment_trace_is_minus_squared_norm(law in arb_law()) {
        let m = moment_map(&law).unwrap();
        prop_assert_eq!(m.trace(), -norm_sq(&law).unwrap());
    }

    #[test]
    fn moment_map_conjugates_under_permutation(law in arb_law(), seed in any::<u64>()) {
        let n = law.dim();
        let mut r = common::rng(seed);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut r);
        let moved = law.permuted(&perm).unwrap();
        let m = moment_map(&law).unwrap();
        let m2 = moment_map(&moved).unwrap();
        for a in 0..n {
            for b in 0..n {
                prop_assert_eq!(&m2[[perm[a], perm[b]]], &m[[a, b]], "entry ({}, {})", a, b);
            }
        }
    }

    #[test]
    fn eigenvalue_type_ignores_content(
        d in prop::collection::vec(1i64..=9, 2..=7),
        c in 1i64..=5,
    ) {
        let base: Vec<BigInt> = d.iter().map(|&x| BigInt::from(x)).collect();
        let scaled: Vec<BigInt> = d.iter().map(|&x| BigInt::from(x * c)).collect();
        let t1 = EigenvalueType::from_diagonal(&base).unwrap();
        let t2 = EigenvalueType::from_diagonal(&scaled).unwrap();
        // A constant diagonal has no minimum (degenerate type); scaling
        // preserves that too.
        prop_assert_eq!(t1.min_value().ok(), t2.min_value().ok());
        prop_assert_eq!(t1, t2);
    }

    // The bundled one-parameter families are curves of nilpotent Lie
    // algebras: the closure identity holds at every parameter value, and
    // the support is always graded by the pre-Einstein eigenvalues.
    #[test]
    fn parameter_curves_stay_lie_algebras(num in -6i64..=6, den in 1i64..=4) {
        let v = rat(num, den);
        for name in ["1.3(i)", "3.1(i)"] {
            let family = Catalog::bundled().find(name).unwrap().law.clone().unwrap();
            let law = family.instantiate(&v);
            prop_assert!(law.require_jacobi().is_ok(), "{} at {}", name, v);
            let pre = pre_einstein(&law).unwrap();
            if !pre.scale.is_zero() {
                if let Ok(slots) = graded_slots(&pre.diag_ints) {
                    for s in law.support() {
                        prop_assert!(slots.contains(&s), "{} at {}: slot {:?}", name, v, s);
                    }
                }
            }
        }
    }
}

fn padded_sum(a: &[usize], b: &[usize]) -> Vec<usize> {
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect()
}

#[test]
fn direct_sum_adds_series_dimensions() {
    let laws = common::catalog_laws();
    for (an, a) in &laws {
        for (bn, b) in &laws {
            let sum = a.direct_sum(b).unwrap();
            assert_eq!(
                sum.descending_central_series().unwrap(),
                padded_sum(
                    &a.descending_central_series().unwrap(),
                    &b.descending_central_series().unwrap(),
                ),
                "central series of {an} + {bn}"
            );
            assert_eq!(
                sum.derived_series().unwrap(),
                padded_sum(&a.derived_series().unwrap(), &b.derived_series().unwrap()),
                "derived series of {an} + {bn}"
            );
        }
    }
}

// A law the convex criterion certifies as an Einstein nilradical has a
// closed orbit, so no diagonal degeneration may change the isomorphism
// invariants.
#[test]
fn einstein_verdicts_forbid_invariant_jumps() {
    let mut certified = 0;
    for (name, law) in common::catalog_laws() {
        if law.is_zero_law() {
            continue;
        }
        let nice = nice_criterion(&law).unwrap();
        if nice.einstein != Some(true) {
            continue;
        }
        certified += 1;
        let pre = pre_einstein(&law).unwrap();
        for cert in degeneration_candidates(&law, &pre.phi).unwrap() {
            assert_eq!(
                assess(&cert),
                Assessment::Indeterminate,
                "{name}: dropping {:?} changed invariants",
                cert.dropped
            );
        }
    }
    assert!(certified >= 3, "expected several convexly certified laws");
}

#[test]
fn parametric_laws_round_trip() {
    for name in ["1.3(i)", "3.1(i)"] {
        let law = Catalog::bundled().find(name).unwrap().law.clone().unwrap();
        let text = serialize(&law).unwrap();
        assert_eq!(parse(&text).unwrap(), law, "{name}");
    }
}

#[test]
fn numeric_serialization_is_stable() {
    let entry = Catalog::bundled().find("1.17").unwrap();
    let fixture = entry.soliton_fixture.as_ref().unwrap();
    let once = serialize_numeric(fixture);
    let reparsed = parse_numeric(&once).unwrap();
    assert_eq!(&reparsed, fixture);
    assert_eq!(serialize_numeric(&reparsed), once);
}
