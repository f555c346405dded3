//! Closed-form code predictions against exhaustive enumeration.

use std::collections::HashSet;

use cwe_core::arith::primitive_roots;
use cwe_core::codebuild::{
    codeword, defining_set, enumerate_bar_direct, enumerate_cwe, enumerate_plain, lift_bar,
    power_moments_check, set_size_closed, symbol_count, weight_distribution,
    wmin_wmax, CodeSpec, Composition, Enumerator, Variant,
};
use cwe_core::oracle::{
    applicability, predict_cwe, predict_cwe_with_generator, predict_wd, verify, ErratumSource,
};
use cwe_core::FieldContext;
use proptest::prelude::*;

fn grid() -> Vec<CodeSpec> {
    let mut out = Vec::new();
    for (p, m, alpha, a_values) in [
        (3, 2, 2, vec![0, 1, 2]),
        (3, 3, 1, vec![0, 1, 2]),
        (3, 4, 1, vec![0, 1, 2]),
        (5, 2, 1, vec![1, 2, 3, 4]),
        (3, 2, 1, vec![1, 2]),
    ] {
        for a in a_values {
            for v in [Variant::Plain, Variant::Bar] {
                out.push(CodeSpec::new(p, m, alpha, a, v).unwrap());
            }
        }
    }
    out
}

#[test]
fn predictions_match_enumeration_on_grid() {
    let mut fields = std::collections::HashMap::new();
    for spec in grid() {
        let ctx = fields
            .entry((spec.p, spec.e()))
            .or_insert_with(|| spec.field(None).unwrap());
        let cwe = enumerate_cwe(ctx, &spec);
        cwe.check_structure().unwrap();
        let wd = weight_distribution(&cwe).unwrap();
        assert!(power_moments_check(&wd), "{spec:?}");
        let k = match spec.variant {
            Variant::Plain => spec.e(),
            Variant::Bar => spec.e() + 1,
        };
        assert_eq!(wd.k, k, "{spec:?}");
        let sz = set_size_closed(ctx, &spec).unwrap();
        assert_eq!(sz.length, cwe.n as u64);
        if applicability(&spec).case().is_none() {
            continue;
        }
        assert_eq!(predict_wd(&spec).unwrap(), wd, "{spec:?}");
        assert_eq!(predict_cwe(&spec).unwrap(), cwe, "{spec:?}");
    }
}

#[test]
fn lift_matches_direct_bar_enumeration() {
    for (p, m, alpha) in [(3, 2, 1), (3, 2, 2), (3, 3, 1)] {
        let ctx = FieldContext::new(p, 2 * m, None).unwrap();
        for a in 0..p as i64 {
            let set = defining_set(&ctx, alpha, ctx.prime(a));
            let plain = enumerate_plain(&ctx, &set);
            assert_eq!(lift_bar(&plain), enumerate_bar_direct(&ctx, &set));
        }
    }
}

#[test]
fn encoding_is_injective() {
    for (p, m, alpha) in [(3, 2, 1), (3, 2, 2), (3, 3, 1), (5, 2, 1)] {
        let ctx = FieldContext::new(p, 2 * m, None).unwrap();
        for a in 1..p as i64 {
            let set = defining_set(&ctx, alpha, ctx.prime(a));
            let mut words = HashSet::new();
            for x in ctx.elements() {
                let w = codeword(&ctx, &set, x);
                for u in 0..p {
                    let shifted: Vec<u32> = w.iter().map(|s| (s + u) % p).collect();
                    assert!(words.insert(shifted), "({p},{m},{alpha}) a={a}");
                }
            }
        }
    }
}

#[test]
fn symbol_counts_three_ways() {
    for (p, m, alpha) in [(3, 2, 1), (3, 2, 2), (5, 2, 1), (3, 3, 1)] {
        let ctx = FieldContext::new(p, 2 * m, None).unwrap();
        let step = if ctx.q() > 100 { 37 } else { 1 };
        for a in 0..p as i64 {
            let a_el = ctx.prime(a);
            let set = defining_set(&ctx, alpha, a_el);
            let n_a = set.len() as u64 + u64::from(a == 0);
            for b in ctx.nonzero_elements().step_by(step) {
                let mut total = 0;
                let mut counts = Vec::new();
                for c in 0..p as i64 {
                    let k = symbol_count(&ctx, alpha, a_el, b, ctx.prime(c)).unwrap();
                    counts.push(k);
                    total += k;
                }
                assert_eq!(total, n_a);
                // zero symbols of the actual codeword exclude x = 0 when a = 0
                let word = codeword(&ctx, &set, b);
                let zeros = word.iter().filter(|&&s| s == 0).count() as u64;
                assert_eq!(zeros, counts[0] - u64::from(a == 0));
                for c in 1..p {
                    let hits = word.iter().filter(|&&s| s == c).count() as u64;
                    assert_eq!(hits, counts[c as usize]);
                }
            }
        }
    }
}

#[test]
fn generator_choice_does_not_matter() {
    for (p, m, alpha) in [(3, 3, 1), (5, 2, 1), (5, 3, 1), (7, 2, 1), (7, 3, 1)] {
        for a in 1..p as i64 {
            for v in [Variant::Plain, Variant::Bar] {
                let spec = CodeSpec::new(p, m, alpha, a, v).unwrap();
                let reference = predict_cwe(&spec).unwrap();
                for g in primitive_roots(p as u64) {
                    assert_eq!(predict_cwe_with_generator(&spec, g as u32).unwrap(), reference);
                }
            }
        }
    }
}

#[test]
fn table_sanity_without_enumeration() {
    // includes parameters far beyond enumeration reach
    let mut checked = 0;
    for p in [3u32, 5, 7, 11] {
        for m in 2..=6 {
            for alpha in 1..=2 * m {
                for a in 0..2 {
                    for v in [Variant::Plain, Variant::Bar] {
                        let Ok(spec) = CodeSpec::new(p, m, alpha, a, v) else {
                            continue;
                        };
                        if applicability(&spec).case().is_none() || (p as f64).powi(2 * m as i32) > u32::MAX as f64 {
                            continue;
                        }
                        let wd = predict_wd(&spec).unwrap();
                        assert!(power_moments_check(&wd), "{spec:?}");
                        assert!(wd.entries.keys().all(|&w| w <= wd.n));
                        let cwe = predict_cwe(&spec).unwrap();
                        assert_eq!(weight_distribution(&cwe).unwrap(), wd, "{spec:?}");
                        assert_eq!(
                            predict_cwe(&spec.with_variant(Variant::Bar)).unwrap(),
                            lift_bar(&predict_cwe(&spec.with_variant(Variant::Plain)).unwrap())
                        );
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 50);
}

#[test]
fn worked_examples_and_their_errata() {
    let spec = CodeSpec::new(3, 3, 1, 0, Variant::Plain).unwrap();
    let r = verify(&spec, None).unwrap();
    assert_eq!((r.parameters.n, r.parameters.k, r.parameters.min_distance), (224, 6, Some(144)));
    assert_eq!((r.wd_match, r.cwe_match), (Some(true), Some(true)));
    assert!(r.errata.iter().all(|e| e.source == ErratumSource::Derivation));
    assert!(r.errata.iter().any(|e| e.detail.contains("468")));

    let spec = CodeSpec::new(3, 3, 1, 0, Variant::Bar).unwrap();
    let r = verify(&spec, None).unwrap();
    assert_eq!((r.parameters.k, r.parameters.min_distance), (7, Some(143)));
    assert!(r.passed(true));

    let spec = CodeSpec::new(3, 4, 1, 1, Variant::Bar).unwrap();
    let r = verify(&spec, None).unwrap();
    assert_eq!((r.wd_match, r.cwe_match), (Some(true), Some(true)));
    assert_eq!(r.enumerated.total(), 3u64.pow(9));
    let printed: Vec<_> = r
        .errata
        .iter()
        .filter(|e| e.source == ErratumSource::PrintedExample)
        .collect();
    assert_eq!(printed.len(), 1);
    assert!(printed[0].detail.contains("496") && printed[0].detail.contains("476"));
    assert!(r.passed(false));
    assert!(!r.passed(true));

    let spec = CodeSpec::new(3, 4, 1, 0, Variant::Plain).unwrap();
    let r = verify(&spec, None).unwrap();
    assert_eq!((r.parameters.n, r.parameters.k, r.parameters.min_distance), (2024, 8, Some(1296)));
    assert!(r.diffs.is_empty());
}

#[test]
fn ratio_criterion() {
    let ctx = FieldContext::new(3, 6, None).unwrap();
    let spec = CodeSpec::new(3, 3, 1, 0, Variant::Plain).unwrap();
    let r = wmin_wmax(&weight_distribution(&enumerate_cwe(&ctx, &spec)).unwrap()).unwrap();
    assert_eq!((r.w_min, r.w_max, r.passes), (144, 162, true));
    let r = wmin_wmax(&predict_wd(&spec.with_variant(Variant::Bar)).unwrap()).unwrap();
    assert_eq!((r.w_min, r.w_max, r.passes), (143, 224, false));
}

#[test]
fn not_applicable_spec_still_enumerates() {
    // m = d + 1 with a = 0: the map x ↦ codeword has a nontrivial kernel
    let spec = CodeSpec::new(3, 2, 1, 0, Variant::Plain).unwrap();
    let r = verify(&spec, None).unwrap();
    assert!(r.case.case().is_none());
    assert_eq!(r.wd_match, None);
    assert!(r.problems.is_empty());
    assert!(r.parameters.k < 4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shifts_compose(counts in prop::collection::vec(0u32..50, 5), u in 0u32..5, v in 0u32..5) {
        let c = Composition::new(counts);
        prop_assert_eq!(c.shifted(u).shifted(v), c.shifted((u + v) % 5));
        prop_assert_eq!(c.shifted(u).length(), c.length());
    }

    #[test]
    fn partitioned_enumeration_merges(cuts in prop::collection::vec(0u32..81, 0..6), a in 0i64..3) {
        let ctx = FieldContext::new(3, 4, None).unwrap();
        let set = defining_set(&ctx, 1, ctx.prime(a));
        let en = Enumerator::new(&ctx, &set);
        let mut bounds = cuts.clone();
        bounds.push(0);
        bounds.push(81);
        bounds.sort_unstable();
        let mut merged = en.enumerate_range(0..0);
        for w in bounds.windows(2).rev() {
            merged.merge(&en.enumerate_range(w[0]..w[1]));
        }
        prop_assert_eq!(merged, enumerate_plain(&ctx, &set));
    }

    #[test]
    fn log_table_composition_matches_direct(x in 0u32..729, a in 0i64..3) {
        let ctx = FieldContext::new(3, 6, None).unwrap();
        let set = defining_set(&ctx, 1, ctx.prime(a));
        let en = Enumerator::new(&ctx, &set);
        let x = cwe_core::ExtElement::from_index(x);
        let mut counts = vec![0u32; 3];
        for s in codeword(&ctx, &set, x) {
            counts[s as usize] += 1;
        }
        prop_assert_eq!(en.composition(x), Composition::new(counts));
    }
}
