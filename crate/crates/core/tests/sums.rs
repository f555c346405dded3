//! Closed-form character sums against their definitions over small fields.

use cwe_core::charsum::{
    a_sum, a_sum_by_definition, b_sum, b_sum_by_definition, b_sum_closed_form, gamma_trace,
    gauss_ext, gauss_ext_by_definition, gauss_prime, quad_sum, solvable_count,
    solvable_count_by_search, weil_s, weil_s_by_definition,
};
use cwe_core::{CyclotomicInteger, ExtElement, FieldContext, PrimeElement};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn field(p: u32, m: u32) -> FieldContext {
    FieldContext::new(p, 2 * m, None).unwrap()
}

#[test]
fn weil_sums_match_definition_exhaustively() {
    for (p, m, alpha) in [(3, 2, 1), (3, 2, 2), (5, 2, 1)] {
        let ctx = field(p, m);
        for a in ctx.nonzero_elements() {
            for b in ctx.elements() {
                weil_s(&ctx, alpha, a, b)
                    .unwrap_or_else(|e| panic!("({p},{m},{alpha}) a={a:?} b={b:?}: {e}"));
            }
        }
    }
}

#[test]
fn weil_sums_match_definition_sampled_729() {
    let ctx = field(3, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for a in ctx.nonzero_elements() {
        weil_s(&ctx, 1, a, ExtElement::ZERO).unwrap();
    }
    for _ in 0..200 {
        let a = ExtElement::from_index(rng.gen_range(1..729));
        let b = ExtElement::from_index(rng.gen_range(0..729));
        weil_s(&ctx, 1, a, b).unwrap();
    }
}

#[test]
fn unsolvable_twisted_equation_gives_zero() {
    let ctx = field(3, 4);
    let a = ExtElement::ONE;
    let b = ctx
        .nonzero_elements()
        .find(|&b| ctx.twisted_solve(1, a, b).is_empty())
        .expect("an unsolvable right-hand side exists when m/d is even");
    let r = weil_s(&ctx, 1, a, b).unwrap();
    assert_eq!(r.rational, Some(BigInt::from(0)));
    assert_eq!(weil_s_by_definition(&ctx, 1, a, b).unwrap().value, r.value);
}

#[test]
fn a_sum_values_and_decomposition() {
    let expected = [((3, 3, 1), 0, -54), ((3, 3, 1), 1, 27), ((3, 4, 1), 0, -486), ((3, 4, 1), 1, 243)];
    for ((p, m, alpha), a, value) in expected {
        let ctx = field(p, m);
        let r = a_sum(&ctx, alpha, PrimeElement::new(a, p)).unwrap();
        assert_eq!(r.rational, Some(BigInt::from(value)));
    }
    // A(a) = Σ_y ζ^{-ay} S(y, 0), and Σ_a A(a) = 0
    let ctx = field(3, 3);
    let mut total = CyclotomicInteger::zero(3).unwrap();
    for a in 0..3 {
        let a_el = PrimeElement::new(a, 3);
        let mut acc = CyclotomicInteger::zero(3).unwrap();
        for y in 1..3 {
            let s = weil_s(&ctx, 1, ctx.embed(PrimeElement::new(y, 3)), ExtElement::ZERO).unwrap();
            acc = &acc + &(&CyclotomicInteger::root_power(3, -a * y).unwrap() * &s.value);
        }
        let direct = a_sum_by_definition(&ctx, 1, a_el);
        assert_eq!(acc, direct.value);
        total = &total + &direct.value;
    }
    assert!(total.is_zero());
}

#[test]
fn b_sums_exhaustive_small_fields() {
    for (p, m, alpha) in [(3, 2, 1), (3, 2, 2)] {
        let ctx = field(p, m);
        for b in ctx.nonzero_elements() {
            for a in 0..p as i64 {
                for c in 0..p as i64 {
                    b_sum(&ctx, alpha, ctx.prime(a), ctx.prime(c), b).unwrap_or_else(|e| {
                        panic!("({p},{m},{alpha}) a={a} c={c} b={b:?}: {e}")
                    });
                }
            }
        }
    }
}

#[test]
fn b_sum_named_instances() {
    let ctx = field(3, 3);
    let zero = ctx.prime(0);
    let b = ctx
        .nonzero_elements()
        .find(|&b| gamma_trace(&ctx, 1, b) == Some(zero))
        .unwrap();
    let r = b_sum(&ctx, 1, zero, zero, b).unwrap();
    assert_eq!(r.rational, Some(BigInt::from(-108)));

    // Tr(γ^{p^α+1}) = c²/(4a) with a = c = 1: 4T = 1, T = 1 mod 3
    let one = ctx.prime(1);
    let b = ctx
        .nonzero_elements()
        .find(|&b| gamma_trace(&ctx, 1, b) == Some(one))
        .unwrap();
    let r = b_sum(&ctx, 1, one, one, b).unwrap();
    assert_eq!(r.rational, Some(BigInt::from(-27)));

    let ctx = field(3, 4);
    let b = ctx
        .nonzero_elements()
        .find(|&b| gamma_trace(&ctx, 1, b).is_none())
        .unwrap();
    for a in 0..3 {
        for c in 0..3 {
            let r = b_sum_closed_form(&ctx, 1, ctx.prime(a), ctx.prime(c), b).unwrap();
            assert_eq!(r.rational, Some(BigInt::from(0)));
            let d = b_sum_by_definition(&ctx, 1, ctx.prime(a), ctx.prime(c), b).unwrap();
            assert_eq!(d.value, r.value);
        }
    }
}

#[test]
fn b_sum_scaling_symmetry() {
    // B(a, c) at b equals B(a, tc) at t·b (substitute z ↦ t^{-1} z)
    let ctx = field(3, 2);
    for b in ctx.nonzero_elements() {
        for a in 0..3 {
            for c in 0..3 {
                let base = b_sum_by_definition(&ctx, 1, ctx.prime(a), ctx.prime(c), b).unwrap();
                for t in 1..3 {
                    let tb = ctx.scale(ctx.prime(t), b);
                    let scaled =
                        b_sum_by_definition(&ctx, 1, ctx.prime(a), ctx.prime(t * c), tb).unwrap();
                    assert_eq!(base.value, scaled.value);
                }
            }
        }
    }
}

#[test]
fn gauss_identities() {
    for p in [3, 5, 7, 11, 13] {
        let g = gauss_prime(p).unwrap();
        let square = &g.value * &g.value;
        let sign = if p % 4 == 1 { 1 } else { -1 };
        assert_eq!(square.as_i64(), Some(sign * p as i64));
    }
    let p5 = gauss_prime(5).unwrap();
    assert_eq!((&p5.value * &p5.value).as_i64(), Some(5));
    let p7 = gauss_prime(7).unwrap();
    assert_eq!((&p7.value * &p7.value).as_i64(), Some(-7));

    // Oracle signs, read off direct summation.
    for ((p, e), value) in [((3, 4), -9), ((3, 6), 27), ((5, 4), -25)] {
        let ctx = FieldContext::new(p, e, None).unwrap();
        assert_eq!(gauss_ext_by_definition(&ctx).value.as_i64(), Some(value));
        assert_eq!(gauss_ext(&ctx).unwrap().value.as_i64(), Some(value));
    }
}

#[test]
fn quadratic_sums_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for (p, e) in [(3, 2), (3, 4), (5, 2), (7, 2)] {
        let ctx = FieldContext::new(p, e, None).unwrap();
        let q = ctx.q();
        for _ in 0..100 {
            let a2 = ExtElement::from_index(rng.gen_range(1..q));
            let a1 = ExtElement::from_index(rng.gen_range(0..q));
            let a0 = ExtElement::from_index(rng.gen_range(0..q));
            quad_sum(&ctx, a2, a1, a0).unwrap();
        }
    }
    let ctx = FieldContext::new(3, 2, None).unwrap();
    let g = gauss_ext(&ctx).unwrap().value;
    let z = ExtElement::ZERO;
    assert_eq!(quad_sum(&ctx, ExtElement::ONE, z, z).unwrap().value, g);
    let nonsquare = ctx.generator();
    assert_eq!(quad_sum(&ctx, nonsquare, z, z).unwrap().value, -&g);
}

#[test]
fn solvable_counts_match_search() {
    for (p, m, alpha, expected) in [(3, 4, 1, 729), (3, 2, 1, 9), (5, 2, 1, 25)] {
        let ctx = field(p, m);
        assert_eq!(solvable_count(&ctx, alpha).unwrap().count, expected);
        assert_eq!(solvable_count_by_search(&ctx, alpha), expected);
    }
    let ctx = field(3, 3);
    let r = solvable_count(&ctx, 1).unwrap();
    assert!(r.permutation);
    assert_eq!(solvable_count_by_search(&ctx, 1), 729);
}
