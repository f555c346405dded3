//! Exact evaluation of the character sums behind the weight computations.
//!
//! Every sum has two evaluators: `*_by_definition`, a literal summation
//! over the field accumulated as an exponent histogram, and
//! `*_closed_form`, which dispatches on the parity of `m/d`, solvability of
//! the associated linearized equation, and the trace values involved.
//! [`cross_check`] compares the two and fails loudly on any disagreement.
//!
//! Throughout, `q = p^e`, `e = 2m`, `d = gcd(α, e)`, `ζ = ζ_p` and
//! `χ(x) = ζ^{Tr(x)}`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;

use num_bigint::BigInt;

use crate::arith::{ipow, legendre};
use crate::cyclo::CyclotomicInteger;
use crate::error::{Error, Result};
use crate::gfield::{ExtElement, FieldContext, PrimeElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Definition,
    ClosedForm,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Definition => "by-definition",
            Method::ClosedForm => "closed-form",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumReport {
    pub value: CyclotomicInteger,
    /// Present when the value is a rational integer.
    pub rational: Option<BigInt>,
    pub method: Method,
    /// Which branch produced the value.
    pub case_tag: String,
}

impl SumReport {
    fn new(value: CyclotomicInteger, method: Method, case_tag: impl Into<String>) -> Self {
        SumReport {
            rational: value.as_rational_integer(),
            value,
            method,
            case_tag: case_tag.into(),
        }
    }

    fn closed(value: CyclotomicInteger, case_tag: impl Into<String>) -> Self {
        Self::new(value, Method::ClosedForm, case_tag)
    }

    fn definition(value: CyclotomicInteger) -> Self {
        Self::new(value, Method::Definition, "definition")
    }
}

/// Returns `closed` if it equals `definition`, otherwise a
/// [`Error::SumMismatch`].
pub fn cross_check(
    sum: &'static str,
    closed: SumReport,
    definition: &SumReport,
) -> Result<SumReport> {
    if closed.value == definition.value {
        Ok(closed)
    } else {
        Err(Error::SumMismatch {
            sum,
            detail: format!(
                "closed form ({}) = {}, definition = {}",
                closed.case_tag, closed.value, definition.value
            ),
        })
    }
}

/// Parameters shared by the closed forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SumParams {
    pub p: u32,
    pub m: u32,
    pub d: u32,
    pub alpha: u32,
}

impl SumParams {
    /// Requires `e` even and `e/d` even.
    pub fn new(ctx: &FieldContext, alpha: u32) -> Result<Self> {
        let e = ctx.e();
        if e % 2 == 1 {
            return Err(Error::WrongParity("closed forms need an even extension degree"));
        }
        let d = ctx.gcd_alpha(alpha);
        if (e / d) % 2 == 1 {
            return Err(Error::WrongParity("closed forms need e/d even"));
        }
        Ok(SumParams {
            p: ctx.p(),
            m: e / 2,
            d,
            alpha,
        })
    }

    pub fn ratio_even(&self) -> bool {
        (self.m / self.d).is_multiple_of(2)
    }

    /// `p^m` when `m/d` is odd, `p^{m+d}` when even.
    pub fn magnitude(&self) -> i64 {
        if self.ratio_even() {
            ipow(self.p as i64, self.m + self.d)
        } else {
            ipow(self.p as i64, self.m)
        }
    }

    fn parity_tag(&self) -> &'static str {
        if self.ratio_even() {
            "m-d-even"
        } else {
            "m-d-odd"
        }
    }
}

fn int(p: u32, n: i64) -> CyclotomicInteger {
    CyclotomicInteger::from_integer(p, n).expect("p validated by the field context")
}

fn zeta(p: u32, k: i64) -> CyclotomicInteger {
    CyclotomicInteger::root_power(p, k).expect("p validated by the field context")
}

fn from_hist(p: u32, hist: &[i64]) -> CyclotomicInteger {
    CyclotomicInteger::from_exponent_counts(p, hist).expect("histogram has length p")
}

// ---------------------------------------------------------------------------
// Gauss sums

/// `Ḡ = Σ_{x ∈ F_p^*} (x|p) ζ^x`, with the identity
/// `Ḡ² = (-1)^{(p-1)/2} p` checked before returning.
pub fn gauss_prime(p: u32) -> Result<SumReport> {
    let mut hist = vec![0i64; p as usize];
    for x in 1..p {
        hist[x as usize] += legendre(x as i64, p as u64) as i64;
    }
    let g = CyclotomicInteger::from_exponent_counts(p, &hist)?;
    let sign = if ((p - 1) / 2).is_multiple_of(2) { 1 } else { -1 };
    let square = &g * &g;
    if square.as_i64() != Some(sign * p as i64) {
        return Err(Error::SumMismatch {
            sum: "gauss_prime",
            detail: format!("square of {g} is {square}"),
        });
    }
    let tag = if sign == 1 { "p-1-mod-4" } else { "p-3-mod-4" };
    Ok(SumReport::new(g, Method::Definition, tag))
}

/// `G = Σ_{x ∈ F_q^*} η(x) χ(x)` by direct summation.
pub fn gauss_ext_by_definition(ctx: &FieldContext) -> SumReport {
    let p = ctx.p();
    let mut hist = vec![0i64; p as usize];
    for x in ctx.nonzero_elements() {
        hist[ctx.trace(x).value() as usize] += ctx.eta(x) as i64;
    }
    SumReport::definition(from_hist(p, &hist))
}

/// `G = -(-1)^{m(p-1)/2} p^m` for `e = 2m`.
pub fn gauss_ext_closed_form(ctx: &FieldContext) -> Result<SumReport> {
    if ctx.e() % 2 == 1 {
        return Err(Error::WrongParity("closed form needs an even extension degree"));
    }
    let (p, m) = (ctx.p(), ctx.e() / 2);
    let exponent = m as u64 * ((p as u64 - 1) / 2);
    let sign = if exponent.is_multiple_of(2) { -1 } else { 1 };
    let tag = if sign == 1 { "sign-plus" } else { "sign-minus" };
    Ok(SumReport::closed(int(p, sign * ipow(p as i64, m)), tag))
}

pub fn gauss_ext(ctx: &FieldContext) -> Result<SumReport> {
    let def = gauss_ext_by_definition(ctx);
    cross_check("gauss_ext", gauss_ext_closed_form(ctx)?, &def)
}

/// The Gauss sum `G` of `F_q`: closed form for even `e`, direct otherwise.
fn gauss_ext_value(ctx: &FieldContext) -> CyclotomicInteger {
    match gauss_ext_closed_form(ctx) {
        Ok(r) => r.value,
        Err(_) => gauss_ext_by_definition(ctx).value,
    }
}

// ---------------------------------------------------------------------------
// Quadratic polynomial sums

/// `Σ_{x ∈ F_q} χ(a2 x² + a1 x + a0)` by direct summation.
pub fn quad_sum_by_definition(
    ctx: &FieldContext,
    a2: ExtElement,
    a1: ExtElement,
    a0: ExtElement,
) -> Result<SumReport> {
    if a2.is_zero() {
        return Err(Error::ZeroArgument("a2"));
    }
    let mut hist = vec![0i64; ctx.p() as usize];
    for x in ctx.elements() {
        let v = ctx.add(ctx.add(ctx.mul(a2, ctx.mul(x, x)), ctx.mul(a1, x)), a0);
        hist[ctx.trace(v).value() as usize] += 1;
    }
    Ok(SumReport::definition(from_hist(ctx.p(), &hist)))
}

/// `χ(a0 - a1² (4 a2)^{-1}) η(a2) G`.
pub fn quad_sum_closed_form(
    ctx: &FieldContext,
    a2: ExtElement,
    a1: ExtElement,
    a0: ExtElement,
) -> Result<SumReport> {
    let p = ctx.p();
    let four_a2 = ctx.scale(PrimeElement::new(4, p), a2);
    let shift = ctx.mul(ctx.mul(a1, a1), ctx.inv(four_a2).map_err(|_| Error::ZeroArgument("a2"))?);
    let arg = ctx.sub(a0, shift);
    let eta = ctx.eta(a2) as i64;
    let value = &zeta(p, ctx.trace(arg).value() as i64) * &gauss_ext_value(ctx).scale(&eta.into());
    let tag = if eta == 1 { "a2-square" } else { "a2-nonsquare" };
    Ok(SumReport::closed(value, tag))
}

pub fn quad_sum(
    ctx: &FieldContext,
    a2: ExtElement,
    a1: ExtElement,
    a0: ExtElement,
) -> Result<SumReport> {
    let def = quad_sum_by_definition(ctx, a2, a1, a0)?;
    cross_check("quad_sum", quad_sum_closed_form(ctx, a2, a1, a0)?, &def)
}

// ---------------------------------------------------------------------------
// S(a, b) = Σ_x χ(a x^{p^α+1} + b x)

pub fn weil_s_by_definition(
    ctx: &FieldContext,
    alpha: u32,
    a: ExtElement,
    b: ExtElement,
) -> Result<SumReport> {
    if a.is_zero() {
        return Err(Error::ZeroArgument("a"));
    }
    let mut hist = vec![0i64; ctx.p() as usize];
    for x in ctx.elements() {
        let v = ctx.add(ctx.mul(a, ctx.power_map(alpha, x)), ctx.mul(b, x));
        hist[ctx.trace(v).value() as usize] += 1;
    }
    Ok(SumReport::definition(from_hist(ctx.p(), &hist)))
}

/// `S(a, 0)` from the power criterion on `a^{(q-1)/(p^d+1)}`:
/// `(-1)^{m/d} p^m` when it differs from `(-1)^{m/d}`, otherwise
/// `-(-1)^{m/d} p^{m+d}`. Also returns whether the twisted map
/// `a^{p^α} X^{p^{2α}} + a X` is a permutation.
fn weil_s_zero(ctx: &FieldContext, params: &SumParams, a: ExtElement) -> (i64, bool) {
    let p = params.p as i64;
    let sign: i64 = if params.ratio_even() { 1 } else { -1 };
    let exponent = (ctx.q() as u64 - 1) / (ipow(p, params.d) as u64 + 1);
    let t = ctx.pow(a, exponent);
    let target = ctx.embed(PrimeElement::new(sign, params.p));
    if t == target {
        (-sign * ipow(p, params.m + params.d), false)
    } else {
        (sign * ipow(p, params.m), true)
    }
}

pub fn weil_s_closed_form(
    ctx: &FieldContext,
    alpha: u32,
    a: ExtElement,
    b: ExtElement,
) -> Result<SumReport> {
    if a.is_zero() {
        return Err(Error::ZeroArgument("a"));
    }
    let params = SumParams::new(ctx, alpha)?;
    let p = params.p;
    let (base, permutation) = weil_s_zero(ctx, &params, a);
    let kind = if permutation { "permutation" } else { "non-permutation" };
    if b.is_zero() {
        return Ok(SumReport::closed(int(p, base), format!("b-zero/{kind}")));
    }
    let sol = ctx.twisted_solve(alpha, a, b);
    if sol.kernel_basis.is_empty() != permutation {
        return Err(Error::Inconsistent(
            "power criterion and kernel of the twisted map disagree".to_string(),
        ));
    }
    let Some(x0) = sol.particular else {
        return Ok(SumReport::closed(int(p, 0), format!("b-nonzero/{kind}/unsolvable")));
    };
    // S(a, b) = S(a, 0) · conj χ(a x0^{p^α+1})
    let t = ctx.trace(ctx.mul(a, ctx.power_map(alpha, x0))).value() as i64;
    let value = int(p, base).checked_mul(&zeta(p, -t))?;
    Ok(SumReport::closed(value, format!("b-nonzero/{kind}/solvable")))
}

pub fn weil_s(ctx: &FieldContext, alpha: u32, a: ExtElement, b: ExtElement) -> Result<SumReport> {
    let def = weil_s_by_definition(ctx, alpha, a, b)?;
    cross_check("weil_s", weil_s_closed_form(ctx, alpha, a, b)?, &def)
}

// ---------------------------------------------------------------------------
// A(a) = Σ_{y ∈ F_p^*} ζ^{-a y} Σ_x ζ^{y Tr(x^{p^α+1})}

pub fn a_sum_by_definition(ctx: &FieldContext, alpha: u32, a: PrimeElement) -> SumReport {
    let p = ctx.p();
    let mut trace_hist = vec![0i64; p as usize];
    for x in ctx.elements() {
        trace_hist[ctx.trace(ctx.power_map(alpha, x)).value() as usize] += 1;
    }
    let mut hist = vec![0i64; p as usize];
    for y in 1..p as u64 {
        for (t, &count) in trace_hist.iter().enumerate() {
            let k = (y * t as u64 + (p as u64 - a.value() as u64) * y) % p as u64;
            hist[k as usize] += count;
        }
    }
    SumReport::definition(from_hist(p, &hist))
}

pub fn a_sum_closed_form(ctx: &FieldContext, alpha: u32, a: PrimeElement) -> Result<SumReport> {
    let params = SumParams::new(ctx, alpha)?;
    let mag = params.magnitude();
    let (value, branch) = if a.is_zero() {
        (-(params.p as i64 - 1) * mag, "a-zero")
    } else {
        (mag, "a-nonzero")
    };
    Ok(SumReport::closed(
        int(params.p, value),
        format!("{branch}/{}", params.parity_tag()),
    ))
}

pub fn a_sum(ctx: &FieldContext, alpha: u32, a: PrimeElement) -> Result<SumReport> {
    let def = a_sum_by_definition(ctx, alpha, a);
    cross_check("a_sum", a_sum_closed_form(ctx, alpha, a)?, &def)
}

// ---------------------------------------------------------------------------
// B(a, c) = Σ_{y,z ∈ F_p^*} ζ^{-a y - c z} Σ_x χ(y x^{p^α+1} + b z x)

pub fn b_sum_by_definition(
    ctx: &FieldContext,
    alpha: u32,
    a: PrimeElement,
    c: PrimeElement,
    b: ExtElement,
) -> Result<SumReport> {
    if b.is_zero() {
        return Err(Error::ZeroArgument("b"));
    }
    let p = ctx.p() as u64;
    let mut hist = vec![0i64; p as usize];
    for y in 1..p {
        let ye = ctx.embed(PrimeElement::new(y as i64, p as u32));
        for z in 1..p {
            let bz = ctx.scale(PrimeElement::new(z as i64, p as u32), b);
            let offset = (2 * p * p - a.value() as u64 * y - c.value() as u64 * z) % p;
            for x in ctx.elements() {
                let v = ctx.add(ctx.mul(ye, ctx.power_map(alpha, x)), ctx.mul(bz, x));
                let k = (ctx.trace(v).value() as u64 + offset) % p;
                hist[k as usize] += 1;
            }
        }
    }
    Ok(SumReport::definition(from_hist(p as u32, &hist)))
}

/// The value `Tr(γ^{p^α+1})` for a solution `γ` of `X^{p^{2α}} + X = -b^{p^α}`,
/// or `None` when the equation has no solution.
pub fn gamma_trace(ctx: &FieldContext, alpha: u32, b: ExtElement) -> Option<PrimeElement> {
    let sol = ctx.linearized_solve(alpha, b);
    sol.particular
        .map(|gamma| ctx.trace(ctx.power_map(alpha, gamma)))
}

/// Piecewise closed form in terms of `T = Tr(γ^{p^α+1})`; with
/// `P = p^m` (m/d odd) or `p^{m+d}` (m/d even):
///
/// | case          | `T = 0`      | `T ≠ 0`                                   |
/// |---------------|--------------|-------------------------------------------|
/// | `a = c = 0`   | `-P(p-1)²`   | `P(p-1)`                                   |
/// | `a = 0, c ≠ 0`| `(p-1)P`     | `-P`                                       |
/// | `a ≠ 0, c = 0`| `(p-1)P`     | `-pP (-aT | p) - P`                        |
/// | `ac ≠ 0`      | `-P`         | `-P` if `4aT = c²`, else `-pP (c²-4aT | p) - P` |
///
/// When `m/d` is even and the equation is unsolvable the sum vanishes.
pub fn b_sum_closed_form(
    ctx: &FieldContext,
    alpha: u32,
    a: PrimeElement,
    c: PrimeElement,
    b: ExtElement,
) -> Result<SumReport> {
    if b.is_zero() {
        return Err(Error::ZeroArgument("b"));
    }
    let params = SumParams::new(ctx, alpha)?;
    let parity = params.parity_tag();
    let p = params.p as i64;
    let big_p = params.magnitude();
    let Some(t) = gamma_trace(ctx, alpha, b) else {
        if !params.ratio_even() {
            return Err(Error::Inconsistent(
                "linearized map must be a permutation when m/d is odd".to_string(),
            ));
        }
        return Ok(SumReport::closed(int(params.p, 0), format!("{parity}/unsolvable")));
    };
    let (a, c, t) = (a.value() as i64, c.value() as i64, t.value() as i64);
    let pu = params.p as u64;
    let (value, branch) = match (a == 0, c == 0, t == 0) {
        (true, true, true) => (-big_p * (p - 1) * (p - 1), "a-zero/c-zero/t-zero"),
        (true, true, false) => (big_p * (p - 1), "a-zero/c-zero/t-nonzero"),
        (true, false, true) => ((p - 1) * big_p, "a-zero/c-nonzero/t-zero"),
        (true, false, false) => (-big_p, "a-zero/c-nonzero/t-nonzero"),
        (false, true, true) => ((p - 1) * big_p, "a-nonzero/c-zero/t-zero"),
        (false, true, false) => (
            -p * big_p * legendre(-a * t, pu) as i64 - big_p,
            "a-nonzero/c-zero/t-nonzero",
        ),
        (false, false, true) => (-big_p, "a-nonzero/c-nonzero/t-zero"),
        (false, false, false) => {
            let disc = (c * c - 4 * a * t).rem_euclid(p);
            if disc == 0 {
                (-big_p, "a-nonzero/c-nonzero/t-critical")
            } else {
                (
                    -p * big_p * legendre(disc, pu) as i64 - big_p,
                    "a-nonzero/c-nonzero/t-generic",
                )
            }
        }
    };
    Ok(SumReport::closed(int(params.p, value), format!("{parity}/{branch}")))
}

/// Second closed-form route: `Σ_{y,z} ζ^{-ay-cz} S(y, bz)` with each
/// `S(y, bz)` from [`weil_s_closed_form`], solving the twisted equation
/// directly instead of rescaling a single `γ`.
pub fn b_sum_via_weil(
    ctx: &FieldContext,
    alpha: u32,
    a: PrimeElement,
    c: PrimeElement,
    b: ExtElement,
) -> Result<SumReport> {
    if b.is_zero() {
        return Err(Error::ZeroArgument("b"));
    }
    let p = ctx.p();
    let mut acc = CyclotomicInteger::zero(p)?;
    for y in 1..p as i64 {
        for z in 1..p as i64 {
            let ye = ctx.embed(PrimeElement::new(y, p));
            let bz = ctx.scale(PrimeElement::new(z, p), b);
            let s = weil_s_closed_form(ctx, alpha, ye, bz)?;
            let phase = zeta(p, -(a.value() as i64) * y - c.value() as i64 * z);
            acc = &acc + &(&phase * &s.value);
        }
    }
    Ok(SumReport::closed(acc, "weil-sum-route"))
}

/// Evaluates both closed-form routes and the definition; all three must
/// agree.
pub fn b_sum(
    ctx: &FieldContext,
    alpha: u32,
    a: PrimeElement,
    c: PrimeElement,
    b: ExtElement,
) -> Result<SumReport> {
    let def = b_sum_by_definition(ctx, alpha, a, c, b)?;
    cross_check("b_sum/weil-route", b_sum_via_weil(ctx, alpha, a, c, b)?, &def)?;
    cross_check("b_sum", b_sum_closed_form(ctx, alpha, a, c, b)?, &def)
}

// ---------------------------------------------------------------------------

/// Size of `{b ∈ F_q : X^{p^{2α}} + X = -b^{p^α} is solvable}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolvableCount {
    pub count: u64,
    /// `true` when the linearized map is a permutation (m/d odd), in which
    /// case every `b` is solvable.
    pub permutation: bool,
}

/// Counts solvable right-hand sides from the rank of the linearized map;
/// `b ↦ -b^{p^α}` is a bijection, so the count is the image size. For
/// `m/d` even the result is checked against `p^{e-2d}`.
pub fn solvable_count(ctx: &FieldContext, alpha: u32) -> Result<SolvableCount> {
    let params = SumParams::new(ctx, alpha)?;
    let map = ctx.linearized_map(alpha);
    let count = map.image_size();
    if !params.ratio_even() {
        if count != ctx.q() as u64 {
            return Err(Error::Inconsistent("m/d odd but map is not onto".to_string()));
        }
        return Ok(SolvableCount {
            count,
            permutation: true,
        });
    }
    let expected = (params.p as u64).pow(ctx.e() - 2 * params.d);
    if count != expected {
        return Err(Error::SumMismatch {
            sum: "solvable_count",
            detail: format!("rank gives {count}, expected p^(e-2d) = {expected}"),
        });
    }
    Ok(SolvableCount {
        count,
        permutation: false,
    })
}

/// Brute-force counterpart of [`solvable_count`].
pub fn solvable_count_by_search(ctx: &FieldContext, alpha: u32) -> u64 {
    let mut hit = vec![false; ctx.q() as usize];
    for x in ctx.elements() {
        hit[ctx.add(ctx.frobenius(x, 2 * alpha), x).index() as usize] = true;
    }
    ctx.elements()
        .filter(|&b| hit[ctx.neg(ctx.frobenius(b, alpha)).index() as usize])
        .count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_prime_small() {
        let g3 = gauss_prime(3).unwrap();
        // ζ - ζ² = 1 + 2ζ
        let raw = [BigInt::from(1), BigInt::from(2), BigInt::from(0)];
        assert_eq!(g3.value, CyclotomicInteger::canonicalize(3, &raw).unwrap());
        for p in [5u32, 7, 11, 13] {
            assert!(gauss_prime(p).is_ok());
        }
    }

    #[test]
    fn a_sum_values() {
        let ctx = FieldContext::new(3, 6, None).unwrap();
        let r = a_sum(&ctx, 1, PrimeElement::new(0, 3)).unwrap();
        assert_eq!(r.value.as_i64(), Some(-54));
        assert_eq!(r.case_tag, "a-zero/m-d-odd");
        assert_eq!(a_sum(&ctx, 1, PrimeElement::new(1, 3)).unwrap().value.as_i64(), Some(27));
    }

    #[test]
    fn weil_s_zero_values() {
        let ctx = FieldContext::new(3, 6, None).unwrap();
        let r = weil_s(&ctx, 1, ExtElement::ONE, ExtElement::ZERO).unwrap();
        assert_eq!(r.rational, Some(BigInt::from(-27)));
        let ctx = FieldContext::new(3, 8, None).unwrap();
        let r = weil_s(&ctx, 1, ExtElement::ONE, ExtElement::ZERO).unwrap();
        assert_eq!(r.rational, Some(BigInt::from(-243)));
    }

    #[test]
    fn zero_arguments_rejected() {
        let ctx = FieldContext::new(3, 4, None).unwrap();
        assert!(weil_s(&ctx, 1, ExtElement::ZERO, ExtElement::ONE).is_err());
        assert!(b_sum(&ctx, 1, ctx.prime(0), ctx.prime(0), ExtElement::ZERO).is_err());
        assert!(quad_sum(&ctx, ExtElement::ZERO, ExtElement::ONE, ExtElement::ONE).is_err());
    }

    #[test]
    fn solvable_counts() {
        let ctx = FieldContext::new(3, 8, None).unwrap();
        assert_eq!(solvable_count(&ctx, 1).unwrap().count, 729);
        let ctx = FieldContext::new(3, 4, None).unwrap();
        assert_eq!(solvable_count(&ctx, 1).unwrap().count, 9);
        let ctx = FieldContext::new(3, 6, None).unwrap();
        let r = solvable_count(&ctx, 1).unwrap();
        assert_eq!((r.count, r.permutation), (729, true));
    }
}
