//! Defining sets, the two trace codes built on them, and their complete
//! weight enumerators by exhaustive enumeration.
//!
//! For `D_a = {x ∈ F_q^* : Tr(x^{p^α+1}) = a}` listed in field enumeration
//! order as `d_1, …, d_n`, the plain code is `{(Tr(x d_i))_i : x ∈ F_q}` and
//! the bar code adds the constant word `(u, …, u)` for each `u ∈ F_p`.
//!
//! Code length is always `|D_a|`. Symbol counts `N_b(a, c)` range over all of
//! `F_q` and therefore include `x = 0` when `a = c = 0`; the number of zero
//! coordinates of the codeword for `b` is `N_b(a, 0) - [a = 0]`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::arith::{gcd, ipow, legendre};
use crate::charsum::{a_sum_closed_form, b_sum_closed_form, gamma_trace, SumParams};
use crate::error::{Error, Result};
use crate::gfield::{ExtElement, FieldContext, PrimeElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variant {
    Plain,
    Bar,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Plain => "plain",
            Variant::Bar => "bar",
        }
    }
}

/// Selects one code: `(p, m, α, a, variant)` with `e = 2m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CodeSpec {
    pub p: u32,
    pub m: u32,
    pub alpha: u32,
    pub a: PrimeElement,
    pub variant: Variant,
}

impl CodeSpec {
    /// Requires `p` an odd prime, `m >= 2` and `e/d` even.
    pub fn new(p: u32, m: u32, alpha: u32, a: i64, variant: Variant) -> Result<Self> {
        if !crate::arith::is_odd_prime(p as u64) {
            return Err(Error::InvalidPrime(p as u64));
        }
        if m < 2 {
            return Err(Error::InvalidCodeSpec(format!("m = {m}, need m >= 2")));
        }
        let spec = CodeSpec {
            p,
            m,
            alpha,
            a: PrimeElement::new(a, p),
            variant,
        };
        if (spec.e() / spec.d()) % 2 == 1 {
            return Err(Error::InvalidCodeSpec(format!(
                "e/d = {}/{} is odd",
                spec.e(),
                spec.d()
            )));
        }
        Ok(spec)
    }

    pub fn e(&self) -> u32 {
        2 * self.m
    }

    /// `gcd(α, e)`.
    pub fn d(&self) -> u32 {
        gcd(self.alpha as u64, self.e() as u64) as u32
    }

    pub fn ratio_even(&self) -> bool {
        (self.m / self.d()).is_multiple_of(2)
    }

    pub fn with_variant(self, variant: Variant) -> Self {
        CodeSpec { variant, ..self }
    }

    pub fn with_a(self, a: i64) -> Self {
        CodeSpec {
            a: PrimeElement::new(a, self.p),
            ..self
        }
    }

    pub fn field(&self, modulus: Option<&[u32]>) -> Result<FieldContext> {
        FieldContext::new(self.p, self.e(), modulus)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefiningSet {
    pub elements: Vec<ExtElement>,
    pub a: PrimeElement,
}

impl DefiningSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Count vector `(t_0, …, t_{p-1})` of one codeword.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(counts: Vec<u32>) -> Self {
        Composition(counts)
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn length(&self) -> u64 {
        self.0.iter().map(|&t| t as u64).sum()
    }

    /// Hamming weight `n - t_0`.
    pub fn weight(&self) -> u32 {
        (self.length() - self.0[0] as u64) as u32
    }

    /// Composition of the codeword after adding `u` to every coordinate:
    /// the new count of symbol `i` is the old count of `i - u`.
    pub fn shifted(&self, u: u32) -> Self {
        let p = self.0.len();
        let u = u as usize % p;
        Composition((0..p).map(|i| self.0[(i + p - u) % p]).collect())
    }
}

/// Association composition → multiplicity over the code's domain
/// (`x ∈ F_q`, or `(x, u)` for the bar code).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteWeightEnumerator {
    pub p: u32,
    pub n: u32,
    /// `e` (plain) or `e + 1` (bar): the domain is `F_p^{domain_dim}`.
    pub domain_dim: u32,
    pub terms: BTreeMap<Composition, u64>,
}

impl CompleteWeightEnumerator {
    pub fn empty(p: u32, n: u32, domain_dim: u32) -> Self {
        CompleteWeightEnumerator {
            p,
            n,
            domain_dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, composition: Composition, count: u64) {
        if count > 0 {
            *self.terms.entry(composition).or_insert(0) += count;
        }
    }

    /// Merges a partial enumeration; associative and commutative.
    pub fn merge(&mut self, other: &CompleteWeightEnumerator) {
        for (c, &k) in &other.terms {
            self.add_term(c.clone(), k);
        }
    }

    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn zero_composition(&self) -> Composition {
        let mut v = vec![0; self.p as usize];
        v[0] = self.n;
        Composition(v)
    }

    /// Dimension `k`, read from the multiplicity `p^{domain_dim - k}` of the
    /// all-zero word. `None` if that multiplicity is not a power of `p`.
    pub fn dimension(&self) -> Option<u32> {
        let mut z = *self.terms.get(&self.zero_composition())?;
        let mut kernel_dim = 0;
        while z > 1 {
            if z % self.p as u64 != 0 {
                return None;
            }
            z /= self.p as u64;
            kernel_dim += 1;
        }
        self.domain_dim.checked_sub(kernel_dim)
    }

    /// Structural checks: totals equal `p^{domain_dim}` and every
    /// composition has length `n` and `p` entries.
    pub fn check_structure(&self) -> Result<()> {
        let expected = (self.p as u64).pow(self.domain_dim);
        if self.total() != expected {
            return Err(Error::Inconsistent(format!(
                "enumerator total {} != p^{} = {expected}",
                self.total(),
                self.domain_dim
            )));
        }
        for c in self.terms.keys() {
            if c.counts().len() != self.p as usize || c.length() != self.n as u64 {
                return Err(Error::Inconsistent(format!(
                    "composition {:?} does not have length n = {}",
                    c.counts(),
                    self.n
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    pub p: u32,
    pub n: u32,
    pub k: u32,
    pub entries: BTreeMap<u32, u64>,
}

impl WeightDistribution {
    pub fn min_distance(&self) -> Option<u32> {
        self.entries.keys().copied().find(|&w| w > 0)
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.entries.keys().copied().rfind(|&w| w > 0)
    }
}

/// `D_a` in field enumeration order.
pub fn defining_set(ctx: &FieldContext, alpha: u32, a: PrimeElement) -> DefiningSet {
    let elements = ctx
        .nonzero_elements()
        .filter(|&x| ctx.trace(ctx.power_map(alpha, x)) == a)
        .collect();
    DefiningSet { elements, a }
}

/// `n_a = p^{e-1} + A(a)/p` and the resulting code length.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SetSize {
    /// `|D_a ∪ {0}|` for `a = 0`, `|D_a|` otherwise.
    pub n_a: u64,
    pub length: u64,
}

pub fn set_size_closed(ctx: &FieldContext, spec: &CodeSpec) -> Result<SetSize> {
    let a_val = a_sum_closed_form(ctx, spec.alpha, spec.a)?
        .value
        .as_i64()
        .ok_or_else(|| Error::Inconsistent("A(a) is not rational".to_string()))?;
    let p = spec.p as i64;
    let n_a = ipow(p, spec.e() - 1) + a_val / p;
    let length = n_a - if spec.a.is_zero() { 1 } else { 0 };
    Ok(SetSize {
        n_a: n_a as u64,
        length: length as u64,
    })
}

// ---------------------------------------------------------------------------
// N_b(a, c) = |{x ∈ F_q : Tr(x^{p^α+1}) = a, Tr(bx) = c}|

pub fn symbol_count_direct(
    ctx: &FieldContext,
    alpha: u32,
    a: PrimeElement,
    b: ExtElement,
    c: PrimeElement,
) -> u64 {
    ctx.elements()
        .filter(|&x| ctx.trace(ctx.power_map(alpha, x)) == a && ctx.trace(ctx.mul(b, x)) == c)
        .count() as u64
}

/// `p^{e-2} + p^{-2} A(a) + p^{-2} B(a, c)` from the closed-form sums.
pub fn symbol_count_from_sums(
    ctx: &FieldContext,
    alpha: u32,
    a: PrimeElement,
    b: ExtElement,
    c: PrimeElement,
) -> Result<i64> {
    let rational = |r: crate::charsum::SumReport| {
        r.value
            .as_i64()
            .ok_or_else(|| Error::Inconsistent("sum is not rational".to_string()))
    };
    let a_val = rational(a_sum_closed_form(ctx, alpha, a)?)?;
    let b_val = rational(b_sum_closed_form(ctx, alpha, a, c, b)?)?;
    let p2 = (ctx.p() as i64).pow(2);
    let num = ipow(ctx.p() as i64, ctx.e()) + a_val + b_val;
    if num % p2 != 0 {
        return Err(Error::Inconsistent(format!("{num} not divisible by p^2")));
    }
    Ok(num / p2)
}

/// Fully resolved piecewise values, dispatching on `a = 0`, `c = 0`, the
/// parity of `m/d`, solvability, and `T = Tr(γ^{p^α+1})`.
pub fn symbol_count_piecewise(
    ctx: &FieldContext,
    alpha: u32,
    a: PrimeElement,
    b: ExtElement,
    c: PrimeElement,
) -> Result<i64> {
    if b.is_zero() {
        return Err(Error::ZeroArgument("b"));
    }
    let params = SumParams::new(ctx, alpha)?;
    let p = params.p as i64;
    let base = ipow(p, ctx.e() - 2);
    let Some(t) = gamma_trace(ctx, alpha, b) else {
        // only reachable with m/d even
        let shift = ipow(p, params.m + params.d - 2);
        return Ok(if a.is_zero() {
            base - (p - 1) * shift
        } else {
            base + shift
        });
    };
    let step = if params.ratio_even() {
        ipow(p, params.m + params.d - 1)
    } else {
        ipow(p, params.m - 1)
    };
    let (a, c, t) = (a.value() as i64, c.value() as i64, t.value() as i64);
    let pu = params.p as u64;
    Ok(match (a == 0, c == 0) {
        (true, true) if t == 0 => base - (p - 1) * step,
        (true, true) => base,
        (true, false) if t == 0 => base,
        (true, false) => base - step,
        (false, true) if t == 0 => base + step,
        (false, true) => base - step * legendre(-a * t, pu) as i64,
        (false, false) => {
            let disc = (c * c - 4 * a * t).rem_euclid(p);
            if t == 0 || disc == 0 {
                base
            } else {
                base - step * legendre(disc, pu) as i64
            }
        }
    })
}

/// `N_b(a, c)` by direct count, checked against both closed-form routes.
pub fn symbol_count(
    ctx: &FieldContext,
    alpha: u32,
    a: PrimeElement,
    b: ExtElement,
    c: PrimeElement,
) -> Result<u64> {
    if b.is_zero() {
        return Err(Error::ZeroArgument("b"));
    }
    let direct = symbol_count_direct(ctx, alpha, a, b, c);
    let from_sums = symbol_count_from_sums(ctx, alpha, a, b, c)?;
    let piecewise = symbol_count_piecewise(ctx, alpha, a, b, c)?;
    if from_sums != direct as i64 || piecewise != direct as i64 {
        return Err(Error::SumMismatch {
            sum: "symbol_count",
            detail: format!("direct {direct}, via sums {from_sums}, piecewise {piecewise}"),
        });
    }
    Ok(direct)
}

// ---------------------------------------------------------------------------
// Enumeration

/// `Tr(x d)` for every `d` in the defining set.
pub fn codeword(ctx: &FieldContext, set: &DefiningSet, x: ExtElement) -> Vec<u32> {
    set.elements
        .iter()
        .map(|&d| ctx.trace(ctx.mul(x, d)).value())
        .collect()
}

/// Precomputed data for enumerating codewords: discrete logs of the
/// defining set and the trace of every power of the generator.
pub struct Enumerator<'a> {
    ctx: &'a FieldContext,
    set_logs: Vec<u32>,
    trace_of_power: Vec<u32>,
}

impl<'a> Enumerator<'a> {
    pub fn new(ctx: &'a FieldContext, set: &DefiningSet) -> Self {
        let set_logs = set
            .elements
            .iter()
            .map(|&d| ctx.log(d).expect("defining set excludes zero"))
            .collect();
        let g = ctx.generator();
        let trace_of_power = (0..ctx.q() as u64 - 1)
            .map(|k| ctx.trace(ctx.pow(g, k)).value())
            .collect();
        Enumerator {
            ctx,
            set_logs,
            trace_of_power,
        }
    }

    pub fn len(&self) -> usize {
        self.set_logs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set_logs.is_empty()
    }

    pub fn composition(&self, x: ExtElement) -> Composition {
        let p = self.ctx.p() as usize;
        let mut counts = vec![0u32; p];
        match self.ctx.log(x) {
            None => counts[0] = self.set_logs.len() as u32,
            Some(lx) => {
                let order = self.ctx.q() - 1;
                for &ld in &self.set_logs {
                    let mut k = lx + ld;
                    if k >= order {
                        k -= order;
                    }
                    counts[self.trace_of_power[k as usize] as usize] += 1;
                }
            }
        }
        Composition(counts)
    }

    /// Partial plain enumerator over field indices in `range`.
    pub fn enumerate_range(&self, range: Range<u32>) -> CompleteWeightEnumerator {
        let mut cwe =
            CompleteWeightEnumerator::empty(self.ctx.p(), self.set_logs.len() as u32, self.ctx.e());
        for idx in range {
            cwe.add_term(self.composition(ExtElement::from_index(idx)), 1);
        }
        cwe
    }
}

/// Plain enumerator over all of `F_q`.
pub fn enumerate_plain(ctx: &FieldContext, set: &DefiningSet) -> CompleteWeightEnumerator {
    Enumerator::new(ctx, set).enumerate_range(0..ctx.q())
}

/// Enumerator of the requested variant; the bar code is obtained by
/// [`lift_bar`].
pub fn enumerate_cwe(ctx: &FieldContext, spec: &CodeSpec) -> CompleteWeightEnumerator {
    let set = defining_set(ctx, spec.alpha, spec.a);
    let plain = enumerate_plain(ctx, &set);
    match spec.variant {
        Variant::Plain => plain,
        Variant::Bar => lift_bar(&plain),
    }
}

/// Bar enumerator by iterating `(x, u)` directly.
pub fn enumerate_bar_direct(ctx: &FieldContext, set: &DefiningSet) -> CompleteWeightEnumerator {
    let en = Enumerator::new(ctx, set);
    let mut cwe = CompleteWeightEnumerator::empty(ctx.p(), set.len() as u32, ctx.e() + 1);
    for x in ctx.elements() {
        let base = codeword(ctx, set, x);
        debug_assert_eq!(Composition::counts(&en.composition(x)).len(), ctx.p() as usize);
        for u in 0..ctx.p() {
            let mut counts = vec![0u32; ctx.p() as usize];
            for &s in &base {
                counts[((s + u) % ctx.p()) as usize] += 1;
            }
            cwe.add_term(Composition(counts), 1);
        }
    }
    cwe
}

/// Plain → bar: each term spawns its `p` cyclic index shifts with the same
/// multiplicity.
pub fn lift_bar(cwe: &CompleteWeightEnumerator) -> CompleteWeightEnumerator {
    let mut out = CompleteWeightEnumerator::empty(cwe.p, cwe.n, cwe.domain_dim + 1);
    for (c, &k) in &cwe.terms {
        for u in 0..cwe.p {
            out.add_term(c.shifted(u), k);
        }
    }
    out
}

/// Weights `n - t_0`, with multiplicities divided by the kernel size so each
/// codeword is counted once.
pub fn weight_distribution(cwe: &CompleteWeightEnumerator) -> Result<WeightDistribution> {
    let k = cwe
        .dimension()
        .ok_or_else(|| Error::Inconsistent("zero-word multiplicity is not a power of p".into()))?;
    let kernel = (cwe.p as u64).pow(cwe.domain_dim - k);
    let mut entries = BTreeMap::new();
    for (c, &count) in &cwe.terms {
        *entries.entry(c.weight()).or_insert(0u64) += count;
    }
    for v in entries.values_mut() {
        *v /= kernel;
    }
    Ok(WeightDistribution {
        p: cwe.p,
        n: cwe.n,
        k,
        entries,
    })
}

/// First two Pless power moments: `Σ_{w>0} A_w = p^k - 1` and
/// `Σ w A_w = p^{k-1} (p-1) n`. The second needs every coordinate to be
/// nonconstant-zero, which holds for trace codes of sets avoiding `0`.
pub fn power_moments_check(wd: &WeightDistribution) -> bool {
    let p = wd.p as u128;
    let pk = p.pow(wd.k);
    let count: u128 = wd
        .entries
        .iter()
        .filter(|(&w, _)| w > 0)
        .map(|(_, &c)| c as u128)
        .sum();
    let first: u128 = wd.entries.iter().map(|(&w, &c)| w as u128 * c as u128).sum();
    if wd.k == 0 {
        return count == 0 && first == 0;
    }
    count == pk - 1 && first == pk / p * (p - 1) * wd.n as u128
}

/// Outcome of the `w_min / w_max > (p-1)/p` test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RatioTest {
    pub w_min: u32,
    pub w_max: u32,
    pub passes: bool,
}

pub fn wmin_wmax(wd: &WeightDistribution) -> Result<RatioTest> {
    let w_min = wd.min_distance().ok_or(Error::NoNonzeroWeight)?;
    let w_max = wd.max_weight().ok_or(Error::NoNonzeroWeight)?;
    let p = wd.p as u64;
    Ok(RatioTest {
        w_min,
        w_max,
        passes: w_min as u64 * p > w_max as u64 * (p - 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(p: u32, m: u32, alpha: u32, a: i64) -> CodeSpec {
        CodeSpec::new(p, m, alpha, a, Variant::Plain).unwrap()
    }

    #[test]
    fn defining_set_sizes() {
        let s = spec(3, 3, 1, 0);
        let ctx = s.field(None).unwrap();
        assert_eq!(defining_set(&ctx, 1, ctx.prime(0)).len(), 224);
        assert_eq!(defining_set(&ctx, 1, ctx.prime(1)).len(), 252);
        let ctx = FieldContext::new(3, 8, None).unwrap();
        assert_eq!(defining_set(&ctx, 1, ctx.prime(0)).len(), 2024);
    }

    #[test]
    fn set_sizes_closed_form() {
        let s = spec(3, 3, 1, 0);
        let ctx = s.field(None).unwrap();
        let sz = set_size_closed(&ctx, &s).unwrap();
        assert_eq!((sz.n_a, sz.length), (225, 224));
        let s = spec(3, 4, 1, 1);
        let ctx = s.field(None).unwrap();
        assert_eq!(set_size_closed(&ctx, &s).unwrap().length, 2268);
        let s = s.with_a(0);
        assert_eq!(set_size_closed(&ctx, &s).unwrap().n_a, 2025);
    }

    #[test]
    fn spec_validation() {
        assert!(CodeSpec::new(3, 1, 1, 0, Variant::Plain).is_err());
        assert!(CodeSpec::new(9, 2, 1, 0, Variant::Plain).is_err());
        // α = 2, m = 3: d = 2, e/d = 3 odd
        assert!(CodeSpec::new(3, 3, 2, 0, Variant::Plain).is_err());
        assert!(CodeSpec::new(3, 2, 0, 0, Variant::Plain).is_err());
        assert_eq!(CodeSpec::new(3, 2, 2, 4, Variant::Plain).unwrap().a.value(), 1);
    }

    #[test]
    fn shifts() {
        let c = Composition::new(vec![62, 81, 80]);
        assert_eq!(c.shifted(0), c);
        assert_eq!(c.shifted(1).counts(), &[80, 62, 81]);
        assert_eq!(c.shifted(1).shifted(2), c);
        assert_eq!(c.weight(), 161);
    }

    #[test]
    fn lift_of_zero_word() {
        let mut cwe = CompleteWeightEnumerator::empty(3, 5, 2);
        cwe.add_term(Composition::new(vec![5, 0, 0]), 9);
        let bar = lift_bar(&cwe);
        assert_eq!(bar.terms.len(), 3);
        assert_eq!(bar.terms[&Composition::new(vec![0, 5, 0])], 9);
        assert_eq!(bar.domain_dim, 3);
    }

    #[test]
    fn degenerate_empty_code() {
        let mut cwe = CompleteWeightEnumerator::empty(3, 0, 2);
        cwe.add_term(Composition::new(vec![0, 0, 0]), 9);
        let wd = weight_distribution(&cwe).unwrap();
        assert_eq!(wd.k, 0);
        assert_eq!(wd.entries.into_iter().collect::<Vec<_>>(), [(0, 1)]);
    }

    #[test]
    fn ratio_test_toy() {
        let wd = WeightDistribution {
            p: 3,
            n: 3,
            k: 1,
            entries: [(0, 1), (1, 1), (3, 1)].into_iter().collect(),
        };
        let r = wmin_wmax(&wd).unwrap();
        assert_eq!((r.w_min, r.w_max, r.passes), (1, 3, false));
        let zero = WeightDistribution {
            p: 3,
            n: 3,
            k: 0,
            entries: [(0, 1)].into_iter().collect(),
        };
        assert_eq!(wmin_wmax(&zero), Err(Error::NoNonzeroWeight));
    }

    #[test]
    fn power_moments_on_published_distribution() {
        let wd = WeightDistribution {
            p: 3,
            n: 224,
            k: 6,
            entries: [(0, 1), (144, 504), (162, 224)].into_iter().collect(),
        };
        assert!(power_moments_check(&wd));
        let mut broken = wd.clone();
        broken.entries.insert(144, 503);
        assert!(!power_moments_check(&broken));
    }
}
