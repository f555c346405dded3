//! Closed-form predictions of weight distributions and complete weight
//! enumerators, and the verifier that diffs them against enumeration.

mod printed;
mod verify;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::arith::{is_prime, legendre, pow_mod, primitive_root};
use crate::codebuild::{CodeSpec, CompleteWeightEnumerator, Composition, Variant, WeightDistribution};
use crate::error::{Error, Result};

pub use printed::{printed_example, PrintedExample, PrintedTerm};
pub use verify::{verify, verify_with, Diff, DiffKind, Erratum, ErratumSource, Parameters, VerifyReport};

/// Which closed form covers a spec: `a = 0` or not, crossed with the parity
/// of `m/d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseFamily {
    ZeroOdd,
    NonzeroOdd,
    ZeroEven,
    NonzeroEven,
}

impl CaseFamily {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseFamily::ZeroOdd => "a-zero/m-d-odd",
            CaseFamily::NonzeroOdd => "a-nonzero/m-d-odd",
            CaseFamily::ZeroEven => "a-zero/m-d-even",
            CaseFamily::NonzeroEven => "a-nonzero/m-d-even",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CaseTag {
    pub family: CaseFamily,
    pub variant: Variant,
}

impl core::fmt::Display for CaseTag {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}/{}", self.family.as_str(), self.variant.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Applicability {
    Applicable(CaseTag),
    NotApplicable(String),
}

impl Applicability {
    pub fn case(&self) -> Option<CaseTag> {
        match self {
            Applicability::Applicable(c) => Some(*c),
            Applicability::NotApplicable(_) => None,
        }
    }
}

pub fn applicability(spec: &CodeSpec) -> Applicability {
    let (m, d) = (spec.m, spec.d());
    let family = match (spec.a.is_zero(), spec.ratio_even()) {
        (true, false) => CaseFamily::ZeroOdd,
        (false, false) => CaseFamily::NonzeroOdd,
        (true, true) => CaseFamily::ZeroEven,
        (false, true) => CaseFamily::NonzeroEven,
    };
    if m < 2 {
        return Applicability::NotApplicable(format!("m >= 2 fails (m = {m})"));
    }
    if family == CaseFamily::ZeroEven && m <= d + 1 {
        return Applicability::NotApplicable(format!("m > d+1 fails (m = {m}, d = {d})"));
    }
    Applicability::Applicable(CaseTag {
        family,
        variant: spec.variant,
    })
}

fn require_case(spec: &CodeSpec) -> Result<CaseTag> {
    match applicability(spec) {
        Applicability::Applicable(c) => {
            // weights are u32; n < p^e
            if crate::arith::checked_pow(spec.p as u64, spec.e()).is_none_or(|q| q > u32::MAX as u64) {
                return Err(Error::InvalidCodeSpec(format!(
                    "p^e = {}^{} exceeds the supported range",
                    spec.p,
                    spec.e()
                )));
            }
            Ok(c)
        }
        Applicability::NotApplicable(reason) => Err(Error::NotApplicable(reason)),
    }
}

/// Instantiation helper: powers of `p` as `i128`.
#[derive(Clone, Copy)]
struct Sizes {
    p: i128,
    m: u32,
    d: u32,
    e: u32,
}

impl Sizes {
    fn of(spec: &CodeSpec) -> Self {
        Sizes {
            p: spec.p as i128,
            m: spec.m,
            d: spec.d(),
            e: spec.e(),
        }
    }

    fn pw(&self, k: u32) -> i128 {
        self.p.pow(k)
    }

    fn base(&self) -> i128 {
        self.pw(self.e - 2)
    }

    /// Code length for the family.
    fn length(&self, family: CaseFamily) -> i128 {
        let (p, e, m, d) = (self.p, self.e, self.m, self.d);
        match family {
            CaseFamily::ZeroOdd => self.pw(e - 1) - (p - 1) * self.pw(m - 1) - 1,
            CaseFamily::NonzeroOdd => self.pw(e - 1) + self.pw(m - 1),
            CaseFamily::ZeroEven => self.pw(e - 1) - (p - 1) * self.pw(m + d - 1) - 1,
            CaseFamily::NonzeroEven => self.pw(e - 1) + self.pw(m + d - 1),
        }
    }
}

pub fn predicted_length(spec: &CodeSpec) -> Result<u32> {
    let case = require_case(spec)?;
    Ok(Sizes::of(spec).length(case.family) as u32)
}

// ---------------------------------------------------------------------------
// Weight distributions, row by row

fn table_rows(s: &Sizes, case: CaseTag) -> Vec<(i128, i128)> {
    let (p, e, m, d) = (s.p, s.e, s.m, s.d);
    let pw = |k| s.pw(k);
    let base = s.base();
    let n = s.length(case.family);
    let bar = case.variant == Variant::Bar;
    let mut rows = alloc::vec![(0, 1)];
    match case.family {
        CaseFamily::ZeroOdd => {
            let a1 = pw(e - 1) - (p - 1) * pw(m - 1) - 1;
            let a2 = (p - 1) * (pw(e - 1) + pw(m - 1));
            rows.push(((p - 1) * base, a1));
            rows.push(((p - 1) * (base - pw(m - 1)), a2));
            if bar {
                rows.push((n, p - 1));
                rows.push(((p - 1) * (base - pw(m - 1)) - 1, (p - 1) * a1));
                rows.push(((p - 1) * base - (p - 2) * pw(m - 1) - 1, (p - 1) * a2));
            }
        }
        CaseFamily::NonzeroOdd => {
            let half = (p - 1) * (pw(e - 1) + pw(m - 1)) / 2;
            if bar {
                let h2 = (p - 2) * half;
                rows.push(((p - 1) * base + 2 * pw(m - 1), h2));
                rows.push(((p - 1) * base, pw(e) + h2 - 1));
                rows.push((n, p - 1));
                rows.push((
                    (p - 1) * base + pw(m - 1),
                    (p - 1) * (2 * pw(e - 1) - (p - 2) * pw(m - 1) - 1),
                ));
            } else {
                rows.push(((p - 1) * base + 2 * pw(m - 1), half));
                rows.push(((p - 1) * base, pw(e) - half - 1));
            }
        }
        CaseFamily::ZeroEven => {
            let u = pw(e) - pw(e - 2 * d);
            let t0 = pw(e - 2 * d - 1) - (p - 1) * pw(m - d - 1) - 1;
            let t1 = (p - 1) * (pw(e - 2 * d - 1) + pw(m - d - 1));
            rows.push(((p - 1) * base - (p - 1) * (p - 1) * pw(m + d - 2), u));
            rows.push(((p - 1) * base, t0));
            rows.push(((p - 1) * base - (p - 1) * pw(m + d - 1), t1));
            if bar {
                rows.push((n, p - 1));
                rows.push(((p - 1) * base - (p - 2) * pw(m + d - 1) - 1, (p - 1) * t1));
                rows.push(((p - 1) * (base - (p - 1) * pw(m + d - 2)) - 1, (p - 1) * u));
                rows.push(((p - 1) * (base - pw(m + d - 1)) - 1, (p - 1) * t0));
            }
        }
        CaseFamily::NonzeroEven => {
            let u = pw(e) - pw(e - 2 * d);
            let sum = pw(e - 2 * d - 1) + pw(m - d - 1);
            let sym_weight = (p - 1) * (base + pw(m + d - 2));
            if bar {
                rows.push((sym_weight, p * u));
                rows.push(((p - 1) * base, (p * p - p + 2) * sum / 2 - pw(m - d) - 1));
                rows.push(((p - 1) * base + 2 * pw(m + d - 1), (p - 1) * (p - 2) * sum / 2));
                rows.push((n, p - 1));
                rows.push((
                    (p - 1) * base + pw(m + d - 1),
                    (p - 1) * (2 * pw(e - 2 * d - 1) - (p - 2) * pw(m - d - 1) - 1),
                ));
            } else {
                rows.push((sym_weight, u));
                rows.push((
                    (p - 1) * base,
                    (p + 1) * pw(e - 2 * d - 1) / 2 - (p - 1) * pw(m - d - 1) / 2 - 1,
                ));
                rows.push(((p - 1) * base + 2 * pw(m + d - 1), (p - 1) * sum / 2));
            }
        }
    }
    rows
}

/// Instantiated table for the spec's case. Rows with equal weights are
/// merged and zero multiplicities dropped.
pub fn predict_wd(spec: &CodeSpec) -> Result<WeightDistribution> {
    let case = require_case(spec)?;
    let s = Sizes::of(spec);
    let n = s.length(case.family);
    let k = match case.variant {
        Variant::Plain => s.e,
        Variant::Bar => s.e + 1,
    };
    let mut entries = BTreeMap::new();
    for (w, a) in table_rows(&s, case) {
        if a < 0 || w < 0 || w > n {
            return Err(Error::Inconsistent(format!(
                "table row ({w}, {a}) out of range for n = {n}"
            )));
        }
        if a > 0 {
            *entries.entry(w as u32).or_insert(0u64) += a as u64;
        }
    }
    let total: u64 = entries.values().sum();
    if total as i128 != s.pw(k) {
        return Err(Error::SumMismatch {
            sum: "predict_wd",
            detail: format!("multiplicities sum to {total}, expected p^{k}"),
        });
    }
    Ok(WeightDistribution {
        p: spec.p,
        n: n as u32,
        k,
        entries,
    })
}

// ---------------------------------------------------------------------------
// Complete weight enumerators

/// One displayed term of a plain enumerator: `count` times the monomial
/// whose exponent of `w_r` is `profile[r]`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Family {
    count: i128,
    profile: Vec<i128>,
}

fn check_generator(p: u32, g: u32) -> Result<()> {
    let g = g % p;
    let is_root = g != 0
        && crate::arith::prime_factors(p as u64 - 1)
            .iter()
            .all(|&r| pow_mod(g as u64, (p as u64 - 1) / r, p as u64) != 1);
    if is_root {
        Ok(())
    } else {
        Err(Error::InvalidCodeSpec(format!("{g} does not generate F_{p}^*")))
    }
}

/// Asserts that `g^{2β}` and `g^{2β+1}` for `β = 1, …, (p-1)/2` hit each
/// square and each non-square of `F_p^*` exactly once.
fn check_beta_coverage(p: u32, g: u32) -> Result<()> {
    let p64 = p as u64;
    let mut seen = alloc::vec![0u32; p as usize];
    for beta in 1..=(p64 - 1) / 2 {
        let sq = pow_mod(g as u64, 2 * beta, p64);
        let nsq = pow_mod(g as u64, 2 * beta + 1, p64);
        if legendre(sq as i64, p64) != 1 || legendre(nsq as i64, p64) != -1 {
            return Err(Error::Inconsistent(format!("β = {beta}: wrong quadratic class")));
        }
        seen[sq as usize] += 1;
        seen[nsq as usize] += 1;
    }
    if seen[1..].iter().all(|&c| c == 1) {
        Ok(())
    } else {
        Err(Error::Inconsistent(format!(
            "powers of {g} do not cover F_{p}^* once"
        )))
    }
}

fn families(s: &Sizes, family: CaseFamily, g: u32) -> Result<Vec<Family>> {
    let (p, e, m, d) = (s.p, s.e, s.m, s.d);
    let pu = p as usize;
    let pw = |k| s.pw(k);
    let base = s.base();
    let n = s.length(family);
    let flat = |t0: i128, rest: i128| {
        let mut v = alloc::vec![rest; pu];
        v[0] = t0;
        v
    };
    let mut out = alloc::vec![Family {
        count: 1,
        profile: flat(n, 0),
    }];
    match family {
        CaseFamily::ZeroOdd => {
            let step = pw(m - 1);
            out.push(Family {
                count: pw(e - 1) - (p - 1) * step - 1,
                profile: flat(base - (p - 1) * step - 1, base),
            });
            out.push(Family {
                count: (p - 1) * (pw(e - 1) + step),
                profile: flat(base - 1, base - step),
            });
        }
        CaseFamily::ZeroEven => {
            let step = pw(m + d - 1);
            let half_step = pw(m + d - 2);
            out.push(Family {
                count: (p - 1) * (pw(e - 2 * d - 1) + pw(m - d - 1)),
                profile: flat(base - 1, base - step),
            });
            out.push(Family {
                count: pw(e) - pw(e - 2 * d),
                profile: flat(base - (p - 1) * half_step - 1, base - (p - 1) * half_step),
            });
            out.push(Family {
                count: pw(e - 2 * d - 1) - (p - 1) * pw(m - d - 1) - 1,
                profile: flat(base - (p - 1) * step - 1, base),
            });
        }
        CaseFamily::NonzeroOdd | CaseFamily::NonzeroEven => {
            let (step, trace_zero, per_class) = if family == CaseFamily::NonzeroOdd {
                let step = pw(m - 1);
                (step, pw(e - 1) - (p - 1) * step - 1, pw(e - 1) + step)
            } else {
                out.push(Family {
                    count: pw(e) - pw(e - 2 * d),
                    profile: alloc::vec![base + pw(m + d - 2); pu],
                });
                (
                    pw(m + d - 1),
                    pw(e - 2 * d - 1) - (p - 1) * pw(m - d - 1) - 1,
                    pw(e - 2 * d - 1) + pw(m - d - 1),
                )
            };
            out.push(Family {
                count: trace_zero,
                profile: flat(base + step, base),
            });
            check_generator(p as u32, g)?;
            check_beta_coverage(p as u32, g)?;
            let p64 = p as u64;
            let minus_one = legendre(-1, p64) as i128;
            let symbol = |t: i128| legendre(t.rem_euclid(p) as i64, p64) as i128;
            for beta in 1..=(p64 - 1) / 2 {
                let sq = pow_mod(g as u64, 2 * beta, p64) as i128;
                let nsq = pow_mod(g as u64, 2 * beta + 1, p64) as i128;
                let root = (2 * pow_mod(g as u64, beta, p64) as i128) % p;
                let mut profile = alloc::vec![0; pu];
                profile[0] = base - minus_one * step;
                for i in 1..p {
                    profile[i as usize] = if i == root || i == p - root {
                        base
                    } else {
                        base - symbol(i * i - 4 * sq) * step
                    };
                }
                out.push(Family {
                    count: per_class,
                    profile,
                });
                let mut profile = alloc::vec![0; pu];
                profile[0] = base + minus_one * step;
                for i in 1..p {
                    profile[i as usize] = base - symbol(i * i - 4 * nsq) * step;
                }
                out.push(Family {
                    count: per_class,
                    profile,
                });
            }
        }
    }
    Ok(out)
}

/// Enumerator from the theorem display for `g` = the smallest primitive
/// root of `p`.
pub fn predict_cwe(spec: &CodeSpec) -> Result<CompleteWeightEnumerator> {
    predict_cwe_with_generator(spec, primitive_root(spec.p as u64) as u32)
}

/// Same, with an explicit generator `g` of `F_p^*`.
///
/// For the bar variant every term is summed over `i ∈ F_p` with `w_i`
/// carrying the `w_0` exponent and `w_j` the exponent indexed by `j - i`.
pub fn predict_cwe_with_generator(spec: &CodeSpec, g: u32) -> Result<CompleteWeightEnumerator> {
    let case = require_case(spec)?;
    if !is_prime(spec.p as u64) {
        return Err(Error::InvalidPrime(spec.p as u64));
    }
    let s = Sizes::of(spec);
    let n = s.length(case.family);
    let pu = spec.p as usize;
    let (domain_dim, shifts) = match case.variant {
        Variant::Plain => (s.e, 1),
        Variant::Bar => (s.e + 1, pu),
    };
    let mut cwe = CompleteWeightEnumerator::empty(spec.p, n as u32, domain_dim);
    for fam in families(&s, case.family, g)? {
        if fam.count < 0 || fam.profile.iter().any(|&t| t < 0) {
            return Err(Error::Inconsistent(format!(
                "negative count or exponent in {:?}",
                fam
            )));
        }
        if fam.profile.iter().sum::<i128>() != n {
            return Err(Error::SumMismatch {
                sum: "composition",
                detail: format!("{:?} does not sum to n = {n}", fam.profile),
            });
        }
        for i in 0..shifts {
            let counts = (0..pu)
                .map(|j| fam.profile[(j + pu - i) % pu] as u32)
                .collect();
            cwe.add_term(Composition::new(counts), fam.count as u64);
        }
    }
    cwe.check_structure()?;
    Ok(cwe)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(p: u32, m: u32, alpha: u32, a: i64, v: Variant) -> CodeSpec {
        CodeSpec::new(p, m, alpha, a, v).unwrap()
    }

    fn entries(wd: &WeightDistribution) -> Vec<(u32, u64)> {
        wd.entries.iter().map(|(&w, &c)| (w, c)).collect()
    }

    #[test]
    fn cases() {
        let c = applicability(&spec(3, 3, 1, 0, Variant::Plain));
        assert_eq!(c.case().unwrap().family, CaseFamily::ZeroOdd);
        match applicability(&spec(3, 2, 1, 0, Variant::Plain)) {
            Applicability::NotApplicable(r) => assert!(r.contains("m > d+1")),
            other => panic!("{other:?}"),
        }
        let c = applicability(&spec(3, 2, 1, 1, Variant::Bar)).case().unwrap();
        assert_eq!(c.family, CaseFamily::NonzeroEven);
        assert_eq!(c.to_string(), "a-nonzero/m-d-even/bar");
    }

    #[test]
    fn instantiated_tables() {
        let wd = predict_wd(&spec(3, 3, 1, 0, Variant::Plain)).unwrap();
        assert_eq!(entries(&wd), [(0, 1), (144, 504), (162, 224)]);
        let wd = predict_wd(&spec(3, 3, 1, 1, Variant::Bar)).unwrap();
        assert_eq!(entries(&wd), [(0, 1), (162, 980), (171, 952), (180, 252), (252, 2)]);
        let wd = predict_wd(&spec(3, 4, 1, 0, Variant::Plain)).unwrap();
        assert_eq!(entries(&wd), [(0, 1), (1296, 504), (1350, 5832), (1458, 224)]);
        assert_eq!(wd.min_distance(), Some(1296));
        let wd = predict_wd(&spec(3, 4, 1, 1, Variant::Plain)).unwrap();
        assert_eq!(wd.min_distance(), Some(1458));
        let wd = predict_wd(&spec(3, 3, 1, 0, Variant::Bar)).unwrap();
        assert_eq!(wd.min_distance(), Some(143));
        assert!(predict_wd(&spec(3, 2, 1, 0, Variant::Plain)).is_err());
    }

    #[test]
    fn theorem_enumerators_match_examples() {
        let cwe = predict_cwe(&spec(3, 3, 1, 1, Variant::Plain)).unwrap();
        let terms: Vec<_> = cwe.terms.iter().map(|(c, &k)| (c.counts().to_vec(), k)).collect();
        assert_eq!(
            terms,
            [(vec![72, 90, 90], 252), (vec![90, 81, 81], 476), (vec![252, 0, 0], 1)]
        );
        let cwe = predict_cwe(&spec(3, 4, 1, 1, Variant::Bar)).unwrap();
        assert_eq!(cwe.terms[&Composition::new(vec![756, 756, 756])], 17496);
        assert_eq!(cwe.terms[&Composition::new(vec![729, 810, 729])], 476);
        assert_eq!(cwe.total(), 3u64.pow(9));
    }

    #[test]
    fn generator_must_generate() {
        let s = spec(5, 2, 1, 1, Variant::Plain);
        assert!(predict_cwe_with_generator(&s, 4).is_err());
        assert_eq!(
            predict_cwe_with_generator(&s, 2).unwrap(),
            predict_cwe_with_generator(&s, 3).unwrap()
        );
    }
}
