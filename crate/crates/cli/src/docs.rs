//! Serializable documents written by the subcommands.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

use cwe_core::charsum::SumReport;
use cwe_core::codebuild::{CodeSpec, CompleteWeightEnumerator, WeightDistribution};
use cwe_core::oracle::{Applicability, DiffKind, VerifyReport};
use cwe_core::{CyclotomicInteger, FieldContext};

/// Integers that fit `i64` become JSON numbers, larger ones strings.
pub fn bigint_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

#[derive(Serialize)]
pub struct CycloDoc {
    pub p: u32,
    pub coeffs: Vec<Value>,
}

impl From<&CyclotomicInteger> for CycloDoc {
    fn from(z: &CyclotomicInteger) -> Self {
        CycloDoc {
            p: z.p(),
            coeffs: z.coeffs().iter().map(bigint_json).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct SumDoc {
    pub kind: String,
    pub p: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<u32>,
    pub value: CycloDoc,
    pub rational: Option<Value>,
    pub method: &'static str,
    pub case_tag: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agrees: Option<bool>,
}

#[derive(Serialize)]
pub struct OracleDoc {
    pub value: CycloDoc,
    pub rational: Option<Value>,
    pub method: &'static str,
}

impl From<&SumReport> for OracleDoc {
    fn from(r: &SumReport) -> Self {
        OracleDoc {
            value: (&r.value).into(),
            rational: r.rational.as_ref().map(bigint_json),
            method: r.method.as_str(),
        }
    }
}

#[derive(Serialize)]
pub struct SolvableDoc {
    pub kind: &'static str,
    pub p: u32,
    pub e: u32,
    pub alpha: u32,
    pub count: u64,
    pub permutation: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agrees: Option<bool>,
}

#[derive(Serialize)]
pub struct FieldDoc {
    pub p: u32,
    pub e: u32,
    pub q: u32,
    pub modulus: Vec<u32>,
    pub generator: Vec<u32>,
    pub generator_order: u32,
    pub prime_generator: u32,
}

impl From<&FieldContext> for FieldDoc {
    fn from(ctx: &FieldContext) -> Self {
        FieldDoc {
            p: ctx.p(),
            e: ctx.e(),
            q: ctx.q(),
            modulus: ctx.modulus().to_vec(),
            generator: ctx.coeffs(ctx.generator()),
            generator_order: ctx.generator_order(),
            prime_generator: ctx.prime_generator().value(),
        }
    }
}

#[derive(Serialize, Clone)]
pub struct SpecDoc {
    pub p: u32,
    pub m: u32,
    pub e: u32,
    pub alpha: u32,
    pub a: u32,
    pub variant: &'static str,
}

impl From<&CodeSpec> for SpecDoc {
    fn from(s: &CodeSpec) -> Self {
        SpecDoc {
            p: s.p,
            m: s.m,
            e: s.e(),
            alpha: s.alpha,
            a: s.a.value(),
            variant: s.variant.as_str(),
        }
    }
}

#[derive(Serialize)]
pub struct TermDoc {
    pub composition: Vec<u32>,
    pub count: u64,
}

#[derive(Serialize)]
pub struct CweDoc {
    pub p: u32,
    pub e: u32,
    pub alpha: u32,
    pub a: u32,
    pub variant: &'static str,
    pub n: u32,
    pub k: Option<u32>,
    pub terms: Vec<TermDoc>,
}

impl CweDoc {
    pub fn new(spec: &CodeSpec, cwe: &CompleteWeightEnumerator) -> Self {
        CweDoc {
            p: spec.p,
            e: spec.e(),
            alpha: spec.alpha,
            a: spec.a.value(),
            variant: spec.variant.as_str(),
            n: cwe.n,
            k: cwe.dimension(),
            terms: terms(cwe),
        }
    }
}

/// Terms in ascending lexicographic order of composition.
pub fn terms(cwe: &CompleteWeightEnumerator) -> Vec<TermDoc> {
    cwe.terms
        .iter()
        .map(|(c, &count)| TermDoc {
            composition: c.counts().to_vec(),
            count,
        })
        .collect()
}

#[derive(Serialize)]
pub struct EntryDoc {
    pub weight: u32,
    pub count: u64,
}

#[derive(Serialize)]
pub struct WdDoc {
    pub p: u32,
    pub e: u32,
    pub alpha: u32,
    pub a: u32,
    pub variant: &'static str,
    pub n: u32,
    pub k: u32,
    pub entries: Vec<EntryDoc>,
}

impl WdDoc {
    pub fn new(spec: &CodeSpec, wd: &WeightDistribution) -> Self {
        WdDoc {
            p: spec.p,
            e: spec.e(),
            alpha: spec.alpha,
            a: spec.a.value(),
            variant: spec.variant.as_str(),
            n: wd.n,
            k: wd.k,
            entries: entries(wd),
        }
    }
}

pub fn entries(wd: &WeightDistribution) -> Vec<EntryDoc> {
    wd.entries
        .iter()
        .map(|(&weight, &count)| EntryDoc { weight, count })
        .collect()
}

#[derive(Serialize)]
pub struct DiffDoc {
    pub kind: &'static str,
    pub key: Vec<u32>,
    pub predicted: u64,
    pub enumerated: u64,
}

#[derive(Serialize)]
pub struct ErratumDoc {
    pub source: &'static str,
    pub detail: String,
}

#[derive(Serialize)]
pub struct ReportDoc {
    pub spec: SpecDoc,
    pub case: String,
    /// `[n, k, d]`; `d` is null for a code with no nonzero word.
    pub parameters: (u32, u32, Option<u32>),
    pub wd_match: Option<bool>,
    pub cwe_match: Option<bool>,
    pub diffs: Vec<DiffDoc>,
    pub errata: Vec<ErratumDoc>,
    pub problems: Vec<String>,
    pub passed: bool,
    pub weight_distribution: Vec<EntryDoc>,
    pub terms: Vec<TermDoc>,
}

pub fn case_string(case: &Applicability) -> String {
    match case {
        Applicability::Applicable(tag) => tag.to_string(),
        Applicability::NotApplicable(reason) => format!("not-applicable: {reason}"),
    }
}

impl ReportDoc {
    pub fn new(r: &VerifyReport, strict: bool) -> Self {
        ReportDoc {
            spec: (&r.spec).into(),
            case: case_string(&r.case),
            parameters: (r.parameters.n, r.parameters.k, r.parameters.min_distance),
            wd_match: r.wd_match,
            cwe_match: r.cwe_match,
            diffs: r
                .diffs
                .iter()
                .map(|d| DiffDoc {
                    kind: match d.kind {
                        DiffKind::Weight => "weight",
                        DiffKind::Composition => "composition",
                    },
                    key: d.key.clone(),
                    predicted: d.predicted,
                    enumerated: d.enumerated,
                })
                .collect(),
            errata: r
                .errata
                .iter()
                .map(|e| ErratumDoc {
                    source: e.source.as_str(),
                    detail: e.detail.clone(),
                })
                .collect(),
            problems: r.problems.clone(),
            passed: r.passed(strict),
            weight_distribution: entries(&r.weight_distribution),
            terms: terms(&r.enumerated),
        }
    }
}

/// One line of the `verify --grid` summary.
#[derive(Serialize)]
pub struct GridRow {
    pub spec: SpecDoc,
    pub case: String,
    pub parameters: (u32, u32, Option<u32>),
    pub wd_match: Option<bool>,
    pub cwe_match: Option<bool>,
    pub errata: usize,
    pub passed: bool,
}

#[derive(Serialize)]
pub struct GridDoc {
    pub rows: Vec<GridRow>,
    pub passed: bool,
}
