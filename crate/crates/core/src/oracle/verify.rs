use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::printed::{derivation_errata, printed_errata};
use super::{applicability, predict_cwe, predict_wd, printed_example, Applicability};
use crate::codebuild::{
    enumerate_cwe, power_moments_check, weight_distribution, CodeSpec, CompleteWeightEnumerator,
    WeightDistribution,
};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiffKind {
    Weight,
    Composition,
}

/// `key` is `[w]` for a weight, the count vector for a composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diff {
    pub kind: DiffKind,
    pub key: Vec<u32>,
    pub predicted: u64,
    pub enumerated: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErratumSource {
    /// Closed-form table or enumerator disagrees with enumeration.
    Prediction,
    /// A worked example as printed disagrees with enumeration.
    PrintedExample,
    /// A numeric claim inside a derivation.
    Derivation,
}

impl ErratumSource {
    pub fn as_str(self) -> &'static str {
        match self {
            ErratumSource::Prediction => "prediction",
            ErratumSource::PrintedExample => "printed-example",
            ErratumSource::Derivation => "derivation",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Erratum {
    pub source: ErratumSource,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Parameters {
    pub n: u32,
    pub k: u32,
    pub min_distance: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub spec: CodeSpec,
    pub case: Applicability,
    pub parameters: Parameters,
    pub enumerated: CompleteWeightEnumerator,
    pub weight_distribution: WeightDistribution,
    /// `None` when no closed form applies.
    pub wd_match: Option<bool>,
    pub cwe_match: Option<bool>,
    pub diffs: Vec<Diff>,
    pub errata: Vec<Erratum>,
    /// Failed structural checks (totals, composition sums, moments).
    pub problems: Vec<String>,
}

impl VerifyReport {
    /// Structural checks always count; under `strict` any prediction or
    /// printed-example disagreement fails as well.
    pub fn passed(&self, strict: bool) -> bool {
        if !self.problems.is_empty() {
            return false;
        }
        !strict
            || self
                .errata
                .iter()
                .all(|e| e.source == ErratumSource::Derivation)
    }
}

fn diff_maps<K: Ord + Clone>(
    predicted: &alloc::collections::BTreeMap<K, u64>,
    enumerated: &alloc::collections::BTreeMap<K, u64>,
    kind: DiffKind,
    key: impl Fn(&K) -> Vec<u32>,
) -> Vec<Diff> {
    let keys: BTreeSet<&K> = predicted.keys().chain(enumerated.keys()).collect();
    keys.into_iter()
        .filter_map(|k| {
            let a = predicted.get(k).copied().unwrap_or(0);
            let b = enumerated.get(k).copied().unwrap_or(0);
            (a != b).then(|| Diff {
                kind,
                key: key(k),
                predicted: a,
                enumerated: b,
            })
        })
        .collect()
}

/// Enumerates single-threaded in the default field, then verifies.
pub fn verify(spec: &CodeSpec, modulus: Option<&[u32]>) -> Result<VerifyReport> {
    let ctx = spec.field(modulus)?;
    verify_with(spec, enumerate_cwe(&ctx, spec))
}

/// Compares an enumerated enumerator for `spec` against every closed form
/// that applies.
pub fn verify_with(spec: &CodeSpec, enumerated: CompleteWeightEnumerator) -> Result<VerifyReport> {
    let mut problems = Vec::new();
    if let Err(e) = enumerated.check_structure() {
        problems.push(format!("{e}"));
    }
    let wd = weight_distribution(&enumerated)?;
    if !power_moments_check(&wd) {
        problems.push(String::from("power moments fail on the enumerated distribution"));
    }
    let parameters = Parameters {
        n: enumerated.n,
        k: wd.k,
        min_distance: wd.min_distance(),
    };

    let case = applicability(spec);
    let mut diffs = Vec::new();
    let mut errata = Vec::new();
    let (mut wd_match, mut cwe_match) = (None, None);
    if let Applicability::Applicable(tag) = &case {
        let predicted_wd = predict_wd(spec)?;
        let mut d = diff_maps(&predicted_wd.entries, &wd.entries, DiffKind::Weight, |w| {
            alloc::vec![*w]
        });
        if predicted_wd.n != wd.n || predicted_wd.k != wd.k {
            errata.push(Erratum {
                source: ErratumSource::Prediction,
                detail: format!(
                    "predicted [n, k] = [{}, {}]; enumeration gives [{}, {}]",
                    predicted_wd.n, predicted_wd.k, wd.n, wd.k
                ),
            });
        }
        wd_match = Some(d.is_empty() && predicted_wd.n == wd.n && predicted_wd.k == wd.k);
        diffs.append(&mut d);

        let predicted = predict_cwe(spec)?;
        let mut d = diff_maps(&predicted.terms, &enumerated.terms, DiffKind::Composition, |c| {
            c.counts().to_vec()
        });
        cwe_match = Some(d.is_empty());
        diffs.append(&mut d);

        if !diffs.is_empty() {
            errata.push(Erratum {
                source: ErratumSource::Prediction,
                detail: format!(
                    "{} entries of the closed-form prediction for case {tag} differ from enumeration",
                    diffs.len()
                ),
            });
        }
        errata.extend(
            derivation_errata(spec, tag.family, &wd)
                .into_iter()
                .map(|detail| Erratum {
                    source: ErratumSource::Derivation,
                    detail,
                }),
        );
    }
    if let Some(example) = printed_example(spec) {
        let observed = [parameters.n, parameters.k, parameters.min_distance.unwrap_or(0)];
        errata.extend(
            printed_errata(&example, &enumerated, observed)
                .into_iter()
                .map(|detail| Erratum {
                    source: ErratumSource::PrintedExample,
                    detail,
                }),
        );
    }
    Ok(VerifyReport {
        spec: *spec,
        case,
        parameters,
        enumerated,
        weight_distribution: wd,
        wd_match,
        cwe_match,
        diffs,
        errata,
        problems,
    })
}
