//! The built-in verification grid.

use cwe_core::codebuild::{lift_bar, CodeSpec, Variant};
use cwe_core::oracle::verify_with;

use crate::docs::{GridDoc, GridRow};
use crate::{csv_text, json, parallel, Common, Failure, Format};

/// `(p, m, α, a-values)` covered by `verify --grid`.
pub const GRID: &[(u32, u32, u32, &[i64])] = &[
    (3, 2, 2, &[0, 1, 2]),
    (3, 3, 1, &[0, 1, 2]),
    (3, 4, 1, &[0, 1, 2]),
    (5, 2, 1, &[1, 2, 3, 4]),
    (3, 2, 1, &[1, 2]),
];

/// Both variants of every grid spec, plain first.
pub fn grid_specs() -> Vec<CodeSpec> {
    let mut out = Vec::new();
    for &(p, m, alpha, values) in GRID {
        for &a in values {
            for v in [Variant::Plain, Variant::Bar] {
                out.push(CodeSpec::new(p, m, alpha, a, v).expect("grid specs are valid"));
            }
        }
    }
    out
}

/// Verifies the whole grid, enumerating each plain code once and lifting it
/// for the bar variant.
pub fn grid_rows(threads: usize, strict: bool) -> Result<Vec<GridRow>, Failure> {
    let mut rows = Vec::new();
    for &(p, m, alpha, values) in GRID {
        let ctx = cwe_core::FieldContext::new(p, 2 * m, None)?;
        for &a in values {
            let plain_spec = CodeSpec::new(p, m, alpha, a, Variant::Plain)?;
            let plain = parallel::enumerate_plain(&ctx, &plain_spec, threads);
            let bar = lift_bar(&plain);
            for (spec, cwe) in [(plain_spec, plain), (plain_spec.with_variant(Variant::Bar), bar)] {
                let r = verify_with(&spec, cwe)?;
                rows.push(GridRow {
                    spec: (&spec).into(),
                    case: crate::docs::case_string(&r.case),
                    parameters: (r.parameters.n, r.parameters.k, r.parameters.min_distance),
                    wd_match: r.wd_match,
                    cwe_match: r.cwe_match,
                    errata: r.errata.len(),
                    passed: r.passed(strict),
                });
            }
        }
    }
    Ok(rows)
}

pub(crate) fn run_grid(c: &Common, strict: bool) -> Result<(String, i32), Failure> {
    let rows = grid_rows(c.threads as usize, strict)?;
    let passed = rows.iter().all(|r| r.passed);
    let code = if passed { 0 } else { 1 };
    let text = match c.format {
        Format::Json => json(&GridDoc { rows, passed }),
        Format::Csv => {
            let header = [
                "p", "m", "alpha", "a", "variant", "case", "n", "k", "d", "wd_match", "cwe_match",
                "errata", "passed",
            ]
            .map(String::from);
            let opt = |b: Option<bool>| b.map(|v| v.to_string()).unwrap_or_else(|| "n/a".into());
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.spec.p.to_string(),
                        r.spec.m.to_string(),
                        r.spec.alpha.to_string(),
                        r.spec.a.to_string(),
                        r.spec.variant.to_string(),
                        r.case.clone(),
                        r.parameters.0.to_string(),
                        r.parameters.1.to_string(),
                        r.parameters.2.map(|d| d.to_string()).unwrap_or_default(),
                        opt(r.wd_match),
                        opt(r.cwe_match),
                        r.errata.to_string(),
                        r.passed.to_string(),
                    ]
                })
                .collect();
            csv_text(&header, &body)
        }
    };
    Ok((text, code))
}
