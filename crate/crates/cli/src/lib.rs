//! Command-line front end for `cwe-core`.
//!
//! Exit codes: 0 success or match, 1 mismatch (under `--strict`, or a
//! failed cross-check), 2 usage error, 3 `predict` on a spec no closed form
//! covers.

pub mod docs;
pub mod grid;
pub mod parallel;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cwe_core::charsum::{
    a_sum_by_definition, a_sum_closed_form, b_sum_by_definition, b_sum_closed_form,
    gauss_ext_by_definition, gauss_ext_closed_form, gauss_prime, solvable_count,
    solvable_count_by_search, weil_s_by_definition, weil_s_closed_form, SumReport,
};
use cwe_core::codebuild::{weight_distribution, CodeSpec, CompleteWeightEnumerator, Variant};
use cwe_core::oracle::{predict_cwe, predict_wd, verify_with, VerifyReport};
use cwe_core::{Error, ExtElement, FieldContext};

use docs::{CweDoc, FieldDoc, OracleDoc, ReportDoc, SolvableDoc, SumDoc, WdDoc};

#[derive(Parser, Debug)]
#[command(name = "cwe", version, about = "Trace codes from quadratic defining sets: enumerate, predict, verify")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the field's modulus, generator and orders.
    FieldInfo(Common),
    /// Evaluate an exponential sum in closed form.
    Sums(SumsArgs),
    /// Enumerate a code's complete weight enumerator.
    Enumerate(EnumerateArgs),
    /// Closed-form enumerator or weight distribution.
    Predict(EnumerateArgs),
    /// Compare enumeration with every applicable closed form.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Plain,
    Bar,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Plain => Variant::Plain,
            VariantArg::Bar => Variant::Bar,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Odd prime characteristic.
    #[arg(long)]
    pub p: Option<u32>,
    /// Half the extension degree.
    #[arg(long, conflicts_with = "e")]
    pub m: Option<u32>,
    /// Extension degree; must be even.
    #[arg(long)]
    pub e: Option<u32>,
    #[arg(long)]
    pub alpha: Option<u32>,
    /// Prime-field value defining the set (reduced mod p).
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub a: i64,
    #[arg(long, value_enum, default_value_t = VariantArg::Plain)]
    pub variant: VariantArg,
    /// Monic primitive modulus as a JSON list, constant term first.
    #[arg(long)]
    pub modulus: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: u32,
    /// Output file; standard output if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SumKind {
    /// Quadratic Gauss sum of F_{p^e}.
    Gauss,
    /// Quadratic Gauss sum of F_p.
    GaussPrime,
    #[value(name = "S")]
    S,
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
    Solvable,
}

#[derive(Args, Debug)]
pub struct SumsArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum)]
    pub kind: SumKind,
    /// Field element as a JSON coefficient list, constant term first.
    #[arg(long)]
    pub b: Option<String>,
    /// Field-valued `a` for S as a JSON coefficient list; defaults to `--a`.
    #[arg(long)]
    pub a_ext: Option<String>,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub c: i64,
    /// Also evaluate by definition and compare.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub common: Common,
    /// Emit the weight distribution instead of the enumerator.
    #[arg(long)]
    pub weights: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    /// Treat any prediction or printed-example disagreement as failure.
    #[arg(long)]
    pub strict: bool,
    /// Run the built-in parameter grid instead of a single spec.
    #[arg(long)]
    pub grid: bool,
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    NotApplicable(String),
    Mismatch(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Mismatch(_) => 1,
            Failure::Usage(_) => 2,
            Failure::NotApplicable(_) => 3,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::NotApplicable(m) => write!(f, "not applicable: {m}"),
            Failure::Mismatch(m) => write!(f, "mismatch: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotApplicable(m) => Failure::NotApplicable(m),
            Error::SumMismatch { .. } | Error::Inconsistent(_) => Failure::Mismatch(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<(String, i32), Failure>;

/// Parses `args` (program name first), runs, writes output, returns the
/// exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let out_path = match &cli.command {
        Command::FieldInfo(c) => c.out.clone(),
        Command::Sums(s) => s.common.out.clone(),
        Command::Enumerate(a) | Command::Predict(a) => a.common.out.clone(),
        Command::Verify(v) => v.common.out.clone(),
    };
    match execute(&cli.command) {
        Ok((text, code)) => {
            let written = match out_path {
                Some(path) => std::fs::write(&path, text.as_bytes()),
                None => std::io::stdout().lock().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("cannot write output: {e}");
                return 2;
            }
            code
        }
        Err(f) => {
            eprintln!("{f}");
            f.exit_code()
        }
    }
}

pub fn execute(command: &Command) -> Outcome {
    match command {
        Command::FieldInfo(c) => field_info(c),
        Command::Sums(s) => sums(s),
        Command::Enumerate(a) => enumerate(a),
        Command::Predict(a) => predict(a),
        Command::Verify(v) if v.grid => grid::run_grid(&v.common, v.strict),
        Command::Verify(v) => verify(v),
    }
}

fn parse_list(flag: &str, text: &str) -> Result<Vec<u32>, Failure> {
    serde_json::from_str::<Vec<u32>>(text)
        .map_err(|e| Failure::Usage(format!("--{flag} must be a JSON list of nonnegative integers: {e}")))
}

fn require_p(c: &Common) -> Result<u32, Failure> {
    c.p.ok_or_else(|| Failure::Usage("--p is required".into()))
}

fn degree(c: &Common) -> Result<u32, Failure> {
    match (c.m, c.e) {
        (Some(m), _) => Ok(2 * m),
        (None, Some(e)) if e % 2 == 0 => Ok(e),
        (None, Some(e)) => Err(Failure::Usage(format!("--e = {e} must be even"))),
        (None, None) => Err(Failure::Usage("--m or --e is required".into())),
    }
}

fn field(c: &Common) -> Result<FieldContext, Failure> {
    let p = require_p(c)?;
    let e = degree(c)?;
    let modulus = c.modulus.as_deref().map(|t| parse_list("modulus", t)).transpose()?;
    Ok(FieldContext::new(p, e, modulus.as_deref())?)
}

fn alpha(c: &Common) -> Result<u32, Failure> {
    c.alpha.ok_or_else(|| Failure::Usage("--alpha is required".into()))
}

fn code_spec(c: &Common) -> Result<CodeSpec, Failure> {
    let p = require_p(c)?;
    let m = degree(c)? / 2;
    Ok(CodeSpec::new(p, m, alpha(c)?, c.a, c.variant.into())?)
}

fn json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn csv_text(header: &[String], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn field_info(c: &Common) -> Outcome {
    let ctx = field(c)?;
    let doc = FieldDoc::from(&ctx);
    let text = match c.format {
        Format::Json => json(&doc),
        Format::Csv => {
            let list = |v: &[u32]| serde_json::to_string(v).expect("list");
            csv_text(
                &["key".into(), "value".into()],
                &[
                    vec!["p".into(), doc.p.to_string()],
                    vec!["e".into(), doc.e.to_string()],
                    vec!["q".into(), doc.q.to_string()],
                    vec!["modulus".into(), list(&doc.modulus)],
                    vec!["generator".into(), list(&doc.generator)],
                    vec!["generator_order".into(), doc.generator_order.to_string()],
                    vec!["prime_generator".into(), doc.prime_generator.to_string()],
                ],
            )
        }
    };
    Ok((text, 0))
}

fn element(ctx: &FieldContext, flag: &str, text: &str) -> Result<ExtElement, Failure> {
    let coeffs = parse_list(flag, text)?;
    Ok(ctx.element(&coeffs)?)
}

fn sums(args: &SumsArgs) -> Outcome {
    let c = &args.common;
    if args.kind == SumKind::GaussPrime {
        let p = require_p(c)?;
        let r = gauss_prime(p)?;
        let doc = sum_doc("gauss-prime", p, &r, None);
        return Ok((render_sum(c.format, &doc), 0));
    }
    let ctx = field(c)?;
    let (p, e) = (ctx.p(), ctx.e());
    if args.kind == SumKind::Solvable {
        let al = alpha(c)?;
        let r = solvable_count(&ctx, al)?;
        let oracle = args.verify.then(|| solvable_count_by_search(&ctx, al));
        let doc = SolvableDoc {
            kind: "solvable",
            p,
            e,
            alpha: al,
            count: r.count,
            permutation: r.permutation,
            oracle,
            agrees: oracle.map(|o| o == r.count),
        };
        let code = if doc.agrees == Some(false) { 1 } else { 0 };
        let text = match c.format {
            Format::Json => json(&doc),
            Format::Csv => csv_text(
                &["kind".into(), "count".into(), "permutation".into()],
                &[vec!["solvable".into(), r.count.to_string(), r.permutation.to_string()]],
            ),
        };
        return Ok((text, code));
    }

    let b = match &args.b {
        Some(t) => element(&ctx, "b", t)?,
        None => ExtElement::ZERO,
    };
    let a_prime = ctx.prime(c.a);
    let (kind, closed, definition, mut doc_fields) = match args.kind {
        SumKind::Gauss => (
            "gauss",
            gauss_ext_closed_form(&ctx)?,
            args.verify.then(|| gauss_ext_by_definition(&ctx)),
            SumFields::default(),
        ),
        SumKind::S => {
            let al = alpha(c)?;
            let a = match &args.a_ext {
                Some(t) => element(&ctx, "a-ext", t)?,
                None => ctx.embed(a_prime),
            };
            let def = if args.verify {
                Some(weil_s_by_definition(&ctx, al, a, b)?)
            } else {
                None
            };
            (
                "S",
                weil_s_closed_form(&ctx, al, a, b)?,
                def,
                SumFields {
                    alpha: Some(al),
                    a: Some(serde_json::to_value(ctx.coeffs(a)).expect("list")),
                    b: Some(ctx.coeffs(b)),
                    ..SumFields::default()
                },
            )
        }
        SumKind::A => {
            let al = alpha(c)?;
            (
                "A",
                a_sum_closed_form(&ctx, al, a_prime)?,
                args.verify.then(|| a_sum_by_definition(&ctx, al, a_prime)),
                SumFields {
                    alpha: Some(al),
                    a: Some(a_prime.value().into()),
                    ..SumFields::default()
                },
            )
        }
        SumKind::B => {
            let al = alpha(c)?;
            let c_prime = ctx.prime(args.c);
            let def = if args.verify {
                Some(b_sum_by_definition(&ctx, al, a_prime, c_prime, b)?)
            } else {
                None
            };
            (
                "B",
                b_sum_closed_form(&ctx, al, a_prime, c_prime, b)?,
                def,
                SumFields {
                    alpha: Some(al),
                    a: Some(a_prime.value().into()),
                    b: Some(ctx.coeffs(b)),
                    c: Some(c_prime.value()),
                    ..SumFields::default()
                },
            )
        }
        SumKind::GaussPrime | SumKind::Solvable => unreachable!("handled above"),
    };
    doc_fields.e = Some(e);
    let mut doc = sum_doc(kind, p, &closed, definition.as_ref());
    doc_fields.apply(&mut doc);
    let code = if doc.agrees == Some(false) { 1 } else { 0 };
    Ok((render_sum(c.format, &doc), code))
}

#[derive(Default)]
struct SumFields {
    alpha: Option<u32>,
    a: Option<serde_json::Value>,
    b: Option<Vec<u32>>,
    c: Option<u32>,
    e: Option<u32>,
}

impl SumFields {
    fn apply(self, doc: &mut SumDoc) {
        doc.e = self.e;
        doc.alpha = self.alpha;
        doc.a = self.a;
        doc.b = self.b;
        doc.c = self.c;
    }
}

fn sum_doc(kind: &str, p: u32, r: &SumReport, definition: Option<&SumReport>) -> SumDoc {
    SumDoc {
        kind: kind.into(),
        p,
        e: None,
        alpha: None,
        a: None,
        b: None,
        c: None,
        value: (&r.value).into(),
        rational: r.rational.as_ref().map(docs::bigint_json),
        method: r.method.as_str(),
        case_tag: r.case_tag.clone(),
        oracle: definition.map(OracleDoc::from),
        agrees: definition.map(|d| d.value == r.value),
    }
}

fn render_sum(format: Format, doc: &SumDoc) -> String {
    match format {
        Format::Json => json(doc),
        Format::Csv => {
            let coeffs = serde_json::to_string(&doc.value.coeffs).expect("list");
            let rational = doc.rational.as_ref().map(|v| v.to_string()).unwrap_or_default();
            let agrees = doc.agrees.map(|a| a.to_string()).unwrap_or_default();
            csv_text(
                &["kind", "p", "coeffs", "rational", "method", "case_tag", "agrees"].map(String::from),
                &[vec![
                    doc.kind.clone(),
                    doc.p.to_string(),
                    coeffs,
                    rational,
                    doc.method.into(),
                    doc.case_tag.clone(),
                    agrees,
                ]],
            )
        }
    }
}

pub fn render_cwe(format: Format, spec: &CodeSpec, cwe: &CompleteWeightEnumerator) -> String {
    match format {
        Format::Json => json(&CweDoc::new(spec, cwe)),
        Format::Csv => {
            let mut header: Vec<String> = (0..spec.p).map(|i| format!("t{i}")).collect();
            header.push("count".into());
            let rows: Vec<Vec<String>> = cwe
                .terms
                .iter()
                .map(|(c, k)| {
                    let mut r: Vec<String> = c.counts().iter().map(|t| t.to_string()).collect();
                    r.push(k.to_string());
                    r
                })
                .collect();
            csv_text(&header, &rows)
        }
    }
}

fn render_wd(format: Format, spec: &CodeSpec, wd: &cwe_core::codebuild::WeightDistribution) -> String {
    match format {
        Format::Json => json(&WdDoc::new(spec, wd)),
        Format::Csv => csv_text(
            &["weight".into(), "count".into()],
            &wd.entries
                .iter()
                .map(|(w, k)| vec![w.to_string(), k.to_string()])
                .collect::<Vec<_>>(),
        ),
    }
}

fn enumerate(args: &EnumerateArgs) -> Outcome {
    let c = &args.common;
    let spec = code_spec(c)?;
    let ctx = field(c)?;
    let cwe = parallel::enumerate(&ctx, &spec, c.threads as usize);
    let text = if args.weights {
        render_wd(c.format, &spec, &weight_distribution(&cwe)?)
    } else {
        render_cwe(c.format, &spec, &cwe)
    };
    Ok((text, 0))
}

fn predict(args: &EnumerateArgs) -> Outcome {
    let c = &args.common;
    let spec = code_spec(c)?;
    let text = if args.weights {
        render_wd(c.format, &spec, &predict_wd(&spec)?)
    } else {
        render_cwe(c.format, &spec, &predict_cwe(&spec)?)
    };
    Ok((text, 0))
}

/// Verify one spec with threaded enumeration.
pub fn verify_spec(spec: &CodeSpec, modulus: Option<&[u32]>, threads: usize) -> Result<VerifyReport, Failure> {
    let ctx = spec.field(modulus)?;
    let cwe = parallel::enumerate(&ctx, spec, threads);
    Ok(verify_with(spec, cwe)?)
}

fn verify(args: &VerifyArgs) -> Outcome {
    let c = &args.common;
    let spec = code_spec(c)?;
    let modulus = c.modulus.as_deref().map(|t| parse_list("modulus", t)).transpose()?;
    let report = verify_spec(&spec, modulus.as_deref(), c.threads as usize)?;
    let doc = ReportDoc::new(&report, args.strict);
    let code = if doc.passed { 0 } else { 1 };
    let text = match c.format {
        Format::Json => json(&doc),
        Format::Csv => {
            let mut rows = vec![
                vec!["case".into(), doc.case.clone()],
                vec![
                    "parameters".into(),
                    serde_json::to_string(&doc.parameters).expect("tuple"),
                ],
                vec!["wd_match".into(), opt(doc.wd_match)],
                vec!["cwe_match".into(), opt(doc.cwe_match)],
                vec!["passed".into(), doc.passed.to_string()],
            ];
            for e in &doc.errata {
                rows.push(vec![format!("erratum:{}", e.source), e.detail.clone()]);
            }
            for d in &doc.diffs {
                rows.push(vec![
                    format!("diff:{}", d.kind),
                    format!("{:?} predicted {} enumerated {}", d.key, d.predicted, d.enumerated),
                ]);
            }
            csv_text(&["key".into(), "value".into()], &rows)
        }
    };
    Ok((text, code))
}

fn opt(b: Option<bool>) -> String {
    b.map(|v| v.to_string()).unwrap_or_else(|| "n/a".into())
}
