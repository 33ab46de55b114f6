//! The `cdga` command line: argument parsing, dispatch and report rendering.
//!
//! [`run`] returns the text to print and the exit status instead of touching
//! the process, so the binary is a thin wrapper and tests can drive it directly.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::analysis::{
    canonical_splitting, donaldson_quotient, formality, massey_obstruction_scan, massey_product, parity_obstruction,
    s_formality, s_lefschetz, scan_windows_ok, search_ideal_witness, transport_formality, witness_robustness,
    AnalysisError, Certificate, Coverage, DonaldsonMode, FormalityStatus, FormalityVerdict, MasseyResult,
    MasseyVerdict, Splitting, TransportStatement,
};
use crate::cdga::FreeCDGA;
use crate::dsl::{emit, parse_algebra, parse_poly};
use crate::grading::Element;
use crate::models::builtin;
use crate::qlinalg::{fmt_rational, fmt_vec, Rational};
use crate::sullivan::{minimal_model_up_to, DEFAULT_DEGREE_ONE_ROUNDS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_NO_INPUT: i32 = 66;

/// Environment variable overriding the default degree cap.
pub const MAX_DEGREE_ENV: &str = "CDGA_MAX_DEGREE";

#[derive(Parser, Debug)]
#[command(
    name = "cdga",
    version,
    about = "Cohomology, minimal models, formality and Lefschetz checks for CDGAs over Q",
    after_help = "INPUT is a presentation file, `-` for standard input, or a built-in model name."
)]
pub struct Cli {
    /// Print a single JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Highest degree examined (default: $CDGA_MAX_DEGREE, else formal dimension + 2, else 12).
    #[arg(long, global = true, value_name = "N")]
    pub max_degree: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check d^2 = 0, homogeneity, minimality and the symplectic class.
    Validate { input: String },
    /// Betti numbers.
    Betti { input: String },
    /// Cohomology with representative classes.
    Cohomology {
        input: String,
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Sullivan minimal model through a degree.
    MinimalModel {
        input: String,
        #[arg(long, value_name = "N")]
        up_to: Option<u32>,
    },
    /// Decide formality, or s-formality with --s.
    Formality {
        input: String,
        #[arg(long)]
        s: Option<u32>,
        /// Also run the check at s = formal dimension and compare.
        #[arg(long)]
        strict: bool,
    },
    /// Check the s-Lefschetz property (default: hard Lefschetz).
    Lefschetz {
        input: String,
        #[arg(long)]
        s: Option<u32>,
    },
    /// Massey product of closed elements separated by `;`, or an obstruction scan.
    Massey {
        input: String,
        #[arg(long, value_name = "P1;P2;...")]
        classes: Option<String>,
        /// Scan basis classes in the obstruction windows for this s.
        #[arg(long, value_name = "S", conflicts_with = "classes")]
        scan: Option<u32>,
        /// Longest product in a scan.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(3..=4))]
        length: u8,
    },
    /// Cohomology of a Donaldson-type submanifold.
    Donaldson {
        input: String,
        #[arg(long)]
        s: Option<u32>,
        /// Fail instead of reporting when the Lefschetz hypothesis does not hold.
        #[arg(long)]
        require_lefschetz: bool,
    },
    /// Print a built-in model in the presentation format.
    Example { name: String },
}

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String, code: i32) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code,
        }
    }

    fn err(stderr: String, code: i32) -> Self {
        Outcome {
            stdout: String::new(),
            stderr,
            code,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    NoInput(String),
    Error(String),
}

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Self {
        Failure::Error(e.to_string())
    }
}

impl From<crate::error::AlgebraError> for Failure {
    fn from(e: crate::error::AlgebraError) -> Self {
        Failure::Error(e.to_string())
    }
}

/// A report: structured data, its text rendering, and the exit status.
struct Report {
    json: Value,
    text: String,
    code: i32,
}

pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::ok(e.to_string(), EXIT_OK),
                _ => Outcome::err(e.to_string(), EXIT_USAGE),
            }
        }
    };
    let as_json = cli.json;
    match dispatch(cli, stdin) {
        Ok(r) => {
            let stdout = if as_json {
                let mut s = serde_json::to_string_pretty(&r.json).expect("serializable");
                s.push('\n');
                s
            } else {
                r.text
            };
            Outcome::ok(stdout, r.code)
        }
        Err(f) => {
            let (msg, code) = match f {
                Failure::Usage(m) => (m, EXIT_USAGE),
                Failure::NoInput(m) => (m, EXIT_NO_INPUT),
                Failure::Error(m) => (m, EXIT_ERROR),
            };
            if as_json {
                let doc = json!({ "error": msg, "exit_code": code });
                Outcome {
                    stdout: format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable")),
                    stderr: format!("error: {msg}\n"),
                    code,
                }
            } else {
                Outcome::err(format!("error: {msg}\n"), code)
            }
        }
    }
}

/// Reads a presentation from a file, standard input (`-`), or a built-in name.
pub fn load_input(input: &str, stdin: &mut dyn Read) -> Result<FreeCDGA, String> {
    load(input, stdin).map_err(|f| match f {
        Failure::Usage(m) | Failure::NoInput(m) | Failure::Error(m) => m,
    })
}

fn load(input: &str, stdin: &mut dyn Read) -> Result<FreeCDGA, Failure> {
    let source = if input == "-" {
        let mut s = String::new();
        stdin
            .read_to_string(&mut s)
            .map_err(|e| Failure::NoInput(format!("cannot read standard input: {e}")))?;
        s
    } else if Path::new(input).exists() {
        std::fs::read_to_string(input).map_err(|e| Failure::NoInput(format!("cannot read {input}: {e}")))?
    } else {
        return builtin(input).map_err(|_| Failure::NoInput(format!("{input}: no such file or built-in model")));
    };
    parse_algebra(&source).map_err(|e| Failure::Error(format!("{input}: {e}")))
}

fn degree_cap(alg: &FreeCDGA, flag: Option<u32>) -> Result<u32, Failure> {
    if let Some(n) = flag {
        return Ok(n);
    }
    if let Ok(v) = std::env::var(MAX_DEGREE_ENV) {
        return v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{MAX_DEGREE_ENV} must be a non-negative integer, got `{v}`")));
    }
    Ok(alg.formal_dim().map_or(12, |m| m + 2))
}

/// Degrees whose cohomology is determined by the model and shown by default.
fn shown_through(alg: &FreeCDGA, cap: u32) -> u32 {
    let b = alg.exactness_bound();
    let mut top = cap;
    if let Some(t) = b.decidable_through {
        top = top.min(t);
    }
    if let (true, Some(m)) = (b.sanity_checked, b.vanishing_above) {
        top = top.min(m);
    }
    top
}

fn dispatch(cli: Cli, stdin: &mut dyn Read) -> Result<Report, Failure> {
    let max = cli.max_degree;
    match cli.command {
        Command::Validate { input } => validate(&load(&input, stdin)?),
        Command::Betti { input } => {
            let a = load(&input, stdin)?;
            let cap = degree_cap(&a, max)?;
            betti(&a, cap)
        }
        Command::Cohomology { input, degree } => {
            let a = load(&input, stdin)?;
            let cap = degree_cap(&a, max)?;
            cohomology(&a, cap, degree)
        }
        Command::MinimalModel { input, up_to } => {
            let a = load(&input, stdin)?;
            let n = match up_to {
                Some(n) => n,
                None => degree_cap(&a, max)?.min(a.gens().max_degree().max(3)),
            };
            minimal_model(&a, n)
        }
        Command::Formality { input, s, strict } => formality_cmd(&load(&input, stdin)?, s, strict),
        Command::Lefschetz { input, s } => lefschetz(&load(&input, stdin)?, s),
        Command::Massey {
            input,
            classes,
            scan,
            length,
        } => {
            let a = load(&input, stdin)?;
            match (classes, scan) {
                (Some(c), None) => massey(&a, &c),
                (None, Some(s)) => massey_scan(&a, s, length as usize),
                _ => Err(Failure::Usage("massey needs --classes or --scan".into())),
            }
        }
        Command::Donaldson {
            input,
            s,
            require_lefschetz,
        } => donaldson(&load(&input, stdin)?, s, require_lefschetz),
        Command::Example { name } => {
            let a = builtin(&name).map_err(|e| Failure::Error(e.to_string()))?;
            let text = emit(&a);
            Ok(Report {
                json: json!({ "command": "example", "name": name, "presentation": text }),
                text,
                code: EXIT_OK,
            })
        }
    }
}

fn q(x: &Rational) -> String {
    fmt_rational(x)
}

fn qv(v: &[Rational]) -> Value {
    Value::from(v.iter().map(q).collect::<Vec<_>>())
}

fn validate(a: &FreeCDGA) -> Result<Report, Failure> {
    let report = a.validate();
    let bound = a.exactness_bound();
    let gens: Vec<Value> = a
        .gens()
        .iter()
        .map(|g| json!({ "name": g.name, "degree": g.degree }))
        .collect();
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| json!({ "kind": v.kind.label(), "generator": v.generator, "detail": v.detail }))
        .collect();
    let pairing = match (a.formal_dim(), report.is_valid(), bound.sanity_checked) {
        (Some(_), true, true) => Some(a.poincare_pairing()?.is_nondegenerate()),
        _ => None,
    };
    let mut text = String::new();
    let _ = writeln!(
        text,
        "algebra {}: {} generators, formal dimension {}",
        a.name(),
        a.arity(),
        a.formal_dim().map_or("undeclared".to_string(), |m| m.to_string())
    );
    let _ = writeln!(text, "valid: {}", yes(report.is_valid()));
    let _ = writeln!(text, "minimal: {}", yes(report.is_minimal()));
    for v in &report.violations {
        let _ = writeln!(
            text,
            "  {} [{}]: {}",
            v.kind.label(),
            v.generator.as_deref().unwrap_or("omega"),
            v.detail
        );
    }
    if let Some(w) = a.omega() {
        let _ = writeln!(text, "omega: {}", a.display(w));
    }
    if let Some(p) = pairing {
        let _ = writeln!(text, "Poincare duality: {}", yes(p));
    }
    if let Some(t) = a.truncated_at() {
        let _ = writeln!(text, "generators known through degree {t}");
    }
    let _ = writeln!(text, "exactness: {}", bound.note);
    Ok(Report {
        json: json!({
            "command": "validate",
            "algebra": a.name(),
            "generators": gens,
            "formal_dim": a.formal_dim(),
            "truncated_at": a.truncated_at(),
            "valid": report.is_valid(),
            "minimal": report.is_minimal(),
            "violations": violations,
            "omega": a.omega().map(|w| a.display(w)),
            "poincare_duality": pairing,
            "exactness": bound.note,
        }),
        text,
        code: if report.is_valid() { EXIT_OK } else { EXIT_ERROR },
    })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn betti(a: &FreeCDGA, cap: u32) -> Result<Report, Failure> {
    let top = shown_through(a, cap);
    let b = a.betti_vector(top);
    let list: Vec<String> = b.iter().map(|x| x.to_string()).collect();
    let mut text = format!("betti {}: ({})\n", a.name(), list.join(","));
    let bound = a.exactness_bound();
    if bound.decidable_through.is_some_and(|t| t < cap) {
        let _ = writeln!(text, "degrees above {top} are not determined: {}", bound.note);
    }
    Ok(Report {
        json: json!({ "command": "betti", "algebra": a.name(), "through": top, "betti": b, "exactness": bound.note }),
        text,
        code: EXIT_OK,
    })
}

fn cohomology(a: &FreeCDGA, cap: u32, degree: Option<u32>) -> Result<Report, Failure> {
    let degrees: Vec<u32> = match degree {
        Some(k) => {
            if !a.exactness_bound().is_decidable(k) {
                return Err(Failure::Error(format!("H^{k} is not determined by this model")));
            }
            vec![k]
        }
        None => (0..=shown_through(a, cap)).collect(),
    };
    let mut text = String::new();
    let mut items = Vec::new();
    for k in degrees {
        let reps: Vec<String> = a.representatives(k).iter().map(|r| a.display(r)).collect();
        let _ = writeln!(
            text,
            "H^{k} (dim {}): {}",
            reps.len(),
            reps.iter().map(|r| format!("[{r}]")).collect::<Vec<_>>().join(", ")
        );
        items.push(json!({ "degree": k, "dim": reps.len(), "representatives": reps }));
    }
    Ok(Report {
        json: json!({ "command": "cohomology", "algebra": a.name(), "degrees": items }),
        text,
        code: EXIT_OK,
    })
}

fn minimal_model(a: &FreeCDGA, n: u32) -> Result<Report, Failure> {
    let r = minimal_model_up_to(a, n, DEFAULT_DEGREE_ONE_ROUNDS).map_err(|e| Failure::Error(e.to_string()))?;
    let model = r.model.clone().with_name(format!("{}_model", a.name()));
    let dsl = emit(&model);
    let mut text = dsl.clone();
    text.push_str("# images:\n");
    let mut images = serde_json::Map::new();
    for (g, img) in model.gens().iter().zip(&r.comparison_text) {
        let _ = writeln!(text, "#   {} -> {}", g.name, img);
        images.insert(g.name.clone(), Value::from(img.clone()));
    }
    let ok = r.report.is_quasi_isomorphism();
    let _ = writeln!(
        text,
        "# comparison map: isomorphism on H^k for k <= {n}, injective on H^{}: {}",
        n + 1,
        yes(ok)
    );
    Ok(Report {
        json: json!({
            "command": "minimal-model",
            "algebra": a.name(),
            "up_to": n,
            "presentation": dsl,
            "generator_counts": r.generator_counts(),
            "images": images,
            "quasi_isomorphism": ok,
        }),
        text,
        code: if ok { EXIT_OK } else { EXIT_ERROR },
    })
}

/// The algebra the formality analysis runs on: the input if it is minimal,
/// otherwise its minimal model through `degree`, which determines exactness
/// through `degree + 1`.
fn analysis_model(a: &FreeCDGA, degree: u32) -> Result<(FreeCDGA, Option<u32>), Failure> {
    let report = a.validate();
    if report.is_minimal() {
        return Ok((a.clone(), None));
    }
    if !report.is_valid() {
        return Err(AnalysisError::NotMinimal(format!("{} is not a valid CDGA", a.name())).into());
    }
    let m = a.formal_dim().ok_or(AnalysisError::MissingDimension)?;
    let r = minimal_model_up_to(a, degree, DEFAULT_DEGREE_ONE_ROUNDS).map_err(|e| Failure::Error(e.to_string()))?;
    let model = r.model.with_name(format!("{}_model", a.name())).with_formal_dim(m);
    Ok((model, Some(degree)))
}

fn model_json(model: &FreeCDGA, truncated: Option<u32>) -> Value {
    match truncated {
        Some(t) => json!({ "presentation": emit(model), "truncated_at": t }),
        None => Value::Null,
    }
}

fn splitting_json(sp: &Splitting) -> Value {
    let p = &sp.presentation;
    let names = |v: &[usize]| v.iter().map(|&g| p.gens().name(g).to_string()).collect::<Vec<_>>();
    let mut c = serde_json::Map::new();
    let mut n = serde_json::Map::new();
    for d in &sp.degrees {
        c.insert(d.degree.to_string(), Value::from(names(&d.c)));
        n.insert(d.degree.to_string(), Value::from(names(&d.n)));
    }
    json!({
        "s": sp.s,
        "presentation": sp.changed_generators.then(|| emit(p)),
        "C": c,
        "N": n,
    })
}

fn massey_json(a: &FreeCDGA, m: &MasseyResult) -> Value {
    json!({
        "classes": m.inputs.iter().map(|x| a.display(x)).collect::<Vec<_>>(),
        "degrees": m.degrees,
        "degree": m.degree,
        "representative": a.display(&m.representative),
        "class": qv(&m.class),
        "indeterminacy": m.indeterminacy.iter().map(|v| qv(v)).collect::<Vec<_>>(),
        "verdict": m.verdict.to_string(),
        "note": m.note,
    })
}

fn certificate_json(a: &FreeCDGA, v: &FormalityVerdict) -> Value {
    match &v.certificate {
        Certificate::Splitting { splitting, phi } => {
            let p = &splitting.presentation;
            let mut map = serde_json::Map::new();
            for (g, e) in phi {
                map.insert(g.clone(), Value::from(p.display(e)));
            }
            let mut doc = splitting_json(splitting);
            doc["kind"] = json!("splitting");
            doc["phi"] = Value::Object(map);
            doc
        }
        Certificate::Witness {
            s,
            splitting,
            witness,
            robustness,
            massey,
        } => {
            let mut doc = splitting_json(splitting);
            doc["kind"] = json!("witness");
            doc["s"] = json!(s);
            doc["witness"] = json!(witness.text);
            doc["degree"] = json!(witness.degree);
            doc["class"] = qv(&witness.class);
            doc["robustness"] = json!({
                "robust": robustness.robust,
                "coverage": coverage_label(robustness.coverage),
                "perturbations": robustness
                    .perturbations
                    .iter()
                    .map(|(d, c)| json!({ "change": d, "class": qv(c) }))
                    .collect::<Vec<_>>(),
                "note": robustness.note,
            });
            doc["massey"] = massey.as_ref().map_or(Value::Null, |m| massey_json(a, m));
            doc
        }
        Certificate::Massey { s, result } => {
            let mut doc = massey_json(a, result);
            doc["kind"] = json!("massey");
            doc["s"] = json!(s);
            doc
        }
        Certificate::Undecided { reason, witness } => json!({
            "kind": "undecided",
            "reason": reason,
            "witness": witness.as_ref().map(|w| w.text.clone()),
        }),
    }
}

fn coverage_label(c: Coverage) -> &'static str {
    match c {
        Coverage::Complete => "complete",
        Coverage::LinearOnly => "linear-only",
    }
}

fn verdict_json(a: &FreeCDGA, v: &FormalityVerdict) -> Value {
    json!({
        "s": v.s,
        "status": v.status.to_string(),
        "certificate": certificate_json(a, v),
        "notes": v.notes,
    })
}

fn verdict_text(a: &FreeCDGA, v: &FormalityVerdict, out: &mut String) {
    let _ = writeln!(out, "s = {}: {}", v.s, v.status);
    match &v.certificate {
        Certificate::Splitting { splitting, .. } => {
            for line in splitting.describe().lines() {
                let _ = writeln!(out, "  {line}");
            }
            let _ = writeln!(out, "  phi: closed generators to their classes, N to 0");
        }
        Certificate::Witness {
            s,
            splitting,
            witness,
            robustness,
            massey,
        } => {
            for line in splitting.describe().lines() {
                let _ = writeln!(out, "  {line}");
            }
            let _ = writeln!(
                out,
                "  witness (s = {s}): {} in H^{}, class {}",
                witness.text,
                witness.degree,
                fmt_vec(&witness.class)
            );
            let _ = writeln!(
                out,
                "  robustness ({}): {}",
                coverage_label(robustness.coverage),
                robustness.note
            );
            for (d, c) in &robustness.perturbations {
                let _ = writeln!(out, "    {d}: class changes by {}", fmt_vec(c));
            }
            if let Some(m) = massey {
                let _ = writeln!(out, "  Massey: {}", m.describe(a));
            }
        }
        Certificate::Massey { s, result } => {
            let _ = writeln!(out, "  Massey (windows for s = {s}): {}", result.describe(a));
        }
        Certificate::Undecided { reason, witness } => {
            let _ = writeln!(out, "  reason: {reason}");
            if let Some(w) = witness {
                let _ = writeln!(out, "  candidate witness: {}", w.text);
            }
        }
    }
    for n in &v.notes {
        let _ = writeln!(out, "  note: {n}");
    }
}

fn status_code(s: FormalityStatus) -> i32 {
    if s == FormalityStatus::Undecided {
        EXIT_UNDECIDED
    } else {
        EXIT_OK
    }
}

fn formality_cmd(input: &FreeCDGA, s: Option<u32>, strict: bool) -> Result<Report, Failure> {
    let m = input.formal_dim().ok_or(AnalysisError::MissingDimension)?;
    let (a, truncated) = analysis_model(input, s.unwrap_or(m.div_ceil(2).saturating_sub(1)) + 1)?;
    let a = &a;
    let mut text = String::new();
    if let Some(t) = truncated {
        let _ = writeln!(
            text,
            "{} is not minimal; analyzing its minimal model through degree {t} ({} generators)",
            input.name(),
            a.arity()
        );
    }
    if let Some(s) = s {
        let v = s_formality(a, s)?;
        let _ = writeln!(text, "s-formality of {}", input.name());
        verdict_text(a, &v, &mut text);
        return Ok(Report {
            json: json!({
                "command": "formality",
                "algebra": input.name(),
                "model": model_json(a, truncated),
                "verdict": verdict_json(a, &v),
            }),
            text,
            code: status_code(v.status),
        });
    }
    let r = formality(a, strict)?;
    let overall = match r.status() {
        FormalityStatus::SFormal => "formal",
        FormalityStatus::NotSFormal => "NOT formal",
        FormalityStatus::Undecided => "UNDECIDED",
    };
    let _ = writeln!(
        text,
        "formality of {} (formal dimension {}): {overall}",
        input.name(),
        r.m
    );
    verdict_text(a, &r.verdict, &mut text);
    if let Some(sv) = &r.strict {
        let _ = writeln!(text, "strict check:");
        verdict_text(a, sv, &mut text);
        let _ = writeln!(text, "consistent: {}", yes(r.consistent()));
    }
    let code = if !r.consistent() {
        EXIT_ERROR
    } else {
        status_code(r.status())
    };
    Ok(Report {
        json: json!({
            "command": "formality",
            "algebra": input.name(),
            "model": model_json(a, truncated),
            "formal_dim": r.m,
            "formal": match r.status() {
                FormalityStatus::SFormal => Value::Bool(true),
                FormalityStatus::NotSFormal => Value::Bool(false),
                FormalityStatus::Undecided => Value::Null,
            },
            "verdict": verdict_json(a, &r.verdict),
            "strict": r.strict.as_ref().map(|v| verdict_json(a, v)),
            "consistent": r.consistent(),
        }),
        text,
        code,
    })
}

fn lefschetz(a: &FreeCDGA, s: Option<u32>) -> Result<Report, Failure> {
    let n = a.formal_dim().ok_or(AnalysisError::MissingDimension)? / 2;
    let s = s.unwrap_or(n.saturating_sub(1));
    let r = s_lefschetz(a, s)?;
    let parity = parity_obstruction(a)?;
    let mut text = String::new();
    let w = a.omega().expect("checked by s_lefschetz");
    let _ = writeln!(
        text,
        "lefschetz {}: omega = {}, n = {n}, s = {s}",
        a.name(),
        a.display(w)
    );
    let mut degs = Vec::new();
    for d in &r.degrees {
        let kernel: Vec<String> = d.kernel.iter().map(|k| format!("[{}]", a.display(k))).collect();
        let _ = writeln!(
            text,
            "  i = {}: [omega]^{}: H^{} -> H^{} rank {} ({} -> {}) {}{}",
            d.degree,
            d.power,
            d.degree,
            2 * n - d.degree,
            d.rank,
            d.source_dim,
            d.target_dim,
            if d.iso { "iso" } else { "FAILS" },
            if kernel.is_empty() {
                String::new()
            } else {
                format!("; kernel {}", kernel.join(", "))
            }
        );
        degs.push(json!({
            "i": d.degree,
            "power": d.power,
            "source_dim": d.source_dim,
            "target_dim": d.target_dim,
            "rank": d.rank,
            "iso": d.iso,
            "kernel": d.kernel.iter().map(|k| a.display(k)).collect::<Vec<_>>(),
        }));
    }
    match r.first_failure() {
        None => {
            let _ = writeln!(text, "{s}-Lefschetz: yes");
        }
        Some(i) => {
            let _ = writeln!(text, "{s}-Lefschetz: no (fails at i = {i})");
        }
    }
    for (k, b) in &parity {
        let _ = writeln!(text, "parity obstruction: b_{k} = {b} is odd, so hard Lefschetz fails");
    }
    Ok(Report {
        json: json!({
            "command": "lefschetz",
            "algebra": a.name(),
            "n": n,
            "s": s,
            "holds": r.holds(),
            "first_failure": r.first_failure(),
            "degrees": degs,
            "parity_obstruction": parity.iter().map(|&(k, b)| json!({ "degree": k, "betti": b })).collect::<Vec<_>>(),
        }),
        text,
        code: EXIT_OK,
    })
}

fn massey(a: &FreeCDGA, classes: &str) -> Result<Report, Failure> {
    let mut inputs = Vec::new();
    for part in classes.split(';') {
        let e = parse_poly(part.trim(), a.gens()).map_err(|e| Failure::Usage(format!("class `{part}`: {e}")))?;
        inputs.push(e);
    }
    if inputs.len() < 3 {
        return Err(Failure::Usage("a Massey product needs at least three classes".into()));
    }
    let r = massey_product(a, &inputs)?;
    let text = format!("{}\n", r.describe(a));
    let code = if r.verdict == MasseyVerdict::Inconclusive {
        EXIT_UNDECIDED
    } else {
        EXIT_OK
    };
    let mut doc = massey_json(a, &r);
    doc["command"] = json!("massey");
    doc["algebra"] = json!(a.name());
    Ok(Report { json: doc, text, code })
}

fn massey_scan(a: &FreeCDGA, s: u32, length: usize) -> Result<Report, Failure> {
    let scan = massey_obstruction_scan(a, s, length)?;
    let mut text = format!(
        "Massey scan of {} for s = {s}, lengths 3..={length}: {} tuples, {} defined, {} nonvanishing, {} inconclusive\n",
        a.name(),
        scan.examined,
        scan.defined,
        scan.hits.len(),
        scan.inconclusive
    );
    for h in &scan.hits {
        let _ = writeln!(text, "  {}", h.describe(a));
    }
    Ok(Report {
        json: json!({
            "command": "massey",
            "algebra": a.name(),
            "scan": s,
            "length": length,
            "examined": scan.examined,
            "defined": scan.defined,
            "inconclusive": scan.inconclusive,
            "hits": scan.hits.iter().map(|h| massey_json(a, h)).collect::<Vec<_>>(),
        }),
        text,
        code: EXIT_OK,
    })
}

fn classes_text(a: &FreeCDGA, xs: &[Element]) -> String {
    if xs.is_empty() {
        return "none".into();
    }
    xs.iter()
        .map(|x| format!("[{}]", a.display(x)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn donaldson(a: &FreeCDGA, s: Option<u32>, require: bool) -> Result<Report, Failure> {
    let n = a.formal_dim().ok_or(AnalysisError::MissingDimension)? / 2;
    let s = s.unwrap_or(n.saturating_sub(2));
    let mode = if require {
        DonaldsonMode::RequireLefschetz
    } else {
        DonaldsonMode::ReportOnly
    };
    let r = donaldson_quotient(a, s, mode)?;
    let mut text = format!("donaldson {}: Z has dimension {}\n", a.name(), 2 * n - 2);
    for (i, b) in &r.low_degrees {
        let _ = writeln!(text, "  H^{i}(Z) = H^{i}(M): dim {b}");
    }
    let _ = writeln!(
        text,
        "  H^{}(Z) contains H^{}(M): dim >= {}; further classes unknown",
        n - 1,
        n - 1,
        r.middle_lower_bound
    );
    let mut degs = Vec::new();
    for d in &r.degrees {
        let _ = writeln!(
            text,
            "  H^{}(Z) = H^{}(M)/ker[omega]: dim {} (b_{} = {}); kernel {}; basis {}; Lefschetz at i = {}: {}",
            d.p,
            d.p,
            d.quotient_dim(),
            d.p + 2,
            d.expected_dim,
            classes_text(a, &d.kernel),
            classes_text(a, &d.quotient_basis),
            d.i,
            if d.lefschetz_holds {
                "holds"
            } else {
                "FAILS (reported only)"
            }
        );
        degs.push(json!({
            "i": d.i,
            "p": d.p,
            "betti": d.betti,
            "dim": d.quotient_dim(),
            "expected_dim": d.expected_dim,
            "kernel": d.kernel.iter().map(|k| a.display(k)).collect::<Vec<_>>(),
            "basis": d.quotient_basis.iter().map(|k| a.display(k)).collect::<Vec<_>>(),
            "lefschetz_holds": d.lefschetz_holds,
        }));
    }
    let transport = if s <= n.saturating_sub(2) {
        let (model, _) = analysis_model(a, s + 1)?;
        let v = s_formality(&model, s)?;
        let t = transport_formality(&v, n);
        let line = match &t {
            TransportStatement::Formal => "Z is formal".to_string(),
            TransportStatement::SFormal(k) => format!("Z is {k}-formal"),
            TransportStatement::NoConclusion(why) => format!("no conclusion ({why})"),
        };
        let _ = writeln!(text, "  formality of Z: {line}");
        Value::from(line)
    } else {
        Value::Null
    };
    Ok(Report {
        json: json!({
            "command": "donaldson",
            "algebra": a.name(),
            "n": n,
            "s": s,
            "low_degrees": r.low_degrees.iter().map(|&(i, b)| json!({ "degree": i, "dim": b })).collect::<Vec<_>>(),
            "middle": { "degree": n - 1, "at_least": r.middle_lower_bound, "unknown_classes": true },
            "degrees": degs,
            "transport": transport,
        }),
        text,
        code: EXIT_OK,
    })
}

/// Replays every certificate in a structured `formality` report against the
/// input it was produced from. Returns the statuses of the main verdict and,
/// if present, the strict check.
pub fn replay_report(input: &FreeCDGA, report: &Value) -> Result<Vec<FormalityStatus>, String> {
    let model = &report["model"];
    let analyzed = if model.is_null() {
        input.clone()
    } else {
        let text = model["presentation"].as_str().ok_or("model without presentation")?;
        let t = model["truncated_at"].as_u64().ok_or("model without truncation")? as u32;
        parse_algebra(text).map_err(|e| e.to_string())?.with_truncation(t)
    };
    let mut out = Vec::new();
    for key in ["verdict", "strict"] {
        let v = &report[key];
        if v.is_null() {
            continue;
        }
        let status = replay_certificate(&analyzed, &v["certificate"])?;
        if status.to_string() != v["status"].as_str().unwrap_or_default() {
            return Err(format!(
                "{key}: certificate supports {status}, report says {}",
                v["status"]
            ));
        }
        out.push(status);
    }
    Ok(out)
}

/// Re-checks a certificate from a structured `formality` report against an
/// algebra and returns the status it supports.
pub fn replay_certificate(a: &FreeCDGA, cert: &Value) -> Result<FormalityStatus, String> {
    let s = cert["s"].as_u64().map(|s| s as u32);
    let kind = cert["kind"].as_str().ok_or("certificate has no kind")?;
    let presentation = match cert.get("presentation").and_then(Value::as_str) {
        Some(text) => parse_algebra(text).map_err(|e| e.to_string())?,
        None => a.clone(),
    };
    let err = |e: AnalysisError| e.to_string();
    match kind {
        "splitting" => {
            let s = s.ok_or("missing s")?;
            let sp = canonical_splitting(&presentation, s).map_err(err)?;
            if splitting_json(&sp)["N"] != cert["N"] || splitting_json(&sp)["C"] != cert["C"] {
                return Err("splitting differs".into());
            }
            let search = search_ideal_witness(&sp).map_err(err)?;
            if search.witness.is_some() || !search.undecided_degrees.is_empty() {
                return Err("the ideal has a closed non-exact element".into());
            }
            Ok(FormalityStatus::SFormal)
        }
        "witness" => {
            let s = s.ok_or("missing s")?;
            let sp = canonical_splitting(&presentation, s).map_err(err)?;
            let text = cert["witness"].as_str().ok_or("missing witness")?;
            let w = parse_poly(text, presentation.gens()).map_err(|e| e.to_string())?;
            let p = &sp.presentation;
            let k = p.degree_of(&w).map_err(|e| e.to_string())?;
            if !p.is_closed(&w).map_err(|e| e.to_string())? || p.is_exact(&w, k).map_err(|e| e.to_string())? {
                return Err("witness is not a closed non-exact element".into());
            }
            let r = witness_robustness(&sp, &w).map_err(err)?;
            if !r.robust {
                return Err("witness is not robust".into());
            }
            if r.coverage == Coverage::Complete {
                return Ok(FormalityStatus::NotSFormal);
            }
            let m = &cert["massey"];
            if m.is_null() {
                return Err("partial robustness without a Massey product".into());
            }
            replay_massey(a, s, m)
        }
        "massey" => replay_massey(a, s.ok_or("missing s")?, cert),
        "undecided" => Ok(FormalityStatus::Undecided),
        other => Err(format!("unknown certificate kind {other}")),
    }
}

fn replay_massey(a: &FreeCDGA, s: u32, m: &Value) -> Result<FormalityStatus, String> {
    let classes = m["classes"].as_array().ok_or("missing classes")?;
    let mut inputs = Vec::new();
    for c in classes {
        let text = c.as_str().ok_or("class is not text")?;
        inputs.push(parse_poly(text, a.gens()).map_err(|e| e.to_string())?);
    }
    let r = massey_product(a, &inputs).map_err(|e| e.to_string())?;
    if !scan_windows_ok(&r.degrees, s) {
        return Err("degrees fall outside the obstruction windows".into());
    }
    if r.verdict != MasseyVerdict::Nonvanishing {
        return Err(format!("Massey product is {}", r.verdict));
    }
    Ok(FormalityStatus::NotSFormal)
}
