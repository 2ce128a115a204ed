use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use hlbc::alcove::{admissible_pairs, schwer_evaluate, EnumOptions};
use hlbc::chains::{validate_chain, LambdaChain};
use hlbc::characters::{dimension, orbit_sum, weyl_character};
use hlbc::fillings::{kn_fillings, Filling};
use hlbc::formula::{
    builtin_weights, check_hhl, compressed_fiber, identity_suite, tableau_evaluate, tableau_terms,
    verify_compression, CompressionReport, FiberReport, IdentityCheck, Instance, VerifyOptions,
};
use hlbc::weight::DominantWeight;
use hlbc::weyl::CartanType;
use hlbc::Error;
use serde::Serialize;
use serde_json::json;

use crate::{Check, Command, Format, Method, OptionalWeightArgs, TypeArg, WeightArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success = 0,
    Failure = 1,
}

/// Errors that map to exit code 2.
#[derive(Debug)]
pub enum CliError {
    Lib(Error),
    Io(std::io::Error),
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Usage(s) => write!(f, "{s}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn build_weight(
    t: TypeArg,
    n: usize,
    lambda: Option<&[usize]>,
    alpha: Option<&[usize]>,
) -> CliResult<DominantWeight> {
    let weight = match (t, lambda, alpha) {
        (TypeArg::C, Some(parts), None) => DominantWeight::type_c(n, parts)?,
        (TypeArg::B, Some(mu), None) => DominantWeight::type_b_partition(n, mu)?,
        (TypeArg::B, None, Some(alpha)) => DominantWeight::type_b_coefficients(n, alpha)?,
        (TypeArg::C, None, Some(alpha)) => {
            if alpha.len() != n {
                return Err(CliError::Usage(format!(
                    "expected {n} coefficients, got {}",
                    alpha.len()
                )));
            }
            let parts: Vec<usize> = (0..n).map(|i| alpha[i..].iter().sum()).collect();
            DominantWeight::type_c(n, &parts)?
        }
        _ => {
            return Err(CliError::Usage(
                "give exactly one of --lambda and --alpha".into(),
            ))
        }
    };
    Ok(weight)
}

fn weight_of(args: &WeightArgs) -> CliResult<DominantWeight> {
    build_weight(
        args.cartan,
        args.n,
        args.lambda.as_deref(),
        args.alpha.as_deref(),
    )
}

fn instance_of(args: &WeightArgs) -> CliResult<Instance> {
    Ok(Instance::new(&weight_of(args)?)?)
}

fn print_json(value: &impl Serialize) {
    println!("{}", serde_json::to_string(value).expect("serializable"));
}

fn write_lines<T: Serialize>(path: &Path, items: impl IntoIterator<Item = T>) -> CliResult<()> {
    let mut out = BufWriter::new(File::create(path)?);
    for item in items {
        serde_json::to_writer(&mut out, &item).map_err(std::io::Error::from)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

pub fn run(command: Command, max_pairs: usize) -> CliResult<Outcome> {
    let options = EnumOptions { max_pairs };
    match command {
        Command::Compute {
            weight,
            method,
            format,
            emit_pairs,
            emit_fillings,
        } => compute(
            &instance_of(&weight)?,
            options,
            method,
            format,
            emit_pairs.as_deref(),
            emit_fillings.as_deref(),
        ),
        Command::Verify {
            weight,
            checks,
            format,
        } => verify(&weight, options, &checks, format),
        Command::Kn {
            weight,
            format,
            emit_fillings,
        } => kn(&instance_of(&weight)?, format, emit_fillings.as_deref()),
        Command::DumpChain { weight } => {
            print!(
                "{}",
                LambdaChain::for_dominant(&weight_of(&weight)?)?.dump()
            );
            Ok(Outcome::Success)
        }
        Command::Fibers {
            weight,
            format,
            compressed,
        } => fibers(
            &instance_of(&weight)?,
            options,
            format,
            compressed.as_deref(),
        ),
    }
}

fn compute(
    inst: &Instance,
    options: EnumOptions,
    method: Method,
    format: Format,
    emit_pairs: Option<&Path>,
    emit_fillings: Option<&Path>,
) -> CliResult<Outcome> {
    if let Some(path) = emit_pairs {
        write_lines(path, admissible_pairs(inst.chain(), options)?)?;
    }
    if let Some(path) = emit_fillings {
        write_lines(path, tableau_terms(inst)?.into_iter().map(|t| t.filling))?;
    }
    let tableau = match method {
        Method::Tableau | Method::Both => Some(tableau_evaluate(inst)?),
        Method::Alcove => None,
    };
    let alcove = match method {
        Method::Alcove | Method::Both => Some(schwer_evaluate(inst.chain(), options)?),
        Method::Tableau => None,
    };
    let agree = match (&tableau, &alcove) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    let poly = tableau
        .as_ref()
        .or(alcove.as_ref())
        .expect("one method ran");
    let weight = inst.weight();
    match format {
        Format::Text => {
            println!("{poly}");
            if let Some(agree) = agree {
                println!("methods agree: {agree}");
                if !agree {
                    println!("alcove: {}", alcove.as_ref().expect("ran"));
                }
            }
        }
        Format::Json => print_json(&json!({
            "type": weight.cartan().to_string(),
            "n": weight.n(),
            "lambda": weight.parts(),
            "method": format!("{method:?}").to_lowercase(),
            "terms": poly.to_json(),
            "agree": agree,
        })),
    }
    Ok(if agree == Some(false) {
        Outcome::Failure
    } else {
        Outcome::Success
    })
}

#[derive(Serialize)]
struct CheckResult {
    name: String,
    passed: bool,
    cases: usize,
    detail: String,
    first_failure: Option<String>,
}

impl CheckResult {
    fn from_identity(check: IdentityCheck) -> CheckResult {
        CheckResult {
            passed: check.passed(),
            detail: format!("{} cases", check.cases),
            name: check.name,
            cases: check.cases,
            first_failure: check.first_failure,
        }
    }
}

#[derive(Serialize)]
struct VerifyReport {
    weight: String,
    passed: bool,
    checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fillings: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pairs: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    factor: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fibers: Option<Vec<FiberReport>>,
}

fn verify(
    args: &OptionalWeightArgs,
    options: EnumOptions,
    checks: &[Check],
    format: Format,
) -> CliResult<Outcome> {
    let weights = if args.builtin {
        builtin_weights()
    } else {
        let (Some(t), Some(n)) = (args.cartan, args.n) else {
            return Err(CliError::Usage("need -t and -n, or --builtin".into()));
        };
        vec![build_weight(
            t,
            n,
            args.lambda.as_deref(),
            args.alpha.as_deref(),
        )?]
    };
    let mut checks = checks.to_vec();
    checks.sort();
    checks.dedup();
    let mut all_passed = true;
    for weight in weights {
        let report = verify_one(&weight, options, &checks)?;
        all_passed &= report.passed;
        match format {
            Format::Json => print_json(&report),
            Format::Text => {
                println!("{}", report.weight);
                for c in &report.checks {
                    println!(
                        "  {}: {} ({})",
                        c.name,
                        if c.passed { "pass" } else { "FAIL" },
                        c.detail
                    );
                    if let Some(w) = &c.first_failure {
                        println!("    first failure: {w}");
                    }
                }
            }
        }
    }
    Ok(if all_passed {
        Outcome::Success
    } else {
        Outcome::Failure
    })
}

fn witness<T: std::fmt::Debug>(items: &[T]) -> Option<String> {
    items.first().map(|x| format!("{x:?}"))
}

fn verify_one(
    weight: &DominantWeight,
    options: EnumOptions,
    checks: &[Check],
) -> CliResult<VerifyReport> {
    let inst = Instance::new(weight)?;
    let needs_report = checks
        .iter()
        .any(|c| matches!(c, Check::Fibers | Check::Weight));
    let compression: Option<CompressionReport> = if needs_report {
        let opts = VerifyOptions {
            enumeration: options,
            check_levels: checks.contains(&Check::Weight),
        };
        Some(verify_compression(&inst, opts)?)
    } else {
        None
    };
    let mut results = Vec::new();
    for check in checks {
        let result = match check {
            Check::Chain => {
                let res = validate_chain(inst.chain().roots(), weight);
                CheckResult {
                    name: "chain".into(),
                    passed: res.is_ok(),
                    cases: 1,
                    detail: format!("{} roots", inst.chain().len()),
                    first_failure: res.err().map(|v| format!("{v:?}")),
                }
            }
            Check::Fibers => {
                let r = compression.as_ref().expect("computed");
                let bad: Vec<&FiberReport> = r.fibers.iter().filter(|f| !f.matches).collect();
                let first_failure = witness(&bad)
                    .or_else(|| {
                        witness(&r.unexpected_fillings).map(|f| format!("unexpected filling {f}"))
                    })
                    .or_else(|| {
                        witness(&r.unreached_fillings).map(|f| format!("unreached filling {f}"))
                    });
                CheckResult {
                    name: "fibers".into(),
                    passed: first_failure.is_none(),
                    cases: r.fibers.len(),
                    detail: format!(
                        "{} fillings, {} pairs, factor {:.4}, {} mismatched fibers",
                        r.fillings,
                        r.pairs,
                        r.factor,
                        bad.len()
                    ),
                    first_failure,
                }
            }
            Check::Weight => {
                let r = compression.as_ref().expect("computed");
                let first_failure = witness(&r.weight_failures)
                    .map(|p| format!("content differs from weight: {p}"))
                    .or_else(|| witness(&r.level_failures).map(|p| format!("level mismatch: {p}")));
                CheckResult {
                    name: "weight".into(),
                    passed: first_failure.is_none(),
                    cases: r.pairs,
                    detail: format!("{} pairs, contents and wall levels", r.pairs),
                    first_failure,
                }
            }
            Check::Character => character_check(&inst)?,
            Check::Hhl => {
                let mut r = CheckResult::from_identity(check_hhl(&inst)?);
                if weight.cartan() == CartanType::B {
                    r.detail = "type C only; skipped".into();
                }
                r
            }
            Check::Identities => {
                let suite = identity_suite(weight.n().min(3), 10_000, 1)?;
                let cases = suite.iter().map(|c| c.cases).sum();
                let failed = suite.into_iter().find(|c| !c.passed());
                CheckResult {
                    name: "identities".into(),
                    passed: failed.is_none(),
                    cases,
                    detail: format!("{cases} cases"),
                    first_failure: failed
                        .map(|c| format!("{}: {}", c.name, c.first_failure.unwrap_or_default())),
                }
            }
        };
        results.push(result);
    }
    Ok(VerifyReport {
        weight: weight.to_string(),
        passed: results.iter().all(|r| r.passed),
        checks: results,
        fillings: compression.as_ref().map(|r| r.fillings),
        pairs: compression.as_ref().map(|r| r.pairs),
        factor: compression.as_ref().map(|r| r.factor),
        fibers: compression.map(|r| r.fibers),
    })
}

fn character_check(inst: &Instance) -> CliResult<CheckResult> {
    let weight = inst.weight();
    let p = tableau_evaluate(inst)?;
    let mut failures = Vec::new();
    if p.specialize_t(0) != weyl_character(weight)? {
        failures.push("t = 0 differs from the Weyl character".to_string());
    }
    if p.specialize_t(1) != orbit_sum(weight)? {
        failures.push("t = 1 differs from the orbit sum".to_string());
    }
    let kn = kn_fillings(inst.shape())?.len() as u128;
    let dim = dimension(weight)?;
    if kn != dim {
        failures.push(format!("{kn} fillings with N = 0 but dimension {dim}"));
    }
    Ok(CheckResult {
        name: "character".into(),
        passed: failures.is_empty(),
        cases: 3,
        detail: format!("dimension {dim}"),
        first_failure: failures.into_iter().next(),
    })
}

fn kn(inst: &Instance, format: Format, emit_fillings: Option<&Path>) -> CliResult<Outcome> {
    let fillings = kn_fillings(inst.shape())?;
    let dim = dimension(inst.weight())?;
    let matches = fillings.len() as u128 == dim;
    if let Some(path) = emit_fillings {
        write_lines(path, &fillings)?;
    }
    match format {
        Format::Text => println!(
            "{}: {} fillings with N = 0, dimension {dim}",
            inst.weight(),
            fillings.len()
        ),
        Format::Json => print_json(&json!({
            "weight": inst.weight().to_string(),
            "count": fillings.len(),
            "dimension": dim,
            "match": matches,
        })),
    }
    Ok(if matches {
        Outcome::Success
    } else {
        Outcome::Failure
    })
}

fn fibers(
    inst: &Instance,
    options: EnumOptions,
    format: Format,
    compressed: Option<&str>,
) -> CliResult<Outcome> {
    if let Some(text) = compressed {
        let target: Filling = serde_json::from_str(text)
            .map_err(|e| CliError::Usage(format!("bad --compressed value: {e}")))?;
        let fiber = compressed_fiber(inst, &target)?;
        match format {
            Format::Json => print_json(&fiber),
            Format::Text => {
                for (pair, roots) in fiber.pairs.iter().zip(&fiber.roots) {
                    println!(
                        "w = {}  J = {:?}  T = ({})",
                        pair.w,
                        pair.positions,
                        roots.join(",")
                    );
                }
                println!("sum: {}", fiber.sum);
                println!("single product t^a(1-t)^b: {}", fiber.factored);
            }
        }
        return Ok(Outcome::Success);
    }
    let report = verify_compression(
        inst,
        VerifyOptions {
            enumeration: options,
            check_levels: false,
        },
    )?;
    match format {
        Format::Json => print_json(&report.fibers),
        Format::Text => {
            for f in &report.fibers {
                println!(
                    "{}  size {}  sum {}  N {} des {}  {}",
                    serde_json::to_string(&f.filling).expect("serializable"),
                    f.size,
                    f.sum,
                    f.n,
                    f.des,
                    if f.matches { "ok" } else { "MISMATCH" }
                );
            }
            println!(
                "{} fillings, {} pairs, factor {:.4}",
                report.fillings, report.pairs, report.factor
            );
        }
    }
    Ok(if report.passed() {
        Outcome::Success
    } else {
        Outcome::Failure
    })
}
