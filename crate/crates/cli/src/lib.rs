//! Command-line front end: argument handling, input loading and report
//! emission. [`run_command`] is the whole program minus process exit.

pub mod args;
pub mod bfile;
pub mod document;

use std::ffi::OsString;
use std::io::Read;
use std::path::Path;

use clap::error::ErrorKind as ClapKind;
use clap::Parser;
use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use dold_core::decimal::parse_int;
use dold_core::dold::{
    classify_with, fail_report_view, fail_report_with_known, power_fail_bound, power_report, scan,
    table_bounds, AnalysisOptions, DoldError, UpperBound,
};
use dold_core::factorint::{factor_over_z_with, root_density, FactorError, FactorOptions};
use dold_core::numth::radical_uint;
use dold_core::polyring::{discriminant, IntPoly};
use dold_core::recurrence::{
    convenient_check, make_recurrence, radical_witness_family, structure_test_with,
    RecurrenceError, RecurrenceSpec, SequenceView, DEFAULT_MAX_BITS, DEFAULT_MAX_INDEX,
};

use args::{Cli, Command, SpecArgs};
use bfile::parse_bfile;
use document::{EffectiveOptions, ErrorInfo, ErrorKind, ReportDocument, Status, SCHEMA_VERSION};

const DEFAULT_HORIZON: usize = 200;
const FAMILY_HORIZON: usize = 50;
/// Largest base index `n^t` reached by default in `power`.
const POWER_INDEX_BUDGET: u64 = 4096;
const DEFAULT_PRIME_BOUND: u64 = 1000;

/// Exit code and the text to print on standard output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

#[derive(Debug)]
struct CliError {
    kind: ErrorKind,
    message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            kind: ErrorKind::Input,
            message: message.into(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        CliError {
            kind: ErrorKind::Usage,
            message: message.into(),
        }
    }
}

impl From<DoldError> for CliError {
    fn from(e: DoldError) -> Self {
        let kind = if e.is_guard() {
            ErrorKind::Guard
        } else {
            ErrorKind::Input
        };
        CliError {
            kind,
            message: e.to_string(),
        }
    }
}

impl From<RecurrenceError> for CliError {
    fn from(e: RecurrenceError) -> Self {
        DoldError::from(e).into()
    }
}

impl From<FactorError> for CliError {
    fn from(e: FactorError) -> Self {
        CliError::input(e.to_string())
    }
}

type CmdResult = Result<Value, CliError>;

struct Context {
    options: EffectiveOptions,
    input: Option<Value>,
    warnings: Vec<String>,
}

impl Context {
    fn analysis(&mut self, default_horizon: usize) -> AnalysisOptions {
        let horizon = *self.options.horizon.get_or_insert(default_horizon);
        AnalysisOptions {
            horizon,
            prime_bound: self.options.prime_bound,
            seed: self.options.seed,
            max_bits: self.options.max_bits,
            max_index: self.options.max_index,
        }
    }

    fn factor(&self) -> FactorOptions {
        FactorOptions {
            seed: self.options.seed,
        }
    }

    fn view(&self, spec: &RecurrenceSpec) -> SequenceView {
        spec.view()
            .with_limits(self.options.max_bits, self.options.max_index)
    }

    fn echo<T: Serialize>(&mut self, v: &T) {
        self.input = Some(to_value(v));
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

fn wants_human(argv: &[OsString]) -> bool {
    argv.iter()
        .rev()
        .find_map(|a| match a.to_str() {
            Some("--human") => Some(true),
            Some("--json") => Some(false),
            _ => None,
        })
        .unwrap_or(false)
}

fn command_guess(argv: &[OsString]) -> String {
    const NAMES: [&str; 9] = [
        "gen",
        "check",
        "fail",
        "classify",
        "power",
        "family",
        "witness",
        "density",
        "bfile-check",
    ];
    argv.iter()
        .skip(1)
        .filter_map(|a| a.to_str())
        .find(|a| NAMES.contains(a))
        .unwrap_or("")
        .to_string()
}

fn emit(doc: &ReportDocument, human: bool) -> Outcome {
    let output = if human {
        doc.to_human()
    } else {
        doc.to_json() + "\n"
    };
    Outcome {
        code: doc.exit_code,
        output,
    }
}

/// Parses `argv` (program name first), runs the subcommand and renders the
/// report.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let human = wants_human(&argv);
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ClapKind::DisplayHelp | ClapKind::DisplayVersion) => {
            return Outcome {
                code: 0,
                output: e.render().to_string(),
            };
        }
        Err(e) => {
            let doc = error_document(
                command_guess(&argv),
                EffectiveOptions::default(),
                None,
                Vec::new(),
                CliError::usage(e.render().to_string().trim_end()),
            );
            return emit(&doc, human);
        }
    };
    let mut ctx = Context {
        options: EffectiveOptions {
            horizon: cli.horizon,
            max_bits: cli.max_bits.unwrap_or(DEFAULT_MAX_BITS),
            max_index: DEFAULT_MAX_INDEX,
            prime_bound: cli.prime_bound.unwrap_or(DEFAULT_PRIME_BOUND),
            seed: cli.seed.unwrap_or(0),
        },
        input: None,
        warnings: Vec::new(),
    };
    let name = cli.command.name().to_string();
    let result = dispatch(&cli.command, &mut ctx);
    let doc = match result {
        Ok(result) => ReportDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            command: name,
            status: Status::Ok,
            exit_code: 0,
            options: ctx.options,
            input: ctx.input,
            result: Some(result),
            warnings: ctx.warnings,
            error: None,
        },
        Err(e) => error_document(name, ctx.options, ctx.input, ctx.warnings, e),
    };
    emit(&doc, human)
}

fn error_document(
    command: String,
    options: EffectiveOptions,
    input: Option<Value>,
    warnings: Vec<String>,
    e: CliError,
) -> ReportDocument {
    ReportDocument {
        schema_version: SCHEMA_VERSION.to_string(),
        command,
        status: Status::Error,
        exit_code: e.kind.exit_code(),
        options,
        input,
        result: None,
        warnings,
        error: Some(ErrorInfo {
            kind: e.kind,
            message: e.message,
        }),
    }
}

fn dispatch(cmd: &Command, ctx: &mut Context) -> CmdResult {
    match cmd {
        Command::Gen { input, count } => gen(ctx, input, *count),
        Command::Check { input } => check(ctx, input),
        Command::Fail { input, known } => fail(ctx, input, known),
        Command::Classify { input } => classify(ctx, input),
        Command::Power { input, t, known } => power(ctx, input, *t, known),
        Command::Family { delta } => family(ctx, *delta),
        Command::Witness { input } => witness(ctx, input),
        Command::Density { input, poly, bound } => density(ctx, input, poly.as_deref(), *bound),
        Command::BfileCheck { file, known } => bfile_check(ctx, file, known),
    }
}

fn parse_list(flag: &str, items: &[String]) -> Result<Vec<BigInt>, CliError> {
    items
        .iter()
        .map(|s| parse_int(s).map_err(|e| CliError::input(format!("--{flag}: {e}"))))
        .collect()
}

fn read_source(path: &Path) -> Result<String, CliError> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::input(format!("standard input: {e}")))?;
    } else {
        text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}

fn load_spec(ctx: &mut Context, input: &SpecArgs) -> Result<RecurrenceSpec, CliError> {
    let spec = match (&input.spec, &input.coeffs, &input.initial) {
        (Some(path), _, _) => {
            let text = read_source(path)?;
            serde_json::from_str::<RecurrenceSpec>(&text)
                .map_err(|e| CliError::input(format!("recurrence document: {e}")))?
        }
        (None, Some(c), Some(i)) => {
            make_recurrence(parse_list("coeffs", c)?, parse_list("initial", i)?)?
        }
        _ => {
            return Err(CliError::usage(
                "a recurrence is required: pass --coeffs and --initial, or --spec FILE",
            ))
        }
    };
    ctx.echo(&spec);
    Ok(spec)
}

fn parse_known(items: &[String]) -> Result<Vec<UpperBound>, CliError> {
    items
        .iter()
        .map(|item| {
            let (value, label) = match item.split_once(':') {
                Some((v, l)) => (v, l.to_string()),
                None => (item.as_str(), format!("known bound {item}")),
            };
            let v: BigUint = value.trim().parse().map_err(|_| {
                CliError::input(format!(
                    "--known-bound: {value:?} is not a positive integer"
                ))
            })?;
            if v.is_zero() {
                return Err(CliError::input("--known-bound must be positive"));
            }
            Ok(UpperBound::known(v, label))
        })
        .collect()
}

fn gen(ctx: &mut Context, input: &SpecArgs, count: usize) -> CmdResult {
    let spec = load_spec(ctx, input)?;
    let terms = ctx.view(&spec).terms(count)?;
    let terms: Vec<String> = terms.iter().map(ToString::to_string).collect();
    Ok(json!({ "count": count, "terms": terms }))
}

fn check(ctx: &mut Context, input: &SpecArgs) -> CmdResult {
    let spec = load_spec(ctx, input)?;
    let horizon = ctx.analysis(DEFAULT_HORIZON).horizon;
    let sc = scan(&ctx.view(&spec), horizon).map_err(CliError::from)?;
    scan_result(&sc)
}

fn scan_result(sc: &dold_core::dold::DoldScan) -> CmdResult {
    let violations = sc.violations();
    let signs = sc.sign_violations();
    Ok(json!({
        "horizon": sc.horizon(),
        "dold_holds": violations.is_empty(),
        "sign_holds": signs.is_empty(),
        "clean_prefix": sc.clean_prefix(),
        "empirical_lower": sc.empirical_lower().to_string(),
        "violations": to_value(&violations),
        "sign_violations": signs,
    }))
}

fn fail(ctx: &mut Context, input: &SpecArgs, known: &[String]) -> CmdResult {
    let spec = load_spec(ctx, input)?;
    let known = parse_known(known)?;
    let opts = ctx.analysis(DEFAULT_HORIZON);
    Ok(to_value(&fail_report_with_known(&spec, &opts, &known)?))
}

fn classify(ctx: &mut Context, input: &SpecArgs) -> CmdResult {
    let spec = load_spec(ctx, input)?;
    let fo = ctx.factor();
    let verdict = structure_test_with(&spec, &fo)?;
    let class = classify_with(&spec, ctx.options.prime_bound, &fo)?;
    let bounds = table_bounds(&spec, &verdict, &class)?;
    Ok(json!({
        "verdict": to_value(&verdict),
        "classification": to_value(&class),
        "upper_bounds": to_value(&bounds),
    }))
}

/// Largest `n <= DEFAULT_HORIZON` with `n^t` within the default index budget.
fn power_horizon(t: u32) -> usize {
    (1..=DEFAULT_HORIZON)
        .take_while(|&n| {
            (n as u64)
                .checked_pow(t)
                .is_some_and(|v| v <= POWER_INDEX_BUDGET)
        })
        .last()
        .unwrap_or(1)
}

fn power(ctx: &mut Context, input: &SpecArgs, t: u32, known: &[String]) -> CmdResult {
    let spec = load_spec(ctx, input)?;
    let known = parse_known(known)?;
    let opts = ctx.analysis(power_horizon(t));
    let report = power_report(&spec, t, &opts, &known)?;
    let preferred = match power_fail_bound(&spec, t) {
        Ok(b) => b,
        Err(DoldError::ZeroDiscriminant) => None,
        Err(e) => return Err(e.into()),
    };
    let mut v = to_value(&report);
    v["preferred_bound"] = to_value(&preferred);
    Ok(v)
}

fn family(ctx: &mut Context, delta: u64) -> CmdResult {
    ctx.input = Some(json!({ "delta": delta.to_string() }));
    let spec = radical_witness_family(delta)?;
    let opts = ctx.analysis(FAMILY_HORIZON);
    let report = fail_report_with_known(&spec, &opts, &[])?;
    let rad = radical_uint(&BigUint::from(delta)).map_err(DoldError::from)?;
    let divides = (&report.empirical_lower % &rad).is_zero();
    Ok(json!({
        "spec": to_value(&spec),
        "radical_delta": rad.to_string(),
        "radical_divides_lower": divides,
        "report": to_value(&report),
    }))
}

fn witness(ctx: &mut Context, input: &SpecArgs) -> CmdResult {
    let spec = load_spec(ctx, input)?;
    let verdict = convenient_check(&spec, ctx.options.prime_bound)?;
    let f = spec.char_poly();
    let disc = discriminant(&f).map_err(DoldError::from)?;
    let factors = match factor_over_z_with(&f, &ctx.factor()) {
        Ok(fs) => to_value(&fs),
        Err(FactorError::Unsupported(msg)) => {
            ctx.warnings.push(format!("factorization skipped: {msg}"));
            Value::Null
        }
        Err(e) => return Err(e.into()),
    };
    Ok(json!({
        "verdict": to_value(&verdict),
        "prime_bound": ctx.options.prime_bound,
        "char_poly": to_value(&f),
        "discriminant": disc.to_string(),
        "factorization": factors,
    }))
}

fn density(ctx: &mut Context, input: &SpecArgs, poly: Option<&[String]>, bound: u64) -> CmdResult {
    let f = match poly {
        Some(p) => {
            let mut c = parse_list("poly", p)?;
            c.reverse();
            let f = IntPoly::new(c);
            ctx.input = Some(json!({ "polynomial": to_value(&f) }));
            f
        }
        None => load_spec(ctx, input)?.char_poly(),
    };
    let d = root_density(&f, bound)?;
    let approx = d.numer().to_f64().unwrap_or(f64::NAN) / d.denom().to_f64().unwrap_or(f64::NAN);
    Ok(json!({
        "polynomial": to_value(&f),
        "bound": bound,
        "density": format!("{}/{}", d.numer(), d.denom()),
        "approximate": approx,
    }))
}

fn bfile_check(ctx: &mut Context, path: &Path, known: &[String]) -> CmdResult {
    let text = read_source(path)?;
    let b = parse_bfile(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let offset = b
        .offset()
        .ok_or_else(|| CliError::input(format!("{}: no entries", path.display())))?;
    ctx.input = Some(json!({
        "file": path.display().to_string(),
        "entries": b.entries.len(),
        "offset": offset,
        "contiguous": b.contiguous,
    }));
    if offset != 1 {
        ctx.warnings.push(format!(
            "indices start at {offset}; re-based so that the first entry is term 1"
        ));
    }
    let run = b.leading_run();
    if !b.contiguous {
        ctx.warnings.push(format!(
            "index gap after {}; only the first {} entries are analysed",
            offset + run.len() as i64 - 1,
            run.len()
        ));
    }
    let known = parse_known(known)?;
    let horizon = ctx.options.horizon.map_or(run.len(), |h| h.min(run.len()));
    if ctx.options.horizon.is_some_and(|h| h > run.len()) {
        ctx.warnings.push(format!(
            "horizon reduced to the {} available terms",
            run.len()
        ));
    }
    ctx.options.horizon = Some(horizon);
    let view = SequenceView::raw(run).with_limits(ctx.options.max_bits, ctx.options.max_index);
    let report = fail_report_view(&view, horizon, &known)?;
    Ok(json!({
        "analysed": horizon,
        "dold_holds": report.violations.is_empty(),
        "sign_holds": report.sign_violations.is_empty(),
        "report": to_value(&report),
    }))
}
