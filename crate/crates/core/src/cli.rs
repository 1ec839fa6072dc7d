//! Command-line front end. Every result is written as JSON (or CSV for orbits); exit codes are
//! 0 on success, 1 when a suite fails or the result is an error record, 2 on malformed input.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::{PPoint, Rat};
use crate::convolution::{build_beta, predict_exponents, mc_pair, ConvolutionError, McResult};
use crate::engine::{apply, orbit, ApplyError, ModuliState, Orbit, OrbitStop, Via, Word};
use crate::params::{act_nu, ParamVector, ROW_NAMES};
use crate::lattice::Generator;
use crate::report::{error_code, Report};
use crate::surface::MPoint;
use crate::verify::{verify, SUITES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "a2wc", version, about = "Exact group actions on nine-point surfaces and their rank-3 connections")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run verification suites and write a report.
    Check(CheckArgs),
    /// Apply a word to (nu, point). Words act leftmost first.
    Act(ActArgs),
    /// Iterate a word from (nu, point). Words act leftmost first.
    Orbit(OrbitArgs),
    /// Middle convolution at (q, p): beta data, A(z), the image pair and exponents.
    Mc(McArgs),
    /// Convolution hypotheses and predicted exponents for nu.
    Exponents(ExponentsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// csv is only available for orbit.
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Comma-separated suite names, or "all".
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 100)]
    pub trials: u32,
    #[arg(long, env = "A2WC_SEED", default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct PointArgs {
    /// Nine exponents, rows 0, 1, inf, as rationals separated by commas or spaces.
    #[arg(long, allow_hyphen_values = true)]
    pub nu: ParamVector,
    /// Homogeneous point "x0,x1,x2" off the triangle.
    #[arg(long, value_parser = parse_point, conflicts_with_all = ["q", "p"], allow_hyphen_values = true)]
    pub point: Option<PPoint>,
    /// Apparent singularity; the point is (q : p : 1).
    #[arg(long, requires = "p", allow_hyphen_values = true)]
    pub q: Option<Rat>,
    /// Dual parameter.
    #[arg(long, requires = "q", allow_hyphen_values = true)]
    pub p: Option<Rat>,
}

#[derive(Debug, Args)]
pub struct ActArgs {
    #[command(flatten)]
    pub state: PointArgs,
    /// Tokens w0..w6, s1, s2 separated by spaces or commas; the leftmost acts first.
    #[arg(long)]
    pub word: Word,
    #[arg(long, value_enum, default_value = "surface")]
    pub via: Via,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct OrbitArgs {
    #[command(flatten)]
    pub state: PointArgs,
    /// Nonempty word, applied once per step; the leftmost token acts first.
    #[arg(long)]
    pub word: Word,
    #[arg(long, default_value_t = 10)]
    pub steps: usize,
    #[arg(long, value_enum, default_value = "surface")]
    pub via: Via,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct McArgs {
    #[command(flatten)]
    pub state: PointArgs,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ExponentsArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub nu: ParamVector,
    #[command(flatten)]
    pub output: Output,
}

fn parse_point(s: &str) -> Result<PPoint, String> {
    let tokens: Vec<&str> = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .collect();
    if tokens.len() != 3 {
        return Err(format!("expected 3 coordinates, got {}", tokens.len()));
    }
    let x = tokens
        .iter()
        .enumerate()
        .map(|(i, t)| t.parse::<Rat>().map_err(|e| format!("coordinate x{i}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    PPoint::new(x[0].clone(), x[1].clone(), x[2].clone()).map_err(|e| e.to_string())
}

/// A diagnostic for input that parsed but is not a valid state.
#[derive(Debug, Serialize)]
struct InputError {
    code: String,
    field: &'static str,
    message: String,
}

fn state_of(args: &PointArgs) -> Result<ModuliState, InputError> {
    let bad = |code: String, message: String| InputError { code, field: "point", message };
    let point = match (&args.point, &args.q, &args.p) {
        (Some(x), _, _) => MPoint::new(x.clone()).map_err(|e| bad(error_code(&e), e.to_string()))?,
        (None, Some(q), Some(p)) => {
            MPoint::from_chart1(q.clone(), p.clone()).map_err(|e| bad(error_code(&e), e.to_string()))?
        }
        _ => return Err(bad("missing_point".into(), "give --point or both --q and --p".into())),
    };
    Ok(ModuliState { nu: args.nu.clone(), point })
}

/// A state flattened for output.
#[derive(Debug, Serialize)]
struct StateOut {
    nu: ParamVector,
    membership: String,
    point: PPoint,
    q: Rat,
    p: Rat,
}

impl From<&ModuliState> for StateOut {
    fn from(s: &ModuliState) -> Self {
        let (q, p) = s.point.chart1();
        StateOut {
            nu: s.nu.clone(),
            membership: s.nu.membership().to_string(),
            point: s.point.point().clone(),
            q,
            p,
        }
    }
}

#[derive(Serialize)]
struct ActOut {
    command: &'static str,
    word: Word,
    via: Via,
    input: StateOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    output: Option<StateOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ApplyError>,
}

#[derive(Serialize)]
struct OrbitOut {
    command: &'static str,
    word: Word,
    via: Via,
    steps: usize,
    states: Vec<StateOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stopped: Option<OrbitStop>,
}

#[derive(Serialize)]
struct McOut {
    command: &'static str,
    input: StateOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<McResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<CodedError<ConvolutionError>>,
}

#[derive(Serialize)]
struct CodedError<E> {
    code: String,
    message: String,
    detail: E,
}

impl<E: Serialize + std::fmt::Display> CodedError<E> {
    fn new(e: E) -> Self {
        CodedError { code: error_code(&e), message: e.to_string(), detail: e }
    }
}

#[derive(Serialize)]
struct ExponentsOut {
    command: &'static str,
    nu: ParamVector,
    membership: String,
    gamma: Rat,
    beta: crate::convolution::BetaForm,
    image_nu: ParamVector,
    #[serde(skip_serializing_if = "Option::is_none")]
    prediction: Option<crate::convolution::ExponentPrediction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<CodedError<ConvolutionError>>,
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn orbit_csv(o: &Orbit) -> String {
    let mut out = String::from("step,x0,x1,x2,q,p");
    for row in ROW_NAMES {
        for j in 0..3 {
            out.push_str(&format!(",nu_{row}_{j}"));
        }
    }
    out.push('\n');
    for (step, s) in o.states.iter().enumerate() {
        let x = s.point.point().coords();
        let (q, p) = s.point.chart1();
        let mut fields = vec![step.to_string(), x[0].to_string(), x[1].to_string(), x[2].to_string()];
        fields.push(q.to_string());
        fields.push(p.to_string());
        fields.extend(s.nu.flat().iter().map(ToString::to_string));
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

/// The rendered output and the exit code it implies.
struct Outcome {
    text: String,
    code: i32,
}

fn usage(field: &'static str, code: &str, message: String) -> Outcome {
    let e = InputError { code: code.to_string(), field, message };
    Outcome { text: to_json(&serde_json::json!({ "error": e })), code: EXIT_USAGE }
}

fn reject_csv(output: &Output) -> Option<Outcome> {
    (output.format == Format::Csv)
        .then(|| usage("format", "unsupported_format", "csv output is only available for orbit".into()))
}

fn cmd_check(args: &CheckArgs) -> Outcome {
    if let Some(o) = reject_csv(&args.output) {
        return o;
    }
    let names: Vec<&str> = if args.suite.trim() == "all" {
        SUITES.to_vec()
    } else {
        args.suite.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
    };
    if let Some(bad) = names.iter().find(|n| !SUITES.contains(n)) {
        return usage("suite", "unknown_suite", format!("unknown suite {bad:?}; expected one of {}", SUITES.join(", ")));
    }
    if names.is_empty() {
        return usage("suite", "unknown_suite", "no suite given".into());
    }
    let report: Report = verify(&names, args.trials, args.seed).expect("names validated");
    let code = if report.all_pass { EXIT_OK } else { EXIT_FAILURE };
    Outcome { text: to_json(&report), code }
}

fn cmd_act(args: &ActArgs) -> Outcome {
    if let Some(o) = reject_csv(&args.output) {
        return o;
    }
    let state = match state_of(&args.state) {
        Ok(s) => s,
        Err(e) => return usage(e.field, &e.code, e.message),
    };
    let result = apply(&args.word, &state, args.via);
    let code = if result.is_ok() { EXIT_OK } else { EXIT_FAILURE };
    let (output, error) = match result {
        Ok(s) => (Some(StateOut::from(&s)), None),
        Err(e) => (None, Some(e)),
    };
    let out = ActOut {
        command: "act",
        word: args.word.clone(),
        via: args.via,
        input: StateOut::from(&state),
        output,
        error,
    };
    Outcome { text: to_json(&out), code }
}

fn cmd_orbit(args: &OrbitArgs) -> Outcome {
    if args.word.0.is_empty() {
        return usage("word", "empty_word", "orbit needs a nonempty word".into());
    }
    let state = match state_of(&args.state) {
        Ok(s) => s,
        Err(e) => return usage(e.field, &e.code, e.message),
    };
    let o = orbit(&args.word, &state, args.steps, args.via);
    let code = if o.stopped.is_some() { EXIT_FAILURE } else { EXIT_OK };
    let text = match args.output.format {
        Format::Csv => orbit_csv(&o),
        Format::Json => to_json(&OrbitOut {
            command: "orbit",
            word: args.word.clone(),
            via: args.via,
            steps: args.steps,
            states: o.states.iter().map(StateOut::from).collect(),
            stopped: o.stopped.clone(),
        }),
    };
    Outcome { text, code }
}

fn cmd_mc(args: &McArgs) -> Outcome {
    if let Some(o) = reject_csv(&args.output) {
        return o;
    }
    let state = match state_of(&args.state) {
        Ok(s) => s,
        Err(e) => return usage(e.field, &e.code, e.message),
    };
    let (q, p) = state.point.chart1();
    let (result, error) = match mc_pair(&q, &p, &state.nu) {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(CodedError::new(e))),
    };
    let code = if error.is_none() { EXIT_OK } else { EXIT_FAILURE };
    let out = McOut { command: "mc", input: StateOut::from(&state), result, error };
    Outcome { text: to_json(&out), code }
}

fn cmd_exponents(args: &ExponentsArgs) -> Outcome {
    if let Some(o) = reject_csv(&args.output) {
        return o;
    }
    let nu = &args.nu;
    let beta = build_beta(nu);
    let mu: Vec<Vec<Rat>> = nu.mu().iter().map(|r| r.to_vec()).collect();
    let (prediction, error) = match predict_exponents(&beta, &mu, 3, 3) {
        Ok(p) => (Some(p), None),
        Err(e) => (None, Some(CodedError::new(e))),
    };
    let code = if error.is_none() { EXIT_OK } else { EXIT_FAILURE };
    let out = ExponentsOut {
        command: "exponents",
        nu: nu.clone(),
        membership: nu.membership().to_string(),
        gamma: nu.gamma(),
        beta,
        image_nu: act_nu(Generator::W(3), nu),
        prediction,
        error,
    };
    Outcome { text: to_json(&out), code }
}

fn write_output(output: &Output, text: &str) -> Result<(), String> {
    match &output.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).map_err(|e| e.to_string())
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let (outcome, output) = match &cli.command {
        Command::Check(a) => (cmd_check(a), &a.output),
        Command::Act(a) => (cmd_act(a), &a.output),
        Command::Orbit(a) => (cmd_orbit(a), &a.output),
        Command::Mc(a) => (cmd_mc(a), &a.output),
        Command::Exponents(a) => (cmd_exponents(a), &a.output),
    };
    if outcome.code == EXIT_USAGE {
        // malformed input goes to stderr so that --out never holds a partial result
        eprint!("{}", outcome.text);
        return EXIT_USAGE;
    }
    match write_output(output, &outcome.text) {
        Ok(()) => outcome.code,
        Err(e) => {
            eprintln!("{}", to_json(&serde_json::json!({ "error": { "code": "io", "message": e } })).trim_end());
            EXIT_FAILURE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn point_parsing() {
        let want = PPoint::new(Rat::int(2), Rat::int(3), Rat::one()).unwrap();
        assert_eq!(parse_point("2, 3 1").unwrap(), want);
        assert!(parse_point("1,2").is_err());
        assert!(parse_point("0,0,0").is_err());
        assert!(parse_point("1,x,2").unwrap_err().contains("x1"));
    }
}
