//! Command-line surface: argument parsing, dispatch, and report rendering.
//!
//! Every command builds one JSON value. `--json` prints it as is; the human rendering
//! flattens it into `path: value` lines, so both carry the same fields.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use hqec::codes::{builtin_code, logical_codewords, parse_code_file, validate_code, StabilizerCode, BUILTIN_NAMES};
use hqec::compat::{clifford_correction_for_t, diagonal_gate_action, theorem1_check, theorem2_check, uniform_phases};
use hqec::f2::{code_from_rows, triorthogonality_check, BitMatrix};
use hqec::pauli::PauliOperator;
use hqec::protocol::{
    resource_report, run_a1, run_logical_t_protocol, run_storage_protocol, run_transversal_t_protocol,
    KeyRegister,
};
use hqec::sim::{omega_pow, seeded_rng, Outcomes, SparseState};
use hqec::Error;
use num_complex::Complex64;
use rand::Rng;
use serde_json::{json, Value};

/// Fidelity at or above `1 - FIDELITY_TOL` counts as a pass.
pub const FIDELITY_TOL: f64 = 1e-10;
/// Code-space leakage below this counts as preserved.
pub const LEAKAGE_TOL: f64 = 1e-10;

#[derive(Parser, Debug)]
#[command(name = "hqec", version, about = "Homomorphic encryption over quantum error-correcting codes")]
struct Cli {
    /// Print a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every sampled quantity.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the final state as `bitstring re im` lines (run commands only).
    #[arg(long, global = true, value_name = "PATH")]
    dump_state: Option<PathBuf>,
    /// Bell outcomes as a bit string, two bits per measurement (e.g. `1101`).
    #[arg(long, global = true, value_name = "BITS")]
    force_outcomes: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Builtin codes and code files.
    #[command(subcommand)]
    Codes(CodesCmd),
    /// Compatibility and structure checks.
    #[command(subcommand)]
    Check(CheckCmd),
    /// End-to-end protocol runs.
    #[command(subcommand)]
    Run(RunCmd),
    /// Resource accounting.
    #[command(subcommand)]
    Report(ReportCmd),
}

#[derive(Subcommand, Debug)]
enum CodesCmd {
    /// Builtin codes with n, k and CSS flag.
    List,
    /// Stabilizer-group and logical-operator checks for a code file.
    Validate { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum CheckCmd {
    /// Generators against `X^⊗n` and `Z^⊗n`.
    Theorem1 {
        #[arg(long, value_name = "NAME|FILE")]
        code: String,
    },
    /// `CSS(C1, C2)` from two generator-matrix files.
    Css {
        #[arg(long)]
        c1: PathBuf,
        #[arg(long)]
        c2: PathBuf,
    },
    /// Pair and triple overlaps of a generator matrix.
    Triortho {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Logical action of a transversal diagonal gate.
    Diagonal {
        #[arg(long)]
        code: String,
        #[arg(long, value_parser = ["T", "Td", "Sd"])]
        gate: String,
    },
}

#[derive(Args, Debug)]
struct LogicalInput {
    #[arg(long, value_name = "A,B", default_value = "0,0")]
    keys: String,
    /// Logical amplitudes `re0,im0,re1,im1`; normalised before use.
    #[arg(long, value_name = "RE,IM,RE,IM", default_value = "0.6,0,0,0.8", allow_hyphen_values = true)]
    amps: String,
}

#[derive(Subcommand, Debug)]
enum RunCmd {
    /// The two-qubit circuit `H1 T1 Td2 S2` on a random input with random keys.
    A1,
    /// Encrypt, inject one error, correct, decrypt.
    Storage {
        #[arg(long)]
        code: String,
        #[arg(long, value_name = "PAULI|none", default_value = "none")]
        error: String,
        #[command(flatten)]
        input: LogicalInput,
    },
    /// Logical T on the 15-qubit code via transversal T and teleportation.
    #[command(name = "transversal-t")]
    TransversalT {
        #[command(flatten)]
        input: LogicalInput,
    },
    /// Logical T on the Shor code via a teleported logical Bell pair.
    #[command(name = "logical-t")]
    LogicalT {
        #[command(flatten)]
        input: LogicalInput,
    },
}

#[derive(Subcommand, Debug)]
enum ReportCmd {
    /// Qubit counts for a block of n physical qubits.
    Resources {
        #[arg(long)]
        n: usize,
    },
}

/// Exit code plus the text destined for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Input problems (exit 2) versus failed checks (exit 1).
enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Incompatible { .. } | Error::Leakage(_) | Error::CorrectionUnavailable => {
                Failure::Check(e.to_string())
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

/// Value plus whether the command's own check passed.
struct Rendered {
    value: Value,
    ok: bool,
    state: Option<SparseState>,
}

fn rendered(value: Value, ok: bool) -> Rendered {
    Rendered { value, ok, state: None }
}

pub fn run_command<I, T>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return CommandOutput { code: 0, stdout: e.to_string(), stderr: String::new() };
            }
            let first = e.to_string().lines().next().unwrap_or("error: invalid arguments").to_string();
            return CommandOutput { code: 2, stdout: String::new(), stderr: first + "\n" };
        }
    };
    match dispatch(&cli) {
        Ok(mut r) => {
            clear_negative_zero(&mut r.value);
            if let Some(path) = &cli.dump_state {
                let Some(state) = &r.state else {
                    return usage("--dump-state applies to run commands only".into());
                };
                if let Err(e) = fs::write(path, state.dump()) {
                    return usage(format!("cannot write {}: {e}", path.display()));
                }
            }
            let stdout = if cli.json {
                serde_json::to_string_pretty(&r.value).expect("report serialises") + "\n"
            } else {
                render_human(&r.value)
            };
            CommandOutput { code: if r.ok { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(Failure::Usage(msg)) => usage(msg),
        Err(Failure::Check(msg)) => CommandOutput { code: 1, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}

fn usage(msg: String) -> CommandOutput {
    CommandOutput { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn in_file(path: &Path) -> impl Fn(Error) -> Failure + '_ {
    move |e| Failure::Usage(format!("{}: {e}", path.display()))
}

fn load_matrix(path: &Path) -> Result<BitMatrix, Failure> {
    BitMatrix::parse(&read_file(path)?).map_err(in_file(path))
}

/// A builtin name, otherwise a code-definition file.
fn load_code(arg: &str) -> Result<StabilizerCode, Failure> {
    if BUILTIN_NAMES.contains(&arg) {
        return Ok(builtin_code(arg)?);
    }
    let path = Path::new(arg);
    if !path.exists() {
        return Err(Failure::Usage(format!(
            "unknown code '{arg}' (builtins: {}; or a code file path)",
            BUILTIN_NAMES.join(", ")
        )));
    }
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or(arg);
    parse_code_file(name, &read_file(path)?).map_err(in_file(path))
}

fn parse_keys(text: &str) -> Result<(u8, u8), Failure> {
    let bad = || Failure::Usage(format!("--keys expects 'a,b' with bits 0 or 1, got '{text}'"));
    let (a, b) = text.split_once(',').ok_or_else(bad)?;
    let bit = |s: &str| match s.trim() {
        "0" => Ok(0u8),
        "1" => Ok(1u8),
        _ => Err(bad()),
    };
    Ok((bit(a)?, bit(b)?))
}

fn parse_amps(text: &str) -> Result<(Complex64, Complex64), Failure> {
    let bad = || Failure::Usage(format!("--amps expects four numbers 're,im,re,im', got '{text}'"));
    let v: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    if v.len() != 4 || v.iter().any(|x| !x.is_finite()) {
        return Err(bad());
    }
    let (c0, c1) = (Complex64::new(v[0], v[1]), Complex64::new(v[2], v[3]));
    let norm = (c0.norm_sqr() + c1.norm_sqr()).sqrt();
    if norm < 1e-12 {
        return Err(Failure::Usage("--amps must not be all zero".into()));
    }
    Ok((c0 / norm, c1 / norm))
}

fn outcomes(cli: &Cli, fallback_seed: u64) -> Result<Outcomes, Failure> {
    let Some(bits) = &cli.force_outcomes else {
        return Ok(Outcomes::sampled(fallback_seed));
    };
    let v: Vec<u8> = bits
        .chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Failure::Usage(format!("--force-outcomes expects 0/1 characters, got '{bits}'"))),
        })
        .collect::<Result<_, _>>()?;
    if !v.len().is_multiple_of(2) {
        return Err(Failure::Usage(format!("--force-outcomes needs two bits per measurement, got {}", v.len())));
    }
    Ok(Outcomes::forced(v.chunks(2).map(|p| (p[0], p[1]))))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serialises")
}

fn pass(fidelity: f64) -> bool {
    fidelity >= 1.0 - FIDELITY_TOL
}

fn dispatch(cli: &Cli) -> Result<Rendered, Failure> {
    match &cli.command {
        Command::Codes(CodesCmd::List) => {
            let mut codes = Vec::new();
            for name in BUILTIN_NAMES {
                let c = builtin_code(name)?;
                codes.push(json!({"name": name, "n": c.n(), "k": c.k(), "css": c.css_origin().is_some()}));
            }
            Ok(rendered(json!({ "codes": codes }), true))
        }
        Command::Codes(CodesCmd::Validate { file }) => {
            let code = load_code(&file.to_string_lossy())?;
            let r = validate_code(&code);
            Ok(rendered(to_value(&r), r.valid))
        }
        Command::Check(CheckCmd::Theorem1 { code }) => {
            let r = theorem1_check(&load_code(code)?)?;
            let ok = r.compatible;
            let mut v = to_value(&r);
            v["verdict"] = json!(if ok { "compatible" } else { "incompatible" });
            Ok(rendered(v, ok))
        }
        Command::Check(CheckCmd::Css { c1, c2 }) => {
            let k1 = code_from_rows(load_matrix(c1)?).map_err(in_file(c1))?;
            let k2 = code_from_rows(load_matrix(c2)?).map_err(in_file(c2))?;
            let r = theorem2_check(&k1, &k2)?;
            let ok = r.compatible;
            let mut v = to_value(&r);
            v["verdict"] = json!(if ok { "compatible" } else { "incompatible" });
            Ok(rendered(v, ok))
        }
        Command::Check(CheckCmd::Triortho { matrix }) => {
            let r = triorthogonality_check(&load_matrix(matrix)?);
            let ok = r.is_triorthogonal();
            let mut v = to_value(&r);
            // 1-based row labels for display.
            v["pair_overlaps"] = json!(r
                .pair_overlaps
                .iter()
                .map(|p| format!("r{}·r{} = {}", p.i + 1, p.j + 1, p.overlap))
                .collect::<Vec<_>>());
            v["triple_overlaps"] = json!(r
                .triple_overlaps
                .iter()
                .map(|t| format!("r{}·r{}·r{} = {}", t.i + 1, t.j + 1, t.k + 1, t.overlap))
                .collect::<Vec<_>>());
            v["violating_index_sets"] = json!(r
                .violating_index_sets
                .iter()
                .map(|set| set.iter().map(|i| i + 1).collect::<Vec<_>>())
                .collect::<Vec<_>>());
            v["verdict"] = json!(if ok { "triorthogonal" } else { "not triorthogonal" });
            Ok(rendered(v, ok))
        }
        Command::Check(CheckCmd::Diagonal { code, gate }) => {
            let code = load_code(code)?;
            let space = logical_codewords(&code)?;
            let phase = match gate.as_str() {
                "T" => omega_pow(1),
                "Td" => omega_pow(-1),
                _ => Complex64::new(0.0, -1.0),
            };
            let label = format!("{gate}^⊗{}", code.n());
            let act = diagonal_gate_action(&space, &uniform_phases(code.n(), phase), &label)?;
            let ok = act.leakage < LEAKAGE_TOL;
            let mut v = to_value(&act);
            v["code"] = json!(code.name());
            if gate == "T" {
                v["t_correction"] = to_value(&clifford_correction_for_t(&space)?);
            }
            v["verdict"] = json!(if ok { "preserves code space" } else { "leaves code space" });
            Ok(rendered(v, ok))
        }
        Command::Run(RunCmd::A1) => {
            let mut rng = seeded_rng(cli.seed);
            let psi = SparseState::random(2, &mut rng)?;
            let keys = KeyRegister::random(2, &mut rng);
            let mut out = outcomes(cli, rng.gen())?;
            let r = run_a1(&psi, &keys, &mut out)?;
            let ok = pass(r.fidelity);
            let mut v = to_value(&r);
            v["seed"] = json!(cli.seed);
            v["verdict"] = json!(if ok { "pass" } else { "fail" });
            Ok(Rendered { value: v, ok, state: Some(r.output) })
        }
        Command::Run(RunCmd::Storage { code, error, input }) => {
            let code = load_code(code)?;
            let keys = parse_keys(&input.keys)?;
            let amps = parse_amps(&input.amps)?;
            let err = match error.as_str() {
                "none" => None,
                text => Some(PauliOperator::parse(text).map_err(|e| Failure::Usage(format!("--error '{text}': {e}")))?),
            };
            let mut rng = seeded_rng(cli.seed);
            let r = run_storage_protocol(&code, amps, keys, err.as_ref(), &mut rng)?;
            let ok = pass(r.fidelity);
            let mut v = to_value(&r);
            v["verdict"] = json!(if ok { "pass" } else { "fail" });
            Ok(rendered(v, ok))
        }
        Command::Run(RunCmd::TransversalT { input }) => {
            let keys = parse_keys(&input.keys)?;
            let amps = parse_amps(&input.amps)?;
            let mut out = outcomes(cli, cli.seed)?;
            let r = run_transversal_t_protocol(amps, keys, &mut out)?;
            let ok = pass(r.fidelity);
            let mut v = to_value(&r);
            v["verdict"] = json!(if ok { "pass" } else { "fail" });
            Ok(Rendered { value: v, ok, state: Some(r.output) })
        }
        Command::Run(RunCmd::LogicalT { input }) => {
            let keys = parse_keys(&input.keys)?;
            let amps = parse_amps(&input.amps)?;
            let mut out = outcomes(cli, cli.seed)?;
            let r = run_logical_t_protocol(amps, keys, &mut out)?;
            let ok = pass(r.fidelity);
            let mut v = to_value(&r);
            v["verdict"] = json!(if ok { "pass" } else { "fail" });
            Ok(Rendered { value: v, ok, state: Some(r.output) })
        }
        Command::Report(ReportCmd::Resources { n }) => Ok(rendered(to_value(&resource_report(*n)?), true)),
    }
}

/// `-0.0` renders differently from `0.0` but means the same amplitude.
fn clear_negative_zero(value: &mut Value) {
    match value {
        Value::Number(n) if n.as_f64() == Some(0.0) && n.is_f64() => *value = json!(0.0),
        Value::Array(a) => a.iter_mut().for_each(clear_negative_zero),
        Value::Object(m) => m.values_mut().for_each(clear_negative_zero),
        _ => {}
    }
}

/// `path: value` per leaf, in document order; array items are indexed from 1.
pub fn render_human(value: &Value) -> String {
    let mut lines = Vec::new();
    flatten(value, String::new(), &mut lines);
    let mut out = String::new();
    for (path, leaf) in lines {
        out.push_str(&path);
        out.push_str(": ");
        out.push_str(&leaf);
        out.push('\n');
    }
    out
}

/// Leaves of `value` as `(dotted path, text)`; strings are unquoted, everything else is JSON.
pub fn flatten(value: &Value, prefix: String, out: &mut Vec<(String, String)>) {
    let join = |p: &str, k: &str| if p.is_empty() { k.to_string() } else { format!("{p}.{k}") };
    match value {
        Value::Object(m) if !m.is_empty() => {
            for (k, v) in m {
                flatten(v, join(&prefix, k), out);
            }
        }
        Value::Array(a) if !a.is_empty() => {
            for (i, v) in a.iter().enumerate() {
                flatten(v, join(&prefix, &(i + 1).to_string()), out);
            }
        }
        Value::String(s) => out.push((prefix, s.clone())),
        other => out.push((prefix, other.to_string())),
    }
}
