use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use steinberg_core::bngroup::{build_gl_with, Caps};
use steinberg_core::combinat::{
    comp_length_gl, comp_length_gu, e_tilde, e_value, is_linear_prime, mullineux_socle_label, CombinatError,
};
use steinberg_core::hecke::BorelHecke;
use steinberg_core::modrep::lie::coefficient_field;
use steinberg_core::refdata::{lookup_socle_label, select_lambda0, select_mu0, table_2f4, RefError};
use steinberg_core::suite::{verify, SuiteError, VerificationReport, VerifyOptions, DEFAULT_SEED};

#[derive(Parser)]
#[command(name = "steinberg", version, about = "Verification reports for the Steinberg module of GL_n(q)")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Gl,
    Gu,
}

#[derive(clap::Args)]
struct GroupArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: u64,
    /// Cap on [G:B] and on every coset space.
    #[arg(long, default_value_t = Caps::default().max_index)]
    max_index: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Run the invariant suite for GL_n(q) over GF(ℓ).
    Verify {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        ell: u64,
        #[arg(long, env = "STEINBERG_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Composition length of the Steinberg module from the closed formula.
    CompLength {
        #[arg(long = "type", value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        ell: u64,
    },
    /// Label μ₀ of the socle of the Steinberg module of GL_n(q).
    SocleLabel {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        ell: u64,
    },
    /// Realized Hecke relations, the sign-eigenvector lemma and the sign eigenspace.
    HeckeCheck {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        ell: u64,
    },
    /// Orders, Weyl length distribution and a Bruhat self-test.
    GroupReport {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, env = "STEINBERG_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Stored socle labels, and the 2F4 decomposition matrices.
    Table {
        #[arg(long = "type")]
        type_tag: String,
        #[arg(long)]
        e: u64,
    },
}

struct Failure {
    code: &'static str,
    message: String,
}

impl From<SuiteError> for Failure {
    fn from(e: SuiteError) -> Self {
        Failure { code: e.code(), message: e.to_string() }
    }
}

impl From<CombinatError> for Failure {
    fn from(e: CombinatError) -> Self {
        let code = match e {
            CombinatError::NonLinearPrime { .. } => "non_linear_prime",
            _ => SuiteError::from(e.clone()).code(),
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<RefError> for Failure {
    fn from(e: RefError) -> Self {
        let code = match e {
            RefError::UnknownType(_) => "unknown_type",
            RefError::Checksum(_) => "checksum_mismatch",
            _ => "reference_data",
        };
        Failure { code, message: e.to_string() }
    }
}

/// What a subcommand produced: the JSON value, a text rendering, and
/// whether every check passed.
struct Output {
    json: Value,
    text: String,
    pass: bool,
}

fn plain(json: Value) -> Output {
    let text = match &json {
        Value::Object(map) => map.iter().map(|(k, v)| format!("{k}: {}", text_value(v))).collect::<Vec<_>>().join("\n"),
        other => other.to_string(),
    };
    Output { json, text, pass: true }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn to_value(x: &impl Serialize) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn length_value(len: num_bigint::BigUint) -> Result<Value, Failure> {
    u64::try_from(&len).map(Value::from).map_err(|_| Failure {
        code: "cap_exceeded",
        message: format!("length {len} does not fit in 64 bits"),
    })
}

fn verify_text(r: &VerificationReport) -> String {
    let mut out = format!("{} over GF({}), seed {}, e = {}, mu0 = {}\n", r.group, r.ell, r.seed, r.e, r.mu0);
    for (c, (_, ms)) in r.checks.iter().zip(&r.timings) {
        let tag = if c.pass { "PASS" } else { "FAIL" };
        out.push_str(&format!("{tag} {:<30} {:>9.1} ms  {}\n", c.name, ms, c.details));
    }
    let factors: Vec<String> = r.factors.iter().map(|f| format!("{}x dim {}", f.mult, f.dim)).collect();
    out.push_str(&format!("factors: {}\n", factors.join(", ")));
    let passed = r.checks.iter().filter(|c| c.pass).count();
    out.push_str(&format!("{passed}/{} checks passed", r.checks.len()));
    out
}

fn run(cmd: Command) -> Result<Output, Failure> {
    match cmd {
        Command::Verify { group, ell, seed } => {
            let r = verify(group.n, group.q, ell, VerifyOptions { seed, max_index: group.max_index })?;
            Ok(Output { json: to_value(&r), text: verify_text(&r), pass: r.all_pass() })
        }
        Command::CompLength { family: Family::Gl, n, q, ell } => {
            let len = comp_length_gl(n, q, ell)?;
            Ok(plain(json!({"e": to_value(&e_value(q, ell)?), "linear": true, "length": length_value(len)?})))
        }
        Command::CompLength { family: Family::Gu, n, q, ell } => {
            let etilde = to_value(&e_tilde(q, ell)?);
            if !is_linear_prime(2, q, ell)? {
                return Err(CombinatError::NonLinearPrime { q, ell }.into());
            }
            let len = comp_length_gu(n, q, ell)?;
            Ok(plain(json!({"etilde": etilde, "linear": true, "length": length_value(len)?})))
        }
        Command::SocleLabel { n, q, ell } => {
            let e = e_value(q, ell)?;
            let mu0 = mullineux_socle_label(n, e);
            Ok(plain(json!({"e": to_value(&e), "mu0": mu0.to_string(), "exponent": mu0.exponent_notation()})))
        }
        Command::HeckeCheck { group, ell } => {
            let caps = Caps { max_index: group.max_index, ..Caps::default() };
            let g = build_gl_with(group.n, group.q, caps).map_err(SuiteError::from)?;
            let field = coefficient_field(&g, ell, 1).map_err(SuiteError::from)?;
            let cosets = g.flag_cosets().map_err(SuiteError::from)?;
            let bh = BorelHecke::new(&g, &cosets).map_err(SuiteError::from)?;
            let relations_ok = bh.relations_hold(&field);
            let lemma22_ok = bh.lemma_over_integers() && bh.lemma_over_field(&field);
            let eigenspace_dim = bh.sign_eigenspace(&field).rows();
            let json = json!({
                "group": g.label(),
                "ell": ell,
                "relations_ok": relations_ok,
                "lemma22_ok": lemma22_ok,
                "eigenspace_dim": eigenspace_dim,
            });
            Ok(Output { pass: relations_ok && lemma22_ok, ..plain(json) })
        }
        Command::GroupReport { group, seed } => {
            let caps = Caps { max_index: group.max_index, ..Caps::default() };
            let g = build_gl_with(group.n, group.q, caps).map_err(SuiteError::from)?;
            let report = g.report(seed);
            let pass = report.bruhat_selftest == "pass";
            Ok(Output { pass, ..plain(to_value(&report)) })
        }
        Command::Table { type_tag, e } => {
            if type_tag == "2F4" && (e == 2 || e == 4) {
                let t = table_2f4(e)?;
                let mu0 = select_mu0(t)?;
                let lambda0 = select_lambda0(t)?;
                Ok(plain(json!({
                    "type": type_tag,
                    "e": e,
                    "mu0": mu0.label,
                    "lambda0": lambda0.label,
                    "lambda0_a": lambda0.a,
                })))
            } else {
                let label = lookup_socle_label(&type_tag, e)?;
                Ok(plain(json!({"type": type_tag, "e": e, "mu0": label.as_str()})))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli.command) {
        Ok(out) => {
            let body = match format {
                Format::Json => out.json.to_string(),
                Format::Text => out.text,
            };
            // a closed pipe is not an error worth a panic
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            match format {
                Format::Json => eprintln!("{}", json!({"error": f.code, "message": f.message})),
                Format::Text => eprintln!("error [{}]: {}", f.code, f.message),
            }
            ExitCode::from(2)
        }
    }
}
