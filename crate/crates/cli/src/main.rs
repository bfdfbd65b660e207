//! Command-line interface to the `siegel-euler` library.

mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Number, Value};
use siegel_euler::arthur::{
    dim_siegel_cusp, enumerate_parameters, global_sign, siegel_contributes, u_vector, ArthurParameter,
};
use siegel_euler::euler::{Euler, EulerResult};
use siegel_euler::forms::{is_prime, load_forms_table, Count, FormsTable};
use siegel_euler::gl_euler::{trivial_multiplicity, GlTwist};
use siegel_euler::motive::VirtualMotive;
use siegel_euler::weyl::DominantWeight;
use siegel_euler::Error;

/// Exit status for a failed self-test.
const EXIT_SELFTEST: u8 = 1;
/// Exit status for invalid arguments and domain or size errors.
const EXIT_DOMAIN: u8 = 2;
/// Exit status when table data needed for a complete answer is missing.
const EXIT_INCOMPLETE: u8 = 3;
/// Exit status for a forms table that cannot be read or parsed.
const EXIT_INGESTION: u8 = 4;
/// Exit status for an internal consistency failure.
const EXIT_INTERNAL: u8 = 5;

#[derive(Debug, Parser)]
#[command(name = "siegel-euler", version, about = "Exact Euler characteristics of local systems on A_n")]
struct Cli {
    /// JSON table of cuspidal families overlaid on the built-in table.
    #[arg(long, global = true, env = "SIEGEL_EULER_FORMS_TABLE")]
    forms_table: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Number of F_q-points of A_n.
    Points {
        #[arg(long)]
        genus: usize,
        /// The field size, a prime power.
        #[arg(long, conflicts_with = "prime", required_unless_present = "prime")]
        q: Option<u64>,
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long, default_value_t = 1, requires = "prime")]
        power: u32,
    },
    /// Compactly supported Euler characteristic e_c(A_n, V_λ).
    EulerC(WeightArgs),
    /// Intersection Euler characteristic e_IH(A_n*, V_λ).
    EulerIh(WeightArgs),
    /// Dimension of the space of Siegel cusp forms of weight k̲.
    DimSiegel {
        /// Comma-separated weight k_1 ≥ … ≥ k_n.
        #[arg(long, value_parser = parse_weight)]
        weight: Weight,
        /// Must equal the length of the weight when given.
        #[arg(long)]
        genus: Option<usize>,
    },
    /// Arthur parameters with infinitesimal character λ + ρ.
    Params(WeightArgs),
    /// Multiplicity of the trivial character in the Euler characteristic of GL_n(Z).
    GlEuler {
        #[arg(long)]
        n: usize,
        /// Either plain or det-sign.
        #[arg(long, default_value = "plain")]
        twist: GlTwist,
    },
    /// Runs the built-in golden checks.
    Selftest,
}

#[derive(Debug, Args)]
struct WeightArgs {
    #[arg(long)]
    genus: usize,
    /// Comma-separated dominant weight λ_1 ≥ … ≥ λ_n ≥ 0 (default 0).
    #[arg(long, value_parser = parse_weight)]
    weight: Option<Weight>,
    /// Similitude character m.
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    similitude: i64,
}

#[derive(Debug, Clone)]
struct Weight(Vec<i64>);

fn parse_weight(s: &str) -> Result<Weight, String> {
    if s.trim().is_empty() {
        return Err("empty weight".into());
    }
    s.split(',')
        .map(|x| i64::from_str(x.trim()).map_err(|e| format!("bad weight entry {x:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()
        .map(Weight)
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::SizeLimit(_) | Error::Domain(_) => EXIT_DOMAIN,
            Error::UnknownDimension(_) | Error::UnknownHecke { .. } | Error::NoClosedForm(_) | Error::Incomplete(_) => {
                EXIT_INCOMPLETE
            }
            Error::Ingestion { .. } => EXIT_INGESTION,
            Error::Internal(_) => EXIT_INTERNAL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn domain(message: String) -> Failure {
    Failure {
        code: EXIT_DOMAIN,
        message,
    }
}

/// A rendered result: a JSON document, its text form and an exit status.
struct Output {
    json: Value,
    text: String,
    code: u8,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output { json, text, code: 0 }
    }
}

fn number(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("integers are valid JSON numbers"))
}

fn load_table(path: Option<&PathBuf>) -> Result<FormsTable, Failure> {
    match path {
        Some(p) => Ok(load_forms_table(p)?),
        None => Ok(FormsTable::standard()),
    }
}

fn dominant(args: &WeightArgs) -> Result<DominantWeight, Failure> {
    let lambda = match &args.weight {
        Some(w) => w.0.clone(),
        None => vec![0; args.genus],
    };
    if lambda.len() != args.genus {
        return Err(domain(format!(
            "weight has {} entries but genus is {}",
            lambda.len(),
            args.genus
        )));
    }
    Ok(DominantWeight::new(lambda, args.similitude)?)
}

/// Splits `q = p^m` with `p` prime.
fn prime_power(q: u64) -> Result<(u64, u32), Failure> {
    if q < 2 {
        return Err(domain(format!("q = {q} is not a prime power")));
    }
    let p = (2..)
        .take_while(|d| *d <= q / d)
        .find(|d| q.is_multiple_of(*d))
        .unwrap_or(q);
    let (mut rest, mut m) = (q, 0u32);
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    if rest != 1 {
        return Err(domain(format!("q = {q} is not a prime power")));
    }
    Ok((p, m))
}

fn points(table: &FormsTable, genus: usize, q: Option<u64>, prime: Option<u64>, power: u32) -> Result<Output, Failure> {
    let (p, m) = match (q, prime) {
        (Some(q), _) => prime_power(q)?,
        (None, Some(p)) if is_prime(p) && power > 0 => (p, power),
        (None, Some(p)) => return Err(domain(format!("{p}^{power} is not a prime power"))),
        (None, None) => return Err(domain("either --q or --prime is required".into())),
    };
    let count = Euler::new(table).point_count(genus, p, m)?;
    let q = BigInt::from(p).pow(m);
    Ok(Output::ok(
        json!({"genus": genus, "q": number(&q), "points": number(&count)}),
        count.to_string(),
    ))
}

fn euler_output(lambda: &DominantWeight, result: &EulerResult) -> Output {
    let residue = match &result.general {
        Some((c, s)) => json!({"coefficient": c, "symbol": s.to_string()}),
        None => Value::Null,
    };
    let json = json!({
        "genus": lambda.rank(),
        "weight": lambda.lambda(),
        "similitude": lambda.similitude(),
        "motive": result.motive.to_json(),
        "display": result.motive.to_string(),
        "residue": residue,
        "missing": result.missing,
        "complete": result.is_complete(),
    });
    let mut text = result.motive.to_string();
    match &result.general {
        Some((c, s)) => text.push_str(&format!("\nresidue: {}", VirtualMotive::symbol(s.clone()).scale(*c))),
        None => text.push_str("\nresidue: none"),
    }
    if !result.missing.is_empty() {
        text.push_str(&format!("\nmissing: {}", result.missing.join(", ")));
    }
    Output {
        json,
        text,
        code: if result.is_complete() { 0 } else { EXIT_INCOMPLETE },
    }
}

fn parameter_json(psi: &ArthurParameter) -> Value {
    let factors: Vec<Value> = psi
        .factors
        .iter()
        .map(|f| {
            json!({
                "d": f.d,
                "family": f.key.family.name(),
                "weights": f.key.weights.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "parameter": psi.to_string(),
        "multiplicity": psi.multiplicity,
        "factors": factors,
        "u": u_vector(psi),
        "global_sign": global_sign(psi),
        "siegel": siegel_contributes(psi),
    })
}

fn sign_vector(u: &[i32]) -> String {
    let parts: Vec<String> = u.iter().map(|s| if *s > 0 { "+1".into() } else { "-1".into() }).collect();
    format!("({})", parts.join(", "))
}

fn params(table: &FormsTable, lambda: &DominantWeight) -> Result<Output, Failure> {
    let e = enumerate_parameters(lambda.lambda(), table)?;
    let general = e.general.as_ref().map(|key| {
        let count = match e.general_count {
            Count::Known(c) => json!(c),
            Count::Unknown => Value::Null,
        };
        json!({"family": key.to_string(), "count": count})
    });
    let missing: Vec<String> = e.missing.iter().map(|k| k.to_string()).collect();
    let json = json!({
        "genus": lambda.rank(),
        "weight": lambda.lambda(),
        "parameters": e.parameters.iter().map(parameter_json).collect::<Vec<_>>(),
        "general": general,
        "missing": missing,
    });
    let mut lines: Vec<String> = e
        .parameters
        .iter()
        .map(|psi| {
            let mult = if psi.multiplicity == 1 {
                String::new()
            } else {
                format!(" (multiplicity {})", psi.multiplicity)
            };
            format!(
                "{psi}{mult}  u = {}  sign = {:+}  siegel = {}",
                sign_vector(&u_vector(psi)),
                global_sign(psi),
                if siegel_contributes(psi) { "yes" } else { "no" }
            )
        })
        .collect();
    if let Some(key) = &e.general {
        let count = match e.general_count {
            Count::Known(c) => c.to_string(),
            Count::Unknown => "unknown".into(),
        };
        lines.push(format!("general: {key} (count {count})"));
    }
    if !missing.is_empty() {
        lines.push(format!("missing: {}", missing.join(", ")));
    }
    if lines.is_empty() {
        lines.push("none".into());
    }
    Ok(Output {
        json,
        text: lines.join("\n"),
        code: if missing.is_empty() { 0 } else { EXIT_INCOMPLETE },
    })
}

fn dim_siegel(table: &FormsTable, weight: &Weight, genus: Option<usize>) -> Result<Output, Failure> {
    if let Some(g) = genus {
        if g != weight.0.len() {
            return Err(domain(format!("weight has {} entries but genus is {g}", weight.0.len())));
        }
    }
    let d = dim_siegel_cusp(&weight.0, table)?;
    if d.is_complete() {
        return Ok(Output::ok(
            json!({"weight": weight.0, "dimension": d.known}),
            d.known.to_string(),
        ));
    }
    let unresolved: Vec<String> = d.unresolved.iter().map(|k| k.to_string()).collect();
    Ok(Output {
        json: json!({"weight": weight.0, "known": d.known, "unresolved": unresolved}),
        text: format!("at least {}; unresolved: {}", d.known, unresolved.join(", ")),
        code: EXIT_INCOMPLETE,
    })
}

fn gl_euler(n: usize, twist: GlTwist) -> Result<Output, Failure> {
    let value = trivial_multiplicity(n, twist)?;
    Ok(Output::ok(
        json!({"n": n, "twist": twist.to_string(), "multiplicity": value}),
        value.to_string(),
    ))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    if let Command::Selftest = cli.command {
        return Ok(selftest::run());
    }
    let table = load_table(cli.forms_table.as_ref())?;
    match &cli.command {
        Command::Points { genus, q, prime, power } => points(&table, *genus, *q, *prime, *power),
        Command::EulerC(args) => {
            let lambda = dominant(args)?;
            Ok(euler_output(&lambda, &Euler::new(&table).e_c(&lambda)?))
        }
        Command::EulerIh(args) => {
            let lambda = dominant(args)?;
            Ok(euler_output(&lambda, &Euler::new(&table).e_ih(&lambda)?))
        }
        Command::DimSiegel { weight, genus } => dim_siegel(&table, weight, *genus),
        Command::Params(args) => params(&table, &dominant(args)?),
        Command::GlEuler { n, twist } => gl_euler(*n, *twist),
        Command::Selftest => unreachable!("handled above"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("JSON serializes")),
                Format::Text => println!("{}", out.text),
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
