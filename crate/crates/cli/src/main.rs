use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hecke::enumeration::parse_dmax;
use hecke::{
    decide, enumerate_reduced_with, parse_form, parse_matrix, reduce, EnumerationOptions, Error, HeckeGroup,
    ProjForm,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "hecke", version, about = "Reduce forms and decide membership in Hecke triangle groups")]
struct Cli {
    /// Group parameter; λ = 2cos(π/q).
    #[arg(long, global = true, default_value_t = 3)]
    q: u32,

    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,

    /// Bits of precision for decimal approximations.
    #[arg(long, global = true, default_value_t = 128, value_parser = clap::value_parser!(u32).range(8..=65536))]
    precision_bits: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Show λ, its minimal polynomial, the generators and the reduction alphabet.
    Info,
    /// Reduce a Γ-form, given directly or as its hyperbolic matrix.
    Reduce(ReduceArgs),
    /// Decide whether a matrix lies in the group.
    Decide {
        #[arg(long)]
        matrix: String,
    },
    /// List every reduced Γ-form with discriminant at most DMAX.
    Enumerate {
        #[arg(long)]
        dmax: String,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ReduceArgs {
    /// Form `[A;B;C;s]`.
    #[arg(long)]
    form: Option<String>,
    /// Hyperbolic matrix `[[a,b],[c,d]]`.
    #[arg(long)]
    matrix: Option<String>,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::InvalidParameter(_) => 2,
        Error::Domain(_) | Error::NotGammaForm(_) | Error::ContextMismatch { .. } => 3,
        Error::Diagnostic(_) => 4,
    }
}

/// Decimal digits certified by `bits` bits, less one for rounding.
fn digits(bits: u32) -> usize {
    ((bits as f64 * std::f64::consts::LOG10_2) as usize).saturating_sub(1)
}

/// Polynomial in `x`, highest degree first.
fn poly_text(coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()) {
        match (out.is_empty(), c.is_negative()) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        let mag = c.abs();
        if i == 0 || !mag.is_one() {
            let _ = write!(out, "{mag}");
        }
        match i {
            0 => {}
            1 => out.push('x'),
            _ => {
                let _ = write!(out, "x^{i}");
            }
        }
    }
    out
}

fn info(group: &HeckeGroup, cli: &Cli) -> (Value, String) {
    let ctx = group.ctx();
    let min_poly = poly_text(ctx.min_poly());
    let lambda = ctx.lambda_enclosure(cli.precision_bits).to_decimal(digits(cli.precision_bits));
    let alphabet: Vec<Value> = (1..group.q())
        .map(|k| {
            json!({
                "k": k,
                "g_inverse": group.g_inv(k),
                "left": group.interval_left(k).to_string(),
                "right": group.interval_right(k).to_string(),
            })
        })
        .collect();
    let value = json!({
        "q": group.q(),
        "degree": ctx.degree(),
        "min_poly": min_poly,
        "lambda": "L",
        "lambda_decimal": lambda,
        "S": group.s(),
        "T": group.t(),
        "U": group.u(),
        "alphabet": alphabet,
        "delta0": group.delta0().to_string(),
    });

    let mut text = String::new();
    let _ = writeln!(text, "q = {}", group.q());
    let _ = writeln!(text, "L = 2cos(pi/{}), root of {min_poly}", group.q());
    let _ = writeln!(text, "L ~ {lambda}");
    let _ = writeln!(text, "S = {}", group.s());
    let _ = writeln!(text, "T = {}", group.t());
    let _ = writeln!(text, "U = {}", group.u());
    for k in 1..group.q() {
        let _ = writeln!(
            text,
            "g{k}^-1 = {}  interval [{}, {})",
            group.g_inv(k),
            group.interval_left(k),
            group.interval_right(k)
        );
    }
    let _ = writeln!(text, "delta0 = {}", group.delta0());
    (value, text)
}

fn reduce_cmd(group: &HeckeGroup, args: &ReduceArgs, cli: &Cli) -> Result<(Value, String), Error> {
    let form = match (&args.form, &args.matrix) {
        (Some(f), _) => parse_form(group.ctx(), f)?,
        (None, Some(m)) => ProjForm::psi2_inv(&parse_matrix(group.ctx(), m)?)?,
        (None, None) => unreachable!("clap requires one payload"),
    };
    let r = reduce(&form, group)?;
    let displacement = r
        .hyperbolic_element
        .displacement(cli.precision_bits)?
        .to_decimal(digits(cli.precision_bits));
    let mut value = serde_json::to_value(&r).expect("serializable");
    value["displacement"] = json!(displacement);

    let mut text = String::new();
    let _ = writeln!(text, "form: {form}");
    let _ = writeln!(text, "level: {}", r.level);
    let list = |fs: &[ProjForm]| fs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" -> ");
    let _ = writeln!(text, "preperiod: {}", list(&r.preperiod));
    let _ = writeln!(text, "period: {}", list(&r.period));
    let word: Vec<String> = r.period_word.iter().map(|k| format!("g{k}^-1")).collect();
    let _ = writeln!(text, "period word: {}", word.join(" "));
    let _ = writeln!(text, "conjugator: {}", r.conjugator);
    let _ = writeln!(text, "hyperbolic element: {}", r.hyperbolic_element);
    let _ = writeln!(text, "displacement: {displacement}");
    Ok((value, text))
}

fn decide_cmd(group: &HeckeGroup, matrix: &str) -> Result<(Value, String), Error> {
    let m = parse_matrix(group.ctx(), matrix)?;
    let r = decide(&m, group);
    let value = serde_json::to_value(&r).expect("serializable");
    let mut text = String::new();
    let _ = writeln!(text, "member: {}", r.member);
    if let Some(w) = &r.word {
        let w: Vec<String> = w.iter().map(ToString::to_string).collect();
        let _ = writeln!(text, "word: {}", w.join(" "));
    }
    let _ = writeln!(text, "iterations: {} (bound {})", r.iterations, r.bound);
    Ok((value, text))
}

fn enumerate_cmd(group: &HeckeGroup, dmax: &str, threads: usize) -> Result<(Value, String), Error> {
    let dmax = parse_dmax(dmax)?;
    if threads == 0 {
        return Err(Error::InvalidParameter("--threads must be at least 1".into()));
    }
    let report = enumerate_reduced_with(&dmax, group, EnumerationOptions { cap: None, threads });
    let value = serde_json::to_value(&report).expect("serializable");
    let mut text = String::new();
    let _ = writeln!(
        text,
        "{} reduced forms with discriminant <= {} (word length cap {}, {} nodes)",
        report.forms.len(),
        report.dmax,
        report.word_length_cap,
        report.explored
    );
    for f in &report.forms {
        let w: Vec<String> = f.word.iter().map(ToString::to_string).collect();
        let _ = writeln!(text, "{}  D = {}  word {}", f.form, f.discriminant, w.join(","));
    }
    Ok((value, text))
}

fn run(cli: &Cli) -> Result<String, Error> {
    let group = HeckeGroup::new(cli.q)?;
    let (value, text) = match &cli.command {
        Command::Info => info(&group, cli),
        Command::Reduce(args) => reduce_cmd(&group, args, cli)?,
        Command::Decide { matrix } => decide_cmd(&group, matrix)?,
        Command::Enumerate { dmax, threads } => enumerate_cmd(&group, dmax, *threads)?,
    };
    Ok(match cli.output {
        Output::Json => format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable")),
        Output::Text => text,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
