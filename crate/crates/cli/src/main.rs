use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use rootsc::counting::{
    best_coprime_pair, binomial, hk_lower_bound, max_coprime_formula, meets_bound, stirling2,
    ukl_size_formula,
};
use rootsc::dfa::{self, Dfa};
use rootsc::monoid::{
    closure, largest_two_generated, transformation_monoid, ukl_generators,
    LARGEST_TWO_GENERATED_MAX_N,
};
use rootsc::root::{root_automaton, unary_root};
use rootsc::verify::{run_suite, SuiteConfig, VerifyReport, SUITES};
use rootsc::Error;
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "rootsc",
    version,
    about = "Roots of regular languages and their state complexity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the root automaton of a DFA.
    Root(TransformArgs),
    /// Root of a unary DFA via its tail/loop shape.
    UnaryRoot(TransformArgs),
    /// Minimize a DFA.
    Minimize(IoArgs),
    /// Size and rank histogram of the transition monoid of a DFA.
    Monoid { input: PathBuf },
    /// Size of the two-cycle monoid U(k, l).
    Ukl(UklArgs),
    /// Stirling number of the second kind S(n, k).
    Stirling {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Analytic lower bound on the largest U(k, l) of degree n.
    Bound {
        #[arg(long)]
        n: usize,
    },
    /// Run a reproduction suite.
    Verify(VerifyArgs),
    /// Largest monoid generated by two transformations of degree n.
    Largest2 {
        #[arg(long)]
        n: usize,
        /// Largest degree the exhaustive search may attempt.
        #[arg(long, default_value_t = LARGEST_TWO_GENERATED_MAX_N)]
        budget: usize,
    },
}

#[derive(Args)]
struct IoArgs {
    input: PathBuf,
    /// Write the resulting DFA here; `-` for standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct TransformArgs {
    #[command(flatten)]
    io: IoArgs,
    #[arg(long)]
    minimize: bool,
}

#[derive(Args)]
struct UklArgs {
    #[arg(long, conflicts_with_all = ["k", "l"], required_unless_present_all = ["k", "l"])]
    n: Option<usize>,
    #[arg(long, requires = "l")]
    k: Option<usize>,
    #[arg(long, requires = "k")]
    l: Option<usize>,
    /// Print the closed-form size (the default output).
    #[arg(long)]
    formula: bool,
    /// Also enumerate the monoid and compare.
    #[arg(long)]
    enumerate: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, or `all`.
    #[arg(long)]
    suite: String,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    json: bool,
}

/// Failures that map to exit code 2.
enum Failure {
    Input(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Root(args) => cmd_transform(args, |d| Ok(root_automaton(d)?.into_dfa())),
        Command::UnaryRoot(args) => cmd_transform(args, unary_root),
        Command::Minimize(io) => {
            let d = read_dfa(&io.input)?;
            emit(&d.minimize(), io.output.as_deref())
        }
        Command::Monoid { input } => cmd_monoid(&input),
        Command::Ukl(args) => cmd_ukl(args),
        Command::Stirling { n, k } => {
            println!("{}", stirling2(n, k));
            Ok(true)
        }
        Command::Bound { n } => cmd_bound(n),
        Command::Verify(args) => cmd_verify(args),
        Command::Largest2 { n, budget } => {
            let found = largest_two_generated(n, budget)?;
            let (f, g) = &found.generators;
            println!("size={}", found.size);
            println!("generators={f} {g}");
            Ok(true)
        }
    }
}

fn read_dfa(path: &Path) -> Result<Dfa, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(dfa::parse(&text)?)
}

fn emit(d: &Dfa, output: Option<&Path>) -> Outcome {
    match output {
        Some(p) if p == Path::new("-") => print!("{d}"),
        Some(p) => fs::write(p, d.to_string())
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", p.display())))?,
        None => {}
    }
    println!("states={}", d.n());
    Ok(true)
}

fn cmd_transform(args: TransformArgs, op: impl Fn(&Dfa) -> rootsc::Result<Dfa>) -> Outcome {
    let d = read_dfa(&args.io.input)?;
    let mut out = op(&d)?;
    if args.minimize {
        out = out.minimize();
    }
    emit(&out, args.io.output.as_deref())
}

fn cmd_monoid(input: &Path) -> Outcome {
    let m = transformation_monoid(&read_dfa(input)?)?;
    println!("size={}", m.len());
    for (rank, count) in m.rank_histogram() {
        println!("rank {rank}: {count}");
    }
    Ok(true)
}

fn cmd_ukl(args: UklArgs) -> Outcome {
    let _ = args.formula;
    let (k, l) = match (args.n, args.k, args.l) {
        (Some(n), _, _) => {
            let (k, l) = best_coprime_pair(n)?;
            let size = ukl_size_formula(k, l)?;
            let predicted = &size - binomial(n as u64, 2);
            if args.json {
                let value = json!({
                    "n": n, "k": k, "l": l,
                    "formula": size.to_string(),
                    "predicted_root_states": predicted.to_string(),
                });
                println!("{value:#}");
            } else {
                println!("pair=({k},{l})");
                println!("formula={size}");
                println!("predicted_root_states={predicted}");
            }
            return Ok(true);
        }
        (None, Some(k), Some(l)) => (k, l),
        _ => return Err(Failure::Input("give --n or both --k and --l".into())),
    };
    let size = ukl_size_formula(k, l)?;
    let enumerated = if args.enumerate {
        let (alpha, beta) = ukl_generators(k, l)?;
        Some(BigUint::from(closure(&[alpha, beta])?.len()))
    } else {
        None
    };
    let agree = enumerated.as_ref().is_none_or(|e| *e == size);
    if args.json {
        let mut value = json!({ "k": k, "l": l, "formula": size.to_string() });
        if let Some(e) = &enumerated {
            value["closure"] = json!(e.to_string());
            value["agree"] = json!(agree);
        }
        println!("{value:#}");
    } else {
        println!("{size}");
        if let Some(e) = &enumerated {
            println!("closure={e}");
            println!("{}", if agree { "AGREE" } else { "DISAGREE" });
        }
    }
    Ok(agree)
}

fn cmd_bound(n: usize) -> Outcome {
    let bound = hk_lower_bound(n);
    println!("{bound}");
    if let Some((k, l, size)) = max_coprime_formula(n) {
        let holds = meets_bound(&size, bound);
        println!("max_formula={size} k={k} l={l} holds={holds}");
    }
    Ok(true)
}

fn cmd_verify(args: VerifyArgs) -> Outcome {
    let cfg = SuiteConfig {
        max_n: args.max_n,
        seed: args.seed,
        k: args.k,
        l: args.l,
    };
    let names: Vec<&str> = if args.suite == "all" {
        if args.max_n.is_some() || args.k.is_some() || args.l.is_some() {
            return Err(Failure::Input(
                "--max-n, --k and --l apply to a single suite, not to all".into(),
            ));
        }
        SUITES.to_vec()
    } else {
        vec![args.suite.as_str()]
    };
    // validate every name before running anything
    if let Some(bad) = names.iter().find(|n| !SUITES.contains(n)) {
        return Err(Failure::Input(format!(
            "unknown suite {bad:?}; expected all or one of {}",
            SUITES.join(", ")
        )));
    }
    let mut reports: Vec<VerifyReport> = Vec::new();
    for name in names {
        reports.push(run_suite(name, &cfg)?);
    }
    let pass = reports.iter().all(|r| r.pass);
    if args.json {
        if reports.len() == 1 {
            println!("{}", reports[0].to_json());
        } else {
            println!(
                "{}",
                serde_json::to_string_pretty(&reports).expect("reports serialize")
            );
        }
    } else {
        print!("{}", rootsc::verify::render(&reports));
    }
    Ok(pass)
}
