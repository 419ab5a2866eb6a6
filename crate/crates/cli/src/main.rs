//! `adams`: validation, homotopy tables and verification suites for
//! truncated simplicial commutative algebras.

mod input;
mod report;
mod suites;

use std::process::ExitCode;

use adams_tower::bar::DEFAULT_CAP;
use adams_tower::exactlin::Field;
use adams_tower::simplicial::schema::export_algebra;
use adams_tower::simplicial::Truncation;
use clap::{Parser, Subcommand, ValueEnum};

use input::{load, Input, LoadError, DEFAULT_SET, FIXTURES};
use report::{Report, Section, Verdict};
use suites::{Params, Suite};

#[derive(Parser, Debug)]
#[command(name = "adams", version, about = "Exact checks on bar constructions and Adams towers")]
struct Cli {
    /// Coefficient field: `q` for the rationals, `fp:<p>` for F_p.
    #[arg(long, global = true, default_value = "q", value_parser = parse_field)]
    field: Field,
    /// Top simplicial degree N of the truncation.
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    max_degree: u64,
    /// Top weight W of the truncation.
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    max_weight: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    out: Format,
    /// Seed for the randomized sampling checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest basis block to enumerate; larger blocks are skipped and reported.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: u128,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Human,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the simplicial and algebra identities of an input.
    Validate {
        /// Fixture name or path to a file in the input schema.
        input: String,
        /// Random products sampled on the input and on its bar construction.
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Homotopy groups per weight.
    Pi {
        input: String,
        /// Highest degree; defaults to N - 1.
        #[arg(long)]
        q_max: Option<usize>,
        /// Apply the bar construction this many times first.
        #[arg(long, default_value_t = 0)]
        bar: usize,
    },
    /// Run a verification suite over a set of fixtures.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Inputs to run on (repeatable); defaults to k1 and free.
        #[arg(long = "fixture", short = 'x')]
        fixtures: Vec<String>,
        /// Largest tower level for the tower and twisting suites.
        #[arg(long, default_value_t = 3)]
        r_max: usize,
        /// Convergence: the target level t.
        #[arg(long, default_value_t = 2)]
        t: usize,
        /// Convergence: the homotopy degree q.
        #[arg(long, default_value_t = 0)]
        q: usize,
    },
    /// List the bundled fixtures.
    Fixtures,
    /// Print a fixture in the input schema.
    Export { fixture: String },
}

fn parse_field(s: &str) -> Result<Field, String> {
    match s {
        "q" | "Q" => Ok(Field::Rational),
        _ => {
            let p = s.strip_prefix("fp:").ok_or_else(|| format!("expected `q` or `fp:<p>`, got `{s}`"))?;
            let p: u64 = p.parse().map_err(|_| format!("`{p}` is not an integer"))?;
            Field::prime(p).map_err(|e| e.to_string())
        }
    }
}

struct Failure(String);

impl From<adams_tower::Error> for Failure {
    fn from(e: adams_tower::Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        Failure(e.to_string())
    }
}

fn header(cli: &Cli, inputs: &[Input]) -> Vec<(String, String)> {
    let mut meta = Vec::new();
    // files carry their own field and truncation; report what was used
    let (field, trunc) = match inputs.first() {
        Some(i) => suites::describe(i.alg.field(), i.alg.truncation()),
        None => suites::describe(cli.field, truncation(cli)),
    };
    meta.push(("field".into(), field));
    meta.push(("truncation".into(), trunc));
    meta.push(("seed".into(), cli.seed.to_string()));
    meta.push(("cap".into(), cli.cap.to_string()));
    for i in inputs {
        meta.push(("input".into(), format!("{} sha256 {}", i.name, i.hash)));
    }
    meta.push(("version".into(), env!("CARGO_PKG_VERSION").into()));
    meta
}

fn truncation(cli: &Cli) -> Truncation {
    Truncation::new(cli.max_degree as usize, cli.max_weight as usize)
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let t = truncation(cli);
    let mut report = Report::default();
    match &cli.command {
        Command::Validate { input, samples } => {
            let inp = load(input, cli.field, t)?;
            report.command = format!("validate {input}");
            report.meta = header(cli, std::slice::from_ref(&inp));
            report.sections = suites::validate(&inp, *samples, cli.seed, cli.cap);
        }
        Command::Pi { input, q_max, bar } => {
            let inp = load(input, cli.field, t)?;
            let q_max = q_max.unwrap_or(inp.alg.truncation().max_degree.saturating_sub(1));
            report.command = format!("pi {input} q_max={q_max} bar={bar}");
            report.meta = header(cli, std::slice::from_ref(&inp));
            report.sections.push(suites::pi(&inp, q_max, *bar, cli.cap)?);
        }
        Command::Verify { suite, fixtures, r_max, t: tt, q } => {
            let names: Vec<String> =
                if fixtures.is_empty() { DEFAULT_SET.iter().map(|s| s.to_string()).collect() } else { fixtures.clone() };
            let inputs: Vec<Input> = names.iter().map(|n| load(n, cli.field, t)).collect::<Result<_, _>>()?;
            let params = Params { cap: cli.cap, r_max: *r_max, t: *tt, q: *q };
            let chosen = suite.expand();
            report.command = format!("verify {} r_max={r_max} t={tt} q={q}", suite.name());
            report.meta = header(cli, &inputs);
            for s in &chosen {
                report.meta.push(("suite".into(), format!("{} {}", s.name(), s.version())));
            }
            let jobs: Vec<(Suite, &Input)> = chosen.iter().flat_map(|&s| inputs.iter().map(move |i| (s, i))).collect();
            let results: Vec<adams_tower::Result<Vec<Section>>> = std::thread::scope(|scope| {
                let handles: Vec<_> =
                    jobs.iter().map(|&(s, i)| scope.spawn(move || suites::run(s, i, &params))).collect();
                handles.into_iter().map(|h| h.join().expect("suite panicked")).collect()
            });
            for r in results {
                report.sections.extend(r?);
            }
        }
        Command::Export { .. } => unreachable!("handled before reporting"),
        Command::Fixtures => {
            report.command = "fixtures".into();
            let mut s = Section::new("fixtures", &["name", "description"]);
            for (n, d) in FIXTURES {
                s.push(row![n, d]);
            }
            report.sections.push(s);
        }
    }
    report.normalize();
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Export { fixture } = &cli.command {
        return match input::fixture(fixture, cli.field, truncation(&cli))
            .ok_or_else(|| format!("unknown fixture `{fixture}`; known: {}", input::fixture_names()))
            .and_then(|a| a.and_then(|a| export_algebra(a.as_ref())).map_err(|e| e.to_string()))
        {
            Ok(text) => {
                print!("{text}");
                ExitCode::SUCCESS
            }
            Err(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
        };
    }
    match run(&cli) {
        Ok(report) => {
            let text = match cli.out {
                Format::Human => report.human(),
                Format::Csv => report.csv(),
                Format::Text => report.text(),
            };
            print!("{text}");
            if report.verdict() == Verdict::Falsified {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
