use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use torilab_cli::{execute, BudgetSpec, JobRequest};

#[derive(Parser)]
#[command(name = "torilab", version, about = "Exact computations with algebraic tori, one JSON job per run")]
struct Cli {
    /// Cap on the number of cochain tuples |G|^i.
    #[arg(long, global = true)]
    budget_elems: Option<u64>,
    /// Cap on the cochain dimension |G|^i * dim M.
    #[arg(long, global = true)]
    budget_dim: Option<u64>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArg {
    /// JSON input document, or `-` for standard input.
    #[arg(long)]
    input: String,
}

#[derive(Subcommand)]
enum Command {
    /// Group cohomology of a lattice.
    Cohom(InputArg),
    /// Lattice-level Tate-Shafarevich kernel of a torus.
    Sha(ShaArgs),
    #[command(subcommand)]
    Tori(ToriCommand),
    #[command(subcommand)]
    Glz(GlzCommand),
    /// Picard and unit groups of an open subset of the projective line.
    Picard(InputArg),
    /// Class set of a split torus.
    Classset(InputArg),
    /// Places whose removal trivializes the class set.
    #[command(name = "condT")]
    CondT(InputArg),
    /// Class group of an imaginary quadratic order.
    Classgroup {
        #[arg(short = 'D', allow_negative_numbers = true)]
        discriminant: i64,
    },
    /// Artin-Schreier class counts by degree.
    ArtinSchreier {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        max_degree: usize,
    },
    /// Residue maps over F_p(t).
    Residue {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        deg: u8,
        #[arg(long)]
        input: String,
    },
    /// A full job request document.
    Run(InputArg),
}

#[derive(Args)]
struct ShaArgs {
    #[arg(long, conflicts_with_all = ["torus", "datum", "bound"])]
    input: Option<String>,
    #[arg(long, requires_all = ["datum", "bound"])]
    torus: Option<String>,
    #[arg(long)]
    datum: Option<String>,
    #[arg(long)]
    bound: Option<usize>,
    #[arg(long)]
    ell: Option<u64>,
}

#[derive(Subcommand)]
enum ToriCommand {
    Classify(InputArg),
    Isom(InputArg),
    Census(InputArg),
}

#[derive(Subcommand)]
enum GlzCommand {
    /// Conjugacy classes of finite subgroups of GL_d(Z).
    Subgroups {
        #[arg(long)]
        dim: usize,
    },
}

fn read(source: &str) -> Result<Value, String> {
    let text = if source == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("reading standard input: {e}"))?;
        s
    } else {
        std::fs::read_to_string(source).map_err(|e| format!("reading {source}: {e}"))?
    };
    serde_json::from_str(&text).map_err(|e| format!("{source} is not JSON: {e}"))
}

fn request(cli: &Cli) -> Result<JobRequest, String> {
    let (command, input) = match &cli.command {
        Command::Cohom(a) => ("cohom", read(&a.input)?),
        Command::Sha(s) => {
            let mut v = match (&s.input, &s.torus, &s.datum, s.bound) {
                (Some(i), ..) => read(i)?,
                (None, Some(t), Some(d), Some(b)) => json!({"torus": read(t)?, "datum": read(d)?, "bound": b}),
                _ => return Err("sha needs --input, or --torus, --datum and --bound".into()),
            };
            if let (Some(ell), Some(obj)) = (s.ell, v.as_object_mut()) {
                obj.insert("ell".into(), json!(ell));
                obj.insert("degree".into(), json!(2));
            }
            ("sha", v)
        }
        Command::Tori(ToriCommand::Classify(a)) => ("tori classify", read(&a.input)?),
        Command::Tori(ToriCommand::Isom(a)) => ("tori isom", read(&a.input)?),
        Command::Tori(ToriCommand::Census(a)) => ("tori census", read(&a.input)?),
        Command::Glz(GlzCommand::Subgroups { dim }) => ("glz subgroups", json!({ "dim": dim })),
        Command::Picard(a) => ("picard", read(&a.input)?),
        Command::Classset(a) => ("classset", read(&a.input)?),
        Command::CondT(a) => ("condT", read(&a.input)?),
        Command::Classgroup { discriminant } => ("classgroup", json!({ "discriminant": discriminant })),
        Command::ArtinSchreier { p, max_degree } => ("artin-schreier", json!({ "p": p, "max_degree": max_degree })),
        Command::Residue { deg: 1, input } => ("residue deg1", read(input)?),
        Command::Residue { input, .. } => ("residue deg2", read(input)?),
        Command::Run(a) => {
            let mut req: JobRequest =
                serde_json::from_value(read(&a.input)?).map_err(|e| format!("not a job request: {e}"))?;
            override_budget(cli, &mut req.budget);
            return Ok(req);
        }
    };
    let mut budget = BudgetSpec::default();
    override_budget(cli, &mut budget);
    Ok(JobRequest { command: command.into(), input, budget })
}

fn override_budget(cli: &Cli, b: &mut BudgetSpec) {
    if let Some(e) = cli.budget_elems {
        b.max_elems = e;
    }
    if let Some(d) = cli.budget_dim {
        b.max_dim = d;
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let req = match request(&cli) {
        Ok(r) => r,
        Err(msg) => {
            let err = json!({"status": "invalid-input", "error": {"kind": "io", "reason": msg}});
            eprintln!("{err}");
            return ExitCode::from(2);
        }
    };
    let result = execute(&req);
    let text = result.to_canonical();
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, format!("{text}\n")) {
                eprintln!("writing {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => println!("{text}"),
    }
    ExitCode::from(result.exit_code() as u8)
}
