//! `kktlab`: builds and verifies the algebras of kktlab-core from the shell.
//!
//! Every command prints a JSON report (or a flat table with `--emit table`)
//! and exits 0 when all checks pass, 1 when one fails and 2 on bad input.

mod commands;
mod report;
mod targets;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kktlab_core::sampling::{CheckMode, DEFAULT_SEED};

use report::{CliError, Outcome};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Emit {
    Json,
    Table,
}

#[derive(Parser, Debug)]
#[command(name = "kktlab", version, about = "Kantor-Koecher-Tits constructions over the rationals")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    emit: Emit,
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// `full` or `sampled=N`.
    #[arg(long, global = true, default_value = "full")]
    mode: CheckMode,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct DiagramArgs {
    /// Named Cartan type, e.g. E6 or A2xA2.
    #[arg(long = "type", conflicts_with = "gcm")]
    type_name: Option<String>,
    /// JSON file holding a generalized Cartan matrix.
    #[arg(long)]
    gcm: Option<PathBuf>,
    /// Node name (end, middle, vector, spinor, trivalent, black, ext-black) or 1-based index.
    #[arg(long)]
    node: String,
}

impl DiagramArgs {
    fn resolve(&self) -> Result<(kktlab_core::chevalley::Gcm, usize), CliError> {
        let g = targets::gcm(self.type_name.as_deref(), self.gcm.as_deref())?;
        let node = targets::node(self.type_name.as_deref(), &g, &self.node)?;
        Ok((g, node))
    }

    fn inputs(&self) -> Value {
        json!({
            "type": self.type_name,
            "gcm": self.gcm.as_ref().map(|p| p.display().to_string()),
            "node": self.node,
        })
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// der, str', str and con of a Jordan algebra, with embeddings and checks.
    Tower {
        #[arg(long)]
        jordan: String,
    },
    /// Checks one identity on a target.
    Verify {
        /// jordan, gjts, jacobi or grading.
        identity: String,
        /// Target, e.g. H3:O, eq7:H2:R:2 or chevalley:E8.
        #[arg(long)]
        target: String,
    },
    /// Grading of a Kac-Moody algebra by one node.
    Grade {
        #[command(flatten)]
        diagram: DiagramArgs,
    },
    /// Attaches a chain of n-1 nodes at a node and classifies the result.
    Extend {
        #[command(flatten)]
        diagram: DiagramArgs,
        #[arg(long)]
        n: usize,
    },
    /// Checks that the slotted product on n copies of g₋₁ is the extension's g₋₁.
    Theorem1 {
        #[command(flatten)]
        diagram: DiagramArgs,
        #[arg(long)]
        n: usize,
    },
    /// Closes a family of polynomial vector fields.
    Fields {
        /// conformal or generalized.
        #[arg(long)]
        family: String,
        /// Metric signature p,q.
        #[arg(long)]
        signature: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// The exceptional corner of the magic square.
    Magic,
}

fn run(cli: &Cli) -> (&'static str, Value, Result<Outcome, CliError>) {
    let (mode, seed) = (cli.mode, cli.seed);
    match &cli.command {
        Command::Tower { jordan } => ("tower", json!({ "jordan": jordan }), commands::tower(jordan, mode, seed)),
        Command::Verify { identity, target } => (
            "verify",
            json!({ "identity": identity, "target": target, "mode": mode.to_string() }),
            commands::verify(identity, target, mode, seed),
        ),
        Command::Grade { diagram } => {
            ("grade", diagram.inputs(), diagram.resolve().and_then(|(g, node)| commands::grade(&g, node)))
        }
        Command::Extend { diagram, n } => {
            let mut inputs = diagram.inputs();
            inputs["n"] = json!(n);
            ("extend", inputs, diagram.resolve().and_then(|(g, node)| commands::extend(&g, node, *n)))
        }
        Command::Theorem1 { diagram, n } => {
            let mut inputs = diagram.inputs();
            inputs["n"] = json!(n);
            ("theorem1", inputs, diagram.resolve().and_then(|(g, node)| commands::theorem1(&g, node, *n)))
        }
        Command::Fields { family, signature, n } => (
            "fields",
            json!({ "family": family, "signature": signature, "n": n }),
            commands::fields(family, signature, *n, seed),
        ),
        Command::Magic => ("magic", json!({}), commands::magic()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("KKTLAB_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let start = Instant::now();
    let (command, inputs, result) = run(&cli);
    let outcome = match result {
        Ok(o) => o,
        Err(CliError::Usage(m)) => {
            eprintln!("kktlab: {m}");
            return ExitCode::from(2);
        }
        Err(CliError::Failure(m)) => Outcome::new(json!({ "error": m }), false),
    };
    let report = report::envelope(command, inputs, cli.seed, &outcome, start.elapsed().as_millis());
    match cli.emit {
        Emit::Json => println!("{}", serde_json::to_string_pretty(&report).expect("json")),
        Emit::Table => print!("{}", report::table(&report)),
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
