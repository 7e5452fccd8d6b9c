use std::io::Read;
use std::process::ExitCode;

use cellcut::random::{random_document, RandomParams};
use cellcut::{run, CliError, Command, ComplexDocument, Options};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "cellcut", version, about = "Cuts, flows, spanning forests and critical groups of cell complexes")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Common {
    /// JSON document, or `-` for stdin.
    input: String,
    /// Emit a JSON report.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct WithForest {
    #[command(flatten)]
    common: Common,
    /// Facet labels of the spanning forest (default: lexicographically first).
    #[arg(long, value_delimiter = ',')]
    forest: Option<Vec<String>>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reduced homology groups.
    Homology {
        #[command(flatten)]
        common: Common,
        /// Only this dimension.
        #[arg(long, allow_negative_numbers = true)]
        dim: Option<i32>,
    },
    /// Spanning forests and relatively acyclic subcomplexes with torsion.
    Forests(Common),
    /// Torsion-weighted forest counts.
    Tau(Common),
    /// Cut vectors of the fundamental bonds of a forest.
    Cutbasis(WithForest),
    /// Flow vectors of the fundamental circuits of a forest.
    Flowbasis(WithForest),
    /// Critical, cocritical, cutflow and discriminant groups.
    Groups(Common),
    /// Hermite-constant inequalities for the cut and flow lattices.
    Bounds(Common),
    /// Run the whole identity suite.
    Verify(WithForest),
    /// Random subcomplex of the complete simplicial complex.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        vertices: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long = "prob", default_value_t = 0.5)]
        facet_prob: f64,
    },
}

fn read_input(path: &str) -> Result<String, CliError> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(|e| CliError::Input(format!("reading stdin: {}", e)))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("reading {}: {}", path, e)))?;
    }
    Ok(text)
}

fn execute(cli: Cli) -> Result<(String, bool), CliError> {
    let mut opts = Options::from_env()?;
    let (command, common) = match cli.command {
        Cmd::Random { seed, vertices, dim, facet_prob } => {
            let doc = random_document(seed, RandomParams { vertices, dim, facet_prob })
                .map_err(|e| CliError::Input(e.to_string()))?;
            return Ok((doc.emit(), false));
        }
        Cmd::Homology { common, dim } => (Command::Homology { dim }, common),
        Cmd::Forests(common) => (Command::Forests, common),
        Cmd::Tau(common) => (Command::Tau, common),
        Cmd::Groups(common) => (Command::Groups, common),
        Cmd::Bounds(common) => (Command::Bounds, common),
        Cmd::Cutbasis(w) => {
            opts.forest = w.forest;
            (Command::CutBasis, w.common)
        }
        Cmd::Flowbasis(w) => {
            opts.forest = w.forest;
            (Command::FlowBasis, w.common)
        }
        Cmd::Verify(w) => {
            opts.forest = w.forest;
            (Command::Verify, w.common)
        }
    };
    let complex = ComplexDocument::parse(&read_input(&common.input)?)?.to_complex()?;
    let report = run(&command, &complex, &opts)?;
    let text = if common.json { report.render_json() } else { report.render_text() };
    Ok((text, report.failed()))
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok((text, failed)) => {
            print!("{}", text);
            ExitCode::from(if failed { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("cellcut: {}", e);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
