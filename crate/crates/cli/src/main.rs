use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cosetdyn::gallery::write_gallery;
use cosetdyn::{run, Command, Format, RunOptions};

#[derive(Parser)]
#[command(name = "cosetdyn", version, about = "Coset codings and decompositions of group shifts")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a spec file and check every section.
    Validate(SpecArgs),
    /// Split a group shift into full shifts and a permutation.
    Decompose(SpecArgs),
    /// Label a generated graph's truncation as transitive, cyclic or wandering.
    Classify(SpecArgs),
    /// Growth rates of a shift, generated graph or matrix.
    Entropy(SpecArgs),
    /// Write a Graphviz rendering of the target section.
    ExportDot(SpecArgs),
    /// List the bundled examples, or write them to `--out`.
    Examples(Common),
}

#[derive(Args)]
struct SpecArgs {
    /// Spec file to read.
    spec: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Section to operate on; defaults to the last applicable one.
    #[arg(long)]
    target: Option<String>,
    /// Truncation radius for generated graphs.
    #[arg(long)]
    radius: Option<u64>,
    /// Longest word or path counted.
    #[arg(long = "nmax")]
    n_max: Option<usize>,
    /// Longest word on which a decomposition is verified.
    #[arg(long)]
    verify_depth: Option<usize>,
    /// Report format.
    #[arg(long, value_enum, default_value_t = OutFormat::Human)]
    format: OutFormat,
    /// Include wall-clock time in the report.
    #[arg(long)]
    timing: bool,
    /// Output path: the DOT file for `export-dot`, a directory for
    /// `examples`, the report otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Human,
    Machine,
}

fn execute(command: Command, text: &str, common: &Common) -> Result<bool, String> {
    let opts = RunOptions {
        radius: common.radius,
        n_max: common.n_max,
        verify_depth: common.verify_depth,
        target: common.target.clone(),
        timing: common.timing,
    };
    let report = run(command, text, &opts).map_err(|e| e.to_string())?;
    let format = match common.format {
        OutFormat::Human => Format::Human,
        OutFormat::Machine => Format::Machine,
    };
    let rendered = report.render(format);
    match (&common.out, command) {
        (Some(dir), Command::Examples) => {
            let paths = write_gallery(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
            log::info!("wrote {} specs to {}", paths.len(), dir.display());
            print!("{rendered}");
        }
        (Some(path), Command::ExportDot) => {
            let dot = report.dot.as_deref().unwrap_or_default();
            write(path, dot)?;
            print!("{rendered}");
        }
        (Some(path), _) => write(path, &rendered)?,
        (None, Command::ExportDot) => print!("{}", report.dot.as_deref().unwrap_or_default()),
        (None, _) => print!("{rendered}"),
    }
    Ok(report.passed())
}

fn write(path: &Path, text: &str) -> Result<(), String> {
    std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let (command, spec, common) = match &cli.command {
        Cmd::Validate(a) => (Command::Validate, Some(&a.spec), &a.common),
        Cmd::Decompose(a) => (Command::Decompose, Some(&a.spec), &a.common),
        Cmd::Classify(a) => (Command::Classify, Some(&a.spec), &a.common),
        Cmd::Entropy(a) => (Command::Entropy, Some(&a.spec), &a.common),
        Cmd::ExportDot(a) => (Command::ExportDot, Some(&a.spec), &a.common),
        Cmd::Examples(c) => (Command::Examples, None, c),
    };
    let text = match spec.map(std::fs::read_to_string).transpose() {
        Ok(t) => t.unwrap_or_default(),
        Err(e) => {
            eprintln!("error: {}: {e}", spec.unwrap().display());
            return ExitCode::from(2);
        }
    };
    match execute(command, &text, common) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
