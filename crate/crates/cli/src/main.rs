use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hoinfo::{EstimatorConfig, GeneratorSpec};
use hoinfo_cli::batch::{run_batch, BatchOptions};
use hoinfo_cli::input::{self, DistributionFile, InputFormat, LoadedInput};
use hoinfo_cli::report::{self, OutputFormat, RunReport};

/// Higher-order information measures on discrete distributions.
#[derive(Parser)]
#[command(name = "hoinfo", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Joint entropy, total/dual total correlation, S- and O-information.
    Measures(RunArgs),
    /// Measures plus the Delta^k / Gamma^k sweep over k = 0..N.
    Spectrum(RunArgs),
    /// Generate a synthetic system.
    Gen(GenArgs),
    /// Run every input listed in a JSON manifest.
    Batch(BatchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    GiantBit,
    Parity,
    Random,
    PointMass,
}

#[derive(Args)]
struct GeneratorArgs {
    /// Order k (number of variables) for giant-bit and parity.
    #[arg(long)]
    order: Option<usize>,
    /// Per-variable alphabet size.
    #[arg(long)]
    alphabet: Option<usize>,
    /// Number of variables for random and point-mass.
    #[arg(long)]
    n_vars: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Shaping of random masses; large values approach uniform.
    #[arg(long, default_value_t = 1.0)]
    concentration: f64,
}

impl GeneratorArgs {
    fn spec(&self, kind: GenKind) -> Result<GeneratorSpec> {
        let order = || {
            self.order
                .ok_or_else(|| anyhow!("--order is required for this generator"))
        };
        Ok(match kind {
            GenKind::GiantBit => GeneratorSpec::GiantBit {
                order: order()?,
                alphabet: self.alphabet.unwrap_or(2),
            },
            GenKind::Parity => GeneratorSpec::Parity {
                order: order()?,
                alphabet: self.alphabet.unwrap_or(2),
            },
            GenKind::Random => GeneratorSpec::Random {
                n_vars: self
                    .n_vars
                    .ok_or_else(|| anyhow!("--n-vars is required for random"))?,
                alphabet: self.alphabet.unwrap_or(2),
                seed: self.seed,
                concentration: self.concentration,
            },
            GenKind::PointMass => GeneratorSpec::PointMass {
                n_vars: self.n_vars.unwrap_or(1),
                alphabet: self.alphabet.unwrap_or(1),
            },
        })
    }
}

#[derive(Args)]
struct ConfigArgs {
    /// Logarithm base of reported values.
    #[arg(long, default_value_t = 2.0)]
    base: f64,
    /// Zero tolerance for sign and order diagnostics, in bits.
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    /// Allowed deviation of the total mass from 1.
    #[arg(long, default_value_t = 1e-9)]
    norm_tolerance: f64,
    /// Largest state space stored as a dense table.
    #[arg(long, default_value_t = 1 << 26)]
    max_dense_states: usize,
}

impl ConfigArgs {
    fn config(&self) -> Result<EstimatorConfig> {
        let c = EstimatorConfig {
            log_base: self.base,
            normalization_tolerance: self.norm_tolerance,
            zero_tolerance: self.tolerance,
            max_dense_states: self.max_dense_states,
        };
        c.validate()?;
        Ok(c)
    }
}

#[derive(Args)]
struct RunArgs {
    /// Distribution JSON or sample CSV file.
    #[arg(long, conflicts_with_all = ["gen", "spec"])]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    format: InputFormat,
    /// Generate the input instead of reading it.
    #[arg(long, value_enum, conflicts_with = "spec")]
    gen: Option<GenKind>,
    /// Generator spec as JSON, e.g. '{"kind":"independent-product","parts":[...]}'.
    #[arg(long)]
    spec: Option<String>,
    #[command(flatten)]
    generator: GeneratorArgs,
    #[command(flatten)]
    config: ConfigArgs,
    /// Divide masses by their total instead of rejecting unnormalized input.
    #[arg(long)]
    normalize: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: GenKind,
    #[command(flatten)]
    generator: GeneratorArgs,
    #[command(flatten)]
    config: ConfigArgs,
    /// Write the distribution JSON to standard output instead of a summary.
    #[arg(long)]
    emit: bool,
}

#[derive(Args)]
struct BatchArgs {
    /// JSON manifest: a list of paths, {"input": path} or {"gen": spec} items.
    manifest: PathBuf,
    /// Maximum number of items processed concurrently.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Include the Delta/Gamma spectrum in every report.
    #[arg(long)]
    spectrum: bool,
    /// Default format for file items.
    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    format: InputFormat,
    #[command(flatten)]
    config: ConfigArgs,
    /// Renormalize every file item instead of rejecting it.
    #[arg(long)]
    normalize: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,
}

fn load(args: &RunArgs, config: &EstimatorConfig) -> Result<LoadedInput> {
    if let Some(path) = &args.input {
        return input::load_file(path, args.format, config, args.normalize);
    }
    if let Some(text) = &args.spec {
        let spec: GeneratorSpec = serde_json::from_str(text).context("malformed --spec")?;
        return input::load_generated(&spec, config);
    }
    match args.gen {
        Some(kind) => input::load_generated(&args.generator.spec(kind)?, config),
        None => bail!("one of --input, --gen or --spec is required"),
    }
}

fn run_single(args: &RunArgs, spectrum: bool) -> Result<()> {
    let config = args.config.config()?;
    let loaded = load(args, &config)?;
    let report = RunReport::compute(loaded, &config, spectrum)?;
    let stdout = io::stdout().lock();
    match args.output {
        OutputFormat::Json => report::write_json(stdout, &report),
        OutputFormat::Csv => report::write_csv(stdout, &report),
    }
}

fn run_gen(args: &GenArgs) -> Result<()> {
    let config = args.config.config()?;
    let spec = args.generator.spec(args.kind)?;
    let dist = spec.generate(&config)?;
    let mut stdout = io::stdout().lock();
    if args.emit {
        serde_json::to_writer(&mut stdout, &DistributionFile::from_distribution(&dist))?;
        writeln!(stdout)?;
    } else {
        writeln!(
            stdout,
            "{spec}: {} variables, cardinalities {:?}, {} non-zero states",
            dist.n_vars(),
            dist.cardinalities(),
            dist.support().len()
        )?;
    }
    Ok(())
}

fn run_batch_cmd(args: &BatchArgs) -> Result<bool> {
    let config = args.config.config()?;
    let text = fs::read_to_string(&args.manifest)
        .with_context(|| format!("cannot read {}", args.manifest.display()))?;
    let items = input::parse_manifest(&text)?;
    let base = args
        .manifest
        .parent()
        .map(PathBuf::from)
        .unwrap_or_default();
    let opts = BatchOptions {
        config,
        format: args.format,
        renormalize: args.normalize,
        spectrum: args.spectrum,
        jobs: args.jobs,
        output: args.output,
    };
    let failures = run_batch(&items, &base, &opts, &mut io::stdout().lock())?;
    if failures > 0 {
        eprintln!("hoinfo: {failures} of {} batch items failed", items.len());
    }
    Ok(failures == 0)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    let too_small = err.chain().any(|e| {
        matches!(
            e.downcast_ref::<hoinfo::Error>(),
            Some(hoinfo::Error::SystemTooSmall { .. })
        )
    });
    if too_small {
        2
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Measures(args) => run_single(args, false).map(|_| true),
        Command::Spectrum(args) => run_single(args, true).map(|_| true),
        Command::Gen(args) => run_gen(args).map(|_| true),
        Command::Batch(args) => run_batch_cmd(args),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("hoinfo: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
