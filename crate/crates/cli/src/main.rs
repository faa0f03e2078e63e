//! `duality`: check finite lattices and algebras, build their dual spaces
//! and verify round trips.
//!
//! Exit status: 0 when every verdict passes, 1 when some verdict fails, 2 on
//! unreadable input or bad usage.

mod commands;
mod load;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use duality_core::algebra::Signature;
use duality_core::corpus::CorpusConfig;
use duality_core::duality::Mode;
use duality_core::kripke::DEFAULT_BUDGET;
use duality_core::order::SubalgebraSignature;

use commands::Context;
use load::{InputError, Loaded};
use report::RunReport;

#[derive(Parser, Debug)]
#[command(name = "duality", version, about = "Finite lattice and algebra duality workbench")]
struct Cli {
    /// Write the machine-readable report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    report: Option<PathBuf>,
    /// Output on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest carrier built during verification. DUALITY_BUDGET overrides it.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Truth lattice: a built-in name such as std:chain3, or a lattice file.
    #[arg(long, global = true, value_name = "LATTICE")]
    truth: Option<String>,
    /// Extra document files to load before resolving references.
    #[arg(long = "include", short = 'I', global = true, value_name = "FILE")]
    include: Vec<String>,
    /// Write the document produced by the command to this file.
    #[arg(long, global = true, value_name = "PATH")]
    emit: Option<PathBuf>,
    /// Record wall-clock timings in the report.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SigArg {
    Bdl,
    Heyting,
    Lvl,
    IspI,
}

impl From<SigArg> for Signature {
    fn from(s: SigArg) -> Self {
        match s {
            SigArg::Bdl => Signature::Bdl,
            SigArg::Heyting => Signature::Heyting,
            SigArg::Lvl => Signature::Lvl,
            SigArg::IspI => Signature::IspI,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SubSigArg {
    Bdl,
    Heyting,
    Lvl,
}

impl From<SubSigArg> for SubalgebraSignature {
    fn from(s: SubSigArg) -> Self {
        match s {
            SubSigArg::Bdl => SubalgebraSignature::BoundedLattice,
            SubSigArg::Heyting => SubalgebraSignature::Heyting,
            SubSigArg::Lvl => SubalgebraSignature::Lvl,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a lattice document as a bounded distributive lattice.
    CheckLattice { file: String },
    /// Check the L-VL algebra axioms.
    Axioms {
        file: String,
        /// Use the unamended form of clause (iv).
        #[arg(long)]
        literal_iv: bool,
    },
    /// List the subalgebras of a lattice.
    Subalgebras {
        file: String,
        #[arg(long, value_enum, default_value_t = SubSigArg::Bdl)]
        signature: SubSigArg,
    },
    /// Enumerate homomorphisms into another algebra.
    Homs {
        file: String,
        #[arg(long, value_name = "FILE")]
        into: String,
        /// Defaults to the largest signature both sides share.
        #[arg(long, value_enum)]
        signature: Option<SigArg>,
    },
    /// Build the intuitionistic power of a lattice over a frame.
    Power { lattice: String, frame: String },
    /// Build the subalgebra generated by named elements.
    Generate {
        file: String,
        #[arg(long = "gen", required = true, value_name = "ELEMENT")]
        gens: Vec<String>,
    },
    /// Build the dual space of an algebra.
    Dualize {
        file: String,
        #[arg(long)]
        mode: Mode,
    },
    /// Build the algebra of a space.
    Reconstruct {
        file: String,
        #[arg(long)]
        mode: Mode,
    },
    /// Verify both natural maps for an algebra or a space.
    Roundtrip {
        file: String,
        #[arg(long)]
        mode: Mode,
    },
    /// Check that a space is an object of the space category.
    VerifySpace {
        file: String,
        #[arg(long)]
        mode: Mode,
    },
    /// Check the Kripke model condition on an algebra with implication.
    KripkeCheck { file: String },
    /// Compare homomorphisms into the truth lattice with prime filters.
    Spectrum { file: String },
    /// Run every verification suite over the enumerated corpus.
    CorpusRun {
        #[arg(long, default_value_t = 7)]
        max_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Defaults to min(max-size, 4).
        #[arg(long)]
        max_worlds: Option<usize>,
        /// Composable morphism pairs sampled per mode.
        #[arg(long, default_value_t = 64)]
        pairs: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckLattice { .. } => "check-lattice",
            Command::Axioms { .. } => "axioms",
            Command::Subalgebras { .. } => "subalgebras",
            Command::Homs { .. } => "homs",
            Command::Power { .. } => "power",
            Command::Generate { .. } => "generate",
            Command::Dualize { .. } => "dualize",
            Command::Reconstruct { .. } => "reconstruct",
            Command::Roundtrip { .. } => "roundtrip",
            Command::VerifySpace { .. } => "verify-space",
            Command::KripkeCheck { .. } => "kripke-check",
            Command::Spectrum { .. } => "spectrum",
            Command::CorpusRun { .. } => "corpus-run",
        }
    }
}

fn budget(flag: usize) -> Result<usize, InputError> {
    match std::env::var("DUALITY_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| InputError::Usage(format!("DUALITY_BUDGET must be a non-negative integer, got `{v}`"))),
        Err(_) => Ok(flag),
    }
}

fn run(cli: &Cli) -> Result<RunReport, InputError> {
    let start = Instant::now();
    let mut ctx =
        Context { loaded: Loaded::default(), budget: budget(cli.budget)?, truth: cli.truth.clone(), emitted: None };
    for f in &cli.include {
        ctx.loaded.add(f)?;
    }
    let mut extra_timings = Default::default();
    let (checks, details) = match &cli.command {
        Command::CheckLattice { file } => commands::check_lattice(&mut ctx, file)?,
        Command::Axioms { file, literal_iv } => commands::axioms(&mut ctx, file, *literal_iv)?,
        Command::Subalgebras { file, signature } => commands::subalgebras(&mut ctx, file, (*signature).into())?,
        Command::Homs { file, into, signature } => {
            commands::homs(&mut ctx, file, into, signature.map(Signature::from))?
        }
        Command::Power { lattice, frame } => commands::power(&mut ctx, lattice, frame)?,
        Command::Generate { file, gens } => commands::generate(&mut ctx, file, gens)?,
        Command::Dualize { file, mode } => commands::dualize(&mut ctx, file, *mode)?,
        Command::Reconstruct { file, mode } => commands::reconstruct(&mut ctx, file, *mode)?,
        Command::Roundtrip { file, mode } => commands::roundtrip(&mut ctx, file, *mode)?,
        Command::VerifySpace { file, mode } => commands::verify_space(&mut ctx, file, *mode)?,
        Command::KripkeCheck { file } => commands::kripke_check(&mut ctx, file)?,
        Command::Spectrum { file } => commands::spectrum(&mut ctx, file)?,
        Command::CorpusRun { max_size, seed, max_worlds, pairs } => {
            if *max_size < 2 {
                return Err(InputError::Usage("--max-size must be at least 2".into()));
            }
            let mut config = CorpusConfig::new(*max_size, *seed);
            config.budget = ctx.budget;
            config.pairs_per_mode = *pairs;
            if let Some(w) = max_worlds {
                config.max_worlds = *w;
            }
            let (c, d, t) = commands::corpus(&config, cli.timings);
            extra_timings = t;
            (c, d)
        }
    };
    ctx.loaded.note_builtins();
    if let (Some(path), Some(doc)) = (&cli.emit, &ctx.emitted) {
        std::fs::write(path, commands::emit_text(doc))
            .map_err(|source| InputError::Io { path: path.display().to_string(), source })?;
    } else if cli.emit.is_some() {
        return Err(InputError::Usage(format!("`{}` produces no document to emit", cli.command.name())));
    }
    let mut report = RunReport::new(cli.command.name(), ctx.loaded.inputs, checks, details);
    if cli.timings {
        report.timings = extra_timings;
        report.timings.insert("total".into(), start.elapsed().as_millis());
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(report) => {
            if let Some(path) = &cli.report {
                if let Err(e) = std::fs::write(path, report.to_json()) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            match cli.format {
                Format::Text => print!("{}", report.to_text()),
                Format::Machine => print!("{}", report.to_json()),
            }
            ExitCode::from(report.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
