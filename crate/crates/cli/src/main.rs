//! Command-line front end: datum presets, computation commands,
//! deterministic table emission.
//!
//! Exit codes: 0 success, 1 usage/config error, 2 identity violation
//! (a verified identity failed to hold), 3 conjectural feature requested
//! without the explicit flag.

mod cache;
mod commands;
mod files;
mod render;
mod words;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use dlhecke_core::coxeter::weyl::DEFAULT_ELEMENT_CAP;
use dlhecke_core::dlchar::SqrtChoice;
use dlhecke_core::{Error, RootDatum, WeylGroup};

use render::Format;

#[derive(Parser)]
#[command(
    name = "dlhecke",
    about = "Exact Kazhdan-Lusztig, monodromic Hecke and finite-torus computations",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Built-in root datum (A1, A2, A3, B2, B3, G2, GL2, T1).
    #[arg(long, short = 'p')]
    preset: Option<String>,

    /// JSON root-datum file (overrides --preset).
    #[arg(long)]
    datum_file: Option<PathBuf>,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the artifact here instead of stdout.
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum SqrtChoiceArg {
    Canonical,
    Other,
}

impl From<SqrtChoiceArg> for SqrtChoice {
    fn from(v: SqrtChoiceArg) -> Self {
        match v {
            SqrtChoiceArg::Canonical => SqrtChoice::Canonical,
            SqrtChoiceArg::Other => SqrtChoice::Other,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the Weyl group: elements, descents and the Bruhat matrix.
    Group {
        #[command(flatten)]
        common: Common,
    },
    /// Kazhdan-Lusztig base-change table (both self-dual bases).
    Kl {
        #[command(flatten)]
        common: Common,
        /// Restrict to one w (word like `s1s2s1` or `1-2-1`).
        #[arg(long)]
        w: Option<String>,
        /// Recompute with the independent bar-solve algorithm and
        /// cross-check before emitting.
        #[arg(long)]
        verify: bool,
    },
    /// Fixed tori T^{wF}: invariant factors, orders, character counts.
    Torus {
        #[command(flatten)]
        common: Common,
        #[arg(long, short = 'q')]
        q: u64,
        #[arg(long)]
        w: Option<String>,
        #[arg(long)]
        delta: Option<u32>,
    },
    /// Geometric conjugacy classes of pairs (w, χ).
    Series {
        #[command(flatten)]
        common: Common,
        #[arg(long, short = 'q')]
        q: u64,
        #[arg(long)]
        delta: Option<u32>,
    },
    /// Self-dual bases of a monodromic block.
    Monokl {
        #[command(flatten)]
        common: Common,
        #[arg(long, short = 'q')]
        q: u64,
        /// Class id from the `series` listing; defaults to the unipotent
        /// class.
        #[arg(long)]
        class: Option<usize>,
        /// Emit every block.
        #[arg(long)]
        all_classes: bool,
        #[arg(long)]
        delta: Option<u32>,
    },
    /// Graded duality signs d(ch(IC_w)) = ±ch(T_w).
    Duality {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        w: Option<String>,
        /// Check inside a monodromic block instead of the unipotent one.
        #[arg(long)]
        class: Option<usize>,
        /// q (required with --class to locate the block).
        #[arg(long, short = 'q')]
        q: Option<u64>,
        /// Allow conjectural tilting rows with nontrivial character data.
        #[arg(long)]
        conjectural: bool,
        /// Failure-injection hook for the exit-code contract tests.
        #[arg(long, hide = true)]
        inject_sign_error: bool,
    },
    /// The v = 1 trace identity through the character table.
    Trcheck {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        w: Option<String>,
        /// Failure-injection hook for the exit-code contract tests.
        #[arg(long, hide = true)]
        inject_sign_error: bool,
    },
    /// λ̄-partition projectivity certificates.
    Dudasmalle {
        #[command(flatten)]
        common: Common,
        #[arg(long, short = 'q')]
        q: u64,
        #[arg(long, short = 'l')]
        l: u64,
        #[arg(long)]
        w: Option<String>,
        #[arg(long)]
        delta: Option<u32>,
        #[arg(long, value_enum, default_value_t = SqrtChoiceArg::Canonical)]
        sqrt_choice: SqrtChoiceArg,
        /// Multiplicity table (JSON); missing entries are zero.
        #[arg(long)]
        n_matrix: Option<PathBuf>,
    },
}

fn build_group(common: &Common) -> Result<Arc<WeylGroup>, Error> {
    let datum = if let Some(path) = &common.datum_file {
        files::load_datum(path)?
    } else {
        let name = common.preset.as_deref().unwrap_or("A2");
        RootDatum::preset(name)?
    };
    WeylGroup::build(datum, DEFAULT_ELEMENT_CAP)
}

fn emit(common: &Common, artifact: &render::Artifact) -> Result<(), Error> {
    let text = artifact.render(common.format);
    match &common.output {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::InvalidDatum(format!("cannot write {}: {e}", path.display()))),
    }
}

fn run() -> Result<(), (u8, String)> {
    let cli = Cli::try_parse().map_err(|e| (1u8, e.to_string()))?;

    let outcome: Result<(Common, render::Artifact, bool), Error> = (|| match &cli.command {
        Command::Group { common } => {
            let g = build_group(common)?;
            Ok((common.clone(), commands::group(&g), false))
        }
        Command::Kl { common, w, verify } => {
            let g = build_group(common)?;
            let art = commands::kl(&g, w.as_deref(), *verify)?;
            Ok((common.clone(), art, false))
        }
        Command::Torus {
            common,
            q,
            w,
            delta,
        } => {
            let g = build_group(common)?;
            let art = commands::torus(&g, *q, w.as_deref(), *delta)?;
            Ok((common.clone(), art, false))
        }
        Command::Series { common, q, delta } => {
            let g = build_group(common)?;
            let art = commands::series(&g, *q, *delta)?;
            Ok((common.clone(), art, false))
        }
        Command::Monokl {
            common,
            q,
            class,
            all_classes,
            delta,
        } => {
            let g = build_group(common)?;
            let art = commands::monokl(&g, *q, *class, *all_classes, *delta)?;
            Ok((common.clone(), art, false))
        }
        Command::Duality {
            common,
            w,
            class,
            q,
            conjectural,
            inject_sign_error,
        } => {
            let g = build_group(common)?;
            let (art, failed) = commands::duality(
                &g,
                w.as_deref(),
                *class,
                *q,
                *conjectural,
                *inject_sign_error,
            )?;
            Ok((common.clone(), art, failed))
        }
        Command::Trcheck {
            common,
            w,
            inject_sign_error,
        } => {
            let g = build_group(common)?;
            let (art, failed) = commands::trcheck(&g, w.as_deref(), *inject_sign_error)?;
            Ok((common.clone(), art, failed))
        }
        Command::Dudasmalle {
            common,
            q,
            l,
            w,
            delta,
            sqrt_choice,
            n_matrix,
        } => {
            let g = build_group(common)?;
            let (art, failed) = commands::dudasmalle(
                &g,
                *q,
                *l,
                w.as_deref(),
                *delta,
                (*sqrt_choice).into(),
                n_matrix.as_deref(),
            )?;
            Ok((common.clone(), art, failed))
        }
    })();

    match outcome {
        Ok((common, artifact, identity_failed)) => {
            emit(&common, &artifact).map_err(|e| (1u8, e.to_string()))?;
            if identity_failed {
                Err((2, "identity violation: a verified check failed".into()))
            } else {
                Ok(())
            }
        }
        Err(e) => {
            let code = match &e {
                Error::GatedConjectural(_) => 3,
                Error::IdentityViolation(_) => 2,
                _ => 1,
            };
            Err((code, e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
