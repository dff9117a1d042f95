use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use zakframes_cli::commands::{self, CommandOutput, Overrides, RandomKind};

/// Fiber-domain analysis of translation-generated frames on finite
/// groups: duality and orthogonality checks, dual construction, Gabor and
/// super-frame verification, with an independent dense oracle.
#[derive(Parser)]
#[command(name = "zakframes", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct CommonArgs {
    /// Instance specification file.
    #[arg(long)]
    spec: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Verdict tolerance override.
    #[arg(long)]
    tol: Option<f64>,
    /// Support-set tolerance override.
    #[arg(long)]
    supp_tol: Option<f64>,
    /// Seed override.
    #[arg(long)]
    seed: Option<u64>,
}

impl CommonArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            tol: self.tol,
            supp_tol: self.supp_tol,
            seed: self.seed,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Brackets, support sets, and frame bounds of one family.
    Analyze(CommonArgs),
    /// Subspace-dual check of family2 against family.
    DualCheck {
        #[command(flatten)]
        common: CommonArgs,
        /// Append the dense-oracle cross-check to the report.
        #[arg(long)]
        oracle: bool,
    },
    /// Subspace-orthogonality check of family2 against family.
    OrthoCheck {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        oracle: bool,
    },
    /// Construct the singly-generated dual of family[0] inside family2[0].
    MakeDual {
        #[command(flatten)]
        common: CommonArgs,
        /// Also write the constructed signal to this file.
        #[arg(long)]
        signal_out: Option<PathBuf>,
    },
    /// Construct the biorthogonal generator of family[0].
    MakeBiortho {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        signal_out: Option<PathBuf>,
    },
    /// Gabor-system check over the `lambda` subgroup.
    Gabor {
        #[command(flatten)]
        common: CommonArgs,
        /// Check orthogonality instead of duality.
        #[arg(long)]
        orthogonal: bool,
    },
    /// Super-frame dual check of packed component families.
    Super(CommonArgs),
    /// Run the fiber check and the dense oracle side by side.
    OracleCompare {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        orthogonal: bool,
    },
    /// Generate a seeded instance for the differential-test harness.
    Random {
        /// plain | dual | ortho | gabor | super
        #[arg(long, default_value = "dual")]
        kind: RandomKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Dump a bracket function as CSV.
    BracketDump(CommonArgs),
    /// Zak-transform utilities.
    Zak {
        #[command(subcommand)]
        cmd: ZakCmd,
    },
}

#[derive(Subcommand)]
enum ZakCmd {
    /// Dump the Zak array of family[0] as CSV.
    Dump(CommonArgs),
}

fn emit(output: CommandOutput, out: Option<&PathBuf>) -> ExitCode {
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &output.text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", output.text),
    }
    ExitCode::from(output.exit as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = || -> (zakframes_cli::Result<CommandOutput>, Option<PathBuf>) {
        match &cli.cmd {
            Cmd::Analyze(c) => (commands::cmd_analyze(&c.spec, &c.overrides()), c.out.clone()),
            Cmd::DualCheck { common, oracle } => (
                commands::cmd_dual_check(&common.spec, &common.overrides(), *oracle),
                common.out.clone(),
            ),
            Cmd::OrthoCheck { common, oracle } => (
                commands::cmd_ortho_check(&common.spec, &common.overrides(), *oracle),
                common.out.clone(),
            ),
            Cmd::MakeDual { common, signal_out } => (
                commands::cmd_make_dual(&common.spec, &common.overrides(), signal_out.as_deref()),
                common.out.clone(),
            ),
            Cmd::MakeBiortho { common, signal_out } => (
                commands::cmd_make_biortho(
                    &common.spec,
                    &common.overrides(),
                    signal_out.as_deref(),
                ),
                common.out.clone(),
            ),
            Cmd::Gabor { common, orthogonal } => (
                commands::cmd_gabor(&common.spec, &common.overrides(), *orthogonal),
                common.out.clone(),
            ),
            Cmd::Super(c) => (commands::cmd_super(&c.spec, &c.overrides()), c.out.clone()),
            Cmd::OracleCompare { common, orthogonal } => (
                commands::cmd_oracle_compare(&common.spec, &common.overrides(), *orthogonal),
                common.out.clone(),
            ),
            Cmd::Random { kind, seed, out } => {
                (commands::cmd_random(*kind, *seed, out), None)
            }
            Cmd::BracketDump(c) => (
                commands::cmd_bracket_dump(&c.spec, &c.overrides()),
                c.out.clone(),
            ),
            Cmd::Zak { cmd: ZakCmd::Dump(c) } => (
                commands::cmd_zak_dump(&c.spec, &c.overrides()),
                c.out.clone(),
            ),
        }
    };
    match run() {
        (Ok(output), out) => emit(output, out.as_ref()),
        (Err(e), _) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
