use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};
use holocoh_cli::driver::{self, RunConfig, VerifyTarget};
use holocoh_cli::{cache, report::Report};
use std::path::PathBuf;
use std::process::ExitCode;

/// Computes mod-2 cohomology rings of the holomorph of a cyclic 2-group and
/// its distinguished subgroups from minimal free resolutions, and verifies
/// their presentations.
#[derive(Parser)]
#[command(name = "holocoh", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct CommonArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Cache directory (default: $HOLOCOH_CACHE_DIR, else .holocoh-cache).
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Disable the resolution cache entirely.
    #[arg(long)]
    no_cache: bool,
}

#[derive(Args)]
struct GroupArgs {
    /// Group family.
    #[arg(long)]
    group: String,
    /// rho for the holomorph/gx/gz families (group orders 2^(2 rho - 1),
    /// 2^(2 rho - 2), 2^(rho + 1)).
    #[arg(long)]
    rho: Option<u32>,
    /// Order of a cyclic group (a power of two).
    #[arg(long)]
    order: Option<u64>,
    /// Comma-separated cyclic factor orders for a direct product.
    #[arg(long)]
    orders: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    #[value(name = "theorem_1_5")]
    Theorem15,
    #[value(name = "prop_2_1_4")]
    Prop214,
    #[value(name = "ring_Gz", alias = "ring_gz")]
    RingGz,
    #[value(name = "remark_3_9")]
    Remark39,
    All,
}

impl From<TargetArg> for VerifyTarget {
    fn from(t: TargetArg) -> VerifyTarget {
        match t {
            TargetArg::Theorem15 => VerifyTarget::Theorem15,
            TargetArg::Prop214 => VerifyTarget::Prop214,
            TargetArg::RingGz => VerifyTarget::RingGz,
            TargetArg::Remark39 => VerifyTarget::Remark39,
            TargetArg::All => VerifyTarget::All,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print Betti numbers of a group, compared against the matching
    /// presented-ring dimensions when a shipped presentation exists.
    Betti {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run a verification target and exit nonzero if any check fails.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        target: TargetArg,
        /// Restrict theorem_1_5 to one rho (default verifies rho = 3 and 4).
        #[arg(long)]
        rho: Option<u32>,
        #[arg(long)]
        max_degree: Option<usize>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Print the restriction behaviour of the named generators on the
    /// distinguished subgroups.
    Restrict {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        max_degree: Option<usize>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Print degreewise dimensions and monomial bases of a shipped
    /// presentation.
    Hilbert {
        /// Presentation name (theorem_1_5 with --rho, or a corpus name such
        /// as prop_2_1_4, ring_Gz, ring_cyclic2, ring_cyclic2k).
        #[arg(long)]
        target: String,
        #[arg(long)]
        rho: Option<u32>,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Inspect or manage the resolution cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    /// List cache entries with their ranks.
    Info {
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Remove all cache entries.
    Clear {
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Precompute and persist a resolution.
    Warm {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
}

fn config_of(common: &CommonArgs) -> RunConfig {
    RunConfig {
        cache_dir: driver::resolve_cache_dir(common.cache_dir.clone(), common.no_cache),
    }
}

fn emit(report: &Report, format: Format) -> ExitCode {
    match format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    if report.verdict {
        ExitCode::SUCCESS
    } else {
        let failing = report.failing_checks();
        eprintln!("verification failed: {}", failing.join(", "));
        ExitCode::from(1)
    }
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Betti {
            group,
            max_degree,
            common,
        } => {
            let spec = driver::group_spec_from_args(
                &group.group,
                group.rho,
                group.order,
                group.orders.as_deref(),
            )?;
            let report = driver::cmd_betti(&config_of(&common), spec, max_degree)?;
            Ok(emit(&report, common.format))
        }
        Command::Verify {
            target,
            rho,
            max_degree,
            common,
        } => {
            let report = driver::cmd_verify(&config_of(&common), target.into(), rho, max_degree)?;
            Ok(emit(&report, common.format))
        }
        Command::Restrict {
            group,
            max_degree,
            common,
        } => {
            let spec = driver::group_spec_from_args(
                &group.group,
                group.rho,
                group.order,
                group.orders.as_deref(),
            )?;
            let report = driver::cmd_restrict(&config_of(&common), spec, max_degree)?;
            Ok(emit(&report, common.format))
        }
        Command::Hilbert {
            target,
            rho,
            max_degree,
            common,
        } => {
            let report = driver::cmd_hilbert(&target, rho, max_degree)?;
            Ok(emit(&report, common.format))
        }
        Command::Cache { action } => match action {
            CacheAction::Info { cache_dir } => {
                let dir = driver::resolve_cache_dir(cache_dir, false).expect("default exists");
                let entries = cache::list(&dir);
                if entries.is_empty() {
                    println!("no cache entries under {}", dir.display());
                } else {
                    for e in entries {
                        println!(
                            "{}  key={}  max_degree={}  ranks={:?}",
                            e.file.display(),
                            e.key,
                            e.max_degree,
                            e.ranks
                        );
                    }
                }
                Ok(ExitCode::SUCCESS)
            }
            CacheAction::Clear { cache_dir } => {
                let dir = driver::resolve_cache_dir(cache_dir, false).expect("default exists");
                let n = cache::clear(&dir)?;
                println!("removed {n} cache files under {}", dir.display());
                Ok(ExitCode::SUCCESS)
            }
            CacheAction::Warm {
                group,
                max_degree,
                cache_dir,
            } => {
                let spec = driver::group_spec_from_args(
                    &group.group,
                    group.rho,
                    group.order,
                    group.orders.as_deref(),
                )?;
                let cfg = RunConfig {
                    cache_dir: driver::resolve_cache_dir(cache_dir, false),
                };
                let path = driver::warm_cache(&cfg, spec, max_degree)?;
                println!("cached {}", path.display());
                Ok(ExitCode::SUCCESS)
            }
        },
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
