//! Command-line surface for the henonseq toolkit: sequence generation,
//! linear-complexity and correlation analysis, statistical test batteries,
//! batch experiments, keyspace estimation, and stream encryption.

mod commands;

use clap::{Parser, Subcommand};
use commands::GenFlags;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "henonseq",
    version,
    about = "Chaotic-map pseudorandom bit sequences and randomness analysis",
    after_help = "Exit codes: 0 success/pass, 1 battery fail, 2 usage error, 3 runtime error."
)]
struct Cli {
    /// Worker threads for experiment analysis (default: HENONSEQ_JOBS
    /// env var, else all cores). Output is identical for any job count.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a bit sequence and write it as a bit file.
    Generate {
        #[command(flatten)]
        gen: GenFlags,
        /// Number of output bits.
        #[arg(long)]
        count: usize,
        /// Output encoding: packed, ascii (external-suite friendly), csv.
        #[arg(long, default_value = "packed")]
        format: String,
        /// Output path (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Analyze existing bit files.
    #[command(subcommand)]
    Analyze(AnalyzeCommand),
    /// Run a statistical test battery on a bit file.
    #[command(subcommand)]
    Test(TestCommand),
    /// Reproduce the batch experiments, writing CSV data files.
    #[command(subcommand)]
    Experiment(ExperimentCommand),
    /// Estimate the keyspace size in bits.
    Keyspace {
        /// Smallest representable increment; overrides --precision.
        #[arg(long)]
        epsilon: Option<f64>,
        /// Floating-point precision preset: 32 or 64 (default 64).
        #[arg(long, default_value_t = 64)]
        precision: u32,
        #[arg(long)]
        alpha_width: Option<f64>,
        #[arg(long)]
        beta_width: Option<f64>,
        #[arg(long)]
        x0_width: Option<f64>,
        #[arg(long)]
        y0_width: Option<f64>,
        /// Count of admissible decimation factors.
        #[arg(long)]
        p_count: Option<u64>,
    },
    /// XOR a byte stream with the generated keystream (same operation
    /// both ways). Research construction: unauthenticated, unanalyzed;
    /// do not protect real data with it.
    Cipher {
        #[command(subcommand)]
        mode: CipherMode,
    },
}

#[derive(Subcommand)]
enum AnalyzeCommand {
    /// Linear complexity of a bit file (JSON).
    Lc {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Per-prefix linear complexity profile (CSV: i,c).
    LcProfile {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Correlation of two equal-length bit files (JSON).
    Corr {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cyclic autocorrelation over all shifts (CSV: shift,r).
    Autocorr {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum TestCommand {
    /// Frequency, serial, poker, runs and autocorrelation tests with
    /// per-row verdicts (about 1% of rows fail even on ideal input).
    Menezes {
        input: PathBuf,
        #[arg(long, default_value = "json")]
        report: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// FIPS 140-1 battery on exactly 20000 bits; exits 1 on overall fail.
    Fips {
        input: PathBuf,
        #[arg(long, default_value = "json")]
        report: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ExperimentCommand {
    /// Linear-complexity distribution over disjoint windows
    /// (fig2a/fig2b.csv for even window lengths, fig3a/fig3b.csv for odd).
    Lc {
        #[command(flatten)]
        gen: GenFlags,
        #[arg(long, default_value_t = 64)]
        bits: usize,
        #[arg(long, default_value_t = 2000)]
        trials: usize,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Linear-complexity profile of one sequence (fig4.csv).
    LcProfile {
        #[command(flatten)]
        gen: GenFlags,
        #[arg(long, default_value_t = 553)]
        bits: usize,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Correlation distribution over disjoint window pairs
    /// (fig5a.csv empirical, fig5b.csv reference law).
    Corr {
        #[command(flatten)]
        gen: GenFlags,
        #[arg(long, default_value_t = 127)]
        bits: usize,
        #[arg(long, default_value_t = 10_000)]
        pairs: usize,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Full cyclic autocorrelation trace (fig6.csv).
    Autocorr {
        #[command(flatten)]
        gen: GenFlags,
        #[arg(long, default_value_t = 2000)]
        bits: usize,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Orbit points of the map as x,y pairs (fig1.csv).
    Attractor {
        #[command(flatten)]
        gen: GenFlags,
        #[arg(long, default_value_t = 10_000)]
        points: u64,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

#[derive(Subcommand)]
enum CipherMode {
    Encrypt {
        #[command(flatten)]
        gen: GenFlags,
        /// Input path (stdin if omitted).
        #[arg(long = "in", value_name = "PATH")]
        input: Option<PathBuf>,
        /// Output path (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Decrypt {
        #[command(flatten)]
        gen: GenFlags,
        #[arg(long = "in", value_name = "PATH")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();

    let jobs = cli.jobs.or_else(|| {
        std::env::var("HENONSEQ_JOBS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(jobs) = jobs.filter(|&j| j > 0) {
        // Analysis results are collected in input order, so the pool size
        // never changes any output.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }

    let result = match cli.command {
        Command::Generate { gen, count, format, out } => {
            commands::generate(&gen, count, &format, out.as_deref())
        }
        Command::Analyze(cmd) => match cmd {
            AnalyzeCommand::Lc { input, out } => commands::analyze_lc(&input, out.as_deref()),
            AnalyzeCommand::LcProfile { input, out } => {
                commands::analyze_lc_profile(&input, out.as_deref())
            }
            AnalyzeCommand::Corr { left, right, out } => {
                commands::analyze_corr(&left, &right, out.as_deref())
            }
            AnalyzeCommand::Autocorr { input, out } => {
                commands::analyze_autocorr(&input, out.as_deref())
            }
        },
        Command::Test(cmd) => match cmd {
            TestCommand::Menezes { input, report, out } => {
                commands::test_battery(commands::Battery::Menezes, &input, &report, out.as_deref())
            }
            TestCommand::Fips { input, report, out } => {
                commands::test_battery(commands::Battery::Fips, &input, &report, out.as_deref())
            }
        },
        Command::Experiment(cmd) => match cmd {
            ExperimentCommand::Lc { gen, bits, trials, out_dir } => {
                commands::experiment_lc(&gen, bits, trials, &out_dir)
            }
            ExperimentCommand::LcProfile { gen, bits, out_dir } => {
                commands::experiment_lc_profile(&gen, bits, &out_dir)
            }
            ExperimentCommand::Corr { gen, bits, pairs, out_dir } => {
                commands::experiment_corr(&gen, bits, pairs, &out_dir)
            }
            ExperimentCommand::Autocorr { gen, bits, out_dir } => {
                commands::experiment_autocorr(&gen, bits, &out_dir)
            }
            ExperimentCommand::Attractor { gen, points, out_dir } => {
                commands::experiment_attractor(&gen, points, &out_dir)
            }
        },
        Command::Keyspace {
            epsilon,
            precision,
            alpha_width,
            beta_width,
            x0_width,
            y0_width,
            p_count,
        } => commands::keyspace(
            epsilon,
            precision,
            alpha_width,
            beta_width,
            x0_width,
            y0_width,
            p_count,
        ),
        Command::Cipher { mode } => match mode {
            CipherMode::Encrypt { gen, input, out } | CipherMode::Decrypt { gen, input, out } => {
                commands::cipher(&gen, input.as_deref(), out.as_deref())
            }
        },
    };

    match result {
        Ok(()) => {}
        Err(e) => {
            if let Some(message) = e.message() {
                eprintln!("error: {message}");
            }
            std::process::exit(e.code());
        }
    }
}
