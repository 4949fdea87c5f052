//! Command handlers. Every handler prints the full effective
//! configuration to stderr before any result, so a run can be reproduced
//! from its log alone; results go to stdout or the requested path.

use clap::Args;
use henonseq::bitfile::{self, BitFileError, BitFileFormat};
use henonseq::bitgen::{generate as generate_bits, GeneratorConfig, GeneratorError};
use henonseq::bits::BitSequence;
use henonseq::cipher::{vernam_io, VernamIoError};
use henonseq::corr;
use henonseq::experiments::{self, ExperimentError, Histogram};
use henonseq::keyspace::{keyspace_bits, KeyspaceError, KeyspaceSpec, EPSILON_32, EPSILON_64};
use henonseq::lincomp;
use henonseq::map;
use henonseq::presets;
use henonseq::stattests::{fips140_1, menezes_battery, StatTestError, TestReport};
use serde_json::json;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

/// Map parameters and pipeline knobs shared by every generating command.
/// A preset supplies the base configuration; explicit flags override it
/// field by field.
#[derive(Args, Debug, Clone)]
pub struct GenFlags {
    /// Built-in parameter set: R1, R2, S1..S5, U1, U2 (default U1).
    #[arg(long)]
    preset: Option<String>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    x0: Option<f64>,
    #[arg(long)]
    y0: Option<f64>,
    /// Decimation factor P: keep every P-th extracted bit.
    #[arg(long, short = 'P')]
    decimation: Option<u32>,
    /// Calibration window T: orbit samples per threshold median.
    #[arg(long, short = 'T')]
    calibration: Option<u32>,
    /// Transient iterations dropped before calibration.
    #[arg(long)]
    discard: Option<u32>,
    /// Combiner history seed two steps back (0 or 1).
    #[arg(long, value_parser = parse_bit)]
    seed2: Option<bool>,
    /// Combiner history seed one step back (0 or 1).
    #[arg(long, value_parser = parse_bit)]
    seed1: Option<bool>,
    /// Divergence bound on |x| and |y|.
    #[arg(long)]
    bound: Option<f64>,
}

fn parse_bit(s: &str) -> Result<bool, String> {
    match s {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => Err(format!("expected 0 or 1, got {s:?}")),
    }
}

impl GenFlags {
    pub fn resolve(&self) -> Result<GeneratorConfig, CliError> {
        let mut cfg = match &self.preset {
            Some(name) => presets::by_name(name)
                .ok_or_else(|| CliError::Usage(format!("unknown preset {name:?}")))?,
            None => GeneratorConfig::default(),
        };
        if let Some(v) = self.alpha {
            cfg.params.alpha = v;
        }
        if let Some(v) = self.beta {
            cfg.params.beta = v;
        }
        if let Some(v) = self.x0 {
            cfg.params.x0 = v;
        }
        if let Some(v) = self.y0 {
            cfg.params.y0 = v;
        }
        if let Some(v) = self.decimation {
            cfg.decimation = v;
        }
        if let Some(v) = self.calibration {
            cfg.calibration = v;
        }
        if let Some(v) = self.discard {
            cfg.discard = v;
        }
        if let Some(v) = self.seed2 {
            cfg.seed2 = v;
        }
        if let Some(v) = self.seed1 {
            cfg.seed1 = v;
        }
        if let Some(v) = self.bound {
            cfg.bound = v;
        }
        cfg.validate()
            .map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(cfg)
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Invalid flags or malformed/unsuitable input (exit 2).
    Usage(String),
    /// A battery's overall verdict is fail (exit 1); verdict already on
    /// stdout, no extra message.
    BatteryFail,
    /// Divergence or I/O failure while working (exit 3).
    Runtime(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::BatteryFail => 1,
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 3,
        }
    }

    pub fn message(&self) -> Option<&str> {
        match self {
            CliError::BatteryFail => None,
            CliError::Usage(m) | CliError::Runtime(m) => Some(m),
        }
    }
}

impl From<GeneratorError> for CliError {
    fn from(e: GeneratorError) -> Self {
        match e {
            GeneratorError::Config(c) => CliError::Usage(c.to_string()),
            GeneratorError::Divergence(d) => CliError::Runtime(d.to_string()),
        }
    }
}

impl From<map::DivergenceError> for CliError {
    fn from(e: map::DivergenceError) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<BitFileError> for CliError {
    fn from(e: BitFileError) -> Self {
        match e {
            BitFileError::Io(io) => CliError::Runtime(io.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<StatTestError> for CliError {
    fn from(e: StatTestError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<ExperimentError> for CliError {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::BadArguments(m) => CliError::Usage(m.to_string()),
            ExperimentError::Generator(g) => g.into(),
        }
    }
}

impl From<KeyspaceError> for CliError {
    fn from(e: KeyspaceError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

/// Reproducibility block: the full effective configuration, to stderr.
fn print_config(command: &str, value: serde_json::Value) {
    eprintln!("# {command} configuration: {value}");
}

fn config_json(cfg: &GeneratorConfig) -> serde_json::Value {
    serde_json::to_value(cfg).expect("config serialization cannot fail")
}

fn read_input(path: &Path) -> Result<BitSequence, CliError> {
    let data = fs::read(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(bitfile::read_bytes(&data)?)
}

fn emit(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, content)?,
        None => io::stdout().write_all(content.as_bytes())?,
    }
    Ok(())
}

pub fn generate(
    gen: &GenFlags,
    count: usize,
    format: &str,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let cfg = gen.resolve()?;
    let format = BitFileFormat::parse(format)
        .ok_or_else(|| CliError::Usage(format!("unknown format {format:?}")))?;
    print_config(
        "generate",
        json!({"config": config_json(&cfg), "count": count, "format": format!("{format:?}")}),
    );
    let bits = generate_bits(&cfg, count)?;
    match out {
        Some(path) => bitfile::write_to_path(path, &bits, format)?,
        None => {
            let mut stdout = io::stdout().lock();
            bitfile::write(&mut stdout, &bits, format)?;
        }
    }
    Ok(())
}

pub fn analyze_lc(input: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let bits = read_input(input)?;
    print_config("analyze lc", json!({"input": input.display().to_string(), "bits": bits.len()}));
    let result = lincomp::berlekamp_massey(&bits);
    let report = json!({
        "bits": bits.len(),
        "linear_complexity": result.complexity,
        "connection_polynomial": result.connection.to_binary_string(),
    });
    emit(out, &format!("{report:#}\n"))
}

pub fn analyze_lc_profile(input: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let bits = read_input(input)?;
    print_config(
        "analyze lc-profile",
        json!({"input": input.display().to_string(), "bits": bits.len()}),
    );
    let profile = lincomp::lc_profile(&bits);
    let mut csv = String::from("i,c\n");
    for (i, c) in profile.values.iter().enumerate() {
        writeln!(csv, "{},{}", i + 1, c).unwrap();
    }
    emit(out, &csv)
}

pub fn analyze_corr(left: &Path, right: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let u = read_input(left)?;
    let v = read_input(right)?;
    print_config(
        "analyze corr",
        json!({
            "left": left.display().to_string(),
            "right": right.display().to_string(),
            "bits": u.len(),
        }),
    );
    let theta = corr::correlation(&u, &v).map_err(|e| CliError::Usage(e.to_string()))?;
    emit(out, &format!("{:#}\n", json!({"bits": u.len(), "theta": theta})))
}

pub fn analyze_autocorr(input: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let bits = read_input(input)?;
    print_config(
        "analyze autocorr",
        json!({"input": input.display().to_string(), "bits": bits.len()}),
    );
    if bits.is_empty() {
        return Err(CliError::Usage("empty sequence".into()));
    }
    let last = bits.len() as i64 - 1;
    let mut csv = String::from("shift,r\n");
    for j in -last..=last {
        let r = corr::autocorrelation(&bits, j).expect("non-empty");
        writeln!(csv, "{j},{r}").unwrap();
    }
    emit(out, &csv)
}

#[derive(Debug, Clone, Copy)]
pub enum Battery {
    Menezes,
    Fips,
}

pub fn test_battery(
    battery: Battery,
    input: &Path,
    report_format: &str,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let bits = read_input(input)?;
    let name = match battery {
        Battery::Menezes => "test menezes",
        Battery::Fips => "test fips",
    };
    print_config(name, json!({"input": input.display().to_string(), "bits": bits.len()}));
    let report: TestReport = match battery {
        Battery::Menezes => menezes_battery(&bits)?,
        Battery::Fips => fips140_1(&bits)?,
    };
    let rendered = match report_format {
        "json" => format!("{}\n", report.to_json()),
        "csv" => report.to_csv(),
        other => return Err(CliError::Usage(format!("unknown report format {other:?}"))),
    };
    emit(out, &rendered)?;
    if report.overall.is_some_and(|v| !v.passed()) {
        return Err(CliError::BatteryFail);
    }
    Ok(())
}

fn histogram_csv(h: &Histogram) -> String {
    let mut csv = String::from("bin,value\n");
    for (label, freq) in h.labels.iter().zip(&h.freqs) {
        writeln!(csv, "{label},{freq}").unwrap();
    }
    csv
}

fn write_file(dir: &Path, name: &str, content: &str) -> Result<(), CliError> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(name), content)?;
    Ok(())
}

pub fn experiment_lc(
    gen: &GenFlags,
    bits: usize,
    trials: usize,
    out_dir: &Path,
) -> Result<(), CliError> {
    let cfg = gen.resolve()?;
    print_config(
        "experiment lc",
        json!({"config": config_json(&cfg), "bits": bits, "trials": trials}),
    );
    let result = experiments::lc_experiment(&cfg, bits, trials)?;

    // even window lengths reproduce figure 2, odd ones figure 3
    let (emp, conj) = if bits.is_multiple_of(2) {
        ("fig2a.csv", "fig2b.csv")
    } else {
        ("fig3a.csv", "fig3b.csv")
    };
    write_file(out_dir, emp, &histogram_csv(&result.histogram))?;
    let mut csv = String::from("bin,value\n");
    for (c, p) in &result.conjectured.pmf {
        writeln!(csv, "{c},{p}").unwrap();
    }
    write_file(out_dir, conj, &csv)?;

    let summary = json!({
        "bits": bits,
        "trials": trials,
        "mean": result.mean,
        "variance": result.variance,
        "files": [emp, conj],
    });
    println!("{summary:#}");
    Ok(())
}

pub fn experiment_lc_profile(gen: &GenFlags, bits: usize, out_dir: &Path) -> Result<(), CliError> {
    let cfg = gen.resolve()?;
    print_config(
        "experiment lc-profile",
        json!({"config": config_json(&cfg), "bits": bits}),
    );
    let w = generate_bits(&cfg, bits)?;
    let profile = lincomp::lc_profile(&w);
    let mut csv = String::from("bin,value\n");
    for (i, c) in profile.values.iter().enumerate() {
        writeln!(csv, "{},{}", i + 1, c).unwrap();
    }
    write_file(out_dir, "fig4.csv", &csv)?;
    let max_dev = profile
        .values
        .iter()
        .enumerate()
        .map(|(i, &c)| (c as f64 - (i + 1) as f64 / 2.0).abs())
        .fold(0.0f64, f64::max);
    println!(
        "{:#}",
        json!({"bits": bits, "max_deviation_from_half_line": max_dev, "files": ["fig4.csv"]})
    );
    Ok(())
}

pub fn experiment_corr(
    gen: &GenFlags,
    bits: usize,
    pairs: usize,
    out_dir: &Path,
) -> Result<(), CliError> {
    let cfg = gen.resolve()?;
    print_config(
        "experiment corr",
        json!({"config": config_json(&cfg), "bits": bits, "pairs": pairs}),
    );
    let histogram = experiments::corr_experiment(&cfg, bits, pairs)?;
    let reference = corr::correlation_pmf_normal(bits);
    write_file(out_dir, "fig5a.csv", &histogram_csv(&histogram))?;
    let mut csv = String::from("bin,value\n");
    for (theta, p) in reference.support.iter().zip(&reference.probs) {
        writeln!(csv, "{theta},{p}").unwrap();
    }
    write_file(out_dir, "fig5b.csv", &csv)?;
    let tv = 0.5
        * histogram
            .freqs
            .iter()
            .zip(&reference.probs)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>();
    println!(
        "{:#}",
        json!({
            "bits": bits,
            "pairs": pairs,
            "tv_distance_to_reference": tv,
            "files": ["fig5a.csv", "fig5b.csv"],
        })
    );
    Ok(())
}

pub fn experiment_autocorr(gen: &GenFlags, bits: usize, out_dir: &Path) -> Result<(), CliError> {
    let cfg = gen.resolve()?;
    print_config(
        "experiment autocorr",
        json!({"config": config_json(&cfg), "bits": bits}),
    );
    let trace = experiments::autocorr_trace(&cfg, bits)?;
    let mut csv = String::from("bin,value\n");
    for (shift, r) in &trace {
        writeln!(csv, "{shift},{r}").unwrap();
    }
    write_file(out_dir, "fig6.csv", &csv)?;
    let max_offpeak = trace
        .iter()
        .filter(|&&(j, _)| j != 0)
        .map(|&(_, r)| r.abs())
        .fold(0.0f64, f64::max);
    println!(
        "{:#}",
        json!({"bits": bits, "max_offpeak": max_offpeak, "files": ["fig6.csv"]})
    );
    Ok(())
}

pub fn experiment_attractor(gen: &GenFlags, points: u64, out_dir: &Path) -> Result<(), CliError> {
    let cfg = gen.resolve()?;
    print_config(
        "experiment attractor",
        json!({"config": config_json(&cfg), "points": points}),
    );
    let mut csv = String::from("x,y\n");
    let total = cfg.discard as u64 + points;
    for state in map::orbit(cfg.params, total, cfg.bound).skip(cfg.discard as usize) {
        let state = state?;
        writeln!(csv, "{},{}", state.x, state.y).unwrap();
    }
    write_file(out_dir, "fig1.csv", &csv)?;
    println!("{:#}", json!({"points": points, "files": ["fig1.csv"]}));
    Ok(())
}

#[allow(clippy::too_many_arguments)]
pub fn keyspace(
    epsilon: Option<f64>,
    precision: u32,
    alpha_width: Option<f64>,
    beta_width: Option<f64>,
    x0_width: Option<f64>,
    y0_width: Option<f64>,
    p_count: Option<u64>,
) -> Result<(), CliError> {
    let epsilon = match (epsilon, precision) {
        (Some(e), _) => e,
        (None, 32) => EPSILON_32,
        (None, 64) => EPSILON_64,
        (None, other) => {
            return Err(CliError::Usage(format!(
                "unsupported precision {other}; use 32 or 64, or give --epsilon"
            )))
        }
    };
    let mut spec = KeyspaceSpec::with_epsilon(epsilon);
    if let Some(v) = alpha_width {
        spec.alpha_width = v;
    }
    if let Some(v) = beta_width {
        spec.beta_width = v;
    }
    if let Some(v) = x0_width {
        spec.x0_width = v;
    }
    if let Some(v) = y0_width {
        spec.y0_width = v;
    }
    if let Some(v) = p_count {
        spec.p_count = v;
    }
    spec.validate()?;
    print_config("keyspace", serde_json::to_value(spec).unwrap());
    let bits = keyspace_bits(&spec);
    println!(
        "{:#}",
        json!({"log2_keyspace": bits, "rounded": bits.round() as i64})
    );
    Ok(())
}

pub fn cipher(gen: &GenFlags, input: Option<&Path>, out: Option<&Path>) -> Result<(), CliError> {
    let cfg = gen.resolve()?;
    print_config("cipher", json!({"config": config_json(&cfg)}));
    let reader: Box<dyn Read> = match input {
        Some(path) => Box::new(fs::File::open(path).map_err(|e| {
            CliError::Usage(format!("cannot read {}: {e}", path.display()))
        })?),
        None => Box::new(io::stdin().lock()),
    };
    let writer: Box<dyn Write> = match out {
        Some(path) => Box::new(fs::File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    vernam_io(reader, writer, &cfg).map_err(|e| match e {
        VernamIoError::Generator(g) => g.into(),
        VernamIoError::Io(io) => CliError::Runtime(io.to_string()),
    })?;
    Ok(())
}
