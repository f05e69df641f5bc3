use std::fs;
use std::io::{self, Write};
use std::path::Path;

use qrng_core::bitfile::{self, BitFileError};
use qrng_core::pqc::{
    run_demo, DemoOptions, DemoOutcome, MeteredSource, PqcError, SignRequest, SlhKeygenMode,
};
use qrng_core::qsim::circuit_passes;
use qrng_core::stats::{
    collect_restart, groups_csv, summary_csv, validate_restart, validate_sequential, RestartMatrix,
    StatsError, ValidationReport,
};
use qrng_core::timing::{run_bench, BenchConfig, BenchError, BenchReport};
use qrng_core::{BitString, GateRecipe, Qrng, QrngConfig, QsimError};
use serde::Serialize;
use thiserror::Error;

use crate::args::{
    BenchArgs, Format, GenerateArgs, GeneratorArgs, Mode, PqcDemoArgs, SlhMode, TestArgs,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub const USAGE: u8 = 1;
    pub const DATA: u8 = 2;
    pub const IO: u8 = 3;

    pub fn code(&self) -> u8 {
        match self {
            Self::Usage(_) => Self::USAGE,
            Self::Data(_) => Self::DATA,
            Self::Io(_) => Self::IO,
        }
    }
}

impl From<QsimError> for CliError {
    fn from(e: QsimError) -> Self {
        Self::Usage(e.to_string())
    }
}

impl From<BitFileError> for CliError {
    fn from(e: BitFileError) -> Self {
        match e {
            BitFileError::Io { .. } => Self::Io(e.to_string()),
            _ => Self::Data(e.to_string()),
        }
    }
}

impl From<StatsError> for CliError {
    fn from(e: StatsError) -> Self {
        match e {
            StatsError::InvalidParameter(_) => Self::Usage(e.to_string()),
            _ => Self::Data(e.to_string()),
        }
    }
}

impl From<BenchError> for CliError {
    fn from(e: BenchError) -> Self {
        Self::Usage(e.to_string())
    }
}

impl From<PqcError> for CliError {
    fn from(e: PqcError) -> Self {
        match e {
            PqcError::Entropy { .. } => Self::Data(e.to_string()),
            _ => Self::Usage(e.to_string()),
        }
    }
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| CliError::Data(e.to_string()))
}

fn csv_rows<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Data(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Data(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Data(e.to_string()))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
        }
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("stdout: {e}"))),
    }
}

fn config(g: &GeneratorArgs) -> Result<QrngConfig, CliError> {
    Ok(QrngConfig::new(g.recipe, g.qubits, g.seed)?)
}

#[derive(Serialize)]
struct GenerateSummary {
    recipe: String,
    qubits: usize,
    seed: u64,
    bits: usize,
    passes: usize,
    draws: usize,
    ones: usize,
    out: String,
    header: String,
}

pub fn generate(a: &GenerateArgs) -> Result<(), CliError> {
    let cfg = config(&a.generator)?;
    let mut qrng = Qrng::new(cfg)?;
    let bits = qrng.generate(a.bits);
    bitfile::write_bits(&a.out, &bits)?;
    let passes = circuit_passes(a.bits, cfg.num_qubits);
    debug_assert_eq!(passes as u64, qrng.passes());
    let summary = GenerateSummary {
        recipe: cfg.recipe.short_name().into(),
        qubits: cfg.num_qubits,
        seed: cfg.sampler_seed,
        bits: bits.len(),
        passes,
        draws: passes * cfg.num_qubits,
        ones: bits.count_ones(),
        out: a.out.display().to_string(),
        header: bitfile::header_path(&a.out).display().to_string(),
    };
    let text = match a.format {
        Format::Json => json(&summary)?,
        Format::Csv => csv_rows(&[summary])?,
    };
    emit(&text, None)
}

fn label(g: &GeneratorArgs) -> String {
    format!("{}/c={}/seed={}", g.recipe.short_name(), g.qubits, g.seed)
}

fn restart_matrix(a: &TestArgs, input: Option<&BitString>) -> Result<RestartMatrix, CliError> {
    let needed = a.restarts * a.bits_per_restart;
    match input {
        Some(bits) => {
            if bits.len() < needed {
                return Err(StatsError::InsufficientData {
                    needed,
                    available: bits.len(),
                }
                .into());
            }
            Ok(RestartMatrix::from_bits(
                bits.slice(0..needed),
                a.restarts,
                a.bits_per_restart,
            )?)
        }
        None => {
            let cfg = config(&a.generator)?;
            Ok(collect_restart(
                |i| Qrng::with_stream(cfg, i as u64).expect("validated config"),
                a.restarts,
                a.bits_per_restart,
            )?)
        }
    }
}

pub fn test(a: &TestArgs) -> Result<(), CliError> {
    let input = a.input.as_deref().map(bitfile::read_bits).transpose()?;
    let source = match &a.input {
        Some(p) => p.display().to_string(),
        None => label(&a.generator),
    };
    let report: ValidationReport = match a.mode {
        Mode::Restart => validate_restart(source, &restart_matrix(a, input.as_ref())?)?,
        Mode::Sequential => {
            let bits = match input {
                Some(b) => b,
                None => Qrng::new(config(&a.generator)?)?.generate(a.bits),
            };
            validate_sequential(source, &bits, a.bits, a.bits_per_restart)?
        }
    };
    let text = match a.format {
        Format::Json => report
            .to_json()
            .map(|s| s + "\n")
            .map_err(|e| CliError::Data(e.to_string()))?,
        Format::Csv => summary_csv([&report]).map_err(|e| CliError::Data(e.to_string()))?,
    };
    emit(&text, a.out.as_deref())?;
    if let Some(path) = &a.groups_out {
        let g = groups_csv(&report.battery).map_err(|e| CliError::Data(e.to_string()))?;
        emit(&g, Some(path))?;
    }
    if report.passed {
        Ok(())
    } else {
        Err(CliError::Data(format!(
            "validation failed for {}",
            report.source
        )))
    }
}

pub fn bench_config(a: &BenchArgs) -> BenchConfig {
    BenchConfig {
        recipes: if a.recipes.is_empty() {
            GateRecipe::ALL.to_vec()
        } else {
            a.recipes.clone()
        },
        lengths: a.lengths.clone(),
        qubit_counts: a.qubit_counts.clone(),
        repetitions: a.reps,
        seed: a.seed,
    }
}

fn print_trends(report: &BenchReport) {
    for t in &report.trends {
        let medians: Vec<String> = t
            .medians
            .iter()
            .map(|(c, ns)| format!("c={c}: {:.1} us", ns / 1e3))
            .collect();
        let verdict = if t.strictly_decreasing {
            "decreasing"
        } else {
            "NOT decreasing"
        };
        eprintln!(
            "{} L={}: {} ({verdict})",
            t.recipe.short_name(),
            t.length,
            medians.join(", ")
        );
    }
    for r in &report.rankings {
        let order: Vec<&str> = r.fastest_first.iter().map(|g| g.short_name()).collect();
        eprintln!(
            "L={} c={}: fastest first {}",
            r.length,
            r.qubits,
            order.join(" < ")
        );
    }
}

pub fn bench(a: &BenchArgs) -> Result<(), CliError> {
    let report = run_bench(&bench_config(a))?;
    let text = match a.format {
        Format::Json => report
            .to_json()
            .map(|s| s + "\n")
            .map_err(|e| CliError::Data(e.to_string()))?,
        Format::Csv => report
            .cells_csv()
            .map_err(|e| CliError::Data(e.to_string()))?,
    };
    emit(&text, a.out.as_deref())?;
    if let Some(path) = &a.samples_out {
        let s = report
            .samples_csv()
            .map_err(|e| CliError::Data(e.to_string()))?;
        emit(&s, Some(path))?;
    }
    print_trends(&report);
    if a.strict && !report.all_trends_decreasing() {
        return Err(CliError::Data(
            "median time does not decrease with qubit count".into(),
        ));
    }
    Ok(())
}

#[derive(Serialize)]
struct DemoReport {
    qrng: DemoOutcome,
    baseline: Option<DemoOutcome>,
    /// QRNG time over baseline time.
    slowdown: Option<f64>,
}

#[derive(Serialize)]
struct DemoRow {
    algorithm: String,
    operation: String,
    source: String,
    bits_consumed: u64,
    draws: String,
    elapsed_ns: u64,
}

impl From<&DemoOutcome> for DemoRow {
    fn from(o: &DemoOutcome) -> Self {
        Self {
            algorithm: o.algorithm.clone(),
            operation: o.operation.to_string(),
            source: o.source.clone(),
            bits_consumed: o.bits_consumed,
            draws: draw_list(o),
            elapsed_ns: o.elapsed_ns,
        }
    }
}

fn draw_list(o: &DemoOutcome) -> String {
    o.draws
        .iter()
        .map(|d| d.requested.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn pqc_demo(a: &PqcDemoArgs) -> Result<(), CliError> {
    if !a.algorithm.supports(a.operation) {
        return Err(CliError::Usage(format!(
            "{} is not defined for {}",
            a.operation, a.algorithm
        )));
    }
    let mut request =
        SignRequest::new(a.message.as_bytes().to_vec()).with_context(a.ctx.as_bytes().to_vec());
    request.pre_hash = a.prehash;
    let options = DemoOptions {
        request,
        slh_mode: match a.slh_mode {
            SlhMode::ThreeCalls => SlhKeygenMode::ThreeCalls,
            SlhMode::SingleCallSplit => SlhKeygenMode::SingleCallSplit,
        },
        setup_seed: a.seed,
    };
    let mut source = MeteredSource::qrng(QrngConfig::new(a.recipe, a.qubits, a.seed)?)?;
    let qrng = run_demo(a.algorithm, a.operation, &mut source, &options)?;
    let baseline = if a.baseline {
        Some(run_demo(
            a.algorithm,
            a.operation,
            &mut MeteredSource::host(a.seed),
            &options,
        )?)
    } else {
        None
    };

    for o in std::iter::once(&qrng).chain(baseline.as_ref()) {
        eprintln!(
            "{} {} via {}: {} bits consumed, draws [{}], {:.1} us",
            o.algorithm,
            o.operation,
            o.source,
            o.bits_consumed,
            draw_list(o),
            o.elapsed_ns as f64 / 1e3
        );
    }
    let slowdown = baseline
        .as_ref()
        .map(|b| qrng.elapsed_ns as f64 / (b.elapsed_ns.max(1)) as f64);
    let text = match a.format {
        Format::Json => json(&DemoReport {
            qrng: qrng.clone(),
            baseline: baseline.clone(),
            slowdown,
        })?,
        Format::Csv => {
            let rows: Vec<DemoRow> = std::iter::once(&qrng)
                .chain(baseline.as_ref())
                .map(DemoRow::from)
                .collect();
            csv_rows(&rows)?
        }
    };
    emit(&text, a.out.as_deref())
}
