//! Config parsing and command execution for the `specdet` binary.
//!
//! Jobs are described by a JSON document (see `RawConfig` for the schema)
//! and run one of six commands: classify, zeta, det, compare, sweep, or
//! witness. Tabular output is CSV with RFC-4180 line endings and a fixed
//! 15-significant-digit float format, so identical configs produce
//! byte-identical files.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Deserialize;
use std::f64::consts::TAU;
use std::io::Write;
use std::path::PathBuf;

use crate::branchlog::BranchCut;
use crate::determinant::{build_zeta, determinant_with, eval_zeta_with};
use crate::error::{Error, Result};
use crate::oracle::{
    direct_zeta, divergence_witness, exp_blowup_witness, fd_zeta_prime, OracleConfig,
};
use crate::spectrum::{classify, rays_crossed, ClassificationTag, Spectrum, SpectrumComponent};
use crate::zetafuncs::EMParams;

/// Exit codes: mathematical non-existence is a result, not a failure, but
/// scripts need to branch on it.
pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_ZETA_UNDEFINED: i32 = 2;
pub const EXIT_DETERMINANT_DIVERGENT: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Classify,
    Zeta,
    Det,
    Compare,
    Sweep,
    Witness,
}

impl Command {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "classify" => Ok(Command::Classify),
            "zeta" => Ok(Command::Zeta),
            "det" => Ok(Command::Det),
            "compare" => Ok(Command::Compare),
            "sweep" => Ok(Command::Sweep),
            "witness" => Ok(Command::Witness),
            other => Err(Error::ValidationError(format!(
                "unknown command '{other}' (expected classify|zeta|det|compare|sweep|witness)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SweepGrid {
    pub from: f64,
    pub to: f64,
    pub steps: usize,
}

/// A fully validated job description.
#[derive(Debug, Clone)]
pub struct JobConfig {
    pub spectrum: Spectrum,
    pub command: Option<Command>,
    pub cut: Option<f64>,
    pub cut2: Option<f64>,
    pub sweep: Option<SweepGrid>,
    pub points: Vec<Complex64>,
    pub oracle: bool,
    pub out: Option<PathBuf>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    spectrum: Vec<RawComponent>,
    #[serde(default)]
    command: Option<String>,
    #[serde(default)]
    cut: Option<f64>,
    #[serde(default)]
    cut2: Option<f64>,
    #[serde(default)]
    sweep: Option<RawSweep>,
    #[serde(default)]
    points: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    oracle: Option<bool>,
    #[serde(default)]
    out: Option<String>,
}

#[derive(Deserialize)]
struct RawSweep {
    from: f64,
    to: f64,
    steps: usize,
}

#[derive(Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
enum RawComponent {
    #[serde(rename = "finite")]
    Finite { eigenvalues: Vec<[f64; 2]> },
    #[serde(rename = "power_rays")]
    PowerRays { c1: f64, c2: f64, angles: Vec<f64> },
    #[serde(rename = "exp_ray")]
    ExpRay { c1: f64, c2: f64, alpha: f64 },
    #[serde(rename = "log_ray")]
    LogRay { c1: f64, c2: f64, alpha: f64 },
    #[serde(rename = "shifted_line")]
    ShiftedLine { b: f64 },
}

impl From<RawComponent> for SpectrumComponent {
    fn from(raw: RawComponent) -> Self {
        match raw {
            RawComponent::Finite { eigenvalues } => SpectrumComponent::FiniteSet {
                eigenvalues: eigenvalues
                    .into_iter()
                    .map(|[re, im]| Complex64::new(re, im))
                    .collect(),
            },
            RawComponent::PowerRays { c1, c2, angles } => {
                SpectrumComponent::PowerRays { c1, c2, angles }
            }
            RawComponent::ExpRay { c1, c2, alpha } => {
                SpectrumComponent::ExponentialRay { c1, c2, alpha }
            }
            RawComponent::LogRay { c1, c2, alpha } => {
                SpectrumComponent::LogarithmicRay { c1, c2, alpha }
            }
            RawComponent::ShiftedLine { b } => SpectrumComponent::ShiftedLine { b },
        }
    }
}

fn angle_on_spectrum_ray(spec: &Spectrum, beta: f64) -> bool {
    let near = |alpha: f64| {
        let d = (beta - alpha).rem_euclid(TAU);
        d.min(TAU - d) < 1e-12
    };
    spec.components().iter().any(|comp| match comp {
        SpectrumComponent::PowerRays { angles, .. } => angles.iter().copied().any(near),
        SpectrumComponent::ExponentialRay { alpha, .. } => near(*alpha),
        SpectrumComponent::LogarithmicRay { alpha, .. } => near(*alpha),
        _ => false,
    })
}

/// Parses and validates a JSON job description.
pub fn parse_config(text: &str) -> Result<JobConfig> {
    let raw: RawConfig =
        serde_json::from_str(text).map_err(|e| Error::ParseError(e.to_string()))?;

    let spectrum = Spectrum::new(raw.spectrum.into_iter().map(Into::into).collect())?;

    let command = raw.command.as_deref().map(Command::parse).transpose()?;

    for beta in [raw.cut, raw.cut2].into_iter().flatten() {
        if !beta.is_finite() {
            return Err(Error::ValidationError("cut angle must be finite".into()));
        }
        if angle_on_spectrum_ray(&spectrum, beta) {
            return Err(Error::ValidationError(
                "cut lies on eigenvalue ray".into(),
            ));
        }
    }

    let sweep = raw
        .sweep
        .map(|s| -> Result<SweepGrid> {
            if s.steps < 2 {
                return Err(Error::ValidationError("sweep steps must be >= 2".into()));
            }
            if angle_on_spectrum_ray(&spectrum, s.from) || angle_on_spectrum_ray(&spectrum, s.to) {
                return Err(Error::ValidationError(
                    "sweep endpoint lies on eigenvalue ray".into(),
                ));
            }
            Ok(SweepGrid {
                from: s.from,
                to: s.to,
                steps: s.steps,
            })
        })
        .transpose()?;

    let points = raw
        .points
        .unwrap_or_default()
        .into_iter()
        .map(|[re, im]| Complex64::new(re, im))
        .collect();

    Ok(JobConfig {
        spectrum,
        command,
        cut: raw.cut,
        cut2: raw.cut2,
        sweep,
        points,
        oracle: raw.oracle.unwrap_or(false),
        out: raw.out.map(PathBuf::from),
    })
}

/// 15 significant digits, lowercase `e` exponent.
fn fmt_sig15(x: f64) -> String {
    format!("{:.14e}", x)
}

/// Nine-decimal complex rendering for reports; values that round to zero
/// are normalized so signs stay stable across platforms.
fn fmt_complex9(z: Complex64) -> String {
    let clamp = |x: f64| if x.abs() < 5e-10 { 0.0 } else { x };
    let re = clamp(z.re);
    let im = clamp(z.im);
    let sign = if im < 0.0 { '-' } else { '+' };
    format!("{:.9} {} {:.9}i", re, sign, im.abs())
}

fn write_csv(out: Option<&PathBuf>, header: &str, rows: &[String]) -> Result<()> {
    let mut doc = String::with_capacity(rows.len() * 64 + header.len() + 2);
    doc.push_str(header);
    doc.push_str("\r\n");
    for row in rows {
        doc.push_str(row);
        doc.push_str("\r\n");
    }
    match out {
        Some(path) => std::fs::write(path, doc)
            .map_err(|e| Error::ValidationError(format!("cannot write {}: {e}", path.display()))),
        None => {
            std::io::stdout()
                .write_all(doc.as_bytes())
                .map_err(|e| Error::ValidationError(format!("cannot write stdout: {e}")))?;
            Ok(())
        }
    }
}

fn require_cut(job: &JobConfig) -> Result<BranchCut> {
    job.cut
        .map(BranchCut::new)
        .ok_or_else(|| Error::ValidationError("this command requires a cut angle".into()))
}

fn exit_code_for(tag: ClassificationTag) -> i32 {
    match tag {
        ClassificationTag::DeterminantDefined => EXIT_OK,
        ClassificationTag::DeterminantDivergent => EXIT_DETERMINANT_DIVERGENT,
        ClassificationTag::ZetaUndefined => EXIT_ZETA_UNDEFINED,
    }
}

/// Runs a job and returns the process exit code.
pub fn run(job: &JobConfig, params: &EMParams) -> Result<i32> {
    let command = job
        .command
        .ok_or_else(|| Error::ValidationError("no command given (config or CLI)".into()))?;
    match command {
        Command::Classify => run_classify(job),
        Command::Det => run_det(job, params),
        Command::Compare => run_compare(job, params),
        Command::Zeta => run_zeta(job, params),
        Command::Sweep => run_sweep(job, params),
        Command::Witness => run_witness(job),
    }
}

fn run_classify(job: &JobConfig) -> Result<i32> {
    let cls = classify(&job.spectrum);
    println!("classification: {}", cls.tag);
    println!("reason: {}", cls.reason);
    Ok(exit_code_for(cls.tag))
}

fn run_det(job: &JobConfig, params: &EMParams) -> Result<i32> {
    let cls = classify(&job.spectrum);
    println!("classification: {}", cls.tag);
    println!("reason: {}", cls.reason);
    match cls.tag {
        ClassificationTag::ZetaUndefined => return Ok(EXIT_ZETA_UNDEFINED),
        ClassificationTag::DeterminantDivergent => {
            println!("determinant diverges to +infinity");
            return Ok(EXIT_DETERMINANT_DIVERGENT);
        }
        ClassificationTag::DeterminantDefined => {}
    }
    let cut = require_cut(job)?;
    let report = determinant_with(&job.spectrum, &cut, params)?;
    let zp = report.zeta_prime_at_zero.expect("defined");
    let det = report.determinant.expect("defined");
    println!("zeta_prime_at_zero = {}", fmt_complex9(zp));
    println!("det = {}", fmt_complex9(det));
    println!("|det| = {:.9}", det.norm());
    println!("arg(det) = {:.9}", det.arg());
    println!("error_estimate = {}", fmt_sig15(report.error_estimate));
    if job.oracle {
        let form = build_zeta(&job.spectrum, &cut)?;
        let fd = fd_zeta_prime(&form, Complex64::new(0.0, 0.0), &OracleConfig::default())?;
        println!("oracle_fd_zeta_prime = {}", fmt_complex9(fd));
        println!("oracle_delta = {}", fmt_sig15((fd - zp).norm()));
    }
    Ok(EXIT_OK)
}

fn run_compare(job: &JobConfig, params: &EMParams) -> Result<i32> {
    let cut1 = require_cut(job)?;
    let cut2 = job
        .cut2
        .map(BranchCut::new)
        .ok_or_else(|| Error::ValidationError("compare requires a second cut angle".into()))?;
    let ratio = crate::determinant::compare_cuts_with(&job.spectrum, &cut1, &cut2, params)?;
    println!("ratio = {}", fmt_complex9(ratio));
    Ok(EXIT_OK)
}

fn run_zeta(job: &JobConfig, params: &EMParams) -> Result<i32> {
    let cls = classify(&job.spectrum);
    if cls.tag == ClassificationTag::ZetaUndefined {
        println!("classification: {}", cls.tag);
        println!("reason: {}", cls.reason);
        return Ok(EXIT_ZETA_UNDEFINED);
    }
    if job.points.is_empty() {
        return Err(Error::ValidationError(
            "zeta requires at least one evaluation point".into(),
        ));
    }
    let cut = require_cut(job)?;
    let form = build_zeta(&job.spectrum, &cut)?;
    let mut rows = Vec::with_capacity(job.points.len());
    for &s in &job.points {
        let v = eval_zeta_with(&form, s, params)?;
        rows.push(format!(
            "{},{},{},{}",
            fmt_sig15(s.re),
            fmt_sig15(s.im),
            fmt_sig15(v.re),
            fmt_sig15(v.im)
        ));
    }
    write_csv(job.out.as_ref(), "s_re,s_im,zeta_re,zeta_im", &rows)?;
    if job.oracle {
        let cfg = OracleConfig::default();
        let mut max_delta: f64 = 0.0;
        let mut compared = 0usize;
        for &s in &job.points {
            match direct_zeta(&job.spectrum, &cut, s, &cfg) {
                Ok(o) => {
                    let v = eval_zeta_with(&form, s, params)?;
                    max_delta = max_delta.max((o.value - v).norm());
                    compared += 1;
                }
                Err(Error::OutsideConvergenceRegion(..)) => {}
                Err(e) => return Err(e),
            }
        }
        println!("oracle_points_compared = {compared}");
        println!("oracle_max_delta = {}", fmt_sig15(max_delta));
    }
    Ok(EXIT_OK)
}

fn run_sweep(job: &JobConfig, params: &EMParams) -> Result<i32> {
    let cls = classify(&job.spectrum);
    if cls.tag != ClassificationTag::DeterminantDefined {
        println!("classification: {}", cls.tag);
        println!("reason: {}", cls.reason);
        return Ok(exit_code_for(cls.tag));
    }
    let grid = job
        .sweep
        .ok_or_else(|| Error::ValidationError("sweep requires a sweep grid".into()))?;
    let betas: Vec<f64> = (0..grid.steps)
        .map(|i| grid.from + (grid.to - grid.from) * i as f64 / (grid.steps - 1) as f64)
        .collect();
    // Grid points evaluate independently; rows stay ordered by index.
    let rows = betas
        .par_iter()
        .map(|&beta| -> Result<String> {
            let report = determinant_with(&job.spectrum, &BranchCut::new(beta), params)?;
            let det = report.determinant.expect("defined");
            let crossings = if beta == grid.from {
                0
            } else {
                rays_crossed(&job.spectrum, grid.from, beta)?
            };
            Ok(format!(
                "{},{},{},{},{}",
                fmt_sig15(beta),
                fmt_sig15(det.re),
                fmt_sig15(det.im),
                fmt_sig15(det.norm()),
                crossings
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    write_csv(
        job.out.as_ref(),
        "beta,det_re,det_im,det_abs,crossings",
        &rows,
    )?;
    Ok(EXIT_OK)
}

fn run_witness(job: &JobConfig) -> Result<i32> {
    let has_log = job
        .spectrum
        .components()
        .iter()
        .any(|c| matches!(c, SpectrumComponent::LogarithmicRay { .. }));
    if has_log {
        let checkpoints = [100usize, 1000, 10000];
        let sums = divergence_witness(&job.spectrum, 2.0, &checkpoints)?;
        let rows: Vec<String> = checkpoints
            .iter()
            .zip(sums.iter())
            .map(|(n, s)| format!("{},{}", n, fmt_sig15(*s)))
            .collect();
        write_csv(job.out.as_ref(), "checkpoint,partial_sum", &rows)?;
        return Ok(EXIT_OK);
    }
    let has_exp = job
        .spectrum
        .components()
        .iter()
        .any(|c| matches!(c, SpectrumComponent::ExponentialRay { .. }));
    if has_exp {
        let s_values = [1e-1, 1e-2, 1e-3];
        let magnitudes = exp_blowup_witness(&job.spectrum, &s_values)?;
        let rows: Vec<String> = s_values
            .iter()
            .zip(magnitudes.iter())
            .map(|(s, m)| format!("{},{}", fmt_sig15(*s), fmt_sig15(*m)))
            .collect();
        write_csv(job.out.as_ref(), "s,zeta_prime_abs", &rows)?;
        return Ok(EXIT_OK);
    }
    Err(Error::ValidationError(
        "witness requires a logarithmic or exponential component".into(),
    ))
}
