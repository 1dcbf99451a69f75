//! Fidelity tables over ranges of `(N, M)`.

use std::io::Write;
use std::ops::RangeInclusive;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use unot_core::estimation::{classical_unot_analytic, classical_unot_montecarlo, MIN_MC_SAMPLES};
use unot_core::gate::{apply_unot_with, check_pairwise_separability, output_report, GateCoefficients};
use unot_core::haar::haar_sample_pure;
use unot_core::optimality::{Channel, ExtremalChannel, HalfInt};
use unot_core::restricted::real_estimation_fidelity;

use crate::format::decimal;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub n_range: RangeInclusive<usize>,
    pub m_range: RangeInclusive<usize>,
    /// Monte Carlo samples per row; 0 means analytic only.
    pub samples: usize,
    pub seed: u64,
    pub format: OutputFormat,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_range.is_empty() || self.m_range.is_empty() {
            bail!("N and M ranges must be nonempty");
        }
        if *self.n_range.start() == 0 || *self.m_range.start() == 0 {
            bail!("N and M start at 1");
        }
        if self.samples != 0 && self.samples < MIN_MC_SAMPLES {
            bail!("--samples must be 0 or at least {MIN_MC_SAMPLES}, got {}", self.samples);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloColumns {
    pub fidelity: f64,
    pub stderr: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub n: usize,
    pub m: usize,
    pub fidelity_unot: f64,
    pub fidelity_estimation: f64,
    pub fidelity_clone: f64,
    pub s_not: f64,
    pub s_clone: f64,
    pub delta_extremal_minus: f64,
    pub delta_extremal_plus: f64,
    /// `None` when `M < 2`: there is no pair of complements to test.
    pub separable: Option<bool>,
    pub real_case_fidelity: f64,
    pub monte_carlo: Option<MonteCarloColumns>,
}

/// CSV column order; the last two appear only with Monte Carlo samples.
pub const COLUMNS: [&str; 13] = [
    "N",
    "M",
    "fidelity_unot",
    "fidelity_estimation",
    "fidelity_clone",
    "s_not",
    "s_clone",
    "delta_extremal_minus",
    "delta_extremal_plus",
    "separable",
    "real_case_fidelity",
    "mc_fidelity_estimation",
    "mc_stderr",
];

fn row_seed(seed: u64, n: usize, m: usize) -> u64 {
    seed ^ ((n as u64) << 32 | m as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

pub fn compute_row(n: usize, m: usize, samples: usize, seed: u64) -> Result<ReportRow> {
    let gate = GateCoefficients::new(n, m).with_context(|| format!("N={n}, M={m}"))?;
    let rs = row_seed(seed, n, m);
    let psi = haar_sample_pure(rs);
    let joint = apply_unot_with(&psi, &gate);
    let rep = output_report(&joint);
    let est = classical_unot_analytic(&psi, n)?;
    let delta = |j| -> Result<f64> { Ok(ExtremalChannel::new(n, j)?.fidelity_with_input(&psi)?) };
    let separable = if m >= 2 {
        Some(check_pairwise_separability(&joint)?.separable)
    } else {
        None
    };
    let monte_carlo = if samples > 0 {
        let mc = classical_unot_montecarlo(&psi, n, samples, rs.wrapping_add(1))?;
        Some(MonteCarloColumns {
            fidelity: mc.fidelity(),
            stderr: mc.stderr,
        })
    } else {
        None
    };
    Ok(ReportRow {
        n,
        m,
        fidelity_unot: rep.fidelity_not,
        fidelity_estimation: est.fidelity(),
        fidelity_clone: rep.fidelity_clone,
        s_not: rep.scaling_not,
        s_clone: rep.scaling_clone,
        delta_extremal_minus: delta(HalfInt::spin_below(n))?,
        delta_extremal_plus: delta(HalfInt::spin_above(n))?,
        separable,
        real_case_fidelity: real_estimation_fidelity(n)?,
        monte_carlo,
    })
}

/// One row per `(N, M)`, in lexicographic order.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<ReportRow>> {
    config.validate()?;
    let mut rows = Vec::new();
    for n in config.n_range.clone() {
        for m in config.m_range.clone() {
            rows.push(compute_row(n, m, config.samples, config.seed)?);
        }
    }
    Ok(rows)
}

impl ReportRow {
    fn fields(&self) -> Vec<String> {
        let mut f = vec![
            self.n.to_string(),
            self.m.to_string(),
            decimal(self.fidelity_unot),
            decimal(self.fidelity_estimation),
            decimal(self.fidelity_clone),
            decimal(self.s_not),
            decimal(self.s_clone),
            decimal(self.delta_extremal_minus),
            decimal(self.delta_extremal_plus),
            self.separable.map(|b| b.to_string()).unwrap_or_default(),
            decimal(self.real_case_fidelity),
        ];
        if let Some(mc) = &self.monte_carlo {
            f.push(decimal(mc.fidelity));
            f.push(decimal(mc.stderr));
        }
        f
    }
}

#[derive(Serialize)]
struct JsonRow {
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "M")]
    m: usize,
    fidelity_unot: String,
    fidelity_estimation: String,
    fidelity_clone: String,
    s_not: String,
    s_clone: String,
    delta_extremal_minus: String,
    delta_extremal_plus: String,
    separable: Option<bool>,
    real_case_fidelity: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    mc_fidelity_estimation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mc_stderr: Option<String>,
}

impl From<&ReportRow> for JsonRow {
    fn from(r: &ReportRow) -> Self {
        JsonRow {
            n: r.n,
            m: r.m,
            fidelity_unot: decimal(r.fidelity_unot),
            fidelity_estimation: decimal(r.fidelity_estimation),
            fidelity_clone: decimal(r.fidelity_clone),
            s_not: decimal(r.s_not),
            s_clone: decimal(r.s_clone),
            delta_extremal_minus: decimal(r.delta_extremal_minus),
            delta_extremal_plus: decimal(r.delta_extremal_plus),
            separable: r.separable,
            real_case_fidelity: decimal(r.real_case_fidelity),
            mc_fidelity_estimation: r.monte_carlo.as_ref().map(|mc| decimal(mc.fidelity)),
            mc_stderr: r.monte_carlo.as_ref().map(|mc| decimal(mc.stderr)),
        }
    }
}

pub fn write_csv<W: Write>(rows: &[ReportRow], out: W) -> Result<()> {
    let mc = rows.iter().any(|r| r.monte_carlo.is_some());
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(&COLUMNS[..if mc { 13 } else { 11 }])?;
    for r in rows {
        w.write_record(r.fields())?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(rows: &[ReportRow], mut out: W) -> Result<()> {
    let json: Vec<JsonRow> = rows.iter().map(JsonRow::from).collect();
    serde_json::to_writer_pretty(&mut out, &json)?;
    out.write_all(b"\n")?;
    Ok(())
}

pub fn write_rows<W: Write>(rows: &[ReportRow], format: OutputFormat, out: W) -> Result<()> {
    match format {
        OutputFormat::Csv => write_csv(rows, out),
        OutputFormat::Json => write_json(rows, out),
    }
}
