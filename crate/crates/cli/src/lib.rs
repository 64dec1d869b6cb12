//! Commands behind the `qdist` binary. Each command renders its complete output
//! in memory; the binary writes it only on success.

pub mod files;

use std::fmt::Write as _;
use std::path::Path;

use qdist_core::metrics::{d_e_from_bures, evaluate};
use qdist_core::{
    choi_fidelity, delta_e, delta_e_fidelity, phi_kernel, standard_channel, Channel64,
    ChannelKind, Density64, Error, Measure,
};
use qdist_harness::{run_suite, HarnessError, SuiteReport, TrialConfig};

pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFY_FAILED: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const NOT_DENSITY: i32 = 3;
    pub const DIMENSION: i32 = 4;
    pub const NOT_TRACE_PRESERVING: i32 = 5;
    pub const IO: i32 = 6;
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn parse(message: impl Into<String>) -> Self {
        Self {
            code: exit::PARSE,
            message: message.into(),
        }
    }

    pub fn from_core(e: Error) -> Self {
        let code = match &e {
            Error::NotSquare { .. }
            | Error::NotHermitian { .. }
            | Error::NotPsd { .. }
            | Error::InvalidTrace { .. }
            | Error::NotNormalized { .. } => exit::NOT_DENSITY,
            Error::DimensionMismatch { .. }
            | Error::DimensionOverflow { .. }
            | Error::NonSquareChannel { .. } => exit::DIMENSION,
            Error::NotTracePreserving { .. } => exit::NOT_TRACE_PRESERVING,
            _ => exit::PARSE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }

    pub fn context(mut self, path: &Path) -> Self {
        self.message = format!("{}: {}", path.display(), self.message);
        self
    }
}

impl From<HarnessError> for CliError {
    fn from(e: HarnessError) -> Self {
        Self::parse(e.to_string())
    }
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn read_state(path: &Path) -> Result<Density64, CliError> {
    let m = files::read_matrix(path)?;
    Density64::new(m).map_err(|e| CliError::from_core(e).context(path))
}

/// `measure,value` rows for two state files.
pub fn state_dist(a: &Path, b: &Path, measures: &[Measure]) -> Result<String, CliError> {
    let (rho, sigma) = (read_state(a)?, read_state(b)?);
    let mut out = String::from("measure,value\n");
    for &m in measures {
        let v = evaluate(m, &rho, &sigma).map_err(CliError::from_core)?;
        writeln!(out, "{},{}", m, num(v.value)).unwrap();
    }
    Ok(out)
}

/// `delta_e`, `delta_e_fidelity` and `choi_fidelity` rows for two channel files.
pub fn channel_dist(e: &Path, f: &Path) -> Result<String, CliError> {
    let (e, f) = (files::read_channel(e)?, files::read_channel(f)?);
    let rows = [
        ("delta_e", delta_e(&e, &f)),
        ("delta_e_fidelity", delta_e_fidelity(&e, &f)),
        ("choi_fidelity", choi_fidelity(&e, &f)),
    ];
    let mut out = String::from("measure,value\n");
    for (name, v) in rows {
        writeln!(out, "{name},{}", num(v.map_err(CliError::from_core)?)).unwrap();
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum CurveKind {
    /// Φ(x) on [0, 1].
    Phi,
    /// D_E against the Bures distance on [0, √2].
    DeVsBures,
    /// Δ_E(identity, depolarizing(p)) on a qubit, p in [0, 1].
    DepolarizingSweep,
}

fn depolarizing_distance(p: f64) -> qdist_core::Result<f64> {
    let id = Channel64::identity(2);
    delta_e(&id, &standard_channel(&ChannelKind::Depolarizing(p), 2)?)
}

/// `(x, y)` samples on an evenly spaced grid with both endpoints included.
pub fn curve_points(kind: CurveKind, points: usize) -> Result<Vec<(f64, f64)>, CliError> {
    if points < 2 {
        return Err(CliError::parse(format!("points must be at least 2, got {points}")));
    }
    let span = match kind {
        CurveKind::DeVsBures => std::f64::consts::SQRT_2,
        _ => 1.0,
    };
    let last = (points - 1) as f64;
    (0..points)
        .map(|k| {
            let x = if k + 1 == points {
                span
            } else {
                span * k as f64 / last
            };
            let y = match kind {
                CurveKind::Phi => phi_kernel(x),
                CurveKind::DeVsBures => d_e_from_bures(x),
                CurveKind::DepolarizingSweep => depolarizing_distance(x),
            };
            y.map(|y| (x, y)).map_err(CliError::from_core)
        })
        .collect()
}

pub fn curve(kind: CurveKind, points: usize) -> Result<String, CliError> {
    let mut out = String::from("x,y\n");
    for (x, y) in curve_points(kind, points)? {
        writeln!(out, "{},{}", num(x), num(y)).unwrap();
    }
    Ok(out)
}

/// Runs the suite and renders the JSON report.
pub fn verify(cfg: &TrialConfig) -> Result<(SuiteReport, String), CliError> {
    let report = run_suite(cfg)?;
    let text = files::to_json(&report);
    Ok((report, text))
}

/// One line per property for the diagnostics stream.
pub fn verify_summary(report: &SuiteReport) -> String {
    let mut out = String::new();
    for p in &report.properties {
        let status = match (p.passed(), p.kind) {
            (true, _) => "ok",
            (false, qdist_harness::Kind::Observed) => "observed",
            (false, qdist_harness::Kind::Asserted) => "FAIL",
        };
        writeln!(
            out,
            "{status:<8} {:<32} {:>6} trials {:>6} failures  worst {:+.3e}  {:.2?}",
            p.id, p.trials, p.failures, p.worst_margin, p.elapsed
        )
        .unwrap();
    }
    writeln!(
        out,
        "{} asserted failures, {} observed, {:.2?}",
        report.asserted_failures,
        report.observed_failures,
        report.elapsed()
    )
    .unwrap();
    out
}
