use std::fmt::Write as _;
use std::io::Write;
use std::time::Duration;

use sha2::{Digest, Sha256};

use crate::error::Result;

/// Text written for +∞ (e.g. thermal ξ at ε₋ = 0, T > 0).
pub const INF_MARKER: &str = "inf";
pub const NAN_MARKER: &str = "nan";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Analytic,
    Ed,
    /// |value(n_max) − value(previous n_max)| for the same point and series.
    EdDelta,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Analytic => "analytic",
            Method::Ed => "ed",
            Method::EdDelta => "ed_delta",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// Value is +∞ by construction.
    Infinite,
    /// Zeroed by the T_c mask.
    Masked,
    /// Quantity has no meaning at this point (e.g. superradiant input).
    NotApplicable,
    NonPerturbative,
    ResidualExceeded,
    NotConverged,
    OracleMismatch,
    SolverFailed,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Infinite => "infinite",
            Status::Masked => "masked",
            Status::NotApplicable => "not_applicable",
            Status::NonPerturbative => "non_perturbative",
            Status::ResidualExceeded => "residual_exceeded",
            Status::NotConverged => "not_converged",
            Status::OracleMismatch => "oracle_mismatch",
            Status::SolverFailed => "solver_failed",
        }
    }

    /// Statuses that fail a strict run.
    pub fn is_failure(self) -> bool {
        matches!(
            self,
            Status::ResidualExceeded
                | Status::NotConverged
                | Status::OracleMismatch
                | Status::SolverFailed
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub coords: Vec<f64>,
    pub series: String,
    pub method: Method,
    pub n_max: Option<usize>,
    pub value: f64,
    pub residual: Option<f64>,
    pub residual_bound: Option<f64>,
    pub status: Status,
    /// Kept in memory for progress reporting only; never written to CSV.
    pub wall_time: Duration,
}

impl Row {
    pub fn analytic(coords: Vec<f64>, series: &str, value: f64) -> Self {
        let status = if value == f64::INFINITY {
            Status::Infinite
        } else {
            Status::Ok
        };
        Row {
            coords,
            series: series.to_string(),
            method: Method::Analytic,
            n_max: None,
            value,
            residual: None,
            residual_bound: None,
            status,
            wall_time: Duration::ZERO,
        }
    }

    pub fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunMetadata {
    pub version: String,
    pub experiment: String,
    pub config_sha256: String,
    pub seed: u64,
    /// Unix seconds; the only non-deterministic line of the output.
    pub timestamp: u64,
    /// Extra `key: value` lines (deterministic).
    pub notes: Vec<(String, String)>,
}

impl RunMetadata {
    pub fn new(experiment: &str, canonical_config: &str, seed: u64) -> Self {
        let timestamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        RunMetadata {
            version: env!("CARGO_PKG_VERSION").to_string(),
            experiment: experiment.to_string(),
            config_sha256: config_hash(canonical_config),
            seed,
            timestamp,
            notes: Vec::new(),
        }
    }
}

pub fn config_hash(canonical_config: &str) -> String {
    hex::encode(Sha256::digest(canonical_config.as_bytes()))
}

/// 17 significant digits, enough for an exact f64 round trip.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        NAN_MARKER.to_string()
    } else if x == f64::INFINITY {
        INF_MARKER.to_string()
    } else if x == f64::NEG_INFINITY {
        format!("-{INF_MARKER}")
    } else {
        format!("{x:.16e}")
    }
}

pub fn parse_float(s: &str) -> Option<f64> {
    match s {
        INF_MARKER => Some(f64::INFINITY),
        NAN_MARKER => Some(f64::NAN),
        _ => s.parse().ok(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub coord_names: Vec<String>,
    pub rows: Vec<Row>,
    pub metadata: RunMetadata,
}

impl SweepResult {
    pub fn failures(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| r.status.is_failure())
    }

    pub fn has_failures(&self) -> bool {
        self.failures().next().is_some()
    }

    pub fn header(&self) -> String {
        let mut cols: Vec<&str> = self.coord_names.iter().map(String::as_str).collect();
        cols.extend(["series", "method", "n_max", "value", "residual", "residual_bound", "status"]);
        cols.join(",")
    }

    /// Rows matching a series and method, in output order.
    pub fn select<'a>(&'a self, series: &'a str, method: Method) -> impl Iterator<Item = &'a Row> + 'a {
        self.rows
            .iter()
            .filter(move |r| r.series == series && r.method == method)
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        let m = &self.metadata;
        writeln!(w, "# dicke-squeeze version: {}", m.version)?;
        writeln!(w, "# experiment: {}", m.experiment)?;
        writeln!(w, "# config_sha256: {}", m.config_sha256)?;
        writeln!(w, "# rng_seed: {}", m.seed)?;
        for (k, v) in &m.notes {
            writeln!(w, "# {k}: {v}")?;
        }
        writeln!(w, "# timestamp_unix: {}", m.timestamp)?;
        writeln!(w, "{}", self.header())?;
        let opt = |x: Option<f64>| x.map(format_float).unwrap_or_default();
        for r in &self.rows {
            let mut line = String::new();
            for c in &r.coords {
                line.push_str(&format_float(*c));
                line.push(',');
            }
            let _ = write!(
                line,
                "{},{},{},{},{},{},{}",
                r.series,
                r.method.as_str(),
                r.n_max.map(|n| n.to_string()).unwrap_or_default(),
                format_float(r.value),
                opt(r.residual),
                opt(r.residual_bound),
                r.status.as_str()
            );
            writeln!(w, "{line}")?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv is utf-8")
    }
}

/// Drop the timestamp comment so two runs can be compared byte for byte.
pub fn strip_timestamp(csv: &str) -> String {
    csv.lines()
        .filter(|l| !l.starts_with("# timestamp_unix:"))
        .map(|l| format!("{l}\n"))
        .collect()
}
