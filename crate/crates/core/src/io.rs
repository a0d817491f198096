//! CSV and key-value file formats.

use std::fmt::Write as _;
use std::io::Write;

use crate::analysis::{BurstMetrics, SweepResult};
use crate::dynamics::Trajectory;

pub const TRAJECTORY_HEADER: [&str; 8] =
    ["t_us", "P_plus_W", "P_minus_W", "re_b", "im_b", "abs_b", "mean_u", "std_u"];

pub const SWEEP_HEADER: [&str; 15] = [
    "row",
    "value",
    "replicates",
    "failed",
    "first_peak_W",
    "height_over_backscatter",
    "first_peak_time_us",
    "revivals",
    "backscatter_W",
    "exponent",
    "exponent_stderr",
    "r_squared",
    "fit_from",
    "fit_to",
    "threshold",
];

/// Marker placed in every data column of the row that ends a failed run.
pub const FAILURE_MARKER: &str = "FAILED";

/// 17 significant digits, enough to reproduce the binary value exactly.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv_error(e: csv::Error) -> std::io::Error {
    std::io::Error::other(e)
}

/// Writes the trajectory table. `failure_time` appends a marker row.
pub fn write_trajectory_csv<W: Write>(
    out: W,
    traj: &Trajectory,
    failure_time: Option<f64>,
) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TRAJECTORY_HEADER).map_err(csv_error)?;
    for i in 0..traj.len() {
        let b = traj.bunching[i];
        w.write_record([
            fmt_f64(traj.t[i] * 1e6),
            fmt_f64(traj.p_plus[i]),
            fmt_f64(traj.p_minus[i]),
            fmt_f64(b.re),
            fmt_f64(b.im),
            fmt_f64(b.norm()),
            fmt_f64(traj.mean_u[i]),
            fmt_f64(traj.std_u[i]),
        ])
        .map_err(csv_error)?;
    }
    if let Some(t) = failure_time {
        let mut row = vec![fmt_f64(t * 1e6)];
        row.extend(std::iter::repeat_n(FAILURE_MARKER.to_string(), TRAJECTORY_HEADER.len() - 1));
        w.write_record(&row).map_err(csv_error)?;
    }
    w.flush()
}

/// Reads a trajectory table back; marker rows are skipped.
pub fn read_trajectory_csv<R: std::io::Read>(input: R) -> std::io::Result<Vec<[f64; 8]>> {
    let mut reader = csv::Reader::from_reader(input);
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_error)?;
        if record.iter().any(|f| f == FAILURE_MARKER) {
            continue;
        }
        let mut row = [0.0; 8];
        for (slot, field) in row.iter_mut().zip(record.iter()) {
            *slot = field
                .parse()
                .map_err(|_| std::io::Error::other(format!("bad number '{field}'")))?;
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Writes one row per sweep point and a trailing summary row.
pub fn write_sweep_csv<W: Write>(out: W, result: &SweepResult) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_HEADER).map_err(csv_error)?;
    let blank = String::new;
    for p in &result.points {
        let failed = p.replicates.iter().filter(|r| r.metrics.is_none()).count();
        w.write_record([
            "point".to_string(),
            fmt_f64(p.value),
            p.replicates.len().to_string(),
            failed.to_string(),
            fmt_f64(p.mean_height()),
            fmt_f64(p.mean_height_over_baseline()),
            fmt_f64(p.mean_peak_time() * 1e6),
            fmt_f64(p.mean_revivals()),
            fmt_f64(p.backscatter_level),
            blank(),
            blank(),
            blank(),
            blank(),
            blank(),
            blank(),
        ])
        .map_err(csv_error)?;
    }
    let opt = |v: Option<f64>| v.map(fmt_f64).unwrap_or_default();
    w.write_record([
        "summary".to_string(),
        blank(),
        blank(),
        result.failed_points.to_string(),
        blank(),
        blank(),
        blank(),
        blank(),
        blank(),
        opt(result.fit.map(|f| f.exponent)),
        opt(result.fit.map(|f| f.exponent_stderr)),
        opt(result.fit.map(|f| f.r_squared)),
        opt(result.fit_range.map(|r| r.0)),
        opt(result.fit_range.map(|r| r.1)),
        opt(result.threshold),
    ])
    .map_err(csv_error)?;
    w.flush()
}

/// `key = value` lines describing the bursts of one run.
pub fn format_metrics(m: &BurstMetrics) -> String {
    let mut s = String::new();
    let opt = |v: Option<f64>| v.map(fmt_f64).unwrap_or_else(|| "none".to_string());
    let _ = writeln!(s, "first_peak_W = {}", fmt_f64(m.first_peak_height));
    let _ = writeln!(s, "first_peak_time_s = {}", opt(m.first_peak_time));
    let _ = writeln!(s, "first_peak_pump_W = {}", fmt_f64(m.first_peak_pump));
    let _ = writeln!(s, "first_peak_baseline_W = {}", fmt_f64(m.first_peak_baseline));
    let _ = writeln!(s, "delay_s = {}", opt(m.delay));
    let _ = writeln!(s, "rise_time_s = {}", opt(m.rise_time));
    let _ = writeln!(s, "revival_count = {}", m.revival_count());
    let times: Vec<String> = m.revival_times.iter().map(|t| fmt_f64(*t)).collect();
    let _ = writeln!(s, "revival_times_s = {}", times.join(", "));
    let _ = writeln!(s, "max_over_backscatter = {}", fmt_f64(m.max_baseline_ratio));
    s
}
