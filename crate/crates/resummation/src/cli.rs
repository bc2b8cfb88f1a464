//! Dataset assembly for the command-line front end: coefficient tables,
//! resummation sweeps, cutoff-iteration reports, and the curve datasets as
//! CSV or JSON.
//!
//! CSV output is deterministic: header row, comma separator, '.' decimal,
//! floats printed with 17 significant digits.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dispersion::{
    fixed_point_cutoff, CorrectedApproximant, DiscontinuityModel, IterationTrace,
};
use crate::error::{ResumError, Result};
use crate::oracle::{exact_energy, OracleConfig};
use crate::series::{large_order_ratio_check, LargeOrderParams, PerturbationSeries};
use crate::variational::build_reexpansion;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub order: usize,
    pub omega: f64,
    pub g_min: f64,
    pub g_max: f64,
    pub points: usize,
    pub log_grid: bool,
    pub root_tol: f64,
    pub fixed_point_tol: f64,
    pub quad_tol: f64,
    pub correction_truncation: usize,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            order: 1,
            omega: 1.0,
            g_min: 0.01,
            g_max: 1000.0,
            points: 121,
            log_grid: true,
            root_tol: 1e-12,
            fixed_point_tol: 1e-10,
            quad_tol: 1e-12,
            correction_truncation: 0,
            format: OutputFormat::Csv,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.g_min >= self.g_max {
            return Err(ResumError::InvalidInput(format!(
                "g_min ({}) must be below g_max ({})",
                self.g_min, self.g_max
            )));
        }
        if self.points < 2 {
            return Err(ResumError::InvalidInput(
                "at least 2 grid points required".into(),
            ));
        }
        if self.omega <= 0.0 {
            return Err(ResumError::InvalidInput("omega must be positive".into()));
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        grid(self.g_min, self.g_max, self.points, self.log_grid)
    }
}

pub fn grid(g_min: f64, g_max: f64, points: usize, log: bool) -> Vec<f64> {
    if log {
        let (la, lb) = (g_min.ln(), g_max.ln());
        (0..points)
            .map(|i| (la + (lb - la) * i as f64 / (points - 1) as f64).exp())
            .collect()
    } else {
        (0..points)
            .map(|i| g_min + (g_max - g_min) * i as f64 / (points - 1) as f64)
            .collect()
    }
}

/// A column-labelled table with optional comment lines, serializable as CSV
/// or JSON with identical field names.
#[derive(Debug, Clone, Serialize)]
pub struct Dataset {
    pub comments: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
}

fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

impl Dataset {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            comments: Vec::new(),
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn comment(&mut self, line: impl Into<String>) {
        self.comments.push(line.into());
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            writeln!(out, "# {c}").unwrap();
        }
        writeln!(out, "{}", self.columns.join(",")).unwrap();
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Int(i) => i.to_string(),
                    Cell::Num(v) => fmt_float(*v),
                    Cell::Text(s) => s.clone(),
                })
                .collect();
            writeln!(out, "{}", cells.join(",")).unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        let objects: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let map: serde_json::Map<String, serde_json::Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(k, c)| {
                        let v = match c {
                            Cell::Int(i) => serde_json::json!(i),
                            Cell::Num(v) => serde_json::json!(v),
                            Cell::Text(s) => serde_json::json!(s),
                        };
                        (k.clone(), v)
                    })
                    .collect();
                serde_json::Value::Object(map)
            })
            .collect();
        serde_json::to_string_pretty(&serde_json::json!({
            "comments": self.comments,
            "rows": objects,
        }))
        .unwrap()
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }
}

/// Write output in one shot; goes through a temp file so a crash never
/// leaves a half-written dataset.
pub fn write_output(path: &Path, content: &str) -> std::io::Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, content)?;
    fs::rename(&tmp, path)
}

/// Exact and decimal coefficient table for n = 0..N.
pub fn cmd_coeffs(order: usize) -> Result<Dataset> {
    let series = PerturbationSeries::oscillator(1.0, order)?;
    let exact = series.exact_coefficients().expect("generated exactly");
    let mut ds = Dataset::new(&["n", "exact", "decimal"]);
    for (n, r) in exact.iter().enumerate() {
        ds.push(vec![
            Cell::Int(n as i64),
            Cell::Text(r.to_string()),
            Cell::Num(series.coefficients()[n]),
        ]);
    }
    Ok(ds)
}

/// Cutoff-iteration report: the cutoff sequence and the converged modified
/// coefficients.
pub fn cmd_iterate(config: &RunConfig) -> Result<(Dataset, IterationTrace)> {
    config.validate()?;
    let order = config.order;
    let series = PerturbationSeries::oscillator(config.omega, order.max(4))?;
    let model =
        DiscontinuityModel::oscillator(config.omega).with_truncation(config.correction_truncation);
    let trace = fixed_point_cutoff(order, &series, &model, config.fixed_point_tol)?;
    let mut ds = Dataset::new(&["iteration", "cutoff", "coefficients"]);
    ds.comment(format!(
        "cutoff iteration, order N={order}, tolerance {:e}",
        config.fixed_point_tol
    ));
    ds.comment(format!("converged: {}", trace.converged));
    for (i, &c) in trace.cutoffs.iter().enumerate() {
        let coeffs = if i < trace.coefficient_snapshots.len() {
            trace.coefficient_snapshots[i]
                .iter()
                .map(|v| fmt_float(*v))
                .collect::<Vec<_>>()
                .join(" ")
        } else {
            String::new()
        };
        ds.push(vec![Cell::Int(i as i64), Cell::Num(c), Cell::Text(coeffs)]);
    }
    Ok((ds, trace))
}

/// Resummation sweep over the configured grid: W_N and the corrected
/// Wbar'_N, real and imaginary parts.
pub fn cmd_resum(config: &RunConfig) -> Result<Dataset> {
    config.validate()?;
    let series = PerturbationSeries::oscillator(config.omega, config.order.max(4))?;
    let model =
        DiscontinuityModel::oscillator(config.omega).with_truncation(config.correction_truncation);
    let appr = build_reexpansion(&series, config.order)?;
    let trace = fixed_point_cutoff(config.order, &series, &model, config.fixed_point_tol)?;
    let corrected = CorrectedApproximant::from_trace(&series, &model, &trace)?;
    let gs = sorted_for_sweep(config.grid());
    let plain = appr.sweep(&gs)?;
    let fixed = corrected.sweep(&gs)?;
    let mut ds = Dataset::new(&["g", "w_re", "w_im", "wbar_re", "wbar_im"]);
    ds.comment(format!(
        "order N={}, omega={}, converged cutoff={:.12e}",
        config.order, config.omega, corrected.g_cut()
    ));
    for ((g, p), f) in gs.iter().zip(&plain).zip(&fixed) {
        ds.push(vec![
            Cell::Num(*g),
            Cell::Num(p.value.re),
            Cell::Num(p.value.im),
            Cell::Num(f.value.re),
            Cell::Num(f.value.im),
        ]);
    }
    Ok(ds)
}

/// Sweeps start near g = 0 where the branch is unambiguous and walk outward
/// so continuation hints stay on the physical branch.
fn sorted_for_sweep(mut gs: Vec<f64>) -> Vec<f64> {
    gs.sort_by(|a, b| a.abs().partial_cmp(&b.abs()).unwrap());
    let mut out = gs;
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if out.first().map(|g| *g < 0.0).unwrap_or(false) && out.last().map(|g| *g <= 0.0).unwrap_or(false)
    {
        // all-negative grids walk from the origin outward
        out.reverse();
    }
    out
}

fn positive_grid() -> Vec<f64> {
    grid(1e-2, 1e3, 121, true)
}

fn negative_grid() -> Vec<f64> {
    // linear in [-1, 0), walked from the origin outward by sorted_for_sweep
    (0..200).map(|i| -1.0 + i as f64 / 200.0).collect()
}

/// Curve datasets for the five published figures.  The "exact" comparators
/// of the imaginary-part figures are replaced by the correction-series
/// semiclassical reference, as noted in the dataset header.
pub fn cmd_figure(id: u8, config: &RunConfig) -> Result<Dataset> {
    let omega = config.omega;
    let series = PerturbationSeries::oscillator(omega, 6)?;
    let model = DiscontinuityModel::oscillator(omega);
    let oracle_cfg = OracleConfig::default();
    match id {
        1 | 3 => {
            let order = if id == 1 { 1 } else { 3 };
            let appr = build_reexpansion(&series, order)?;
            let trace = fixed_point_cutoff(order, &series, &model, config.fixed_point_tol)?;
            let corrected = CorrectedApproximant::from_trace(&series, &model, &trace)?;
            let initial = CorrectedApproximant::with_cutoff(&series, &model, order, trace.cutoffs[0])?;
            let gs = positive_grid();
            let mut ds = Dataset::new(&[
                "g",
                "ratio_w",
                "ratio_wbar",
                "ratio_wbar_initial_cutoff",
            ]);
            ds.comment(format!(
                "ratios of the order-{order} resummed energies to the diagonalization reference"
            ));
            ds.comment(format!(
                "converged cutoff {:.12e}, initial cutoff {:.12e}",
                corrected.g_cut(),
                trace.cutoffs[0]
            ));
            for &g in &gs {
                let ex = exact_energy(g, omega, &oracle_cfg)?;
                let w = appr.evaluate(g)?.value.re;
                let wb = corrected.energy(g)?.value.re;
                let wi = initial.energy(g)?.value.re;
                ds.push(vec![
                    Cell::Num(g),
                    Cell::Num(w / ex),
                    Cell::Num(wb / ex),
                    Cell::Num(wi / ex),
                ]);
            }
            Ok(ds)
        }
        2 => {
            let appr1 = build_reexpansion(&series, 1)?;
            let appr3 = build_reexpansion(&series, 3)?;
            let trace = fixed_point_cutoff(1, &series, &model, config.fixed_point_tol)?;
            let corrected = CorrectedApproximant::from_trace(&series, &model, &trace)?;
            let reference = DiscontinuityModel::oscillator(omega).with_truncation(6);
            let gs = sorted_for_sweep(negative_grid());
            let w1 = appr1.sweep(&gs)?;
            let w3 = appr3.sweep(&gs)?;
            let wb = corrected.sweep(&gs)?;
            let mut ds = Dataset::new(&[
                "g",
                "reduced_im_wbar1",
                "reduced_im_w1",
                "reduced_im_w3",
                "reduced_im_reference",
            ]);
            ds.comment("imaginary parts divided by the leading semiclassical expression");
            ds.comment("reference column: correction-series semiclassical discontinuity");
            for (i, &g) in gs.iter().enumerate() {
                let lead = model.semiclassical_disc(-g);
                ds.push(vec![
                    Cell::Num(g),
                    Cell::Num(wb[i].value.im / lead),
                    Cell::Num(w1[i].value.im / lead),
                    Cell::Num(w3[i].value.im / lead),
                    Cell::Num(reference.semiclassical_disc(-g) / lead),
                ]);
            }
            Ok(ds)
        }
        4 | 5 => {
            let appr3 = build_reexpansion(&series, 3)?;
            let trace = fixed_point_cutoff(3, &series, &model, config.fixed_point_tol)?;
            let corrected = CorrectedApproximant::from_trace(&series, &model, &trace)?;
            let initial = CorrectedApproximant::with_cutoff(&series, &model, 3, trace.cutoffs[0])?;
            let reference = DiscontinuityModel::oscillator(omega).with_truncation(6);
            let gs = sorted_for_sweep(negative_grid());
            let w3 = appr3.sweep(&gs)?;
            let wb = corrected.sweep(&gs)?;
            let wi = initial.sweep(&gs)?;
            if id == 4 {
                let mut ds = Dataset::new(&[
                    "g",
                    "im_wbar3",
                    "im_wbar3_initial_cutoff",
                    "im_w3",
                    "im_reference",
                ]);
                ds.comment("imaginary parts on the negative coupling axis");
                ds.comment("reference column: correction-series semiclassical discontinuity");
                for (i, &g) in gs.iter().enumerate() {
                    ds.push(vec![
                        Cell::Num(g),
                        Cell::Num(wb[i].value.im),
                        Cell::Num(wi[i].value.im),
                        Cell::Num(w3[i].value.im),
                        Cell::Num(reference.semiclassical_disc(-g)),
                    ]);
                }
                Ok(ds)
            } else {
                let mut ds = Dataset::new(&[
                    "g",
                    "ratio_im_wbar3",
                    "ratio_im_w3",
                    "ratio_im_wbar3_initial_cutoff",
                ]);
                ds.comment(
                    "imaginary parts divided by the correction-series semiclassical reference",
                );
                for (i, &g) in gs.iter().enumerate() {
                    let r = reference.semiclassical_disc(-g);
                    ds.push(vec![
                        Cell::Num(g),
                        Cell::Num(wb[i].value.im / r),
                        Cell::Num(w3[i].value.im / r),
                        Cell::Num(wi[i].value.im / r),
                    ]);
                }
                Ok(ds)
            }
        }
        other => Err(ResumError::InvalidInput(format!(
            "figure id {other} is not in 1..=5"
        ))),
    }
}

/// Large-order comparison rows for `coeffs --check-asymptotics`.
pub fn cmd_coeffs_asymptotics(order: usize) -> Result<Dataset> {
    let series = PerturbationSeries::oscillator(1.0, order)?;
    let params = LargeOrderParams::oscillator(1.0);
    let lo = 1usize;
    let res = large_order_ratio_check(&series, &params, lo..=order)?;
    let mut ds = Dataset::new(&["k", "coefficient", "ratio_to_leading", "residual"]);
    for (k, r) in res {
        let lead = crate::series::asymptotic_coefficient(k, &params, false);
        let ek = series.coefficients()[k];
        ds.push(vec![
            Cell::Int(k as i64),
            Cell::Num(ek),
            Cell::Num(ek / lead),
            Cell::Num(r),
        ]);
    }
    Ok(ds)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coeff_table_matches_published_list() {
        let ds = cmd_coeffs(5).unwrap();
        let exact: Vec<&str> = ds
            .rows
            .iter()
            .map(|r| match &r[1] {
                Cell::Text(s) => s.as_str(),
                _ => panic!("expected text cell"),
            })
            .collect();
        assert_eq!(
            exact,
            vec!["1/2", "3/4", "-21/8", "333/16", "-30885/128", "916731/256"]
        );
    }

    #[test]
    fn csv_is_deterministic_and_has_17_digits() {
        let ds = cmd_coeffs(2).unwrap();
        let a = ds.to_csv();
        let b = cmd_coeffs(2).unwrap().to_csv();
        assert_eq!(a, b);
        assert!(a.contains("5.0000000000000000e-1"));
        assert!(a.lines().next().unwrap().starts_with("n,exact,decimal"));
    }

    #[test]
    fn json_mirrors_columns() {
        let ds = cmd_coeffs(1).unwrap();
        let v: serde_json::Value = serde_json::from_str(&ds.to_json()).unwrap();
        assert_eq!(v["rows"][0]["exact"], "1/2");
        assert_eq!(v["rows"][1]["n"], 1);
    }

    #[test]
    fn invalid_figure_id() {
        let cfg = RunConfig::default();
        assert!(cmd_figure(7, &cfg).is_err());
    }

    #[test]
    fn grid_validation() {
        let mut cfg = RunConfig::default();
        cfg.g_min = 2.0;
        cfg.g_max = 1.0;
        assert!(cfg.validate().is_err());
        cfg.g_max = 3.0;
        cfg.points = 1;
        assert!(cfg.validate().is_err());
    }
}
