//! SVG renderings of experiment tables.

use std::path::Path;
use std::str::FromStr;

use plotters::coord::Shift;
use plotters::prelude::*;

use crate::{read_file, CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    /// Call counts against budget with the classical baseline.
    Calls,
    /// Knapsack metrics, three stacked panels.
    KpMetrics,
    /// TSP metrics, two stacked panels.
    TspMetrics,
    /// Ground-state frequency and minimum energy against sweeps.
    Sweeps,
    /// Log-log minimum gap against size with the fitted line.
    Gap,
}

impl FromStr for PlotKind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "calls" => Ok(PlotKind::Calls),
            "kp-metrics" => Ok(PlotKind::KpMetrics),
            "tsp-metrics" => Ok(PlotKind::TspMetrics),
            "sweeps" => Ok(PlotKind::Sweeps),
            "gap" => Ok(PlotKind::Gap),
            other => Err(CliError::input(format!(
                "unknown plot kind {other:?} (expected calls, kp-metrics, tsp-metrics, sweeps or gap)"
            ))),
        }
    }
}

/// A numeric CSV table. Empty cells read as NaN.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl NumericTable {
    pub fn parse(text: &str) -> Result<Self> {
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let header: Vec<String> = reader.headers()?.iter().map(String::from).collect();
        let mut rows = Vec::new();
        for (k, record) in reader.records().enumerate() {
            let record = record?;
            let row = record
                .iter()
                .enumerate()
                .map(|(j, cell)| {
                    if cell.is_empty() {
                        return Ok(f64::NAN);
                    }
                    cell.parse::<f64>().map_err(|_| {
                        CliError::input(format!("row {}, column {:?}: {cell:?} is not a number", k + 1, header[j]))
                    })
                })
                .collect::<Result<Vec<f64>>>()?;
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(CliError::input("table has no rows"));
        }
        Ok(Self { header, rows })
    }

    pub fn column(&self, name: &str) -> Result<Vec<f64>> {
        let j = self
            .header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| CliError::input(format!("table has no column {name:?}")))?;
        Ok(self.rows.iter().map(|r| r[j]).collect())
    }

    fn has(&self, name: &str) -> bool {
        self.header.iter().any(|h| h == name)
    }

    /// Guesses the plot kind from the column names.
    pub fn kind(&self) -> Result<PlotKind> {
        if self.has("classical_calls") {
            Ok(PlotKind::Calls)
        } else if self.has("min_gap") {
            Ok(PlotKind::Gap)
        } else if self.has("sweeps") {
            Ok(PlotKind::Sweeps)
        } else if self.has("c_tilde_mean") {
            Ok(PlotKind::TspMetrics)
        } else if self.has("delta_v_mean") {
            Ok(PlotKind::KpMetrics)
        } else {
            Err(CliError::input("cannot tell the plot kind from the table columns"))
        }
    }
}

fn plot_err<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Plot(e.to_string())
}

fn range(values: impl IntoIterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .into_iter()
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    let pad = ((hi - lo) * 0.08).max(1e-9 + lo.abs() * 0.05);
    (lo - pad, hi + pad)
}

/// Renders `csv_path` to `out` as SVG.
pub fn emit_plot(csv_path: &Path, kind: Option<PlotKind>, out: &Path) -> Result<()> {
    let table = NumericTable::parse(&read_file(csv_path)?)?;
    let kind = match kind {
        Some(k) => k,
        None => table.kind()?,
    };
    let title = csv_path.file_stem().and_then(|s| s.to_str()).unwrap_or("table").to_string();
    let height = match kind {
        PlotKind::KpMetrics => 900,
        PlotKind::TspMetrics | PlotKind::Sweeps => 700,
        _ => 500,
    };
    let root = SVGBackend::new(out, (800, height)).into_drawing_area();
    root.fill(&WHITE).map_err(plot_err)?;
    match kind {
        PlotKind::Calls => calls(&root, &table, &title)?,
        PlotKind::KpMetrics => metric_panels(&root, &table, &["delta_v", "w_tilde", "hamming"])?,
        PlotKind::TspMetrics => metric_panels(&root, &table, &["c_tilde", "hamming"])?,
        PlotKind::Sweeps => sweeps(&root, &table)?,
        PlotKind::Gap => gap(&root, &table, &title)?,
    }
    root.present().map_err(plot_err)
}

type Area<'a> = DrawingArea<SVGBackend<'a>, Shift>;

fn calls(root: &Area, t: &NumericTable, title: &str) -> Result<()> {
    let x = t.column("budget")?;
    let classical = t.column("classical_calls")?;
    let quantum = t.column("quantum_calls")?;
    let baseline = t.column("classical_bb_calls")?;
    let (x0, x1) = range(x.iter().copied());
    let top = classical.iter().chain(&quantum).chain(&baseline).fold(1.0f64, |a, &b| a.max(b));
    let mut chart = ChartBuilder::on(root)
        .caption(title, ("sans-serif", 20))
        .margin(12)
        .x_label_area_size(40)
        .y_label_area_size(60)
        .build_cartesian_2d(x0..x1, (0.5f64..top * 2.0).log_scale())
        .map_err(plot_err)?;
    chart
        .configure_mesh()
        .x_desc("qubit budget")
        .y_desc("calls")
        .draw()
        .map_err(plot_err)?;
    for (values, color, label) in [(&classical, GREEN, "classical"), (&quantum, RED, "sampler")] {
        let pts: Vec<(f64, f64)> = x.iter().copied().zip(values.iter().copied()).collect();
        chart
            .draw_series(pts.iter().map(|&p| Circle::new(p, 4, color.filled())))
            .map_err(plot_err)?
            .label(label)
            .legend(move |(a, b)| Circle::new((a + 10, b), 4, color.filled()));
    }
    let level = baseline[0];
    chart
        .draw_series(LineSeries::new(vec![(x0, level), (x1, level)], BLUE.stroke_width(2)))
        .map_err(plot_err)?
        .label("classical only")
        .legend(|(a, b)| PathElement::new(vec![(a, b), (a + 20, b)], BLUE));
    chart
        .configure_series_labels()
        .background_style(WHITE)
        .border_style(BLACK)
        .draw()
        .map_err(plot_err)
}

/// Mean line with a band of one standard deviation, for the sampler and the
/// baseline.
fn metric_panels(root: &Area, t: &NumericTable, metrics: &[&str]) -> Result<()> {
    let x_name = t.header[0].clone();
    let x = t.column(&x_name)?;
    let (x0, x1) = range(x.iter().copied());
    let panels = root.split_evenly((metrics.len(), 1));
    for (panel, metric) in panels.iter().zip(metrics) {
        let mut series = Vec::new();
        for (prefix, color) in [("", RED), ("baseline_", BLUE)] {
            let mean = t.column(&format!("{prefix}{metric}_mean"))?;
            let sd: Vec<f64> = t.column(&format!("{prefix}{metric}_var"))?.iter().map(|v| v.sqrt()).collect();
            series.push((prefix, color, mean, sd));
        }
        let (y0, y1) = range(series.iter().flat_map(|(_, _, m, s)| {
            m.iter().zip(s).flat_map(|(m, s)| [m - s, m + s]).collect::<Vec<_>>()
        }));
        let mut chart = ChartBuilder::on(panel)
            .margin(10)
            .x_label_area_size(35)
            .y_label_area_size(60)
            .build_cartesian_2d(x0..x1, y0..y1)
            .map_err(plot_err)?;
        chart
            .configure_mesh()
            .x_desc(x_name.as_str())
            .y_desc(*metric)
            .draw()
            .map_err(plot_err)?;
        for (prefix, color, mean, sd) in &series {
            let upper = x.iter().zip(mean.iter().zip(sd)).map(|(&x, (m, s))| (x, m + s));
            let lower = x.iter().zip(mean.iter().zip(sd)).rev().map(|(&x, (m, s))| (x, m - s));
            let band: Vec<(f64, f64)> = upper.chain(lower).collect();
            chart
                .draw_series(std::iter::once(Polygon::new(band, color.mix(0.2))))
                .map_err(plot_err)?;
            let color = *color;
            let label = if prefix.is_empty() { "sampler" } else { "random" };
            chart
                .draw_series(LineSeries::new(x.iter().copied().zip(mean.iter().copied()), color.stroke_width(2)))
                .map_err(plot_err)?
                .label(label)
                .legend(move |(a, b)| PathElement::new(vec![(a, b), (a + 20, b)], color));
        }
        chart
            .configure_series_labels()
            .background_style(WHITE)
            .border_style(BLACK)
            .draw()
            .map_err(plot_err)?;
    }
    Ok(())
}

fn sweeps(root: &Area, t: &NumericTable) -> Result<()> {
    let n = t.column("N")?;
    let sweeps = t.column("sweeps")?;
    let (s0, s1) = range(sweeps.iter().copied());
    let mut sizes: Vec<f64> = n.clone();
    sizes.dedup();
    let panels = root.split_evenly((2, 1));
    for (panel, metric) in panels.iter().zip(["p0_mean", "min_energy_mean"]) {
        let y = t.column(metric)?;
        let (y0, y1) = range(y.iter().copied());
        let mut chart = ChartBuilder::on(panel)
            .margin(10)
            .x_label_area_size(35)
            .y_label_area_size(60)
            .build_cartesian_2d((s0.max(0.5)..s1 * 1.5).log_scale(), y0..y1)
            .map_err(plot_err)?;
        chart
            .configure_mesh()
            .x_desc("sweeps")
            .y_desc(metric.trim_end_matches("_mean"))
            .draw()
            .map_err(plot_err)?;
        for (k, &size) in sizes.iter().enumerate() {
            let color = Palette99::pick(k).to_rgba();
            let pts: Vec<(f64, f64)> = (0..n.len()).filter(|&i| n[i] == size).map(|i| (sweeps[i], y[i])).collect();
            chart
                .draw_series(LineSeries::new(pts.clone(), color.stroke_width(2)))
                .map_err(plot_err)?
                .label(format!("N = {size}"))
                .legend(move |(a, b)| PathElement::new(vec![(a, b), (a + 20, b)], color));
            chart
                .draw_series(pts.into_iter().map(|p| Circle::new(p, 3, color.filled())))
                .map_err(plot_err)?;
        }
        chart
            .configure_series_labels()
            .background_style(WHITE)
            .border_style(BLACK)
            .draw()
            .map_err(plot_err)?;
    }
    Ok(())
}

fn gap(root: &Area, t: &NumericTable, title: &str) -> Result<()> {
    let m = t.column("M")?;
    let g = t.column("min_gap")?;
    let points: Vec<(f64, f64)> = m.iter().copied().zip(g.iter().copied()).collect();
    let fit = hbb_core::spectrum::fit_power_law(&points)?;
    let (m0, m1) = range(m.iter().copied());
    let (g0, g1) = range(g.iter().copied());
    let mut chart = ChartBuilder::on(root)
        .caption(
            format!("{title}: exponent {:.3}, r² {:.3}", fit.exponent, fit.r_squared),
            ("sans-serif", 20),
        )
        .margin(12)
        .x_label_area_size(40)
        .y_label_area_size(60)
        .build_cartesian_2d((m0.max(1e-3)..m1).log_scale(), (g0.max(1e-6)..g1).log_scale())
        .map_err(plot_err)?;
    chart
        .configure_mesh()
        .x_desc("qubits M")
        .y_desc("minimum gap")
        .draw()
        .map_err(plot_err)?;
    chart
        .draw_series(points.iter().map(|&p| Circle::new(p, 4, RED.filled())))
        .map_err(plot_err)?;
    let line: Vec<(f64, f64)> = (0..=50)
        .map(|k| {
            let x = m0.max(1e-3) * (m1 / m0.max(1e-3)).powf(k as f64 / 50.0);
            (x, fit.prefactor * x.powf(fit.exponent))
        })
        .collect();
    chart
        .draw_series(LineSeries::new(line, BLUE.stroke_width(2)))
        .map_err(plot_err)?;
    Ok(())
}
