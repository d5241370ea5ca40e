//! Output directory handling and the per-suite plot catalogue.

use std::path::{Path, PathBuf};

use intermittency::diagnostics::Table;

use crate::svg::{Axis, LineChart, Series};
use crate::Failure;

/// All artifacts go through this handle, so nothing is written outside the
/// output directory.
pub struct OutputDir {
    root: PathBuf,
}

impl OutputDir {
    pub fn create(root: &Path) -> Result<Self, Failure> {
        std::fs::create_dir_all(root).map_err(|e| {
            Failure::runtime(format!("cannot create {}: {e}", root.display()))
        })?;
        Ok(Self {
            root: root.to_path_buf(),
        })
    }

    /// Writes `name` (a bare file name) inside the directory.
    pub fn write(&self, name: &str, contents: &str) -> Result<(), Failure> {
        debug_assert!(!name.contains(['/', '\\']));
        let path = self.root.join(name);
        std::fs::write(&path, contents)
            .map_err(|e| Failure::runtime(format!("cannot write {}: {e}", path.display())))
    }
}

/// Which table columns of a suite are drawn, and on which axes.
pub struct PlotSpec {
    pub suite: &'static str,
    pub table: &'static str,
    pub title: &'static str,
    pub x: &'static str,
    pub ys: &'static [&'static str],
    pub log_y: bool,
    /// Overlay a least-squares line through the points in log-log scale.
    pub fit: bool,
}

pub const PLOTS: &[PlotSpec] = &[
    PlotSpec {
        suite: "wip_marginal",
        table: "marginals",
        title: "KS distance to the stable limit",
        x: "n",
        ys: &["ks_induced", "ks_full"],
        log_y: true,
        fit: false,
    },
    PlotSpec {
        suite: "lap_sllns",
        table: "sup_error",
        title: "Lap-number sup error",
        x: "k",
        ys: &["median_sup_error"],
        log_y: true,
        fit: false,
    },
    PlotSpec {
        suite: "tail_exponent",
        table: "return_time_tail",
        title: "Return-time tail P(r > n)",
        x: "n",
        ys: &["tail_probability"],
        log_y: true,
        fit: true,
    },
    PlotSpec {
        suite: "monotonicity",
        table: "scaled_max_phi_star",
        title: "Median scaled max excursion height",
        x: "n",
        ys: &["median"],
        log_y: true,
        fit: false,
    },
    PlotSpec {
        suite: "excursion_bound",
        table: "rhs_trend",
        title: "Median excursion bound",
        x: "n",
        ys: &["median_rhs"],
        log_y: true,
        fit: false,
    },
    PlotSpec {
        suite: "topology_probe",
        table: "topology",
        title: "Two-sample KS of sup |W_n|",
        x: "n",
        ys: &["sup_ks"],
        log_y: true,
        fit: false,
    },
];

impl PlotSpec {
    pub fn render(&self, table: &Table) -> Option<String> {
        let xs = table.column(self.x)?;
        let mut chart = LineChart::new(
            self.title,
            Axis::log(self.x),
            if self.log_y {
                Axis::log("value")
            } else {
                Axis::linear("value")
            },
        );
        for name in self.ys {
            let ys = table.column(name)?;
            chart.push(Series::points(name, xs.iter().copied().zip(ys).collect()));
        }
        if self.fit {
            let pts = chart.series.first()?.data.clone();
            if let Some(line) = loglog_fit(&pts) {
                chart.push(Series::line("least-squares fit", line));
            }
        }
        Some(chart.render())
    }
}

/// End points of the least-squares line through `(ln x, ln y)`.
fn loglog_fit(pts: &[(f64, f64)]) -> Option<Vec<(f64, f64)>> {
    let logs: Vec<(f64, f64)> = pts
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if logs.len() < 2 {
        return None;
    }
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let at = |lx: f64| (lx.exp(), (my + slope * (lx - mx)).exp());
    Some(vec![at(logs[0].0), at(logs[logs.len() - 1].0)])
}
