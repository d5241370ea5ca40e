//! `run`: executes the selected suites and writes the report.

use intermittency::diagnostics::{
    excursion_bound_check, lap_sllns, monotonicity_suite, stable_consistency_suite,
    tail_exponent_suite, topology_probe, wip_marginal_suite, SuiteReport,
};
use intermittency::seeding::derive_seed;
use intermittency::{Error, Result};
use serde::Serialize;

use crate::calibrate::{self, Resolved};
use crate::config::{RunConfig, SuitesConfig};
use crate::output::{OutputDir, PLOTS};
use crate::{Failure, Invocation};

/// Everything in `report.json`. Output location and plotting are left out so
/// that reruns into another directory produce identical bytes.
#[derive(Serialize)]
struct Report<'a> {
    tool: &'static str,
    version: &'static str,
    seed: u64,
    config: Echo<'a>,
    calibration: &'a Resolved,
    suites: Vec<SuiteOutcome>,
    passed: bool,
}

#[derive(Serialize)]
struct Echo<'a> {
    map: &'a intermittency::maps::MapSpec<f64>,
    observable: &'a intermittency::maps::ObservableSpec,
    calibration: &'a crate::config::CalibrationConfig,
    suites: &'a SuitesConfig,
}

#[derive(Serialize)]
struct SuiteOutcome {
    name: &'static str,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<SuiteReport>,
}

type Job<'a> = (&'static str, Box<dyn FnOnce() -> Result<SuiteReport> + Send + 'a>);

fn jobs<'a>(cfg: &'a RunConfig, cal: &'a Resolved) -> Vec<Job<'a>> {
    let spec = &cfg.map;
    let obs = &cal.observable;
    let s = &cfg.suites;
    let seed = |name: &str| derive_seed(cfg.seed, name);
    let full = cal.limit_laws.map(|l| l.full);
    let law = move || {
        full.ok_or_else(|| {
            Error::Hypothesis("limit law unavailable: phi(0) must be nonzero".into())
        })
    };
    let mut out: Vec<Job<'a>> = Vec::new();
    if let Some(c) = &s.stable_consistency {
        let sd = seed("stable_consistency");
        out.push((
            "stable_consistency",
            Box::new(move || stable_consistency_suite(&law()?, c, sd)),
        ));
    }
    if let Some(c) = &s.tail_exponent {
        let sd = seed("tail_exponent");
        out.push(("tail_exponent", Box::new(move || tail_exponent_suite(spec, c, sd))));
    }
    if let Some(c) = &s.lap_sllns {
        let sd = seed("lap_sllns");
        out.push(("lap_sllns", Box::new(move || lap_sllns(spec, c, cal.mu_y, sd))));
    }
    if let Some(c) = &s.monotonicity {
        let sd = seed("monotonicity");
        out.push((
            "monotonicity",
            Box::new(move || monotonicity_suite(spec, obs, c, sd)),
        ));
    }
    if let Some(c) = &s.excursion_bound {
        let sd = seed("excursion_bound");
        out.push((
            "excursion_bound",
            Box::new(move || excursion_bound_check(spec, obs, c, sd)),
        ));
    }
    if let Some(c) = &s.wip_marginal {
        let sd = seed("wip_marginal");
        out.push((
            "wip_marginal",
            Box::new(move || wip_marginal_suite(spec, obs, c, cal.mu_y, cal.h_half, sd)),
        ));
    }
    if let Some(c) = &s.topology_probe {
        let sd = seed("topology_probe");
        out.push((
            "topology_probe",
            Box::new(move || topology_probe(spec, obs, c, &law()?, sd)),
        ));
    }
    out
}

pub fn run(inv: &Invocation) -> std::result::Result<u8, Failure> {
    let cfg = inv.load()?;
    if cfg.suites.is_empty() {
        return Err(Failure::input(format!(
            "{}: `suites` selects no suite",
            inv.config.display()
        )));
    }
    let out = OutputDir::create(&cfg.output_dir)?;
    let cal = calibrate::resolve(&cfg.map, &cfg.observable, &cfg.calibration, cfg.seed)?;

    // Suites are independent and seeded by name, so they run side by side;
    // files are written afterwards from this thread only.
    let results: Vec<(&'static str, Result<SuiteReport>)> = std::thread::scope(|scope| {
        let handles: Vec<_> = jobs(&cfg, &cal)
            .into_iter()
            .map(|(name, job)| (name, scope.spawn(job)))
            .collect();
        handles
            .into_iter()
            .map(|(name, h)| (name, h.join().expect("suite thread panicked")))
            .collect()
    });

    let mut suites = Vec::new();
    for (name, result) in results {
        match result {
            Ok(report) => {
                write_suite(&out, &report, cfg.plot)?;
                let passed = report.passed();
                for m in report.failures() {
                    eprintln!("{name}: {} = {} failed", m.name, m.value);
                }
                suites.push(SuiteOutcome {
                    name,
                    passed,
                    error: None,
                    report: Some(report),
                });
            }
            Err(e) => {
                eprintln!("{name}: {e}");
                suites.push(SuiteOutcome {
                    name,
                    passed: false,
                    error: Some(e.to_string()),
                    report: None,
                });
            }
        }
    }
    let passed = suites.iter().all(|s| s.passed);
    let report = Report {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        seed: cfg.seed,
        config: Echo {
            map: &cfg.map,
            observable: &cfg.observable,
            calibration: &cfg.calibration,
            suites: &cfg.suites,
        },
        calibration: &cal,
        suites,
        passed,
    };
    let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
    json.push('\n');
    out.write("report.json", &json)?;
    for s in &report.suites {
        println!("{}: {}", s.name, if s.passed { "pass" } else { "FAIL" });
    }
    Ok(if passed { 0 } else { 1 })
}

fn write_suite(out: &OutputDir, report: &SuiteReport, plot: bool) -> std::result::Result<(), Failure> {
    let name = &report.suite_name;
    out.write(&format!("{name}_metrics.csv"), &report.metrics_csv())?;
    for table in &report.tables {
        out.write(&format!("{name}_{}.csv", table.name), &table.to_csv())?;
    }
    if plot {
        for spec in PLOTS.iter().filter(|p| p.suite == name.as_str()) {
            if let Some(table) = report.table(spec.table) {
                if let Some(svg) = spec.render(table) {
                    out.write(&format!("{name}_{}.svg", spec.table), &svg)?;
                }
            }
        }
    }
    Ok(())
}

