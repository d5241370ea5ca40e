//! `paths-demo`: the rescaled paths of one orbit next to a Lévy path.

use intermittency::cadlag::{completed_graph, StepPath};
use intermittency::inducing::{excursions_to_csv, induced_start, scaled_paths, DEFAULT_RETURN_CAP};
use intermittency::maps::DensitySpec;
use intermittency::seeding::{derive_seed, task_rng};
use intermittency::stable::{sample_levy_path, LevyPathConfig};

use crate::calibrate;
use crate::output::OutputDir;
use crate::svg::{Axis, LineChart, Series};
use crate::{Failure, Invocation};

fn csv(path: &StepPath<f64>) -> Result<String, Failure> {
    path.to_csv().map_err(|e| Failure::runtime(e.to_string()))
}

fn graph(path: &StepPath<f64>) -> Vec<(f64, f64)> {
    completed_graph(path).vertices().to_vec()
}

pub fn paths_demo(inv: &Invocation) -> Result<u8, Failure> {
    let cfg = inv.load()?;
    let demo = &cfg.paths_demo;
    let out = OutputDir::create(&cfg.output_dir)?;
    let cal = calibrate::resolve(&cfg.map, &cfg.observable, &cfg.calibration, cfg.seed)?;
    let runtime = |e: intermittency::Error| Failure::runtime(e.to_string());

    let mut rng = task_rng(derive_seed(cfg.seed, "paths-demo"), 0);
    let start = induced_start(
        &cfg.map,
        &DensitySpec::Uniform,
        demo.burn_in,
        DEFAULT_RETURN_CAP,
        &mut rng,
    )
    .map_err(runtime)?;
    let bundle = scaled_paths(
        &cfg.map,
        &cal.observable,
        start.y,
        demo.n,
        demo.horizon,
        DEFAULT_RETURN_CAP,
    )
    .map_err(runtime)?;
    let law = cal
        .limit_laws
        .ok_or_else(|| Failure::runtime("limit law unavailable: phi(0) must be nonzero"))?
        .full;
    let levy_cfg = LevyPathConfig {
        horizon: demo.horizon,
        grid_step: demo.levy_grid_step,
    };
    let mut levy_rng = task_rng(derive_seed(cfg.seed, "paths-demo-levy"), 0);
    let levy = sample_levy_path(&law, &levy_cfg, &mut levy_rng).map_err(runtime)?;

    out.write("w_n.csv", &csv(&bundle.w)?)?;
    out.write("u_n.csv", &csv(&bundle.u)?)?;
    out.write("p_n.csv", &csv(&bundle.p)?)?;
    out.write("levy_path.csv", &csv(&levy)?)?;
    out.write("excursions.csv", &excursions_to_csv(&bundle.excursions))?;
    let summary = serde_json::json!({
        "tool": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "seed": cfg.seed,
        "paths_demo": demo,
        "start": start.y,
        "b_n": bundle.b_n,
        "excursion_bound": bundle.excursion_bound(),
        "calibration": cal,
    });
    let mut json = serde_json::to_string_pretty(&summary).expect("summary serializes");
    json.push('\n');
    out.write("paths_demo.json", &json)?;

    if cfg.plot {
        let mut chart = LineChart::new(
            &format!("W_n and U_n, n = {}", demo.n),
            Axis::linear("t"),
            Axis::linear("value"),
        );
        let n = demo.n as f64;
        chart.bands = bundle
            .return_sums
            .windows(2)
            .step_by(2)
            .map(|w| (w[0] as f64 / n, w[1] as f64 / n))
            .collect();
        chart.push(Series::line("W_n", graph(&bundle.w)));
        chart.push(Series::line("U_n", graph(&bundle.u)));
        out.write("paths.svg", &chart.render())?;
    }
    println!(
        "paths-demo: n = {}, {} excursions written to {}",
        demo.n,
        bundle.excursions.len(),
        cfg.output_dir.display()
    );
    Ok(0)
}
