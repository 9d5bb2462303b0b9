use crate::args::ModelArgs;
use crate::output::{print_summary, write_file, Csv};
use crate::run_config::TaskConfig;
use crate::Ctx;
use clap::Args;
use pppkit_core::error::Result;
use pppkit_core::gaussian_bounds::{cdf_bounds, default_grid};
use pppkit_core::montecarlo::{
    centered_normalized_cdf, dkw_slack, envelope_containment, ks_distance, sample_interference,
    SimulationConfig,
};
use pppkit_core::presets::{simulate_preset, unknown_preset};
use pppkit_core::special::normal_cdf;

#[derive(Args, Debug)]
pub struct SimulateArgs {
    /// Simulation preset (fig2, fig2-{g1,g2}-a{3,5}[-m1], sim-lambda10)
    #[arg(long)]
    pub preset: Option<String>,

    /// Number of interference realizations
    #[arg(long)]
    pub num_samples: Option<usize>,

    /// Mean-tail truncation tolerance of the simulation window
    #[arg(long)]
    pub tail_tolerance: Option<f64>,

    /// Confidence parameter δ of the distribution-free containment band
    #[arg(long, default_value_t = 0.01)]
    pub delta: f64,

    #[command(flatten)]
    pub model: ModelArgs,
}

pub fn run(ctx: &Ctx, args: &SimulateArgs) -> Result<u8> {
    let (base_model, preset_samples) = match &args.preset {
        Some(name) => {
            let p = simulate_preset(name).ok_or_else(|| unknown_preset(name))?;
            let cfg = pppkit_core::config::ModelConfig {
                pathloss: p.pathloss,
                fading: p.fading,
                intensity: p.intensity,
                lambda: p.lambda,
                power: 1.0,
            };
            (Some(cfg), Some(p.num_samples))
        }
        None => (ctx.config.as_ref().map(|c| c.model), None),
    };
    let model_cfg = args.model.resolve(base_model)?;
    let model = model_cfg.build()?;
    let (config_samples, config_tail) = match ctx.config.as_ref().and_then(|c| c.task.as_ref()) {
        Some(TaskConfig::Simulate { num_samples, tail_tolerance }) => (*num_samples, *tail_tolerance),
        _ => (None, None),
    };
    let num_samples = args.num_samples.or(preset_samples).or(config_samples).unwrap_or(10_000);
    let mut sim_cfg = SimulationConfig::new(ctx.seed, num_samples)?;
    if let Some(t) = args.tail_tolerance.or(config_tail) {
        sim_cfg = sim_cfg.with_tail_tolerance(t)?;
    }

    let samples = sample_interference(&model, &sim_cfg)?;
    let n = samples.len();
    let sample_mean = samples.iter().sum::<f64>() / n as f64;
    let sample_var =
        samples.iter().map(|s| (s - sample_mean).powi(2)).sum::<f64>() / (n as f64 - 1.0).max(1.0);
    let cdf = centered_normalized_cdf(&samples, model.mean(), model.std())?;
    let ks = ks_distance(&cdf, normal_cdf);
    let grid = default_grid();
    let curve = cdf_bounds(&model, &grid)?;
    let slack = dkw_slack(n, args.delta)?;
    let containment = envelope_containment(&cdf, &curve, slack);

    let mut csv = Csv::new(&["x", "empirical", "lower", "gaussian", "upper"]);
    for i in 0..curve.len() {
        csv.row(&[
            curve.xs[i],
            cdf.eval(curve.xs[i]),
            curve.lower[i],
            curve.gaussian[i],
            curve.upper[i],
        ]);
    }
    let out = ctx.out.clone().unwrap_or_else(|| "pppkit-simulate".into());
    let csv_path = format!("{out}.csv");
    write_file(&csv_path, &csv.finish())?;

    let summary = serde_json::json!({
        "ks": ks,
        "containment": containment.fraction,
        "mean": sample_mean,
        "var": sample_var,
        "n": n,
    });
    let json_path = format!("{out}.json");
    write_file(&json_path, &format!("{}\n", serde_json::to_string_pretty(&summary).unwrap()))?;
    print_summary(ctx.json_summary, &summary);
    Ok(0)
}
