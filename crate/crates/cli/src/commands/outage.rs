use crate::args::{parse_lambdas, ModelArgs};
use crate::output::{print_summary, write_file, Csv};
use crate::run_config::TaskConfig;
use crate::Ctx;
use clap::Args;
use pppkit_core::capacity::{
    outage_capacity_bounds, outage_capacity_simulated_with_stderr, OutageScenario,
};
use pppkit_core::error::Result;
use pppkit_core::montecarlo::SimulationConfig;
use pppkit_core::presets::{log_spaced, outage_preset, unknown_preset};
use pppkit_core::rng::derive_seed;

#[derive(Args, Debug)]
pub struct OutageArgs {
    /// Sweep preset (fig3-g1 or fig3-g2)
    #[arg(long)]
    pub preset: Option<String>,

    /// TX-RX separation
    #[arg(long)]
    pub d: Option<f64>,

    /// Linear signal-to-noise ratio P/N0
    #[arg(long)]
    pub snr: Option<f64>,

    /// Processing gain
    #[arg(long)]
    pub pg: Option<f64>,

    /// Target outage probability
    #[arg(long)]
    pub gamma: Option<f64>,

    /// Intensities to sweep
    #[arg(long, value_delimiter = ',')]
    pub lambdas: Option<Vec<f64>>,

    /// Samples per sweep point
    #[arg(long)]
    pub num_samples: Option<usize>,

    #[command(flatten)]
    pub model: ModelArgs,
}

struct SweepParams {
    d: f64,
    snr: f64,
    pg: f64,
    gamma: f64,
    lambdas: Vec<f64>,
    num_samples: usize,
}

pub fn run(ctx: &Ctx, args: &OutageArgs) -> Result<u8> {
    let (base_model, preset_params) = match &args.preset {
        Some(name) => {
            let p = outage_preset(name).ok_or_else(|| unknown_preset(name))?;
            let cfg = pppkit_core::config::ModelConfig {
                pathloss: p.pathloss,
                fading: p.fading,
                intensity: pppkit_core::config::IntensityConfig::Stationary { t_min: p.eta * p.d },
                lambda: 1.0,
                power: 1.0,
            };
            (
                Some(cfg),
                Some(SweepParams {
                    d: p.d,
                    snr: p.snr,
                    pg: p.pg,
                    gamma: p.gamma,
                    lambdas: p.lambdas.clone(),
                    num_samples: p.num_samples,
                }),
            )
        }
        None => {
            let from_task = ctx.config.as_ref().and_then(|c| match &c.task {
                Some(TaskConfig::Outage { d, snr, pg, gamma, lambdas, num_samples }) => {
                    Some(SweepParams {
                        d: *d,
                        snr: *snr,
                        pg: *pg,
                        gamma: *gamma,
                        lambdas: lambdas.clone(),
                        num_samples: num_samples.unwrap_or(10_000),
                    })
                }
                _ => None,
            });
            (ctx.config.as_ref().map(|c| c.model), from_task)
        }
    };
    let model_cfg = args.model.resolve(base_model)?;
    let defaults = SweepParams {
        d: 1.0,
        snr: 100.0,
        pg: 100.0,
        gamma: 0.1,
        lambdas: log_spaced(1.0, 100.0, 10),
        num_samples: 10_000,
    };
    let base = preset_params.unwrap_or(defaults);
    let params = SweepParams {
        d: args.d.unwrap_or(base.d),
        snr: args.snr.unwrap_or(base.snr),
        pg: args.pg.unwrap_or(base.pg),
        gamma: args.gamma.unwrap_or(base.gamma),
        lambdas: parse_lambdas(&args.lambdas.clone().unwrap_or(base.lambdas))?,
        num_samples: args.num_samples.unwrap_or(base.num_samples),
    };

    let mut csv = Csv::new(&["lambda", "lower", "simulated", "upper", "sim_stderr"]);
    let mut rows = Vec::new();
    for (idx, &lambda) in params.lambdas.iter().enumerate() {
        let mut cfg = model_cfg;
        cfg.lambda = lambda;
        let interferers = cfg.build()?;
        let scn = OutageScenario::new(
            params.d,
            params.snr,
            params.pg,
            params.gamma,
            cfg.fading.build()?,
            interferers,
        )?;
        let bounds = outage_capacity_bounds(&scn)?;
        let sim_cfg = SimulationConfig::new(derive_seed(ctx.seed, idx as u64), params.num_samples)?;
        let (sim, stderr) = outage_capacity_simulated_with_stderr(&scn, &sim_cfg)?;
        csv.row(&[lambda, bounds.lower, sim, bounds.upper, stderr]);
        rows.push((lambda, bounds, sim, stderr));
    }
    let out = ctx.out.clone().unwrap_or_else(|| "pppkit-outage".into());
    let csv_path = format!("{out}.csv");
    write_file(&csv_path, &csv.finish())?;

    // Θ(1/λ) products over the top half of the sweep
    let mut scaling_path = None;
    if rows.len() >= 3 {
        let top = &rows[rows.len() / 2..];
        let products: Vec<serde_json::Value> = rows
            .iter()
            .map(|(l, b, sim, _)| {
                serde_json::json!({
                    "lambda": l,
                    "lower": b.lower,
                    "upper": b.upper,
                    "simulated": sim,
                    "lower_product": l * b.lower,
                    "upper_product": l * b.upper,
                })
            })
            .collect();
        let ratio = |sel: fn(&(f64, pppkit_core::capacity::CapacityBounds, f64, f64)) -> f64| {
            let max = top.iter().map(sel).fold(f64::NEG_INFINITY, f64::max);
            let min = top.iter().map(sel).fold(f64::INFINITY, f64::min);
            if min > 0.0 {
                max / min
            } else {
                f64::INFINITY
            }
        };
        let diag = serde_json::json!({
            "rows": products,
            "lower_ratio": ratio(|r| r.0 * r.1.lower),
            "upper_ratio": ratio(|r| r.0 * r.1.upper),
        });
        let path = format!("{out}-scaling.json");
        write_file(&path, &format!("{}\n", serde_json::to_string_pretty(&diag).unwrap()))?;
        scaling_path = Some(path);
    }

    print_summary(
        ctx.json_summary,
        &serde_json::json!({
            "points": rows.len(),
            "gamma": params.gamma,
            "csv": csv_path,
            "scaling": scaling_path,
        }),
    );
    Ok(0)
}
