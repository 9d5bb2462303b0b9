use crate::args::{parse_lambdas, ModelArgs};
use crate::output::{print_summary, write_file, Csv};
use crate::run_config::TaskConfig;
use crate::Ctx;
use clap::Args;
use pppkit_core::capacity::{sum_capacity_bounds, sum_capacity_simulated};
use pppkit_core::error::Result;
use pppkit_core::montecarlo::SimulationConfig;
use pppkit_core::presets::{log_spaced, sumcap_preset, unknown_preset};
use pppkit_core::rng::derive_seed;

#[derive(Args, Debug)]
pub struct SumcapArgs {
    /// Sweep preset (fig4-g1 or fig4-g2)
    #[arg(long)]
    pub preset: Option<String>,

    /// Linear signal-to-noise ratio
    #[arg(long)]
    pub snr: Option<f64>,

    /// Intensities to sweep
    #[arg(long, value_delimiter = ',')]
    pub lambdas: Option<Vec<f64>>,

    /// Samples per sweep point
    #[arg(long)]
    pub num_samples: Option<usize>,

    #[command(flatten)]
    pub model: ModelArgs,
}

pub fn run(ctx: &Ctx, args: &SumcapArgs) -> Result<u8> {
    let (base_model, preset_params) = match &args.preset {
        Some(name) => {
            let p = sumcap_preset(name).ok_or_else(|| unknown_preset(name))?;
            let cfg = pppkit_core::config::ModelConfig {
                pathloss: p.pathloss,
                fading: p.fading,
                intensity: pppkit_core::config::IntensityConfig::Stationary { t_min: 0.0 },
                lambda: 1.0,
                power: 1.0,
            };
            (Some(cfg), Some((p.snr, p.lambdas.clone(), p.num_samples)))
        }
        None => {
            let from_task = ctx.config.as_ref().and_then(|c| match &c.task {
                Some(TaskConfig::Sumcap { snr, lambdas, num_samples }) => {
                    Some((*snr, lambdas.clone(), num_samples.unwrap_or(10_000)))
                }
                _ => None,
            });
            (ctx.config.as_ref().map(|c| c.model), from_task)
        }
    };
    let model_cfg = args.model.resolve(base_model)?;
    let (base_snr, base_lambdas, base_samples) =
        preset_params.unwrap_or((1.0, log_spaced(1.0, 100.0, 10), 10_000));
    let snr = args.snr.unwrap_or(base_snr);
    let lambdas = parse_lambdas(&args.lambdas.clone().unwrap_or(base_lambdas))?;
    let num_samples = args.num_samples.unwrap_or(base_samples);

    let mut csv = Csv::new(&["lambda", "lower", "simulated", "upper", "sim_stderr"]);
    let mut lowers = Vec::new();
    let mut uppers = Vec::new();
    for (idx, &lambda) in lambdas.iter().enumerate() {
        let mut cfg = model_cfg;
        cfg.lambda = lambda;
        let model = cfg.build()?;
        let bounds = sum_capacity_bounds(&model, snr)?;
        let sim_cfg = SimulationConfig::new(derive_seed(ctx.seed, idx as u64), num_samples)?;
        let (sim, stderr) = sum_capacity_simulated(&model, snr, &sim_cfg)?;
        csv.row(&[lambda, bounds.lower, sim, bounds.upper, stderr]);
        lowers.push(bounds.lower);
        uppers.push(bounds.upper);
    }
    let out = ctx.out.clone().unwrap_or_else(|| "pppkit-sumcap".into());
    let csv_path = format!("{out}.csv");
    write_file(&csv_path, &csv.finish())?;

    // growth diagnostic: slopes of the bounds against ln λ and their changes;
    // slopes near a constant (vanishing changes) indicate logarithmic growth
    let mut scaling_path = None;
    if lambdas.len() >= 3 {
        let slopes = |series: &[f64]| -> Vec<f64> {
            series
                .windows(2)
                .zip(lambdas.windows(2))
                .map(|(c, l)| (c[1] - c[0]) / (l[1].ln() - l[0].ln()))
                .collect()
        };
        let upper_slopes = slopes(&uppers);
        let slope_changes: Vec<f64> = upper_slopes.windows(2).map(|w| w[1] - w[0]).collect();
        let diag = serde_json::json!({
            "lambdas": lambdas,
            "lower": lowers,
            "upper": uppers,
            "upper_slopes_vs_log_lambda": upper_slopes,
            "upper_slope_changes": slope_changes,
        });
        let path = format!("{out}-scaling.json");
        write_file(&path, &format!("{}\n", serde_json::to_string_pretty(&diag).unwrap()))?;
        scaling_path = Some(path);
    }

    print_summary(
        ctx.json_summary,
        &serde_json::json!({
            "points": lambdas.len(),
            "snr": snr,
            "csv": csv_path,
            "scaling": scaling_path,
        }),
    );
    Ok(0)
}
