use crate::args::{parse_lambdas, ModelArgs};
use crate::output::{print_summary, write_file, Csv};
use crate::run_config::{GridConfig, TaskConfig};
use crate::Ctx;
use clap::Args;
use pppkit_core::error::Result;
use pppkit_core::gaussian_bounds::{cdf_bounds, default_grid};
use pppkit_core::presets::{bounds_preset, unknown_preset};

#[derive(Args, Debug)]
pub struct BoundsArgs {
    /// Figure preset (fig1-g1, fig1-g2, fig1-*-nofading, appendix-d-g1, appendix-d-g2)
    #[arg(long)]
    pub preset: Option<String>,

    /// Intensities to tabulate (overrides preset/config)
    #[arg(long, value_delimiter = ',')]
    pub lambdas: Option<Vec<f64>>,

    /// Grid as min,max,points (default -6,6,481)
    #[arg(long, value_delimiter = ',', num_args = 3)]
    pub grid: Option<Vec<f64>>,

    #[command(flatten)]
    pub model: ModelArgs,
}

pub fn run(ctx: &Ctx, args: &BoundsArgs) -> Result<u8> {
    let (base_model, preset_lambdas) = match &args.preset {
        Some(name) => {
            let p = bounds_preset(name).ok_or_else(|| unknown_preset(name))?;
            let cfg = pppkit_core::config::ModelConfig {
                pathloss: p.pathloss,
                fading: p.fading,
                intensity: p.intensity,
                lambda: 1.0,
                power: 1.0,
            };
            (Some(cfg), Some(p.lambdas))
        }
        None => (ctx.config.as_ref().map(|c| c.model), None),
    };
    let model_cfg = args.model.resolve(base_model)?;
    let config_lambdas = ctx.config.as_ref().and_then(|c| match &c.task {
        Some(TaskConfig::Bounds { lambdas, .. }) => Some(lambdas.clone()),
        _ => None,
    });
    let lambdas = parse_lambdas(
        &args
            .lambdas
            .clone()
            .or(preset_lambdas)
            .or(config_lambdas)
            .unwrap_or_else(|| vec![model_cfg.lambda]),
    )?;
    let grid = match &args.grid {
        Some(v) => GridConfig { min: v[0], max: v[1], points: v[2] as usize }.points_vec()?,
        None => match ctx.config.as_ref().and_then(|c| match &c.task {
            Some(TaskConfig::Bounds { grid, .. }) => *grid,
            _ => None,
        }) {
            Some(g) => g.points_vec()?,
            None => default_grid(),
        },
    };

    let out = ctx.out.clone().unwrap_or_else(|| "pppkit-bounds".into());
    let mut files = Vec::new();
    for &lambda in &lambdas {
        let mut cfg = model_cfg;
        cfg.lambda = lambda;
        let model = cfg.build()?;
        let curve = cdf_bounds(&model, &grid)?;
        let mut csv = Csv::new(&["x", "lower", "gaussian", "upper"]);
        for i in 0..curve.len() {
            csv.row(&[curve.xs[i], curve.lower[i], curve.gaussian[i], curve.upper[i]]);
        }
        let path = format!("{out}-lambda-{lambda}.csv");
        write_file(&path, &csv.finish())?;
        files.push(path);
    }
    print_summary(
        ctx.json_summary,
        &serde_json::json!({
            "lambdas": lambdas,
            "grid_points": grid.len(),
            "files": files,
        }),
    );
    Ok(0)
}
