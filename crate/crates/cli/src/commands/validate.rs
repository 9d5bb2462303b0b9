use crate::output::print_summary;
use crate::run_config::RunConfig;
use crate::Ctx;
use clap::Args;
use pppkit_core::config::ModelConfig;
use pppkit_core::error::{Error, Result};
use pppkit_core::gaussian_bounds::campbell_moments;
use pppkit_core::montecarlo::resolve_window;

#[derive(Args, Debug)]
pub struct ValidateArgs {
    /// Configuration file to validate (also honored via the global --config)
    #[arg(long = "file")]
    pub file: Option<String>,
}

pub fn run(ctx: &Ctx, args: &ValidateArgs) -> Result<u8> {
    let model_cfg = match (&args.file, &ctx.config) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {path}: {e}")))?;
            // a file may hold a full run config or a bare model section
            match RunConfig::from_json(&text) {
                Ok(rc) => rc.model,
                Err(run_err) => ModelConfig::from_json(&text).map_err(|model_err| {
                    Error::Config(format!(
                        "not a run config ({run_err}) nor a model config ({model_err})"
                    ))
                })?,
            }
        }
        (None, Some(rc)) => rc.model,
        (None, None) => {
            return Err(Error::Config("validate needs --file or --config".into()));
        }
    };
    let model = model_cfg.build()?;
    let consts = campbell_moments(&model);
    let window = resolve_window(&model, 1e-4)?;
    print_summary(
        ctx.json_summary,
        &serde_json::json!({
            "valid": true,
            "lambda": model.lambda(),
            "power": model.power(),
            "mean": consts.mean,
            "variance": consts.variance,
            "i1": consts.i1,
            "i2": consts.i2,
            "i3": consts.i3,
            "path_constant": consts.path_constant,
            "fading_ratio": consts.fading_ratio,
            "envelope_c0": consts.c(0.0),
            "truncation_radius": window.r_mean,
            "point_window_radius": window.r_points,
        }),
    );
    Ok(0)
}
