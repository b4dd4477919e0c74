//! `triage gen`: synthetic cohort + feature files.

use crate::commands::Context;
use crate::{config, manifest, CliError, CliResult};
use clap::Args;
use serde::{Deserialize, Serialize};
use std::fs::File;
use std::path::PathBuf;
use triage_core::cohort_gen::{generate_features, CohortParams, FeatureParams};
use triage_core::seed::derive_seed;
use triage_core::io as tio;

#[derive(Debug, Args)]
pub struct GenArgs {
    /// JSON config file; CLI flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Cohort preset: `kch2018` or `gstt2018`.
    #[arg(long)]
    preset: Option<String>,

    #[arg(long)]
    n: Option<usize>,

    #[arg(long)]
    abnormal_frac: Option<f64>,

    #[arg(long)]
    days: Option<u32>,

    #[arg(long)]
    sensitivity: Option<f64>,

    #[arg(long)]
    specificity: Option<f64>,

    /// Per-dimension separation of the informative feature dimensions.
    #[arg(long)]
    feature_separation: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GenParams {
    pub preset: Option<String>,
    pub n: Option<usize>,
    pub abnormal_frac: Option<f64>,
    pub days: Option<u32>,
    pub sensitivity: Option<f64>,
    pub specificity: Option<f64>,
    pub feature_separation: f64,
}

impl Default for GenParams {
    fn default() -> Self {
        Self {
            preset: None,
            n: None,
            abnormal_frac: None,
            days: None,
            sensitivity: None,
            specificity: None,
            feature_separation: 1.5,
        }
    }
}

pub fn run(ctx: &Context, args: GenArgs) -> CliResult<()> {
    let mut params: GenParams = config::load(args.config.as_deref())?;
    params.preset = args.preset.or(params.preset);
    params.n = args.n.or(params.n);
    params.abnormal_frac = args.abnormal_frac.or(params.abnormal_frac);
    params.days = args.days.or(params.days);
    params.sensitivity = args.sensitivity.or(params.sensitivity);
    params.specificity = args.specificity.or(params.specificity);
    params.feature_separation = config::merge(params.feature_separation, args.feature_separation);

    let preset_name = params.preset.clone().unwrap_or_else(|| "kch2018".into());
    let mut cohort_params = CohortParams::preset(&preset_name, ctx.seed)
        .ok_or_else(|| CliError::Validation(format!("unknown preset {preset_name:?}")))?;
    if let Some(n) = params.n {
        cohort_params.n_exams = n;
    }
    if let Some(f) = params.abnormal_frac {
        cohort_params.abnormal_fraction = f;
    }
    if let Some(d) = params.days {
        cohort_params.days = d;
    }
    if let Some(s) = params.sensitivity {
        cohort_params.classifier_sensitivity = s;
    }
    if let Some(s) = params.specificity {
        cohort_params.classifier_specificity = s;
    }
    cohort_params.seed = derive_seed(ctx.seed, "gen/cohort", 0);

    let exams = triage_core::cohort_gen::generate_cohort(&cohort_params)?;

    // features aligned row-for-row with the cohort, sharing its labels
    let true_labels: Vec<u8> = exams.iter().map(|e| e.true_label.unwrap()).collect();
    let noisy_labels: Vec<u8> = exams.iter().map(|e| e.noisy_label).collect();
    let feature_params = FeatureParams::standard(
        params.feature_separation,
        derive_seed(ctx.seed, "gen/features", 0),
    );
    let mut features = generate_features(&feature_params, &true_labels)?;
    features.set_noisy_labels(noisy_labels)?;

    ctx.ensure_out_dir()?;
    let cohort_path = ctx.out_dir.join("cohort.csv");
    tio::write_cohort_csv(File::create(&cohort_path)?, &exams)?;
    let features_path = ctx.out_dir.join("features.csv");
    tio::write_features_csv(File::create(&features_path)?, &features)?;
    let t_path = ctx.out_dir.join("transition.json");
    tio::write_transition_json(&t_path, &cohort_params.label_noise_t)?;

    #[derive(Serialize)]
    struct Effective<'a> {
        gen: &'a GenParams,
        cohort: &'a CohortParams,
        features: &'a FeatureParams,
    }
    manifest::write(
        &ctx.out_dir,
        "gen",
        ctx.seed,
        &Effective {
            gen: &params,
            cohort: &cohort_params,
            features: &feature_params,
        },
        &["cohort.csv", "features.csv", "transition.json"],
    )?;
    println!(
        "wrote {} exams to {}",
        exams.len(),
        ctx.out_dir.display()
    );
    Ok(())
}
