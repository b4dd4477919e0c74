//! `triage train`: baseline (identity-T) and noise-corrected arms over
//! repeated seeds, reporting AUC against true and noisy labels.

use crate::commands::Context;
use crate::{config, manifest, CliError, CliResult};
use clap::Args;
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::fs::File;
use std::path::PathBuf;
use triage_core::noise_correction::{
    estimate_transition, predict, train, LabeledFeatureSet, PredictMode, TrainConfig,
    TransitionMatrix,
};
use triage_core::roc_stats::{auc, ScoredSample};
use triage_core::seed::derive_seed;
use triage_core::io as tio;

#[derive(Debug, Args)]
pub struct TrainArgs {
    /// JSON config file; CLI flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Input feature CSV (`id,feat_0..,true_label,noisy_label`).
    #[arg(long)]
    features: Option<PathBuf>,

    /// Transition matrix JSON (row-major 2x2). When omitted, estimated
    /// from the confusion of noisy vs true labels in the input.
    #[arg(long)]
    t_matrix: Option<PathBuf>,

    /// Number of independently seeded training repeats per arm.
    #[arg(long)]
    repeats: Option<usize>,

    #[arg(long)]
    lr: Option<f64>,

    #[arg(long)]
    max_epochs: Option<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrainParams {
    pub features: Option<PathBuf>,
    pub t_matrix: Option<PathBuf>,
    pub repeats: usize,
    pub lr: f64,
    pub max_epochs: usize,
}

impl Default for TrainParams {
    fn default() -> Self {
        Self {
            features: None,
            t_matrix: None,
            repeats: 5,
            lr: 0.5,
            max_epochs: 200,
        }
    }
}

#[derive(Debug, Serialize)]
struct ArmMetrics {
    arm: String,
    seed: u64,
    auc_vs_true: Option<f64>,
    auc_vs_noisy: f64,
    model_file: String,
}

fn auc_of(scores: &[f64], labels: &[u8]) -> CliResult<f64> {
    let samples: Vec<ScoredSample<f64>> = scores
        .iter()
        .zip(labels)
        .map(|(&s, &l)| ScoredSample::new(s, l))
        .collect();
    Ok(auc(&samples)?)
}

pub fn run(ctx: &Context, args: TrainArgs) -> CliResult<()> {
    let mut params: TrainParams = config::load(args.config.as_deref())?;
    params.features = args.features.or(params.features);
    params.t_matrix = args.t_matrix.or(params.t_matrix);
    params.repeats = config::merge(params.repeats, args.repeats);
    params.lr = config::merge(params.lr, args.lr);
    params.max_epochs = config::merge(params.max_epochs, args.max_epochs);

    let features_path = params
        .features
        .clone()
        .ok_or_else(|| CliError::Validation("--features is required".into()))?;
    let data: LabeledFeatureSet<f64> = tio::read_features_csv(
        File::open(&features_path)
            .map_err(|e| CliError::Data(format!("{}: {e}", features_path.display())))?,
    )?;

    let t = match &params.t_matrix {
        Some(path) => tio::read_transition_json(path)?,
        None => {
            let truth = data.true_labels().ok_or_else(|| {
                CliError::Data(
                    "no --t-matrix given and the feature file has no true labels to \
                     estimate one from"
                        .into(),
                )
            })?;
            let mut confusion = [[0u64; 2]; 2];
            for (&tl, &nl) in truth.iter().zip(data.noisy_labels()) {
                confusion[nl as usize][tl as usize] += 1;
            }
            estimate_transition(confusion)?
        }
    };

    ctx.ensure_out_dir()?;
    let identity = TransitionMatrix::identity();
    let mut metrics = Vec::new();
    for r in 0..params.repeats {
        let cfg = TrainConfig {
            learning_rate: params.lr,
            max_epochs: params.max_epochs,
            seed: derive_seed(ctx.seed, "train/run", r as u64),
            ..Default::default()
        };
        for (arm, arm_t) in [("baseline", &identity), ("corrected", &t)] {
            let model = train(&data, arm_t, &cfg)?;
            // clean-mode abnormal probability as the score
            let scores: Vec<f64> = predict(&model, &data, PredictMode::Clean, &identity)
                .iter()
                .map(|p| p[1])
                .collect();
            let auc_vs_noisy = auc_of(&scores, data.noisy_labels())?;
            let auc_vs_true = match data.true_labels() {
                Some(truth) => Some(auc_of(&scores, truth)?),
                None => None,
            };
            let model_file = format!("model_{arm}_seed{r}.json");
            std::fs::write(
                ctx.out_dir.join(&model_file),
                serde_json::to_string_pretty(&model)? + "\n",
            )?;
            metrics.push(ArmMetrics {
                arm: arm.into(),
                seed: cfg.seed,
                auc_vs_true,
                auc_vs_noisy,
                model_file,
            });
        }
    }

    let summary = |arm: &str, pick: &dyn Fn(&ArmMetrics) -> Option<f64>| {
        let vals: Vec<f64> = metrics
            .iter()
            .filter(|m| m.arm == arm)
            .filter_map(pick)
            .collect();
        if vals.is_empty() {
            return json!(null);
        }
        let n = vals.len() as f64;
        let mean = vals.iter().sum::<f64>() / n;
        let sd = (vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt();
        json!({ "per_seed": vals, "mean": mean, "sd": sd })
    };
    let report = json!({
        "transition": t.rows(),
        "repeats": params.repeats,
        "runs": metrics,
        "auc_vs_true": {
            "baseline": summary("baseline", &|m| m.auc_vs_true),
            "corrected": summary("corrected", &|m| m.auc_vs_true),
        },
        "auc_vs_noisy": {
            "baseline": summary("baseline", &|m| Some(m.auc_vs_noisy)),
            "corrected": summary("corrected", &|m| Some(m.auc_vs_noisy)),
        },
    });
    std::fs::write(
        ctx.out_dir.join("metrics.json"),
        serde_json::to_string_pretty(&report)? + "\n",
    )?;

    manifest::write(&ctx.out_dir, "train", ctx.seed, &params, &["metrics.json"])?;
    println!(
        "trained {} repeats x 2 arms; metrics in {}",
        params.repeats,
        ctx.out_dir.join("metrics.json").display()
    );
    Ok(())
}
