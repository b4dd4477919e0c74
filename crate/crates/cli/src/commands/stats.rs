//! `triage stats`: AUC / DeLong / Fleiss' kappa from score and rating files.

use crate::commands::Context;
use crate::{config, manifest, CliError, CliResult};
use clap::Args;
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::fs::File;
use std::path::PathBuf;
use triage_core::io as tio;
use triage_core::roc_stats::{
    auc, delong_test, fleiss_kappa, operating_point, roc_curve, OperatingStrategy,
    RatingsTable, ScoredSample,
};

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// JSON config file; CLI flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Scores CSV (`id,score_a[,score_b],label`).
    #[arg(long)]
    scores: Option<PathBuf>,

    /// Ratings CSV (`id,cat_0..cat_{k-1}`) for Fleiss' kappa.
    #[arg(long)]
    ratings: Option<PathBuf>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StatsParams {
    pub scores: Option<PathBuf>,
    pub ratings: Option<PathBuf>,
}

pub fn run(ctx: &Context, args: StatsArgs) -> CliResult<()> {
    let mut params: StatsParams = config::load(args.config.as_deref())?;
    params.scores = args.scores.or(params.scores);
    params.ratings = args.ratings.or(params.ratings);

    if params.scores.is_none() && params.ratings.is_none() {
        return Err(CliError::Validation(
            "at least one of --scores or --ratings is required".into(),
        ));
    }

    let mut report = serde_json::Map::new();

    if let Some(path) = &params.scores {
        let scores = tio::read_scores_csv(
            File::open(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?,
        )?;
        let samples_a: Vec<ScoredSample<f64>> = scores
            .score_a
            .iter()
            .zip(&scores.labels)
            .map(|(&s, &l)| ScoredSample::new(s, l))
            .collect();
        let auc_a = auc(&samples_a)?;
        let curve = roc_curve(&samples_a)?;
        let youden = operating_point(&curve, OperatingStrategy::Youden)?;
        report.insert("auc_a".into(), json!(auc_a));
        report.insert("operating_point_a".into(), json!(youden));

        if let Some(score_b) = &scores.score_b {
            let samples_b: Vec<ScoredSample<f64>> = score_b
                .iter()
                .zip(&scores.labels)
                .map(|(&s, &l)| ScoredSample::new(s, l))
                .collect();
            report.insert("auc_b".into(), json!(auc(&samples_b)?));
            let delong = delong_test(&scores.score_a, score_b, &scores.labels)?;
            report.insert("delong".into(), json!(delong));
        }
    }

    if let Some(path) = &params.ratings {
        let rows = tio::read_ratings_csv(
            File::open(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?,
        )?;
        let raters = rows
            .first()
            .map(|r| r.iter().sum::<u32>())
            .ok_or_else(|| CliError::Data("ratings file is empty".into()))?;
        let table = RatingsTable::new(rows, raters)?;
        report.insert("fleiss_kappa".into(), json!(fleiss_kappa(&table)?));
        report.insert("raters_per_subject".into(), json!(raters));
        report.insert("n_subjects".into(), json!(table.n_subjects()));
    }

    let text = serde_json::to_string_pretty(&report)? + "\n";
    print!("{text}");
    ctx.ensure_out_dir()?;
    std::fs::write(ctx.out_dir.join("stats.json"), &text)?;
    manifest::write(&ctx.out_dir, "stats", ctx.seed, &params, &["stats.json"])?;
    Ok(())
}
