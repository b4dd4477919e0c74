//! CSV and JSON schemas for the command-line workflow.
//!
//! All CSVs are UTF-8 with a mandatory header row and LF line endings.
//! Schemas:
//! - `cohort.csv`: `id,site,acquisition_day,historical_report_day,true_label,noisy_label,predicted_class,age`
//! - `features.csv`: `id,feat_0..feat_{d-1},true_label,noisy_label` (true_label may be empty)
//! - `scores.csv`: `id,score_a[,score_b],label`
//! - `ratings.csv`: `id,cat_0..cat_{k-1}` (per-subject rater counts)
//! - `delays.csv`: `id,policy,report_day,delay`
//! - `null_hist.csv`: `run,mean_abnormal_delay,mean_normal_delay`
//!
//! Transition matrices are JSON 2x2 arrays in row-major order with the
//! `[j][i] = p(noisy = j | true = i)` convention.

use crate::error::{Error, Result};
use crate::noise_correction::{LabeledFeatureSet, TransitionMatrix};
use crate::scalar::Real;
use crate::triage_sim::{Exam, NullDistribution};
use std::io::{Read, Write};
use std::path::Path;

fn parse_u32(field: &str, name: &str) -> Result<u32> {
    field
        .trim()
        .parse()
        .map_err(|_| Error::Schema(format!("bad {name}: {field:?}")))
}

fn parse_label(field: &str, name: &str) -> Result<u8> {
    match field.trim() {
        "0" => Ok(0),
        "1" => Ok(1),
        other => Err(Error::Schema(format!("bad {name}: {other:?}, expected 0 or 1"))),
    }
}

fn parse_opt_label(field: &str, name: &str) -> Result<Option<u8>> {
    if field.trim().is_empty() {
        Ok(None)
    } else {
        parse_label(field, name).map(Some)
    }
}

fn parse_f64(field: &str, name: &str) -> Result<f64> {
    field
        .trim()
        .parse()
        .map_err(|_| Error::Schema(format!("bad {name}: {field:?}")))
}

const COHORT_HEADER: [&str; 8] = [
    "id",
    "site",
    "acquisition_day",
    "historical_report_day",
    "true_label",
    "noisy_label",
    "predicted_class",
    "age",
];

pub fn write_cohort_csv<W: Write>(writer: W, exams: &[Exam]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(COHORT_HEADER)?;
    for e in exams {
        w.write_record([
            e.id.as_str(),
            e.site.as_str(),
            &e.acquisition_day.to_string(),
            &e.historical_report_day.to_string(),
            &e.true_label.map(|l| l.to_string()).unwrap_or_default(),
            &e.noisy_label.to_string(),
            &e.predicted_class.to_string(),
            &e.age_years.map(|a| format!("{a:.2}")).unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_cohort_csv<R: Read>(reader: R) -> Result<Vec<Exam>> {
    let mut r = csv::Reader::from_reader(reader);
    let headers = r.headers()?.clone();
    if headers.iter().ne(COHORT_HEADER) {
        return Err(Error::Schema(format!(
            "cohort header mismatch: expected {COHORT_HEADER:?}, got {:?}",
            headers.iter().collect::<Vec<_>>()
        )));
    }
    let mut exams = Vec::new();
    for record in r.records() {
        let rec = record?;
        let exam = Exam {
            id: rec[0].to_string(),
            site: rec[1].to_string(),
            acquisition_day: parse_u32(&rec[2], "acquisition_day")?,
            historical_report_day: parse_u32(&rec[3], "historical_report_day")?,
            true_label: parse_opt_label(&rec[4], "true_label")?,
            noisy_label: parse_label(&rec[5], "noisy_label")?,
            predicted_class: parse_label(&rec[6], "predicted_class")?,
            age_years: if rec[7].trim().is_empty() {
                None
            } else {
                Some(parse_f64(&rec[7], "age")?)
            },
        };
        exam.validate()?;
        exams.push(exam);
    }
    Ok(exams)
}

pub fn write_features_csv<W: Write, S: Real>(
    writer: W,
    set: &LabeledFeatureSet<S>,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let mut header = vec!["id".to_string()];
    header.extend((0..set.dim()).map(|k| format!("feat_{k}")));
    header.push("true_label".into());
    header.push("noisy_label".into());
    w.write_record(&header)?;
    for i in 0..set.len() {
        let mut rec = vec![format!("row-{i:06}")];
        rec.extend(set.row(i).iter().map(|v| {
            // full round-trip precision
            format!("{:?}", v.to_f64().unwrap())
        }));
        rec.push(
            set.true_labels()
                .map(|t| t[i].to_string())
                .unwrap_or_default(),
        );
        rec.push(set.noisy_labels()[i].to_string());
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_features_csv<R: Read, S: Real>(reader: R) -> Result<LabeledFeatureSet<S>> {
    let mut r = csv::Reader::from_reader(reader);
    let headers = r.headers()?.clone();
    let cols: Vec<&str> = headers.iter().collect();
    if cols.len() < 4 || cols[0] != "id" {
        return Err(Error::Schema(
            "features header must be id,feat_0..,true_label,noisy_label".into(),
        ));
    }
    let d = cols.len() - 3;
    for (k, col) in cols[1..=d].iter().enumerate() {
        if *col != format!("feat_{k}") {
            return Err(Error::Schema(format!(
                "expected column feat_{k}, found {col:?}"
            )));
        }
    }
    if cols[d + 1] != "true_label" || cols[d + 2] != "noisy_label" {
        return Err(Error::Schema(format!(
            "expected trailing columns true_label,noisy_label, found {:?},{:?}",
            cols[d + 1],
            cols[d + 2]
        )));
    }

    let mut features = Vec::new();
    let mut true_labels: Vec<Option<u8>> = Vec::new();
    let mut noisy_labels = Vec::new();
    for record in r.records() {
        let rec = record?;
        for k in 0..d {
            let v = parse_f64(&rec[k + 1], &format!("feat_{k}"))?;
            features.push(S::from_f64_lossy(v));
        }
        true_labels.push(parse_opt_label(&rec[d + 1], "true_label")?);
        noisy_labels.push(parse_label(&rec[d + 2], "noisy_label")?);
    }
    let truth = if true_labels.iter().all(Option::is_some) {
        Some(true_labels.into_iter().map(Option::unwrap).collect())
    } else {
        None
    };
    LabeledFeatureSet::new(features, d, truth, noisy_labels)
}

/// Parsed `scores.csv` content.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoresFile {
    pub ids: Vec<String>,
    pub score_a: Vec<f64>,
    pub score_b: Option<Vec<f64>>,
    pub labels: Vec<u8>,
}

pub fn read_scores_csv<R: Read>(reader: R) -> Result<ScoresFile> {
    let mut r = csv::Reader::from_reader(reader);
    let headers = r.headers()?.clone();
    let cols: Vec<&str> = headers.iter().collect();
    let has_b = match cols.as_slice() {
        ["id", "score_a", "label"] => false,
        ["id", "score_a", "score_b", "label"] => true,
        other => {
            return Err(Error::Schema(format!(
                "scores header must be id,score_a[,score_b],label, got {other:?}"
            )))
        }
    };
    let mut out = ScoresFile {
        ids: Vec::new(),
        score_a: Vec::new(),
        score_b: has_b.then(Vec::new),
        labels: Vec::new(),
    };
    for record in r.records() {
        let rec = record?;
        out.ids.push(rec[0].to_string());
        out.score_a.push(parse_f64(&rec[1], "score_a")?);
        if let Some(b) = out.score_b.as_mut() {
            b.push(parse_f64(&rec[2], "score_b")?);
        }
        let label_idx = if has_b { 3 } else { 2 };
        out.labels.push(parse_label(&rec[label_idx], "label")?);
    }
    Ok(out)
}

/// Parsed `ratings.csv`: per-subject category counts.
pub fn read_ratings_csv<R: Read>(reader: R) -> Result<Vec<Vec<u32>>> {
    let mut r = csv::Reader::from_reader(reader);
    let headers = r.headers()?.clone();
    let cols: Vec<&str> = headers.iter().collect();
    if cols.len() < 3 || cols[0] != "id" {
        return Err(Error::Schema(
            "ratings header must be id,cat_0..cat_{k-1}".into(),
        ));
    }
    for (k, col) in cols[1..].iter().enumerate() {
        if *col != format!("cat_{k}") {
            return Err(Error::Schema(format!("expected column cat_{k}, found {col:?}")));
        }
    }
    let mut rows = Vec::new();
    for record in r.records() {
        let rec = record?;
        let mut row = Vec::with_capacity(cols.len() - 1);
        for k in 1..cols.len() {
            row.push(parse_u32(&rec[k], &format!("cat_{}", k - 1))?);
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn write_delays_csv<W: Write>(
    writer: W,
    policy: &str,
    exams: &[Exam],
    report_days: &[u32],
) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["id", "policy", "report_day", "delay"])?;
    for (e, &day) in exams.iter().zip(report_days) {
        w.write_record([
            e.id.as_str(),
            policy,
            &day.to_string(),
            &(day - e.acquisition_day).to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_null_hist_csv<W: Write>(writer: W, null: &NullDistribution) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["run", "mean_abnormal_delay", "mean_normal_delay"])?;
    for (i, &(abn, nor)) in null.runs.iter().enumerate() {
        w.write_record([i.to_string(), format!("{abn:?}"), format!("{nor:?}")])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_transition_json<S: Real>(path: &Path, t: &TransitionMatrix<S>) -> Result<()>
where
    S: serde::Serialize,
{
    let json = serde_json::to_string_pretty(&t.rows())?;
    std::fs::write(path, json + "\n")?;
    Ok(())
}

pub fn read_transition_json(path: &Path) -> Result<TransitionMatrix<f64>> {
    let text = std::fs::read_to_string(path)?;
    let rows: [[f64; 2]; 2] = serde_json::from_str(&text)?;
    TransitionMatrix::new(rows)
}
