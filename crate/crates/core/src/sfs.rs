//! Sequential forward selection over the fourteen time-domain features.
//!
//! Each round retrains a logistic ELM on `subset + candidate` for every
//! remaining candidate and scores it on the verify split. The best candidate
//! joins the subset only if it strictly beats the best accuracy so far; ties
//! go to the lowest feature id.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::elm::{accuracy, train, ElmConfig};
use crate::error::{Error, Result};
use crate::features::{FeatureConvention, FeatureId, FeatureTable, SignalWindow};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SfsConfig {
    pub elm: ElmConfig,
    pub convention: FeatureConvention,
    /// Candidate pool, scanned in ascending id order.
    pub pool: Vec<FeatureId>,
}

impl Default for SfsConfig {
    fn default() -> Self {
        Self {
            elm: ElmConfig::default(),
            convention: FeatureConvention::default(),
            pool: FeatureId::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateScore {
    pub feature: FeatureId,
    pub accuracy: f64,
    /// The feature could not be computed on some window; scored as 0.
    pub undefined: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SfsRound {
    pub initial_subset: Vec<FeatureId>,
    pub candidate_scores: Vec<CandidateScore>,
    pub selected: Option<FeatureId>,
    pub best_so_far: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SfsTrace {
    pub rounds: Vec<SfsRound>,
    pub final_subset: Vec<FeatureId>,
    pub evaluations: usize,
}

impl SfsTrace {
    pub fn best_accuracy(&self) -> f64 {
        self.rounds
            .iter()
            .rev()
            .find(|r| r.selected.is_some())
            .map_or(0.0, |r| r.best_so_far)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    /// Round-by-column table: one row per candidate feature, `-` for
    /// features already in the pool.
    pub fn to_table(&self) -> String {
        let fmt_set = |ids: &[FeatureId]| {
            if ids.is_empty() {
                "{}".to_string()
            } else {
                format!(
                    "{{{}}}",
                    ids.iter()
                        .map(|f| format!("F{}", f.number()))
                        .collect::<Vec<_>>()
                        .join(",")
                )
            }
        };
        let mut header = vec![String::new()];
        let mut body: Vec<Vec<String>> = Vec::new();
        body.push(vec!["Initial Feature Pool".into()]);
        for id in FeatureId::ALL {
            body.push(vec![format!("Feature {}", id.number())]);
        }
        body.push(vec!["Selected".into()]);
        body.push(vec!["Feature Pool".into()]);
        for (r, round) in self.rounds.iter().enumerate() {
            header.push(format!("Round {}", r + 1));
            body[0].push(fmt_set(&round.initial_subset));
            for (i, id) in FeatureId::ALL.into_iter().enumerate() {
                let cell = match round.candidate_scores.iter().find(|c| c.feature == id) {
                    Some(c) if c.undefined => "undef".to_string(),
                    Some(c) if Some(id) == round.selected => format!("*{:.4}", c.accuracy),
                    Some(c) => format!("{:.4}", c.accuracy),
                    None => "-".to_string(),
                };
                body[i + 1].push(cell);
            }
            body[15].push(
                round
                    .selected
                    .map_or("none".into(), |f| format!("Feature {}", f.number())),
            );
            let mut pool = round.initial_subset.clone();
            pool.extend(round.selected);
            body[16].push(fmt_set(&pool));
        }
        let widths: Vec<usize> = (0..header.len())
            .map(|c| {
                body.iter()
                    .map(|r| r[c].len())
                    .chain([header[c].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        for row in std::iter::once(&header).chain(&body) {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(cell, w)| format!("{cell:<w$}"))
                .collect();
            let _ = writeln!(out, "{}", line.join("  ").trim_end());
        }
        let _ = writeln!(
            out,
            "final subset: {} (accuracy {:.4}, {} evaluations)",
            fmt_set(&self.final_subset),
            self.best_accuracy(),
            self.evaluations
        );
        out
    }
}

fn labels_of(windows: &[SignalWindow], split: &str) -> Result<Vec<usize>> {
    windows
        .iter()
        .enumerate()
        .map(|(i, w)| {
            w.label()
                .ok_or_else(|| Error::InvalidArgument(format!("{split} window {i} has no label")))
        })
        .collect()
}

/// Runs forward selection from raw labelled windows.
pub fn sfs_select(
    train: &[SignalWindow],
    verify: &[SignalWindow],
    config: &SfsConfig,
) -> Result<SfsTrace> {
    if train.is_empty() || verify.is_empty() {
        return Err(Error::InvalidArgument(
            "train and verify splits must be non-empty".into(),
        ));
    }
    if train[0].len() != verify[0].len() {
        return Err(Error::DimensionMismatch(format!(
            "train windows have length {}, verify windows {}",
            train[0].len(),
            verify[0].len()
        )));
    }
    let train_labels = labels_of(train, "train")?;
    let verify_labels = labels_of(verify, "verify")?;
    let class_count = train_labels
        .iter()
        .chain(&verify_labels)
        .copied()
        .max()
        .unwrap_or(1);
    let train_table = FeatureTable::extract(train, config.convention)?;
    let verify_table = FeatureTable::extract(verify, config.convention)?;
    sfs_select_tables(
        &train_table,
        &train_labels,
        &verify_table,
        &verify_labels,
        class_count,
        config,
    )
}

/// Forward selection on pre-extracted feature tables.
pub fn sfs_select_tables(
    train: &FeatureTable,
    train_labels: &[usize],
    verify: &FeatureTable,
    verify_labels: &[usize],
    class_count: usize,
    config: &SfsConfig,
) -> Result<SfsTrace> {
    config.elm.validate()?;
    if train.rows() != train_labels.len() || verify.rows() != verify_labels.len() {
        return Err(Error::DimensionMismatch(
            "feature rows and labels differ in count".into(),
        ));
    }
    let mut remaining = config.pool.clone();
    remaining.sort();
    remaining.dedup();
    if remaining.len() != config.pool.len() {
        return Err(Error::InvalidArgument(
            "candidate pool contains duplicates".into(),
        ));
    }

    let mut subset: Vec<FeatureId> = Vec::new();
    let mut best = -1.0;
    let mut rounds = Vec::new();
    let mut evaluations = 0;

    while !remaining.is_empty() {
        let scores = remaining
            .par_iter()
            .map(|&candidate| {
                let mut ids = subset.clone();
                ids.push(candidate);
                if !train.is_defined(candidate) || !verify.is_defined(candidate) {
                    return Ok(CandidateScore {
                        feature: candidate,
                        accuracy: 0.0,
                        undefined: true,
                    });
                }
                let acc = train_and_score(
                    train,
                    train_labels,
                    verify,
                    verify_labels,
                    class_count,
                    &ids,
                    config,
                )?;
                Ok(CandidateScore {
                    feature: candidate,
                    accuracy: acc,
                    undefined: false,
                })
            })
            .collect::<Vec<Result<_>>>()
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        evaluations += scores.len();

        // strict > keeps the first maximum in ascending id order
        let mut top: Option<&CandidateScore> = None;
        for s in &scores {
            if top.is_none_or(|t| s.accuracy > t.accuracy) {
                top = Some(s);
            }
        }
        let top = top.expect("remaining is non-empty");
        let improved = top.accuracy > best;
        let selected = improved.then_some(top.feature);
        if improved {
            best = top.accuracy;
        }
        rounds.push(SfsRound {
            initial_subset: subset.clone(),
            candidate_scores: scores.clone(),
            selected,
            best_so_far: best,
        });
        match selected {
            Some(f) => {
                subset.push(f);
                remaining.retain(|&c| c != f);
            }
            None => break,
        }
    }

    Ok(SfsTrace {
        rounds,
        final_subset: subset,
        evaluations,
    })
}

fn train_and_score(
    train_table: &FeatureTable,
    train_labels: &[usize],
    verify_table: &FeatureTable,
    verify_labels: &[usize],
    class_count: usize,
    ids: &[FeatureId],
    config: &SfsConfig,
) -> Result<f64> {
    let f_train = train_table.matrix(ids)?;
    let f_verify = verify_table.matrix(ids)?;
    let model = train(&f_train, train_labels, &config.elm, class_count)?;
    accuracy(&model.predict(&f_verify)?, verify_labels)
}
