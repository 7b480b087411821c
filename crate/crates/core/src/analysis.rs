//! Expected runtime, linear cost models and the probabilistic Pareto-front view.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use log::warn;
use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::bayesnet::BayesianNetwork;
use crate::enumeration::ParetoSet;
use crate::features::FeatureVector;
use crate::landscape::{ObjectiveVector, Solution};
use crate::optimizers::RunRecord;
use crate::rng::stream;
use crate::{Error, Result};

/// Expected runtime of one algorithm on one instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErtRecord {
    pub instance_id: String,
    pub algorithm: String,
    pub runs: usize,
    pub successes: usize,
    pub success_times: Vec<usize>,
    pub t_max: usize,
    pub p_hat: f64,
    /// `None` when no run succeeded.
    pub ert: Option<f64>,
}

impl ErtRecord {
    pub fn is_censored(&self) -> bool {
        self.ert.is_none()
    }

    /// The estimate, or [`Error::Censored`].
    pub fn value(&self) -> Result<f64> {
        self.ert.ok_or_else(|| Error::Censored {
            instance_id: self.instance_id.clone(),
            algorithm: self.algorithm.clone(),
            runs: self.runs,
        })
    }
}

/// `ert = (1 - p)/p * t_max + mean(T_i)` over the successful runs, with
/// `p = successes / runs`.
pub fn estimate_ert(records: &[RunRecord], t_max: usize) -> Result<ErtRecord> {
    let first = records
        .first()
        .ok_or(Error::EmptyInput("estimate_ert needs at least one run"))?;
    let success_times: Vec<usize> = records
        .iter()
        .filter(|r| r.success)
        .map(|r| r.evaluations)
        .collect();
    if let Some(t) = success_times.iter().find(|&&t| t > t_max) {
        return Err(Error::InvalidParameter(format!(
            "success time {t} exceeds t_max {t_max}"
        )));
    }
    let runs = records.len();
    let successes = success_times.len();
    let p_hat = successes as f64 / runs as f64;
    // (1-p)/p * t_max + mean(T) with p = s/runs, as one division.
    let ert = (successes > 0).then(|| {
        let failures = (runs - successes) as f64;
        (failures * t_max as f64 + success_times.iter().sum::<usize>() as f64) / successes as f64
    });
    Ok(ErtRecord {
        instance_id: first.instance_id.clone(),
        algorithm: first.algorithm.to_string(),
        runs,
        successes,
        success_times,
        t_max,
        p_hat,
        ert,
    })
}

pub const ERT_CSV_HEADER: &str = "instance_id,algorithm,p_hat,ert";

impl ErtRecord {
    /// Censored estimates are written as `NA`.
    pub fn csv_row(&self) -> String {
        match self.ert {
            Some(e) => format!("{},{},{},{}", self.instance_id, self.algorithm, self.p_hat, e),
            None => format!("{},{},{},NA", self.instance_id, self.algorithm, self.p_hat),
        }
    }
}

/// Treatment of instances without any successful run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CensoredMode {
    /// Leave them out of the regression.
    #[default]
    Exclude,
    /// Use `t_max` as their expected runtime.
    ImputeTmax,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Transform {
    Identity,
    Log,
}

impl Transform {
    pub fn apply(self, x: f64) -> f64 {
        match self {
            Transform::Identity => x,
            Transform::Log => x.ln(),
        }
    }

    pub fn label(self, name: &str) -> String {
        match self {
            Transform::Identity => name.to_string(),
            Transform::Log => format!("log({name})"),
        }
    }
}

/// Named regressors, stored already transformed.
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureTable {
    pub names: Vec<String>,
    pub transforms: Vec<Transform>,
    pub columns: Vec<Vec<f64>>,
}

/// The nine landscape features with their cost-model transforms.
pub const FEATURE_TRANSFORMS: [(&str, Transform); 9] = [
    ("k", Transform::Log),
    ("m", Transform::Log),
    ("npo", Transform::Log),
    ("hv", Transform::Identity),
    ("avgd", Transform::Identity),
    ("maxd", Transform::Identity),
    ("nconnec", Transform::Log),
    ("lconnec", Transform::Log),
    ("kconnec", Transform::Identity),
];

impl FeatureTable {
    pub fn new(names: Vec<String>, columns: Vec<Vec<f64>>) -> Result<Self> {
        if names.len() != columns.len() {
            return Err(Error::LengthMismatch {
                expected: names.len(),
                found: columns.len(),
            });
        }
        let rows = columns.first().map_or(0, Vec::len);
        if let Some(c) = columns.iter().find(|c| c.len() != rows) {
            return Err(Error::LengthMismatch {
                expected: rows,
                found: c.len(),
            });
        }
        let transforms = vec![Transform::Identity; names.len()];
        Ok(Self {
            names,
            transforms,
            columns,
        })
    }

    /// Builds the nine-feature table, labelling logged columns `log(name)`.
    pub fn from_features(features: &[FeatureVector]) -> Self {
        let raw = |f: &FeatureVector, name: &str| -> f64 {
            match name {
                "k" => f.k as f64,
                "m" => f.m as f64,
                "npo" => f.npo as f64,
                "hv" => f.hv,
                "avgd" => f.avgd,
                "maxd" => f.maxd,
                "nconnec" => f.nconnec as f64,
                "lconnec" => f.lconnec,
                "kconnec" => f.kconnec as f64,
                _ => unreachable!(),
            }
        };
        let mut table = Self {
            names: Vec::new(),
            transforms: Vec::new(),
            columns: Vec::new(),
        };
        for (name, t) in FEATURE_TRANSFORMS {
            table.names.push(t.label(name));
            table.transforms.push(t);
            table
                .columns
                .push(features.iter().map(|f| t.apply(raw(f, name))).collect());
        }
        table
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn select(&self, keep: &[usize]) -> Self {
        Self {
            names: keep.iter().map(|&i| self.names[i].clone()).collect(),
            transforms: keep.iter().map(|&i| self.transforms[i]).collect(),
            columns: keep.iter().map(|&i| self.columns[i].clone()).collect(),
        }
    }

    fn subset_rows(&self, rows: &[usize]) -> Self {
        Self {
            names: self.names.clone(),
            transforms: self.transforms.clone(),
            columns: self
                .columns
                .iter()
                .map(|c| rows.iter().map(|&r| c[r]).collect())
                .collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualSummary {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub std_dev: f64,
}

/// `y = beta_0 + sum_i beta_i * v_i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegressionModel {
    pub feature_names: Vec<String>,
    pub transforms: Vec<Transform>,
    /// Intercept first.
    pub coefficients: Vec<f64>,
    pub residuals: ResidualSummary,
}

impl RegressionModel {
    pub fn predict_row(&self, values: &[f64]) -> f64 {
        self.coefficients[0]
            + self.coefficients[1..]
                .iter()
                .zip(values)
                .map(|(b, v)| b * v)
                .sum::<f64>()
    }

    fn predict(&self, table: &FeatureTable, rows: usize) -> Vec<f64> {
        (0..rows)
            .map(|r| {
                let row: Vec<f64> = table.columns.iter().map(|c| c[r]).collect();
                self.predict_row(&row)
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelStats {
    pub r: f64,
    pub mae: f64,
    pub rmse: f64,
}

fn pearson(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        sab += (x - ma) * (y - mb);
        saa += (x - ma) * (x - ma);
        sbb += (y - mb) * (y - mb);
    }
    if saa <= 0.0 || sbb <= 0.0 {
        0.0
    } else {
        (sab / (saa * sbb).sqrt()).clamp(-1.0, 1.0)
    }
}

/// `r = |pearson(predicted, observed)|`, MAE and RMSE. A model without
/// regressors has `r = 0` by definition.
pub fn model_stats(predicted: &[f64], observed: &[f64], n_features: usize) -> ModelStats {
    debug_assert_eq!(predicted.len(), observed.len());
    let n = observed.len() as f64;
    let mae = predicted.iter().zip(observed).map(|(p, y)| (p - y).abs()).sum::<f64>() / n;
    let mse = predicted.iter().zip(observed).map(|(p, y)| (p - y).powi(2)).sum::<f64>() / n;
    let r = if n_features == 0 {
        0.0
    } else {
        pearson(predicted, observed).abs()
    };
    // Guard the last ulp so rmse >= mae always holds.
    let rmse = mse.sqrt().max(mae);
    ModelStats { r, mae, rmse }
}

fn residual_summary(predicted: &[f64], observed: &[f64]) -> ResidualSummary {
    let res: Vec<f64> = observed.iter().zip(predicted).map(|(y, p)| y - p).collect();
    let n = res.len() as f64;
    let mean = res.iter().sum::<f64>() / n;
    ResidualSummary {
        min: res.iter().copied().fold(f64::INFINITY, f64::min),
        max: res.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        mean,
        std_dev: (res.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / n).sqrt(),
    }
}

/// Least squares through a Householder QR factorisation of `[1 | X]`.
fn ols(table: &FeatureTable, ys: &[f64]) -> Result<Vec<f64>> {
    let n = ys.len();
    let p = table.len() + 1;
    if table.rows() != n && !table.is_empty() {
        return Err(Error::LengthMismatch {
            expected: n,
            found: table.rows(),
        });
    }
    if n < p {
        return Err(Error::InsufficientData(format!(
            "{n} rows for {p} coefficients"
        )));
    }
    let x = DMatrix::from_fn(n, p, |r, c| if c == 0 { 1.0 } else { table.columns[c - 1][r] });
    let norms: Vec<f64> = (0..p).map(|c| x.column(c).norm()).collect();
    let qr = x.qr();
    let r = qr.r();
    for c in 0..p {
        if r[(c, c)].abs() <= 1e-10 * norms[c].max(f64::MIN_POSITIVE) {
            let name = if c == 0 { "intercept" } else { table.names[c - 1].as_str() };
            let mut earlier = vec!["intercept".to_string()];
            earlier.extend(table.names[..c.saturating_sub(1)].iter().cloned());
            return Err(Error::RankDeficient(format!(
                "column {name:?} is a linear combination of {}",
                earlier.join(", ")
            )));
        }
    }
    let qty = qr.q().transpose() * DVector::from_column_slice(ys);
    let beta = r
        .solve_upper_triangular(&qty)
        .ok_or_else(|| Error::RankDeficient("singular triangular factor".into()))?;
    Ok(beta.iter().copied().collect())
}

fn build_model(table: &FeatureTable, ys: &[f64], coefficients: Vec<f64>) -> (RegressionModel, ModelStats) {
    let mut model = RegressionModel {
        feature_names: table.names.clone(),
        transforms: table.transforms.clone(),
        coefficients,
        residuals: ResidualSummary {
            min: 0.0,
            max: 0.0,
            mean: 0.0,
            std_dev: 0.0,
        },
    };
    let predicted = model.predict(table, ys.len());
    model.residuals = residual_summary(&predicted, ys);
    let stats = model_stats(&predicted, ys, table.len());
    (model, stats)
}

/// Multiple linear regression with intercept.
pub fn fit_multiple(table: &FeatureTable, ys: &[f64]) -> Result<(RegressionModel, ModelStats)> {
    let beta = ols(table, ys)?;
    Ok(build_model(table, ys, beta))
}

/// One-regressor fit. A constant regressor yields slope 0, intercept
/// `mean(y)` and `r = 0`.
pub fn fit_simple(xs: &[f64], ys: &[f64]) -> Result<(RegressionModel, ModelStats)> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch {
            expected: ys.len(),
            found: xs.len(),
        });
    }
    if ys.len() < 3 {
        return Err(Error::InsufficientData(format!("{} points, need 3", ys.len())));
    }
    fit_single(&FeatureTable::new(vec!["x".into()], vec![xs.to_vec()])?, ys)
}

fn fit_single(table: &FeatureTable, ys: &[f64]) -> Result<(RegressionModel, ModelStats)> {
    let xs = &table.columns[0];
    if ys.is_empty() {
        return Err(Error::InsufficientData("no observations".into()));
    }
    let constant = xs.iter().all(|&x| x == xs[0]);
    if constant {
        let mean = ys.iter().sum::<f64>() / ys.len() as f64;
        let (mut model, _) = build_model(table, ys, vec![mean, 0.0]);
        let predicted = vec![mean; ys.len()];
        model.residuals = residual_summary(&predicted, ys);
        return Ok((model, model_stats(&predicted, ys, 0)));
    }
    fit_multiple(table, ys)
}

/// Fits whatever shape `table` has: intercept only, one regressor (lenient on
/// constant columns) or several.
fn fit_any(table: &FeatureTable, ys: &[f64]) -> Result<(RegressionModel, ModelStats)> {
    match table.len() {
        0 => {
            if ys.is_empty() {
                return Err(Error::InsufficientData("no observations".into()));
            }
            let mean = ys.iter().sum::<f64>() / ys.len() as f64;
            Ok(build_model(table, ys, vec![mean]))
        }
        1 => fit_single(table, ys),
        _ => fit_multiple(table, ys),
    }
}

/// Seeded shuffle into `k` folds whose sizes differ by at most one.
pub fn kfold_partition(n: usize, k: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k = {k} must be at least 2")));
    }
    if n < k {
        return Err(Error::InsufficientData(format!("{n} rows for {k} folds")));
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(&mut stream(seed));
    let (base, extra) = (n / k, n % k);
    let mut folds = Vec::with_capacity(k);
    let mut start = 0;
    for f in 0..k {
        let len = base + usize::from(f < extra);
        folds.push(idx[start..start + len].to_vec());
        start += len;
    }
    Ok(folds)
}

/// Out-of-fold predictions pooled over `k` folds, scored like an in-sample fit.
pub fn kfold_cv(table: &FeatureTable, ys: &[f64], k: usize, seed: u64) -> Result<ModelStats> {
    let n = ys.len();
    if !table.is_empty() && table.rows() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: table.rows(),
        });
    }
    let folds = kfold_partition(n, k, seed)?;
    let mut predicted = vec![0.0; n];
    for test in &folds {
        let mut in_test = vec![false; n];
        for &i in test {
            in_test[i] = true;
        }
        let train: Vec<usize> = (0..n).filter(|&i| !in_test[i]).collect();
        let train_ys: Vec<f64> = train.iter().map(|&i| ys[i]).collect();
        let (model, _) = fit_any(&table.subset_rows(&train), &train_ys)?;
        for &i in test {
            let row: Vec<f64> = table.columns.iter().map(|c| c[i]).collect();
            predicted[i] = model.predict_row(&row);
        }
    }
    Ok(model_stats(&predicted, ys, table.len()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EliminationStep {
    /// `None` for the full model.
    pub removed: Option<String>,
    pub remaining: Vec<String>,
    pub fit: ModelStats,
    pub cv: ModelStats,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EliminationLadder {
    pub all: EliminationStep,
    /// One entry per feature; the last leaves the intercept-only model.
    pub steps: Vec<EliminationStep>,
}

/// Backward elimination: repeatedly drop the feature whose removal leaves the
/// model with the highest in-sample `r` (ties: smallest name), recording fit
/// and cross-validated statistics after each removal.
pub fn backward_eliminate(table: &FeatureTable, ys: &[f64], k_folds: usize, seed: u64) -> Result<EliminationLadder> {
    if table.len() < 2 {
        return Err(Error::InvalidParameter("backward elimination needs at least 2 features".into()));
    }
    let (_, fit) = fit_multiple(table, ys)?;
    let all = EliminationStep {
        removed: None,
        remaining: table.names.clone(),
        fit,
        cv: kfold_cv(table, ys, k_folds, seed)?,
    };
    let mut remaining: Vec<usize> = (0..table.len()).collect();
    let mut steps = Vec::with_capacity(table.len());
    while !remaining.is_empty() {
        let mut best: Option<(usize, ModelStats)> = None;
        for pos in 0..remaining.len() {
            let mut keep = remaining.clone();
            keep.remove(pos);
            let (_, stats) = fit_any(&table.select(&keep), ys)?;
            let better = match best {
                None => true,
                Some((b, bs)) => {
                    stats.r > bs.r + 1e-12
                        || ((stats.r - bs.r).abs() <= 1e-12
                            && table.names[remaining[pos]] < table.names[remaining[b]])
                }
            };
            if better {
                best = Some((pos, stats));
            }
        }
        let (pos, fit) = best.expect("at least one candidate");
        let removed = remaining.remove(pos);
        let sub = table.select(&remaining);
        steps.push(EliminationStep {
            removed: Some(table.names[removed].clone()),
            remaining: sub.names.clone(),
            fit,
            cv: kfold_cv(&sub, ys, k_folds, seed)?,
        });
    }
    Ok(EliminationLadder { all, steps })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimpleModelRow {
    pub feature: String,
    pub coefficients: Vec<f64>,
    pub fit: ModelStats,
    pub cv: ModelStats,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegressionReport {
    pub algorithm: String,
    pub response: String,
    pub instances: usize,
    pub censored: usize,
    pub censored_mode: CensoredMode,
    pub k_folds: usize,
    /// `none` first, then one row per feature.
    pub simple: Vec<SimpleModelRow>,
    pub elimination: Option<EliminationLadder>,
    /// Why the elimination ladder is missing, if it is.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elimination_error: Option<String>,
}

/// Simple models for `none` and every feature, plus the elimination ladder,
/// all against `ln(ert)`.
pub fn regression_report(
    algorithm: &str,
    features: &[FeatureVector],
    erts: &[ErtRecord],
    k_folds: usize,
    seed: u64,
    mode: CensoredMode,
) -> Result<RegressionReport> {
    let by_id: BTreeMap<&str, &ErtRecord> = erts
        .iter()
        .filter(|e| e.algorithm == algorithm)
        .map(|e| (e.instance_id.as_str(), e))
        .collect();
    let mut rows = Vec::new();
    let mut ys = Vec::new();
    let mut censored = 0;
    for f in features {
        let Some(e) = by_id.get(f.instance_id.as_str()) else {
            continue;
        };
        let ert = match (e.ert, mode) {
            (Some(v), _) => v,
            (None, CensoredMode::ImputeTmax) => {
                censored += 1;
                e.t_max as f64
            }
            (None, CensoredMode::Exclude) => {
                censored += 1;
                warn!("{}/{algorithm}: no successful run, excluded from regression", f.instance_id);
                continue;
            }
        };
        rows.push(f.clone());
        ys.push(ert.ln());
    }
    if ys.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "{algorithm}: {} usable instances ({censored} censored), need at least 3",
            ys.len()
        )));
    }
    let table = FeatureTable::from_features(&rows);
    let folds = k_folds.min(ys.len());
    let mut simple = Vec::with_capacity(table.len() + 1);
    let none = table.select(&[]);
    let (model, fit) = fit_any(&none, &ys)?;
    simple.push(SimpleModelRow {
        feature: "none".into(),
        coefficients: model.coefficients,
        fit,
        cv: kfold_cv(&none, &ys, folds, seed)?,
    });
    for i in 0..table.len() {
        let one = table.select(&[i]);
        let (model, fit) = fit_any(&one, &ys)?;
        simple.push(SimpleModelRow {
            feature: table.names[i].clone(),
            coefficients: model.coefficients,
            fit,
            cv: kfold_cv(&one, &ys, folds, seed)?,
        });
    }
    let (elimination, elimination_error) = match backward_eliminate(&table, &ys, folds, seed) {
        Ok(l) => (Some(l), None),
        Err(e) => {
            warn!("{algorithm}: elimination ladder unavailable: {e}");
            (None, Some(e.to_string()))
        }
    };
    Ok(RegressionReport {
        algorithm: algorithm.to_string(),
        response: "log(ert)".into(),
        instances: ys.len(),
        censored,
        censored_mode: mode,
        k_folds: folds,
        simple,
        elimination,
        elimination_error,
    })
}

/// One Pareto-optimal solution in the probabilistic front view.
#[derive(Clone, Debug, PartialEq)]
pub struct PmfRow {
    pub solution: Solution,
    pub objectives: ObjectiveVector,
    pub mean_pmf: f64,
    pub dist_to_ideal: f64,
    /// 1-based position when ordered by distance to the ideal point.
    pub rank: usize,
}

/// Componentwise maximum of the Pareto front.
pub fn ideal_point(pareto: &ParetoSet) -> Vec<f64> {
    (0..pareto.m_objectives())
        .map(|d| {
            pareto
                .objectives
                .iter()
                .map(|z| z[d])
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect()
}

/// Mean joint pmf of every Pareto-optimal solution over `models`, with the
/// Euclidean distance of its objective vector to the ideal point. With three
/// or more objectives rows are sorted by that distance, nearest first;
/// otherwise they keep the Pareto-set order.
pub fn pareto_pmf_view(models: &[BayesianNetwork], pareto: &ParetoSet) -> Result<Vec<PmfRow>> {
    if models.is_empty() {
        return Err(Error::EmptyInput("pmf view needs at least one model"));
    }
    let ideal = ideal_point(pareto);
    let mut rows = Vec::with_capacity(pareto.len());
    for (s, z) in pareto.solutions.iter().zip(&pareto.objectives) {
        let mut total = 0.0;
        for net in models {
            total += net.joint_pmf(s)?;
        }
        let dist = z
            .iter()
            .zip(&ideal)
            .map(|(a, b)| (a - b).powi(2))
            .sum::<f64>()
            .sqrt();
        rows.push(PmfRow {
            solution: s.clone(),
            objectives: z.clone(),
            mean_pmf: total / models.len() as f64,
            dist_to_ideal: dist,
            rank: 0,
        });
    }
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by(|&a, &b| rows[a].dist_to_ideal.total_cmp(&rows[b].dist_to_ideal).then(a.cmp(&b)));
    for (pos, &i) in order.iter().enumerate() {
        rows[i].rank = pos + 1;
    }
    if pareto.m_objectives() >= 3 {
        rows.sort_by_key(|r| r.rank);
    }
    Ok(rows)
}

/// `bitstring,z1..zM,mean_pmf,dist_to_ideal,rank`.
pub fn pmf_view_csv(rows: &[PmfRow]) -> String {
    let m = rows.first().map_or(0, |r| r.objectives.len());
    let mut out = String::from("bitstring");
    for d in 1..=m {
        write!(out, ",z{d}").unwrap();
    }
    out.push_str(",mean_pmf,dist_to_ideal,rank\n");
    for r in rows {
        write!(out, "{}", r.solution).unwrap();
        for v in r.objectives.iter() {
            write!(out, ",{v}").unwrap();
        }
        writeln!(out, ",{},{},{}", r.mean_pmf, r.dist_to_ideal, r.rank).unwrap();
    }
    out
}
