//! Experiment orchestration behind the `mnkbench` binary.
//!
//! State lives on disk under `output_dir`:
//!
//! ```text
//! instances/<id>.json
//! pareto/<id>.json, pareto/<id>.csv
//! runs/<alg>/<id>/run_<idx>.json      (+ model_<idx>.json for successful mBOA runs)
//! reports/features.csv, ert.csv, regression.json, pmf_view/<id>.csv
//! ```
//!
//! Every file is written through a temporary file and renamed into place, so an
//! interrupted campaign leaves only complete records behind and can be resumed.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use log::{info, warn};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{
    estimate_ert, pareto_pmf_view, pmf_view_csv, regression_report, CensoredMode, ErtRecord,
    RegressionReport, ERT_CSV_HEADER,
};
use crate::bayesnet::{BayesianNetwork, DEFAULT_MAX_PARENTS};
use crate::enumeration::{enumerate_pareto, ParetoSet};
use crate::features::{extract_features, FeatureVector, FEATURE_CSV_HEADER};
use crate::landscape::{generate_instance, MnkInstance};
use crate::optimizers::{
    default_t_max, run_algorithm, Algorithm, RunParams, RunRecord, SuccessCadence,
    DEFAULT_CROSSOVER_PROB, DEFAULT_EPSILON, DEFAULT_MUTATION_PROB, DEFAULT_POP_SIZE,
};
use crate::rng::{derive_seed, fnv1a};
use crate::{Error, Result};

const INSTANCE_TAG: u64 = 0x696e_7374;
const CV_TAG: u64 = 0x6376;

/// Experiment grid and algorithm settings, read from a JSON file. Missing
/// fields take their defaults.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub master_seed: u64,
    pub n_vars: usize,
    pub k_values: Vec<usize>,
    pub m_values: Vec<usize>,
    pub landscapes_per_cell: usize,
    pub runs_per_instance: usize,
    pub epsilon: f64,
    /// Defaults to `floor(2^n_vars / 10)`.
    pub t_max: Option<usize>,
    pub pop_size: usize,
    pub pgm_size: usize,
    pub sample_size: usize,
    pub max_parents: usize,
    pub crossover_prob: f64,
    pub mutation_prob: f64,
    pub cadence: SuccessCadence,
    pub k_folds: usize,
    pub censored_mode: CensoredMode,
    pub output_dir: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            master_seed: 0,
            n_vars: 18,
            k_values: vec![2, 4, 6, 8, 10],
            m_values: vec![2, 3, 5, 8],
            landscapes_per_cell: 30,
            runs_per_instance: 100,
            epsilon: DEFAULT_EPSILON,
            t_max: None,
            pop_size: DEFAULT_POP_SIZE,
            pgm_size: DEFAULT_POP_SIZE / 2,
            sample_size: 10 * DEFAULT_POP_SIZE,
            max_parents: DEFAULT_MAX_PARENTS,
            crossover_prob: DEFAULT_CROSSOVER_PROB,
            mutation_prob: DEFAULT_MUTATION_PROB,
            cadence: SuccessCadence::PerBatch,
            k_folds: 10,
            censored_mode: CensoredMode::Exclude,
            output_dir: PathBuf::from("mnkbench-out"),
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let config: Self = serde_json::from_str(&text).map_err(|e| Error::MalformedFile {
            path: path.to_path_buf(),
            detail: e.to_string(),
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidParameter(msg));
        if self.n_vars == 0 {
            return fail("n_vars must be positive".into());
        }
        if self.k_values.is_empty() || self.m_values.is_empty() {
            return fail("k_values and m_values must be non-empty".into());
        }
        if let Some(k) = self.k_values.iter().find(|&&k| k >= self.n_vars) {
            return fail(format!("k = {k} must be below n_vars = {}", self.n_vars));
        }
        if self.m_values.contains(&0) {
            return fail("m_values must be positive".into());
        }
        if self.landscapes_per_cell == 0 {
            return fail("landscapes_per_cell must be positive".into());
        }
        if self.k_folds < 2 {
            return fail("k_folds must be at least 2".into());
        }
        for (name, p) in [("crossover_prob", self.crossover_prob), ("mutation_prob", self.mutation_prob)] {
            if !(0.0..=1.0).contains(&p) {
                return fail(format!("{name} = {p} must lie in [0, 1]"));
            }
        }
        self.run_params(0).validate()
    }

    pub fn t_max(&self) -> usize {
        self.t_max.unwrap_or_else(|| default_t_max(self.n_vars))
    }

    pub fn run_params(&self, seed: u64) -> RunParams {
        RunParams {
            pop_size: self.pop_size,
            pgm_size: self.pgm_size,
            sample_size: self.sample_size,
            t_max: self.t_max(),
            epsilon: self.epsilon,
            seed,
            max_parents: self.max_parents,
            cadence: self.cadence,
        }
    }

    /// The grid in a fixed order: by `m`, then `k`, then landscape index.
    pub fn instances(&self) -> Vec<InstanceSpec> {
        let mut out = Vec::new();
        for &m in &self.m_values {
            for &k in &self.k_values {
                for i in 0..self.landscapes_per_cell {
                    let n = self.n_vars;
                    out.push(InstanceSpec {
                        id: format!("n{n}_m{m}_k{k}_i{i:02}"),
                        seed: derive_seed(
                            self.master_seed,
                            &[INSTANCE_TAG, n as u64, m as u64, k as u64, i as u64],
                        ),
                        m,
                        k,
                    });
                }
            }
        }
        out
    }

    /// Seed of run `run` of `algorithm` on `instance_id`; independent of
    /// scheduling.
    pub fn run_seed(&self, instance_id: &str, algorithm: Algorithm, run: usize) -> u64 {
        let tag = match algorithm {
            Algorithm::Mboa => 1,
            Algorithm::Nsga3 => 2,
        };
        derive_seed(self.master_seed, &[fnv1a(instance_id), tag, run as u64])
    }

    pub fn layout(&self) -> Layout {
        Layout {
            root: self.output_dir.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceSpec {
    pub id: String,
    pub seed: u64,
    pub m: usize,
    pub k: usize,
}

/// Paths of the on-disk experiment state.
#[derive(Clone, Debug)]
pub struct Layout {
    pub root: PathBuf,
}

impl Layout {
    pub fn instance(&self, id: &str) -> PathBuf {
        self.root.join("instances").join(format!("{id}.json"))
    }

    pub fn pareto_json(&self, id: &str) -> PathBuf {
        self.root.join("pareto").join(format!("{id}.json"))
    }

    pub fn pareto_csv(&self, id: &str) -> PathBuf {
        self.root.join("pareto").join(format!("{id}.csv"))
    }

    pub fn run_dir(&self, algorithm: Algorithm, id: &str) -> PathBuf {
        self.root.join("runs").join(algorithm.tag()).join(id)
    }

    pub fn run_record(&self, algorithm: Algorithm, id: &str, run: usize) -> PathBuf {
        self.run_dir(algorithm, id).join(format!("run_{run:04}.json"))
    }

    pub fn run_model(&self, algorithm: Algorithm, id: &str, run: usize) -> PathBuf {
        self.run_dir(algorithm, id).join(format!("model_{run:04}.json"))
    }

    pub fn reports(&self) -> PathBuf {
        self.root.join("reports")
    }

    pub fn features_csv(&self) -> PathBuf {
        self.reports().join("features.csv")
    }

    pub fn ert_csv(&self) -> PathBuf {
        self.reports().join("ert.csv")
    }

    pub fn regression_json(&self) -> PathBuf {
        self.reports().join("regression.json")
    }

    pub fn pmf_view(&self, id: &str) -> PathBuf {
        self.reports().join("pmf_view").join(format!("{id}.csv"))
    }
}

/// Writes `contents` to a temporary file next to `path` and renames it over
/// `path`.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(contents).map_err(|e| Error::io(tmp.path(), e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

/// Writes every instance of the grid. Existing files are regenerated, which
/// reproduces them byte for byte.
pub fn cmd_gen(config: &ExperimentConfig) -> Result<Vec<PathBuf>> {
    let layout = config.layout();
    config
        .instances()
        .par_iter()
        .map(|spec| {
            let mut instance = generate_instance(spec.seed, config.n_vars, spec.m, spec.k)?;
            instance.id = spec.id.clone();
            let path = layout.instance(&spec.id);
            write_atomic(&path, instance.to_json()?.as_bytes())?;
            Ok(path)
        })
        .collect()
}

fn load_instance(layout: &Layout, spec: &InstanceSpec) -> Result<MnkInstance> {
    let path = layout.instance(&spec.id);
    if !path.exists() {
        return Err(Error::InvalidParameter(format!(
            "instance {} is missing at {}; run `gen` first",
            spec.id,
            path.display()
        )));
    }
    let instance = MnkInstance::load(&path)?;
    if instance.id != spec.id {
        return Err(Error::CorruptedState {
            path,
            detail: format!("holds instance {:?}", instance.id),
        });
    }
    Ok(instance)
}

/// Loads the stored Pareto set of `instance`, enumerating it first if absent.
fn ensure_pareto(layout: &Layout, instance: &MnkInstance) -> Result<ParetoSet> {
    let json = layout.pareto_json(&instance.id);
    if json.exists() {
        let pareto = ParetoSet::load(&json)?;
        if pareto.instance_id != instance.id {
            return Err(Error::CorruptedState {
                path: json,
                detail: format!("holds the Pareto set of {:?}", pareto.instance_id),
            });
        }
        return Ok(pareto);
    }
    info!("enumerating {}", instance.id);
    let pareto = enumerate_pareto(instance)?;
    write_atomic(&layout.pareto_csv(&instance.id), pareto.to_csv().as_bytes())?;
    write_atomic(&json, pareto.to_json()?.as_bytes())?;
    Ok(pareto)
}

/// Exact Pareto sets for every instance of the grid; existing ones are kept.
pub fn cmd_enumerate(config: &ExperimentConfig) -> Result<()> {
    let layout = config.layout();
    config.instances().par_iter().try_for_each(|spec| {
        let instance = load_instance(&layout, spec)?;
        ensure_pareto(&layout, &instance).map(drop)
    })
}

/// Computes the feature vector of every instance and writes `features.csv`.
pub fn cmd_features(config: &ExperimentConfig) -> Result<Vec<FeatureVector>> {
    let layout = config.layout();
    let features: Vec<FeatureVector> = config
        .instances()
        .par_iter()
        .map(|spec| {
            let instance = load_instance(&layout, spec)?;
            let pareto = ensure_pareto(&layout, &instance)?;
            extract_features(&instance, &pareto)
        })
        .collect::<Result<_>>()?;
    let mut csv = format!("{FEATURE_CSV_HEADER}\n");
    for f in sorted_by_id(features.clone(), |f| &f.instance_id) {
        csv.push_str(&f.csv_row());
        csv.push('\n');
    }
    write_atomic(&layout.features_csv(), csv.as_bytes())?;
    Ok(features)
}

fn sorted_by_id<T>(mut items: Vec<T>, id: impl Fn(&T) -> &String) -> Vec<T> {
    items.sort_by(|a, b| id(a).cmp(id(b)));
    items
}

/// Reads a run record, checking that it is the one the path promises.
fn read_record(path: &Path, id: &str, algorithm: Algorithm, run: usize) -> Result<RunRecord> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let corrupt = |detail: String| Error::CorruptedState {
        path: path.to_path_buf(),
        detail,
    };
    let record: RunRecord = serde_json::from_str(&text).map_err(|e| corrupt(e.to_string()))?;
    if record.instance_id != id || record.algorithm != algorithm || record.run_index != run {
        return Err(corrupt(format!(
            "expected run {run} of {algorithm} on {id}, found run {} of {} on {}",
            record.run_index, record.algorithm, record.instance_id
        )));
    }
    Ok(record)
}

/// Outcome of [`cmd_run`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunSummary {
    pub executed: usize,
    pub skipped: usize,
}

/// Executes every missing `(instance, run)` pair of `algorithm`. Runs whose
/// record is already on disk are skipped.
pub fn cmd_run(config: &ExperimentConfig, algorithm: Algorithm) -> Result<RunSummary> {
    let runs = config.runs_per_instance;
    if runs == 0 {
        return Ok(RunSummary::default());
    }
    let layout = config.layout();
    let counts: Vec<RunSummary> = config
        .instances()
        .par_iter()
        .map(|spec| {
            let mut pending = Vec::new();
            for run in 0..runs {
                let path = layout.run_record(algorithm, &spec.id, run);
                if path.exists() {
                    read_record(&path, &spec.id, algorithm, run)?;
                } else {
                    pending.push(run);
                }
            }
            let skipped = runs - pending.len();
            if pending.is_empty() {
                return Ok(RunSummary { executed: 0, skipped });
            }
            let instance = load_instance(&layout, spec)?;
            let pareto = ensure_pareto(&layout, &instance)?;
            info!("{algorithm} on {}: {} runs pending", spec.id, pending.len());
            pending.par_iter().try_for_each(|&run| {
                let params = config.run_params(config.run_seed(&spec.id, algorithm, run));
                let result = run_algorithm(
                    algorithm,
                    &instance,
                    &pareto,
                    &params,
                    config.crossover_prob,
                    config.mutation_prob,
                )?;
                if result.success {
                    if let Some(model) = &result.final_model {
                        let path = layout.run_model(algorithm, &spec.id, run);
                        write_atomic(&path, model.to_json()?.as_bytes())?;
                    }
                }
                let record = RunRecord::from_result(&spec.id, algorithm, run, &result);
                let mut text = serde_json::to_string_pretty(&record)?;
                text.push('\n');
                write_atomic(&layout.run_record(algorithm, &spec.id, run), text.as_bytes())
            })?;
            Ok(RunSummary {
                executed: pending.len(),
                skipped,
            })
        })
        .collect::<Result<_>>()?;
    Ok(counts.iter().fold(RunSummary::default(), |acc, c| RunSummary {
        executed: acc.executed + c.executed,
        skipped: acc.skipped + c.skipped,
    }))
}

fn load_records(config: &ExperimentConfig, algorithm: Algorithm, id: &str) -> Result<Vec<RunRecord>> {
    let layout = config.layout();
    (0..config.runs_per_instance)
        .map(|run| {
            let path = layout.run_record(algorithm, id, run);
            if !path.exists() {
                return Err(Error::InsufficientData(format!(
                    "run {run} of {algorithm} on {id} is missing; run `run {algorithm}` first"
                )));
            }
            read_record(&path, id, algorithm, run)
        })
        .collect()
}

/// Expected runtimes of both algorithms on every instance, written to
/// `ert.csv` ordered by instance id, then algorithm.
pub fn cmd_ert(config: &ExperimentConfig) -> Result<Vec<ErtRecord>> {
    if config.runs_per_instance == 0 {
        return Err(Error::InsufficientData("runs_per_instance is 0".into()));
    }
    let mut specs = config.instances();
    specs.sort_by(|a, b| a.id.cmp(&b.id));
    let mut erts = Vec::new();
    for spec in &specs {
        for algorithm in Algorithm::ALL {
            let records = load_records(config, algorithm, &spec.id)?;
            erts.push(estimate_ert(&records, config.t_max())?);
        }
    }
    let mut csv = format!("{ERT_CSV_HEADER}\n");
    for e in &erts {
        if e.is_censored() {
            warn!("{}/{}: no successful run, ert censored", e.instance_id, e.algorithm);
        }
        csv.push_str(&e.csv_row());
        csv.push('\n');
    }
    write_atomic(&config.layout().ert_csv(), csv.as_bytes())?;
    Ok(erts)
}

/// Reads `features.csv`, computing it first if it is missing.
fn load_features(config: &ExperimentConfig) -> Result<Vec<FeatureVector>> {
    let path = config.layout().features_csv();
    if !path.exists() {
        return cmd_features(config);
    }
    let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    let mut lines = text.lines();
    if lines.next() != Some(FEATURE_CSV_HEADER) {
        return Err(Error::MalformedFile {
            path,
            detail: "unexpected header".into(),
        });
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            FeatureVector::parse_csv_row(line).map_err(|e| Error::MalformedFile {
                path: path.clone(),
                detail: format!("line {}: {e}", i + 2),
            })
        })
        .collect()
}

#[derive(Serialize)]
struct RegressionFile<'a> {
    reports: &'a [RegressionReport],
}

/// Cost models of both algorithms against `log(ert)`, written to
/// `regression.json`.
pub fn cmd_regress(config: &ExperimentConfig) -> Result<Vec<RegressionReport>> {
    let features = load_features(config)?;
    let erts = cmd_ert(config)?;
    let seed = derive_seed(config.master_seed, &[CV_TAG]);
    let reports: Vec<RegressionReport> = Algorithm::ALL
        .iter()
        .map(|alg| {
            regression_report(alg.tag(), &features, &erts, config.k_folds, seed, config.censored_mode)
                .map_err(|e| match e {
                    Error::InsufficientData(msg) if !msg.starts_with(alg.tag()) => {
                        Error::InsufficientData(format!("{alg}: {msg}"))
                    }
                    other => other,
                })
        })
        .collect::<Result<_>>()?;
    let mut text = serde_json::to_string_pretty(&RegressionFile { reports: &reports })?;
    text.push('\n');
    write_atomic(&config.layout().regression_json(), text.as_bytes())?;
    Ok(reports)
}

/// Probabilistic front view per instance from the final models of successful
/// mBOA runs. Instances without any such model are skipped with a warning.
pub fn cmd_pmf_view(config: &ExperimentConfig) -> Result<Vec<PathBuf>> {
    let layout = config.layout();
    let written: Vec<Option<PathBuf>> = config
        .instances()
        .par_iter()
        .map(|spec| {
            let records = load_records(config, Algorithm::Mboa, &spec.id)?;
            let models = records
                .iter()
                // A run that succeeds on its initial population never learns a model.
                .filter(|r| r.success && r.generations > 0)
                .map(|r| {
                    let path = layout.run_model(Algorithm::Mboa, &spec.id, r.run_index);
                    if !path.exists() {
                        return Err(Error::CorruptedState {
                            path,
                            detail: "successful run without a stored model".into(),
                        });
                    }
                    BayesianNetwork::load(&path)
                })
                .collect::<Result<Vec<_>>>()?;
            if models.is_empty() {
                warn!("{}: no model from a successful mBOA run, no pmf view", spec.id);
                return Ok(None);
            }
            let instance = load_instance(&layout, spec)?;
            let pareto = ensure_pareto(&layout, &instance)?;
            let rows = pareto_pmf_view(&models, &pareto)?;
            let path = layout.pmf_view(&spec.id);
            write_atomic(&path, pmf_view_csv(&rows).as_bytes())?;
            Ok(Some(path))
        })
        .collect::<Result<_>>()?;
    Ok(written.into_iter().flatten().collect())
}

/// Features, expected runtimes, regression and pmf views.
pub fn cmd_report(config: &ExperimentConfig) -> Result<()> {
    cmd_features(config)?;
    cmd_pmf_view(config)?;
    cmd_regress(config).map(drop)
}

/// The whole pipeline from instance generation to reports.
pub fn cmd_all(config: &ExperimentConfig) -> Result<()> {
    cmd_gen(config)?;
    cmd_enumerate(config)?;
    for algorithm in Algorithm::ALL {
        let summary = cmd_run(config, algorithm)?;
        info!("{algorithm}: {} runs executed, {} already on disk", summary.executed, summary.skipped);
    }
    cmd_report(config)
}
