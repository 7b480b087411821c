//! The Bayesian-network EDA (mBOA) and an NSGA-III style baseline.
//!
//! Both algorithms count every objective evaluation and stop as soon as the
//! non-dominated members of their population form a `(1+epsilon)`-approximation
//! of the exact Pareto set, or when the evaluation budget is spent. The final
//! batch is shortened to the remaining budget, so a failed run always reports
//! exactly `t_max` evaluations.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rand::{Rng as _, RngCore};
use serde::{Deserialize, Serialize};

use crate::bayesnet::{self, BayesianNetwork, Dataset, DEFAULT_MAX_PARENTS};
use crate::enumeration::{epsilon_success, nondominated_sort, Individual, ParetoSet, RankedPopulation};
use crate::landscape::{MnkInstance, Solution};
use crate::rng::{stream, Rng};
use crate::{Error, Result};

pub const DEFAULT_POP_SIZE: usize = 100;
pub const DEFAULT_EPSILON: f64 = 0.1;
pub const DEFAULT_CROSSOVER_PROB: f64 = 0.8;
pub const DEFAULT_MUTATION_PROB: f64 = 1.0 / 500.0;

/// `floor(2^N / 10)`.
pub fn default_t_max(n_vars: usize) -> usize {
    (1usize << n_vars) / 10
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Mboa,
    Nsga3,
}

impl Algorithm {
    pub const ALL: [Algorithm; 2] = [Algorithm::Mboa, Algorithm::Nsga3];

    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::Mboa => "mboa",
            Algorithm::Nsga3 => "nsga3",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mboa" => Ok(Algorithm::Mboa),
            "nsga3" => Ok(Algorithm::Nsga3),
            other => Err(Error::InvalidParameter(format!("unknown algorithm {other:?}"))),
        }
    }
}

/// When the success test runs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuccessCadence {
    /// After the initial population and after each generation's survival step,
    /// on the non-dominated members of the population.
    #[default]
    PerBatch,
    /// After every single evaluation, on everything evaluated since the last
    /// survival step plus the population.
    PerEvaluation,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunParams {
    pub pop_size: usize,
    pub pgm_size: usize,
    pub sample_size: usize,
    pub t_max: usize,
    pub epsilon: f64,
    pub seed: u64,
    pub max_parents: usize,
    #[serde(default)]
    pub cadence: SuccessCadence,
}

impl RunParams {
    /// `P = 100`, `P_PGM = P/2`, `P_smp = 10P`, `t_max = floor(2^N/10)`.
    pub fn with_defaults(n_vars: usize, seed: u64) -> Self {
        Self {
            pop_size: DEFAULT_POP_SIZE,
            pgm_size: DEFAULT_POP_SIZE / 2,
            sample_size: 10 * DEFAULT_POP_SIZE,
            t_max: default_t_max(n_vars),
            epsilon: DEFAULT_EPSILON,
            seed,
            max_parents: DEFAULT_MAX_PARENTS,
            cadence: SuccessCadence::PerBatch,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidParameter(msg));
        if self.pop_size == 0 {
            return fail("pop_size must be positive".into());
        }
        if self.pgm_size == 0 || self.pgm_size > self.pop_size {
            return fail(format!("pgm_size {} must lie in 1..={}", self.pgm_size, self.pop_size));
        }
        if self.sample_size == 0 {
            return fail("sample_size must be positive".into());
        }
        if self.t_max < self.pop_size {
            return fail(format!("t_max {} is below pop_size {}", self.t_max, self.pop_size));
        }
        if !(self.epsilon >= 0.0) {
            return fail(format!("epsilon {} must be non-negative", self.epsilon));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct RunResult {
    pub success: bool,
    pub evaluations: usize,
    pub generations: usize,
    pub final_nondominated: Vec<Individual>,
    /// Last learned network (mBOA only, absent if no generation ran).
    pub final_model: Option<BayesianNetwork>,
}

/// On-disk summary of one run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance_id: String,
    pub algorithm: Algorithm,
    pub run_index: usize,
    pub success: bool,
    pub evaluations: usize,
    pub generations: usize,
}

impl RunRecord {
    pub fn from_result(instance_id: &str, algorithm: Algorithm, run_index: usize, result: &RunResult) -> Self {
        Self {
            instance_id: instance_id.to_string(),
            algorithm,
            run_index,
            success: result.success,
            evaluations: result.evaluations,
            generations: result.generations,
        }
    }
}

/// State handed to observers after initialisation and after every generation.
pub struct GenerationView<'a> {
    pub generation: usize,
    pub evaluations: usize,
    pub population: &'a RankedPopulation,
}

fn check_exact(instance: &MnkInstance, exact: &ParetoSet) -> Result<()> {
    if exact.is_empty()
        || exact.m_objectives() != instance.m_objectives()
        || exact.solutions.iter().any(|s| s.len() != instance.n_vars())
    {
        return Err(Error::InvalidParameter(format!(
            "Pareto set {} does not match instance {}",
            exact.instance_id, instance.id
        )));
    }
    Ok(())
}

/// Evaluation counter plus the per-evaluation success bookkeeping.
struct Tracker<'a> {
    instance: &'a MnkInstance,
    exact: &'a ParetoSet,
    epsilon: f64,
    cadence: SuccessCadence,
    evaluations: usize,
    covered: Vec<bool>,
}

impl<'a> Tracker<'a> {
    fn new(instance: &'a MnkInstance, exact: &'a ParetoSet, params: &RunParams) -> Self {
        Self {
            instance,
            exact,
            epsilon: params.epsilon,
            cadence: params.cadence,
            evaluations: 0,
            covered: vec![false; exact.len()],
        }
    }

    fn covers(&self, p: &[f64], c: &[f64]) -> bool {
        p.iter().zip(c).all(|(pm, cm)| *pm <= (1.0 + self.epsilon) * cm)
    }

    fn mark(&mut self, objectives: &[f64]) -> bool {
        for (flag, p) in self.covered.iter_mut().zip(&self.exact.objectives) {
            if !*flag && p.iter().zip(objectives).all(|(pm, cm)| *pm <= (1.0 + self.epsilon) * cm) {
                *flag = true;
            }
        }
        self.covered.iter().all(|&f| f)
    }

    /// Resets the per-evaluation coverage to what `population` covers.
    fn rebase(&mut self, population: &RankedPopulation) {
        if self.cadence != SuccessCadence::PerEvaluation {
            return;
        }
        let covered: Vec<bool> = self
            .exact
            .objectives
            .iter()
            .map(|p| population.first_front().any(|c| self.covers(p, &c.objectives)))
            .collect();
        self.covered = covered;
    }

    /// Evaluates `solutions` one by one. Returns the individuals and, in
    /// per-evaluation mode, whether success was reached (the remaining
    /// solutions are then left unevaluated).
    fn evaluate_batch(&mut self, solutions: Vec<Solution>) -> (Vec<Individual>, bool) {
        let mut out = Vec::with_capacity(solutions.len());
        for s in solutions {
            let z = self.instance.evaluate_bits(&s.bits);
            self.evaluations += 1;
            let done = self.cadence == SuccessCadence::PerEvaluation && self.mark(&z);
            out.push(Individual::new(s, z));
            if done {
                return (out, true);
            }
        }
        (out, false)
    }

    fn batch_success(&self, population: &RankedPopulation) -> Result<bool> {
        let front: Vec<&[f64]> = population.first_front().map(|i| &i.objectives[..]).collect();
        epsilon_success(&front, self.exact, self.epsilon)
    }
}

fn random_population(rng: &mut Rng, n_vars: usize, size: usize) -> Vec<Solution> {
    (0..size)
        .map(|_| Solution::new((0..n_vars).map(|_| rng.gen::<bool>()).collect()))
        .collect()
}

/// Binary tournaments with replacement: lower rank wins, then larger crowding
/// distance, then a fair coin.
pub fn binary_tournament(ranked: &RankedPopulation, count: usize, rng: &mut Rng) -> Vec<Solution> {
    let n = ranked.len();
    (0..count)
        .map(|_| {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            let winner = match ranked.compare(a, b) {
                Ordering::Less => a,
                Ordering::Greater => b,
                Ordering::Equal => {
                    if rng.gen::<bool>() {
                        a
                    } else {
                        b
                    }
                }
            };
            ranked.members[winner].solution.clone()
        })
        .collect()
}

/// Keeps the best `size` members by (rank, crowding), ties by position.
fn truncate(ranked: RankedPopulation, size: usize) -> Vec<Individual> {
    let mut order: Vec<usize> = (0..ranked.len()).collect();
    order.sort_by(|&a, &b| ranked.compare(a, b).then(a.cmp(&b)));
    order.truncate(size);
    order.sort_unstable();
    let mut members: Vec<Option<Individual>> = ranked.members.into_iter().map(Some).collect();
    order.into_iter().map(|i| members[i].take().unwrap()).collect()
}

fn finish(
    success: bool,
    tracker: &Tracker,
    generations: usize,
    population: &RankedPopulation,
    extra: &[Individual],
    final_model: Option<BayesianNetwork>,
) -> RunResult {
    let mut candidates: Vec<Individual> = population.first_front().cloned().collect();
    candidates.extend_from_slice(extra);
    let keep = crate::enumeration::nondominated_indices(
        &candidates.iter().map(|c| c.objectives.clone()).collect::<Vec<_>>(),
    );
    RunResult {
        success,
        evaluations: tracker.evaluations,
        generations,
        final_nondominated: keep.into_iter().map(|i| candidates[i].clone()).collect(),
        final_model,
    }
}

pub fn mboa_run(instance: &MnkInstance, exact: &ParetoSet, params: &RunParams) -> Result<RunResult> {
    mboa_run_observed(instance, exact, params, |_| {})
}

/// mBOA: binary tournament selection of `pgm_size` parents, K2 + Bayesian
/// estimates on them, `sample_size` new solutions by ancestral sampling, and
/// truncation of population plus samples back to `pop_size`.
pub fn mboa_run_observed(
    instance: &MnkInstance,
    exact: &ParetoSet,
    params: &RunParams,
    mut observe: impl FnMut(&GenerationView),
) -> Result<RunResult> {
    params.validate()?;
    check_exact(instance, exact)?;
    let n = instance.n_vars();
    let mut rng = stream(params.seed);
    let mut tracker = Tracker::new(instance, exact, params);

    let (initial, hit) = tracker.evaluate_batch(random_population(&mut rng, n, params.pop_size));
    let mut ranked = nondominated_sort(initial)?;
    observe(&GenerationView {
        generation: 0,
        evaluations: tracker.evaluations,
        population: &ranked,
    });
    if hit || tracker.batch_success(&ranked)? {
        return Ok(finish(true, &tracker, 0, &ranked, &[], None));
    }
    tracker.rebase(&ranked);

    let mut generation = 0;
    let mut model = None;
    while tracker.evaluations < params.t_max {
        let parents = binary_tournament(&ranked, params.pgm_size, &mut rng);
        let data = Dataset::from_solutions(n, &parents)?;
        let mut ordering: Vec<usize> = (0..n).collect();
        ordering.shuffle(&mut rng);
        let structure = bayesnet::k2_learn(&data, &ordering, params.max_parents)?;
        let cpts = bayesnet::fit_parameters(&structure, &data)?;
        let batch = params.sample_size.min(params.t_max - tracker.evaluations);
        let sampled = bayesnet::sample(&structure, &cpts, batch, rng.next_u64())?;
        model = Some(BayesianNetwork::new(structure, cpts)?);

        let (offspring, hit) = tracker.evaluate_batch(sampled.into_solutions());
        generation += 1;
        if hit {
            return Ok(finish(true, &tracker, generation, &ranked, &offspring, model));
        }
        if batch == params.sample_size {
            debug_assert_eq!(tracker.evaluations, params.pop_size + generation * params.sample_size);
        }
        let mut merged = ranked.members;
        merged.extend(offspring);
        ranked = nondominated_sort(truncate(nondominated_sort(merged)?, params.pop_size))?;
        observe(&GenerationView {
            generation,
            evaluations: tracker.evaluations,
            population: &ranked,
        });
        if tracker.batch_success(&ranked)? {
            return Ok(finish(true, &tracker, generation, &ranked, &[], model));
        }
        tracker.rebase(&ranked);
    }
    Ok(finish(false, &tracker, generation, &ranked, &[], model))
}

/// Das-Dennis divisions `(outer, inner)` for `m` objectives.
///
/// Uses the published layer settings for 3, 5, 8, 10 and 15 objectives;
/// otherwise the largest single layer with at most `pop_size` points, plus an
/// inner layer when the outer one has fewer divisions than objectives.
pub fn reference_divisions(m: usize, pop_size: usize) -> (usize, usize) {
    match m {
        3 => (12, 0),
        5 => (6, 0),
        8 | 10 => (3, 2),
        15 => (2, 1),
        _ => {
            let count = |h: usize| binomial(h + m - 1, m - 1);
            let mut outer = 1;
            while count(outer + 1) <= pop_size {
                outer += 1;
            }
            let mut inner = 0;
            if outer < m {
                while count(outer) + count(inner + 1) <= pop_size {
                    inner += 1;
                }
            }
            (outer, inner)
        }
    }
}

fn binomial(n: usize, k: usize) -> usize {
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Points of the unit simplex with coordinates in multiples of `1/h`.
pub fn das_dennis(m: usize, h: usize) -> Vec<Vec<f64>> {
    fn rec(m: usize, left: usize, h: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<f64>>) {
        if prefix.len() == m - 1 {
            prefix.push(left);
            out.push(prefix.iter().map(|&a| a as f64 / h as f64).collect());
            prefix.pop();
            return;
        }
        for a in (0..=left).rev() {
            prefix.push(a);
            rec(m, left - a, h, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if m == 0 || h == 0 {
        return out;
    }
    rec(m, h, h, &mut Vec::new(), &mut out);
    out
}

/// Reference directions: the outer layer plus, if requested, an inner layer
/// shrunk halfway towards the simplex centre.
pub fn reference_points(m: usize, pop_size: usize) -> Vec<Vec<f64>> {
    let (outer, inner) = reference_divisions(m, pop_size);
    let mut refs = das_dennis(m, outer);
    if inner > 0 {
        let centre = 0.5 / m as f64;
        refs.extend(
            das_dennis(m, inner)
                .into_iter()
                .map(|w| w.into_iter().map(|x| x / 2.0 + centre).collect()),
        );
    }
    refs
}

/// NSGA-III environmental selection of `size` members (objectives maximised).
fn environmental_selection(
    merged: Vec<Individual>,
    size: usize,
    refs: &[Vec<f64>],
    rng: &mut Rng,
) -> Result<Vec<Individual>> {
    let ranked = nondominated_sort(merged)?;
    let mut chosen: Vec<usize> = Vec::with_capacity(size);
    let mut last: Vec<usize> = Vec::new();
    for front in &ranked.fronts {
        if chosen.len() + front.len() <= size {
            chosen.extend(front);
            if chosen.len() == size {
                break;
            }
        } else {
            last = front.clone();
            break;
        }
    }
    if !last.is_empty() {
        niching(&ranked.members, &mut chosen, last, size, refs, rng);
    }
    chosen.sort_unstable();
    let mut members: Vec<Option<Individual>> = ranked.members.into_iter().map(Some).collect();
    Ok(chosen.into_iter().map(|i| members[i].take().unwrap()).collect())
}

fn niching(
    members: &[Individual],
    chosen: &mut Vec<usize>,
    mut last: Vec<usize>,
    size: usize,
    refs: &[Vec<f64>],
    rng: &mut Rng,
) {
    let m = members[0].objectives.len();
    let pool: Vec<usize> = chosen.iter().chain(&last).copied().collect();
    // Minimisation form.
    let cost = |i: usize, d: usize| -members[i].objectives[d];
    let ideal: Vec<f64> = (0..m)
        .map(|d| pool.iter().map(|&i| cost(i, d)).fold(f64::INFINITY, f64::min))
        .collect();
    let translated = |i: usize| -> Vec<f64> { (0..m).map(|d| cost(i, d) - ideal[d]).collect() };

    let extremes: Vec<Vec<f64>> = (0..m)
        .map(|axis| {
            let asf = |f: &[f64]| {
                f.iter()
                    .enumerate()
                    .map(|(d, v)| v / if d == axis { 1.0 } else { 1e-6 })
                    .fold(f64::NEG_INFINITY, f64::max)
            };
            let best = pool
                .iter()
                .copied()
                .min_by(|&a, &b| asf(&translated(a)).total_cmp(&asf(&translated(b))).then(a.cmp(&b)))
                .expect("pool is non-empty");
            translated(best)
        })
        .collect();
    let worst: Vec<f64> = (0..m)
        .map(|d| pool.iter().map(|&i| translated(i)[d]).fold(0.0, f64::max))
        .collect();
    let intercepts = hyperplane_intercepts(&extremes)
        .filter(|a| a.iter().all(|x| x.is_finite() && *x > 1e-10))
        .unwrap_or_else(|| worst.iter().map(|&w| if w > 1e-10 { w } else { 1.0 }).collect());

    let norms: Vec<f64> = refs.iter().map(|w| w.iter().map(|x| x * x).sum::<f64>()).collect();
    let associate = |i: usize| -> (usize, f64) {
        let f: Vec<f64> = translated(i)
            .into_iter()
            .zip(&intercepts)
            .map(|(v, a)| v / a)
            .collect();
        let mut best = (0, f64::INFINITY);
        for (j, w) in refs.iter().enumerate() {
            let t = f.iter().zip(w).map(|(a, b)| a * b).sum::<f64>() / norms[j];
            let d2: f64 = f.iter().zip(w).map(|(a, b)| (a - t * b).powi(2)).sum();
            if d2 < best.1 {
                best = (j, d2);
            }
        }
        (best.0, best.1.sqrt())
    };

    let mut niche = vec![0usize; refs.len()];
    for &i in chosen.iter() {
        niche[associate(i).0] += 1;
    }
    let mut last_assoc: Vec<(usize, usize, f64)> = last
        .drain(..)
        .map(|i| {
            let (j, d) = associate(i);
            (i, j, d)
        })
        .collect();
    let mut active = vec![true; refs.len()];
    while chosen.len() < size {
        let min_count = (0..refs.len())
            .filter(|&j| active[j])
            .map(|j| niche[j])
            .min()
            .expect("a reference point stays active while candidates remain");
        let ties: Vec<usize> = (0..refs.len())
            .filter(|&j| active[j] && niche[j] == min_count)
            .collect();
        let j = ties[rng.gen_range(0..ties.len())];
        let members_j: Vec<usize> = (0..last_assoc.len())
            .filter(|&k| last_assoc[k].1 == j)
            .collect();
        if members_j.is_empty() {
            active[j] = false;
            continue;
        }
        let pick = if niche[j] == 0 {
            *members_j
                .iter()
                .min_by(|&&a, &&b| last_assoc[a].2.total_cmp(&last_assoc[b].2).then(a.cmp(&b)))
                .unwrap()
        } else {
            members_j[rng.gen_range(0..members_j.len())]
        };
        chosen.push(last_assoc.remove(pick).0);
        niche[j] += 1;
    }
}

/// Intercepts of the hyperplane through the extreme points, if well defined.
fn hyperplane_intercepts(extremes: &[Vec<f64>]) -> Option<Vec<f64>> {
    let m = extremes.len();
    let e = DMatrix::from_fn(m, m, |r, c| extremes[r][c]);
    let b = e.lu().solve(&DVector::from_element(m, 1.0))?;
    Some(b.iter().map(|&x| 1.0 / x).collect())
}

fn uniform_crossover(a: &Solution, b: &Solution, rng: &mut Rng) -> (Solution, Solution) {
    let (mut c1, mut c2) = (a.clone(), b.clone());
    for i in 0..a.len() {
        if rng.gen::<bool>() {
            std::mem::swap(&mut c1.bits[i], &mut c2.bits[i]);
        }
    }
    (c1, c2)
}

fn bit_flip(s: &mut Solution, pm: f64, rng: &mut Rng) {
    for b in s.bits.iter_mut() {
        if rng.gen::<f64>() < pm {
            *b = !*b;
        }
    }
}

pub fn nsga3_run(instance: &MnkInstance, exact: &ParetoSet, params: &RunParams, pc: f64, pm: f64) -> Result<RunResult> {
    nsga3_run_observed(instance, exact, params, pc, pm, |_| {})
}

/// Generational NSGA-III: binary tournament mating, uniform crossover with
/// probability `pc`, per-bit flip mutation with probability `pm`, and
/// reference-point niching on the last accepted front.
pub fn nsga3_run_observed(
    instance: &MnkInstance,
    exact: &ParetoSet,
    params: &RunParams,
    pc: f64,
    pm: f64,
    mut observe: impl FnMut(&GenerationView),
) -> Result<RunResult> {
    params.validate()?;
    check_exact(instance, exact)?;
    for (name, p) in [("pc", pc), ("pm", pm)] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!("{name} = {p} outside [0,1]")));
        }
    }
    let n = instance.n_vars();
    let refs = reference_points(instance.m_objectives(), params.pop_size);
    let mut rng = stream(params.seed);
    let mut tracker = Tracker::new(instance, exact, params);

    let (initial, hit) = tracker.evaluate_batch(random_population(&mut rng, n, params.pop_size));
    let mut ranked = nondominated_sort(initial)?;
    observe(&GenerationView {
        generation: 0,
        evaluations: tracker.evaluations,
        population: &ranked,
    });
    if hit || tracker.batch_success(&ranked)? {
        return Ok(finish(true, &tracker, 0, &ranked, &[], None));
    }
    tracker.rebase(&ranked);

    let mut generation = 0;
    while tracker.evaluations < params.t_max {
        let count = params.pop_size.min(params.t_max - tracker.evaluations);
        let mut children = Vec::with_capacity(count);
        while children.len() < count {
            let mates = binary_tournament(&ranked, 2, &mut rng);
            let (mut c1, mut c2) = if rng.gen::<f64>() < pc {
                uniform_crossover(&mates[0], &mates[1], &mut rng)
            } else {
                (mates[0].clone(), mates[1].clone())
            };
            bit_flip(&mut c1, pm, &mut rng);
            bit_flip(&mut c2, pm, &mut rng);
            children.push(c1);
            if children.len() < count {
                children.push(c2);
            }
        }
        let (offspring, hit) = tracker.evaluate_batch(children);
        generation += 1;
        if hit {
            return Ok(finish(true, &tracker, generation, &ranked, &offspring, None));
        }
        let mut merged = ranked.members;
        merged.extend(offspring);
        let survivors = environmental_selection(merged, params.pop_size, &refs, &mut rng)?;
        ranked = nondominated_sort(survivors)?;
        observe(&GenerationView {
            generation,
            evaluations: tracker.evaluations,
            population: &ranked,
        });
        if tracker.batch_success(&ranked)? {
            return Ok(finish(true, &tracker, generation, &ranked, &[], None));
        }
        tracker.rebase(&ranked);
    }
    Ok(finish(false, &tracker, generation, &ranked, &[], None))
}

/// Dispatches on `algorithm` with the given variation rates for the baseline.
pub fn run_algorithm(
    algorithm: Algorithm,
    instance: &MnkInstance,
    exact: &ParetoSet,
    params: &RunParams,
    pc: f64,
    pm: f64,
) -> Result<RunResult> {
    match algorithm {
        Algorithm::Mboa => mboa_run(instance, exact, params),
        Algorithm::Nsga3 => nsga3_run(instance, exact, params, pc, pm),
    }
}
