//! Pareto dominance, exhaustive Pareto sets and non-dominated sorting.
//!
//! All objectives are maximised.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::landscape::{MnkInstance, ObjectiveVector, Solution};
use crate::{Error, Result};

pub const DEFAULT_ENUMERATION_CAP: usize = 24;

const CHUNK_BITS: usize = 14;

/// A solution paired with its objective values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Individual {
    pub solution: Solution,
    pub objectives: ObjectiveVector,
}

impl Individual {
    pub fn new(solution: Solution, objectives: ObjectiveVector) -> Self {
        Self {
            solution,
            objectives,
        }
    }
}

/// `a` dominates `b`: no worse anywhere, strictly better somewhere.
pub fn dominates(a: &[f64], b: &[f64]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(dominates_unchecked(a, b))
}

#[inline]
pub(crate) fn dominates_unchecked(a: &[f64], b: &[f64]) -> bool {
    let mut strict = false;
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return false;
        }
        if x > y {
            strict = true;
        }
    }
    strict
}

/// Indices of the mutually non-dominated members of `points`, ascending.
///
/// Points are swept in decreasing objective sum (ties: lexicographically
/// larger first), so every dominator is visited before the points it
/// dominates and each point only needs checking against the archive built so
/// far. Points with equal objective vectors are all kept.
pub fn nondominated_indices<P: AsRef<[f64]>>(points: &[P]) -> Vec<usize> {
    let sums: Vec<f64> = points.iter().map(|p| p.as_ref().iter().sum()).collect();
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| {
        sums[j]
            .total_cmp(&sums[i])
            .then_with(|| lex_cmp(points[j].as_ref(), points[i].as_ref()))
            .then(i.cmp(&j))
    });
    let mut archive: Vec<usize> = Vec::new();
    for i in order {
        let p = points[i].as_ref();
        if !archive
            .iter()
            .any(|&a| dominates_unchecked(points[a].as_ref(), p))
        {
            archive.push(i);
        }
    }
    archive.sort_unstable();
    archive
}

fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// The exact Pareto-optimal set of an instance.
#[derive(Clone, Debug, PartialEq)]
pub struct ParetoSet {
    pub instance_id: String,
    pub solutions: Vec<Solution>,
    pub objectives: Vec<ObjectiveVector>,
}

impl ParetoSet {
    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn m_objectives(&self) -> usize {
        self.objectives.first().map_or(0, |o| o.len())
    }

    /// CSV with columns `bitstring,z1,...,zM`, one row per solution.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("bitstring");
        for m in 1..=self.m_objectives() {
            write!(out, ",z{m}").unwrap();
        }
        out.push('\n');
        for (s, z) in self.solutions.iter().zip(&self.objectives) {
            write!(out, "{s}").unwrap();
            for v in z.iter() {
                write!(out, ",{v}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        let file = ParetoFile {
            instance_id: self.instance_id.clone(),
            solutions: self.solutions.iter().map(|s| s.to_string()).collect(),
            objectives: self.objectives.iter().map(|o| o.0.clone()).collect(),
        };
        let mut text = serde_json::to_string_pretty(&file)?;
        text.push('\n');
        Ok(text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ParetoFile = serde_json::from_str(text)?;
        if file.solutions.len() != file.objectives.len() {
            return Err(Error::LengthMismatch {
                expected: file.solutions.len(),
                found: file.objectives.len(),
            });
        }
        Ok(Self {
            instance_id: file.instance_id,
            solutions: file
                .solutions
                .iter()
                .map(|s| Solution::parse(s))
                .collect::<Result<_>>()?,
            objectives: file.objectives.into_iter().map(ObjectiveVector).collect(),
        })
    }

    pub fn save(&self, json_path: &Path, csv_path: &Path) -> Result<()> {
        fs::write(json_path, self.to_json()?).map_err(|e| Error::io(json_path, e))?;
        fs::write(csv_path, self.to_csv()).map_err(|e| Error::io(csv_path, e))
    }

    pub fn load(json_path: &Path) -> Result<Self> {
        let text = fs::read_to_string(json_path).map_err(|e| Error::io(json_path, e))?;
        Self::from_json(&text).map_err(|e| Error::MalformedFile {
            path: json_path.to_path_buf(),
            detail: e.to_string(),
        })
    }
}

#[derive(Serialize, Deserialize)]
struct ParetoFile {
    instance_id: String,
    solutions: Vec<String>,
    objectives: Vec<Vec<f64>>,
}

/// Enumerates all `2^N` solutions with the default cap.
pub fn enumerate_pareto(instance: &MnkInstance) -> Result<ParetoSet> {
    enumerate_pareto_with_cap(instance, DEFAULT_ENUMERATION_CAP)
}

/// Exact Pareto set, ordered lexicographically by bitstring.
///
/// The space is split into chunks whose local non-dominated sets are found in
/// parallel and then merged; the result does not depend on scheduling.
pub fn enumerate_pareto_with_cap(instance: &MnkInstance, cap: usize) -> Result<ParetoSet> {
    let n = instance.n_vars();
    if n > cap || n >= 64 {
        return Err(Error::CapExceeded { n_vars: n, cap });
    }
    let total = 1u64 << n;
    let chunk = 1u64 << CHUNK_BITS.min(n);
    let locals: Vec<(Vec<u64>, Vec<ObjectiveVector>)> = (0..total / chunk)
        .into_par_iter()
        .map(|c| {
            let start = c * chunk;
            let objs: Vec<ObjectiveVector> = (start..start + chunk)
                .map(|idx| instance.evaluate_bits(&Solution::from_index(idx, n).bits))
                .collect();
            let keep = nondominated_indices(&objs);
            (
                keep.iter().map(|&i| start + i as u64).collect(),
                keep.into_iter().map(|i| objs[i].clone()).collect(),
            )
        })
        .collect();
    let (indices, objs): (Vec<u64>, Vec<ObjectiveVector>) = locals
        .into_iter()
        .flat_map(|(i, o)| i.into_iter().zip(o))
        .unzip();
    let keep = nondominated_indices(&objs);
    Ok(ParetoSet {
        instance_id: instance.id.clone(),
        solutions: keep
            .iter()
            .map(|&i| Solution::from_index(indices[i], n))
            .collect(),
        objectives: keep.into_iter().map(|i| objs[i].clone()).collect(),
    })
}

/// A population partitioned into non-dominated fronts.
#[derive(Clone, Debug)]
pub struct RankedPopulation {
    pub members: Vec<Individual>,
    /// Front index per member, 1 = best.
    pub rank: Vec<usize>,
    /// Crowding distance per member within its front.
    pub crowding: Vec<f64>,
    /// Member indices per front, best front first.
    pub fronts: Vec<Vec<usize>>,
}

impl RankedPopulation {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Rank-then-crowding comparison used by tournaments and truncation.
    /// `Less` means `a` is preferred.
    pub fn compare(&self, a: usize, b: usize) -> Ordering {
        self.rank[a]
            .cmp(&self.rank[b])
            .then_with(|| self.crowding[b].total_cmp(&self.crowding[a]))
    }

    pub fn first_front(&self) -> impl Iterator<Item = &Individual> {
        self.fronts[0].iter().map(move |&i| &self.members[i])
    }
}

/// Fast non-dominated sort with per-front crowding distances.
pub fn nondominated_sort(pop: Vec<Individual>) -> Result<RankedPopulation> {
    if pop.is_empty() {
        return Err(Error::EmptyInput("nondominated_sort needs a population"));
    }
    let m = pop[0].objectives.len();
    if let Some(bad) = pop.iter().find(|p| p.objectives.len() != m) {
        return Err(Error::LengthMismatch {
            expected: m,
            found: bad.objectives.len(),
        });
    }
    let fronts = sort_fronts(&pop);
    let mut rank = vec![0; pop.len()];
    let mut crowding = vec![0.0; pop.len()];
    for (f, front) in fronts.iter().enumerate() {
        for &i in front {
            rank[i] = f + 1;
        }
        let objs: Vec<&[f64]> = front.iter().map(|&i| &pop[i].objectives[..]).collect();
        for (&i, d) in front.iter().zip(crowding_distance(&objs)) {
            crowding[i] = d;
        }
    }
    Ok(RankedPopulation {
        members: pop,
        rank,
        crowding,
        fronts,
    })
}

fn sort_fronts(pop: &[Individual]) -> Vec<Vec<usize>> {
    let n = pop.len();
    let mut dominated_by_count = vec![0usize; n];
    let mut dominates_list: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (&pop[i].objectives[..], &pop[j].objectives[..]);
            if dominates_unchecked(a, b) {
                dominates_list[i].push(j);
                dominated_by_count[j] += 1;
            } else if dominates_unchecked(b, a) {
                dominates_list[j].push(i);
                dominated_by_count[i] += 1;
            }
        }
    }
    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| dominated_by_count[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            for &j in &dominates_list[i] {
                dominated_by_count[j] -= 1;
                if dominated_by_count[j] == 0 {
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        fronts.push(current);
        current = next;
    }
    fronts
}

/// Crowding distance of each point of one front.
///
/// Each objective contributes `(next - prev) / (max - min)` over the points
/// sorted by that objective and the two extremes get `+inf`. An objective
/// with zero range contributes nothing, extremes included.
pub fn crowding_distance(front: &[&[f64]]) -> Vec<f64> {
    let n = front.len();
    if n <= 2 {
        return vec![f64::INFINITY; n];
    }
    let m = front[0].len();
    let mut dist = vec![0.0; n];
    let mut order: Vec<usize> = (0..n).collect();
    for obj in 0..m {
        order.sort_by(|&a, &b| front[a][obj].total_cmp(&front[b][obj]).then(a.cmp(&b)));
        let lo = front[order[0]][obj];
        let hi = front[order[n - 1]][obj];
        let range = hi - lo;
        if range <= 0.0 {
            continue;
        }
        dist[order[0]] = f64::INFINITY;
        dist[order[n - 1]] = f64::INFINITY;
        for w in 1..n - 1 {
            let i = order[w];
            if dist[i].is_finite() {
                dist[i] += (front[order[w + 1]][obj] - front[order[w - 1]][obj]) / range;
            }
        }
    }
    dist
}

/// Whether `candidates` form a `(1+epsilon)`-approximation of the exact
/// Pareto front: every Pareto vector `p` has a candidate `c` with
/// `p_m <= (1+epsilon) * c_m` for all `m`.
pub fn epsilon_success<C: AsRef<[f64]>>(candidates: &[C], exact: &ParetoSet, epsilon: f64) -> Result<bool> {
    if !(epsilon >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "epsilon = {epsilon} must be non-negative"
        )));
    }
    let m = exact.m_objectives();
    if let Some(c) = candidates.iter().find(|c| c.as_ref().len() != m) {
        return Err(Error::LengthMismatch {
            expected: m,
            found: c.as_ref().len(),
        });
    }
    let factor = 1.0 + epsilon;
    Ok(exact.objectives.iter().all(|p| {
        candidates
            .iter()
            .any(|c| p.iter().zip(c.as_ref()).all(|(pm, cm)| *pm <= factor * cm))
    }))
}
