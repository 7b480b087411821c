//! Discrete Bayesian networks over binary decision variables.
//!
//! Structure is learned with K2 (greedy parent addition along a variable
//! ordering, scored by the Cooper-Herskovits marginal likelihood with uniform
//! Dirichlet priors). Parameters are the Bayesian estimates
//! `theta_jk = (1 + N_jk) / (s + N_j)` with `s = 2` states per variable.
//!
//! Conditional tables are indexed by the parent configuration `j`, which packs
//! the parent values with the first (lowest-index) parent as the most
//! significant bit.

use std::fs;
use std::path::Path;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::landscape::Solution;
use crate::rng::{derive_seed, stream};
use crate::{Error, Result};

pub const DEFAULT_MAX_PARENTS: usize = 3;

const STATES: usize = 2;

/// Observations of the `n_vars` binary variables.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    n_vars: usize,
    rows: Vec<Vec<bool>>,
}

impl Dataset {
    pub fn new(n_vars: usize, rows: Vec<Vec<bool>>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != n_vars) {
            return Err(Error::LengthMismatch {
                expected: n_vars,
                found: r.len(),
            });
        }
        Ok(Self { n_vars, rows })
    }

    pub fn from_solutions<'a>(n_vars: usize, solutions: impl IntoIterator<Item = &'a Solution>) -> Result<Self> {
        Self::new(n_vars, solutions.into_iter().map(|s| s.bits.clone()).collect())
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn rows(&self) -> &[Vec<bool>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn into_solutions(self) -> Vec<Solution> {
        self.rows.into_iter().map(Solution::new).collect()
    }
}

/// DAG over the variables together with the ordering it respects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BnStructure {
    n_vars: usize,
    parents: Vec<Vec<usize>>,
    ordering: Vec<usize>,
}

impl BnStructure {
    /// Checks that `ordering` is a permutation and that every parent precedes
    /// its child in it (which makes the graph acyclic).
    pub fn new(parents: Vec<Vec<usize>>, ordering: Vec<usize>) -> Result<Self> {
        let n_vars = parents.len();
        let position = check_ordering(&ordering, n_vars)?;
        let mut parents = parents;
        for (child, ps) in parents.iter_mut().enumerate() {
            ps.sort_unstable();
            if ps.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidParameter(format!("variable {child} has a repeated parent")));
            }
            if let Some(&p) = ps.iter().find(|&&p| p >= n_vars || position[p] >= position[child]) {
                return Err(Error::InvalidParameter(format!(
                    "parent {p} of variable {child} does not precede it in the ordering"
                )));
            }
        }
        Ok(Self {
            n_vars,
            parents,
            ordering,
        })
    }

    pub fn empty(n_vars: usize) -> Self {
        Self {
            n_vars,
            parents: vec![Vec::new(); n_vars],
            ordering: (0..n_vars).collect(),
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn parents(&self) -> &[Vec<usize>] {
        &self.parents
    }

    pub fn ordering(&self) -> &[usize] {
        &self.ordering
    }

    pub fn edge_count(&self) -> usize {
        self.parents.iter().map(Vec::len).sum()
    }

    fn config_index(&self, var: usize, bits: &[bool]) -> usize {
        self.parents[var]
            .iter()
            .fold(0, |acc, &p| (acc << 1) | usize::from(bits[p]))
    }
}

fn check_ordering(ordering: &[usize], n_vars: usize) -> Result<Vec<usize>> {
    if ordering.len() != n_vars {
        return Err(Error::InvalidOrdering(format!(
            "expected {n_vars} entries, found {}",
            ordering.len()
        )));
    }
    let mut position = vec![usize::MAX; n_vars];
    for (i, &v) in ordering.iter().enumerate() {
        if v >= n_vars || position[v] != usize::MAX {
            return Err(Error::InvalidOrdering(format!(
                "entry {v} at position {i} is out of range or repeated"
            )));
        }
        position[v] = i;
    }
    Ok(position)
}

/// Conditional probability tables: `tables[var][j][k] = P(x_var = k | config j)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cpts {
    pub tables: Vec<Vec<[f64; 2]>>,
}

impl Cpts {
    /// Uniform tables for `structure`.
    pub fn uniform(structure: &BnStructure) -> Self {
        Self {
            tables: structure
                .parents
                .iter()
                .map(|ps| vec![[0.5, 0.5]; 1 << ps.len()])
                .collect(),
        }
    }

    fn check(&self, structure: &BnStructure) -> Result<()> {
        if self.tables.len() != structure.n_vars {
            return Err(Error::ArityMismatch(format!(
                "{} tables for {} variables",
                self.tables.len(),
                structure.n_vars
            )));
        }
        for (v, (t, ps)) in self.tables.iter().zip(&structure.parents).enumerate() {
            if t.len() != 1 << ps.len() {
                return Err(Error::ArityMismatch(format!(
                    "variable {v}: {} rows for {} parents",
                    t.len(),
                    ps.len()
                )));
            }
        }
        Ok(())
    }
}

/// Structure plus parameters, as exported to JSON.
#[derive(Clone, Debug, PartialEq)]
pub struct BayesianNetwork {
    pub structure: BnStructure,
    pub cpts: Cpts,
}

#[derive(Serialize, Deserialize)]
struct NetworkFile {
    ordering: Vec<usize>,
    parents: Vec<Vec<usize>>,
    cpts: Vec<Vec<[f64; 2]>>,
}

impl BayesianNetwork {
    pub fn new(structure: BnStructure, cpts: Cpts) -> Result<Self> {
        cpts.check(&structure)?;
        Ok(Self { structure, cpts })
    }

    pub fn to_json(&self) -> Result<String> {
        let file = NetworkFile {
            ordering: self.structure.ordering.clone(),
            parents: self.structure.parents.clone(),
            cpts: self.cpts.tables.clone(),
        };
        let mut text = serde_json::to_string(&file)?;
        text.push('\n');
        Ok(text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: NetworkFile = serde_json::from_str(text)?;
        let structure = BnStructure::new(file.parents, file.ordering)?;
        Self::new(structure, Cpts { tables: file.cpts })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text).map_err(|e| Error::MalformedFile {
            path: path.to_path_buf(),
            detail: e.to_string(),
        })
    }

    pub fn joint_pmf(&self, x: &Solution) -> Result<f64> {
        joint_pmf(&self.structure, &self.cpts, x)
    }
}

fn check_arity(structure: &BnStructure, n_vars: usize) -> Result<()> {
    if structure.n_vars != n_vars {
        return Err(Error::ArityMismatch(format!(
            "structure has {} variables, data has {n_vars}",
            structure.n_vars
        )));
    }
    Ok(())
}

/// Counts `N_jk` for one family: `counts[j][k]`.
fn family_counts(data: &Dataset, child: usize, parents: &[usize]) -> Vec<[u32; 2]> {
    let mut counts = vec![[0u32; 2]; 1 << parents.len()];
    for row in &data.rows {
        let j = parents.iter().fold(0, |acc, &p| (acc << 1) | usize::from(row[p]));
        counts[j][usize::from(row[child])] += 1;
    }
    counts
}

/// Bayesian estimates `(1 + N_jk) / (2 + N_j)`.
pub fn fit_parameters(structure: &BnStructure, data: &Dataset) -> Result<Cpts> {
    check_arity(structure, data.n_vars)?;
    let tables = (0..structure.n_vars)
        .map(|v| {
            family_counts(data, v, &structure.parents[v])
                .into_iter()
                .map(|[n0, n1]| {
                    let total = f64::from(n0 + n1) + STATES as f64;
                    [(1.0 + f64::from(n0)) / total, (1.0 + f64::from(n1)) / total]
                })
                .collect()
        })
        .collect();
    Ok(Cpts { tables })
}

/// `ln(n!)` for `n` in `0..=max`.
fn ln_factorials(max: usize) -> Vec<f64> {
    let mut table = Vec::with_capacity(max + 1);
    let mut acc = 0.0;
    table.push(0.0);
    for i in 1..=max {
        acc += (i as f64).ln();
        table.push(acc);
    }
    table
}

fn family_score_with(lnf: &[f64], data: &Dataset, child: usize, parents: &[usize]) -> f64 {
    // ln[(s-1)! / (N_j + s - 1)!] + sum_k ln(N_jk!) with s = 2.
    family_counts(data, child, parents)
        .into_iter()
        .map(|[n0, n1]| {
            let (n0, n1) = (n0 as usize, n1 as usize);
            lnf[n0] + lnf[n1] - lnf[n0 + n1 + 1]
        })
        .sum()
}

/// Log K2 score of one family.
pub fn k2_family_score(data: &Dataset, child: usize, parents: &[usize]) -> f64 {
    family_score_with(&ln_factorials(data.len() + 1), data, child, parents)
}

/// Log K2 score of a whole structure (sum over families).
pub fn k2_score(structure: &BnStructure, data: &Dataset) -> Result<f64> {
    check_arity(structure, data.n_vars)?;
    let lnf = ln_factorials(data.len() + 1);
    Ok((0..structure.n_vars)
        .map(|v| family_score_with(&lnf, data, v, &structure.parents[v]))
        .sum())
}

/// Greedy K2 structure search.
///
/// Each variable, taken in `ordering`, repeatedly gains the predecessor that
/// raises its family score most, until no candidate strictly improves the
/// score or `max_parents` is reached. Equal scores go to the lowest variable
/// index.
pub fn k2_learn(data: &Dataset, ordering: &[usize], max_parents: usize) -> Result<BnStructure> {
    let n = data.n_vars;
    check_ordering(ordering, n)?;
    let lnf = ln_factorials(data.len() + 1);
    let mut parents: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (pos, &child) in ordering.iter().enumerate() {
        let mut current = family_score_with(&lnf, data, child, &[]);
        let mut chosen: Vec<usize> = Vec::new();
        let mut candidates: Vec<usize> = ordering[..pos].to_vec();
        candidates.sort_unstable();
        while chosen.len() < max_parents {
            let mut best: Option<(usize, f64)> = None;
            for &c in &candidates {
                if chosen.contains(&c) {
                    continue;
                }
                let mut trial = chosen.clone();
                trial.push(c);
                trial.sort_unstable();
                let score = family_score_with(&lnf, data, child, &trial);
                if best.map_or(true, |(_, b)| score > b) {
                    best = Some((c, score));
                }
            }
            match best {
                Some((c, score)) if score > current => {
                    debug_assert!(score >= current);
                    chosen.push(c);
                    chosen.sort_unstable();
                    current = score;
                }
                _ => break,
            }
        }
        parents[child] = chosen;
    }
    Ok(BnStructure {
        n_vars: n,
        parents,
        ordering: ordering.to_vec(),
    })
}

/// `ln p(x)` under the factorised joint distribution.
pub fn log_joint_pmf(structure: &BnStructure, cpts: &Cpts, x: &Solution) -> Result<f64> {
    check_arity(structure, x.len())?;
    cpts.check(structure)?;
    Ok((0..structure.n_vars)
        .map(|v| {
            let j = structure.config_index(v, &x.bits);
            cpts.tables[v][j][usize::from(x.bits[v])].ln()
        })
        .sum())
}

pub fn joint_pmf(structure: &BnStructure, cpts: &Cpts, x: &Solution) -> Result<f64> {
    log_joint_pmf(structure, cpts, x).map(f64::exp)
}

/// Ancestral (probabilistic logic) sampling along the structure's ordering.
///
/// Row `r` draws from its own stream `derive_seed(seed, &[r])`.
pub fn sample(structure: &BnStructure, cpts: &Cpts, count: usize, seed: u64) -> Result<Dataset> {
    cpts.check(structure)?;
    let rows = (0..count)
        .map(|r| {
            let mut rng = stream(derive_seed(seed, &[r as u64]));
            let mut bits = vec![false; structure.n_vars];
            for &v in &structure.ordering {
                let j = structure.config_index(v, &bits);
                bits[v] = rng.gen::<f64>() < cpts.tables[v][j][1];
            }
            bits
        })
        .collect();
    Ok(Dataset {
        n_vars: structure.n_vars,
        rows,
    })
}
