//! Landscape features computed from an instance and its exact Pareto set.
//!
//! Distances are Hamming distances in decision space. Connectedness uses the
//! graph on Pareto-optimal solutions with an edge between solutions at most
//! one bit flip apart.

use std::fmt::Write as _;

use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumeration::{nondominated_indices, ParetoSet};
use crate::landscape::MnkInstance;
use crate::rng::{derive_seed, stream};
use crate::{Error, Result};

/// Fronts with more objectives than this use the Monte Carlo estimator.
pub const EXACT_HV_MAX_OBJECTIVES: usize = 4;
pub const DEFAULT_MC_SAMPLES: usize = 1_000_000;
pub const DEFAULT_MC_SEED: u64 = 0x6876;

const MC_CHUNK: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hypervolume {
    pub value: f64,
    /// Zero for exact values.
    pub std_error: f64,
    pub exact: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct HypervolumeConfig {
    pub mc_samples: usize,
    pub mc_seed: u64,
}

impl Default for HypervolumeConfig {
    fn default() -> Self {
        Self {
            mc_samples: DEFAULT_MC_SAMPLES,
            mc_seed: DEFAULT_MC_SEED,
        }
    }
}

/// Hypervolume dominated by `front` above `reference` (maximisation).
pub fn hypervolume<P: AsRef<[f64]>>(front: &[P], reference: &[f64]) -> Result<Hypervolume> {
    hypervolume_with(front, reference, &HypervolumeConfig::default())
}

pub fn hypervolume_with<P: AsRef<[f64]>>(
    front: &[P],
    reference: &[f64],
    config: &HypervolumeConfig,
) -> Result<Hypervolume> {
    if reference.len() <= EXACT_HV_MAX_OBJECTIVES {
        Ok(Hypervolume {
            value: hypervolume_exact(front, reference)?,
            std_error: 0.0,
            exact: true,
        })
    } else {
        hypervolume_monte_carlo(front, reference, config.mc_samples, config.mc_seed)
    }
}

fn translate<P: AsRef<[f64]>>(front: &[P], reference: &[f64]) -> Result<Vec<Vec<f64>>> {
    front
        .iter()
        .enumerate()
        .map(|(index, p)| {
            let p = p.as_ref();
            if p.len() != reference.len() {
                return Err(Error::LengthMismatch {
                    expected: reference.len(),
                    found: p.len(),
                });
            }
            p.iter()
                .zip(reference)
                .enumerate()
                .map(|(objective, (v, r))| {
                    if v < r {
                        Err(Error::PointBelowReference { index, objective })
                    } else {
                        Ok(v - r)
                    }
                })
                .collect()
        })
        .collect()
}

/// Exact hypervolume by recursive slicing along the last objective.
pub fn hypervolume_exact<P: AsRef<[f64]>>(front: &[P], reference: &[f64]) -> Result<f64> {
    let points = translate(front, reference)?;
    Ok(slice_volume(points, reference.len()))
}

fn slice_volume(mut points: Vec<Vec<f64>>, dims: usize) -> f64 {
    if points.is_empty() {
        return 0.0;
    }
    match dims {
        0 => 0.0,
        1 => points.iter().map(|p| p[0]).fold(0.0, f64::max),
        2 => {
            points.sort_by(|a, b| b[0].total_cmp(&a[0]).then(b[1].total_cmp(&a[1])));
            let mut area = 0.0;
            let mut top = 0.0;
            for p in &points {
                if p[1] > top {
                    area += p[0] * (p[1] - top);
                    top = p[1];
                }
            }
            area
        }
        _ => {
            let last = dims - 1;
            points.sort_by(|a, b| b[last].total_cmp(&a[last]));
            let mut volume = 0.0;
            let mut slab: Vec<Vec<f64>> = Vec::new();
            for i in 0..points.len() {
                slab.push(points[i][..last].to_vec());
                let lower = points.get(i + 1).map_or(0.0, |p| p[last]);
                let height = points[i][last] - lower;
                if height > 0.0 {
                    let keep = nondominated_indices(&slab);
                    slab = keep.into_iter().map(|k| std::mem::take(&mut slab[k])).collect();
                    volume += height * slice_volume(slab.clone(), last);
                }
            }
            volume
        }
    }
}

/// Monte Carlo hypervolume: uniform samples in the box spanned by the
/// reference point and the componentwise maximum of the front.
///
/// Samples are drawn in chunks of 65536 from per-chunk derived streams, so
/// the estimate depends only on `seed` and `samples`.
pub fn hypervolume_monte_carlo<P: AsRef<[f64]>>(
    front: &[P],
    reference: &[f64],
    samples: usize,
    seed: u64,
) -> Result<Hypervolume> {
    let mut points = translate(front, reference)?;
    if points.is_empty() || samples == 0 {
        return Ok(Hypervolume {
            value: 0.0,
            std_error: 0.0,
            exact: false,
        });
    }
    let dims = reference.len();
    let upper: Vec<f64> = (0..dims)
        .map(|d| points.iter().map(|p| p[d]).fold(0.0, f64::max))
        .collect();
    let box_volume: f64 = upper.iter().product();
    if box_volume == 0.0 {
        return Ok(Hypervolume {
            value: 0.0,
            std_error: 0.0,
            exact: false,
        });
    }
    // Large points first: they dominate most samples.
    points.sort_by(|a, b| {
        let sa: f64 = a.iter().sum();
        let sb: f64 = b.iter().sum();
        sb.total_cmp(&sa)
    });
    let chunks = samples.div_ceil(MC_CHUNK);
    let hits: usize = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = stream(derive_seed(seed, &[c as u64]));
            let count = MC_CHUNK.min(samples - c * MC_CHUNK);
            let mut u = vec![0.0; dims];
            let mut hits = 0;
            for _ in 0..count {
                for (ud, hi) in u.iter_mut().zip(&upper) {
                    *ud = rng.gen::<f64>() * hi;
                }
                if points
                    .iter()
                    .any(|p| p.iter().zip(&u).all(|(pv, uv)| pv >= uv))
                {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    let frac = hits as f64 / samples as f64;
    Ok(Hypervolume {
        value: box_volume * frac,
        std_error: box_volume * (frac * (1.0 - frac) / samples as f64).sqrt(),
        exact: false,
    })
}

fn packed(pareto: &ParetoSet) -> Vec<u64> {
    pareto.solutions.iter().map(|s| s.index()).collect()
}

#[inline]
fn hamming(a: u64, b: u64) -> u32 {
    (a ^ b).count_ones()
}

/// Mean and maximum Hamming distance over unordered pairs of Pareto-optimal
/// solutions; `(0, 0)` for a singleton.
pub fn pareto_distances(pareto: &ParetoSet) -> (f64, f64) {
    let bits = packed(pareto);
    let n = bits.len();
    if n < 2 {
        return (0.0, 0.0);
    }
    let (sum, max) = (0..n)
        .into_par_iter()
        .map(|i| {
            bits[i + 1..]
                .iter()
                .fold((0u64, 0u32), |(s, m), &b| {
                    let d = hamming(bits[i], b);
                    (s + u64::from(d), m.max(d))
                })
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1.max(b.1)));
    let pairs = (n * (n - 1) / 2) as f64;
    (sum as f64 / pairs, f64::from(max))
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Connectivity {
    pub nconnec: usize,
    pub lconnec: f64,
    pub kconnec: usize,
}

/// Component count and largest-component share of the distance-1 graph, and
/// the smallest distance threshold that connects the whole set.
///
/// The threshold is the bottleneck (longest edge) of a minimum spanning tree
/// of the complete Hamming-distance graph, found with Prim's algorithm.
pub fn connectivity(pareto: &ParetoSet) -> Connectivity {
    let bits = packed(pareto);
    let n = bits.len();
    if n <= 1 {
        return Connectivity {
            nconnec: n,
            lconnec: if n == 1 { 1.0 } else { 0.0 },
            kconnec: 0,
        };
    }
    let mut uf = UnionFind::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if hamming(bits[i], bits[j]) <= 1 {
                uf.union(i, j);
            }
        }
    }
    let mut sizes = std::collections::BTreeMap::new();
    for i in 0..n {
        *sizes.entry(uf.find(i)).or_insert(0usize) += 1;
    }
    let largest = sizes.values().copied().max().unwrap_or(0);

    let mut in_tree = vec![false; n];
    let mut best = vec![u32::MAX; n];
    best[0] = 0;
    let mut bottleneck = 0;
    for _ in 0..n {
        let next = (0..n)
            .filter(|&i| !in_tree[i])
            .min_by_key(|&i| best[i])
            .expect("vertices remain");
        in_tree[next] = true;
        bottleneck = bottleneck.max(best[next]);
        for i in 0..n {
            if !in_tree[i] {
                best[i] = best[i].min(hamming(bits[next], bits[i]));
            }
        }
    }
    Connectivity {
        nconnec: sizes.len(),
        lconnec: largest as f64 / n as f64,
        kconnec: bottleneck as usize,
    }
}

/// The nine landscape features of one instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub instance_id: String,
    pub m: usize,
    pub k: usize,
    pub npo: usize,
    pub hv: f64,
    pub avgd: f64,
    pub maxd: f64,
    pub nconnec: usize,
    pub lconnec: f64,
    pub kconnec: usize,
}

pub const FEATURE_CSV_HEADER: &str = "instance_id,m,k,npo,hv,avgd,maxd,nconnec,lconnec,kconnec";

impl FeatureVector {
    pub fn csv_row(&self) -> String {
        let mut row = String::new();
        write!(
            row,
            "{},{},{},{},{},{},{},{},{},{}",
            self.instance_id,
            self.m,
            self.k,
            self.npo,
            self.hv,
            self.avgd,
            self.maxd,
            self.nconnec,
            self.lconnec,
            self.kconnec
        )
        .unwrap();
        row
    }

    pub fn parse_csv_row(line: &str) -> Result<Self> {
        let f: Vec<&str> = line.trim_end().split(',').collect();
        let bad = |what: &str| Error::InvalidParameter(format!("features row {line:?}: {what}"));
        if f.len() != 10 {
            return Err(bad("expected 10 columns"));
        }
        let int = |s: &str| s.parse::<usize>().map_err(|_| bad(s));
        let real = |s: &str| s.parse::<f64>().map_err(|_| bad(s));
        Ok(Self {
            instance_id: f[0].to_string(),
            m: int(f[1])?,
            k: int(f[2])?,
            npo: int(f[3])?,
            hv: real(f[4])?,
            avgd: real(f[5])?,
            maxd: real(f[6])?,
            nconnec: int(f[7])?,
            lconnec: real(f[8])?,
            kconnec: int(f[9])?,
        })
    }
}

pub fn extract_features(instance: &MnkInstance, pareto: &ParetoSet) -> Result<FeatureVector> {
    extract_features_with(instance, pareto, &HypervolumeConfig::default())
}

/// Assembles all features; hypervolume uses the origin as reference point.
pub fn extract_features_with(
    instance: &MnkInstance,
    pareto: &ParetoSet,
    hv_config: &HypervolumeConfig,
) -> Result<FeatureVector> {
    if pareto.is_empty() {
        return Err(Error::EmptyInput("Pareto set is empty"));
    }
    if pareto.instance_id != instance.id
        || pareto.solutions.iter().any(|s| s.len() != instance.n_vars())
        || pareto.m_objectives() != instance.m_objectives()
    {
        return Err(Error::InvalidParameter(format!(
            "Pareto set {} does not belong to instance {}",
            pareto.instance_id, instance.id
        )));
    }
    let origin = vec![0.0; instance.m_objectives()];
    let hv = hypervolume_with(&pareto.objectives, &origin, hv_config)?;
    let (avgd, maxd) = pareto_distances(pareto);
    let conn = connectivity(pareto);
    Ok(FeatureVector {
        instance_id: instance.id.clone(),
        m: instance.m_objectives(),
        k: instance.k(),
        npo: pareto.len(),
        hv: hv.value,
        avgd,
        maxd,
        nconnec: conn.nconnec,
        lconnec: conn.lconnec,
        kconnec: conn.kconnec,
    })
}
