//! Brute-force reference implementations shared by the integration tests.
//! Nothing in here calls into the library's algorithms.
#![allow(dead_code)]

use mnkbench::landscape::{MnkInstance, NkComponent};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every objective equals popcount(x)/N, so all-ones is the only optimum.
pub fn popcount_instance(n: usize, m: usize) -> MnkInstance {
    let comps = (0..m)
        .map(|_| NkComponent::new(vec![vec![]; n], vec![vec![0.0, 1.0]; n]).unwrap())
        .collect();
    MnkInstance::from_components("popcount", 0, comps).unwrap()
}

pub fn bits_of(index: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| index >> (n - 1 - i) & 1 == 1).collect()
}

pub fn bitstring(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Direct table lookup: own bit first, then neighbours, most significant first.
pub fn oracle_eval(inst: &MnkInstance, bits: &[bool]) -> Vec<f64> {
    let n = bits.len();
    inst.components()
        .iter()
        .map(|c| {
            let mut total = 0.0;
            for v in 0..n {
                let mut idx = bits[v] as usize;
                for &j in &c.neighbors()[v] {
                    idx = idx * 2 + bits[j] as usize;
                }
                total += c.tables()[v][idx];
            }
            total / n as f64
        })
        .collect()
}

pub fn whole_space(inst: &MnkInstance) -> Vec<(Vec<bool>, Vec<f64>)> {
    let n = inst.n_vars();
    (0..1u64 << n)
        .map(|i| {
            let b = bits_of(i, n);
            let z = oracle_eval(inst, &b);
            (b, z)
        })
        .collect()
}

pub fn oracle_dominates(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y) && a.iter().zip(b).any(|(x, y)| x > y)
}

/// Double loop over the whole space; bitstrings in lexicographic order.
pub fn pairwise_pareto(inst: &MnkInstance) -> Vec<(String, Vec<f64>)> {
    let space = whole_space(inst);
    let mut out = Vec::new();
    for (b, z) in &space {
        if !space.iter().any(|(_, w)| oracle_dominates(w, z)) {
            out.push((bitstring(b), z.clone()));
        }
    }
    out
}

/// Front numbers (1-based) by repeatedly removing the non-dominated layer.
pub fn peeling_ranks(points: &[Vec<f64>]) -> Vec<usize> {
    let mut rank = vec![0; points.len()];
    let mut left: Vec<usize> = (0..points.len()).collect();
    let mut front = 1;
    while !left.is_empty() {
        let layer: Vec<usize> = left
            .iter()
            .copied()
            .filter(|&i| !left.iter().any(|&j| oracle_dominates(&points[j], &points[i])))
            .collect();
        for &i in &layer {
            rank[i] = front;
        }
        left.retain(|i| !layer.contains(i));
        front += 1;
    }
    rank
}

/// Every point of the space has a candidate within a factor `1+eps` in each objective.
pub fn full_space_eps(candidates: &[Vec<f64>], space: &[Vec<f64>], eps: f64) -> bool {
    space.iter().all(|y| {
        candidates
            .iter()
            .any(|c| y.iter().zip(c).all(|(ym, cm)| *ym <= (1.0 + eps) * cm))
    })
}

/// Area dominated by a 2-D front above `r`, swept along decreasing x.
pub fn sweep_hv_2d(front: &[Vec<f64>], r: &[f64]) -> f64 {
    let mut pts: Vec<&Vec<f64>> = front.iter().collect();
    pts.sort_by(|a, b| b[0].partial_cmp(&a[0]).unwrap());
    let mut top = r[1];
    let mut area = 0.0;
    for p in pts {
        if p[1] > top {
            area += (p[0] - r[0]) * (p[1] - top);
            top = p[1];
        }
    }
    area
}

/// Random mutually non-dominated set in `[0,1]^m` (possibly smaller than `size`).
pub fn random_front(rng: &mut impl Rng, m: usize, size: usize) -> Vec<Vec<f64>> {
    let pts: Vec<Vec<f64>> = (0..size)
        .map(|_| (0..m).map(|_| rng.gen::<f64>()).collect())
        .collect();
    pts.iter()
        .filter(|p| !pts.iter().any(|q| oracle_dominates(q, p)))
        .cloned()
        .collect()
}

pub fn hamming(a: &[bool], b: &[bool]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

pub fn all_pairs_distances(sols: &[Vec<bool>]) -> (f64, f64) {
    let mut sum = 0usize;
    let mut max = 0usize;
    let mut pairs = 0usize;
    for i in 0..sols.len() {
        for j in i + 1..sols.len() {
            let d = hamming(&sols[i], &sols[j]);
            sum += d;
            max = max.max(d);
            pairs += 1;
        }
    }
    if pairs == 0 {
        (0.0, 0.0)
    } else {
        (sum as f64 / pairs as f64, max as f64)
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let r = self.find(self.0[x]);
            self.0[x] = r;
        }
        self.0[x]
    }
    fn join(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}

/// (nconnec, lconnec, kconnec): components at distance 1, then edges of
/// distance d = 2, 3, ... are added until a single component remains.
pub fn union_find_connectivity(sols: &[Vec<bool>]) -> (usize, f64, usize) {
    let n = sols.len();
    let mut dsu = Dsu((0..n).collect());
    let mut at_one = None;
    let mut kconnec = 0;
    let width = sols.first().map_or(0, Vec::len);
    for d in 1..=width.max(1) {
        for i in 0..n {
            for j in i + 1..n {
                if hamming(&sols[i], &sols[j]) == d {
                    dsu.join(i, j);
                }
            }
        }
        let mut sizes = std::collections::HashMap::new();
        for i in 0..n {
            *sizes.entry(dsu.find(i)).or_insert(0usize) += 1;
        }
        if d == 1 {
            let largest = *sizes.values().max().unwrap();
            at_one = Some((sizes.len(), largest as f64 / n as f64));
        }
        if sizes.len() == 1 && kconnec == 0 && n > 1 {
            kconnec = d;
        }
    }
    let (nc, lc) = at_one.unwrap();
    (nc, lc, kconnec)
}
