//! MNK-landscape instances.
//!
//! An instance holds `M` independent NK-landscapes over one bitstring of length
//! `N`. Objective `m` is the mean of `N` subfunction lookups:
//!
//! ```text
//! z_m(x) = (1/N) * sum_n f_{m,n}(x_n, x[neighbors_{m,n}])
//! ```
//!
//! Table layout: the lookup index of variable `n` packs `x_n` as the most
//! significant bit followed by the neighbor bits in stored neighbor order, so
//! for `K = 2` and neighbors `[a, b]` the index is `x_n*4 + x_a*2 + x_b`.
//!
//! Neighborhoods are drawn independently for each objective. Variable `n` of
//! objective `m` reads all of its randomness (neighbors first, then the table)
//! from `rng::stream(derive_seed(seed, &[m, n]))`.

use std::fmt;
use std::fs;
use std::ops::Deref;
use std::path::Path;

use rand::seq::index;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::rng::{derive_seed, stream};
use crate::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

/// A binary decision vector. `bits[0]` is the leftmost character of the
/// bitstring form and the most significant bit of [`Solution::index`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Solution {
    pub bits: Vec<bool>,
}

impl Solution {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(vec![false; n])
    }

    /// Decodes the `n`-bit number `index`; numeric order equals lexicographic
    /// bitstring order.
    pub fn from_index(index: u64, n: usize) -> Self {
        Self::new((0..n).map(|i| (index >> (n - 1 - i)) & 1 == 1).collect())
    }

    /// Inverse of [`Solution::from_index`]. Only meaningful for `len() <= 64`.
    pub fn index(&self) -> u64 {
        self.bits.iter().fold(0, |acc, &b| (acc << 1) | u64::from(b))
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn hamming(&self, other: &Solution) -> usize {
        self.bits
            .iter()
            .zip(&other.bits)
            .filter(|(a, b)| a != b)
            .count()
    }

    pub fn parse(text: &str) -> Result<Self> {
        text.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidParameter(format!(
                    "bitstring contains {other:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Objective values of a solution, all maximised.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjectiveVector(pub Vec<f64>);

impl Deref for ObjectiveVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl AsRef<[f64]> for ObjectiveVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for ObjectiveVector {
    fn from(values: Vec<f64>) -> Self {
        Self(values)
    }
}

/// One NK-landscape.
#[derive(Clone, Debug, PartialEq)]
pub struct NkComponent {
    n_vars: usize,
    k: usize,
    neighbors: Vec<Vec<usize>>,
    tables: Vec<Vec<f64>>,
}

impl NkComponent {
    /// Builds a component after checking the shape invariants.
    pub fn new(neighbors: Vec<Vec<usize>>, tables: Vec<Vec<f64>>) -> Result<Self> {
        let n_vars = neighbors.len();
        if n_vars == 0 {
            return Err(Error::InvalidParameter("component has no variables".into()));
        }
        let k = neighbors[0].len();
        check_component(n_vars, k, &neighbors, &tables).map_err(Error::InvalidParameter)?;
        Ok(Self {
            n_vars,
            k,
            neighbors,
            tables,
        })
    }

    fn generate(seed: u64, component: usize, n_vars: usize, k: usize) -> Self {
        let mut neighbors = Vec::with_capacity(n_vars);
        let mut tables = Vec::with_capacity(n_vars);
        for n in 0..n_vars {
            let mut rng = stream(derive_seed(seed, &[component as u64, n as u64]));
            let mut nb: Vec<usize> = index::sample(&mut rng, n_vars - 1, k)
                .into_iter()
                .map(|i| if i >= n { i + 1 } else { i })
                .collect();
            nb.sort_unstable();
            neighbors.push(nb);
            tables.push((0..1usize << (k + 1)).map(|_| rng.gen::<f64>()).collect());
        }
        Self {
            n_vars,
            k,
            neighbors,
            tables,
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn neighbors(&self) -> &[Vec<usize>] {
        &self.neighbors
    }

    pub fn tables(&self) -> &[Vec<f64>] {
        &self.tables
    }

    /// Table index of variable `n` under assignment `bits`.
    pub fn table_index(&self, n: usize, bits: &[bool]) -> usize {
        self.neighbors[n]
            .iter()
            .fold(usize::from(bits[n]), |acc, &j| (acc << 1) | usize::from(bits[j]))
    }

    fn value(&self, bits: &[bool]) -> f64 {
        let total: f64 = (0..self.n_vars)
            .map(|n| self.tables[n][self.table_index(n, bits)])
            .sum();
        total / self.n_vars as f64
    }
}

fn check_component(
    n_vars: usize,
    k: usize,
    neighbors: &[Vec<usize>],
    tables: &[Vec<f64>],
) -> std::result::Result<(), String> {
    if k >= n_vars {
        return Err(format!("k = {k} must be smaller than n = {n_vars}"));
    }
    if neighbors.len() != n_vars {
        return Err(format!(
            "neighbors: expected {n_vars} lists, found {}",
            neighbors.len()
        ));
    }
    if tables.len() != n_vars {
        return Err(format!("tables: expected {n_vars} tables, found {}", tables.len()));
    }
    for (n, nb) in neighbors.iter().enumerate() {
        if nb.len() != k {
            return Err(format!(
                "neighbors[{n}]: expected {k} entries, found {}",
                nb.len()
            ));
        }
        for (i, &j) in nb.iter().enumerate() {
            if j >= n_vars {
                return Err(format!("neighbors[{n}][{i}]: index {j} out of range"));
            }
            if j == n {
                return Err(format!("neighbors[{n}][{i}]: variable is its own neighbor"));
            }
            if nb[..i].contains(&j) {
                return Err(format!("neighbors[{n}][{i}]: duplicate neighbor {j}"));
            }
        }
    }
    let expected = 1usize << (k + 1);
    for (n, table) in tables.iter().enumerate() {
        if table.len() != expected {
            return Err(format!(
                "tables[{n}]: expected {expected} entries, found {}",
                table.len()
            ));
        }
        if let Some(i) = table.iter().position(|v| !(0.0..=1.0).contains(v)) {
            return Err(format!("tables[{n}][{i}]: value {} outside [0,1]", table[i]));
        }
    }
    Ok(())
}

/// `M` NK-landscapes sharing `N` and `K`.
#[derive(Clone, Debug, PartialEq)]
pub struct MnkInstance {
    pub id: String,
    pub seed: u64,
    components: Vec<NkComponent>,
}

impl MnkInstance {
    pub fn from_components(id: impl Into<String>, seed: u64, components: Vec<NkComponent>) -> Result<Self> {
        let first = components
            .first()
            .ok_or_else(|| Error::InvalidParameter("instance needs at least one objective".into()))?;
        if components
            .iter()
            .any(|c| c.n_vars != first.n_vars || c.k != first.k)
        {
            return Err(Error::InvalidParameter(
                "all components must share n and k".into(),
            ));
        }
        Ok(Self {
            id: id.into(),
            seed,
            components,
        })
    }

    pub fn n_vars(&self) -> usize {
        self.components[0].n_vars
    }

    pub fn k(&self) -> usize {
        self.components[0].k
    }

    pub fn m_objectives(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[NkComponent] {
        &self.components
    }

    pub fn evaluate(&self, x: &Solution) -> Result<ObjectiveVector> {
        if x.len() != self.n_vars() {
            return Err(Error::LengthMismatch {
                expected: self.n_vars(),
                found: x.len(),
            });
        }
        Ok(self.evaluate_bits(&x.bits))
    }

    /// Unchecked evaluation; `bits.len()` must equal `n_vars()`.
    pub fn evaluate_bits(&self, bits: &[bool]) -> ObjectiveVector {
        ObjectiveVector(self.components.iter().map(|c| c.value(bits)).collect())
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = self.to_json()?;
        fs::write(path, text).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text).map_err(|detail| Error::MalformedFile {
            path: path.to_path_buf(),
            detail,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        let file = InstanceFile {
            format_version: FORMAT_VERSION,
            id: self.id.clone(),
            seed: self.seed,
            n: self.n_vars(),
            m: self.m_objectives(),
            k: self.k(),
            components: self
                .components
                .iter()
                .map(|c| ComponentFile {
                    neighbors: c.neighbors.clone(),
                    tables: c.tables.clone(),
                })
                .collect(),
        };
        let mut text = serde_json::to_string_pretty(&file)?;
        text.push('\n');
        Ok(text)
    }

    /// Parses the instance format; the error string names the offending
    /// line/column or field.
    pub fn from_json(text: &str) -> std::result::Result<Self, String> {
        let file: InstanceFile = serde_json::from_str(text)
            .map_err(|e| format!("line {} column {}: {e}", e.line(), e.column()))?;
        if file.format_version != FORMAT_VERSION {
            return Err(format!(
                "format_version: unsupported version {}",
                file.format_version
            ));
        }
        if file.n == 0 || file.m == 0 {
            return Err("n and m must be positive".into());
        }
        if file.components.len() != file.m {
            return Err(format!(
                "components: expected {} entries, found {}",
                file.m,
                file.components.len()
            ));
        }
        let mut components = Vec::with_capacity(file.m);
        for (m, c) in file.components.into_iter().enumerate() {
            check_component(file.n, file.k, &c.neighbors, &c.tables)
                .map_err(|e| format!("components[{m}].{e}"))?;
            components.push(NkComponent {
                n_vars: file.n,
                k: file.k,
                neighbors: c.neighbors,
                tables: c.tables,
            });
        }
        Ok(Self {
            id: file.id,
            seed: file.seed,
            components,
        })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    format_version: u32,
    id: String,
    seed: u64,
    n: usize,
    m: usize,
    k: usize,
    components: Vec<ComponentFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentFile {
    neighbors: Vec<Vec<usize>>,
    tables: Vec<Vec<f64>>,
}

/// Draws a random instance. The result is a pure function of the arguments.
pub fn generate_instance(seed: u64, n_vars: usize, m_objectives: usize, k: usize) -> Result<MnkInstance> {
    if n_vars == 0 || m_objectives == 0 {
        return Err(Error::InvalidParameter(format!(
            "n = {n_vars} and m = {m_objectives} must be positive"
        )));
    }
    if k >= n_vars {
        return Err(Error::InvalidParameter(format!(
            "k = {k} must be smaller than n = {n_vars}"
        )));
    }
    let components = (0..m_objectives)
        .map(|m| NkComponent::generate(seed, m, n_vars, k))
        .collect();
    Ok(MnkInstance {
        id: format!("n{n_vars}_m{m_objectives}_k{k}_s{seed}"),
        seed,
        components,
    })
}

/// Shorthand for [`MnkInstance::save`].
pub fn save_instance(instance: &MnkInstance, path: &Path) -> Result<()> {
    instance.save(path)
}

/// Shorthand for [`MnkInstance::load`].
pub fn load_instance(path: &Path) -> Result<MnkInstance> {
    MnkInstance::load(path)
}
