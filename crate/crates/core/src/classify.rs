//! Dimension-by-dimension classification driver.
//!
//! Every `[n, k]` code with minimum multiplicity `r` arises by extending one
//! of its residuals at a point of multiplicity `r`, an `[n - r, k - 1]` code.
//! Starting from the `[w, 1]` codes, each dimension is built from the
//! previous one, filtered and reduced to isometry classes.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use thiserror::Error;

use crate::archive::{self, ArchiveError, CodeArchive};
use crate::canon::{self, CanonError};
use crate::code::{CodeError, LinearCode, WeightEnumerator};
use crate::extender::{self, Budget, ExtensionError, ExtensionProblem, WeightSet};
use crate::galois;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("invalid task: {0}")]
    InvalidTask(String),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Canon(#[from] CanonError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Archive(#[from] ArchiveError),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

/// How the allowed weights are given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightSpec {
    /// An explicit set `W`.
    Explicit(Vec<u32>),
    /// All multiples of `delta` that are at least `d`.
    MinDistance { d: u32, delta: u32 },
}

/// A classification run.
#[derive(Debug, Clone)]
pub struct ClassificationTask {
    pub q: u32,
    pub weights: WeightSpec,
    pub n_max: u32,
    pub k_max: usize,
    pub projective: bool,
    /// Cap on the column multiplicity of reported codes.
    pub max_mult: Option<u32>,
    /// Cap on the redundancy `n - k` of all codes.
    pub max_redundancy: Option<u32>,
    pub shards: usize,
    pub budget: Budget,
    pub canonical: bool,
    pub lexicographic: bool,
}

impl ClassificationTask {
    pub fn new(q: u32, weights: WeightSpec, n_max: u32, k_max: usize) -> Self {
        ClassificationTask {
            q,
            weights,
            n_max,
            k_max,
            projective: false,
            max_mult: None,
            max_redundancy: None,
            shards: 1,
            budget: Budget::from_env(),
            canonical: true,
            lexicographic: true,
        }
    }

    /// `[n, k, >= d]_q` codes.
    pub fn min_distance(q: u32, d: u32, n_max: u32, k_max: usize) -> Self {
        Self::new(q, WeightSpec::MinDistance { d, delta: 1 }, n_max, k_max)
    }

    /// Projective `[n, k]_q` codes of any minimum distance.
    pub fn projective(q: u32, n_max: u32, k_max: usize) -> Self {
        let mut t = Self::min_distance(q, 1, n_max, k_max);
        t.projective = true;
        t
    }

    pub fn with_shards(mut self, shards: usize) -> Self {
        self.shards = shards.max(1);
        self
    }

    pub fn with_filters(mut self, canonical: bool, lexicographic: bool) -> Self {
        self.canonical = canonical;
        self.lexicographic = lexicographic;
        self
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_max_redundancy(mut self, rho: Option<u32>) -> Self {
        self.max_redundancy = rho;
        self
    }

    pub fn weight_set(&self) -> Result<WeightSet, ClassifyError> {
        let w = match &self.weights {
            WeightSpec::Explicit(w) => WeightSet::new(w.iter().copied().filter(|&w| w <= self.n_max))?,
            WeightSpec::MinDistance { d, delta } => WeightSet::min_distance(*d, self.n_max, *delta)?,
        };
        Ok(w)
    }

    /// Multiplicity cap of reported codes.
    pub fn reported_cap(&self) -> Option<u32> {
        if self.projective {
            Some(1)
        } else {
            self.max_mult
        }
    }

    /// Multiplicity cap of intermediate codes of dimension `k`. Projecting
    /// from a point merges at most `q` points into one, so an ancestor `j`
    /// dimensions down has multiplicities at most `q^j` times larger.
    fn pool_cap(&self, k: usize) -> u32 {
        let cap = match self.reported_cap() {
            None => self.n_max,
            Some(c) => {
                let factor = (self.q as u64).saturating_pow((self.k_max - k) as u32);
                (c as u64).saturating_mul(factor).min(self.n_max as u64) as u32
            }
        };
        cap.max(1)
    }

    fn validate(&self) -> Result<(), ClassifyError> {
        galois::field(self.q).map_err(|e| ClassifyError::InvalidTask(e.to_string()))?;
        if self.k_max == 0 || (self.n_max as usize) < self.k_max {
            return Err(ClassifyError::InvalidTask(format!(
                "need n_max >= k_max >= 1, got n_max={} k_max={}",
                self.n_max, self.k_max
            )));
        }
        if self.n_max > 255 {
            return Err(ClassifyError::InvalidTask("n_max above 255".into()));
        }
        self.weight_set()?;
        Ok(())
    }

    /// Stable description used to tag archives.
    pub fn describe(&self) -> String {
        let w = match &self.weights {
            WeightSpec::Explicit(w) => format!("W={w:?}"),
            WeightSpec::MinDistance { d, delta } => format!("d={d},delta={delta}"),
        };
        format!(
            "q={} {} nmax={} kmax={} projective={} maxmult={:?} maxred={:?} canonical={} lex={}",
            self.q, w, self.n_max, self.k_max, self.projective, self.max_mult, self.max_redundancy, self.canonical, self.lexicographic
        )
    }

    /// 64-bit FNV-1a hash of [`describe`](Self::describe), in hex.
    pub fn fingerprint(&self) -> String {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in self.describe().bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        format!("{h:016x}")
    }
}

/// The classified codes of one `(n, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub count: usize,
    pub complete: bool,
    /// Empty in count-only runs.
    pub codes: Vec<LinearCode>,
}

#[derive(Debug, Clone, Default)]
pub struct ClassificationResult {
    pub cells: BTreeMap<(usize, usize), Cell>,
}

impl ClassificationResult {
    pub fn count(&self, n: usize, k: usize) -> Option<usize> {
        self.cells.get(&(n, k)).map(|c| c.count)
    }

    pub fn is_complete(&self) -> bool {
        self.cells.values().all(|c| c.complete)
    }

    /// Counts for `k = 1..=k_max` at length `n`.
    pub fn row(&self, n: usize, k_max: usize) -> Vec<usize> {
        (1..=k_max).map(|k| self.count(n, k).unwrap_or(0)).collect()
    }

    /// Counts of codes of length at most `n`.
    pub fn cumulative(&self) -> BTreeMap<(usize, usize), usize> {
        let mut out = BTreeMap::new();
        for &(n, k) in self.cells.keys() {
            let total = self
                .cells
                .iter()
                .filter(|(&(m, j), _)| j == k && m <= n)
                .map(|(_, c)| c.count)
                .sum();
            out.insert((n, k), total);
        }
        out
    }
}

/// Where and how to persist cells.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub out_dir: Option<PathBuf>,
    /// Keep only counts; nothing but the count table is written.
    pub count_only: bool,
}

/// The `[w, 1]_q` codes with `w` in `W`, up to the task's caps.
pub fn seed_dimension_one(task: &ClassificationTask) -> Result<Vec<LinearCode>, ClassifyError> {
    Ok(seed_pool(task)?
        .into_iter()
        .filter(|c| reportable(task, c))
        .collect())
}

fn seed_pool(task: &ClassificationTask) -> Result<Vec<LinearCode>, ClassifyError> {
    let w = task.weight_set()?;
    let cap = task.pool_cap(1);
    let mut out = Vec::new();
    for &weight in w.weights() {
        if weight > task.n_max || weight > cap || task.max_redundancy.is_some_and(|rho| weight - 1 > rho) {
            continue;
        }
        out.push(LinearCode::from_multiplicities(task.q, 1, [(0, weight)])?);
    }
    Ok(out)
}

fn reportable(task: &ClassificationTask, code: &LinearCode) -> bool {
    task.reported_cap().is_none_or(|c| code.max_col_mult() <= c)
}

/// Buckets of parents with equal weight enumerators, assigned round-robin
/// to `shards` groups in enumerator order. Isometric children can only come
/// from parents with equal enumerators, so groups never share a class.
pub fn shard_parents(parents: &[LinearCode], shards: usize) -> Vec<Vec<LinearCode>> {
    let mut buckets: BTreeMap<(usize, WeightEnumerator), Vec<LinearCode>> = BTreeMap::new();
    for p in parents {
        buckets.entry((p.length(), p.weight_enumerator())).or_default().push(p.clone());
    }
    let shards = shards.max(1);
    let mut out = vec![Vec::new(); shards];
    for (i, bucket) in buckets.into_values().enumerate() {
        out[i % shards].extend(bucket);
    }
    out
}

struct ShardOutput {
    /// children per length, after in-shard dedupe
    cells: BTreeMap<usize, Vec<LinearCode>>,
    incomplete: Vec<usize>,
}

fn run_shard(task: &ClassificationTask, weights: &WeightSet, parents: &[LinearCode], k: usize) -> Result<ShardOutput, ClassifyError> {
    let cap = task.pool_cap(k);
    let mut cells: BTreeMap<usize, Vec<LinearCode>> = BTreeMap::new();
    let mut incomplete = Vec::new();
    for parent in parents {
        let n_parent = parent.length() as u32;
        let mut r_max = (task.n_max - n_parent).min(cap);
        if task.canonical {
            r_max = r_max.min(parent.min_col_mult());
        }
        if let Some(rho) = task.max_redundancy {
            // (n' + r) - k <= rho
            let limit = (rho + k as u32).saturating_sub(n_parent);
            r_max = r_max.min(limit);
        }
        for r in 1..=r_max {
            let problem = ExtensionProblem::new(parent.clone(), r, weights.clone())
                .with_filters(task.canonical, task.lexicographic)
                .with_max_mult(Some(cap));
            let outcome = extender::extend(&problem, task.budget)?;
            let n = (n_parent + r) as usize;
            if !outcome.complete {
                incomplete.push(n);
            }
            cells.entry(n).or_default().extend(outcome.children);
        }
    }
    let mut deduped = BTreeMap::new();
    for (n, codes) in cells {
        deduped.insert(n, canon::dedupe(codes)?);
    }
    Ok(ShardOutput {
        cells: deduped,
        incomplete,
    })
}

/// Runs a classification in memory.
pub fn classify(task: &ClassificationTask) -> Result<ClassificationResult, ClassifyError> {
    classify_with(task, &RunOptions::default())
}

/// Runs a classification, persisting and resuming cells under
/// `options.out_dir` when given.
pub fn classify_with(task: &ClassificationTask, options: &RunOptions) -> Result<ClassificationResult, ClassifyError> {
    task.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(task.shards.max(1))
        .build()
        .map_err(|e| ClassifyError::ThreadPool(e.to_string()))?;
    pool.install(|| run(task, options))
}

/// Intermediate codes of one dimension, keyed by length.
type Pool = BTreeMap<usize, (Vec<LinearCode>, bool)>;

fn run(task: &ClassificationTask, options: &RunOptions) -> Result<ClassificationResult, ClassifyError> {
    let weights = task.weight_set()?;
    let fingerprint = task.fingerprint();
    let mut result = ClassificationResult::default();
    let mut pool: Pool = BTreeMap::new();

    for k in 1..=task.k_max {
        let resumed = if options.count_only {
            None
        } else {
            options
                .out_dir
                .as_deref()
                .and_then(|dir| load_dimension(dir, task, k, &fingerprint).transpose())
                .transpose()?
        };
        let next: Pool = match resumed {
            Some(p) => p,
            None => {
                let p = if k == 1 {
                    let mut p: Pool = BTreeMap::new();
                    for c in seed_pool(task)? {
                        p.entry(c.length()).or_insert_with(|| (Vec::new(), true)).0.push(c);
                    }
                    p
                } else {
                    extend_dimension(task, &weights, &pool, k)?
                };
                if let (Some(dir), false) = (options.out_dir.as_deref(), options.count_only) {
                    save_dimension(dir, task, k, &p, &fingerprint)?;
                }
                p
            }
        };
        for n in k..=task.n_max as usize {
            let (codes, complete) = next.get(&n).cloned().unwrap_or((Vec::new(), true));
            let reported: Vec<LinearCode> = codes.into_iter().filter(|c| reportable(task, c)).collect();
            result.cells.insert(
                (n, k),
                Cell {
                    count: reported.len(),
                    complete,
                    codes: if options.count_only { Vec::new() } else { reported },
                },
            );
        }
        pool = next;
    }
    if let Some(dir) = options.out_dir.as_deref() {
        archive::write_count_table(&dir.join("counts.tsv"), &result)?;
    }
    Ok(result)
}

fn extend_dimension(task: &ClassificationTask, weights: &WeightSet, pool: &Pool, k: usize) -> Result<Pool, ClassifyError> {
    let parents: Vec<LinearCode> = pool.values().flat_map(|(codes, _)| codes.iter().cloned()).collect();
    let shards = shard_parents(&parents, task.shards);
    let outputs: Vec<Result<ShardOutput, ClassifyError>> = shards
        .par_iter()
        .map(|parents| run_shard(task, weights, parents, k))
        .collect();
    let mut merged: BTreeMap<usize, Vec<LinearCode>> = BTreeMap::new();
    let mut incomplete: Vec<usize> = Vec::new();
    for out in outputs {
        let out = out?;
        incomplete.extend(out.incomplete);
        for (n, codes) in out.cells {
            merged.entry(n).or_default().extend(codes);
        }
    }
    let mut next: Pool = BTreeMap::new();
    for n in k..=task.n_max as usize {
        let mut codes = merged.remove(&n).unwrap_or_default();
        if !(task.canonical && task.lexicographic) {
            // without both filters one class may be reached from parents
            // in different shards
            codes = canon::dedupe(codes)?;
        }
        codes.sort();
        let parents_complete = pool.iter().filter(|(&m, _)| m < n).all(|(_, (_, complete))| *complete);
        let complete = parents_complete && !incomplete.contains(&n);
        next.insert(n, (codes, complete));
    }
    Ok(next)
}

fn cell_path(dir: &Path, n: usize, k: usize, pool: bool) -> PathBuf {
    if pool {
        dir.join(format!("n{n:03}_k{k:02}.pool.txt"))
    } else {
        dir.join(format!("n{n:03}_k{k:02}.txt"))
    }
}

fn save_dimension(dir: &Path, task: &ClassificationTask, k: usize, pool: &Pool, fingerprint: &str) -> Result<(), ClassifyError> {
    std::fs::create_dir_all(dir).map_err(ArchiveError::from)?;
    for n in k..=task.n_max as usize {
        let (codes, complete) = pool.get(&n).cloned().unwrap_or((Vec::new(), true));
        let reported: Vec<LinearCode> = codes.iter().filter(|c| reportable(task, c)).cloned().collect();
        let has_pool = reported.len() != codes.len();
        let arch = CodeArchive::from_codes(task.q, n, k, &reported, complete, Some(fingerprint.to_string()));
        archive::write_atomic(&cell_path(dir, n, k, false), &arch.to_string())?;
        if has_pool {
            let arch = CodeArchive::from_codes(task.q, n, k, &codes, complete, Some(fingerprint.to_string()));
            archive::write_atomic(&cell_path(dir, n, k, true), &arch.to_string())?;
        }
    }
    Ok(())
}

/// Loads a fully written, complete dimension written by the same task.
fn load_dimension(dir: &Path, task: &ClassificationTask, k: usize, fingerprint: &str) -> Result<Option<Pool>, ClassifyError> {
    let mut pool: Pool = BTreeMap::new();
    for n in k..=task.n_max as usize {
        let path = if cell_path(dir, n, k, true).exists() {
            cell_path(dir, n, k, true)
        } else {
            cell_path(dir, n, k, false)
        };
        let Ok(text) = std::fs::read_to_string(&path) else {
            return Ok(None);
        };
        let Ok(arch) = text.parse::<CodeArchive>() else {
            return Ok(None);
        };
        if arch.task.as_deref() != Some(fingerprint) || !arch.complete || arch.q != task.q || arch.n != n || arch.k != k {
            return Ok(None);
        }
        pool.insert(n, (arch.to_codes()?, true));
    }
    Ok(Some(pool))
}

/// One row of the comparison of `N(n, 2)` against the closed formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaRow {
    pub n: usize,
    pub classified: usize,
    pub formula: u64,
}

impl FormulaRow {
    pub fn matches(&self) -> bool {
        self.classified as u64 == self.formula
    }
}

/// `ceil(sqrt((n-4)(n-3)(2n-7)/6))`, computed in integers.
pub fn k2_formula(n: u64) -> u64 {
    if n < 4 {
        return 0;
    }
    // the product is divisible by 6 for every n
    let v = (n - 4) * (n - 3) * (2 * n - 7) / 6;
    let mut s = (v as f64).sqrt() as u64;
    while s * s > v {
        s -= 1;
    }
    while s * s < v {
        s += 1;
    }
    s
}

/// Classifies `[n, 2, >= 3]_2` codes for `n <= n_max` and compares with the
/// closed formula for every `n` in `n_min..=n_max`.
pub fn verify_k2_formula(n_min: usize, n_max: usize, shards: usize) -> Result<Vec<FormulaRow>, ClassifyError> {
    let task = ClassificationTask::min_distance(2, 3, n_max as u32, 2).with_shards(shards);
    let result = classify_with(&task, &RunOptions { out_dir: None, count_only: true })?;
    Ok((n_min..=n_max)
        .map(|n| FormulaRow {
            n,
            classified: result.count(n, 2).unwrap_or(0),
            formula: k2_formula(n as u64),
        })
        .collect())
}

/// Smallest number of minimal codewords over the projective codes of each
/// cell, for `q`, `n <= n_max`. Cells without projective codes are absent.
pub fn min_minimal_codewords_table(q: u32, n_max: u32, shards: usize) -> Result<(BTreeMap<(usize, usize), u64>, bool), ClassifyError> {
    let task = ClassificationTask::projective(q, n_max, n_max as usize).with_shards(shards);
    let result = classify(&task)?;
    let mut table = BTreeMap::new();
    for (&(n, k), cell) in &result.cells {
        let mut best: Option<u64> = None;
        for code in &cell.codes {
            let m = code.minimal_codewords_count()?;
            best = Some(best.map_or(m, |b| b.min(m)));
        }
        if let Some(b) = best {
            table.insert((n, k), b);
        }
    }
    Ok((table, result.is_complete()))
}
