//! One extension step: all `[n + r, k + 1]_q` codes whose residual at a new
//! point of multiplicity `r` is a given `[n, k]_q` parent.
//!
//! A child lives in `PG(k, q)`. Its points split into fibers: for every point
//! `u` of the parent the `q` points `(u | lambda)`, whose multiplicities must
//! add up to `m(u)`, and the single point `e_{k+1}` of multiplicity `r`.
//! Hyperplanes `(h | 0)` contain whole fibers, so their weights are the
//! parent's weights. Every other hyperplane has a normal `(h | 1)` with
//! `h` in `F_q^k` and meets each fiber in exactly one point, `(u | -h.u)`.
//! Those `q^k` hyperplane sums must hit the allowed weight targets, which is
//! what the depth-first enumerator below checks incrementally.

use std::collections::HashMap;
use std::env;

use thiserror::Error;

use crate::code::{CodeError, LinearCode, WeightEnumerator};
use crate::galois::{Field, ProjectiveSpace};
use crate::linalg;

/// Default DFS node budget per extension.
pub const DEFAULT_BUDGET_NODES: u64 = 10_000_000;

/// Environment variable overriding the default node budget.
pub const BUDGET_ENV: &str = "LINCODE_BUDGET_NODES";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("parent weight {weight} lies outside the weight envelope")]
    EnvelopeViolation { weight: usize },
    #[error("extension multiplicity must be at least 1")]
    InvalidMultiplicity,
    #[error("invalid weight set: {0}")]
    InvalidWeights(String),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// Allowed nonzero weights `W` together with an envelope
/// `{a*delta, (a+1)*delta, ..., b*delta}` containing them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightSet {
    weights: Vec<u32>,
    delta: u32,
    a: u32,
    b: u32,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl WeightSet {
    /// An explicit weight set; the envelope uses the gcd of the weights.
    pub fn new(weights: impl IntoIterator<Item = u32>) -> Result<Self, ExtensionError> {
        let mut weights: Vec<u32> = weights.into_iter().collect();
        weights.sort_unstable();
        weights.dedup();
        if weights.is_empty() || weights[0] == 0 {
            return Err(ExtensionError::InvalidWeights("weights must be positive and nonempty".into()));
        }
        let delta = weights.iter().fold(0, |g, &w| gcd(g, w));
        Ok(WeightSet {
            a: weights[0] / delta,
            b: weights[weights.len() - 1] / delta,
            weights,
            delta,
        })
    }

    /// All multiples of `delta` in `[d, n_max]`.
    pub fn min_distance(d: u32, n_max: u32, delta: u32) -> Result<Self, ExtensionError> {
        if d == 0 || delta == 0 {
            return Err(ExtensionError::InvalidWeights("d and delta must be positive".into()));
        }
        let a = d.div_ceil(delta);
        let b = n_max / delta;
        if a > b {
            return Err(ExtensionError::InvalidWeights(format!("no multiple of {delta} in [{d}, {n_max}]")));
        }
        Ok(WeightSet {
            weights: (a..=b).map(|i| i * delta).collect(),
            delta,
            a,
            b,
        })
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn contains(&self, w: u32) -> bool {
        self.weights.binary_search(&w).is_ok()
    }

    pub fn envelope(&self) -> Vec<u32> {
        (self.a..=self.b).map(|i| i * self.delta).collect()
    }

    /// `W` equals its envelope, so no post-filtering is needed.
    pub fn is_envelope(&self) -> bool {
        self.weights.len() as u32 == self.b - self.a + 1
    }

    /// Every nonzero weight of the enumerator is in `W`.
    pub fn admits(&self, we: &WeightEnumerator) -> bool {
        we.nonzero_weights().all(|w| self.contains(w as u32))
    }
}

/// Limits on the enumeration effort.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: DEFAULT_BUDGET_NODES,
        }
    }
}

impl Budget {
    pub fn nodes(max_nodes: u64) -> Self {
        Budget { max_nodes }
    }

    /// The default budget, overridden by `LINCODE_BUDGET_NODES` when set.
    pub fn from_env() -> Self {
        env::var(BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map(Budget::nodes)
            .unwrap_or_default()
    }
}

/// Input of one extension step.
#[derive(Debug, Clone)]
pub struct ExtensionProblem {
    pub parent: LinearCode,
    pub r: u32,
    pub weights: WeightSet,
    pub canonical: bool,
    /// Only honoured together with `canonical`.
    pub lexicographic: bool,
    /// Upper bound on every child multiplicity.
    pub max_mult: Option<u32>,
}

impl ExtensionProblem {
    pub fn new(parent: LinearCode, r: u32, weights: WeightSet) -> Self {
        ExtensionProblem {
            parent,
            r,
            weights,
            canonical: true,
            lexicographic: true,
            max_mult: None,
        }
    }

    pub fn with_filters(mut self, canonical: bool, lexicographic: bool) -> Self {
        self.canonical = canonical;
        self.lexicographic = lexicographic;
        self
    }

    pub fn with_max_mult(mut self, max_mult: Option<u32>) -> Self {
        self.max_mult = max_mult;
        self
    }
}

/// One variable `x_P` for a point `P = (u | lambda)` of the child space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub point: u64,
    pub lambda: u8,
    pub lower: u32,
    pub upper: u32,
}

/// The variables over one parent point `u`, summing to `m(u)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fiber {
    pub parent_point: u64,
    pub coords: Vec<u8>,
    pub total: u32,
    pub vars: Vec<Variable>,
    /// `classes[lambda]` lists the nontrivial hyperplanes through `(u | lambda)`.
    classes: Vec<Vec<u32>>,
}

/// The extension constraints with the hyperplane slack variables eliminated.
#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    pub q: u32,
    /// Dimension of the child.
    pub k: usize,
    /// Length of the child, `n + r`.
    pub length: u32,
    pub r: u32,
    /// Index of `e_{k+1}`, fixed to multiplicity `r`.
    pub zero_point: u64,
    pub fibers: Vec<Fiber>,
    /// Allowed sums over a nontrivial hyperplane, `(n + r) - w` for `w` in
    /// the envelope, ascending.
    pub targets: Vec<u32>,
    /// Nonzero values below this bound are excluded (`r` under canonical
    /// lengthening, 1 otherwise).
    pub min_positive: u32,
    /// Number of nontrivial hyperplanes, `q^(k-1)` in child terms.
    pub num_hyperplanes: usize,
}

/// An integer point of a [`ConstraintSystem`]: the child's support.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExtensionSolution {
    pub x: Vec<(u64, u32)>,
}

/// Solutions plus whether the enumeration ran to completion.
#[derive(Debug, Clone)]
pub struct Enumeration {
    pub solutions: Vec<ExtensionSolution>,
    pub complete: bool,
    pub nodes: u64,
}

/// Children of one extension step after filtering.
#[derive(Debug, Clone)]
pub struct ExtensionOutcome {
    pub children: Vec<LinearCode>,
    pub complete: bool,
    pub nodes: u64,
}

/// Builds the constraint system for a parent, checking its weights first.
pub fn build_constraints(problem: &ExtensionProblem) -> Result<ConstraintSystem, ExtensionError> {
    let parent = &problem.parent;
    let r = problem.r;
    if r == 0 {
        return Err(ExtensionError::InvalidMultiplicity);
    }
    let we = parent.weight_enumerator();
    let envelope = problem.weights.envelope();
    if let Some(w) = we.nonzero_weights().find(|&w| envelope.binary_search(&(w as u32)).is_err()) {
        return Err(ExtensionError::EnvelopeViolation { weight: w });
    }
    let field = parent.field();
    let q = field.order() as usize;
    let k = parent.k();
    let n = parent.length() as u32;
    let length = n + r;
    let child_space = ProjectiveSpace::new(field, k + 1);

    // Points of a basis inside the support may be assumed to keep last
    // coordinate 0: adding a linear form of the parent rows to the new row
    // is an isometry that fixes the parent.
    let basis = greedy_basis(parent);
    let unit_lower = if problem.canonical { r } else { 1 };
    let min_positive = if problem.canonical { r } else { 1 };
    let cap = problem.max_mult.unwrap_or(u32::MAX);

    let num_hyperplanes = q.pow(k as u32);
    let normals: Vec<Vec<u8>> = (0..num_hyperplanes).map(|h| base_q_digits(h, q, k)).collect();

    let mut fibers = Vec::with_capacity(parent.support().len());
    for (coords, total) in parent.support_vectors() {
        let parent_point = parent.space().index_of_normalized(&coords);
        let mut classes = vec![Vec::new(); q];
        for (h, normal) in normals.iter().enumerate() {
            let lambda = field.neg(field.dot(normal, &coords));
            classes[lambda as usize].push(h as u32);
        }
        let is_basis = basis.contains(&parent_point);
        let mut ext = coords.clone();
        ext.push(0);
        let vars = (0..q as u8)
            .map(|lambda| {
                ext[k] = lambda;
                let lower = if lambda == 0 && is_basis { unit_lower } else { 0 };
                Variable {
                    point: child_space.index_of_normalized(&ext),
                    lambda,
                    lower,
                    upper: total.min(cap),
                }
            })
            .collect();
        fibers.push(Fiber {
            parent_point,
            coords,
            total,
            vars,
            classes,
        });
    }
    let fibers = flag_order(field, k, fibers);

    let mut unit = vec![0u8; k + 1];
    unit[k] = 1;
    let mut targets: Vec<u32> = envelope.iter().filter(|&&w| w <= length).map(|&w| length - w).collect();
    targets.sort_unstable();
    Ok(ConstraintSystem {
        q: q as u32,
        k: k + 1,
        length,
        r,
        zero_point: child_space.index_of_normalized(&unit),
        fibers,
        targets,
        min_positive,
        num_hyperplanes,
    })
}

/// Orders fibers along a flag of subspaces: the fibers outside the heaviest
/// hyperplane of the remaining support first, then recursively inside it.
/// Nontrivial hyperplanes that agree on all later fibers get the same
/// remaining contribution, which the search checks at block boundaries.
/// Within a block, larger totals come first.
fn flag_order(field: &Field, k: usize, fibers: Vec<Fiber>) -> Vec<Fiber> {
    let q = field.order() as usize;
    let duals: Vec<Vec<u8>> = (1..q.pow(k as u32))
        .map(|h| base_q_digits(h, q, k))
        .filter(|v| v.iter().find(|&&c| c != 0) == Some(&1))
        .collect();
    let mut rest: Vec<Fiber> = fibers;
    let mut ordered = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let mut best: Option<(u32, usize, &Vec<u8>)> = None;
        for g in &duals {
            let inside: Vec<&Fiber> = rest.iter().filter(|f| field.dot(g, &f.coords) == 0).collect();
            if inside.len() == rest.len() {
                continue;
            }
            let weight: u32 = inside.iter().map(|f| f.total).sum();
            if best.is_none_or(|(w, c, _)| (weight, inside.len()) > (w, c)) {
                best = Some((weight, inside.len(), g));
            }
        }
        let (mut block, inside): (Vec<Fiber>, Vec<Fiber>) = match best {
            Some((_, _, g)) => rest.into_iter().partition(|f| field.dot(g, &f.coords) != 0),
            None => (rest, Vec::new()),
        };
        block.sort_by(|a, b| b.total.cmp(&a.total).then(a.parent_point.cmp(&b.parent_point)));
        ordered.extend(block);
        rest = inside;
    }
    ordered
}

fn greedy_basis(code: &LinearCode) -> Vec<u64> {
    let field = code.field();
    let mut rows: Vec<Vec<u8>> = Vec::new();
    let mut basis = Vec::new();
    for (idx, (v, _)) in code.support().iter().map(|s| s.0).zip(code.support_vectors()) {
        rows.push(v);
        if linalg::rank(field, &rows) == rows.len() {
            basis.push(idx);
            if basis.len() == code.k() {
                break;
            }
        } else {
            rows.pop();
        }
    }
    basis
}

fn base_q_digits(mut h: usize, q: usize, k: usize) -> Vec<u8> {
    let mut v = vec![0u8; k];
    for pos in (0..k).rev() {
        v[pos] = (h % q) as u8;
        h /= q;
    }
    v
}

fn in_domain(v: u32, var: &Variable, min_positive: u32) -> bool {
    v >= var.lower && v <= var.upper && (v == 0 || v >= min_positive)
}

/// `reach[j][s]`: the variables `j..` of a fiber can sum to exactly `s`.
fn suffix_reach(fiber: &Fiber, min_positive: u32) -> Vec<Vec<bool>> {
    let c = fiber.total as usize;
    let m = fiber.vars.len();
    let mut reach = vec![vec![false; c + 1]; m + 1];
    reach[m][0] = true;
    for j in (0..m).rev() {
        for s in 0..=c {
            reach[j][s] = (0..=s).any(|v| reach[j + 1][s - v] && in_domain(v as u32, &fiber.vars[j], min_positive));
        }
    }
    reach
}

/// Smallest and largest value any single variable of the fiber can take in
/// a feasible fiber assignment, or `None` if the fiber is infeasible.
fn fiber_range(fiber: &Fiber, min_positive: u32) -> Option<(u32, u32)> {
    let c = fiber.total as usize;
    let mut lo = u32::MAX;
    let mut hi = 0;
    for j in 0..fiber.vars.len() {
        let mut others = fiber.clone();
        others.vars.remove(j);
        let reach = suffix_reach(&others, min_positive);
        for v in 0..=c {
            if in_domain(v as u32, &fiber.vars[j], min_positive) && reach[0][c - v] {
                lo = lo.min(v as u32);
                hi = hi.max(v as u32);
            }
        }
    }
    (lo <= hi).then_some((lo, hi))
}

struct Search<'a> {
    sys: &'a ConstraintSystem,
    reach: Vec<Vec<Vec<bool>>>,
    /// Bounds on what fibers `i..` can still add to any nontrivial hyperplane.
    rest_min: Vec<u32>,
    rest_max: Vec<u32>,
    /// `next_target[s]`: smallest target `>= s`, or `u32::MAX`.
    next_target: Vec<u32>,
    /// `groups[i]`: hyperplanes that meet fibers `i..` in the same points,
    /// stored only where the grouping gets coarser than at `i - 1`.
    groups: Vec<Vec<Vec<u32>>>,
    sums: Vec<u32>,
    values: Vec<Vec<u32>>,
    nodes: u64,
    max_nodes: u64,
    exhausted: bool,
    solutions: Vec<ExtensionSolution>,
}

impl Search<'_> {
    fn feasible(&self, fiber: usize, lambda: usize) -> bool {
        let lo = self.rest_min[fiber + 1];
        let hi = self.rest_max[fiber + 1];
        self.sys.fibers[fiber].classes[lambda].iter().all(|&h| {
            let s = self.sums[h as usize];
            let from = (s + lo) as usize;
            from < self.next_target.len() && self.next_target[from] <= s + hi
        })
    }

    /// Every group must reach targets with one common remaining contribution.
    fn groups_feasible(&self, fiber: usize) -> bool {
        let lo = self.rest_min[fiber];
        let hi = self.rest_max[fiber];
        let is_target = |s: u32| self.sys.targets.binary_search(&s).is_ok();
        self.groups[fiber].iter().all(|group| {
            let s0 = self.sums[group[0] as usize];
            self.sys
                .targets
                .iter()
                .filter(|&&t| t >= s0 + lo && t <= s0 + hi)
                .any(|&t| group[1..].iter().all(|&h| is_target(self.sums[h as usize] + t - s0)))
        })
    }

    fn apply(&mut self, fiber: usize, lambda: usize, v: u32) {
        if v == 0 {
            return;
        }
        for &h in &self.sys.fibers[fiber].classes[lambda] {
            self.sums[h as usize] += v;
        }
    }

    fn revert(&mut self, fiber: usize, lambda: usize, v: u32) {
        if v == 0 {
            return;
        }
        for &h in &self.sys.fibers[fiber].classes[lambda] {
            self.sums[h as usize] -= v;
        }
    }

    fn run(&mut self, fiber: usize, var: usize, remaining: u32) {
        if self.exhausted {
            return;
        }
        let sys = self.sys;
        if fiber == sys.fibers.len() {
            self.record();
            return;
        }
        let f = &sys.fibers[fiber];
        let last = var + 1 == f.vars.len();
        let candidates: Vec<u32> = if last {
            vec![remaining]
        } else {
            let reach = &self.reach[fiber][var + 1];
            (0..=remaining)
                .filter(|&v| in_domain(v, &f.vars[var], sys.min_positive) && reach[(remaining - v) as usize])
                .collect()
        };
        for v in candidates {
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                self.exhausted = true;
                return;
            }
            self.apply(fiber, var, v);
            if self.feasible(fiber, var) {
                self.values[fiber][var] = v;
                if last {
                    if self.groups_feasible(fiber + 1) {
                        let next_total = sys.fibers.get(fiber + 1).map_or(0, |f| f.total);
                        self.run(fiber + 1, 0, next_total);
                    }
                } else {
                    self.run(fiber, var + 1, remaining - v);
                }
            }
            self.revert(fiber, var, v);
            if self.exhausted {
                return;
            }
        }
    }

    fn record(&mut self) {
        let mut x: Vec<(u64, u32)> = vec![(self.sys.zero_point, self.sys.r)];
        for (f, vals) in self.sys.fibers.iter().zip(&self.values) {
            for (var, &v) in f.vars.iter().zip(vals) {
                if v > 0 {
                    x.push((var.point, v));
                }
            }
        }
        x.sort_unstable();
        self.solutions.push(ExtensionSolution { x });
    }
}

fn agreement_groups(system: &ConstraintSystem) -> Vec<Vec<Vec<u32>>> {
    let m = system.fibers.len();
    let mut lambda_of = vec![vec![0u8; system.num_hyperplanes]; m];
    for (f, fiber) in system.fibers.iter().enumerate() {
        for (lambda, class) in fiber.classes.iter().enumerate() {
            for &h in class {
                lambda_of[f][h as usize] = lambda as u8;
            }
        }
    }
    let mut out = vec![Vec::new(); m + 1];
    let mut ids = vec![0usize; system.num_hyperplanes];
    let mut partitions = vec![(1usize, ids.clone()); m + 1];
    for i in (0..m).rev() {
        let mut seen = HashMap::new();
        for h in 0..system.num_hyperplanes {
            let next = seen.len();
            ids[h] = *seen.entry((ids[h], lambda_of[i][h])).or_insert(next);
        }
        partitions[i] = (seen.len(), ids.clone());
    }
    // Position m is the plain final check, already covered per hyperplane.
    for i in 1..m {
        let (c, ref ids) = partitions[i];
        if c == partitions[i - 1].0 {
            continue;
        }
        let mut groups = vec![Vec::new(); c];
        for (h, &g) in ids.iter().enumerate() {
            groups[g].push(h as u32);
        }
        groups.retain(|g| g.len() > 1);
        out[i] = groups;
    }
    out
}

/// All integer points of the system, within the node budget.
pub fn enumerate_solutions(system: &ConstraintSystem, budget: Budget) -> Enumeration {
    let empty = Enumeration {
        solutions: Vec::new(),
        complete: true,
        nodes: 0,
    };
    if system.targets.is_empty() {
        return empty;
    }
    let mut ranges = Vec::with_capacity(system.fibers.len());
    for f in &system.fibers {
        match fiber_range(f, system.min_positive) {
            Some(range) => ranges.push(range),
            None => return empty,
        }
    }
    let m = system.fibers.len();
    let mut rest_min = vec![0u32; m + 1];
    let mut rest_max = vec![0u32; m + 1];
    for i in (0..m).rev() {
        rest_min[i] = rest_min[i + 1] + ranges[i].0;
        rest_max[i] = rest_max[i + 1] + ranges[i].1;
    }
    let top = system.length as usize + 1;
    let mut next_target = vec![u32::MAX; top + 1];
    for s in (0..=top).rev() {
        next_target[s] = if system.targets.binary_search(&(s as u32)).is_ok() {
            s as u32
        } else {
            next_target.get(s + 1).copied().unwrap_or(u32::MAX)
        };
    }
    let mut search = Search {
        groups: agreement_groups(system),
        sys: system,
        reach: system.fibers.iter().map(|f| suffix_reach(f, system.min_positive)).collect(),
        rest_min,
        rest_max,
        next_target,
        sums: vec![0; system.num_hyperplanes],
        values: system.fibers.iter().map(|f| vec![0; f.vars.len()]).collect(),
        nodes: 0,
        max_nodes: budget.max_nodes,
        exhausted: false,
        solutions: Vec::new(),
    };
    // Nontrivial hyperplanes must all be checked at least once even when the
    // parent has no support left to assign.
    if m == 0 {
        if search.next_target[0] == 0 {
            search.record();
        }
    } else {
        search.run(0, 0, system.fibers[0].total);
    }
    Enumeration {
        complete: !search.exhausted,
        nodes: search.nodes,
        solutions: search.solutions,
    }
}

/// Child codes for the solutions, dropping those with weights outside `W`.
pub fn solutions_to_codes(parent: &LinearCode, weights: &WeightSet, solutions: &[ExtensionSolution]) -> Vec<LinearCode> {
    let field: &'static Field = parent.field();
    solutions
        .iter()
        .map(|s| LinearCode::from_support_unchecked(field, parent.k() + 1, s.x.clone()))
        .filter(|c| weights.is_envelope() || weights.admits(&c.weight_enumerator()))
        .collect()
}

/// Canonical lengthening: the child's minimum multiplicity equals `r`.
pub fn canonical_filter(_parent: &LinearCode, r: u32, child: &LinearCode) -> bool {
    child.min_col_mult() == r
}

/// Lexicographical lengthening: the parent's weight enumerator is the
/// smallest among the residuals of the child at its points of multiplicity
/// exactly `r`. Points whose residual does not span are skipped.
pub fn lexicographic_filter(parent: &LinearCode, r: u32, child: &LinearCode) -> bool {
    lexicographic_filter_with(&parent.weight_enumerator(), r, child)
}

pub(crate) fn lexicographic_filter_with(parent_we: &WeightEnumerator, r: u32, child: &LinearCode) -> bool {
    let mut best: Option<WeightEnumerator> = None;
    for &(p, m) in child.support() {
        if m != r {
            continue;
        }
        let Ok(res) = child.residual_subcode(p) else {
            continue;
        };
        let we = res.weight_enumerator();
        if &we < parent_we {
            return false;
        }
        if best.as_ref().is_none_or(|b| &we < b) {
            best = Some(we);
        }
    }
    best.as_ref() == Some(parent_we)
}

/// Builds, enumerates, converts and filters. Children come out sorted by
/// their support.
pub fn extend(problem: &ExtensionProblem, budget: Budget) -> Result<ExtensionOutcome, ExtensionError> {
    let system = build_constraints(problem)?;
    let enumeration = enumerate_solutions(&system, budget);
    let parent_we = problem.parent.weight_enumerator();
    let mut children: Vec<LinearCode> = solutions_to_codes(&problem.parent, &problem.weights, &enumeration.solutions)
        .into_iter()
        .filter(|c| !problem.canonical || canonical_filter(&problem.parent, problem.r, c))
        .filter(|c| !(problem.canonical && problem.lexicographic) || lexicographic_filter_with(&parent_we, problem.r, c))
        .collect();
    children.sort();
    Ok(ExtensionOutcome {
        children,
        complete: enumeration.complete,
        nodes: enumeration.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::GeneratorMatrix;

    fn all_ones(w: usize) -> LinearCode {
        LinearCode::from_multiplicities(2, 1, [(0, w as u32)]).unwrap()
    }

    fn g4() -> LinearCode {
        LinearCode::from_generator_matrix(&GeneratorMatrix::from_strings(2, &["1011111", "0100111"]).unwrap()).unwrap()
    }

    #[test]
    fn worked_example_system() {
        let w = WeightSet::new([4, 6]).unwrap();
        let sys = build_constraints(&ExtensionProblem::new(all_ones(6), 1, w)).unwrap();
        assert_eq!(sys.length, 7);
        assert_eq!(sys.targets, vec![1, 3]);
        assert_eq!(sys.fibers.len(), 1);
        assert_eq!(sys.fibers[0].total, 6);
        assert_eq!(sys.num_hyperplanes, 2);
        // x_<e_1> carries the systematic bound
        assert_eq!(sys.fibers[0].vars[0].lower, 1);
        let e = enumerate_solutions(&sys, Budget::default());
        assert!(e.complete);
        assert_eq!(e.solutions.len(), 1);
        assert_eq!(e.solutions[0].x, g4().support().to_vec());
    }

    #[test]
    fn worked_example_extend() {
        let w = WeightSet::new([4, 6]).unwrap();
        let out = extend(&ExtensionProblem::new(all_ones(6), 1, w.clone()), Budget::default()).unwrap();
        assert_eq!(out.children, vec![g4()]);
        let out = extend(&ExtensionProblem::new(all_ones(4), 3, w.clone()), Budget::default()).unwrap();
        assert!(out.children.is_empty());
        assert!(out.complete);
        // without filters the [4,1] parent does extend with r = 3
        let out = extend(&ExtensionProblem::new(all_ones(4), 3, w).with_filters(false, false), Budget::default()).unwrap();
        assert!(!out.children.is_empty());
        assert!(out.children.iter().all(|c| c.min_col_mult() < 3));
    }

    #[test]
    fn envelope_violation() {
        let w = WeightSet::new([4, 6]).unwrap();
        assert_eq!(
            build_constraints(&ExtensionProblem::new(all_ones(5), 1, w)).unwrap_err(),
            ExtensionError::EnvelopeViolation { weight: 5 }
        );
    }

    #[test]
    fn filters_on_worked_example() {
        let child = g4();
        assert!(canonical_filter(&all_ones(6), 1, &child));
        assert!(!canonical_filter(&all_ones(4), 3, &child));
        assert!(lexicographic_filter(&all_ones(6), 1, &child));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let w = WeightSet::min_distance(1, 20, 1).unwrap();
        let parent = LinearCode::from_multiplicities(2, 2, [(0, 4), (1, 4), (2, 4)]).unwrap();
        let p = ExtensionProblem::new(parent, 1, w).with_filters(false, false);
        let out = extend(&p, Budget::nodes(3)).unwrap();
        assert!(!out.complete);
        let out = extend(&p, Budget::default()).unwrap();
        assert!(out.complete);
    }

    #[test]
    fn weight_sets() {
        let w = WeightSet::new([9, 18, 27, 36, 45, 54]).unwrap();
        assert_eq!((w.delta(), w.a(), w.b()), (9, 1, 6));
        assert!(w.is_envelope());
        let w = WeightSet::new([4, 8]).unwrap();
        assert_eq!(w.envelope(), vec![4, 8]);
        let w = WeightSet::new([4, 6, 10]).unwrap();
        assert_eq!(w.envelope(), vec![4, 6, 8, 10]);
        assert!(!w.is_envelope());
        let w = WeightSet::min_distance(3, 10, 1).unwrap();
        assert_eq!(w.weights(), &[3, 4, 5, 6, 7, 8, 9, 10]);
        let w = WeightSet::min_distance(6, 24, 2).unwrap();
        assert_eq!(w.weights(), &[6, 8, 10, 12, 14, 16, 18, 20, 22, 24]);
    }
}
