//! Reference counts shipped with the crate and the suites that check a
//! fresh classification against them.
//!
//! Data files are tab-separated `n k value` rows; lines starting with `#`
//! are comments.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::classify::{self, ClassificationTask, ClassifyError, RunOptions, WeightSpec};

const BINARY_D3: &str = include_str!("../data/binary_d3.tsv");
const TERNARY_DIV9: &str = include_str!("../data/ternary_div9.tsv");
const BINARY_MIN_MINIMAL: &str = include_str!("../data/binary_min_minimal.tsv");

/// Reference values keyed by `(n, k)`.
pub type Table = BTreeMap<(usize, usize), u64>;

fn parse(data: &str) -> Table {
    let mut table = Table::new();
    for line in data.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f: Vec<u64> = line
            .split('\t')
            .map(|t| t.parse().expect("vendored table is well formed"))
            .collect();
        table.insert((f[0] as usize, f[1] as usize), f[2]);
    }
    table
}

/// Counts of binary codes with minimum distance 3. Missing cells are 0.
pub fn binary_d3() -> Table {
    parse(BINARY_D3)
}

/// Counts of ternary codes with all weights divisible by 9, for
/// `35 <= n <= 55` and `2 <= k <= 8`.
pub fn ternary_div9() -> Table {
    parse(TERNARY_DIV9)
}

/// Smallest number of minimal codewords of a projective binary `[n, k]`
/// code, for `3 <= n <= 15`.
pub fn binary_min_minimal() -> Table {
    parse(BINARY_MIN_MINIMAL)
}

/// The weight set of the ternary table.
pub const TERNARY_WEIGHTS: [u32; 6] = [9, 18, 27, 36, 45, 54];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Binary `d = 3` counts for `n <= 12`.
    Table1Small,
    /// Binary `d = 3`, `k = 2` counts against the closed formula.
    FormulaK2 { n_max: usize },
    /// Ternary 9-divisible counts for `k <= 3`, `35 <= n <= 45`.
    Table4K2,
    /// Minimal codeword minima for `n <= 10`.
    Table5Small,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table1-small" => Ok(Suite::Table1Small),
            "formula-k2" => Ok(Suite::FormulaK2 { n_max: 16 }),
            "table4-k2" => Ok(Suite::Table4K2),
            "table5-small" => Ok(Suite::Table5Small),
            _ => Err(format!("unknown suite {s:?}")),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Table1Small => "table1-small",
            Suite::FormulaK2 { .. } => "formula-k2",
            Suite::Table4K2 => "table4-k2",
            Suite::Table5Small => "table5-small",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub n: usize,
    pub k: usize,
    pub expected: u64,
    pub actual: u64,
}

impl Check {
    pub fn ok(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
    /// False if some classification step ran out of budget.
    pub complete: bool,
}

impl SuiteReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok())
    }

    pub fn passed(&self) -> bool {
        self.complete && self.mismatches().next().is_none()
    }
}

/// Compares every cell in the window present on either side, treating
/// missing cells as 0.
fn compare(expected: &Table, actual: &Table, window: impl Fn(usize, usize) -> bool) -> Vec<Check> {
    let mut keys: Vec<(usize, usize)> = expected.keys().chain(actual.keys()).copied().filter(|&(n, k)| window(n, k)).collect();
    keys.sort_unstable();
    keys.dedup();
    keys.into_iter()
        .map(|(n, k)| Check {
            n,
            k,
            expected: expected.get(&(n, k)).copied().unwrap_or(0),
            actual: actual.get(&(n, k)).copied().unwrap_or(0),
        })
        .collect()
}

fn counts(task: &ClassificationTask) -> Result<(Table, bool), ClassifyError> {
    let result = classify::classify_with(task, &RunOptions { out_dir: None, count_only: true })?;
    let table = result.cells.iter().map(|(&key, cell)| (key, cell.count as u64)).collect();
    Ok((table, result.is_complete()))
}

pub fn run_suite(suite: Suite, shards: usize) -> Result<SuiteReport, ClassifyError> {
    let (checks, complete) = match suite {
        Suite::Table1Small => {
            let task = ClassificationTask::min_distance(2, 3, 12, 12).with_shards(shards);
            let (actual, complete) = counts(&task)?;
            (compare(&binary_d3(), &actual, |n, _| n <= 12), complete)
        }
        Suite::FormulaK2 { n_max } => {
            let rows = classify::verify_k2_formula(5, n_max, shards)?;
            let checks = rows
                .into_iter()
                .map(|r| Check {
                    n: r.n,
                    k: 2,
                    expected: r.formula,
                    actual: r.classified as u64,
                })
                .collect();
            (checks, true)
        }
        Suite::Table4K2 => {
            let task = ClassificationTask::new(3, WeightSpec::Explicit(TERNARY_WEIGHTS.to_vec()), 45, 3).with_shards(shards);
            let (actual, complete) = counts(&task)?;
            (compare(&ternary_div9(), &actual, |n, k| (35..=45).contains(&n) && (2..=3).contains(&k)), complete)
        }
        Suite::Table5Small => {
            let (actual, complete) = classify::min_minimal_codewords_table(2, 10, shards)?;
            (compare(&binary_min_minimal(), &actual, |n, k| (3..=10).contains(&n) && k >= 2), complete)
        }
    };
    Ok(SuiteReport { suite, checks, complete })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vendored_tables_parse() {
        let t1 = binary_d3();
        assert_eq!(t1[&(10, 4)], 76);
        assert_eq!(t1[&(16, 11)], 144);
        let t4 = ternary_div9();
        assert_eq!(t4.len(), 21 * 7);
        assert!((2..=8).all(|k| t4[&(41, k)] == 0));
        let t5 = binary_min_minimal();
        assert_eq!(t5[&(9, 4)], 12);
        assert_eq!(t5[&(15, 15)], 15);
    }

    #[test]
    fn suite_names_roundtrip() {
        for s in [Suite::Table1Small, Suite::FormulaK2 { n_max: 16 }, Suite::Table4K2, Suite::Table5Small] {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert!("table9".parse::<Suite>().is_err());
    }
}
