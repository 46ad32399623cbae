//! Acceptance checks, one line per criterion. Run with
//! `cargo test --release -p lincode-core --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lincode_core::canon::{automorphism_order, canonical_form, dedupe, invariant_key, isometric};
use lincode_core::classify::{classify, classify_with, min_minimal_codewords_table, RunOptions};
use lincode_core::code::{macwilliams_transform, power_moment_coefficients, power_moments};
use lincode_core::extender::extend;
use lincode_core::tables::{binary_d3, binary_min_minimal, ternary_div9, TERNARY_WEIGHTS};
use lincode_core::{
    Budget, ClassificationResult, ClassificationTask, ExtensionProblem, GeneratorMatrix, LinearCode, WeightEnumerator,
    WeightSet, WeightSpec,
};

use common::{brute_force_binary_counts, brute_force_enumerator, code, random_isometric_copy};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run(task: &ClassificationTask) -> Result<ClassificationResult, String> {
    let result = classify_with(task, &RunOptions { out_dir: None, count_only: true }).map_err(|e| e.to_string())?;
    ensure(result.is_complete(), || format!("{} ran out of budget", task.describe()))?;
    Ok(result)
}

fn binary_d3_rows() -> Outcome {
    let result = run(&ClassificationTask::min_distance(2, 3, 12, 12))?;
    let table = binary_d3();
    for n in 3..=12 {
        for k in 1..=12 {
            let expected = table.get(&(n, k)).copied().unwrap_or(0);
            let actual = result.count(n, k).unwrap_or(0) as u64;
            ensure(expected == actual, || format!("[{n},{k},3]_2: {actual} codes, table says {expected}"))?;
        }
    }
    ensure(result.row(10, 6) == [1, 10, 42, 76, 41, 4], || format!("row 10 is {:?}", result.row(10, 6)))?;
    ensure(result.row(12, 8) == [1, 15, 115, 509, 1012, 636, 86, 2], || format!("row 12 is {:?}", result.row(12, 8)))?;
    Ok("[n,k,3]_2 counts for n <= 12 match".into())
}

/// Smallest `s` with `s^2 >= x`.
fn ceil_sqrt(x: u64) -> u64 {
    (0..).find(|s| s * s >= x).unwrap()
}

fn k2_formula() -> Outcome {
    let result = run(&ClassificationTask::min_distance(2, 3, 16, 2))?;
    for n in 5u64..=16 {
        let expected = ceil_sqrt((n - 4) * (n - 3) * (2 * n - 7) / 6);
        let actual = result.count(n as usize, 2).unwrap_or(0) as u64;
        ensure(expected == actual, || format!("[{n},2,3]_2: {actual} codes, formula gives {expected}"))?;
    }
    Ok("[n,2,3]_2 counts for 5 <= n <= 16 match the closed formula".into())
}

fn worked_example() -> Outcome {
    let w = WeightSet::new([4, 6]).map_err(|e| e.to_string())?;
    let all_ones = |n| LinearCode::from_multiplicities(2, 1, [(0, n)]).unwrap();
    let out = extend(&ExtensionProblem::new(all_ones(6), 1, w.clone()), Budget::default()).map_err(|e| e.to_string())?;
    let children = dedupe(out.children).map_err(|e| e.to_string())?;
    ensure(children.len() == 1, || format!("{} children of the [6,1] code", children.len()))?;
    let g4 = code(2, &["1011111", "0100111"]);
    ensure(isometric(&children[0], &g4).unwrap(), || "child is not the expected [7,2] code".into())?;
    let out = extend(&ExtensionProblem::new(all_ones(4), 3, w), Budget::default()).map_err(|e| e.to_string())?;
    ensure(out.children.is_empty(), || format!("{} children of the [4,1] code", out.children.len()))?;
    Ok("one child for r=1, none for r=3".into())
}

fn hamming_codes() -> Outcome {
    let small = run(&ClassificationTask::min_distance(2, 3, 7, 4))?;
    ensure(small.count(7, 4) == Some(1), || format!("[7,4,3]_2: {:?}", small.count(7, 4)))?;
    let large = run(&ClassificationTask::min_distance(2, 3, 15, 11).with_max_redundancy(Some(4)))?;
    ensure(large.count(15, 11) == Some(1), || format!("[15,11,3]_2: {:?}", large.count(15, 11)))?;
    let g = GeneratorMatrix::from_strings(2, &["1000011", "0100101", "0010110", "0001111"]).unwrap();
    let hamming = LinearCode::from_generator_matrix(&g).unwrap();
    ensure(hamming.weight_enumerator().0 == brute_force_enumerator(&g), || "Hamming enumerator differs".into())?;
    Ok("unique [7,4,3]_2 and [15,11,3]_2 codes".into())
}

/// Dimension bound for the all-zero row at `n = 41`. Larger dimensions are
/// out of reach at desk scale.
const ROW_41_K_MAX: usize = 4;

fn ternary_divisible() -> Outcome {
    let spec = WeightSpec::Explicit(TERNARY_WEIGHTS.to_vec());
    let table = ternary_div9();
    let small = run(&ClassificationTask::new(3, spec.clone(), 45, 3))?;
    for (n, k, expected) in [(35, 3, 1), (36, 2, 4), (36, 3, 10), (39, 2, 3), (42, 2, 2), (45, 2, 5)] {
        let actual = small.count(n, k).unwrap_or(0);
        ensure(actual == expected, || format!("({n},{k}): {actual} codes, expected {expected}"))?;
        ensure(table[&(n, k)] == expected as u64, || format!("vendored table disagrees at ({n},{k})"))?;
    }
    let row = run(&ClassificationTask::new(3, spec, 41, ROW_41_K_MAX).with_budget(Budget::nodes(4_000_000_000)))?;
    ensure(row.row(41, ROW_41_K_MAX).iter().all(|&c| c == 0), || format!("row 41 is {:?}", row.row(41, ROW_41_K_MAX)))?;
    Ok(format!("listed cells match, no codes of length 41 for k <= {ROW_41_K_MAX}"))
}

fn minimal_codewords() -> Outcome {
    let (actual, complete) = min_minimal_codewords_table(2, 10, 1).map_err(|e| e.to_string())?;
    ensure(complete, || "ran out of budget".into())?;
    let table = binary_min_minimal();
    for n in 3..=10 {
        for k in 2..=n {
            let expected = table.get(&(n, k)).copied();
            ensure(actual.get(&(n, k)).copied() == expected, || {
                format!("m_2({n},{k}) = {:?}, table says {expected:?}", actual.get(&(n, k)))
            })?;
        }
    }
    for (n, k, m) in [(7, 4, 8), (9, 4, 12), (10, 4, 14)] {
        ensure(actual.get(&(n, k)) == Some(&m), || format!("m_2({n},{k}) = {:?}", actual.get(&(n, k))))?;
    }
    Ok("m_2(n,k) for n <= 10 matches".into())
}

fn even_24_14() -> Outcome {
    let rows = [
        "111111100010000000000000",
        "000111111101000000000000",
        "111011111100100000000000",
        "001101100100010000000000",
        "011010101000001000000000",
        "110001110000000100000000",
        "111101011000000010000000",
        "101110001000000001000000",
        "110110110100000000100000",
        "101010110000000000010000",
        "101011000100000000001000",
        "100010011100000000000100",
        "110101000100000000000010",
        "101001101000000000000001",
    ];
    let g = GeneratorMatrix::from_strings(2, &rows).unwrap();
    let c = LinearCode::from_generator_matrix(&g).unwrap();
    let mut printed = vec![0u64; 25];
    for (i, a) in [(0, 1), (6, 336), (8, 1335), (10, 3888), (12, 5264), (14, 3888), (16, 1335), (18, 336), (24, 1)] {
        printed[i] = a;
    }
    let we = c.weight_enumerator().0;
    ensure(we == printed, || format!("enumerator {we:?}"))?;
    ensure(brute_force_enumerator(&g) == printed, || "codeword listing disagrees".into())?;
    let aut = automorphism_order(&c).map_err(|e| e.to_string())?;
    ensure(aut == 96, || format!("automorphism order {aut}"))?;
    Ok("weight enumerator and automorphism order 96".into())
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn macwilliams_point() -> Outcome {
    let (n, k) = (70usize, 6usize);
    let mut a = vec![0u64; n + 1];
    a[0] = 1;
    a[45] = 588;
    a[54] = 140;
    let b = macwilliams_transform(&WeightEnumerator(a.clone()), 3, k).map_err(|e| e.to_string())?;
    let b = b.to_integers().ok_or("dual distribution is not integral")?;
    ensure(b[1].is_zero() && b[2].is_zero() && b[3] == BigInt::from(280), || format!("B_1..B_3 = {:?}", &b[1..4]))?;
    ensure(b.iter().all(|x| x >= &BigInt::zero()), || "negative dual entry".into())?;

    // (mw1)-(mw4) as printed, in the unknowns A_9, ..., A_54 and B_3
    let weights = [9usize, 18, 27, 36, 45, 54];
    let printed: [(i64, [i64; 6], i64); 4] = [
        (1, [1, 1, 1, 1, 1, 1], 1),
        (70, [61, 52, 43, 34, 25, 16], 70),
        (2415, [1830, 1326, 903, 561, 300, 120], 2415),
        (54740, [35990, 22100, 12341, 5984, 2300, 560], 54740),
    ];
    for (nu, (c0, coeffs, r0)) in printed.iter().enumerate() {
        let derived = power_moment_coefficients(n, nu);
        ensure(derived[0] == BigInt::from(*c0) && derived[0] == binomial(70, nu as i64), || format!("constant of moment {nu}"))?;
        for (&w, &c) in weights.iter().zip(coeffs) {
            ensure(binomial(70 - w as i64, nu as i64) == BigInt::from(c), || format!("coefficient of A_{w} in moment {nu}"))?;
            ensure(derived[w] == BigInt::from(c), || format!("library coefficient of A_{w} in moment {nu}"))?;
        }
        ensure(binomial(70, nu as i64) == BigInt::from(*r0), || format!("right side of moment {nu}"))?;
    }
    let av: Vec<BigRational> = a.iter().map(|&x| rat(x as i64)).collect();
    let b3 = BigRational::from_integer(b[3].clone());
    let pow3 = |e: usize| rat(3i64.pow(e as u32));
    for (nu, (c0, coeffs, r0)) in printed.iter().enumerate() {
        let lhs: BigRational = rat(*c0) + weights.iter().zip(coeffs).map(|(&w, &c)| rat(c) * &av[w]).sum::<BigRational>();
        let extra = if nu == 3 { b3.clone() } else { BigRational::zero() };
        let rhs = (rat(*r0) + extra) * pow3(k - nu);
        ensure(lhs == rhs, || format!("moment {nu}: {lhs} != {rhs}"))?;
    }
    let bv: Vec<BigRational> = b.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    ensure(power_moments(&av, &bv, 3, k, 4).iter().all(|m| m.holds()), || "library power moments fail".into())?;

    // 20 (mw1) - 2 (mw2) + (mw3) / 10, with A_45 and A_54 eliminated
    let mult = [rat(20), rat(-2), BigRational::new(BigInt::from(1), BigInt::from(10))];
    let mut comb_const = BigRational::zero();
    let mut comb = vec![BigRational::zero(); 6];
    let mut comb_rhs = BigRational::zero();
    for (nu, (m, (c0, coeffs, r0))) in mult.iter().zip(&printed).enumerate() {
        comb_const += m * rat(*c0);
        for (acc, &c) in comb.iter_mut().zip(coeffs) {
            *acc += m * rat(c);
        }
        comb_rhs += m * rat(*r0) * BigRational::new(BigInt::one(), BigInt::from(3i64.pow(nu as u32)));
    }
    let frac = |p: i64, q: i64| BigRational::new(BigInt::from(p), BigInt::from(q));
    let expected = [rat(81), frac(243, 5), frac(243, 10), frac(81, 10), rat(0), rat(0)];
    ensure(comb_const == frac(243, 2), || format!("constant {comb_const}"))?;
    ensure(comb == expected, || format!("coefficients {comb:?}"))?;
    ensure(comb_rhs == frac(1, 6), || format!("right side {comb_rhs} * 3^k"))?;
    let value: BigRational = comb_const + weights.iter().zip(&comb).map(|(&w, c)| c * &av[w]).sum::<BigRational>();
    ensure(value == pow3(k) / rat(6), || format!("combination evaluates to {value}"))?;
    Ok("B_3 = 280, moments 0..3 and the combination hold exactly".into())
}

fn filter_safety() -> Result<(), String> {
    let on = run(&ClassificationTask::min_distance(2, 3, 10, 4))?;
    let off = run(&ClassificationTask::min_distance(2, 3, 10, 4).with_filters(false, false))?;
    let counts = |r: &ClassificationResult| r.cells.iter().map(|(&key, c)| (key, c.count)).collect::<Vec<_>>();
    ensure(counts(&on) == counts(&off), || format!("filtered {:?} vs unfiltered {:?}", counts(&on), counts(&off)))
}

fn oracle_equivalence() -> Result<(), String> {
    for d in [1, 2, 3] {
        let oracle = brute_force_binary_counts(7, 3, d);
        let result = run(&ClassificationTask::min_distance(2, d as u32, 7, 3))?;
        let counts = result.cells.iter().filter(|(_, c)| c.count > 0).map(|(&key, c)| (key, c.count)).collect();
        ensure(oracle == counts, || format!("d = {d}: oracle {oracle:?} vs {counts:?}"))?;
    }
    Ok(())
}

fn shard_invariance() -> Result<(), String> {
    let tasks = [
        ClassificationTask::min_distance(2, 3, 11, 5),
        ClassificationTask::new(3, WeightSpec::Explicit(vec![3, 6]), 10, 4),
    ];
    for task in tasks {
        let base = classify(&task).map_err(|e| e.to_string())?;
        for shards in [2, 8] {
            let other = classify(&task.clone().with_shards(shards)).map_err(|e| e.to_string())?;
            ensure(other.cells == base.cells, || format!("{} differs with {shards} shards", task.describe()))?;
        }
    }
    Ok(())
}

fn isometry_invariance() -> Result<(), String> {
    let samples = [
        code(2, &["1000011", "0100101", "0010110", "0001111"]),
        code(2, &["11100110", "00111011"]),
        code(3, &["1110012", "0121100", "0012222"]),
        code(4, &["100123", "010132", "001111"]),
        code(4, &["1101", "0112"]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for c in &samples {
        let sig = canonical_form(c).map_err(|e| e.to_string())?;
        let aut = automorphism_order(c).map_err(|e| e.to_string())?;
        let key = invariant_key(c);
        let minimal = c.minimal_codewords_count().map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let t = random_isometric_copy(c, &mut rng);
            ensure(canonical_form(&t).unwrap() == sig, || format!("canonical form moved for {t:?}"))?;
            ensure(invariant_key(&t) == key, || format!("invariants moved for {t:?}"))?;
            ensure(automorphism_order(&t).unwrap() == aut, || format!("automorphism order moved for {t:?}"))?;
            ensure(t.minimal_codewords_count().unwrap() == minimal, || format!("minimal codewords moved for {t:?}"))?;
            ensure(t.is_projective() == c.is_projective() && t.max_col_mult() == c.max_col_mult(), || {
                format!("multiplicities moved for {t:?}")
            })?;
        }
    }
    Ok(())
}

fn property_suites() -> Outcome {
    filter_safety().map_err(|e| format!("filter safety: {e}"))?;
    oracle_equivalence().map_err(|e| format!("oracle: {e}"))?;
    shard_invariance().map_err(|e| format!("shards: {e}"))?;
    isometry_invariance().map_err(|e| format!("isometry: {e}"))?;
    Ok("filter safety, brute-force oracle, shards 1/2/8, 100 isometries per sample".into())
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Outcome); 9] = [
        (1, binary_d3_rows),
        (2, k2_formula),
        (3, worked_example),
        (4, hamming_codes),
        (5, ternary_divisible),
        (6, minimal_codewords),
        (7, even_24_14),
        (8, macwilliams_point),
        (9, property_suites),
    ];
    let mut failed = 0;
    for (id, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {id} PASS {msg} ({secs:.1}s)"),
            Err(msg) => {
                failed += 1;
                println!("criterion {id} FAIL {msg} ({secs:.1}s)");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
