//! Independent oracles shared by the integration tests. Nothing here uses
//! the extender or the classification driver.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use lincode_core::canon::{canonical_form, dedupe};
use lincode_core::galois::field;
use lincode_core::{CanonicalSignature, GeneratorMatrix, LinearCode};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn code(q: u32, rows: &[&str]) -> LinearCode {
    LinearCode::from_generator_matrix(&GeneratorMatrix::from_strings(q, rows).unwrap()).unwrap()
}

/// Weight distribution by listing every codeword of a generator matrix.
pub fn brute_force_enumerator(g: &GeneratorMatrix) -> Vec<u64> {
    let mut a = vec![0u64; g.n() + 1];
    for w in g.codewords() {
        a[w.iter().filter(|&&x| x != 0).count()] += 1;
    }
    a
}

fn parity(x: u32) -> u32 {
    x.count_ones() & 1
}

fn binary_rank(cols: &[u32]) -> usize {
    let mut basis: Vec<u32> = Vec::new();
    for &c in cols {
        let mut v = c;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Invertible `k x k` binary matrices, each row a bit mask.
fn binary_gl(k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut rows = vec![0u32; k];
    fn rec(i: usize, k: usize, rows: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == k {
            if binary_rank(rows) == k {
                out.push(rows.clone());
            }
            return;
        }
        for r in 1..(1u32 << k) {
            rows[i] = r;
            rec(i + 1, k, rows, out);
        }
    }
    rec(0, k, &mut rows, &mut out);
    out
}

/// Counts of binary `[n, k, >= d]` codes without zero columns, up to
/// equivalence, by listing every multiset of nonzero columns and reducing
/// it under `GL(k, 2)`.
pub fn brute_force_binary_counts(n_max: usize, k_max: usize, d: usize) -> BTreeMap<(usize, usize), usize> {
    let mut counts = BTreeMap::new();
    for k in 1..=k_max {
        let gl = binary_gl(k);
        let top = (1u32 << k) - 1;
        for n in k..=n_max {
            let mut classes: BTreeSet<Vec<u32>> = BTreeSet::new();
            let mut cols = vec![1u32; n];
            loop {
                if binary_rank(&cols) == k {
                    let min_weight = (1..=top)
                        .map(|m| cols.iter().filter(|&&c| parity(m & c) == 1).count())
                        .min()
                        .unwrap();
                    if min_weight >= d {
                        let key = gl
                            .iter()
                            .map(|a| {
                                let mut img: Vec<u32> = cols
                                    .iter()
                                    .map(|&c| a.iter().enumerate().fold(0, |acc, (i, &row)| acc | (parity(row & c) << i)))
                                    .collect();
                                img.sort_unstable();
                                img
                            })
                            .min()
                            .unwrap();
                        classes.insert(key);
                    }
                }
                // next nondecreasing sequence over 1..=top
                let Some(i) = (0..n).rev().find(|&i| cols[i] < top) else {
                    break;
                };
                let v = cols[i] + 1;
                cols[i..].iter_mut().for_each(|c| *c = v);
            }
            if !classes.is_empty() {
                counts.insert((n, k), classes.len());
            }
        }
    }
    counts
}

/// A generator matrix of a random code isometric to `code`: a random
/// change of basis, column permutation, column scaling and field
/// automorphism.
pub fn random_isometric_copy<R: Rng>(code: &LinearCode, rng: &mut R) -> LinearCode {
    let q = code.q();
    let f = field(q).unwrap();
    let g = code.to_systematic_generator_matrix();
    let (k, n) = (g.k(), g.n());
    let basis = loop {
        let a: Vec<Vec<u8>> = (0..k).map(|_| (0..k).map(|_| rng.random_range(0..q) as u8).collect()).collect();
        if GeneratorMatrix::new(q, a.clone()).unwrap().rank() == k {
            break a;
        }
    };
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let scale: Vec<u8> = (0..n).map(|_| rng.random_range(1..q) as u8).collect();
    let autos = f.automorphisms();
    let sigma = autos[rng.random_range(0..autos.len())];
    let rows: Vec<Vec<u8>> = basis
        .iter()
        .map(|a| {
            (0..n)
                .map(|j| {
                    let src = perm[j];
                    let x = (0..k).fold(0u8, |acc, l| f.add(acc, f.mul(a[l], g.rows()[l][src])));
                    sigma[f.mul(x, scale[j]) as usize]
                })
                .collect()
        })
        .collect();
    LinearCode::from_generator_matrix(&GeneratorMatrix::new(q, rows).unwrap()).unwrap()
}

/// Every code `[[G | 0], [v | 1 ... 1]]` with `r` trailing columns and all
/// nonzero weights in `weights`, up to isometry.
pub fn row_append_children(parent: &LinearCode, r: usize, weights: &[u32]) -> Vec<LinearCode> {
    let q = parent.q();
    let g = parent.to_systematic_generator_matrix();
    let n = g.n();
    let mut v = vec![0u8; n];
    let mut out = Vec::new();
    loop {
        let mut rows: Vec<Vec<u8>> = g.rows().iter().map(|row| row.iter().copied().chain(std::iter::repeat_n(0, r)).collect()).collect();
        rows.push(v.iter().copied().chain(std::iter::repeat_n(1, r)).collect());
        let child = LinearCode::from_generator_matrix(&GeneratorMatrix::new(q, rows).unwrap()).unwrap();
        let we = child.weight_enumerator();
        if we.nonzero_weights().all(|w| weights.contains(&(w as u32))) {
            out.push(child);
        }
        let Some(i) = (0..n).find(|&i| v[i] + 1 < q as u8) else {
            break;
        };
        v[..i].iter_mut().for_each(|x| *x = 0);
        v[i] += 1;
    }
    dedupe(out).unwrap()
}

pub fn signatures(codes: &[LinearCode]) -> BTreeSet<CanonicalSignature> {
    codes.iter().map(|c| canonical_form(c).unwrap()).collect()
}
