//! Linear codes as multisets of points in `PG(k-1, q)`.
//!
//! A code of length `n` and dimension `k` is stored as its column multiset:
//! the multiplicity `m(P)` of every point `P` spanned by a column of a
//! generator matrix. Codewords correspond to hyperplanes, and the weight of
//! the codeword for hyperplane `H` is `n - sum_{P <= H} m(P)`. All invariants
//! below are computed from that description.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::galois::{self, Field, GaloisError, ProjectivePoint, ProjectiveSpace};
use crate::linalg;

/// Default upper bound on `k` for codeword enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error(transparent)]
    Galois(#[from] GaloisError),
    #[error("column {column} of the generator matrix is zero")]
    ZeroColumn { column: usize },
    #[error("generator matrix has rank {rank}, expected {k}")]
    RankDeficient { rank: usize, k: usize },
    #[error("projected multiset spans only {rank} of {expected} dimensions")]
    RankCollapse { rank: usize, expected: usize },
    #[error("malformed generator matrix: {0}")]
    MalformedMatrix(String),
    #[error("operation needs dimension at least {min}, code has {k}")]
    InvalidDimension { k: usize, min: usize },
    #[error("dimension {k} exceeds the enumeration cap {cap}")]
    DimensionTooLarge { k: usize, cap: usize },
    #[error("inconsistent weight distribution: coefficients sum to {sum}, expected {expected}")]
    InconsistentInput { sum: String, expected: String },
}

/// A `k x n` matrix over `GF(q)` whose rows generate a code.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorMatrix {
    q: u8,
    rows: Vec<Vec<u8>>,
}

impl GeneratorMatrix {
    pub fn new(q: u32, rows: Vec<Vec<u8>>) -> Result<Self, CodeError> {
        let f = galois::field(q)?;
        if rows.is_empty() {
            return Err(CodeError::MalformedMatrix("no rows".into()));
        }
        let n = rows[0].len();
        if n == 0 {
            return Err(CodeError::MalformedMatrix("no columns".into()));
        }
        for row in &rows {
            if row.len() != n {
                return Err(CodeError::MalformedMatrix("rows of unequal length".into()));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= f.order()) {
                return Err(GaloisError::ElementOutOfRange { element: bad, q: f.order() }.into());
            }
        }
        Ok(GeneratorMatrix { q: q as u8, rows })
    }

    /// Parses rows of single-digit field elements, e.g. `["1011", "0111"]`.
    pub fn from_strings<S: AsRef<str>>(q: u32, rows: &[S]) -> Result<Self, CodeError> {
        let rows = rows
            .iter()
            .map(|r| {
                r.as_ref()
                    .chars()
                    .map(|c| {
                        c.to_digit(10)
                            .map(|d| d as u8)
                            .ok_or_else(|| CodeError::MalformedMatrix(format!("bad symbol {c:?}")))
                    })
                    .collect::<Result<Vec<u8>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(q, rows)
    }

    pub fn q(&self) -> u32 {
        self.q as u32
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> Vec<u8> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(galois::field(self.q as u32).expect("validated"), &self.rows)
    }

    /// Rows rendered as strings of digits.
    pub fn to_strings(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&x| char::from(b'0' + x)).collect())
            .collect()
    }

    /// All `q^k` codewords, in the order of their coefficient vectors.
    pub fn codewords(&self) -> Vec<Vec<u8>> {
        let f = galois::field(self.q as u32).expect("validated");
        let k = self.k();
        let n = self.n();
        let total = (self.q as u64).pow(k as u32);
        let mut out = Vec::with_capacity(total as usize);
        let mut coeffs = vec![0u8; k];
        for _ in 0..total {
            let mut word = vec![0u8; n];
            for (c, row) in coeffs.iter().zip(&self.rows) {
                if *c == 0 {
                    continue;
                }
                for (w, &x) in word.iter_mut().zip(row) {
                    *w = f.add(*w, f.mul(*c, x));
                }
            }
            out.push(word);
            for c in coeffs.iter_mut().rev() {
                *c += 1;
                if *c < self.q {
                    break;
                }
                *c = 0;
            }
        }
        out
    }
}

/// Codeword counts by Hamming weight, `(A_0, ..., A_n)`.
///
/// Ordered lexicographically on the coefficient sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightEnumerator(pub Vec<u64>);

impl WeightEnumerator {
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    /// The length `n` of the underlying code.
    pub fn length(&self) -> usize {
        self.0.len() - 1
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn nonzero_weights(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &a)| a > 0)
            .map(|(i, _)| i)
    }

    pub fn min_distance(&self) -> Option<usize> {
        self.nonzero_weights().next()
    }

    /// Number of hyperplanes meeting the multiset in exactly `i` points,
    /// `a_i = A_{n-i} / (q-1)` for `i < n`.
    pub fn hyperplane_spectrum(&self, q: u32) -> Vec<u64> {
        let n = self.length();
        (0..n).map(|i| self.0[n - i] / (q as u64 - 1)).collect()
    }
}

impl fmt::Display for WeightEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, a) {
                (0, a) => write!(f, "{a}")?,
                (1, 1) => write!(f, "x")?,
                (1, a) => write!(f, "{a}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, a) => write!(f, "{a}x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Weight distribution `(B_0, ..., B_n)` of a dual code, kept exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualWeightDistribution(pub Vec<BigRational>);

impl DualWeightDistribution {
    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    /// The distribution as integers, if every coefficient is one.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.0
            .iter()
            .map(|b| b.is_integer().then(|| b.to_integer()))
            .collect()
    }

    /// Converts to a weight enumerator when every coefficient is a
    /// nonnegative integer.
    pub fn to_weight_enumerator(&self) -> Option<WeightEnumerator> {
        self.to_integers()?
            .into_iter()
            .map(|b| if b.is_negative() { None } else { b.to_u64() })
            .collect::<Option<Vec<u64>>>()
            .map(WeightEnumerator)
    }
}

/// A linear `[n, k]_q` code given by the multiplicities of its column points.
#[derive(Clone)]
pub struct LinearCode {
    field: &'static Field,
    k: usize,
    /// `(point index, multiplicity)`, sorted by index, multiplicities > 0.
    support: Vec<(u64, u32)>,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.field.order() == other.field.order() && self.k == other.k && self.support == other.support
    }
}

impl Eq for LinearCode {}

impl Hash for LinearCode {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.order().hash(state);
        self.k.hash(state);
        self.support.hash(state);
    }
}

impl PartialOrd for LinearCode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LinearCode {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.field.order(), self.k, &self.support).cmp(&(other.field.order(), other.k, &other.support))
    }
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]_{} {:?}", self.length(), self.k, self.q(), self.support)
    }
}

impl LinearCode {
    /// Builds a code from `(point index, multiplicity)` pairs. Repeated indices
    /// are merged and zero multiplicities dropped. The points must span.
    pub fn from_multiplicities<I>(q: u32, k: usize, mult: I) -> Result<Self, CodeError>
    where
        I: IntoIterator<Item = (u64, u32)>,
    {
        let field = galois::field(q)?;
        if k == 0 {
            return Err(CodeError::InvalidDimension { k, min: 1 });
        }
        let space = ProjectiveSpace::new(field, k);
        let mut support: Vec<(u64, u32)> = mult.into_iter().filter(|&(_, m)| m > 0).collect();
        for &(idx, _) in &support {
            if idx >= space.num_points() {
                return Err(GaloisError::IndexOutOfRange { index: idx, k, q: field.order() }.into());
            }
        }
        support.sort_unstable();
        support.dedup_by(|b, a| {
            if a.0 == b.0 {
                a.1 += b.1;
                true
            } else {
                false
            }
        });
        let code = LinearCode { field, k, support };
        let rank = code.support_rank();
        if rank < k {
            return Err(CodeError::RankDeficient { rank, k });
        }
        Ok(code)
    }

    /// Builds a code from coordinate vectors (not necessarily normalized).
    pub fn from_points<I, V>(q: u32, k: usize, points: I) -> Result<Self, CodeError>
    where
        I: IntoIterator<Item = (V, u32)>,
        V: AsRef<[u8]>,
    {
        let field = galois::field(q)?;
        let space = ProjectiveSpace::new(field, k);
        let mult = points
            .into_iter()
            .map(|(v, m)| space.index_of(v.as_ref()).map(|i| (i, m)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_multiplicities(q, k, mult)
    }

    /// Caller guarantees a sorted, merged, spanning support.
    pub(crate) fn from_support_unchecked(field: &'static Field, k: usize, support: Vec<(u64, u32)>) -> Self {
        debug_assert!(support.windows(2).all(|w| w[0].0 < w[1].0));
        LinearCode { field, k, support }
    }

    /// The column multiset of a generator matrix.
    pub fn from_generator_matrix(matrix: &GeneratorMatrix) -> Result<Self, CodeError> {
        let field = galois::field(matrix.q())?;
        let k = matrix.k();
        let space = ProjectiveSpace::new(field, k);
        let mut mult = Vec::with_capacity(matrix.n());
        for j in 0..matrix.n() {
            let col = matrix.column(j);
            match space.index_of(&col) {
                Ok(idx) => mult.push((idx, 1)),
                Err(GaloisError::ZeroVector) => return Err(CodeError::ZeroColumn { column: j }),
                Err(e) => return Err(e.into()),
            }
        }
        Self::from_multiplicities(matrix.q(), k, mult)
    }

    pub fn field(&self) -> &'static Field {
        self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order() as u32
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The length `n`, i.e. the sum of all multiplicities.
    pub fn length(&self) -> usize {
        self.support.iter().map(|&(_, m)| m as usize).sum()
    }

    pub fn space(&self) -> ProjectiveSpace {
        ProjectiveSpace::new(self.field, self.k)
    }

    pub fn support(&self) -> &[(u64, u32)] {
        &self.support
    }

    pub fn multiplicity(&self, index: u64) -> u32 {
        self.support
            .binary_search_by_key(&index, |&(i, _)| i)
            .map(|pos| self.support[pos].1)
            .unwrap_or(0)
    }

    /// Normalized coordinates and multiplicity of every support point.
    pub fn support_vectors(&self) -> Vec<(Vec<u8>, u32)> {
        let space = self.space();
        self.support
            .iter()
            .map(|&(i, m)| (space.coords_of(i).expect("valid index"), m))
            .collect()
    }

    /// Smallest multiplicity over the support.
    pub fn min_col_mult(&self) -> u32 {
        self.support.iter().map(|&(_, m)| m).min().unwrap_or(0)
    }

    /// Largest multiplicity over the support.
    pub fn max_col_mult(&self) -> u32 {
        self.support.iter().map(|&(_, m)| m).max().unwrap_or(0)
    }

    /// Sorted multiset of support multiplicities.
    pub fn multiplicity_profile(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.support.iter().map(|&(_, m)| m).collect();
        v.sort_unstable();
        v
    }

    pub fn is_projective(&self) -> bool {
        self.max_col_mult() == 1
    }

    fn support_rank(&self) -> usize {
        let vecs = self.support_vectors();
        let cols: Vec<&[u8]> = vecs.iter().map(|(v, _)| v.as_slice()).collect();
        linalg::column_rank(self.field, self.k, &cols)
    }

    /// `sum_{P <= H} m(P)` for every hyperplane `H`, indexed like the points
    /// of the dual space.
    pub fn hyperplane_sums(&self) -> Vec<u32> {
        let q = self.q();
        let k = self.k;
        if q == 2 && k <= 63 {
            let masks: Vec<(u64, u32)> = self
                .support_vectors()
                .into_iter()
                .map(|(v, m)| (binary_mask(&v), m))
                .collect();
            // Binary point index is the big-endian value of the vector minus one.
            return (1u64..(1u64 << k))
                .map(|h| {
                    masks
                        .iter()
                        .filter(|&&(p, _)| (p & h).count_ones() % 2 == 0)
                        .map(|&(_, m)| m)
                        .sum()
                })
                .collect();
        }
        let space = self.space();
        let vecs = self.support_vectors();
        let mut normal = vec![0u8; k];
        (0..space.num_points())
            .map(|h| {
                space.write_coords(h, &mut normal);
                vecs.iter()
                    .filter(|(v, _)| self.field.dot(v, &normal) == 0)
                    .map(|&(_, m)| m)
                    .sum()
            })
            .collect()
    }

    /// Weight enumerator from hyperplane intersection sizes.
    pub fn weight_enumerator(&self) -> WeightEnumerator {
        let n = self.length();
        let mut a = vec![0u64; n + 1];
        a[0] = 1;
        let scalars = self.q() as u64 - 1;
        for s in self.hyperplane_sums() {
            a[n - s as usize] += scalars;
        }
        WeightEnumerator(a)
    }

    /// Every nonzero weight is divisible by `delta`.
    pub fn is_divisible(&self, delta: u32) -> bool {
        let delta = delta.max(1) as usize;
        self.weight_enumerator().nonzero_weights().all(|w| w % delta == 0)
    }

    /// Systematic generator matrix `(I_k | R)` of an isometric code.
    ///
    /// The basis is chosen greedily from the support in point order. Unit
    /// columns come first, followed by the remaining columns in point order,
    /// each repeated by its multiplicity.
    pub fn to_systematic_generator_matrix(&self) -> GeneratorMatrix {
        let (systematic, units) = self.systematic_multiset();
        let space = systematic.space();
        let mut columns: Vec<Vec<u8>> = units.iter().map(|&i| space.coords_of(i).expect("index")).collect();
        for &(idx, m) in &systematic.support {
            let extra = if units.contains(&idx) { m - 1 } else { m };
            for _ in 0..extra {
                columns.push(space.coords_of(idx).expect("index"));
            }
        }
        let rows = (0..self.k)
            .map(|i| columns.iter().map(|c| c[i]).collect())
            .collect();
        GeneratorMatrix { q: self.field.order(), rows }
    }

    /// The code re-coordinatized so that the greedy basis maps to `e_1..e_k`,
    /// together with the indices of the unit points in row order.
    pub fn systematic_multiset(&self) -> (LinearCode, Vec<u64>) {
        let space = self.space();
        let vecs = self.support_vectors();
        let mut basis: Vec<Vec<u8>> = Vec::with_capacity(self.k);
        let mut echelon: Vec<Vec<u8>> = Vec::new();
        for (v, _) in &vecs {
            if basis.len() == self.k {
                break;
            }
            let mut trial = echelon.clone();
            trial.push(v.clone());
            if linalg::rank(self.field, &trial) > echelon.len() {
                echelon = trial;
                basis.push(v.clone());
            }
        }
        let inv = linalg::invert_columns(self.field, &basis).expect("support spans");
        let mut support: Vec<(u64, u32)> = vecs
            .iter()
            .map(|(v, m)| {
                let w = linalg::mat_vec(self.field, &inv, v);
                (space.index_of(&w).expect("nonzero image"), *m)
            })
            .collect();
        support.sort_unstable();
        let units = (0..self.k)
            .map(|i| {
                let mut e = vec![0u8; self.k];
                e[i] = 1;
                space.index_of_normalized(&e)
            })
            .collect();
        (LinearCode::from_support_unchecked(self.field, self.k, support), units)
    }

    /// The residual code obtained by projecting the multiset from `point`.
    ///
    /// Occurrences of `point` are dropped and every other support point is
    /// mapped to its image in `PG(k-2, q)`. The result has length
    /// `n - m(point)` and dimension `k - 1`.
    pub fn residual_subcode(&self, point: u64) -> Result<LinearCode, CodeError> {
        if self.k < 2 {
            return Err(CodeError::InvalidDimension { k: self.k, min: 2 });
        }
        let space = self.space();
        let p = space.coords_of(point)?;
        let residual = self.project_from(&p);
        let code = LinearCode::from_support_unchecked(self.field, self.k - 1, residual);
        let rank = code.support_rank();
        if rank < self.k - 1 {
            return Err(CodeError::RankCollapse { rank, expected: self.k - 1 });
        }
        Ok(code)
    }

    /// Same as [`residual_subcode`](Self::residual_subcode) for a
    /// [`ProjectivePoint`].
    pub fn residual_at(&self, point: &ProjectivePoint) -> Result<LinearCode, CodeError> {
        let idx = self.space().index_of(&point.coords)?;
        self.residual_subcode(idx)
    }

    /// Sorted, merged support of the projection from the normalized point `p`.
    pub(crate) fn project_from(&self, p: &[u8]) -> Vec<(u64, u32)> {
        let f = self.field;
        let pivot = p.iter().position(|&x| x != 0).expect("nonzero point");
        let target = ProjectiveSpace::new(f, self.k - 1);
        let mut out: Vec<(u64, u32)> = Vec::with_capacity(self.support.len());
        let mut v = vec![0u8; self.k];
        let mut w = vec![0u8; self.k - 1];
        for &(idx, m) in &self.support {
            self.space().write_coords(idx, &mut v);
            let t = v[pivot];
            let mut pos = 0;
            for (i, (&x, &y)) in v.iter().zip(p).enumerate() {
                if i == pivot {
                    continue;
                }
                w[pos] = f.sub(x, f.mul(t, y));
                pos += 1;
            }
            if f.normalize(&mut w) {
                out.push((target.index_of_normalized(&w), m));
            }
        }
        out.sort_unstable();
        out.dedup_by(|b, a| {
            if a.0 == b.0 {
                a.1 += b.1;
                true
            } else {
                false
            }
        });
        out
    }

    /// Number of minimal codewords, with the default dimension cap.
    pub fn minimal_codewords_count(&self) -> Result<u64, CodeError> {
        self.minimal_codewords_count_capped(DEFAULT_ENUMERATION_CAP)
    }

    /// Number of minimal codewords: nonzero codewords whose support contains
    /// the support of no codeword other than their own scalar multiples.
    ///
    /// A codeword is minimal iff the points of the multiset on its hyperplane
    /// span that hyperplane, so this runs over hyperplanes rather than pairs
    /// of codewords. For `q > 2` each of the `q - 1` scalar multiples counts.
    pub fn minimal_codewords_count_capped(&self, cap: usize) -> Result<u64, CodeError> {
        if self.k > cap {
            return Err(CodeError::DimensionTooLarge { k: self.k, cap });
        }
        let q = self.q() as u64;
        let k = self.k;
        let vecs = self.support_vectors();
        let mut count = 0u64;
        if self.q() == 2 && k <= 63 {
            let masks: Vec<u64> = vecs.iter().map(|(v, _)| binary_mask(v)).collect();
            for h in 1u64..(1u64 << k) {
                let mut basis = [0u64; 64];
                let mut rank = 0;
                for &p in &masks {
                    if (p & h).count_ones() % 2 == 0 && insert_xor_basis(&mut basis, p) {
                        rank += 1;
                        if rank == k - 1 {
                            break;
                        }
                    }
                }
                if rank == k - 1 {
                    count += 1;
                }
            }
            return Ok(count);
        }
        let space = self.space();
        let mut normal = vec![0u8; k];
        for h in 0..space.num_points() {
            space.write_coords(h, &mut normal);
            let on: Vec<&[u8]> = vecs
                .iter()
                .filter(|(v, _)| self.field.dot(v, &normal) == 0)
                .map(|(v, _)| v.as_slice())
                .collect();
            if linalg::column_rank(self.field, k, &on) == k - 1 {
                count += q - 1;
            }
        }
        Ok(count)
    }
}

/// Big-endian bit encoding of a binary vector.
pub(crate) fn binary_mask(v: &[u8]) -> u64 {
    v.iter().fold(0u64, |acc, &x| (acc << 1) | x as u64)
}

fn insert_xor_basis(basis: &mut [u64; 64], mut v: u64) -> bool {
    while v != 0 {
        let top = 63 - v.leading_zeros() as usize;
        if basis[top] == 0 {
            basis[top] = v;
            return true;
        }
        v ^= basis[top];
    }
    false
}

fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Krawtchouk polynomial `K_j(i) = sum_s (-1)^s (q-1)^(j-s) C(i,s) C(n-i,j-s)`.
pub fn krawtchouk(n: usize, q: u32, j: usize, i: usize) -> BigInt {
    let (n, j, i) = (n as i64, j as i64, i as i64);
    let qm1 = BigInt::from(q - 1);
    (0..=j)
        .map(|s| {
            let term = num_traits::pow(qm1.clone(), (j - s) as usize) * binomial(i, s) * binomial(n - i, j - s);
            if s % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

fn rational_pow(q: u32, exp: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(q));
    if exp >= 0 {
        num_traits::pow(base, exp as usize)
    } else {
        num_traits::pow(base, (-exp) as usize).recip()
    }
}

/// Dual distribution of arbitrary rational weight counts `a` of a
/// `k`-dimensional code of length `a.len() - 1`.
pub fn macwilliams_rational(a: &[BigRational], q: u32, k: usize) -> Result<DualWeightDistribution, CodeError> {
    let expected = rational_pow(q, k as i64);
    let sum: BigRational = a.iter().cloned().sum();
    if sum != expected {
        return Err(CodeError::InconsistentInput {
            sum: sum.to_string(),
            expected: expected.to_string(),
        });
    }
    let n = a.len() - 1;
    let scale = expected.recip();
    let b = (0..=n)
        .map(|j| {
            let s: BigRational = a
                .iter()
                .enumerate()
                .filter(|(_, ai)| !ai.is_zero())
                .map(|(i, ai)| ai * BigRational::from_integer(krawtchouk(n, q, j, i)))
                .sum();
            s * &scale
        })
        .collect();
    Ok(DualWeightDistribution(b))
}

/// Exact dual weight distribution of a `k`-dimensional `q`-ary code.
pub fn macwilliams_transform(we: &WeightEnumerator, q: u32, k: usize) -> Result<DualWeightDistribution, CodeError> {
    galois::field(q)?;
    let a: Vec<BigRational> = we
        .coeffs()
        .iter()
        .map(|&x| BigRational::from_integer(BigInt::from(x)))
        .collect();
    macwilliams_rational(&a, q, k)
}

/// One power-moment identity
/// `sum_i C(n-i, nu) A_i = q^(k-nu) sum_{j <= nu} C(n-j, nu-j) B_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerMoment {
    pub nu: usize,
    pub lhs: BigRational,
    pub rhs: BigRational,
}

impl PowerMoment {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// The first `count` power moments relating `a` and `b`.
pub fn power_moments(a: &[BigRational], b: &[BigRational], q: u32, k: usize, count: usize) -> Vec<PowerMoment> {
    let n = a.len() as i64 - 1;
    (0..count)
        .map(|nu| {
            let lhs: BigRational = a
                .iter()
                .enumerate()
                .map(|(i, ai)| ai * BigRational::from_integer(binomial(n - i as i64, nu as i64)))
                .sum();
            let inner: BigRational = b
                .iter()
                .enumerate()
                .take(nu + 1)
                .map(|(j, bj)| bj * BigRational::from_integer(binomial(n - j as i64, (nu - j) as i64)))
                .sum();
            PowerMoment {
                nu,
                lhs,
                rhs: rational_pow(q, k as i64 - nu as i64) * inner,
            }
        })
        .collect()
}

/// Coefficients `C(n-i, nu)` of the left-hand side of power moment `nu`.
pub fn power_moment_coefficients(n: usize, nu: usize) -> Vec<BigInt> {
    (0..=n).map(|i| binomial((n - i) as i64, nu as i64)).collect()
}
