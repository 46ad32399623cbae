//! Arithmetic in small Galois fields and the points and hyperplanes of
//! `PG(k-1, q)`.
//!
//! Field elements are indices `0..q`. Index 0 is zero and index 1 is one. For
//! a prime `q` the index is the residue itself. For `q = p^e` with `e > 1` an
//! element `c_0 + c_1 x + ... + c_{e-1} x^{e-1}` of `F_p[x] / (f)` has index
//! `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`, with the fixed irreducible
//! polynomials
//!
//! | q | f(x)          |
//! |---|---------------|
//! | 4 | x^2 + x + 1   |
//! | 8 | x^3 + x + 1   |
//! | 9 | x^2 + 1       |
//!
//! Archives store these indices verbatim, so the polynomials must never change.

use std::sync::OnceLock;

use thiserror::Error;

/// Largest supported field order.
pub const MAX_Q: usize = 9;

/// Errors from field construction and incidence queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaloisError {
    #[error("{0} is not a supported prime power (expected one of 2, 3, 4, 5, 7, 8, 9)")]
    NotPrimePower(u32),
    #[error("dimension mismatch: expected {expected} coordinates, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("field element {element} out of range for GF({q})")]
    ElementOutOfRange { element: u8, q: u8 },
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("point index {index} out of range for dimension {k} over GF({q})")]
    IndexOutOfRange { index: u64, k: usize, q: u8 },
}

/// A finite field of order at most 9 given by operation tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    q: u8,
    p: u8,
    e: u8,
    add: [[u8; MAX_Q]; MAX_Q],
    mul: [[u8; MAX_Q]; MAX_Q],
    neg: [u8; MAX_Q],
    inv: [u8; MAX_Q],
    /// `automorphisms[i][x] = x^(p^i)`.
    automorphisms: Vec<[u8; MAX_Q]>,
}

/// `(p, e, reduction)` where `x^e = reduction(x)`, coefficients low to high.
fn parameters(q: u32) -> Option<(u8, u8, &'static [u8])> {
    match q {
        2 => Some((2, 1, &[])),
        3 => Some((3, 1, &[])),
        5 => Some((5, 1, &[])),
        7 => Some((7, 1, &[])),
        // x^2 = x + 1
        4 => Some((2, 2, &[1, 1])),
        // x^3 = x + 1
        8 => Some((2, 3, &[1, 1, 0])),
        // x^2 = -1
        9 => Some((3, 2, &[2, 0])),
        _ => None,
    }
}

fn digits(x: u8, p: u8, e: u8) -> Vec<u8> {
    let mut out = Vec::with_capacity(e as usize);
    let mut x = x;
    for _ in 0..e {
        out.push(x % p);
        x /= p;
    }
    out
}

fn undigits(ds: &[u8], p: u8) -> u8 {
    ds.iter().rev().fold(0u8, |acc, &d| acc * p + d)
}

fn poly_mul(a: &[u8], b: &[u8], p: u8, reduction: &[u8]) -> Vec<u8> {
    let e = a.len();
    let mut prod = vec![0u32; 2 * e];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] += x as u32 * y as u32;
        }
    }
    let p32 = p as u32;
    for c in prod.iter_mut() {
        *c %= p32;
    }
    // Reduce from the top: x^(e+t) = x^t * reduction(x).
    for deg in (e..2 * e).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (t, &r) in reduction.iter().enumerate() {
            let idx = deg - e + t;
            prod[idx] = (prod[idx] + c * r as u32) % p32;
        }
    }
    prod[..e].iter().map(|&c| c as u8).collect()
}

impl Field {
    /// Builds and validates the field of order `q`.
    pub fn new(q: u32) -> Result<Field, GaloisError> {
        let (p, e, reduction) = parameters(q).ok_or(GaloisError::NotPrimePower(q))?;
        let q = q as u8;
        let mut add = [[0u8; MAX_Q]; MAX_Q];
        let mut mul = [[0u8; MAX_Q]; MAX_Q];
        for a in 0..q {
            let da = digits(a, p, e);
            for b in 0..q {
                let db = digits(b, p, e);
                let sum: Vec<u8> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a as usize][b as usize] = undigits(&sum, p);
                let prod = if e == 1 {
                    vec![((a as u32 * b as u32) % p as u32) as u8]
                } else {
                    poly_mul(&da, &db, p, reduction)
                };
                mul[a as usize][b as usize] = undigits(&prod, p);
            }
        }
        let mut neg = [0u8; MAX_Q];
        let mut inv = [0u8; MAX_Q];
        for a in 0..q {
            neg[a as usize] = (0..q).find(|&b| add[a as usize][b as usize] == 0).unwrap_or(0);
            if a != 0 {
                inv[a as usize] = (0..q).find(|&b| mul[a as usize][b as usize] == 1).unwrap_or(0);
            }
        }
        let mut field = Field {
            q,
            p,
            e,
            add,
            mul,
            neg,
            inv,
            automorphisms: Vec::new(),
        };
        for i in 0..e {
            let mut map = [0u8; MAX_Q];
            for x in 0..q {
                map[x as usize] = field.pow(x, (p as u32).pow(i as u32));
            }
            field.automorphisms.push(map);
        }
        debug_assert!(field.check_axioms());
        Ok(field)
    }

    pub fn order(&self) -> u8 {
        self.q
    }

    pub fn characteristic(&self) -> u8 {
        self.p
    }

    pub fn degree(&self) -> u8 {
        self.e
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize][b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize][self.neg[b as usize] as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize][b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `inv(0)` is 0.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    pub fn pow(&self, a: u8, exp: u32) -> u8 {
        let mut acc = 1u8;
        for _ in 0..exp {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// The Frobenius automorphisms `x -> x^(p^i)` for `i = 0..e`, identity first.
    pub fn automorphisms(&self) -> &[[u8; MAX_Q]] {
        &self.automorphisms
    }

    pub fn elements(&self) -> std::ops::Range<u8> {
        0..self.q
    }

    pub fn nonzero_elements(&self) -> std::ops::Range<u8> {
        1..self.q
    }

    pub fn dot(&self, a: &[u8], b: &[u8]) -> u8 {
        a.iter()
            .zip(b)
            .fold(0u8, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// Scales `v` so that its first nonzero entry is 1. Returns false for the
    /// zero vector.
    pub fn normalize(&self, v: &mut [u8]) -> bool {
        match v.iter().position(|&x| x != 0) {
            None => false,
            Some(i) => {
                let s = self.inv(v[i]);
                if s != 1 {
                    for x in v[i..].iter_mut() {
                        *x = self.mul(*x, s);
                    }
                }
                true
            }
        }
    }

    /// Exhaustive check of the field axioms on the tables.
    pub fn check_axioms(&self) -> bool {
        let q = self.q;
        for a in 0..q {
            if self.add(a, 0) != a || self.mul(a, 1) != a || self.mul(a, 0) != 0 {
                return false;
            }
            if self.add(a, self.neg(a)) != 0 {
                return false;
            }
            if a != 0 && self.mul(a, self.inv(a)) != 1 {
                return false;
            }
            for b in 0..q {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
                for c in 0..q {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return false;
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return false;
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

static FIELDS: OnceLock<Vec<Field>> = OnceLock::new();

/// Shared, lazily built field of order `q`.
pub fn field(q: u32) -> Result<&'static Field, GaloisError> {
    let fields = FIELDS.get_or_init(|| {
        [2u32, 3, 4, 5, 7, 8, 9]
            .iter()
            .map(|&q| Field::new(q).expect("supported order"))
            .collect()
    });
    fields
        .iter()
        .find(|f| f.q as u32 == q)
        .ok_or(GaloisError::NotPrimePower(q))
}

/// `(q^k - 1) / (q - 1)`, the number of points of `PG(k-1, q)`.
pub fn gaussian_points(q: u64, k: usize) -> u64 {
    (0..k).fold(0u64, |acc, _| acc * q + 1)
}

/// The projective space `PG(k-1, q)` of 1-dimensional subspaces of `F_q^k`.
///
/// Points are indexed in lexicographic order of their normalized coordinate
/// vectors (first nonzero coordinate equal to 1).
#[derive(Debug, Clone, Copy)]
pub struct ProjectiveSpace {
    field: &'static Field,
    k: usize,
}

/// A normalized representative of a 1-dimensional subspace of `F_q^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    pub index: u64,
    pub coords: Vec<u8>,
}

/// A hyperplane of `PG(k-1, q)`, identified by its normalized normal vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    pub normal: ProjectivePoint,
}

impl Hyperplane {
    pub fn index(&self) -> u64 {
        self.normal.index
    }
}

impl ProjectiveSpace {
    pub fn new(field: &'static Field, k: usize) -> ProjectiveSpace {
        ProjectiveSpace { field, k }
    }

    pub fn field(&self) -> &'static Field {
        self.field
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    pub fn num_points(&self) -> u64 {
        gaussian_points(self.field.q as u64, self.k)
    }

    /// Index of the subspace spanned by `v`; `v` need not be normalized.
    pub fn index_of(&self, v: &[u8]) -> Result<u64, GaloisError> {
        if v.len() != self.k {
            return Err(GaloisError::DimensionMismatch {
                expected: self.k,
                actual: v.len(),
            });
        }
        let q = self.field.q;
        if let Some(&bad) = v.iter().find(|&&x| x >= q) {
            return Err(GaloisError::ElementOutOfRange { element: bad, q });
        }
        let mut w = v.to_vec();
        if !self.field.normalize(&mut w) {
            return Err(GaloisError::ZeroVector);
        }
        Ok(self.index_of_normalized(&w))
    }

    /// Index of an already normalized vector.
    pub fn index_of_normalized(&self, v: &[u8]) -> u64 {
        let q = self.field.q as u64;
        let i = v.iter().position(|&x| x != 0).expect("nonzero vector");
        let tail = v[i + 1..].iter().fold(0u64, |acc, &x| acc * q + x as u64);
        gaussian_points(q, self.k - 1 - i) + tail
    }

    pub fn coords_of(&self, index: u64) -> Result<Vec<u8>, GaloisError> {
        if index >= self.num_points() {
            return Err(GaloisError::IndexOutOfRange {
                index,
                k: self.k,
                q: self.field.q,
            });
        }
        let mut v = vec![0u8; self.k];
        self.write_coords(index, &mut v);
        Ok(v)
    }

    /// Writes the normalized coordinates of point `index` into `out`.
    pub fn write_coords(&self, index: u64, out: &mut [u8]) {
        let q = self.field.q as u64;
        let k = self.k;
        // Points with first nonzero coordinate at position i occupy
        // [gaussian(k-1-i), gaussian(k-i)).
        let mut i = k - 1;
        while gaussian_points(q, k - i) <= index {
            i -= 1;
        }
        let mut tail = index - gaussian_points(q, k - 1 - i);
        out.iter_mut().for_each(|x| *x = 0);
        out[i] = 1;
        for pos in (i + 1..k).rev() {
            out[pos] = (tail % q) as u8;
            tail /= q;
        }
    }

    pub fn point(&self, index: u64) -> Result<ProjectivePoint, GaloisError> {
        Ok(ProjectivePoint {
            index,
            coords: self.coords_of(index)?,
        })
    }

    /// All points in index order.
    pub fn points(&self) -> impl Iterator<Item = ProjectivePoint> + '_ {
        (0..self.num_points()).map(move |i| ProjectivePoint {
            index: i,
            coords: self.coords_of(i).expect("index in range"),
        })
    }

    /// All hyperplanes, ordered by the index of their normal in the dual space.
    pub fn hyperplanes(&self) -> impl Iterator<Item = Hyperplane> + '_ {
        self.points().map(|normal| Hyperplane { normal })
    }

    pub fn incidence(&self, point: &ProjectivePoint, hyperplane: &Hyperplane) -> Result<bool, GaloisError> {
        incidence(self.field, point, hyperplane)
    }
}

/// Points of `PG(k-1, q)` in index order.
pub fn enumerate_points(field: &'static Field, k: usize) -> Vec<ProjectivePoint> {
    ProjectiveSpace::new(field, k).points().collect()
}

/// Hyperplanes of `PG(k-1, q)` in index order of their normals.
pub fn enumerate_hyperplanes(field: &'static Field, k: usize) -> Vec<Hyperplane> {
    ProjectiveSpace::new(field, k).hyperplanes().collect()
}

/// Whether `point` lies on `hyperplane`.
pub fn incidence(field: &Field, point: &ProjectivePoint, hyperplane: &Hyperplane) -> Result<bool, GaloisError> {
    if point.coords.len() != hyperplane.normal.coords.len() {
        return Err(GaloisError::DimensionMismatch {
            expected: hyperplane.normal.coords.len(),
            actual: point.coords.len(),
        });
    }
    Ok(field.dot(&point.coords, &hyperplane.normal.coords) == 0)
}
