//! Equivalence of codes under linear isometries.
//!
//! Two codes of full length are isometric iff their column multisets are
//! equivalent under `PGammaL(k, q)`. The canonical form is the largest image
//! of the multiset (compared as a dense multiplicity vector) over all
//! semilinear maps sending an ordered basis of support points, with chosen
//! scalars, to the unit vectors. The search is an individualization-
//! refinement tree: support points are colored by repeatedly hashing their
//! incidences with hyperplanes, and the next basis point is drawn from the
//! smallest color class only. Refinement only prunes the tree, so any
//! hash collision costs time, never correctness.
//!
//! When `n - k < k` the dual code is canonized instead, which is smaller.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use thiserror::Error;

use crate::code::{LinearCode, WeightEnumerator};
use crate::galois::{gaussian_points, Field, ProjectiveSpace};
use crate::linalg;

/// Largest projective dimension handled by the search.
pub const MAX_CANON_DIMENSION: usize = 16;

/// Default cap on search tree nodes.
pub const DEFAULT_NODE_LIMIT: u64 = 20_000_000;

/// Refinement touches every hyperplane, so their number is capped.
const MAX_HYPERPLANES: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error("canonical search exceeds its limits: {0}")]
    ScaleExceeded(String),
}

/// Cheap isometry invariants used to bucket codes before canonization.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvariantKey {
    pub n: usize,
    pub k: usize,
    pub q: u32,
    pub weight_enumerator: WeightEnumerator,
    pub multiplicities: Vec<u32>,
    pub residual_enumerators: Vec<WeightEnumerator>,
}

/// Byte string that is equal for two codes iff they are isometric.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalSignature(pub Vec<u8>);

impl CanonicalSignature {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

pub fn invariant_key(code: &LinearCode) -> InvariantKey {
    let min = code.min_col_mult();
    let mut residual_enumerators: Vec<WeightEnumerator> = if code.k() >= 2 {
        code.support()
            .iter()
            .filter(|&&(_, m)| m == min)
            .filter_map(|&(p, _)| code.residual_subcode(p).ok())
            .map(|c| c.weight_enumerator())
            .collect()
    } else {
        Vec::new()
    };
    residual_enumerators.sort();
    InvariantKey {
        n: code.length(),
        k: code.k(),
        q: code.q(),
        weight_enumerator: code.weight_enumerator(),
        multiplicities: code.multiplicity_profile(),
        residual_enumerators,
    }
}

/// Canonical signature with the default node limit.
pub fn canonical_form(code: &LinearCode) -> Result<CanonicalSignature, CanonError> {
    canonical_form_limited(code, DEFAULT_NODE_LIMIT)
}

pub fn canonical_form_limited(code: &LinearCode, node_limit: u64) -> Result<CanonicalSignature, CanonError> {
    let n = code.length();
    let k = code.k();
    let mut bytes = vec![code.q() as u8];
    let (route, t, image) = if n - k < k {
        let (dual, zeros) = dual_multiset(code);
        let image = match &dual {
            Some(d) => search(d, node_limit, true)?.image,
            None => Vec::new(),
        };
        (1u8, zeros, image)
    } else {
        (0u8, 0, search(code, node_limit, true)?.image)
    };
    bytes.push(route);
    bytes.extend_from_slice(&(k as u32).to_be_bytes());
    bytes.extend_from_slice(&(n as u32).to_be_bytes());
    bytes.extend_from_slice(&(t as u32).to_be_bytes());
    for (pos, m) in image {
        bytes.extend_from_slice(&pos.to_be_bytes());
        bytes.extend_from_slice(&m.to_be_bytes());
    }
    Ok(CanonicalSignature(bytes))
}

/// Order of the group of semilinear maps (modulo scalars) fixing the
/// column multiset. For binary projective codes this is the permutation
/// automorphism group of the code.
pub fn automorphism_order(code: &LinearCode) -> Result<u64, CanonError> {
    automorphism_order_limited(code, DEFAULT_NODE_LIMIT)
}

pub fn automorphism_order_limited(code: &LinearCode, node_limit: u64) -> Result<u64, CanonError> {
    Ok(search(code, node_limit, false)?.count)
}

/// Column multiset of a parity check matrix, plus the number of zero
/// columns. `None` when the code is the whole space.
pub fn dual_multiset(code: &LinearCode) -> (Option<LinearCode>, usize) {
    let g = code.to_systematic_generator_matrix();
    let field = code.field();
    let k = g.k();
    let n = g.n();
    let r = n - k;
    if r == 0 {
        return (None, n);
    }
    let mut columns: Vec<Vec<u8>> = (0..k)
        .map(|j| (0..r).map(|l| field.neg(g.rows()[j][k + l])).collect())
        .collect();
    columns.extend((0..r).map(|l| (0..r).map(|i| u8::from(i == l)).collect()));
    let space = ProjectiveSpace::new(field, r);
    let mut zeros = 0;
    let mut mult = Vec::new();
    for c in &columns {
        match space.index_of(c) {
            Ok(i) => mult.push((i, 1)),
            Err(_) => zeros += 1,
        }
    }
    let dual = LinearCode::from_multiplicities(code.q(), r, mult).expect("parity check matrix has full rank");
    (Some(dual), zeros)
}

/// Isometry classes of the input, one representative each.
///
/// Codes are bucketed by [`InvariantKey`]; only buckets with several
/// distinct members are canonized. The representative of a class is its
/// smallest member, and the output is sorted by key, then representative,
/// so the result does not depend on input order.
pub fn dedupe(codes: Vec<LinearCode>) -> Result<Vec<LinearCode>, CanonError> {
    let keyed: Vec<(InvariantKey, LinearCode)> = codes.into_par_iter().map(|c| (invariant_key(&c), c)).collect();
    let mut buckets: BTreeMap<InvariantKey, Vec<LinearCode>> = BTreeMap::new();
    for (key, code) in keyed {
        buckets.entry(key).or_default().push(code);
    }
    let buckets: Vec<Vec<LinearCode>> = buckets.into_values().collect();
    let reduced: Vec<Result<Vec<LinearCode>, CanonError>> = buckets
        .into_par_iter()
        .map(|mut bucket| {
            bucket.sort();
            bucket.dedup();
            if bucket.len() == 1 {
                return Ok(bucket);
            }
            let mut classes: BTreeMap<CanonicalSignature, LinearCode> = BTreeMap::new();
            for code in bucket {
                let sig = canonical_form(&code)?;
                classes.entry(sig).or_insert(code);
            }
            let mut reps: Vec<LinearCode> = classes.into_values().collect();
            reps.sort();
            Ok(reps)
        })
        .collect();
    let mut out = Vec::new();
    for r in reduced {
        out.extend(r?);
    }
    Ok(out)
}

/// Whether two codes are isometric.
pub fn isometric(a: &LinearCode, b: &LinearCode) -> Result<bool, CanonError> {
    if a.q() != b.q() || a.k() != b.k() || a.length() != b.length() {
        return Ok(false);
    }
    if invariant_key(a) != invariant_key(b) {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

struct SearchResult {
    image: Vec<(u64, u32)>,
    count: u64,
}

fn mix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

struct Canonizer {
    field: &'static Field,
    k: usize,
    q: u64,
    points: Vec<Vec<u8>>,
    mults: Vec<u32>,
    hyper_points: Vec<Vec<u32>>,
    point_hypers: Vec<Vec<u32>>,
    /// Points with the current field automorphism applied.
    images: Vec<Vec<u8>>,
    best: Option<Vec<(u64, u32)>>,
    count: u64,
    nodes: u64,
    node_limit: u64,
    /// Skip children in one orbit of the automorphisms found so far. Leaf
    /// counts are then no longer group orders.
    prune: bool,
    /// Linear automorphisms of the current images, as row-major matrices.
    autos: Vec<Vec<Vec<u8>>>,
    /// Basis of the first leaf in the current pass that matched `best`.
    reference: Option<Vec<Vec<u8>>>,
    /// Normalized image vector to point index.
    lookup: HashMap<Vec<u8>, usize>,
}

/// Automorphisms kept per pass; further ones only cost time.
const MAX_AUTOMORPHISMS: usize = 64;

fn search(code: &LinearCode, node_limit: u64, prune: bool) -> Result<SearchResult, CanonError> {
    let k = code.k();
    let q = code.q() as u64;
    if k > MAX_CANON_DIMENSION {
        return Err(CanonError::ScaleExceeded(format!("dimension {k} above {MAX_CANON_DIMENSION}")));
    }
    let num_hyper = gaussian_points(q, k);
    if num_hyper > MAX_HYPERPLANES {
        return Err(CanonError::ScaleExceeded(format!("{num_hyper} hyperplanes")));
    }
    let field = code.field();
    let space = code.space();
    let vecs = code.support_vectors();
    let points: Vec<Vec<u8>> = vecs.iter().map(|(v, _)| v.clone()).collect();
    let mults: Vec<u32> = vecs.iter().map(|&(_, m)| m).collect();
    let mut hyper_points = Vec::new();
    let mut point_hypers = vec![Vec::new(); points.len()];
    let mut normal = vec![0u8; k];
    for h in 0..num_hyper {
        space.write_coords(h, &mut normal);
        let on: Vec<u32> = (0..points.len() as u32)
            .filter(|&i| field.dot(&points[i as usize], &normal) == 0)
            .collect();
        if on.is_empty() {
            continue;
        }
        let id = hyper_points.len() as u32;
        for &i in &on {
            point_hypers[i as usize].push(id);
        }
        hyper_points.push(on);
    }
    let mut c = Canonizer {
        field,
        k,
        q,
        images: points.clone(),
        points,
        mults,
        hyper_points,
        point_hypers,
        best: None,
        count: 0,
        nodes: 0,
        node_limit,
        prune,
        autos: Vec::new(),
        reference: None,
        lookup: HashMap::new(),
    };
    let colors = c.refine(c.mults.iter().map(|&m| mix(m as u64)).collect());
    for sigma in 0..field.automorphisms().len() {
        let auto = field.automorphisms()[sigma];
        c.images = c
            .points
            .iter()
            .map(|v| v.iter().map(|&x| auto[x as usize]).collect())
            .collect();
        c.lookup = c.images.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        c.autos.clear();
        c.reference = None;
        c.descend(&mut Vec::new(), &colors)?;
    }
    Ok(SearchResult {
        image: c.best.expect("at least one leaf"),
        count: c.count,
    })
}

/// Compares sparse multiplicity vectors as dense vectors, larger first.
fn cmp_dense(a: &[(u64, u32)], b: &[(u64, u32)]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        if x.0 != y.0 {
            // the list with the earlier position has a positive entry where
            // the other has zero
            return y.0.cmp(&x.0);
        }
        if x.1 != y.1 {
            return x.1.cmp(&y.1);
        }
    }
    a.len().cmp(&b.len())
}

impl Canonizer {
    /// Colors stable under hashing point colors into hyperplanes and back.
    fn refine(&self, mut colors: Vec<u64>) -> Vec<u64> {
        let mut cells = count_distinct(&colors);
        loop {
            let hyper: Vec<u64> = self
                .hyper_points
                .iter()
                .map(|pts| mix(pts.iter().fold(0u64, |acc, &i| acc.wrapping_add(mix(colors[i as usize])))))
                .collect();
            let next: Vec<u64> = colors
                .iter()
                .zip(&self.point_hypers)
                .map(|(&c, hs)| {
                    let s = hs.iter().fold(0u64, |acc, &h| acc.wrapping_add(mix(hyper[h as usize] ^ 0x5555)));
                    mix(c ^ mix(s))
                })
                .collect();
            let next_cells = count_distinct(&next);
            colors = next;
            if next_cells == cells {
                return colors;
            }
            cells = next_cells;
        }
    }

    /// Coordinates of every point relative to a partial basis, `None` for
    /// points outside its span.
    fn span_coords(&self, basis: &[Vec<u8>]) -> Vec<Option<Vec<u8>>> {
        let j = basis.len();
        let mut full: Vec<Vec<u8>> = basis.to_vec();
        for i in 0..self.k {
            if full.len() == self.k {
                break;
            }
            let mut e = vec![0u8; self.k];
            e[i] = 1;
            full.push(e);
            if linalg::rank(self.field, &full) < full.len() {
                full.pop();
            }
        }
        let inv = linalg::invert_columns(self.field, &full).expect("completed basis");
        self.images
            .iter()
            .map(|v| {
                let c = linalg::mat_vec(self.field, &inv, v);
                c[j..].iter().all(|&x| x == 0).then(|| c[..j].to_vec())
            })
            .collect()
    }

    /// Position of a coordinate vector after scaling its last nonzero entry to 1.
    fn position(&self, c: &[u8]) -> u64 {
        let j = c.iter().rposition(|&x| x != 0).expect("nonzero");
        let s = self.field.inv(c[j]);
        let mut pos = 0u64;
        for i in (0..j).rev() {
            pos = pos * self.q + self.field.mul(c[i], s) as u64;
        }
        gaussian_points(self.q, j) + pos
    }

    fn image(&self, coords: &[Option<Vec<u8>>]) -> Vec<(u64, u32)> {
        let mut img: Vec<(u64, u32)> = coords
            .iter()
            .zip(&self.mults)
            .filter_map(|(c, &m)| c.as_ref().map(|c| (self.position(c), m)))
            .collect();
        img.sort_unstable();
        img
    }

    fn record_automorphism(&mut self, basis: &[Vec<u8>]) {
        if !self.prune || self.autos.len() >= MAX_AUTOMORPHISMS {
            return;
        }
        let Some(reference) = &self.reference else {
            self.reference = Some(basis.to_vec());
            return;
        };
        // A = B2 * B1^-1 maps the reference leaf to this one.
        let inv = linalg::invert_columns(self.field, reference).expect("leaf basis");
        let a: Vec<Vec<u8>> = (0..self.k)
            .map(|i| {
                (0..self.k)
                    .map(|j| {
                        (0..self.k).fold(0u8, |acc, l| self.field.add(acc, self.field.mul(basis[l][i], inv[l][j])))
                    })
                    .collect()
            })
            .collect();
        if !self.autos.contains(&a) {
            self.autos.push(a);
        }
    }

    /// Whether `p` lies in the orbit of an explored sibling under the known
    /// automorphisms that fix every prefix vector.
    fn equivalent_to_done(&self, basis: &[Vec<u8>], p: usize, done: &[usize]) -> bool {
        if done.is_empty() {
            return false;
        }
        let gens: Vec<&Vec<Vec<u8>>> = self
            .autos
            .iter()
            .filter(|a| basis.iter().all(|b| &linalg::mat_vec(self.field, a, b) == b))
            .collect();
        if gens.is_empty() {
            return false;
        }
        let mut orbit = vec![p];
        let mut i = 0;
        while i < orbit.len() {
            for a in &gens {
                let mut v = linalg::mat_vec(self.field, a, &self.images[orbit[i]]);
                self.field.normalize(&mut v);
                let j = self.lookup[&v];
                if done.contains(&j) {
                    return true;
                }
                if !orbit.contains(&j) {
                    orbit.push(j);
                }
            }
            i += 1;
        }
        false
    }

    fn descend(&mut self, basis: &mut Vec<Vec<u8>>, colors: &[u64]) -> Result<(), CanonError> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(CanonError::ScaleExceeded(format!("more than {} search nodes", self.node_limit)));
        }
        let depth = basis.len();
        let coords = self.span_coords(basis);
        let img = self.image(&coords);
        if let Some(best) = &self.best {
            if depth == self.k {
                match cmp_dense(&img, best) {
                    Ordering::Greater => {
                        self.best = Some(img);
                        self.count = 1;
                        self.reference = Some(basis.clone());
                    }
                    Ordering::Equal => {
                        self.count += 1;
                        self.record_automorphism(basis);
                    }
                    Ordering::Less => {}
                }
                return Ok(());
            }
            let bound = gaussian_points(self.q, depth);
            let end = best.partition_point(|&(p, _)| p < bound);
            if cmp_dense(&img, &best[..end]) == Ordering::Less {
                return Ok(());
            }
        } else if depth == self.k {
            self.best = Some(img);
            self.count = 1;
            self.reference = Some(basis.clone());
            return Ok(());
        }

        // target cell: smallest color class outside the current span
        let mut classes: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        for (i, c) in coords.iter().enumerate() {
            if c.is_none() {
                classes.entry(colors[i]).or_default().push(i);
            }
        }
        let cell = classes
            .into_iter()
            .min_by_key(|(color, members)| (members.len(), *color))
            .map(|(_, m)| m)
            .expect("support spans");
        let scalars: Vec<u8> = if depth == 0 {
            vec![1]
        } else {
            self.field.nonzero_elements().collect()
        };
        let mut done: Vec<usize> = Vec::new();
        for p in cell {
            if self.prune && self.equivalent_to_done(basis, p, &done) {
                continue;
            }
            done.push(p);
            let mut individualized = colors.to_vec();
            individualized[p] = mix(individualized[p] ^ 0xa5a5_a5a5);
            let refined = self.refine(individualized);
            for &lambda in &scalars {
                let v: Vec<u8> = self.images[p].iter().map(|&x| self.field.mul(lambda, x)).collect();
                basis.push(v);
                let r = self.descend(basis, &refined);
                basis.pop();
                r?;
            }
        }
        Ok(())
    }
}

fn count_distinct(colors: &[u64]) -> usize {
    let mut v = colors.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::GeneratorMatrix;

    fn g(q: u32, rows: &[&str]) -> LinearCode {
        LinearCode::from_generator_matrix(&GeneratorMatrix::from_strings(q, rows).unwrap()).unwrap()
    }

    #[test]
    fn worked_example_codes_agree() {
        let g2 = g(2, &["1111000", "1110111"]);
        let g3 = g(2, &["1011111", "0100111"]);
        assert!(isometric(&g2, &g3).unwrap());
        assert_eq!(invariant_key(&g2), invariant_key(&g3));
    }

    #[test]
    fn small_automorphism_orders() {
        let simplex = LinearCode::from_multiplicities(2, 2, [(0, 1), (1, 1), (2, 1)]).unwrap();
        assert_eq!(automorphism_order(&simplex).unwrap(), 6);
        let hamming = g(2, &["1000011", "0100101", "0010110", "0001111"]);
        assert_eq!(automorphism_order(&hamming).unwrap(), 168);
        let fano = g(2, &["1001011", "0101101", "0010111"]);
        assert_eq!(automorphism_order(&fano).unwrap(), 168);
    }

    #[test]
    fn dual_of_hamming_is_simplex() {
        let hamming = g(2, &["1000011", "0100101", "0010110", "0001111"]);
        let (dual, zeros) = dual_multiset(&hamming);
        let dual = dual.unwrap();
        assert_eq!(zeros, 0);
        assert_eq!((dual.k(), dual.length()), (3, 7));
        assert!(dual.is_projective());
    }

    #[test]
    fn full_space_codes() {
        let a = g(3, &["10", "01"]);
        let b = g(3, &["12", "11"]);
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn node_limit_is_an_error() {
        let hamming = g(2, &["1000011", "0100101", "0010110", "0001111"]);
        assert!(matches!(automorphism_order_limited(&hamming, 5), Err(CanonError::ScaleExceeded(_))));
    }

    #[test]
    fn dedupe_repeated() {
        let c = g(2, &["1011111", "0100111"]);
        let out = dedupe(vec![c.clone(); 100]).unwrap();
        assert_eq!(out, vec![c]);
    }
}
