//! Ranks and graded homology dimensions.
//!
//! Matrices over GF(2) are eliminated densely with packed bits, GF(2^k)
//! matrices sparsely. Rational-function matrices have two backends: exact
//! fraction-free elimination, which is authoritative, and rank after
//! substituting random GF(2^64) points for the variables. [`rank_cross_checked`]
//! runs both and refuses to answer when they disagree.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::{verify_d_squared, ChainComplex};
use crate::field::{Field, FieldElement, FieldError, Gf2Poly, Gf2kField, RatFunc};
use crate::linalg::{bareiss_rank, sparse_rank, BitMatrix, SparseRow};

/// Evaluation points used by [`graded_dims`] to cross-check symbolic ranks.
pub const DEFAULT_EVAL_POINTS: usize = 3;
const EVAL_SEED: u64 = 0x5eed_0f26_4000;
const MAX_RESAMPLES: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomologyError {
    /// The differential does not square to zero.
    DSquaredNonzero,
    RankMismatch { symbolic: usize, evaluated: usize },
    /// Every sampled point made some denominator vanish.
    NoEvaluationPoint,
    Field(FieldError),
}

impl fmt::Display for HomologyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomologyError::DSquaredNonzero => f.write_str("integrity error: d^2 != 0"),
            HomologyError::RankMismatch { symbolic, evaluated } => {
                write!(f, "rank backends disagree: symbolic {symbolic}, evaluated {evaluated}")
            }
            HomologyError::NoEvaluationPoint => f.write_str("no evaluation point avoids the denominators"),
            HomologyError::Field(e) => write!(f, "{e}"),
        }
    }
}

impl From<FieldError> for HomologyError {
    fn from(e: FieldError) -> Self {
        HomologyError::Field(e)
    }
}

/// Homology dimension in each delta degree.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedDims {
    dims: BTreeMap<i32, usize>,
}

impl GradedDims {
    /// Zero dimensions are dropped.
    pub fn from_map(dims: BTreeMap<i32, usize>) -> Self {
        GradedDims { dims: dims.into_iter().filter(|&(_, v)| v > 0).collect() }
    }

    pub fn get(&self, delta: i32) -> usize {
        self.dims.get(&delta).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, usize)> + '_ {
        self.dims.iter().map(|(&d, &n)| (d, n))
    }

    pub fn as_map(&self) -> &BTreeMap<i32, usize> {
        &self.dims
    }

    pub fn shifted(&self, by: i32) -> GradedDims {
        GradedDims { dims: self.dims.iter().map(|(&d, &n)| (d + by, n)).collect() }
    }
}

/// Equality of graded dimensions, optionally up to one uniform shift.
pub fn dims_equal(a: &GradedDims, b: &GradedDims, shift_allowed: bool) -> bool {
    if a == b {
        return true;
    }
    if !shift_allowed {
        return false;
    }
    match (a.dims.keys().next(), b.dims.keys().next()) {
        (Some(&x), Some(&y)) => a.shifted(y - x) == *b,
        _ => false,
    }
}

/// A matrix given by its nonzero entries `(row, col, value)`.
#[derive(Clone, Debug)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, FieldElement)>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: Vec::new() }
    }

    pub fn push(&mut self, row: usize, col: usize, v: FieldElement) {
        debug_assert!(row < self.rows && col < self.cols);
        self.entries.push((row, col, v));
    }

    pub fn transpose(&self) -> SparseMatrix {
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|(r, c, v)| (*c, *r, v.clone())).collect(),
        }
    }

    /// Rows with repeated positions summed and zeros dropped.
    fn rows_of<E: Clone>(&self, pick: impl Fn(&FieldElement) -> E, add: impl Fn(&E, &E) -> E, zero: impl Fn(&E) -> bool) -> Vec<SparseRow<E>> {
        let mut rows: Vec<BTreeMap<usize, E>> = vec![BTreeMap::new(); self.rows];
        for (r, c, v) in &self.entries {
            let x = pick(v);
            let slot = rows[*r].entry(*c);
            match slot {
                alloc::collections::btree_map::Entry::Vacant(s) => {
                    s.insert(x);
                }
                alloc::collections::btree_map::Entry::Occupied(mut s) => {
                    let sum = add(s.get(), &x);
                    *s.get_mut() = sum;
                }
            }
        }
        rows.into_iter().map(|m| m.into_iter().filter(|(_, v)| !zero(v)).collect()).collect()
    }
}

fn check_entries(m: &SparseMatrix, field: &Field) -> Result<(), HomologyError> {
    for (_, _, v) in &m.entries {
        field.check(v)?;
    }
    Ok(())
}

/// Exact rank. Rational-function matrices use fraction-free elimination.
pub fn rank(m: &SparseMatrix, field: &Field) -> Result<usize, HomologyError> {
    check_entries(m, field)?;
    Ok(match field {
        Field::Gf2 => {
            let mut bits = BitMatrix::new(m.rows, m.cols);
            for (r, c, v) in &m.entries {
                if !v.is_zero() {
                    bits.toggle(*r, *c);
                }
            }
            bits.rank()
        }
        Field::Gf2k(f) => {
            let rows = m.rows_of(gf2k_bits, |a, b| a ^ b, |v| *v == 0);
            sparse_rank(f, m.cols, rows)
        }
        Field::RatFn(r) => symbolic_rank(m, r.nvars()),
    })
}

fn gf2k_bits(v: &FieldElement) -> u64 {
    match v {
        FieldElement::Gf2k(e) => e.bits,
        _ => unreachable!("entries checked against the field"),
    }
}

fn as_rat(v: &FieldElement) -> RatFunc {
    match v {
        FieldElement::Rat(r) => r.clone(),
        _ => unreachable!("entries checked against the field"),
    }
}

fn symbolic_rank(m: &SparseMatrix, nvars: usize) -> usize {
    let rows = m.rows_of(as_rat, |a, b| a.add(b), |v| v.is_zero());
    let mut used_cols: Vec<usize> = rows.iter().flat_map(|r| r.iter().map(|(c, _)| *c)).collect();
    used_cols.sort_unstable();
    used_cols.dedup();
    let dense: Vec<Vec<Gf2Poly>> = rows
        .into_iter()
        .filter(|r| !r.is_empty())
        .map(|row| {
            // scale the row by the product of its denominators
            let mut out = vec![Gf2Poly::zero(nvars); used_cols.len()];
            for (i, (c, v)) in row.iter().enumerate() {
                let mut p = v.num().clone();
                for (j, (_, w)) in row.iter().enumerate() {
                    if i != j && !w.den().is_one() {
                        p = p.mul(w.den());
                    }
                }
                let col = used_cols.binary_search(c).unwrap();
                out[col] = p;
            }
            out
        })
        .collect();
    bareiss_rank(dense, nvars)
}

/// Rank of a rational-function matrix after substituting a random point of
/// GF(2^64) for the variables. Never exceeds the symbolic rank.
pub fn eval_rank<R: RngCore>(m: &SparseMatrix, nvars: usize, rng: &mut R) -> Result<usize, HomologyError> {
    let f = Gf2kField::new(64).expect("GF(2^64) exists");
    let rows = m.rows_of(as_rat, |a, b| a.add(b), |v| v.is_zero());
    'sample: for _ in 0..MAX_RESAMPLES {
        let point: Vec<u64> = (0..nvars).map(|_| rng.next_u64()).collect();
        let mut evald = Vec::with_capacity(rows.len());
        for row in &rows {
            let mut out = Vec::with_capacity(row.len());
            for (c, v) in row {
                let Some(x) = v.eval(&f, &point) else { continue 'sample };
                if x != 0 {
                    out.push((*c, x));
                }
            }
            evald.push(out);
        }
        return Ok(sparse_rank(&f, m.cols, evald));
    }
    Err(HomologyError::NoEvaluationPoint)
}

/// Symbolic rank, confirmed by `points` random evaluations. For fields other
/// than rational functions this is plain [`rank`].
pub fn rank_cross_checked<R: RngCore>(m: &SparseMatrix, field: &Field, rng: &mut R, points: usize) -> Result<usize, HomologyError> {
    let symbolic = rank(m, field)?;
    if let Field::RatFn(r) = field {
        for _ in 0..points {
            let evaluated = eval_rank(m, r.nvars(), rng)?;
            if evaluated != symbolic {
                return Err(HomologyError::RankMismatch { symbolic, evaluated });
            }
        }
    }
    Ok(symbolic)
}

/// The block of the differential from degree `delta` to `delta + 2`.
pub fn differential_block(c: &ChainComplex, delta: i32) -> SparseMatrix {
    let empty = Vec::new();
    let src = c.buckets().get(&delta).unwrap_or(&empty);
    let dst = c.buckets().get(&(delta + 2)).unwrap_or(&empty);
    let local = |bucket: &Vec<usize>| -> BTreeMap<usize, usize> { bucket.iter().enumerate().map(|(i, &g)| (g, i)).collect() };
    let (src_idx, dst_idx) = (local(src), local(dst));
    let mut m = SparseMatrix::new(dst.len(), src.len());
    for e in c.entries() {
        if let (Some(&col), Some(&row)) = (src_idx.get(&e.source), dst_idx.get(&e.target)) {
            m.push(row, col, e.coef.clone());
        }
    }
    m
}

/// `dim H_delta = dim C_delta - rank(d out of delta) - rank(d into delta)`.
pub fn graded_dims(c: &ChainComplex) -> Result<GradedDims, HomologyError> {
    if !verify_d_squared(c) {
        return Err(HomologyError::DSquaredNonzero);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(EVAL_SEED);
    let mut out_rank: BTreeMap<i32, usize> = BTreeMap::new();
    for &delta in c.buckets().keys() {
        let block = differential_block(c, delta);
        let r = if block.entries.is_empty() { 0 } else { rank_cross_checked(&block, c.field(), &mut rng, DEFAULT_EVAL_POINTS)? };
        out_rank.insert(delta, r);
    }
    let dims = c
        .buckets()
        .iter()
        .map(|(&delta, gens)| {
            let into = out_rank.get(&(delta - 2)).copied().unwrap_or(0);
            (delta, gens.len() - out_rank[&delta] - into)
        })
        .collect();
    Ok(GradedDims::from_map(dims))
}

/// Homology dimensions in each `(h, q)` for a complex without twisting.
///
/// Returns `None` for twisted complexes, whose differential does not respect
/// the bigrading.
pub fn bigraded_dims(c: &ChainComplex) -> Option<BTreeMap<(i32, i32), usize>> {
    if !c.is_bigraded() {
        return None;
    }
    let mut buckets: BTreeMap<(i32, i32), Vec<usize>> = BTreeMap::new();
    for (i, g) in c.generators().iter().enumerate() {
        buckets.entry((g.h, g.q)).or_default().push(i);
    }
    let mut out_rank: BTreeMap<(i32, i32), usize> = BTreeMap::new();
    for (&(h, q), src) in &buckets {
        let dst = buckets.get(&(h + 2, q)).cloned().unwrap_or_default();
        let sidx: BTreeMap<usize, usize> = src.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let didx: BTreeMap<usize, usize> = dst.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let mut m = SparseMatrix::new(dst.len(), src.len());
        for e in c.entries() {
            if let (Some(&col), Some(&row)) = (sidx.get(&e.source), didx.get(&e.target)) {
                m.push(row, col, e.coef.clone());
            }
        }
        out_rank.insert((h, q), rank(&m, c.field()).ok()?);
    }
    Some(
        buckets
            .iter()
            .map(|(&(h, q), g)| {
                let into = out_rank.get(&(h - 2, q)).copied().unwrap_or(0);
                ((h, q), g.len() - out_rank[&(h, q)] - into)
            })
            .filter(|&(_, n)| n > 0)
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_twisted_reduced, build_untwisted_reduced};
    use crate::diagram::Diagram;
    use crate::field::{Gf2kElem, RatFnField};

    const HOPF: [[u32; 4]; 2] = [[1, 3, 2, 4], [3, 1, 4, 2]];
    const TREFOIL: [[u32; 4]; 3] = [[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]];

    fn dims(pairs: &[(i32, usize)]) -> GradedDims {
        GradedDims::from_map(pairs.iter().copied().collect())
    }

    #[test]
    fn rank_trivial_cases() {
        let m = SparseMatrix::new(3, 4);
        assert_eq!(rank(&m, &Field::Gf2).unwrap(), 0);
        let mut id = SparseMatrix::new(5, 5);
        for i in 0..5 {
            id.push(i, i, FieldElement::Gf2(true));
        }
        assert_eq!(rank(&id, &Field::Gf2).unwrap(), 5);
    }

    #[test]
    fn dims_equal_cases() {
        assert!(dims_equal(&dims(&[(0, 1)]), &dims(&[(0, 1)]), false));
        assert!(!dims_equal(&dims(&[(0, 1)]), &dims(&[(2, 1)]), false));
        assert!(dims_equal(&dims(&[(0, 1)]), &dims(&[(2, 1)]), true));
        assert!(!dims_equal(&dims(&[(0, 1), (2, 1)]), &dims(&[(0, 1), (4, 1)]), true));
    }

    #[test]
    fn unknot_homology() {
        let d = Diagram::new(&[], 1, Vec::new(), Field::Gf2).unwrap();
        let h = graded_dims(&build_untwisted_reduced(&d).unwrap()).unwrap();
        assert_eq!(h, dims(&[(0, 1)]));
    }

    #[test]
    fn trefoil_untwisted_is_thin() {
        let d = Diagram::new(&TREFOIL, 1, Vec::new(), Field::Gf2).unwrap();
        let c = build_untwisted_reduced(&d).unwrap();
        let h = graded_dims(&c).unwrap();
        assert_eq!(h.total(), 3);
        assert_eq!(h.iter().count(), 1);
        // reduced Kh of the left-handed trefoil: q^-2 t^0 + q^-6 t^-2 + q^-8 t^-3 (h doubled here)
        let bi = bigraded_dims(&c).unwrap();
        let expected: BTreeMap<(i32, i32), usize> = [((0, -2), 1), ((-4, -6), 1), ((-6, -8), 1)].into_iter().collect();
        assert_eq!(bi, expected);
    }

    #[test]
    fn hopf_twisted_generic() {
        let f = Field::gf2k(3).unwrap();
        let Field::Gf2k(g) = f else { unreachable!() };
        let w = |b| FieldElement::Gf2k(Gf2kElem::new(g, b));
        let d = Diagram::new(&HOPF, 1, vec![(2, w(1)), (3, w(2)), (4, w(4))], f).unwrap();
        let h = graded_dims(&build_twisted_reduced(&d).unwrap()).unwrap();
        assert_eq!(h.total(), 2);
    }

    #[test]
    fn trefoil_twisted_over_rational_functions() {
        let r = RatFnField::numbered("w", 5);
        let marks = (2..=6).map(|l| (l, FieldElement::Rat(r.var(l as usize - 2)))).collect();
        let d = Diagram::new(&TREFOIL, 1, marks, Field::RatFn(r)).unwrap();
        let c = build_twisted_reduced(&d).unwrap();
        let twisted = graded_dims(&c).unwrap();
        let plain = graded_dims(&build_untwisted_reduced(&d).unwrap()).unwrap();
        assert!(dims_equal(&twisted, &plain, false));
    }

    #[test]
    fn integrity_error_on_bad_complex() {
        let d = Diagram::new(&TREFOIL, 1, Vec::new(), Field::Gf2).unwrap();
        let mut c = build_untwisted_reduced(&d).unwrap();
        c.entries_mut().pop();
        assert_eq!(graded_dims(&c), Err(HomologyError::DSquaredNonzero));
    }

    #[test]
    fn cross_check_agrees_on_rational_matrix() {
        let r = RatFnField::numbered("x", 2);
        let x = |i| FieldElement::Rat(r.var(i));
        let inv = |i| FieldElement::Rat(r.var(i).inv().unwrap());
        let mut m = SparseMatrix::new(2, 2);
        m.push(0, 0, x(0));
        m.push(0, 1, x(1));
        m.push(1, 0, inv(1));
        m.push(1, 1, inv(0));
        let field = Field::RatFn(r);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // det = x0/x0 + x1/x1 = 0
        assert_eq!(rank_cross_checked(&m, &field, &mut rng, 3).unwrap(), 1);
    }
}
