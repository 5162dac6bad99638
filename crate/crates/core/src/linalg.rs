//! Exact rank kernels.
//!
//! * [`BitMatrix`]: dense, bit-packed GF(2) elimination.
//! * [`sparse_rank`]: sparse elimination over any [`FieldOps`] backend with a
//!   Markowitz-style pivot choice.
//! * [`bareiss_rank`]: fraction-free elimination over GF(2)[x_1..x_n], used
//!   for matrices of rational functions after clearing row denominators.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::field::{FieldOps, Gf2Poly};

/// Dense matrix over GF(2), one bit per entry.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(64);
        BitMatrix { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::new(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.stride + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.stride + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn toggle(&mut self, r: usize, c: usize) {
        self.data[r * self.stride + c / 64] ^= 1 << (c % 64);
    }

    pub fn row_is_zero(&self, r: usize) -> bool {
        self.row(r).iter().all(|&w| w == 0)
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    /// `row[dst] ^= row[src]`
    fn add_row(&mut self, src: usize, dst: usize) {
        if src == dst {
            return;
        }
        let s = self.stride;
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&lo[src * s..(src + 1) * s], &mut hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&hi[..s], &mut lo[dst * s..(dst + 1) * s])
        };
        for (d, x) in b.iter_mut().zip(a) {
            *d ^= *x;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    /// Reduces in place to reduced row echelon form; returns the pivot columns in order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c)) else { continue };
            self.swap_rows(p, r);
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    self.add_row(r, i);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        // forward elimination only
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c)) else { continue };
            m.swap_rows(p, r);
            for i in r + 1..m.rows {
                if m.get(i, c) {
                    m.add_row(r, i);
                }
            }
            r += 1;
        }
        r
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::new(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = BitMatrix::new(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.get(r, k) {
                    let src = other.row(k).to_vec();
                    let dst = &mut out.data[r * out.stride..(r + 1) * out.stride];
                    for (d, s) in dst.iter_mut().zip(src) {
                        *d ^= s;
                    }
                }
            }
        }
        out
    }
}

/// A sparse row: strictly increasing column indices with nonzero values.
pub type SparseRow<E> = Vec<(usize, E)>;

/// Rank of a sparse matrix given by rows over the field `ops`.
///
/// Each step pivots on the shortest remaining row, choosing within it the
/// column that occurs in the fewest other rows, which keeps fill-in low on
/// the very sparse cube differentials.
pub fn sparse_rank<F: FieldOps>(ops: &F, ncols: usize, rows: Vec<SparseRow<F::Elem>>) -> usize {
    let mut rows: Vec<Option<SparseRow<F::Elem>>> =
        rows.into_iter().map(|r| Some(r.into_iter().filter(|(_, v)| !ops.is_zero(v)).collect())).collect();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        for (c, _) in r.as_ref().unwrap() {
            col_rows[*c].insert(i);
        }
    }
    let mut active: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].as_ref().unwrap().is_empty()).collect();
    let mut rank = 0;
    while !active.is_empty() {
        let (pos, &pr) = active
            .iter()
            .enumerate()
            .min_by_key(|(_, &i)| rows[i].as_ref().map_or(usize::MAX, Vec::len))
            .unwrap();
        active.swap_remove(pos);
        let prow = rows[pr].take().unwrap();
        if prow.is_empty() {
            continue;
        }
        let &(pc, ref pval) = prow.iter().min_by_key(|(c, _)| col_rows[*c].len()).unwrap();
        let pinv = ops.inv(pval).expect("pivot is nonzero");
        for (c, _) in &prow {
            col_rows[*c].remove(&pr);
        }
        let targets: Vec<usize> = col_rows[pc].iter().copied().collect();
        for t in targets {
            let row = rows[t].as_mut().unwrap();
            let coef = match row.binary_search_by_key(&pc, |(c, _)| *c) {
                Ok(idx) => ops.mul(&row[idx].1, &pinv),
                Err(_) => continue,
            };
            let old: Vec<usize> = row.iter().map(|(c, _)| *c).collect();
            let merged = axpy(ops, row, &coef, &prow);
            for c in &old {
                if merged.binary_search_by_key(c, |(cc, _)| *cc).is_err() {
                    col_rows[*c].remove(&t);
                }
            }
            for (c, _) in &merged {
                col_rows[*c].insert(t);
            }
            *row = merged;
        }
        rank += 1;
        active.retain(|&i| rows[i].as_ref().is_some_and(|r| !r.is_empty()));
    }
    rank
}

/// `row + coef * pivot` (characteristic 2, so subtraction is addition).
fn axpy<F: FieldOps>(ops: &F, row: &SparseRow<F::Elem>, coef: &F::Elem, pivot: &SparseRow<F::Elem>) -> SparseRow<F::Elem> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |(c, _)| *c);
        let cj = pivot.get(j).map_or(usize::MAX, |(c, _)| *c);
        if ci < cj {
            out.push(row[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, ops.mul(coef, &pivot[j].1)));
            j += 1;
        } else {
            let v = ops.add(&row[i].1, &ops.mul(coef, &pivot[j].1));
            if !ops.is_zero(&v) {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank over the fraction field of GF(2)[x_1..x_n] by Bareiss elimination.
///
/// Each step divides by the previous pivot exactly, so entries stay minors of
/// the input. Pivots are chosen with the fewest terms among the remaining
/// submatrix.
pub fn bareiss_rank(m: Vec<Vec<Gf2Poly>>, nvars: usize) -> usize {
    if nvars == 1 {
        let dense = m.iter().map(|row| row.iter().map(Dense::from_poly).collect()).collect();
        return dense_bareiss_rank(dense);
    }
    poly_bareiss_rank(m, nvars)
}

fn poly_bareiss_rank(mut m: Vec<Vec<Gf2Poly>>, nvars: usize) -> usize {
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut prev = Gf2Poly::one(nvars);
    let mut k = 0;
    while k < nrows.min(ncols) {
        let mut best: Option<(usize, usize, usize)> = None;
        for (r, row) in m.iter().enumerate().skip(k) {
            for (c, v) in row.iter().enumerate().skip(k) {
                if !v.is_zero() && best.is_none_or(|(_, _, len)| v.len() < len) {
                    best = Some((r, c, v.len()));
                }
            }
        }
        let Some((pr, pc, _)) = best else { break };
        m.swap(k, pr);
        for row in m.iter_mut() {
            row.swap(k, pc);
        }
        let pivot = m[k][k].clone();
        let (head, tail) = m.split_at_mut(k + 1);
        let prow = &head[k];
        for row in tail.iter_mut() {
            let lead = row[k].clone();
            for c in k + 1..ncols {
                let v = pivot.mul(&row[c]).add(&lead.mul(&prow[c]));
                row[c] = v.exact_div(&prev).expect("Bareiss division is exact");
            }
            row[k] = Gf2Poly::zero(nvars);
        }
        prev = pivot;
        k += 1;
    }
    k
}

/// Univariate polynomial over GF(2); bit `i` is the coefficient of `x^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Dense(Vec<u64>);

impl Dense {
    fn from_poly(p: &Gf2Poly) -> Dense {
        let mut words = Vec::new();
        for t in p.terms() {
            let e = t.exponents()[0] as usize;
            if words.len() <= e / 64 {
                words.resize(e / 64 + 1, 0);
            }
            words[e / 64] ^= 1 << (e % 64);
        }
        Dense(words).trimmed()
    }

    fn trimmed(mut self) -> Dense {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    fn degree(&self) -> Option<usize> {
        let top = *self.0.last()?;
        Some(self.0.len() * 64 - 1 - top.leading_zeros() as usize)
    }

    fn xor_shifted(acc: &mut Vec<u64>, b: &[u64], shift: usize) {
        let (w, r) = (shift / 64, shift % 64);
        if acc.len() < b.len() + w + 1 {
            acc.resize(b.len() + w + 1, 0);
        }
        for (i, &x) in b.iter().enumerate() {
            acc[i + w] ^= x << r;
            if r != 0 {
                acc[i + w + 1] ^= x >> (64 - r);
            }
        }
    }

    fn mul(&self, other: &Dense) -> Dense {
        let mut acc = Vec::new();
        for (i, &word) in self.0.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                Dense::xor_shifted(&mut acc, &other.0, i * 64 + j);
                bits &= bits - 1;
            }
        }
        Dense(acc).trimmed()
    }

    fn add(&self, other: &Dense) -> Dense {
        let (long, short) = if self.0.len() >= other.0.len() { (self, other) } else { (other, self) };
        let mut out = long.0.clone();
        for (o, s) in out.iter_mut().zip(&short.0) {
            *o ^= s;
        }
        Dense(out).trimmed()
    }

    fn exact_div(&self, divisor: &Dense) -> Option<Dense> {
        let dd = divisor.degree()?;
        let mut rem = self.0.clone();
        let mut quot = Vec::new();
        loop {
            let r = Dense(rem).trimmed();
            let Some(rd) = r.degree() else { break };
            rem = r.0;
            if rd < dd {
                return None;
            }
            let shift = rd - dd;
            if quot.len() <= shift / 64 {
                quot.resize(shift / 64 + 1, 0);
            }
            quot[shift / 64] ^= 1u64 << (shift % 64);
            Dense::xor_shifted(&mut rem, &divisor.0, shift);
        }
        Some(Dense(quot).trimmed())
    }
}

fn dense_bareiss_rank(mut m: Vec<Vec<Dense>>) -> usize {
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut prev = Dense(vec![1]);
    let mut k = 0;
    while k < nrows.min(ncols) {
        let mut best: Option<(usize, usize, usize)> = None;
        for (r, row) in m.iter().enumerate().skip(k) {
            for (c, v) in row.iter().enumerate().skip(k) {
                if let Some(deg) = v.degree() {
                    if best.is_none_or(|(_, _, d)| deg < d) {
                        best = Some((r, c, deg));
                    }
                }
            }
        }
        let Some((pr, pc, _)) = best else { break };
        m.swap(k, pr);
        for row in m.iter_mut() {
            row.swap(k, pc);
        }
        let pivot = m[k][k].clone();
        let (head, tail) = m.split_at_mut(k + 1);
        let prow = &head[k];
        for row in tail.iter_mut() {
            let lead = row[k].clone();
            for c in k + 1..ncols {
                let v = pivot.mul(&row[c]).add(&lead.mul(&prow[c]));
                row[c] = v.exact_div(&prev).expect("Bareiss division is exact");
            }
            row[k] = Dense(Vec::new());
        }
        prev = pivot;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf2, Gf2kField};

    #[test]
    fn bit_rank_identity_and_zero() {
        assert_eq!(BitMatrix::identity(5).rank(), 5);
        assert_eq!(BitMatrix::new(4, 7).rank(), 0);
        let mut m = BitMatrix::new(3, 3);
        m.set(0, 0, true);
        m.set(0, 1, true);
        m.set(1, 1, true);
        m.set(1, 2, true);
        m.set(2, 0, true);
        m.set(2, 2, true);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rref_pivots_are_leftmost() {
        let mut m = BitMatrix::new(2, 4);
        m.set(0, 1, true);
        m.set(0, 2, true);
        m.set(1, 1, true);
        m.set(1, 3, true);
        assert_eq!(m.rref(), vec![1, 2]);
        assert!(m.get(0, 1) && !m.get(1, 1));
    }

    #[test]
    fn sparse_rank_matches_dense() {
        let rows = vec![vec![(0, true), (1, true)], vec![(1, true), (2, true)], vec![(0, true), (2, true)]];
        assert_eq!(sparse_rank(&Gf2, 3, rows), 2);
        let f = Gf2kField::new(8).unwrap();
        let rows = vec![vec![(0, 2u64), (1, 3)], vec![(0, f.mul(2, 7)), (1, f.mul(3, 7))], vec![(2, 1)]];
        assert_eq!(sparse_rank(&f, 3, rows), 2);
    }

    #[test]
    fn bareiss_detects_dependence() {
        let x = |i| Gf2Poly::var(2, i);
        let one = Gf2Poly::one(2);
        // [[x0, x1], [x0*x1, x1^2]] has rank 1
        let m = vec![vec![x(0), x(1)], vec![x(0).mul(&x(1)), x(1).mul(&x(1))]];
        assert_eq!(bareiss_rank(m, 2), 1);
        let m = vec![vec![x(0), x(1)], vec![one.clone(), one]];
        assert_eq!(bareiss_rank(m, 2), 2);
    }

    #[test]
    fn dense_univariate_matches_sparse_polys() {
        let p = |bits: u64| {
            let terms = (0..64).filter(|i| bits >> i & 1 == 1).map(|i| crate::field::Monomial::from_exponents(&[i])).collect();
            Gf2Poly::from_monomials(1, terms)
        };
        let a = p(0b1011);
        let b = p(0b110);
        let (da, db) = (Dense::from_poly(&a), Dense::from_poly(&b));
        assert_eq!(da.mul(&db), Dense::from_poly(&a.mul(&b)));
        assert_eq!(da.mul(&db).exact_div(&db), Some(da.clone()));
        assert_eq!(da.exact_div(&db), None);
        // a long product crosses word boundaries
        let big = (0..40).fold(Dense(vec![1]), |acc, _| acc.mul(&da));
        assert_eq!(big.degree(), Some(120));
        assert_eq!(big.exact_div(&da).unwrap().degree(), Some(117));
        let mut seed = 0x9e37_79b9_7f4a_7c15u64;
        for _ in 0..30 {
            let m: Vec<Vec<Gf2Poly>> = (0..4)
                .map(|_| {
                    (0..5)
                        .map(|_| {
                            seed ^= seed << 13;
                            seed ^= seed >> 7;
                            seed ^= seed << 17;
                            p(seed & 0x1f & (seed >> 8))
                        })
                        .collect()
                })
                .collect();
            assert_eq!(bareiss_rank(m.clone(), 1), poly_bareiss_rank(m, 1));
        }
    }
}
