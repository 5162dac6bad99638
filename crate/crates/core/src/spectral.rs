//! Spanning-tree model of the twisted complex.
//!
//! Filter the twisted complex by homological degree. When every non-basepoint
//! edge carries a nonzero weight and the weights are linearly independent
//! over GF(2), the vertical complex of every disconnected resolution is
//! acyclic, so E1 has one generator per connected resolution. Those
//! resolutions correspond to spanning trees of the Tait graph. A tree's delta
//! grows by one with each 1-smoothing, so only `d2` can be nonzero and
//! E3 is the homology.
//!
//! `d2` between trees `r < r'` that differ in exactly two crossings is
//! `1/W + 1/W'`, where `W` and `W'` are the weights of the non-basepoint
//! circles of the two intermediate resolutions.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::{tree_delta, ChainComplex, Part};
use crate::diagram::{Diagram, DiagramError, Resolution};
use crate::field::{Field, FieldElement, FieldError, Gf2Poly, RatFunc};
use crate::homology::{rank, rank_cross_checked, GradedDims, HomologyError, SparseMatrix, DEFAULT_EVAL_POINTS};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpectralError {
    /// An edge off the basepoint carries zero total weight.
    ZeroWeight { edge: u32 },
    /// Edge weights are linearly dependent over GF(2).
    DependentWeights { rank: usize, edges: usize },
    /// An intermediate circle has zero weight.
    DegenerateCircle { resolution: Resolution, circle: usize },
    /// `d2` does not square to zero.
    D2SquaredNonzero,
    /// More E3 generators than E1 generators.
    Bookkeeping { e1: usize, e3: usize },
    Diagram(DiagramError),
    Homology(HomologyError),
    Field(FieldError),
}

impl fmt::Display for SpectralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralError::ZeroWeight { edge } => write!(f, "genericity violated: edge {edge} has zero weight"),
            SpectralError::DependentWeights { rank, edges } => {
                write!(f, "genericity violated: {edges} edge weights span only a {rank}-dimensional GF(2) space")
            }
            SpectralError::DegenerateCircle { resolution, circle } => {
                write!(f, "genericity violated: circle {circle} of resolution {resolution} has zero weight")
            }
            SpectralError::D2SquaredNonzero => f.write_str("formula error: d2 composed with d2 is nonzero"),
            SpectralError::Bookkeeping { e1, e3 } => write!(f, "bookkeeping error: E3 has {e3} generators but E1 only {e1}"),
            SpectralError::Diagram(e) => write!(f, "{e}"),
            SpectralError::Homology(e) => write!(f, "{e}"),
            SpectralError::Field(e) => write!(f, "{e}"),
        }
    }
}

impl From<DiagramError> for SpectralError {
    fn from(e: DiagramError) -> Self {
        SpectralError::Diagram(e)
    }
}

impl From<HomologyError> for SpectralError {
    fn from(e: HomologyError) -> Self {
        SpectralError::Homology(e)
    }
}

impl From<FieldError> for SpectralError {
    fn from(e: FieldError) -> Self {
        SpectralError::Field(e)
    }
}

/// A surviving E1 generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Tree {
    pub resolution: Resolution,
    pub delta: i32,
}

#[derive(Clone, Debug)]
pub struct SpectralPage {
    pub trees: Vec<Tree>,
    /// `(source tree, target tree, value)`, nonzero entries only
    pub d2: Vec<(usize, usize, FieldElement)>,
    pub e3_dims: GradedDims,
}

/// Checks that every non-basepoint edge has nonzero weight and that these
/// weights are linearly independent over GF(2).
pub fn check_genericity(d: &Diagram) -> Result<(), SpectralError> {
    let edges: Vec<usize> = (0..d.edge_count()).filter(|&e| e != d.basepoint()).collect();
    let weights: Vec<FieldElement> = edges.iter().map(|&e| d.edge_weight(e)).collect();
    if let Some(i) = weights.iter().position(FieldElement::is_zero) {
        return Err(SpectralError::ZeroWeight { edge: d.label(edges[i]) });
    }
    let rank = d.field().f2_rank(&weights)?;
    if rank < weights.len() {
        return Err(SpectralError::DependentWeights { rank, edges: weights.len() });
    }
    Ok(())
}

/// E1 page: one generator per connected resolution, with its delta grading.
pub fn e1_page(d: &Diagram) -> Result<Vec<Tree>, SpectralError> {
    check_genericity(d)?;
    Ok(trees(d)?)
}

fn trees(d: &Diagram) -> Result<Vec<Tree>, DiagramError> {
    Ok(d.connected_resolutions()?.into_iter().map(|r| Tree { resolution: r, delta: tree_delta(d, r) }).collect())
}

/// The weights `W` with `d2(r -> r2) = sum of 1/W`; empty unless `r2` is
/// `r` with exactly two 0-smoothings changed to 1-smoothings.
fn d2_weights(d: &Diagram, r: Resolution, r2: Resolution) -> Result<Vec<FieldElement>, SpectralError> {
    if r.bits() & !r2.bits() != 0 || (r.bits() ^ r2.bits()).count_ones() != 2 {
        return Ok(Vec::new());
    }
    if !d.resolve(r).is_connected() || !d.resolve(r2).is_connected() {
        return Ok(Vec::new());
    }
    let diff = r.bits() ^ r2.bits();
    let mut out = Vec::new();
    for i in 0..r.len() {
        if diff >> i & 1 == 0 {
            continue;
        }
        let mid = r.flip(i);
        let cs = d.resolve(mid);
        assert_eq!(cs.count(), 2, "intermediate {mid} between trees must have two circles");
        let w = d.circle_weight(&cs, 1);
        if w.is_zero() {
            return Err(SpectralError::DegenerateCircle { resolution: mid, circle: 1 });
        }
        out.push(w);
    }
    Ok(out)
}

/// The `d2` component from tree `r` to tree `r2`; zero unless `r2` is `r`
/// with exactly two 0-smoothings changed to 1-smoothings.
pub fn d2_entry(d: &Diagram, r: Resolution, r2: Resolution) -> Result<FieldElement, SpectralError> {
    let mut total = d.field().zero();
    for w in d2_weights(d, r, r2)? {
        total = total.add(&w.inv()?)?;
    }
    Ok(total)
}

type D2 = Vec<(usize, usize, FieldElement)>;
type D2Weights = BTreeMap<(usize, usize), Vec<FieldElement>>;

/// `d2` entries with the weights whose reciprocals sum to each entry.
fn d2_entries(d: &Diagram, trees: &[Tree]) -> Result<(D2, D2Weights), SpectralError> {
    let index: BTreeMap<Resolution, usize> = trees.iter().enumerate().map(|(i, t)| (t.resolution, i)).collect();
    let mut out = Vec::new();
    let mut weights = BTreeMap::new();
    for (s, t) in trees.iter().enumerate() {
        let r = t.resolution;
        let zeros: Vec<usize> = (0..r.len()).filter(|&i| !r.bit(i)).collect();
        for (a, &i) in zeros.iter().enumerate() {
            for &j in &zeros[a + 1..] {
                let r2 = r.with_bit(i, true).with_bit(j, true);
                if let Some(&target) = index.get(&r2) {
                    let ws = d2_weights(d, r, r2)?;
                    let mut v = d.field().zero();
                    for w in &ws {
                        v = v.add(&w.inv()?)?;
                    }
                    if !v.is_zero() {
                        out.push((s, target, v));
                        weights.insert((s, target), ws);
                    }
                }
            }
        }
    }
    out.sort_by_key(|(s, t, _)| (*s, *t));
    Ok((out, weights))
}

fn as_rat(v: &FieldElement) -> RatFunc {
    match v {
        FieldElement::Rat(r) => r.clone(),
        _ => unreachable!("rational-function field"),
    }
}

/// `d2 ∘ d2 = 0` over rational functions without expanding every sum over a
/// common denominator. Entries that still equal `sum 1/W` are kept as lists
/// of reciprocals; products with the same factors cancel in pairs, and only
/// the survivors are put over the lcm of their factored denominators.
fn reciprocal_square_zero(d2: &D2, weights: &D2Weights, nvars: usize) -> bool {
    type Key = (Gf2Poly, Gf2Poly);
    // scalar over a product of factors
    type Term = (RatFunc, Vec<RatFunc>);
    let key = |f: &RatFunc| (f.num().clone(), f.den().clone());
    let terms: Vec<Vec<Term>> = d2
        .iter()
        .map(|(s, t, v)| {
            let ws = weights.get(&(*s, *t)).filter(|ws| {
                let mut sum = RatFunc::zero(nvars);
                for w in ws.iter() {
                    sum = sum.add(&as_rat(w).inv().expect("nonzero weight"));
                }
                sum == as_rat(v)
            });
            match ws {
                Some(ws) => ws.iter().map(|w| (RatFunc::one(nvars), vec![as_rat(w)])).collect(),
                None => vec![(as_rat(v), Vec::new())],
            }
        })
        .collect();
    let mut by_source: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, (s, _, _)) in d2.iter().enumerate() {
        by_source.entry(*s).or_default().push(i);
    }
    // (source, target, sorted factor keys) -> (scalar, factors)
    let mut square: BTreeMap<(usize, usize, Vec<Key>), Term> = BTreeMap::new();
    for (i, (s, t, _)) in d2.iter().enumerate() {
        for &j in by_source.get(t).map_or(&[][..], Vec::as_slice) {
            let u = d2[j].1;
            for (a, fa) in &terms[i] {
                for (b, fb) in &terms[j] {
                    let mut factors: Vec<RatFunc> = fa.iter().chain(fb).cloned().collect();
                    factors.sort_by_key(|f| key(f));
                    let k = (*s, u, factors.iter().map(key).collect());
                    let p = a.mul(b);
                    square
                        .entry(k)
                        .and_modify(|(c, _)| *c = c.add(&p))
                        .or_insert_with(|| (p.clone(), factors.clone()));
                }
            }
        }
    }
    let mut left: BTreeMap<(usize, usize), Vec<Term>> = BTreeMap::new();
    for ((s, u, _), (c, f)) in square {
        if !c.is_zero() {
            left.entry((s, u)).or_default().push((c, f));
        }
    }
    left.values().all(|group| {
        let mut lcm: BTreeMap<Key, (RatFunc, usize)> = BTreeMap::new();
        for (_, fs) in group {
            let mut count: BTreeMap<Key, usize> = BTreeMap::new();
            for f in fs {
                *count.entry(key(f)).or_default() += 1;
            }
            for (k, n) in count {
                let f = fs.iter().find(|f| key(f) == k).expect("counted").clone();
                let slot = lcm.entry(k).or_insert((f, 0));
                slot.1 = slot.1.max(n);
            }
        }
        let mut total = RatFunc::zero(nvars);
        for (c, fs) in group {
            let mut term = c.clone();
            for (k, (f, n)) in &lcm {
                let have = fs.iter().filter(|g| key(g) == *k).count();
                for _ in have..*n {
                    term = term.mul(f);
                }
            }
            total = total.add(&term);
        }
        total.is_zero()
    })
}

/// Whether `d2` composed with itself vanishes.
pub fn d2_squared_zero(d2: &[(usize, usize, FieldElement)], field: &Field) -> bool {
    let mut square: BTreeMap<(usize, usize), FieldElement> = BTreeMap::new();
    for (s, t, a) in d2 {
        for (_, u, b) in d2.iter().filter(|(s2, _, _)| s2 == t) {
            let Ok(p) = a.mul(b) else { return false };
            let slot = square.entry((*s, *u)).or_insert_with(|| field.zero());
            *slot = slot.add(&p).expect("same field");
        }
    }
    square.values().all(FieldElement::is_zero)
}

/// The `d2` block from delta `delta` to `delta + 2`, rows indexed by targets.
pub fn d2_block(page: &SpectralPage, field: &crate::field::Field, delta: i32) -> SparseMatrix {
    let local = |dl: i32| -> BTreeMap<usize, usize> {
        page.trees.iter().enumerate().filter(|(_, t)| t.delta == dl).enumerate().map(|(k, (i, _))| (i, k)).collect()
    };
    let (src, dst) = (local(delta), local(delta + 2));
    let mut m = SparseMatrix::new(dst.len(), src.len());
    for (s, t, v) in &page.d2 {
        if let (Some(&c), Some(&r)) = (src.get(s), dst.get(t)) {
            m.push(r, c, v.clone());
        }
    }
    let _ = field;
    m
}

/// E3 page: trees, `d2`, and the dimensions that survive it.
pub fn e3_page(d: &Diagram) -> Result<SpectralPage, SpectralError> {
    e3_page_with(d, |_| {})
}

/// [`e3_page`] with a hook that may alter `d2` before it is checked, for fault injection.
pub fn e3_page_with(d: &Diagram, tamper: impl FnOnce(&mut Vec<(usize, usize, FieldElement)>)) -> Result<SpectralPage, SpectralError> {
    let trees = e1_page(d)?;
    let (mut d2, weights) = d2_entries(d, &trees)?;
    tamper(&mut d2);
    let square_zero = match d.field() {
        Field::RatFn(r) => reciprocal_square_zero(&d2, &weights, r.nvars()),
        field => d2_squared_zero(&d2, field),
    };
    if !square_zero {
        return Err(SpectralError::D2SquaredNonzero);
    }
    let mut counts: BTreeMap<i32, usize> = BTreeMap::new();
    for t in &trees {
        *counts.entry(t.delta).or_default() += 1;
    }
    let mut page = SpectralPage { trees, d2, e3_dims: GradedDims::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(0xd2);
    let mut out_rank: BTreeMap<i32, usize> = BTreeMap::new();
    for &delta in counts.keys() {
        let block = d2_block(&page, d.field(), delta);
        let r = if block.entries.is_empty() { 0 } else { rank_cross_checked(&block, d.field(), &mut rng, DEFAULT_EVAL_POINTS)? };
        out_rank.insert(delta, r);
    }
    let dims: BTreeMap<i32, usize> = counts
        .iter()
        .map(|(&delta, &n)| (delta, n - out_rank[&delta] - out_rank.get(&(delta - 2)).copied().unwrap_or(0)))
        .collect();
    page.e3_dims = GradedDims::from_map(dims);
    let e3 = page.e3_dims.total();
    if e3 > page.trees.len() {
        return Err(SpectralError::Bookkeeping { e1: page.trees.len(), e3 });
    }
    Ok(page)
}

/// For each disconnected resolution, whether the twisting differential
/// restricted to it is acyclic, i.e. has rank half the number of states.
pub fn vertical_acyclicity(c: &ChainComplex, d: &Diagram) -> Result<Vec<(Resolution, bool)>, SpectralError> {
    let mut out = Vec::new();
    for r in Resolution::all(d.crossing_count()) {
        let range = c.resolution_range(r);
        if range.len() <= 1 {
            continue;
        }
        let mut m = SparseMatrix::new(range.len(), range.len());
        for e in c.entries().iter().filter(|e| e.part == Part::Twist && range.contains(&e.source)) {
            m.push(e.target - range.start, e.source - range.start, e.coef.clone());
        }
        let rk = rank(&m, c.field())?;
        out.push((r, 2 * rk == range.len()));
    }
    Ok(out)
}
