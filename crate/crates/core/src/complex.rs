//! Reduced Khovanov complexes, untwisted and twisted.
//!
//! Generators are states: a resolution together with a label `1` or `x` on
//! every circle except the basepoint circle. The basepoint circle is fixed at
//! `1`; any component of the differential that would put `x` on it is zero,
//! which is the tensor product with the ground field where the basepoint dot
//! acts trivially.
//!
//! Gradings use a doubled homological degree. Per crossing, a positive
//! crossing contributes `(h, q) = (0, 1)` in its 0-smoothing and `(2, 2)` in
//! its 1-smoothing; a negative crossing contributes `(-2, -2)` and `(0, -1)`.
//! Labels add `+1` for `1` and `-1` for `x`, and `delta = h - q`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::diagram::{CircleSet, Diagram, DiagramError, Marking, Resolution, Sign, MAX_CUBE_CROSSINGS};
use crate::field::{Field, FieldElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Label {
    One,
    X,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Generator {
    pub resolution: Resolution,
    /// bit `j - 1` set means circle `j` carries `x`
    pub labels: u64,
    pub h: i32,
    pub q: i32,
    pub delta: i32,
}

impl Generator {
    pub fn label(&self, circle: usize) -> Label {
        if circle == 0 || self.labels >> (circle - 1) & 1 == 0 {
            Label::One
        } else {
            Label::X
        }
    }
}

/// Which summand of the differential an entry belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    /// edge maps of the cube: raise `h` by 2, keep `q`
    Cube,
    /// marking dots: keep `h`, lower `q` by 2
    Twist,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub source: usize,
    pub target: usize,
    pub coef: FieldElement,
    pub part: Part,
}

#[derive(Clone, Debug)]
pub struct ChainComplex {
    field: Field,
    generators: Vec<Generator>,
    offsets: Vec<usize>,
    buckets: BTreeMap<i32, Vec<usize>>,
    entries: Vec<Entry>,
}

impl ChainComplex {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    /// Mutable access to the differential, for fault injection in tests.
    pub fn entries_mut(&mut self) -> &mut Vec<Entry> {
        &mut self.entries
    }

    /// Generator indices grouped by delta.
    pub fn buckets(&self) -> &BTreeMap<i32, Vec<usize>> {
        &self.buckets
    }

    /// Indices of the generators living over one resolution.
    pub fn resolution_range(&self, r: Resolution) -> Range<usize> {
        let b = r.bits() as usize;
        self.offsets[b]..self.offsets[b + 1]
    }

    pub fn generator_index(&self, r: Resolution, labels: u64) -> Option<usize> {
        let range = self.resolution_range(r);
        let i = range.start + labels as usize;
        (i < range.end).then_some(i)
    }

    /// True when the differential has no twisting part, so `(h, q)` is a bigrading.
    pub fn is_bigraded(&self) -> bool {
        self.entries.iter().all(|e| e.part == Part::Cube)
    }

    /// Outgoing entry indices per source generator.
    pub fn out_edges(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.generators.len()];
        for (i, e) in self.entries.iter().enumerate() {
            out[e.source].push(i);
        }
        out
    }
}

struct Cube {
    circles: Vec<CircleSet>,
    /// one edge on each circle, per resolution
    reps: Vec<Vec<usize>>,
}

impl Cube {
    fn new(d: &Diagram) -> Cube {
        let n = d.crossing_count();
        let circles: Vec<CircleSet> = Resolution::all(n).map(|r| d.resolve(r)).collect();
        let reps = circles
            .iter()
            .map(|cs| {
                let mut rep = vec![usize::MAX; cs.count()];
                for e in (0..d.edge_count()).rev() {
                    rep[cs.circle_of(e)] = e;
                }
                rep
            })
            .collect();
        Cube { circles, reps }
    }
}

fn shifts(signs: &[Sign], r: Resolution) -> (i32, i32) {
    let (mut h, mut q) = (0, 0);
    for (i, s) in signs.iter().enumerate() {
        let (dh, dq) = match (s, r.bit(i)) {
            (Sign::Positive, false) => (0, 1),
            (Sign::Positive, true) => (2, 2),
            (Sign::Negative, false) => (-2, -2),
            (Sign::Negative, true) => (0, -1),
        };
        h += dh;
        q += dq;
    }
    (h, q)
}

/// Delta grading of the single state over a connected resolution.
pub fn tree_delta(d: &Diagram, r: Resolution) -> i32 {
    let (h, q) = shifts(d.signs(), r);
    h - q
}

/// Reduced untwisted complex over GF(2), bigraded.
pub fn build_untwisted_reduced(d: &Diagram) -> Result<ChainComplex, DiagramError> {
    build(d, &Field::Gf2, false)
}

/// Reduced twisted complex over the diagram's field, using its markings.
pub fn build_twisted_reduced(d: &Diagram) -> Result<ChainComplex, DiagramError> {
    build(d, d.field(), true)
}

fn build(d: &Diagram, field: &Field, twisted: bool) -> Result<ChainComplex, DiagramError> {
    let n = d.crossing_count();
    if n > MAX_CUBE_CROSSINGS {
        return Err(DiagramError::TooManyCrossings(n));
    }
    let cube = Cube::new(d);
    let mut generators = Vec::new();
    let mut offsets = Vec::with_capacity((1 << n) + 1);
    for r in Resolution::all(n) {
        offsets.push(generators.len());
        let cs = &cube.circles[r.bits() as usize];
        let free = cs.count() - 1;
        let (h, qs) = shifts(d.signs(), r);
        for labels in 0..1u64 << free {
            let xs = labels.count_ones() as i32;
            let q = qs + (free as i32 - xs) - xs;
            generators.push(Generator { resolution: r, labels, h, q, delta: h - q });
        }
    }
    offsets.push(generators.len());

    let one = field.one();
    let mut entries = Vec::new();
    for r in Resolution::all(n) {
        let cs = &cube.circles[r.bits() as usize];
        let base = offsets[r.bits() as usize];
        let free = cs.count() - 1;
        for (i, quad) in d.crossings().iter().enumerate() {
            if r.bit(i) {
                continue;
            }
            let r2 = r.with_bit(i, true);
            let cs2 = &cube.circles[r2.bits() as usize];
            let base2 = offsets[r2.bits() as usize];
            let map: Vec<usize> = cube.reps[r.bits() as usize].iter().map(|&e| cs2.circle_of(e)).collect();
            let a_circ = cs.circle_of(quad[0]);
            let c_circ = cs.circle_of(quad[2]);
            for labels in 0..1u64 << free {
                let gen = |circle: usize| circle != 0 && labels >> (circle - 1) & 1 == 1;
                // labels of circles untouched by the crossing carry over
                let mut rest = 0u64;
                for j in 1..cs.count() {
                    if j != a_circ && j != c_circ && gen(j) {
                        rest |= 1 << (map[j] - 1);
                    }
                }
                let mut emit = |target_labels: u64| {
                    entries.push(Entry {
                        source: base + labels as usize,
                        target: base2 + target_labels as usize,
                        coef: one.clone(),
                        part: Part::Cube,
                    });
                };
                if a_circ != c_circ {
                    // merge
                    let merged = cs2.circle_of(quad[0]);
                    let xs = gen(a_circ) as u8 + gen(c_circ) as u8;
                    match xs {
                        0 => emit(rest),
                        1 if merged != 0 => emit(rest | 1 << (merged - 1)),
                        _ => {}
                    }
                } else {
                    // split: the new circles contain a and b respectively
                    let s1 = cs2.circle_of(quad[0]);
                    let s2 = cs2.circle_of(quad[1]);
                    let bit = |c: usize| if c == 0 { None } else { Some(1u64 << (c - 1)) };
                    if gen(a_circ) {
                        if let (Some(b1), Some(b2)) = (bit(s1), bit(s2)) {
                            emit(rest | b1 | b2);
                        }
                    } else {
                        if let Some(b2) = bit(s2) {
                            emit(rest | b2);
                        }
                        if let Some(b1) = bit(s1) {
                            emit(rest | b1);
                        }
                    }
                }
            }
        }
        if twisted {
            for j in 1..cs.count() {
                let w = d.circle_weight(cs, j);
                if w.is_zero() {
                    continue;
                }
                for labels in 0..1u64 << free {
                    if labels >> (j - 1) & 1 == 0 {
                        entries.push(Entry {
                            source: base + labels as usize,
                            target: base + (labels | 1 << (j - 1)) as usize,
                            coef: w.clone(),
                            part: Part::Twist,
                        });
                    }
                }
            }
        }
    }

    let mut buckets: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for (i, g) in generators.iter().enumerate() {
        buckets.entry(g.delta).or_default().push(i);
    }
    Ok(ChainComplex { field: field.clone(), generators, offsets, buckets, entries })
}

/// Exact check that the differential squares to zero.
pub fn verify_d_squared(c: &ChainComplex) -> bool {
    let out = c.out_edges();
    let mut square: BTreeMap<(usize, usize), FieldElement> = BTreeMap::new();
    for e in c.entries() {
        for &k in &out[e.target] {
            let f = &c.entries()[k];
            let Ok(prod) = e.coef.mul(&f.coef) else { return false };
            let slot = square.entry((e.source, f.target)).or_insert_with(|| c.field().zero());
            match slot.add(&prod) {
                Ok(v) => *slot = v,
                Err(_) => return false,
            }
        }
    }
    square.values().all(FieldElement::is_zero)
}

/// Moves a marking across a crossing at one end of its edge, onto the edge
/// that continues the same strand on the far side.
///
/// When the edge meets the crossing at both ends, the marking moves forward
/// along the orientation.
pub fn slide_marking(d: &Diagram, marking: usize, crossing: usize) -> Result<Diagram, DiagramError> {
    let m = d.markings().get(marking).ok_or(DiagramError::NoSuchMarking(marking))?;
    let not_incident = DiagramError::NotIncident { edge: d.label(m.edge), crossing };
    let darts = d.darts_of(m.edge).ok_or(not_incident.clone())?;
    let head = d.head_dart(m.edge).expect("edge has darts");
    let (x, p) = if head.0 == crossing {
        head
    } else {
        *darts.iter().find(|(x, _)| *x == crossing).ok_or(not_incident)?
    };
    let target = d.crossings()[x][(p + 2) % 4];
    let mut markings: Vec<Marking> = d.markings().to_vec();
    markings[marking].edge = target;
    d.with_markings(markings)
}
