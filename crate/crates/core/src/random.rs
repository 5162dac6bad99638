//! Seeded generators for test inputs: braid-closure diagrams, field
//! elements and marking layouts.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::diagram::{Diagram, DiagramError, EdgeLabel, Marking};
use crate::field::{Field, FieldElement, Gf2kElem, Gf2kField, RatFnField, RatFunc};

/// PD code of the closure of a braid on `strands` strands. Generator `i`
/// (1-based) crosses strands `i` and `i + 1`; a negative entry is the
/// inverse generator. Edges are labelled `1 ..` in order of creation.
pub fn braid_closure_pd(strands: usize, word: &[i32]) -> Vec<[EdgeLabel; 4]> {
    assert!(strands >= 1);
    let mut next = strands;
    let mut slot: Vec<usize> = (0..strands).collect();
    let mut raw: Vec<[usize; 4]> = Vec::with_capacity(word.len());
    for &g in word {
        let i = g.unsigned_abs() as usize - 1;
        assert!(g != 0 && i + 1 < strands, "generator {g} out of range");
        let (bl, br) = (slot[i], slot[i + 1]);
        let (tl, tr) = (next, next + 1);
        next += 2;
        raw.push(if g > 0 { [br, tr, tl, bl] } else { [bl, br, tr, tl] });
        slot[i] = tl;
        slot[i + 1] = tr;
    }
    // closing the braid identifies each final edge with the initial one
    let mut alias: Vec<usize> = (0..next).collect();
    for (s, &top) in slot.iter().enumerate() {
        alias[top] = s;
    }
    let mut label: BTreeMap<usize, EdgeLabel> = BTreeMap::new();
    raw.iter()
        .map(|q| {
            q.map(|e| {
                let e = alias[e];
                let n = label.len() as EdgeLabel + 1;
                *label.entry(e).or_insert(n)
            })
        })
        .collect()
}

/// A braid word on `strands` strands with `len` letters in which every
/// generator occurs, so the closure is connected.
pub fn random_braid<R: Rng + ?Sized>(rng: &mut R, strands: usize, len: usize) -> Vec<i32> {
    assert!(strands >= 2 && len + 1 >= strands);
    let mut word: Vec<i32> = (1..strands as i32).collect();
    while word.len() < len {
        word.push(rng.gen_range(1..strands as i32));
    }
    word.shuffle(rng);
    for g in &mut word {
        if rng.gen_bool(0.5) {
            *g = -*g;
        }
    }
    word
}

/// A connected diagram with between 1 and `max_crossings` crossings.
pub fn random_diagram<R: Rng + ?Sized>(rng: &mut R, max_crossings: usize, field: Field) -> Result<Diagram, DiagramError> {
    assert!(max_crossings >= 1);
    let strands = rng.gen_range(2..=max_crossings.min(4) + 1);
    let len = rng.gen_range(strands - 1..=max_crossings);
    let pd = braid_closure_pd(strands, &random_braid(rng, strands, len));
    Diagram::new(&pd, 1, Vec::new(), field)
}

/// Like [`random_diagram`] but retries until the diagram is a knot.
pub fn random_knot<R: Rng + ?Sized>(rng: &mut R, max_crossings: usize, field: Field) -> Result<Diagram, DiagramError> {
    loop {
        let d = random_diagram(rng, max_crossings, field.clone())?;
        if d.is_knot() {
            return Ok(d);
        }
    }
}

/// A uniformly random element of a finite field, or a random sum of
/// variables (possibly with 1 added) for rational functions.
pub fn random_element<R: Rng + ?Sized>(rng: &mut R, field: &Field) -> FieldElement {
    match field {
        Field::Gf2 => FieldElement::Gf2(rng.gen()),
        Field::Gf2k(g) => FieldElement::Gf2k(Gf2kElem::new(*g, rng.gen::<u64>() & g.mask())),
        Field::RatFn(r) => {
            let mut acc = if rng.gen_bool(0.3) { RatFunc::one(r.nvars()) } else { RatFunc::zero(r.nvars()) };
            for i in 0..r.nvars() {
                if rng.gen_bool(0.5) {
                    acc = acc.add(&r.var(i));
                }
            }
            FieldElement::Rat(acc)
        }
    }
}

/// Markings putting a distinct basis element of `GF(2^k)` on every
/// non-basepoint edge, `k` being the number of such edges.
pub fn generic_markings(d: &Diagram) -> (Field, Vec<Marking>) {
    let k = (d.edge_count() - 1).max(1) as u32;
    let g = Gf2kField::new(k).expect("k <= 64");
    let marks = (0..d.edge_count())
        .filter(|&e| e != d.basepoint())
        .enumerate()
        .map(|(i, edge)| Marking { edge, weight: FieldElement::Gf2k(Gf2kElem::new(g, 1 << i)) })
        .collect();
    (Field::Gf2k(g), marks)
}

/// `d` with [`generic_markings`].
pub fn generic_diagram(d: &Diagram) -> Result<Diagram, DiagramError> {
    let (f, m) = generic_markings(d);
    d.with_field(f, m)
}

/// `d` over `GF(2)(x)` with weight `x^(i+1)` on the `i`-th non-basepoint
/// edge. Distinct powers are linearly independent over GF(2), so these
/// weights are generic, and one variable keeps symbolic elimination cheap.
pub fn symbolic_generic_diagram(d: &Diagram) -> Result<Diagram, DiagramError> {
    let field = Field::RatFn(RatFnField::new(["x"]));
    let x = RatFunc::var(1, 0);
    let mut w = RatFunc::one(1);
    let mut marks = Vec::new();
    for edge in (0..d.edge_count()).filter(|&e| e != d.basepoint()) {
        w = w.mul(&x);
        marks.push(Marking { edge, weight: FieldElement::Rat(w.clone()) });
    }
    d.with_field(field, marks)
}

/// Random markings in the diagram's field, spread over the edges of each
/// component so that the per-component totals equal `totals`.
pub fn redistribute<R: Rng + ?Sized>(rng: &mut R, d: &Diagram, totals: &[FieldElement]) -> Vec<Marking> {
    assert_eq!(totals.len(), d.component_count());
    let field = d.field();
    let mut out = Vec::new();
    for (c, total) in totals.iter().enumerate() {
        let edges = d.component_edges(c);
        let count = rng.gen_range(1..=edges.len().min(4) + 1);
        let mut rest = total.clone();
        for k in 0..count {
            let edge = *edges.choose(rng).expect("component has edges");
            let weight = if k + 1 == count { rest.clone() } else { random_element(rng, field) };
            rest = rest.add(&weight).expect("same field");
            out.push(Marking { edge, weight });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn hopf_and_trefoil_braids() {
        let hopf = Diagram::new(&braid_closure_pd(2, &[1, 1]), 1, Vec::new(), Field::Gf2).unwrap();
        assert_eq!((hopf.crossing_count(), hopf.component_count(), hopf.writhe()), (2, 2, 2));
        let tref = Diagram::new(&braid_closure_pd(2, &[-1, -1, -1]), 1, Vec::new(), Field::Gf2).unwrap();
        assert!(tref.is_knot());
        assert_eq!(tref.writhe(), -3);
    }

    #[test]
    fn labels_are_consecutive() {
        let pd = braid_closure_pd(3, &[1, -2, 1, -2]);
        let mut seen: Vec<u32> = pd.iter().flatten().copied().collect();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen, (1..=8).collect::<Vec<_>>());
    }

    #[test]
    fn random_diagrams_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let d = random_diagram(&mut rng, 6, Field::Gf2).unwrap();
            assert!((1..=6).contains(&d.crossing_count()));
            assert!(d.regions().is_ok());
        }
    }

    #[test]
    fn redistribution_keeps_totals() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let d = Diagram::new(&braid_closure_pd(2, &[1, 1]), 1, Vec::new(), Field::gf2k(8).unwrap()).unwrap();
        let totals: Vec<_> = (0..2).map(|_| random_element(&mut rng, d.field())).collect();
        for _ in 0..10 {
            let m = d.with_markings(redistribute(&mut rng, &d, &totals)).unwrap();
            assert_eq!(m.component_totals(), totals);
        }
    }
}
