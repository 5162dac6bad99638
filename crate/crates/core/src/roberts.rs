//! Region-labelled twisting expressed as edge markings.
//!
//! Label the regions of the diagram `x_1 .. x_n`, leaving out the two regions
//! beside the basepoint edge, and the non-basepoint edges `y_1 .. y_m`. The
//! map `f` sends a region to the sum of its boundary edges. It is injective;
//! for any left inverse `g`, marking edge `j` with `g(y_j)` gives every
//! basepoint-avoiding circle the weight "sum of the region variables on its
//! far side".

use alloc::vec::Vec;
use core::fmt;

use crate::diagram::{Diagram, DiagramError, Marking, Resolution};
use crate::field::{Field, FieldElement, Gf2kElem, RatFunc};
use crate::linalg::BitMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RobertsError {
    /// `f` has a kernel.
    NotInjective { rank: usize, regions: usize },
    /// The target field cannot hold `needed` independent region variables.
    FieldTooSmall { needed: usize },
    /// A circle's edge weights disagree with its enclosed regions.
    CircleSum { resolution: Resolution, circle: usize },
    Diagram(DiagramError),
}

impl fmt::Display for RobertsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RobertsError::NotInjective { rank, regions } => {
                write!(f, "region-to-edge map is not injective: rank {rank} on {regions} regions")
            }
            RobertsError::FieldTooSmall { needed } => write!(f, "field cannot hold {needed} independent region variables"),
            RobertsError::CircleSum { resolution, circle } => {
                write!(f, "circle-sum property fails for circle {circle} of resolution {resolution}")
            }
            RobertsError::Diagram(e) => write!(f, "{e}"),
        }
    }
}

impl From<DiagramError> for RobertsError {
    fn from(e: DiagramError) -> Self {
        RobertsError::Diagram(e)
    }
}

#[derive(Clone, Debug)]
pub struct RegionEdgeMap {
    /// Region ids (from [`Diagram::regions`]) of the variables `x_1 .. x_n`.
    pub regions: Vec<usize>,
    /// Dense edge indices of `y_1 .. y_m`.
    pub edges: Vec<usize>,
    /// `f[i][j]` is set iff edge `j` bounds region `i` an odd number of times.
    pub f: BitMatrix,
    /// Column `j` is `g(y_j)` in the region basis; empty until [`left_inverse`] runs.
    pub g: Option<BitMatrix>,
}

impl RegionEdgeMap {
    pub fn region_count(&self) -> usize {
        self.regions.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Whether `g ∘ f` is the identity.
    pub fn composes_to_identity(&self) -> bool {
        match &self.g {
            None => false,
            Some(g) => g.mul(&self.f.transpose()) == BitMatrix::identity(self.regions.len()),
        }
    }
}

pub fn build_f(d: &Diagram) -> Result<RegionEdgeMap, DiagramError> {
    let rs = d.regions()?;
    let skip = rs.basepoint_adjacent();
    let regions: Vec<usize> = (0..rs.len()).filter(|r| !skip.contains(r)).collect();
    let edges: Vec<usize> = (0..d.edge_count()).filter(|&e| e != d.basepoint()).collect();
    let mut f = BitMatrix::new(regions.len(), edges.len());
    for (i, &r) in regions.iter().enumerate() {
        for (e, mult) in rs.adjacency(r) {
            if mult % 2 == 1 && e != d.basepoint() {
                let j = edges.binary_search(&e).expect("non-basepoint edge");
                f.set(i, j, true);
            }
        }
        debug_assert!(!f.row_is_zero(i), "region {r} has no non-basepoint boundary");
    }
    Ok(RegionEdgeMap { regions, edges, f, g: None })
}

pub fn check_injective(m: &RegionEdgeMap) -> bool {
    m.f.rank() == m.f.rows()
}

/// Fills in `g`: zero outside the leftmost pivot columns of `f`, and the
/// inverse of the pivot block on them.
pub fn left_inverse(m: &mut RegionEdgeMap) -> Result<(), RobertsError> {
    let n = m.regions.len();
    let mut echelon = m.f.clone();
    let pivots = echelon.rref();
    if pivots.len() < n {
        return Err(RobertsError::NotInjective { rank: pivots.len(), regions: n });
    }
    // [F_J^T | I] -> [I | (F_J^T)^-1]
    let mut aug = BitMatrix::new(n, 2 * n);
    for (a, &j) in pivots.iter().enumerate() {
        for i in 0..n {
            aug.set(a, i, m.f.get(i, j));
        }
        aug.set(a, n + a, true);
    }
    let p = aug.rref();
    debug_assert_eq!(p, (0..n).collect::<Vec<_>>());
    let mut g = BitMatrix::new(n, m.edges.len());
    for i in 0..n {
        for (a, &j) in pivots.iter().enumerate() {
            g.set(i, j, aug.get(i, n + a));
        }
    }
    m.g = Some(g);
    Ok(())
}

/// `f` together with its left inverse.
pub fn region_edge_map(d: &Diagram) -> Result<RegionEdgeMap, RobertsError> {
    let mut m = build_f(d)?;
    left_inverse(&mut m)?;
    Ok(m)
}

/// The field element standing for region variable `x_{i+1}`.
pub fn region_variable(field: &Field, i: usize) -> Result<FieldElement, RobertsError> {
    match field {
        Field::Gf2 => Err(RobertsError::FieldTooSmall { needed: i + 1 }),
        Field::Gf2k(g) if (i as u32) < g.degree() => Ok(FieldElement::Gf2k(Gf2kElem::new(*g, 1 << i))),
        Field::RatFn(r) if i < r.nvars() => Ok(FieldElement::Rat(r.var(i))),
        _ => Err(RobertsError::FieldTooSmall { needed: i + 1 }),
    }
}

/// A field just large enough for the region variables of `m`: rational
/// functions in `x1 ..` when `symbolic`, otherwise `GF(2^n)` with the
/// variables as its polynomial basis.
pub fn region_field(m: &RegionEdgeMap, symbolic: bool) -> Field {
    let n = m.regions.len().max(1);
    if symbolic {
        Field::RatFn(crate::field::RatFnField::numbered("x", n))
    } else {
        Field::gf2k(n as u32).expect("at most 64 regions")
    }
}

/// Markings `w_j = g(y_j)` with the region variables realised in `field`.
pub fn roberts_weights(m: &RegionEdgeMap, field: &Field) -> Result<Vec<Marking>, RobertsError> {
    let g = m.g.as_ref().ok_or(RobertsError::NotInjective { rank: m.f.rank(), regions: m.regions.len() })?;
    let vars: Vec<FieldElement> = (0..m.regions.len()).map(|i| region_variable(field, i)).collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    for (j, &edge) in m.edges.iter().enumerate() {
        let mut w = field.zero();
        for (i, x) in vars.iter().enumerate() {
            if g.get(i, j) {
                w = w.add(x).expect("same field");
            }
        }
        if !w.is_zero() {
            out.push(Marking { edge, weight: w });
        }
    }
    Ok(out)
}

/// Convenience: `d` re-marked with Roberts weights in a fresh region field.
pub fn roberts_diagram(d: &Diagram, symbolic: bool) -> Result<Diagram, RobertsError> {
    let m = region_edge_map(d)?;
    let field = region_field(&m, symbolic);
    let marks = roberts_weights(&m, &field)?;
    Ok(d.with_field(field, marks)?)
}

/// Indicator (over `m.regions`) of the regions on the side of `circle` away
/// from the basepoint, in resolution `r`.
pub fn far_side(d: &Diagram, m: &RegionEdgeMap, r: Resolution, circle: usize) -> Result<Vec<bool>, DiagramError> {
    let rs = d.regions()?;
    let cs = d.resolve(r);
    let mut parent: Vec<usize> = (0..rs.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let join = |p: &mut Vec<usize>, a: usize, b: usize| {
        let (a, b) = (find(p, a), find(p, b));
        p[a] = b;
    };
    for e in 0..d.edge_count() {
        if cs.circle_of(e) != circle {
            let [s, t] = rs.sides(e);
            join(&mut parent, s, t);
        }
    }
    // the corner of crossing x between positions p and p+1 holds dart (x, p+1)
    let corner = |x: usize, p: usize| -> usize {
        let q = (p + 1) % 4;
        let e = d.crossings()[x][q];
        let darts = d.darts_of(e).expect("edge has ends");
        let side = if darts[0] == (x, q) { 0 } else { 1 };
        rs.sides(e)[side]
    };
    for x in 0..d.crossing_count() {
        // the band left by the smoothing joins the two corners it separates from the strands
        let (u, v) = if r.bit(x) { (corner(x, 0), corner(x, 2)) } else { (corner(x, 1), corner(x, 3)) };
        join(&mut parent, u, v);
    }
    let [b0, b1] = rs.basepoint_adjacent();
    let home = find(&mut parent, b0);
    debug_assert_eq!(home, find(&mut parent, b1));
    Ok(m.regions.iter().map(|&reg| find(&mut parent, reg) != home).collect())
}

/// Checks, for every resolution and every circle missing the basepoint,
/// that the `g(y_j)` over the circle's edges sum to its far-side regions,
/// both as GF(2) combinations and, when `weighted` is given, as weights of
/// that diagram. Returns the number of circles checked.
pub fn circle_sum_property(d: &Diagram, m: &RegionEdgeMap, weighted: Option<&Diagram>) -> Result<usize, RobertsError> {
    let g = m.g.as_ref().ok_or(RobertsError::NotInjective { rank: m.f.rank(), regions: m.regions.len() })?;
    let n = m.regions.len();
    let vars: Option<Vec<FieldElement>> = match weighted {
        Some(w) => Some((0..n).map(|i| region_variable(w.field(), i)).collect::<Result<_, _>>()?),
        None => None,
    };
    let mut checked = 0;
    for r in Resolution::all(d.crossing_count()) {
        let cs = d.resolve(r);
        for circle in 1..cs.count() {
            let mut sum = alloc::vec![false; n];
            for e in cs.edges_of(circle) {
                let j = m.edges.binary_search(&e).expect("non-basepoint edge");
                for (i, s) in sum.iter_mut().enumerate() {
                    *s ^= g.get(i, j);
                }
            }
            let inside = far_side(d, m, r, circle)?;
            if sum != inside {
                return Err(RobertsError::CircleSum { resolution: r, circle });
            }
            if let (Some(w), Some(vars)) = (weighted, vars.as_ref()) {
                let wcs = w.resolve(r);
                let expected = inside
                    .iter()
                    .zip(vars)
                    .filter(|(b, _)| **b)
                    .fold(w.field().zero(), |acc, (_, x)| acc.add(x).expect("same field"));
                let actual = w.circle_weight(&wcs, circle);
                let same = match (&actual, &expected) {
                    (FieldElement::Rat(a), FieldElement::Rat(b)) => RatFunc::equals(a, b),
                    _ => actual == expected,
                };
                if !same {
                    return Err(RobertsError::CircleSum { resolution: r, circle });
                }
            }
            checked += 1;
        }
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;

    const HOPF: [[u32; 4]; 2] = [[1, 3, 2, 4], [3, 1, 4, 2]];
    const TREFOIL: [[u32; 4]; 3] = [[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]];

    fn plain(pd: &[[u32; 4]]) -> Diagram {
        Diagram::new(pd, 1, Vec::new(), Field::Gf2).unwrap()
    }

    #[test]
    fn shapes() {
        let m = build_f(&plain(&TREFOIL)).unwrap();
        assert_eq!((m.f.rows(), m.f.cols()), (3, 5));
        assert!(check_injective(&m));
        let m = build_f(&plain(&HOPF)).unwrap();
        assert_eq!((m.f.rows(), m.f.cols()), (2, 3));
        assert!(check_injective(&m));
    }

    #[test]
    fn duplicated_row_is_not_injective() {
        let mut m = build_f(&plain(&TREFOIL)).unwrap();
        for j in 0..m.f.cols() {
            let v = m.f.get(0, j);
            m.f.set(1, j, v);
        }
        assert!(!check_injective(&m));
        assert!(matches!(left_inverse(&mut m), Err(RobertsError::NotInjective { rank: 2, regions: 3 })));
    }

    #[test]
    fn left_inverse_composes() {
        for pd in [&HOPF[..], &TREFOIL[..], &[[1, 1, 2, 2]][..]] {
            let m = region_edge_map(&plain(pd)).unwrap();
            assert!(m.composes_to_identity());
        }
    }

    #[test]
    fn circle_sums() {
        for pd in [&HOPF[..], &TREFOIL[..]] {
            let d = plain(pd);
            let m = region_edge_map(&d).unwrap();
            let w = roberts_diagram(&d, true).unwrap();
            let n = circle_sum_property(&d, &m, Some(&w)).unwrap();
            assert!(n > 0);
            let w = roberts_diagram(&d, false).unwrap();
            assert_eq!(circle_sum_property(&d, &m, Some(&w)).unwrap(), n);
        }
    }

    #[test]
    fn unknot_has_no_variables() {
        let d = Diagram::new(&[], 1, Vec::new(), Field::Gf2).unwrap();
        let m = region_edge_map(&d).unwrap();
        assert_eq!((m.region_count(), m.edge_count()), (0, 0));
        assert!(m.composes_to_identity());
    }
}
