//! Planar diagrams given by PD codes, and their combinatorics.
//!
//! A crossing is a quadruple `(a, b, c, d)` of edge labels listed
//! counterclockwise starting at the incoming under-strand, so the under-strand
//! runs `a -> c` and the over-strand joins `b` and `d`. A crossing is positive
//! when the over-strand runs `d -> b`.
//!
//! Each crossing has two smoothings. Bit 0 of a [`Resolution`] joins
//! `(a, b)` and `(c, d)`; bit 1 joins `(a, d)` and `(b, c)`. For either sign
//! the 0-smoothing is the source of the crossing's two-term complex, so the
//! cube differential always changes a 0 to a 1.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::field::{Field, FieldElement, FieldError};

pub type EdgeLabel = u32;

/// Crossings beyond this count are rejected by anything that walks the full cube.
pub const MAX_CUBE_CROSSINGS: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagramError {
    EdgeMultiplicity { label: EdgeLabel, count: usize },
    ZeroLabel,
    Disconnected,
    UnknownEdge(EdgeLabel),
    /// A strand's orientation, propagated through crossings, disagrees with an under-crossing.
    InconsistentOrientation { crossing: usize },
    /// Face count differs from crossings + 2.
    NonPlanar { faces: usize, crossings: usize },
    NotIncident { edge: EdgeLabel, crossing: usize },
    NoSuchMarking(usize),
    TooManyCrossings(usize),
    Field(FieldError),
}

impl fmt::Display for DiagramError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramError::EdgeMultiplicity { label, count } => {
                write!(f, "edge {label} appears {count} times (expected exactly 2)")
            }
            DiagramError::ZeroLabel => f.write_str("edge labels must be positive"),
            DiagramError::Disconnected => f.write_str("diagram is disconnected"),
            DiagramError::UnknownEdge(e) => write!(f, "no edge labelled {e}"),
            DiagramError::InconsistentOrientation { crossing } => {
                write!(f, "inconsistent strand orientation at crossing {crossing}")
            }
            DiagramError::NonPlanar { faces, crossings } => {
                write!(f, "{faces} faces for {crossings} crossings; PD code is not planar")
            }
            DiagramError::NotIncident { edge, crossing } => {
                write!(f, "edge {edge} does not meet crossing {crossing}")
            }
            DiagramError::NoSuchMarking(i) => write!(f, "no marking with index {i}"),
            DiagramError::TooManyCrossings(n) => {
                write!(f, "{n} crossings exceeds the cube limit of {MAX_CUBE_CROSSINGS}")
            }
            DiagramError::Field(e) => write!(f, "{e}"),
        }
    }
}

impl From<FieldError> for DiagramError {
    fn from(e: FieldError) -> Self {
        DiagramError::Field(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
}

/// A weighted point on an edge. `edge` is a dense edge index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Marking {
    pub edge: usize,
    pub weight: FieldElement,
}

/// A dart is an end of an edge at a crossing: `(crossing, position)`.
pub type Dart = (usize, usize);

#[derive(Clone, Debug)]
pub struct Diagram {
    crossings: Vec<[usize; 4]>,
    labels: Vec<EdgeLabel>,
    signs: Vec<Sign>,
    basepoint: usize,
    markings: Vec<Marking>,
    field: Field,
    darts: Vec<[Dart; 2]>,
    /// which of `darts[e]` is the end the edge runs into
    head: Vec<usize>,
    component_of_edge: Vec<usize>,
    components: usize,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl Diagram {
    /// Validates a PD code and attaches a basepoint and markings.
    ///
    /// An empty crossing list describes the crossingless unknot whose single
    /// edge carries the basepoint label.
    pub fn new(
        pd: &[[EdgeLabel; 4]],
        basepoint: EdgeLabel,
        markings: Vec<(EdgeLabel, FieldElement)>,
        field: Field,
    ) -> Result<Diagram, DiagramError> {
        if pd.is_empty() {
            return Diagram::unknot(basepoint, markings, field);
        }
        let mut index: BTreeMap<EdgeLabel, usize> = BTreeMap::new();
        let mut labels = Vec::new();
        let mut counts: Vec<usize> = Vec::new();
        let mut darts: Vec<Vec<Dart>> = Vec::new();
        let mut crossings = Vec::with_capacity(pd.len());
        for (x, quad) in pd.iter().enumerate() {
            let mut dense = [0usize; 4];
            for (p, &label) in quad.iter().enumerate() {
                if label == 0 {
                    return Err(DiagramError::ZeroLabel);
                }
                let e = *index.entry(label).or_insert_with(|| {
                    labels.push(label);
                    counts.push(0);
                    darts.push(Vec::new());
                    labels.len() - 1
                });
                counts[e] += 1;
                darts[e].push((x, p));
                dense[p] = e;
            }
            crossings.push(dense);
        }
        for (e, &c) in counts.iter().enumerate() {
            if c != 2 {
                return Err(DiagramError::EdgeMultiplicity { label: labels[e], count: c });
            }
        }
        // dense indices ordered by label
        let mut order: Vec<usize> = (0..labels.len()).collect();
        order.sort_by_key(|&e| labels[e]);
        let mut remap = vec![0; labels.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new;
        }
        let labels: Vec<EdgeLabel> = order.iter().map(|&e| labels[e]).collect();
        let darts: Vec<[Dart; 2]> = order.iter().map(|&e| [darts[e][0], darts[e][1]]).collect();
        for quad in crossings.iter_mut() {
            for e in quad.iter_mut() {
                *e = remap[*e];
            }
        }

        let mut uf = UnionFind::new(crossings.len());
        for d in &darts {
            uf.union(d[0].0, d[1].0);
        }
        if (0..crossings.len()).any(|x| uf.find(x) != uf.find(0)) {
            return Err(DiagramError::Disconnected);
        }

        let head = orient(&crossings, &darts, &labels)?;
        let signs = crossings
            .iter()
            .enumerate()
            .map(|(x, quad)| {
                let d = quad[3];
                if darts[d][head[d]] == (x, 3) {
                    Sign::Positive
                } else {
                    Sign::Negative
                }
            })
            .collect();

        let mut uf = UnionFind::new(labels.len());
        for quad in &crossings {
            uf.union(quad[0], quad[2]);
            uf.union(quad[1], quad[3]);
        }
        let (component_of_edge, components) = compress(&mut uf, labels.len());

        let mut dg = Diagram {
            crossings,
            basepoint: 0,
            signs,
            markings: Vec::new(),
            field,
            darts,
            head,
            component_of_edge,
            components,
            labels,
        };
        dg.basepoint = dg.edge_index(basepoint)?;
        dg.markings = dg.dense_markings(markings)?;
        Ok(dg)
    }

    /// The crossingless unknot: a single closed edge.
    pub fn unknot(label: EdgeLabel, markings: Vec<(EdgeLabel, FieldElement)>, field: Field) -> Result<Diagram, DiagramError> {
        if label == 0 {
            return Err(DiagramError::ZeroLabel);
        }
        let mut dg = Diagram {
            crossings: Vec::new(),
            labels: vec![label],
            signs: Vec::new(),
            basepoint: 0,
            markings: Vec::new(),
            field,
            darts: Vec::new(),
            head: Vec::new(),
            component_of_edge: vec![0],
            components: 1,
        };
        dg.markings = dg.dense_markings(markings)?;
        Ok(dg)
    }

    fn dense_markings(&self, markings: Vec<(EdgeLabel, FieldElement)>) -> Result<Vec<Marking>, DiagramError> {
        markings
            .into_iter()
            .map(|(label, weight)| {
                self.field.check(&weight)?;
                Ok(Marking { edge: self.edge_index(label)?, weight })
            })
            .collect()
    }

    /// Same diagram and basepoint, new markings (dense edge indices).
    pub fn with_markings(&self, markings: Vec<Marking>) -> Result<Diagram, DiagramError> {
        for m in &markings {
            if m.edge >= self.edge_count() {
                return Err(DiagramError::UnknownEdge(m.edge as EdgeLabel));
            }
            self.field.check(&m.weight)?;
        }
        let mut d = self.clone();
        d.markings = markings;
        Ok(d)
    }

    /// Same diagram with markings over a different field.
    pub fn with_field(&self, field: Field, markings: Vec<Marking>) -> Result<Diagram, DiagramError> {
        let mut d = self.clone();
        d.field = field;
        d.with_markings(markings)
    }

    pub fn with_basepoint(&self, label: EdgeLabel) -> Result<Diagram, DiagramError> {
        let mut d = self.clone();
        d.basepoint = self.edge_index(label)?;
        Ok(d)
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        self.labels.len()
    }

    /// Crossings as dense edge indices.
    pub fn crossings(&self) -> &[[usize; 4]] {
        &self.crossings
    }

    /// Crossings as the original edge labels.
    pub fn pd(&self) -> Vec<[EdgeLabel; 4]> {
        self.crossings.iter().map(|q| q.map(|e| self.labels[e])).collect()
    }

    pub fn label(&self, edge: usize) -> EdgeLabel {
        self.labels[edge]
    }

    pub fn edge_index(&self, label: EdgeLabel) -> Result<usize, DiagramError> {
        self.labels.binary_search(&label).map_err(|_| DiagramError::UnknownEdge(label))
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn writhe(&self) -> i32 {
        self.signs.iter().map(|s| if *s == Sign::Positive { 1 } else { -1 }).sum()
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn markings(&self) -> &[Marking] {
        &self.markings
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn is_knot(&self) -> bool {
        self.components == 1
    }

    pub fn component_of_edge(&self, edge: usize) -> usize {
        self.component_of_edge[edge]
    }

    /// Both ends of an edge; empty for the crossingless unknot.
    pub fn darts_of(&self, edge: usize) -> Option<[Dart; 2]> {
        self.darts.get(edge).copied()
    }

    /// The crossing end an edge runs into.
    pub fn head_dart(&self, edge: usize) -> Option<Dart> {
        self.darts.get(edge).map(|d| d[self.head[edge]])
    }

    /// The edge continuing the strand of `edge` through its head crossing.
    pub fn next_edge(&self, edge: usize) -> usize {
        match self.head_dart(edge) {
            None => edge,
            Some((x, p)) => self.crossings[x][(p + 2) % 4],
        }
    }

    /// Edges of one component in orientation order, starting at its lowest edge.
    pub fn component_edges(&self, component: usize) -> Vec<usize> {
        let Some(start) = (0..self.edge_count()).find(|&e| self.component_of_edge[e] == component) else {
            return Vec::new();
        };
        let mut out = vec![start];
        let mut e = self.next_edge(start);
        while e != start {
            out.push(e);
            e = self.next_edge(e);
        }
        out
    }

    /// Sum of the weights of all markings on one edge.
    pub fn edge_weight(&self, edge: usize) -> FieldElement {
        self.markings
            .iter()
            .filter(|m| m.edge == edge)
            .fold(self.field.zero(), |acc, m| acc.add(&m.weight).expect("markings are in the diagram field"))
    }

    /// Total marking weight on each component.
    pub fn component_totals(&self) -> Vec<FieldElement> {
        let mut totals = vec![self.field.zero(); self.components];
        for m in &self.markings {
            let c = self.component_of_edge[m.edge];
            totals[c] = totals[c].add(&m.weight).expect("markings are in the diagram field");
        }
        totals
    }

    /// Partition of the edges into the circles of a resolution.
    pub fn resolve(&self, r: Resolution) -> CircleSet {
        assert_eq!(r.len(), self.crossing_count(), "resolution length must equal the crossing count");
        let m = self.edge_count();
        let mut uf = UnionFind::new(m);
        for (i, &[a, b, c, d]) in self.crossings.iter().enumerate() {
            if r.bit(i) {
                uf.union(a, d);
                uf.union(b, c);
            } else {
                uf.union(a, b);
                uf.union(c, d);
            }
        }
        // basepoint circle first, then by lowest edge
        let mut id = vec![usize::MAX; m];
        let mut circle_of_edge = vec![0; m];
        let bp_root = uf.find(self.basepoint);
        id[bp_root] = 0;
        let mut count = 1;
        for e in 0..m {
            let root = uf.find(e);
            if id[root] == usize::MAX {
                id[root] = count;
                count += 1;
            }
            circle_of_edge[e] = id[root];
        }
        CircleSet { circle_of_edge, count }
    }

    /// All resolutions with a single circle, in increasing bit order.
    pub fn connected_resolutions(&self) -> Result<Vec<Resolution>, DiagramError> {
        let n = self.crossing_count();
        if n > MAX_CUBE_CROSSINGS {
            return Err(DiagramError::TooManyCrossings(n));
        }
        Ok(Resolution::all(n).filter(|&r| self.resolve(r).is_connected()).collect())
    }

    /// Sum of the marking weights on one circle of a resolution.
    pub fn circle_weight(&self, cs: &CircleSet, circle: usize) -> FieldElement {
        assert!(circle < cs.count(), "circle {circle} does not exist");
        self.markings
            .iter()
            .filter(|m| cs.circle_of(m.edge) == circle)
            .fold(self.field.zero(), |acc, m| acc.add(&m.weight).expect("markings are in the diagram field"))
    }

    /// Faces of the diagram on the sphere.
    pub fn regions(&self) -> Result<RegionSet, DiagramError> {
        if self.crossings.is_empty() {
            let regions = vec![vec![EdgeSide { edge: 0, side: 0 }], vec![EdgeSide { edge: 0, side: 1 }]];
            return Ok(RegionSet { regions, side_regions: vec![[0, 1]], basepoint_adjacent: [0, 1] });
        }
        let n = self.crossings.len();
        let mut seen = vec![usize::MAX; 4 * n];
        let mut regions: Vec<Vec<EdgeSide>> = Vec::new();
        let mut side_regions = vec![[usize::MAX; 2]; self.edge_count()];
        for start in 0..4 * n {
            if seen[start] != usize::MAX {
                continue;
            }
            let id = regions.len();
            let mut face = Vec::new();
            let mut dart = start;
            loop {
                seen[dart] = id;
                let (x, p) = (dart / 4, dart % 4);
                let e = self.crossings[x][p];
                let side = if self.darts[e][0] == (x, p) { 0 } else { 1 };
                face.push(EdgeSide { edge: e, side });
                side_regions[e][side] = id;
                // travel along the edge, then turn counterclockwise at the far crossing
                let (y, q) = self.darts[e][1 - side];
                dart = 4 * y + (q + 1) % 4;
                if dart == start {
                    break;
                }
            }
            regions.push(face);
        }
        if regions.len() != n + 2 {
            return Err(DiagramError::NonPlanar { faces: regions.len(), crossings: n });
        }
        let bp = side_regions[self.basepoint];
        Ok(RegionSet { regions, side_regions, basepoint_adjacent: bp })
    }
}

fn compress(uf: &mut UnionFind, n: usize) -> (Vec<usize>, usize) {
    let mut id = vec![usize::MAX; n];
    let mut out = vec![0; n];
    let mut count = 0;
    for e in 0..n {
        let r = uf.find(e);
        if id[r] == usize::MAX {
            id[r] = count;
            count += 1;
        }
        out[e] = id[r];
    }
    (out, count)
}

/// Orients every edge. Under-strands fix the direction of their edges; the
/// direction then propagates straight through crossings along each strand.
/// A component that never passes under anything is oriented so that its
/// lowest label is followed by the next-higher label when possible.
fn orient(crossings: &[[usize; 4]], darts: &[[Dart; 2]], labels: &[EdgeLabel]) -> Result<Vec<usize>, DiagramError> {
    const UNKNOWN: usize = usize::MAX;
    let m = labels.len();
    let mut head = vec![UNKNOWN; m];
    let which = |e: usize, dart: Dart| if darts[e][0] == dart { 0 } else { 1 };
    let mut stack: Vec<usize> = Vec::new();
    let assign = |head: &mut Vec<usize>, e: usize, h: usize, x: usize, stack: &mut Vec<usize>| {
        if head[e] == UNKNOWN {
            head[e] = h;
            stack.push(e);
            Ok(())
        } else if head[e] != h {
            Err(DiagramError::InconsistentOrientation { crossing: x })
        } else {
            Ok(())
        }
    };
    for (x, quad) in crossings.iter().enumerate() {
        let a = quad[0];
        assign(&mut head, a, which(a, (x, 0)), x, &mut stack)?;
        let c = quad[2];
        assign(&mut head, c, 1 - which(c, (x, 2)), x, &mut stack)?;
    }
    loop {
        while let Some(e) = stack.pop() {
            // head end continues into the next edge's tail
            let (x, p) = darts[e][head[e]];
            let next = crossings[x][(p + 2) % 4];
            assign(&mut head, next, 1 - which(next, (x, (p + 2) % 4)), x, &mut stack)?;
            // tail end continues back into the previous edge's head
            let (y, q) = darts[e][1 - head[e]];
            let prev = crossings[y][(q + 2) % 4];
            assign(&mut head, prev, which(prev, (y, (q + 2) % 4)), y, &mut stack)?;
        }
        let Some(e) = (0..m).filter(|&e| head[e] == UNKNOWN).min_by_key(|&e| labels[e]) else { break };
        // no under-crossing on this component: follow the numbering
        let h = [0, 1]
            .into_iter()
            .find(|&h| {
                let (x, p) = darts[e][h];
                labels[crossings[x][(p + 2) % 4]] == labels[e] + 1
            })
            .unwrap_or(0);
        let x = darts[e][h].0;
        assign(&mut head, e, h, x, &mut stack)?;
    }
    Ok(head)
}

/// One smoothing choice per crossing, packed into bits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Resolution {
    bits: u64,
    len: u8,
}

impl Resolution {
    pub fn new(bits: u64, len: usize) -> Self {
        assert!(len <= 64);
        assert!(len == 64 || bits >> len == 0, "bits beyond the resolution length");
        Resolution { bits, len: len as u8 }
    }

    pub fn zero(len: usize) -> Self {
        Resolution::new(0, len)
    }

    pub fn all(len: usize) -> impl Iterator<Item = Resolution> {
        assert!(len < 64);
        (0..1u64 << len).map(move |b| Resolution::new(b, len))
    }

    /// Parses a string of '0'/'1', first character for crossing 0.
    pub fn parse(s: &str) -> Option<Resolution> {
        let mut bits = 0;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return None,
            }
        }
        (s.len() <= 64).then(|| Resolution::new(bits, s.len()))
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bit(&self, i: usize) -> bool {
        debug_assert!(i < self.len());
        self.bits >> i & 1 == 1
    }

    pub fn with_bit(&self, i: usize, v: bool) -> Resolution {
        debug_assert!(i < self.len());
        let bits = if v { self.bits | 1 << i } else { self.bits & !(1 << i) };
        Resolution { bits, len: self.len }
    }

    pub fn flip(&self, i: usize) -> Resolution {
        self.with_bit(i, !self.bit(i))
    }

    /// Number of 1-smoothings.
    pub fn ones(&self) -> u32 {
        self.bits.count_ones()
    }
}

impl fmt::Display for Resolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Resolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Resolution({self})")
    }
}

/// Circles of a resolution. Circle 0 always contains the basepoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleSet {
    circle_of_edge: Vec<usize>,
    count: usize,
}

impl CircleSet {
    pub fn circle_of(&self, edge: usize) -> usize {
        self.circle_of_edge[edge]
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn basepoint_circle(&self) -> usize {
        0
    }

    pub fn edges_of(&self, circle: usize) -> Vec<usize> {
        (0..self.circle_of_edge.len()).filter(|&e| self.circle_of_edge[e] == circle).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.count == 1
    }
}

pub fn is_connected_resolution(cs: &CircleSet) -> bool {
    cs.is_connected()
}

/// One side of an edge; `side` indexes the edge's two darts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeSide {
    pub edge: usize,
    pub side: usize,
}

#[derive(Clone, Debug)]
pub struct RegionSet {
    regions: Vec<Vec<EdgeSide>>,
    side_regions: Vec<[usize; 2]>,
    basepoint_adjacent: [usize; 2],
}

impl RegionSet {
    pub fn len(&self) -> usize {
        self.regions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regions.is_empty()
    }

    pub fn boundary(&self, region: usize) -> &[EdgeSide] {
        &self.regions[region]
    }

    /// Regions on the two sides of an edge (equal for an isthmus).
    pub fn sides(&self, edge: usize) -> [usize; 2] {
        self.side_regions[edge]
    }

    /// The regions on either side of the basepoint edge.
    pub fn basepoint_adjacent(&self) -> [usize; 2] {
        self.basepoint_adjacent
    }

    /// Boundary edges of a region with the number of times each occurs.
    pub fn adjacency(&self, region: usize) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for s in &self.regions[region] {
            *out.entry(s.edge).or_insert(0) += 1;
        }
        out
    }
}

/// Renders a diagram back to PD text.
pub fn pd_string(d: &Diagram) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    for (i, q) in d.pd().iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "X({},{},{},{})", q[0], q[1], q[2], q[3]);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: [[u32; 4]; 3] = [[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]];
    const HOPF: [[u32; 4]; 2] = [[1, 3, 2, 4], [3, 1, 4, 2]];

    fn plain(pd: &[[u32; 4]]) -> Diagram {
        Diagram::new(pd, 1, Vec::new(), Field::Gf2).unwrap()
    }

    fn res(s: &str) -> Resolution {
        Resolution::parse(s).unwrap()
    }

    #[test]
    fn trefoil_parse() {
        let d = plain(&TREFOIL);
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.edge_count(), 6);
        assert!(d.signs().iter().all(|&s| s == Sign::Negative));
        assert!(d.is_knot());
    }

    #[test]
    fn hopf_parse() {
        let d = plain(&HOPF);
        assert_eq!(d.crossing_count(), 2);
        assert_eq!(d.edge_count(), 4);
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.signs()[0], d.signs()[1]);
    }

    #[test]
    fn kink_accepted() {
        let d = plain(&[[1, 1, 2, 2]]);
        assert_eq!(d.crossing_count(), 1);
        assert_eq!(d.edge_count(), 2);
        assert_eq!(d.signs(), &[Sign::Positive]);
        assert_eq!(d.regions().unwrap().len(), 3);
    }

    #[test]
    fn parse_errors() {
        let three = Diagram::new(&[[1, 1, 1, 2]], 1, Vec::new(), Field::Gf2);
        assert!(matches!(three, Err(DiagramError::EdgeMultiplicity { label: 1, count: 3 })));
        let split = Diagram::new(&[[1, 1, 2, 2], [3, 3, 4, 4]], 1, Vec::new(), Field::Gf2);
        assert_eq!(split.unwrap_err(), DiagramError::Disconnected);
        let bad_mark = Diagram::new(&TREFOIL, 1, vec![(9, FieldElement::Gf2(true))], Field::Gf2);
        assert_eq!(bad_mark.unwrap_err(), DiagramError::UnknownEdge(9));
        assert_eq!(Diagram::new(&TREFOIL, 7, Vec::new(), Field::Gf2).unwrap_err(), DiagramError::UnknownEdge(7));
    }

    #[test]
    fn hopf_resolutions() {
        let d = plain(&HOPF);
        let counts: Vec<usize> = ["00", "10", "01", "11"].iter().map(|s| d.resolve(res(s)).count()).collect();
        assert_eq!(counts, vec![2, 1, 1, 2]);
        assert!(is_connected_resolution(&d.resolve(res("10"))));
        assert!(!is_connected_resolution(&d.resolve(res("00"))));
        assert_eq!(d.connected_resolutions().unwrap(), vec![res("10"), res("01")]);
    }

    #[test]
    fn trefoil_resolutions() {
        let d = plain(&TREFOIL);
        // the 0-smoothing of a negative crossing is the unoriented one
        assert_eq!(d.resolve(res("000")).count(), 3);
        assert_eq!(d.resolve(res("111")).count(), 2);
        assert_eq!(d.connected_resolutions().unwrap().len(), 3);
    }

    #[test]
    fn unknot_is_one_circle() {
        let d = Diagram::new(&[], 1, Vec::new(), Field::Gf2).unwrap();
        assert_eq!(d.resolve(Resolution::zero(0)).count(), 1);
        assert_eq!(d.connected_resolutions().unwrap(), vec![Resolution::zero(0)]);
        assert_eq!(d.regions().unwrap().len(), 2);
    }

    #[test]
    fn region_counts() {
        assert_eq!(plain(&TREFOIL).regions().unwrap().len(), 5);
        assert_eq!(plain(&HOPF).regions().unwrap().len(), 4);
    }

    #[test]
    fn nonplanar_pd_rejected() {
        // the trefoil with two labels swapped inside one crossing
        let bad = Diagram::new(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 6, 2, 3]], 1, Vec::new(), Field::Gf2);
        assert!(matches!(bad.and_then(|d| d.regions()), Err(DiagramError::NonPlanar { .. }) | Err(DiagramError::InconsistentOrientation { .. })));
    }

    #[test]
    fn component_walk() {
        let d = plain(&TREFOIL);
        assert_eq!(d.component_edges(0), vec![0, 1, 2, 3, 4, 5]);
        let h = plain(&HOPF);
        assert_eq!(h.component_edges(h.component_of_edge(0)), vec![0, 1]);
    }

    #[test]
    fn circle_weights_sum_markings() {
        let f = Field::gf2k(3).unwrap();
        let Field::Gf2k(g) = f else { unreachable!() };
        let w = |b| FieldElement::Gf2k(crate::field::Gf2kElem::new(g, b));
        let d = Diagram::new(&HOPF, 1, vec![(3, w(1)), (2, w(2)), (4, w(4))], f).unwrap();
        let cs = d.resolve(res("00"));
        assert_eq!(d.circle_weight(&cs, 1), w(2 ^ 4));
        let cs = d.resolve(res("11"));
        assert_eq!(d.circle_weight(&cs, 1), w(1 ^ 2));
        assert_eq!(d.circle_weight(&cs, 0), w(4));
    }
}
