//! Fixture diagrams and oracles that do not share code with the library:
//! faces and checkerboard colourings are recomputed from the raw PD code.
#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};

pub type Pd = Vec<[u32; 4]>;

pub struct Fixture {
    pub name: &'static str,
    pub pd: Pd,
    /// knot determinant, for knots only
    pub determinant: Option<u64>,
    /// writhe, when the labels do not follow the orientation
    pub writhe: Option<i32>,
}

fn pd(q: &[[u32; 4]]) -> Pd {
    q.to_vec()
}

/// Closure of a braid word; generator `i` crosses strands `i`, `i + 1`.
/// Written independently of the library's generator.
pub fn braid_pd(strands: usize, word: &[i32]) -> Pd {
    let mut slot: Vec<u32> = (1..=strands as u32).collect();
    let mut next = strands as u32 + 1;
    let mut out = Vec::new();
    for &g in word {
        let i = g.unsigned_abs() as usize - 1;
        let (bl, br, tl, tr) = (slot[i], slot[i + 1], next, next + 1);
        next += 2;
        out.push(if g > 0 { [br, tr, tl, bl] } else { [bl, br, tr, tl] });
        slot[i] = tl;
        slot[i + 1] = tr;
    }
    let rename: BTreeMap<u32, u32> = slot.iter().enumerate().map(|(s, &top)| (top, s as u32 + 1)).collect();
    for q in &mut out {
        for e in q.iter_mut() {
            if let Some(&r) = rename.get(e) {
                *e = r;
            }
        }
    }
    out
}

pub fn knots() -> Vec<Fixture> {
    vec![
        Fixture { name: "unknot", pd: Vec::new(), determinant: Some(1), writhe: None },
        Fixture { name: "3_1", pd: pd(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]), determinant: Some(3), writhe: None },
        Fixture { name: "4_1", pd: pd(&[[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]]), determinant: Some(5), writhe: None },
        Fixture {
            name: "5_1",
            pd: pd(&[[1, 6, 2, 7], [3, 8, 4, 9], [5, 10, 6, 1], [7, 2, 8, 3], [9, 4, 10, 5]]),
            determinant: Some(5),
            writhe: None,
        },
        Fixture {
            name: "5_2",
            pd: pd(&[[1, 4, 2, 5], [3, 8, 4, 9], [5, 10, 6, 1], [9, 6, 10, 7], [7, 2, 8, 3]]),
            determinant: Some(7),
            writhe: None,
        },
        Fixture {
            name: "6_1",
            pd: pd(&[[1, 4, 2, 5], [7, 10, 8, 11], [3, 9, 4, 8], [9, 3, 10, 2], [5, 12, 6, 1], [11, 6, 12, 7]]),
            determinant: Some(9),
            writhe: None,
        },
    ]
}

/// Every fixture: the knots plus links, a kinked unknot and a
/// non-alternating 8-crossing knot.
pub fn all() -> Vec<Fixture> {
    let mut v = knots();
    v.push(Fixture { name: "kink", pd: pd(&[[1, 1, 2, 2]]), determinant: Some(1), writhe: None });
    v.push(Fixture { name: "hopf", pd: pd(&[[1, 3, 2, 4], [3, 1, 4, 2]]), determinant: None, writhe: Some(2) });
    v.push(Fixture { name: "hopf#hopf", pd: braid_pd(3, &[1, 1, 2, 2]), determinant: None, writhe: Some(4) });
    v.push(Fixture { name: "8_19", pd: braid_pd(3, &[1, 2, 1, 2, 1, 2, 1, 2]), determinant: Some(3), writhe: Some(8) });
    v
}

/// Dart `(crossing, position)` at the other end of the edge at `(x, p)`.
fn other_end(pd: &Pd, x: usize, p: usize) -> (usize, usize) {
    let e = pd[x][p];
    for (y, q) in pd.iter().enumerate() {
        for (k, &f) in q.iter().enumerate() {
            if f == e && (y, k) != (x, p) {
                return (y, k);
            }
        }
    }
    panic!("edge {e} appears once")
}

/// Face id of every dart; a face is a cycle "cross the edge, turn left".
pub fn faces(pd: &Pd) -> (Vec<[usize; 4]>, usize) {
    let mut face = vec![[usize::MAX; 4]; pd.len()];
    let mut n = 0;
    for x in 0..pd.len() {
        for p in 0..4 {
            if face[x][p] != usize::MAX {
                continue;
            }
            let (mut y, mut q) = (x, p);
            while face[y][q] == usize::MAX {
                face[y][q] = n;
                let (z, r) = other_end(pd, y, q);
                (y, q) = (z, (r + 1) % 4);
            }
            n += 1;
        }
    }
    (face, n)
}

/// Two-colouring of the faces; `true` is shaded.
pub fn checkerboard(pd: &Pd) -> (Vec<[usize; 4]>, Vec<bool>) {
    let (face, n) = faces(pd);
    assert_eq!(n, pd.len() + 2, "diagram is not planar");
    let mut adj = vec![Vec::new(); n];
    for x in 0..pd.len() {
        for p in 0..4 {
            let (y, q) = other_end(pd, x, p);
            adj[face[x][p]].push(face[y][q]);
        }
    }
    let mut colour = vec![None; n];
    colour[0] = Some(true);
    let mut queue = VecDeque::from([0]);
    while let Some(f) = queue.pop_front() {
        let c = colour[f].unwrap();
        for &g in &adj[f] {
            match colour[g] {
                None => {
                    colour[g] = Some(!c);
                    queue.push_back(g);
                }
                Some(k) => assert_ne!(k, c, "faces are not 2-colourable"),
            }
        }
    }
    (face, colour.into_iter().map(Option::unwrap).collect())
}

/// Shaded faces joined at each crossing, with the Goeritz sign.
fn tait_edges(pd: &Pd) -> (Vec<usize>, Vec<(usize, usize, i64)>) {
    let (face, shaded) = checkerboard(pd);
    let verts: Vec<usize> = (0..shaded.len()).filter(|&f| shaded[f]).collect();
    let idx = |f: usize| verts.iter().position(|&v| v == f).unwrap();
    let mut edges = Vec::new();
    for x in 0..pd.len() {
        // corner between positions p and p+1 is the face of dart p+1
        let ab = face[x][1];
        let (u, v, eta) = if shaded[ab] { (face[x][1], face[x][3], -1) } else { (face[x][2], face[x][0], 1) };
        edges.push((idx(u), idx(v), eta));
    }
    (verts, edges)
}

pub fn det_i128(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else { return 0 };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn reduced_matrix(n: usize, edges: &[(usize, usize, i64)], weight: impl Fn(i64) -> i128) -> Vec<Vec<i128>> {
    let mut g = vec![vec![0i128; n]; n];
    for &(u, v, eta) in edges {
        if u == v {
            continue;
        }
        let w = weight(eta);
        g[u][v] -= w;
        g[v][u] -= w;
        g[u][u] += w;
        g[v][v] += w;
    }
    g.into_iter().skip(1).map(|row| row.into_iter().skip(1).collect()).collect()
}

/// |det| of the reduced Goeritz matrix.
pub fn goeritz_determinant(pd: &Pd) -> u64 {
    if pd.is_empty() {
        return 1;
    }
    let (verts, edges) = tait_edges(pd);
    det_i128(reduced_matrix(verts.len(), &edges, |eta| eta as i128)).unsigned_abs() as u64
}

/// Spanning trees of the Tait graph by the matrix-tree theorem.
pub fn spanning_tree_count(pd: &Pd) -> u64 {
    if pd.is_empty() {
        return 1;
    }
    let (verts, edges) = tait_edges(pd);
    det_i128(reduced_matrix(verts.len(), &edges, |_| 1)) as u64
}

pub type Laurent = BTreeMap<i32, i64>;

fn laurent_mul(a: &Laurent, b: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (i, x) in a {
        for (j, y) in b {
            *out.entry(i + j).or_default() += x * y;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Crossing sign from the PD rule: under-strand `a -> c`; positive iff the
/// over-strand runs `d -> b`. Over-strand direction comes from the labels
/// when consecutive, which holds for all fixtures here.
fn writhe(pd: &Pd) -> i32 {
    let m = 2 * pd.len() as u32;
    let succ = |e: u32| if e == m { 1 } else { e + 1 };
    pd.iter()
        .map(|&[_, b, _, d]| {
            if b == succ(d) {
                1
            } else if d == succ(b) {
                -1
            } else {
                panic!("over-strand direction not determined by labels")
            }
        })
        .sum()
}

/// Jones polynomial in `A` (with `t = A^-4`), normalised so the unknot is 1,
/// from the Kauffman state sum. The A-smoothing at a crossing joins the
/// corners swept when the over-strand `b`-`d` turns counterclockwise, i.e.
/// corners `(b,c)` and `(d,a)`; the arcs it leaves pair `a` with `b` and `c` with `d`.
pub fn jones_in_a(pd: &Pd, writhe_override: Option<i32>) -> Laurent {
    let n = pd.len();
    let mut bracket = Laurent::new();
    let loop_value: Laurent = [(2, -1), (-2, -1)].into_iter().collect();
    let max = pd.iter().flatten().copied().max().unwrap_or(1) as usize;
    for s in 0u64..1 << n {
        let mut parent: Vec<usize> = (0..=max).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                x = p[x];
            }
            x
        }
        let mut union = |a: u32, b: u32| {
            let (ra, rb) = (find(&mut parent, a as usize), find(&mut parent, b as usize));
            parent[ra] = rb;
        };
        let mut a_count = 0;
        for (i, &[a, b, c, d]) in pd.iter().enumerate() {
            if s >> i & 1 == 0 {
                a_count += 1;
                union(a, b);
                union(c, d);
            } else {
                union(a, d);
                union(b, c);
            }
        }
        let loops = if n == 0 {
            1
        } else {
            let mut roots: Vec<usize> = pd.iter().flatten().map(|&e| find(&mut parent, e as usize)).collect();
            roots.sort_unstable();
            roots.dedup();
            roots.len()
        };
        let mut term: Laurent = [(a_count - (n as i32 - a_count), 1)].into_iter().collect();
        for _ in 1..loops {
            term = laurent_mul(&term, &loop_value);
        }
        for (k, v) in term {
            *bracket.entry(k).or_default() += v;
        }
    }
    bracket.retain(|_, v| *v != 0);
    let w = writhe_override.unwrap_or_else(|| writhe(pd));
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let factor: Laurent = [(-3 * w, sign)].into_iter().collect();
    laurent_mul(&bracket, &factor)
}
