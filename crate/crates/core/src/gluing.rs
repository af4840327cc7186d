//! Thurston gluing equations: edge equations and cusp completeness
//! equations in logarithmic form.
//!
//! A tetrahedron with shape `z` carries `z` on edges 01 and 23,
//! `z' = 1/(1 − z)` on edges 02 and 13 and `z'' = 1 − 1/z` on edges 03
//! and 12.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::triangulation::{edge_index, is_odd, Triangulation};

/// Which of `z, z', z''` sits on each entry of [`EDGES`](crate::triangulation::EDGES).
pub const EDGE_SHAPE: [usize; 6] = [0, 1, 2, 2, 1, 0];

/// One equation `Σ_t Σ_k coeff[t][k] · log z_t^{(k)} = rhs · 2πi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub terms: Vec<(usize, [i32; 3])>,
    /// Right-hand side in units of `2πi`.
    pub rhs: i32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluingSystem {
    pub n_tets: usize,
    pub edges: Vec<Equation>,
    /// Two independent peripheral curves per cusp.
    pub cusps: Vec<Equation>,
}

impl GluingSystem {
    pub fn n_cusps(&self) -> usize {
        self.cusps.len() / 2
    }
}

fn push_term(acc: &mut [[i32; 3]], t: usize, k: usize, s: i32) {
    acc[t][k] += s;
}

fn collect(acc: Vec<[i32; 3]>, rhs: i32) -> Equation {
    Equation {
        terms: acc.into_iter().enumerate().filter(|(_, c)| *c != [0, 0, 0]).collect(),
        rhs,
    }
}

/// Cusp triangle `(tet, vertex)`; a side lies in face `f ≠ vertex`.
type CuspTri = (usize, u8);

pub fn gluing_equations(tri: &Triangulation) -> GluingSystem {
    let n = tri.tets.len();
    let sk = tri.skeleton();
    let edges = sk
        .edge_embeddings
        .iter()
        .map(|emb| {
            let mut acc = vec![[0i32; 3]; n];
            for &(t, i) in emb {
                push_term(&mut acc, t, EDGE_SHAPE[i], 1);
            }
            collect(acc, 1)
        })
        .collect();
    let mut cusps = Vec::new();
    for v in 0..sk.n_vertices {
        for curve in peripheral_basis(tri, &sk.vertex, v) {
            let mut acc = vec![[0i32; 3]; n];
            for (t, cv, a, b) in curve {
                let c = 6 - cv - a - b;
                let sign = if is_odd([cv, a, b, c]) { -1 } else { 1 };
                push_term(&mut acc, t, EDGE_SHAPE[edge_index(cv, c)], sign);
            }
            cusps.push(collect(acc, 0));
        }
    }
    GluingSystem { n_tets: n, edges, cusps }
}

/// Two closed curves generating the first homology of the torus link of
/// vertex class `v`, as lists of `(tet, cusp vertex, entry face, exit face)`.
///
/// Uses a tree–cotree split: a spanning tree of the dual graph, a spanning
/// tree of the primal graph avoiding its duals, and the two leftover sides.
fn peripheral_basis(tri: &Triangulation, vertex: &[[usize; 4]], v: usize) -> Vec<Vec<(usize, u8, u8, u8)>> {
    let n = tri.tets.len();
    let tris: Vec<CuspTri> = (0..n)
        .flat_map(|t| (0..4u8).map(move |w| (t, w)))
        .filter(|&(t, w)| vertex[t][w as usize] == v)
        .collect();
    let idx = |(t, w): CuspTri| 4 * t + w as usize;
    // BFS dual spanning tree; parent[x] = (parent triangle, face in x toward it)
    let mut parent: Vec<Option<(CuspTri, u8)>> = vec![None; 4 * n];
    let mut visited = vec![false; 4 * n];
    let mut in_tree = vec![[false; 4]; 4 * n];
    let root = tris[0];
    visited[idx(root)] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for f in (0..4u8).filter(|&f| f != x.1) {
            let tet = &tri.tets[x.0];
            let p = tet.gluing[f as usize];
            let y = (tet.neighbor[f as usize], p[x.1 as usize]);
            if !visited[idx(y)] {
                visited[idx(y)] = true;
                parent[idx(y)] = Some((x, p[f as usize]));
                in_tree[idx(x)][f as usize] = true;
                in_tree[idx(y)][p[f as usize] as usize] = true;
                queue.push_back(y);
            }
        }
    }
    // primal vertices: corners (t, w, c) of cusp triangles, glued across faces
    let corner = |t: usize, w: u8, c: u8| 16 * t + 4 * w as usize + c as usize;
    let mut uf: Vec<usize> = (0..16 * n).collect();
    fn find(uf: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while uf[r] != r {
            r = uf[r];
        }
        let mut y = x;
        while uf[y] != r {
            let t = uf[y];
            uf[y] = r;
            y = t;
        }
        r
    }
    for &(t, w) in &tris {
        for f in (0..4u8).filter(|&f| f != w) {
            let tet = &tri.tets[t];
            let p = tet.gluing[f as usize];
            for c in (0..4u8).filter(|&c| c != w && c != f) {
                let (a, b) = (find(&mut uf, corner(t, w, c)), find(&mut uf, corner(tet.neighbor[f as usize], p[w as usize], p[c as usize])));
                uf[a] = b;
            }
        }
    }
    // primal spanning tree on sides whose duals are not in the dual tree
    let mut tree_uf: Vec<usize> = (0..16 * n).collect();
    let mut leftover = Vec::new();
    let mut seen_side = vec![[false; 4]; 4 * n];
    for &(t, w) in &tris {
        for f in (0..4u8).filter(|&f| f != w) {
            if seen_side[idx((t, w))][f as usize] {
                continue;
            }
            let tet = &tri.tets[t];
            let p = tet.gluing[f as usize];
            let y = (tet.neighbor[f as usize], p[w as usize]);
            seen_side[idx((t, w))][f as usize] = true;
            seen_side[idx(y)][p[f as usize] as usize] = true;
            if in_tree[idx((t, w))][f as usize] {
                continue;
            }
            let ends: Vec<usize> = (0..4u8)
                .filter(|&c| c != w && c != f)
                .map(|c| find(&mut uf, corner(t, w, c)))
                .collect();
            let (a, b) = (find(&mut tree_uf, ends[0]), find(&mut tree_uf, ends[1]));
            if a != b {
                tree_uf[a] = b;
            } else {
                leftover.push(((t, w), f));
            }
        }
    }
    leftover
        .into_iter()
        .take(2)
        .map(|(x, f)| dual_cycle(tri, &parent, x, f))
        .collect()
}

/// Closed dual path: from `x` out through face `f` to its neighbour `y`,
/// then through the tree back to `x`.
fn dual_cycle(
    tri: &Triangulation,
    parent: &[Option<(CuspTri, u8)>],
    x: CuspTri,
    f: u8,
) -> Vec<(usize, u8, u8, u8)> {
    let idx = |(t, w): CuspTri| 4 * t + w as usize;
    let tet = &tri.tets[x.0];
    let p = tet.gluing[f as usize];
    let y = (tet.neighbor[f as usize], p[x.1 as usize]);
    let y_entry = p[f as usize];
    // ancestors with the face used to step up from each
    let chain = |mut z: CuspTri| {
        let mut out = vec![z];
        while let Some((par, _)) = parent[idx(z)] {
            z = par;
            out.push(z);
        }
        out
    };
    let (cx, cy) = (chain(x), chain(y));
    let mut i = cx.len();
    let mut j = cy.len();
    while i > 0 && j > 0 && cx[i - 1] == cy[j - 1] {
        i -= 1;
        j -= 1;
    }
    // triangle sequence y → … → lca → … → x, then x → y closes it
    let mut seq: Vec<CuspTri> = cy[..=j.min(cy.len() - 1)].to_vec();
    let down: Vec<CuspTri> = cx[..i].iter().rev().copied().collect();
    seq.extend(down);
    // entry/exit faces: step between consecutive triangles
    let face_between = |a: CuspTri, b: CuspTri| -> u8 {
        if let Some((par, fa)) = parent[idx(a)] {
            if par == b {
                return fa;
            }
        }
        let (_, fb) = parent[idx(b)].expect("tree neighbour");
        tri.tets[b.0].gluing[fb as usize][fb as usize]
    };
    let m = seq.len();
    let mut out = Vec::with_capacity(m);
    for k in 0..m {
        let cur = seq[k];
        let entry = if k == 0 { y_entry } else { face_between(cur, seq[k - 1]) };
        let exit = if k + 1 == m { f } else { face_between(cur, seq[k + 1]) };
        out.push((cur.0, cur.1, entry, exit));
    }
    out
}
