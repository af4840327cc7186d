//! Ideal triangulations of link complements.
//!
//! The complement is first cut into one bipyramid per diagram face, with
//! apexes at two finite points above and below the projection plane and
//! equatorial vertices on the link; every corner of every face contributes
//! one tetrahedron. The two finite vertices are then removed by collapsing
//! an edge from each of them to a cusp, leaving only ideal vertices.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{Error, Result};
use crate::pd::{PlanarDiagram, Port};

/// A permutation of tetrahedron vertices, `p[i]` the image of `i`.
pub type Perm = [u8; 4];

pub const IDENTITY: Perm = [0, 1, 2, 3];

pub fn inverse(p: Perm) -> Perm {
    let mut q = [0; 4];
    for i in 0..4 {
        q[p[i] as usize] = i as u8;
    }
    q
}

/// `a ∘ b`: apply `b` first.
pub fn compose(a: Perm, b: Perm) -> Perm {
    [a[b[0] as usize], a[b[1] as usize], a[b[2] as usize], a[b[3] as usize]]
}

pub fn is_odd(p: Perm) -> bool {
    let mut inv = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 1
}

pub fn transposition(a: u8, b: u8) -> Perm {
    let mut p = IDENTITY;
    p.swap(a as usize, b as usize);
    p
}

/// The six edges of a tetrahedron, as vertex pairs; edge `i` and edge
/// `5 − i` are opposite.
pub const EDGES: [(u8, u8); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub fn edge_index(a: u8, b: u8) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    EDGES.iter().position(|&e| e == (a, b)).expect("distinct vertices")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Tet {
    pub neighbor: [usize; 4],
    /// `gluing[f]` maps this tetrahedron's vertices to the neighbour's
    /// across face `f` (the face opposite vertex `f`).
    pub gluing: [Perm; 4],
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Triangulation {
    pub tets: Vec<Tet>,
}

/// Equivalence classes of vertices and edges with incidence data.
#[derive(Debug, Clone)]
pub struct Skeleton {
    /// `vertex[t][v]`
    pub vertex: Vec<[usize; 4]>,
    pub n_vertices: usize,
    /// `edge[t][i]` for `i` indexing [`EDGES`].
    pub edge: Vec<[usize; 6]>,
    pub n_edges: usize,
    /// Embeddings `(tet, edge index)` of each edge class.
    pub edge_embeddings: Vec<Vec<(usize, usize)>>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let t = self.0[y];
            self.0[y] = r;
            y = t;
        }
        r
    }

    /// Returns false when already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        self.0[a] = b;
        true
    }

    /// Dense labels in order of first appearance.
    fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.0.len();
        let mut map = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut count = 0;
        for i in 0..n {
            let r = self.find(i);
            if map[r] == usize::MAX {
                map[r] = count;
                count += 1;
            }
            out[i] = map[r];
        }
        (out, count)
    }
}

impl Triangulation {
    pub fn len(&self) -> usize {
        self.tets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tets.is_empty()
    }

    /// Every face glued to exactly one face by an orientation-reversing map.
    pub fn check_gluings(&self) -> Result<()> {
        for (t, tet) in self.tets.iter().enumerate() {
            for f in 0..4 {
                let u = tet.neighbor[f];
                let p = tet.gluing[f];
                let g = p[f] as usize;
                let back = self
                    .tets
                    .get(u)
                    .ok_or_else(|| Error::Triangulation(format!("tet {t} face {f}: bad neighbour")))?;
                if back.neighbor[g] != t || back.gluing[g] != inverse(p) {
                    return Err(Error::Triangulation(format!("tet {t} face {f}: gluing not reciprocal")));
                }
                if (u, g) == (t, f) {
                    return Err(Error::Triangulation(format!("tet {t} face {f}: glued to itself")));
                }
                if !is_odd(p) {
                    return Err(Error::Triangulation(format!("tet {t} face {f}: orientation")));
                }
            }
        }
        Ok(())
    }

    pub fn skeleton(&self) -> Skeleton {
        let n = self.tets.len();
        let mut vuf = UnionFind::new(4 * n);
        let mut euf = UnionFind::new(6 * n);
        for (t, tet) in self.tets.iter().enumerate() {
            for f in 0..4u8 {
                let u = tet.neighbor[f as usize];
                let p = tet.gluing[f as usize];
                for v in (0..4u8).filter(|&v| v != f) {
                    vuf.union(4 * t + v as usize, 4 * u + p[v as usize] as usize);
                }
                for (i, &(a, b)) in EDGES.iter().enumerate() {
                    if a != f && b != f {
                        euf.union(6 * t + i, 6 * u + edge_index(p[a as usize], p[b as usize]));
                    }
                }
            }
        }
        let (vl, n_vertices) = vuf.labels();
        let (el, n_edges) = euf.labels();
        let mut edge_embeddings = vec![Vec::new(); n_edges];
        for (k, &c) in el.iter().enumerate() {
            edge_embeddings[c].push((k / 6, k % 6));
        }
        Skeleton {
            vertex: (0..n).map(|t| [vl[4 * t], vl[4 * t + 1], vl[4 * t + 2], vl[4 * t + 3]]).collect(),
            n_vertices,
            edge: (0..n)
                .map(|t| {
                    let mut a = [0; 6];
                    a.copy_from_slice(&el[6 * t..6 * t + 6]);
                    a
                })
                .collect(),
            n_edges,
            edge_embeddings,
        }
    }

    /// Euler characteristic of each vertex link.
    pub fn vertex_link_euler(&self, sk: &Skeleton) -> Vec<i64> {
        let mut tri = vec![0i64; sk.n_vertices];
        let mut ends = vec![0i64; sk.n_vertices];
        for t in 0..self.tets.len() {
            for v in 0..4 {
                tri[sk.vertex[t][v]] += 1;
            }
        }
        for emb in &sk.edge_embeddings {
            let (t, i) = emb[0];
            let (a, b) = EDGES[i];
            ends[sk.vertex[t][a as usize]] += 1;
            ends[sk.vertex[t][b as usize]] += 1;
        }
        // link: V = edge ends, E = 3T/2, F = T
        (0..sk.n_vertices).map(|v| ends[v] - tri[v] / 2).collect()
    }

    /// Every vertex is a torus cusp and every edge is traversed consistently.
    pub fn check_ideal(&self) -> Result<()> {
        self.check_gluings()?;
        let sk = self.skeleton();
        if let Some(v) = self.vertex_link_euler(&sk).iter().position(|&x| x != 0) {
            return Err(Error::Triangulation(format!("vertex {v} link is not a torus")));
        }
        if sk.n_edges != self.tets.len() {
            return Err(Error::Triangulation(format!(
                "{} edges for {} tetrahedra",
                sk.n_edges,
                self.tets.len()
            )));
        }
        Ok(())
    }

    /// Plain-text gluing table: a header line with the tetrahedron count,
    /// then one line per tetrahedron listing the four neighbours and the
    /// four gluing permutations as digit strings.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}", self.tets.len());
        for tet in &self.tets {
            let _ = write!(
                s,
                "{} {} {} {}  ",
                tet.neighbor[0], tet.neighbor[1], tet.neighbor[2], tet.neighbor[3]
            );
            for (f, p) in tet.gluing.iter().enumerate() {
                let _ = write!(s, "{}{}{}{}", p[0], p[1], p[2], p[3]);
                s.push(if f == 3 { '\n' } else { ' ' });
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Triangulation(format!("gluing table: {msg}"));
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .and_then(|l| l.parse().ok())
            .ok_or_else(|| bad("missing tetrahedron count"))?;
        let mut tets = Vec::with_capacity(n);
        for _ in 0..n {
            let line = lines.next().ok_or_else(|| bad("too few lines"))?;
            let tok: Vec<&str> = line.split_whitespace().collect();
            if tok.len() != 8 {
                return Err(bad("expected 8 fields per tetrahedron"));
            }
            let mut neighbor = [0; 4];
            let mut gluing = [IDENTITY; 4];
            for f in 0..4 {
                neighbor[f] = tok[f].parse().map_err(|_| bad("bad neighbour"))?;
                let d: Vec<u8> = tok[4 + f].bytes().map(|b| b.wrapping_sub(b'0')).collect();
                if d.len() != 4 || d.iter().any(|&x| x > 3) {
                    return Err(bad("bad permutation"));
                }
                gluing[f] = [d[0], d[1], d[2], d[3]];
                if inverse(inverse(gluing[f])) != gluing[f] || {
                    let mut s = gluing[f];
                    s.sort_unstable();
                    s != IDENTITY
                } {
                    return Err(bad("bad permutation"));
                }
            }
            tets.push(Tet { neighbor, gluing });
        }
        let t = Self { tets };
        t.check_gluings()?;
        Ok(t)
    }

    pub(crate) fn glue(&mut self, t: usize, f: usize, u: usize, p: Perm) {
        let g = p[f] as usize;
        self.tets[t].neighbor[f] = u;
        self.tets[t].gluing[f] = p;
        self.tets[u].neighbor[g] = t;
        self.tets[u].gluing[g] = inverse(p);
    }

    /// Whether collapsing edge class `e` to a point is a homeomorphism.
    ///
    /// The endpoints must be distinct; no tetrahedron may contain the edge
    /// twice; identifying the two other edges of each triangle around `e`
    /// must never join edges that are already equivalent; and identifying
    /// the two faces of each squashed tetrahedron must never join faces that
    /// are already equivalent.
    pub fn edge_collapsible(&self, sk: &Skeleton, e: usize) -> bool {
        let emb = &sk.edge_embeddings[e];
        let (t0, i0) = emb[0];
        let (a, b) = EDGES[i0];
        if sk.vertex[t0][a as usize] == sk.vertex[t0][b as usize] {
            return false;
        }
        let mut per_tet = BTreeMap::new();
        for &(t, _) in emb {
            *per_tet.entry(t).or_insert(0) += 1;
        }
        if per_tet.values().any(|&c| c > 1) {
            return false;
        }
        let mut euf = UnionFind::new(sk.n_edges);
        let mut seen_faces = BTreeMap::new();
        for &(t, i) in emb {
            let (a, b) = EDGES[i];
            for c in (0..4u8).filter(|&c| c != a && c != b) {
                let key = self.face_key(t, c);
                if seen_faces.insert(key, ()).is_some() {
                    continue;
                }
                let d = 6 - a - b - c;
                let (x, y) = (sk.edge[t][edge_index(a, d)], sk.edge[t][edge_index(b, d)]);
                if x == e || y == e || !euf.union(x, y) {
                    return false;
                }
            }
        }
        let mut faces = BTreeMap::new();
        let face_id = |k: (usize, usize), faces: &mut BTreeMap<(usize, usize), usize>| {
            let n = faces.len();
            *faces.entry(k).or_insert(n)
        };
        let mut pairs = Vec::new();
        for &(t, i) in emb {
            let (a, b) = EDGES[i];
            let fa = face_id(self.face_key(t, a), &mut faces);
            let fb = face_id(self.face_key(t, b), &mut faces);
            pairs.push((fa, fb));
        }
        let mut fuf = UnionFind::new(faces.len());
        pairs.into_iter().all(|(x, y)| fuf.union(x, y))
    }

    pub(crate) fn face_key(&self, t: usize, f: u8) -> (usize, usize) {
        let u = self.tets[t].neighbor[f as usize];
        let g = self.tets[t].gluing[f as usize][f as usize] as usize;
        (t, f as usize).min((u, g))
    }

    /// Collapse edge class `e`; the caller checks [`Self::edge_collapsible`].
    pub fn collapse_edge(&mut self, sk: &Skeleton, e: usize) {
        let emb = sk.edge_embeddings[e].clone();
        let mut removed = vec![None; self.tets.len()];
        for &(t, i) in &emb {
            removed[t] = Some(EDGES[i]);
        }
        let mut done = vec![[false; 4]; self.tets.len()];
        let mut new_glue = Vec::new();
        for &(t, i) in &emb {
            let (a, b) = EDGES[i];
            for start in [a, b] {
                let (x, fx) = (self.tets[t].neighbor[start as usize], self.tets[t].gluing[start as usize]);
                let gx = fx[start as usize] as usize;
                if removed[x].is_some() || done[x][gx] {
                    continue;
                }
                // walk from the surviving face (x, gx) through squashed tets
                let mut mu = inverse(fx); // x-local -> current-local
                let (mut cur, mut face) = (t, start);
                loop {
                    let (p, q) = removed[cur].expect("in chain");
                    let other = if face == p { q } else { p };
                    mu = compose(transposition(p, q), mu);
                    let nb = self.tets[cur].neighbor[other as usize];
                    let rho = self.tets[cur].gluing[other as usize];
                    mu = compose(rho, mu);
                    let g = rho[other as usize];
                    if removed[nb].is_none() {
                        done[x][gx] = true;
                        done[nb][g as usize] = true;
                        new_glue.push((x, gx, nb, mu));
                        break;
                    }
                    cur = nb;
                    face = g;
                }
            }
        }
        for (x, gx, y, p) in new_glue {
            self.glue(x, gx, y, p);
        }
        let gone: Vec<usize> = emb.iter().map(|&(t, _)| t).collect();
        self.remove_tets(&gone);
    }
}

impl Triangulation {
    /// Remove two tetrahedra around a valence-two edge by flattening the
    /// pillow they form. Returns false, changing nothing, when the move
    /// would not preserve the manifold.
    pub fn two_zero_move(&mut self, sk: &Skeleton, e: usize) -> bool {
        let emb = &sk.edge_embeddings[e];
        if emb.len() != 2 || emb[0].0 == emb[1].0 {
            return false;
        }
        let (t1, i1) = emb[0];
        let (t2, i2) = emb[1];
        let (a1, b1) = EDGES[i1];
        let (c1, d1) = (EDGES[5 - i1].0, EDGES[5 - i1].1);
        let (a2, b2) = EDGES[i2];
        // both faces around the edge must join t1 to t2
        let tet1 = self.tets[t1];
        if tet1.neighbor[c1 as usize] != t2 || tet1.neighbor[d1 as usize] != t2 {
            return false;
        }
        let psi = tet1.gluing[d1 as usize];
        let sigma = tet1.gluing[c1 as usize];
        if psi[a1 as usize] != sigma[a1 as usize] || psi[b1 as usize] != sigma[b1 as usize] {
            return false;
        }
        if !((psi[a1 as usize], psi[b1 as usize]) == (a2, b2) || (psi[a1 as usize], psi[b1 as usize]) == (b2, a2)) {
            return false;
        }
        // the two edges opposite `e` get identified
        if sk.edge[t1][5 - i1] == sk.edge[t2][5 - i2] {
            return false;
        }
        let tet2 = self.tets[t2];
        let mut outer = Vec::new();
        for f in [a1, b1] {
            let g = psi[f as usize];
            let (n1, n2) = (tet1.neighbor[f as usize], tet2.neighbor[g as usize]);
            if n1 == t1 || n1 == t2 || n2 == t1 || n2 == t2 {
                return false;
            }
            let alpha = tet1.gluing[f as usize];
            let beta = tet2.gluing[g as usize];
            let fa = alpha[f as usize] as usize;
            outer.push((n1, fa, n2, compose(beta, compose(psi, inverse(alpha)))));
        }
        if outer[0].0 == outer[1].0 && outer[0].1 == outer[1].1 {
            return false;
        }
        for (n1, fa, n2, p) in outer {
            self.glue(n1, fa, n2, p);
        }
        self.remove_tets(&[t1, t2]);
        true
    }

    pub(crate) fn remove_tets(&mut self, gone: &[usize]) {
        let mut dead = vec![false; self.tets.len()];
        for &t in gone {
            dead[t] = true;
        }
        let mut index = vec![usize::MAX; self.tets.len()];
        let mut kept = Vec::new();
        for (t, tet) in self.tets.iter().enumerate() {
            if !dead[t] {
                index[t] = kept.len();
                kept.push(*tet);
            }
        }
        for tet in &mut kept {
            for f in 0..4 {
                tet.neighbor[f] = index[tet.neighbor[f]];
            }
        }
        self.tets = kept;
    }

    pub fn min_edge_valence(&self) -> usize {
        self.skeleton().edge_embeddings.iter().map(Vec::len).min().unwrap_or(0)
    }
}

/// Finite-vertex triangulation: tetrahedron `4c + j` sits at the corner of
/// crossing `c` between slots `j − 1` and `j`. Vertex 0 is the upper apex,
/// vertex 1 the lower apex, vertex 2 the cusp point of the edge in slot `j`
/// and vertex 3 that of the edge in slot `j − 1`.
pub fn bipyramids(d: &PlanarDiagram) -> Triangulation {
    let n = d.n_crossings();
    let blank = Tet { neighbor: [0; 4], gluing: [IDENTITY; 4] };
    let mut tri = Triangulation { tets: vec![blank; 4 * n] };
    let swap23 = transposition(2, 3);
    for c in 0..n {
        for j in 0..4u8 {
            // previous corner of the same face
            let other = d.opposite(Port { crossing: c, slot: j });
            let prev = 4 * other.crossing + ((other.slot + 1) % 4) as usize;
            tri.glue(4 * c + j as usize, 3, prev, swap23);
        }
        for s in [0u8, 2] {
            // upper apex faces meet across the under-strand
            tri.glue(4 * c + s as usize, 1, 4 * c + (s as usize + 1) % 4, swap23);
            // lower apex faces meet across the over-strand
            let o = s + 1;
            tri.glue(4 * c + o as usize, 0, 4 * c + (o as usize + 1) % 4, swap23);
        }
    }
    tri
}

/// The two-tetrahedron triangulation of the figure-eight knot complement.
pub fn figure_eight_census() -> Triangulation {
    Triangulation::from_text("2\n1 1 1 1  0132 1230 2310 2103\n0 0 0 0  0132 3201 3012 2103\n")
        .expect("fixed gluing table")
}

/// Ideal triangulation of the complement of a diagram in which every
/// component passes both over and under.
pub fn triangulate(d: &PlanarDiagram) -> Result<Triangulation> {
    if !d.is_planar_connected() {
        return Err(Error::Diagram("projection is not connected".into()));
    }
    if !d.every_component_alternates() {
        return Err(Error::Diagram("a component has no over- or under-crossing".into()));
    }
    let mut tri = bipyramids(d);
    tri.check_gluings()?;
    for _ in 0..2 {
        let sk = tri.skeleton();
        let finite = finite_vertices(&tri, &sk);
        let Some(&apex) = finite.first() else { break };
        let mut candidates: Vec<usize> = (0..sk.n_edges)
            .filter(|&e| {
                let (t, i) = sk.edge_embeddings[e][0];
                let (a, b) = EDGES[i];
                let (va, vb) = (sk.vertex[t][a as usize], sk.vertex[t][b as usize]);
                let other = if va == apex { vb } else { va };
                (va == apex) != (vb == apex) && !finite.contains(&other)
            })
            .collect();
        candidates.sort_by_key(|&e| (core::cmp::Reverse(sk.edge_embeddings[e].len()), e));
        let e = candidates
            .into_iter()
            .find(|&e| tri.edge_collapsible(&sk, e))
            .ok_or_else(|| Error::Triangulation("no collapsible edge at a finite vertex".into()))?;
        tri.collapse_edge(&sk, e);
        tri.check_gluings()?;
    }
    tri.simplify();
    tri.check_ideal()?;
    Ok(tri)
}

/// Vertex classes whose link is a sphere.
pub fn finite_vertices(tri: &Triangulation, sk: &Skeleton) -> Vec<usize> {
    tri.vertex_link_euler(sk)
        .iter()
        .enumerate()
        .filter(|(_, &x)| x == 2)
        .map(|(v, _)| v)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pd::fixtures;

    #[test]
    fn perms() {
        let p = [1, 2, 3, 0];
        assert_eq!(compose(p, inverse(p)), IDENTITY);
        assert!(is_odd(p));
        assert!(is_odd(transposition(0, 3)));
        assert!(!is_odd(compose(p, p)));
    }

    #[test]
    fn bipyramid_skeleton() {
        let d = fixtures::figure_eight();
        let t = bipyramids(&d);
        t.check_gluings().unwrap();
        let sk = t.skeleton();
        // two apexes plus one cusp
        assert_eq!(sk.n_vertices, 3);
        let eul = t.vertex_link_euler(&sk);
        let mut e = eul.clone();
        e.sort_unstable();
        assert_eq!(e, vec![0, 2, 2]);
        assert_eq!(sk.n_edges, 4 * 4 + 2);
    }

    #[test]
    fn ideal_after_collapse() {
        for d in [fixtures::figure_eight(), fixtures::whitehead(), fixtures::borromean()] {
            let t = triangulate(&d).unwrap();
            let sk = t.skeleton();
            assert_eq!(sk.n_vertices, d.components.len());
            assert!(t.len() < 4 * d.n_crossings());
        }
    }

    #[test]
    fn text_roundtrip() {
        let t = triangulate(&fixtures::figure_eight()).unwrap();
        let back = Triangulation::from_text(&t.to_text()).unwrap();
        assert_eq!(back, t);
        assert!(Triangulation::from_text("1\n0 0 0 0 0123 0123 0123 0123").is_err());
    }
}
