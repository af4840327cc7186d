//! Oriented planar link diagrams.
//!
//! Each crossing lists its four incident edges counter-clockwise, starting
//! with the incoming under-strand; slot 2 is the outgoing under-strand and
//! the over-strand occupies slots 1 and 3.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub slots: [usize; 4],
    /// Slot (1 or 3) where the over-strand enters.
    pub over_in: u8,
}

impl Crossing {
    /// `+1` for a right-handed crossing.
    pub fn sign(&self) -> i8 {
        if self.over_in == 3 { 1 } else { -1 }
    }

    pub fn over_out(&self) -> u8 {
        4 - self.over_in
    }
}

/// Position of an edge end: crossing index and slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Port {
    pub crossing: usize,
    pub slot: u8,
}

/// A corner of a face: the face boundary arrives at `crossing` through
/// `slot` and leaves through `slot − 1`.
pub type Corner = Port;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarDiagram {
    pub crossings: Vec<Crossing>,
    /// Edges of each component in traversal order.
    pub components: Vec<Vec<usize>>,
    /// `ends[e] = (tail, head)`.
    ends: Vec<(Port, Port)>,
}

impl PlanarDiagram {
    /// Validates that every edge occurs exactly once as an outgoing and
    /// once as an incoming slot, and that components follow the strands.
    pub fn new(crossings: Vec<Crossing>, components: Vec<Vec<usize>>) -> Result<Self> {
        let n_edges = 2 * crossings.len();
        let mut tail = vec![None; n_edges];
        let mut head = vec![None; n_edges];
        for (ci, c) in crossings.iter().enumerate() {
            if c.over_in != 1 && c.over_in != 3 {
                return Err(Error::Diagram(format!("crossing {ci}: over_in must be 1 or 3")));
            }
            for (slot, &e) in c.slots.iter().enumerate() {
                if e >= n_edges {
                    return Err(Error::Diagram(format!("edge {e} out of range")));
                }
                let incoming = slot == 0 || slot == c.over_in as usize;
                let target = if incoming { &mut head } else { &mut tail };
                if target[e].is_some() {
                    return Err(Error::Diagram(format!("edge {e} used twice in one direction")));
                }
                target[e] = Some(Port { crossing: ci, slot: slot as u8 });
            }
        }
        let mut ends = Vec::with_capacity(n_edges);
        for e in 0..n_edges {
            match (tail[e], head[e]) {
                (Some(t), Some(h)) => ends.push((t, h)),
                _ => return Err(Error::Diagram(format!("edge {e} is not a closed strand"))),
            }
        }
        let d = Self { crossings, components, ends };
        let mut seen = vec![false; n_edges];
        for comp in &d.components {
            if comp.is_empty() {
                return Err(Error::Diagram("empty component".into()));
            }
            for (i, &e) in comp.iter().enumerate() {
                if e >= n_edges || seen[e] {
                    return Err(Error::Diagram(format!("edge {e} repeated in components")));
                }
                seen[e] = true;
                let next = comp[(i + 1) % comp.len()];
                if d.next_edge(e) != next {
                    return Err(Error::Diagram(format!("edge {next} does not follow {e}")));
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Diagram("components do not cover all edges".into()));
        }
        Ok(d)
    }

    /// Builds components by following strands; edges are numbered so that
    /// each component is a consecutive run.
    pub fn from_crossings(crossings: Vec<Crossing>) -> Result<Self> {
        let n_edges = 2 * crossings.len();
        let mut next = vec![usize::MAX; n_edges];
        for c in &crossings {
            next[c.slots[0]] = c.slots[2];
            next[c.slots[c.over_in as usize]] = c.slots[c.over_out() as usize];
        }
        let mut seen = vec![false; n_edges];
        let mut comps = Vec::new();
        for s in 0..n_edges {
            if seen[s] {
                continue;
            }
            let mut comp = Vec::new();
            let mut e = s;
            while !seen[e] {
                seen[e] = true;
                comp.push(e);
                e = *next.get(e).ok_or_else(|| Error::Diagram("edge out of range".into()))?;
                if e == usize::MAX {
                    return Err(Error::Diagram("dangling strand".into()));
                }
            }
            comps.push(comp);
        }
        Self::new(crossings, comps)
    }

    pub fn n_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn n_edges(&self) -> usize {
        self.ends.len()
    }

    pub fn tail(&self, e: usize) -> Port {
        self.ends[e].0
    }

    pub fn head(&self, e: usize) -> Port {
        self.ends[e].1
    }

    pub fn edge_at(&self, p: Port) -> usize {
        self.crossings[p.crossing].slots[p.slot as usize]
    }

    /// The other end of the edge occupying `p`.
    pub fn opposite(&self, p: Port) -> Port {
        let (t, h) = self.ends[self.edge_at(p)];
        if t == p { h } else { t }
    }

    pub fn next_edge(&self, e: usize) -> usize {
        let h = self.head(e);
        let c = &self.crossings[h.crossing];
        let out = if h.slot == 0 { 2 } else { c.over_out() };
        c.slots[out as usize]
    }

    pub fn component_of_edge(&self) -> Vec<usize> {
        let mut out = vec![0; self.n_edges()];
        for (i, comp) in self.components.iter().enumerate() {
            for &e in comp {
                out[e] = i;
            }
        }
        out
    }

    pub fn is_over(&self, p: Port) -> bool {
        p.slot % 2 == 1
    }

    /// Faces as cyclic lists of corners, counter-clockwise.
    pub fn faces(&self) -> Vec<Vec<Corner>> {
        let n = self.n_crossings();
        let mut seen = vec![[false; 4]; n];
        let mut faces = Vec::new();
        for c in 0..n {
            for s in 0..4u8 {
                if seen[c][s as usize] {
                    continue;
                }
                let mut face = Vec::new();
                let mut p = Port { crossing: c, slot: s };
                while !seen[p.crossing][p.slot as usize] {
                    seen[p.crossing][p.slot as usize] = true;
                    face.push(p);
                    let leave = Port { crossing: p.crossing, slot: (p.slot + 3) % 4 };
                    p = self.opposite(leave);
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Connected projection with Euler characteristic 2.
    pub fn is_planar_connected(&self) -> bool {
        let n = self.n_crossings();
        if n == 0 {
            return false;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let t = p[y];
                p[y] = r;
                y = t;
            }
            r
        }
        for &(t, h) in &self.ends {
            let (a, b) = (find(&mut parent, t.crossing), find(&mut parent, h.crossing));
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        let connected = (0..n).all(|i| find(&mut parent, i) == root);
        connected && n + self.faces().len() == self.n_edges() + 2
    }

    /// Crossings whose removal disconnects the projection (a face meets the
    /// crossing in two corners).
    pub fn nugatory_crossings(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for face in self.faces() {
            let mut cs: Vec<usize> = face.iter().map(|p| p.crossing).collect();
            cs.sort_unstable();
            for w in cs.windows(2) {
                if w[0] == w[1] {
                    out.push(w[0]);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Each component passes both over and under some crossing.
    pub fn every_component_alternates(&self) -> bool {
        let comp = self.component_of_edge();
        let mut over = vec![false; self.components.len()];
        let mut under = vec![false; self.components.len()];
        for c in &self.crossings {
            over[comp[c.slots[c.over_in as usize]]] = true;
            under[comp[c.slots[0]]] = true;
        }
        over.iter().zip(&under).all(|(&o, &u)| o && u)
    }

    /// Same link with every crossing switched.
    pub fn mirror(&self) -> Self {
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                // rotate so the old over-strand becomes the under-strand
                let s = c.slots;
                if c.over_in == 3 {
                    Crossing { slots: [s[3], s[0], s[1], s[2]], over_in: 1 }
                } else {
                    Crossing { slots: [s[1], s[2], s[3], s[0]], over_in: 3 }
                }
            })
            .collect();
        Self::new(crossings, self.components.clone()).expect("mirror of a valid diagram")
    }

    /// Total linking number between components `i` and `j`.
    pub fn linking_number(&self, i: usize, j: usize) -> i64 {
        let comp = self.component_of_edge();
        let mut sum = 0i64;
        for c in &self.crossings {
            let (a, b) = (comp[c.slots[0]], comp[c.slots[1]]);
            if (a == i && b == j) || (a == j && b == i) {
                sum += c.sign() as i64;
            }
        }
        sum / 2
    }
}

/// Standard diagrams used in tests and as fixtures.
pub mod fixtures {
    use super::*;

    /// KnotTheory-style `X[i,j,k,l]` with `i` incoming under; the over
    /// direction is inferred from consecutive edge labels along components
    /// numbered `1..=2n` with the given component lengths.
    pub fn from_pd_code(code: &[[usize; 4]], comp_lengths: &[usize]) -> Result<PlanarDiagram> {
        let mut starts = Vec::new();
        let mut acc = 1;
        for &l in comp_lengths {
            starts.push((acc, acc + l - 1));
            acc += l;
        }
        let succ = |e: usize| {
            starts
                .iter()
                .find(|&&(a, b)| a <= e && e <= b)
                .map(|&(a, b)| if e == b { a } else { e + 1 })
                .unwrap_or(0)
        };
        let crossings = code
            .iter()
            .map(|x| {
                let over_in = if succ(x[3]) == x[1] && !(succ(x[1]) == x[3] && x[1] > x[3]) {
                    3
                } else {
                    1
                };
                Crossing { slots: [x[0] - 1, x[1] - 1, x[2] - 1, x[3] - 1], over_in }
            })
            .collect();
        PlanarDiagram::from_crossings(crossings)
    }

    pub fn trefoil() -> PlanarDiagram {
        from_pd_code(&[[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]], &[6]).unwrap()
    }

    pub fn figure_eight() -> PlanarDiagram {
        from_pd_code(&[[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]], &[8]).unwrap()
    }

    /// Closure of a braid on `strands` strands; generator `±(i+1)` crosses
    /// positions `i` and `i+1`, positive meaning right-handed.
    pub fn from_braid(strands: usize, word: &[i32]) -> Result<PlanarDiagram> {
        let mut current: Vec<usize> = (0..strands).collect();
        let mut next_id = strands;
        let mut raw = Vec::new();
        for &g in word {
            let i = g.unsigned_abs() as usize - 1;
            if g == 0 || i + 1 >= strands {
                return Err(Error::Diagram(format!("bad braid generator {g}")));
            }
            let (sw, se) = (current[i], current[i + 1]);
            let (nw, ne) = (next_id, next_id + 1);
            next_id += 2;
            raw.push(if g > 0 {
                Crossing { slots: [se, ne, nw, sw], over_in: 3 }
            } else {
                Crossing { slots: [sw, se, ne, nw], over_in: 1 }
            });
            current[i] = nw;
            current[i + 1] = ne;
        }
        // close up: the last segment at each position is the first one
        let mut alias: Vec<usize> = (0..next_id).collect();
        for (p, &last) in current.iter().enumerate() {
            alias[last] = p;
        }
        let mut renumber = vec![usize::MAX; next_id];
        let mut count = 0;
        for c in &raw {
            for &e in &c.slots {
                let a = alias[e];
                if renumber[a] == usize::MAX {
                    renumber[a] = count;
                    count += 1;
                }
            }
        }
        let crossings = raw
            .iter()
            .map(|c| Crossing { slots: c.slots.map(|e| renumber[alias[e]]), over_in: c.over_in })
            .collect();
        PlanarDiagram::from_crossings(crossings)
    }

    pub fn whitehead() -> PlanarDiagram {
        from_braid(3, &[1, -2, 1, -2, -2]).unwrap()
    }

    pub fn borromean() -> PlanarDiagram {
        from_braid(3, &[1, -2, 1, -2, 1, -2]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;

    #[test]
    fn fixture_shapes() {
        let braid_eight = from_braid(3, &[1, -2, 1, -2]).unwrap();
        for (d, n) in [(trefoil(), 3), (figure_eight(), 4), (whitehead(), 5), (braid_eight, 4), (borromean(), 6)] {
            assert_eq!(d.n_crossings(), n);
            assert!(d.is_planar_connected());
            assert!(d.nugatory_crossings().is_empty());
            assert_eq!(d.faces().len(), n + 2);
        }
        assert_eq!(whitehead().components.len(), 2);
        assert_eq!(borromean().components.len(), 3);
        assert_eq!(whitehead().linking_number(0, 1), 0);
        let s: i32 = trefoil().crossings.iter().map(|c| c.sign() as i32).sum();
        assert_eq!(s.abs(), 3);
        let s: i32 = figure_eight().crossings.iter().map(|c| c.sign() as i32).sum();
        assert_eq!(s, 0);
    }

    #[test]
    fn mirror_flips_signs() {
        let d = trefoil();
        let m = d.mirror();
        for (a, b) in d.crossings.iter().zip(&m.crossings) {
            assert_eq!(a.sign(), -b.sign());
        }
        assert!(m.is_planar_connected());
    }
}
