//! Link diagrams drawn as closed integer polylines.
//!
//! Every segment carries a height; where two segments cross, the higher one
//! passes over. Crossings must be transverse and interior to both segments.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::pd::{Crossing, PlanarDiagram};

pub type Point = (i64, i64);

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Curve {
    /// Vertices of a closed polyline; the traversal starts at `points[0]`.
    pub points: Vec<Point>,
    /// Height of the segment leaving each vertex.
    pub heights: Vec<i32>,
}

impl Curve {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a vertex; the segment leaving it gets height `h`.
    pub fn push(&mut self, p: Point, h: i32) {
        if self.points.last() == Some(&p) {
            return;
        }
        self.points.push(p);
        self.heights.push(h);
    }

    /// Drops vertices in the middle of straight runs of equal height.
    pub fn simplified(&self) -> Self {
        let n = self.points.len();
        let mut out = Self::new();
        for i in 0..n {
            let a = self.points[(i + n - 1) % n];
            let b = self.points[i];
            let c = self.points[(i + 1) % n];
            let straight = cross(sub(b, a), sub(c, b)) == 0 && dot(sub(b, a), sub(c, b)) > 0;
            if i == 0 || !straight || self.heights[(i + n - 1) % n] != self.heights[i] {
                out.points.push(b);
                out.heights.push(self.heights[i]);
            }
        }
        out
    }
}

fn sub(a: Point, b: Point) -> (i128, i128) {
    (a.0 as i128 - b.0 as i128, a.1 as i128 - b.1 as i128)
}

fn cross(a: (i128, i128), b: (i128, i128)) -> i128 {
    a.0 * b.1 - a.1 * b.0
}

fn dot(a: (i128, i128), b: (i128, i128)) -> i128 {
    a.0 * b.0 + a.1 * b.1
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    curve: usize,
    index: usize,
    a: Point,
    b: Point,
    height: i32,
}

/// Position along a segment as the fraction `num / den`, `den > 0`.
#[derive(Debug, Clone, Copy)]
struct Param {
    num: i128,
    den: i128,
}

impl Param {
    fn cmp(&self, o: &Param) -> core::cmp::Ordering {
        (self.num * o.den).cmp(&(o.num * self.den))
    }
}

#[derive(Debug, Clone, Copy)]
struct Hit {
    seg: [usize; 2],
    at: [Param; 2],
}

fn intersect(s: &Segment, t: &Segment, adjacent: bool) -> Result<Option<Hit>> {
    let r = sub(s.b, s.a);
    let q = sub(t.b, t.a);
    let w = sub(t.a, s.a);
    let rxq = cross(r, q);
    let degenerate = || Error::Diagram(format!("segments {:?}-{:?} and {:?}-{:?} touch", s.a, s.b, t.a, t.b));
    if rxq == 0 {
        if cross(w, r) != 0 {
            return Ok(None);
        }
        // collinear: overlapping beyond a shared endpoint is degenerate
        let rr = dot(r, r);
        let t0 = dot(w, r);
        let t1 = dot(sub(t.b, s.a), r);
        let (lo, hi) = if t0 < t1 { (t0, t1) } else { (t1, t0) };
        if hi < 0 || lo > rr || (adjacent && (hi == 0 || lo == rr)) {
            return Ok(None);
        }
        return Err(degenerate());
    }
    let (mut tn, mut un, mut den) = (cross(w, q), cross(w, r), rxq);
    if den < 0 {
        tn = -tn;
        un = -un;
        den = -den;
    }
    if tn < 0 || tn > den || un < 0 || un > den {
        return Ok(None);
    }
    if tn == 0 || tn == den || un == 0 || un == den {
        if adjacent {
            return Ok(None);
        }
        return Err(degenerate());
    }
    Ok(Some(Hit { seg: [0, 0], at: [Param { num: tn, den }, Param { num: un, den }] }))
}

/// Candidate pairs from a uniform grid of cell size `cell`.
fn candidate_pairs(segs: &[Segment], cell: i64) -> Vec<(usize, usize)> {
    let mut reg: Vec<(i64, i64, usize)> = Vec::new();
    for (i, s) in segs.iter().enumerate() {
        let (x0, x1) = (s.a.0.min(s.b.0).div_euclid(cell), s.a.0.max(s.b.0).div_euclid(cell));
        let (y0, y1) = (s.a.1.min(s.b.1).div_euclid(cell), s.a.1.max(s.b.1).div_euclid(cell));
        for cx in x0..=x1 {
            for cy in y0..=y1 {
                reg.push((cx, cy, i));
            }
        }
    }
    reg.sort_unstable();
    let mut pairs = Vec::new();
    let mut start = 0;
    while start < reg.len() {
        let mut end = start;
        while end < reg.len() && reg[end].0 == reg[start].0 && reg[end].1 == reg[start].1 {
            end += 1;
        }
        for i in start..end {
            for j in i + 1..end {
                pairs.push((reg[i].2, reg[j].2));
            }
        }
        start = end;
    }
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}

/// Converts closed polylines into a planar diagram. Component `k` is curve
/// `k`, and its edge list starts with the edge through `points[0]`.
pub fn to_diagram(curves: &[Curve]) -> Result<PlanarDiagram> {
    let mut segs = Vec::new();
    for (ci, c) in curves.iter().enumerate() {
        let n = c.points.len();
        if n < 3 || c.heights.len() != n {
            return Err(Error::Diagram(format!("curve {ci} is malformed")));
        }
        for k in 0..n {
            segs.push(Segment { curve: ci, index: k, a: c.points[k], b: c.points[(k + 1) % n], height: c.heights[k] });
        }
    }
    let mut hits = Vec::new();
    for (i, j) in candidate_pairs(&segs, 16) {
        let (s, t) = (&segs[i], &segs[j]);
        let len = curves[s.curve].points.len();
        let adjacent = s.curve == t.curve && ((s.index + 1) % len == t.index || (t.index + 1) % len == s.index);
        if let Some(mut h) = intersect(s, t, adjacent)? {
            if s.height == t.height {
                return Err(Error::Diagram(format!("crossing at equal height near {:?}", s.a)));
            }
            h.seg = [i, j];
            hits.push(h);
        }
    }
    // events along each curve: (segment, param, hit, side)
    let mut events: Vec<Vec<(usize, Param, usize, usize)>> = alloc::vec![Vec::new(); curves.len()];
    for (hi, h) in hits.iter().enumerate() {
        for side in 0..2 {
            let s = &segs[h.seg[side]];
            events[s.curve].push((s.index, h.at[side], hi, side));
        }
    }
    let mut base = Vec::with_capacity(curves.len());
    let mut total = 0;
    // edge_at_event[hit][side] = id of the edge arriving at that event
    let mut arriving = alloc::vec![[0usize; 2]; hits.len()];
    let mut leaving = alloc::vec![[0usize; 2]; hits.len()];
    for (ci, ev) in events.iter_mut().enumerate() {
        if ev.is_empty() {
            return Err(Error::Diagram(format!("curve {ci} has no crossings")));
        }
        ev.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        for w in ev.windows(2) {
            if w[0].0 == w[1].0 && w[0].1.cmp(&w[1].1).is_eq() {
                return Err(Error::Diagram(format!("triple point on curve {ci}")));
            }
        }
        base.push(total);
        let k = ev.len();
        for (j, &(_, _, hi, side)) in ev.iter().enumerate() {
            arriving[hi][side] = total + j;
            leaving[hi][side] = total + (j + 1) % k;
        }
        total += k;
    }
    let mut crossings = Vec::with_capacity(hits.len());
    for (hi, h) in hits.iter().enumerate() {
        let (o, u) = if segs[h.seg[0]].height > segs[h.seg[1]].height { (0, 1) } else { (1, 0) };
        let (so, su) = (&segs[h.seg[o]], &segs[h.seg[u]]);
        let da = sub(so.b, so.a);
        let db = sub(su.b, su.a);
        let c = if cross(db, da) > 0 {
            Crossing { slots: [arriving[hi][u], arriving[hi][o], leaving[hi][u], leaving[hi][o]], over_in: 1 }
        } else {
            Crossing { slots: [arriving[hi][u], leaving[hi][o], leaving[hi][u], arriving[hi][o]], over_in: 3 }
        };
        crossings.push(c);
    }
    let components = events
        .iter()
        .enumerate()
        .map(|(ci, ev)| (base[ci]..base[ci] + ev.len()).collect())
        .collect();
    PlanarDiagram::new(crossings, components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn rect(x0: i64, y0: i64, x1: i64, y1: i64, h: i32) -> Curve {
        let mut c = Curve::new();
        for p in [(x0, y0), (x1, y0), (x1, y1), (x0, y1)] {
            c.push(p, h);
        }
        c
    }

    #[test]
    fn hopf_link() {
        // b crosses the right and top sides of a
        let b = rect(5, 5, 15, 15, 0);
        assert!(to_diagram(&[rect(0, 0, 10, 10, 0), b.clone()]).is_err());
        let mut a = rect(0, 0, 10, 10, 0);
        a.heights = vec![0, 1, -1, 0];
        let d = to_diagram(&[a, b]).unwrap();
        assert_eq!(d.n_crossings(), 2);
        assert!(d.is_planar_connected());
        assert_eq!(d.linking_number(0, 1).abs(), 1);
    }

    #[test]
    fn touching_is_rejected() {
        let a = rect(0, 0, 10, 10, 0);
        let b = rect(10, 5, 20, 15, 1);
        assert!(to_diagram(&[a, b]).is_err());
    }
}
