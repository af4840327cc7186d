//! Trefoil-augmented link diagrams of orbits on the Lorenz template.
//!
//! The template is drawn with the branch line on the x-axis and the flow
//! leaving it upward. Points of the `x` half loop around the left hole and
//! points of the `y` half around the right hole; both families come back
//! from below through the merge region, where strands from the `x` ear pass
//! over strands from the `y` ear. The trefoil is a closed three-crossing
//! twist whose upper arc threads the left hole and then the right hole.

use alloc::vec;
use alloc::vec::Vec;

use crate::drawing::{to_diagram, Curve, Point};
use crate::dt::{encode, DtCode, DtConvention};
use crate::error::{Error, Result};
use crate::pd::PlanarDiagram;
use crate::template::{lorenz_inversions, OrbitPlacement};

/// How the trefoil sits relative to the template.
///
/// The trefoil is drawn as a two-track loop around the template with one
/// crossing on the far side of the ears and two crossings beside them; the
/// inner track pierces the left hole on one lap and the right hole on the
/// other, so the holes see different edges of the knot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrefoilEmbedding {
    /// `+1` or `−1`: handedness of the three trefoil crossings.
    pub twist: i32,
    /// `+1`: the trefoil threads the two holes in opposite senses, so the
    /// left-right symmetry of the template carries one ear to the other.
    /// `−1`: both ears see the trefoil pass under first.
    pub opposite: i32,
    /// `true`: the lone crossing lies past the ear bottoms, where orbits
    /// leave the branch line; `false`: past the ear tops.
    pub apex_below: bool,
}

impl Default for TrefoilEmbedding {
    fn default() -> Self {
        Self { twist: 1, opposite: 1, apex_below: true }
    }
}

#[derive(Debug, Clone)]
pub struct AugmentedLink {
    pub diagram: PlanarDiagram,
    /// Orbit components first, each listed as its cycle of branch points;
    /// the trefoil is the last component.
    pub orbits: Vec<Vec<usize>>,
    pub inversions: usize,
    pub total_symbols: usize,
}

impl AugmentedLink {
    pub fn n_components(&self) -> usize {
        self.diagram.components.len()
    }

    pub fn trefoil(&self) -> usize {
        self.orbits.len()
    }

    /// Orbits in order of their leftmost branch point, then the trefoil.
    pub fn dt_code(&self, conv: DtConvention) -> Result<DtCode> {
        let order: Vec<usize> = (0..self.n_components()).collect();
        encode(&self.diagram, &order, conv)
    }
}

const SPACING: i64 = 4;
const EAR_GAP: i64 = 10;
const EAR_DEPTH: i64 = 8;

/// Drawing coordinates use `y` pointing against the flow; `pt` flips them.
fn pt(x: i64, y: i64) -> Point {
    (x, -y)
}

struct Layout {
    n: usize,
    k: usize,
    merge_top: i64,
    top: i64,
}

impl Layout {
    fn column(&self, p: usize) -> i64 {
        SPACING * p as i64
    }

    fn depth(&self, p: usize) -> i64 {
        if p < self.k { p as i64 } else { (self.n - 1 - p) as i64 }
    }

    fn max_depth(&self) -> i64 {
        (0..self.n).map(|p| self.depth(p)).max().unwrap_or(0)
    }

    fn right_edge(&self) -> i64 {
        self.column(self.n.saturating_sub(1)) + EAR_GAP
    }

    /// Path through the ear of point `p`, from the branch line to the top
    /// of the merge region.
    fn ear(&self, p: usize, c: &mut Curve) {
        let x = self.column(p);
        let d = SPACING * self.depth(p);
        let side = if p < self.k { -EAR_GAP - d } else { self.right_edge() + d };
        for (a, b) in [(x, 0), (x, -EAR_DEPTH - d), (side, -EAR_DEPTH - d), (side, self.top + d), (x, self.top + d)] {
            let (u, v) = pt(a, b);
            c.push((u, v), 0);
        }
    }
}

/// Bubble-sort swaps taking the identity arrangement to `π`: each entry is
/// the left position of a swap, whose left strand comes from the `x` ear.
fn merge_swaps(pi: &[usize]) -> Vec<usize> {
    let mut arr: Vec<usize> = (0..pi.len()).collect();
    let mut swaps = Vec::new();
    loop {
        let mut changed = false;
        for p in 0..arr.len().saturating_sub(1) {
            if pi[arr[p]] > pi[arr[p + 1]] {
                arr.swap(p, p + 1);
                swaps.push(p);
                changed = true;
            }
        }
        if !changed {
            return swaps;
        }
    }
}

fn trefoil_curve(l: &Layout, emb: TrefoilEmbedding) -> Curve {
    let md = SPACING * l.max_depth();
    let (low, high) = (-EAR_DEPTH - md, l.top + md);
    let (il, ir, cx) = if l.n == 0 {
        (-5, 11, 3)
    } else {
        (-EAR_GAP / 2, l.right_edge() - EAR_GAP / 2, l.column(l.k) - 2)
    };
    let (ol, or) = (-EAR_GAP - md - 6, l.right_edge() + md + 6);
    // `dir` points from the lone crossing towards the side crossings
    let dir = if emb.apex_below { 1 } else { -1 };
    let (ib, ya) = if emb.apex_below { (low - 10, high + 10) } else { (high + 10, low - 10) };
    let it = ya + 10 * dir;
    let (ob, ot) = (ib - 8 * dir, it + 8 * dir);
    let ymid = 1;
    let tw = emb.twist;
    let s = 1;
    let sr = s * emb.opposite;
    // piercing heights: the half of the inner side below `ymid` meets ear
    // bottoms, the other half ear tops
    let left = |y: i64| if y < ymid { -s } else { s };
    let right = |y: i64| if y < ymid { sr } else { -sr };
    let mut c = Curve::new();
    let mut push = |x: i64, y: i64, h: i32| c.push(pt(x, y), h);
    // first lap: inner on the left, outer on top, inner on the right
    push(cx - 4, ib, 0);
    push(il, ib, left(ib));
    push(il, ymid, left(ya));
    push(il, ya - 4 * dir, tw);
    push(ol, ya + 4 * dir, 0);
    push(ol, ot, 0);
    push(or, ot, 0);
    push(or, ya + 4 * dir, -tw);
    push(ir, ya - 4 * dir, right(ya));
    push(ir, ymid, right(ib));
    push(ir, ib, 0);
    push(cx + 4, ib, tw);
    // second lap: outer on the left, inner on top, outer on the right
    push(cx - 4, ob, 0);
    push(ol, ob, 0);
    push(ol, ya - 4 * dir, -tw);
    push(il, ya + 4 * dir, 0);
    push(il, it, 0);
    push(ir, it, 0);
    push(ir, ya + 4 * dir, tw);
    push(or, ya - 4 * dir, 0);
    push(or, ob, 0);
    push(cx + 4, ob, -tw);
    c
}

/// Builds the diagram of the placed orbits together with the trefoil.
pub fn build_link(p: &OrbitPlacement, emb: TrefoilEmbedding) -> Result<AugmentedLink> {
    let n = p.len();
    let k = p.x_count();
    let swaps = merge_swaps(&p.successor);
    let inversions = swaps.len();
    debug_assert_eq!(inversions, lorenz_inversions(p));
    let merge_top = SPACING * (inversions as i64 + 1);
    let layout = Layout { n, k, merge_top, top: merge_top + SPACING };
    // merge path of each strand, keyed by the strand's entry column
    let mut paths: Vec<Vec<(i64, i64, i32)>> = (0..n)
        .map(|i| vec![(layout.column(i), layout.merge_top, if i < k { 1 } else { -1 })])
        .collect();
    let mut arr: Vec<usize> = (0..n).collect();
    for (s, &q) in swaps.iter().enumerate() {
        let y = layout.merge_top - SPACING * s as i64;
        let (a, b) = (arr[q], arr[q + 1]);
        let (xa, xb) = (layout.column(q), layout.column(q + 1));
        let ha = if a < k { 1 } else { -1 };
        let hb = if b < k { 1 } else { -1 };
        paths[a].push((xa, y, ha));
        paths[a].push((xb, y - SPACING, ha));
        paths[b].push((xb, y, hb));
        paths[b].push((xa, y - SPACING, hb));
        arr.swap(q, q + 1);
    }
    let orbits = p.cycles();
    let mut curves = Vec::with_capacity(orbits.len() + 1);
    for cyc in &orbits {
        let mut c = Curve::new();
        for &q in cyc {
            layout.ear(q, &mut c);
            for &(x, y, h) in &paths[q] {
                c.push(pt(x, y), h);
            }
        }
        curves.push(c);
    }
    curves.push(trefoil_curve(&layout, emb));
    let diagram = to_diagram(&curves)?;
    if diagram.n_crossings() != inversions + 2 * n + 3 {
        return Err(Error::Diagram(alloc::format!(
            "expected {} crossings, drew {}",
            inversions + 2 * n + 3,
            diagram.n_crossings()
        )));
    }
    if !diagram.is_planar_connected() || !diagram.nugatory_crossings().is_empty() {
        return Err(Error::Diagram("template diagram is not reduced".into()));
    }
    Ok(AugmentedLink { diagram, orbits, inversions, total_symbols: n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::template::ordered_shifts;
    use crate::words::{Letter, XyWord};

    fn link(words: &[&str]) -> AugmentedLink {
        let ws: Vec<XyWord> = words.iter().map(|w| w.parse().unwrap()).collect();
        build_link(&ordered_shifts(&ws).unwrap(), TrefoilEmbedding::default()).unwrap()
    }

    #[test]
    fn bare_trefoil() {
        let l = link(&[]);
        assert_eq!(l.diagram.n_crossings(), 3);
        assert!(l.diagram.every_component_alternates());
    }

    #[test]
    fn crossing_counts() {
        assert_eq!(link(&["xy"]).diagram.n_crossings(), 8);
        let l = link(&["xxy", "xyy", "xxyxy"]);
        assert_eq!(l.n_components(), 4);
        assert_eq!(l.diagram.n_crossings(), l.inversions + 2 * 11 + 3);
    }

    #[test]
    fn merge_crossings_are_positive_and_linking_tracks_letters() {
        let words = ["xxy", "xyy", "xxxyy", "xyxyy"];
        let l = link(&words);
        let t = l.trefoil();
        for (i, w) in words.iter().enumerate() {
            let w: XyWord = w.parse().unwrap();
            let lk = l.diagram.linking_number(i, t);
            let diff = w.count(Letter::X) as i64 - w.count(Letter::Y) as i64;
            assert_eq!(lk.abs(), diff.abs(), "{w}");
        }
        let comp = l.diagram.component_of_edge();
        for c in &l.diagram.crossings {
            if comp[c.slots[0]] != t && comp[c.slots[1]] != t {
                assert_eq!(c.sign(), 1);
            }
        }
    }
}
