//! Dowker–Thistlethwaite codes for links.
//!
//! Passages through crossings are labelled `1, 2, …, 2n` component by
//! component. Every crossing pairs an odd label with an even one; the code
//! lists, per component, the even partners of that component's odd labels.
//! In the standard convention an even label is negative when its passage
//! goes over; the alternative convention negates every even label.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::pd::{Crossing, PlanarDiagram};
use crate::planarity;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DtConvention {
    /// Negative even label: the even passage is an over-crossing.
    #[default]
    Standard,
    /// Negative even label: the even passage is an under-crossing.
    Paper,
}

impl FromStr for DtConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Self::Standard),
            "paper" => Ok(Self::Paper),
            _ => Err(Error::DtSyntax(format!("unknown convention {s}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DtCode {
    /// Signed even labels, grouped by the component of their odd partner.
    pub components: Vec<Vec<i64>>,
}

impl DtCode {
    pub fn n_crossings(&self) -> usize {
        self.components.iter().map(Vec::len).sum()
    }

    /// Even labels form `±{2, 4, …, 2n}`, each once.
    pub fn is_valid(&self) -> bool {
        let n = self.n_crossings();
        let mut seen = vec![false; n];
        for &e in self.components.iter().flatten() {
            let a = e.unsigned_abs() as usize;
            if a == 0 || a % 2 == 1 || a > 2 * n || seen[a / 2 - 1] {
                return false;
            }
            seen[a / 2 - 1] = true;
        }
        n > 0
    }

    /// Same code in the other sign convention.
    pub fn negated(&self) -> Self {
        Self { components: self.components.iter().map(|c| c.iter().map(|e| -e).collect()).collect() }
    }

    pub fn convert(&self, from: DtConvention, to: DtConvention) -> Self {
        if from == to { self.clone() } else { self.negated() }
    }
}

impl fmt::Display for DtCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("DT:[")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("(")?;
            for (j, e) in c.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str(")")?;
        }
        f.write_str("]")
    }
}

impl FromStr for DtCode {
    type Err = Error;

    /// Accepts `DT:[(4,6,2)]`, `[(4,6,2),(8,10)]`, `(4,6,2)` and the bare
    /// knot form `4 6 2`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::DtSyntax(s.into());
        let mut t = s.trim();
        if let Some(rest) = t.strip_prefix("DT:") {
            t = rest.trim();
        }
        if let Some(inner) = t.strip_prefix('[') {
            t = inner.strip_suffix(']').ok_or_else(bad)?.trim();
        }
        let groups: Vec<&str> = if t.starts_with('(') {
            let mut g = Vec::new();
            let mut rest = t;
            while !rest.is_empty() {
                let r = rest.strip_prefix('(').ok_or_else(bad)?;
                let end = r.find(')').ok_or_else(bad)?;
                g.push(&r[..end]);
                rest = r[end + 1..].trim_start();
                rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
            }
            g
        } else {
            vec![t]
        };
        let components = groups
            .into_iter()
            .map(|g| {
                g.split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|x| !x.is_empty())
                    .map(|x| x.parse::<i64>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let code = DtCode { components };
        if !code.is_valid() || code.components.iter().any(Vec::is_empty) {
            return Err(bad());
        }
        Ok(code)
    }
}

/// Left-face colour of every edge under a checkerboard colouring.
fn edge_colours(d: &PlanarDiagram) -> Result<Vec<bool>> {
    let faces = d.faces();
    let n = d.n_crossings();
    // face index of each corner (crossing, slot)
    let mut face_of = vec![[0usize; 4]; n];
    for (fi, f) in faces.iter().enumerate() {
        for p in f {
            face_of[p.crossing][p.slot as usize] = fi;
        }
    }
    // an edge arriving at slot j has the face of corner j on its left and
    // the face of corner j + 1 on its right
    let mut colour: Vec<Option<bool>> = vec![None; faces.len()];
    let mut stack = vec![0usize];
    colour[0] = Some(false);
    let mut adj = vec![Vec::new(); faces.len()];
    for c in 0..n {
        for j in 0..4 {
            let (a, b) = (face_of[c][j], face_of[c][(j + 1) % 4]);
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    while let Some(f) = stack.pop() {
        let cf = colour[f].expect("coloured");
        for &g in &adj[f] {
            match colour[g] {
                None => {
                    colour[g] = Some(!cf);
                    stack.push(g);
                }
                Some(x) if x == cf => return Err(Error::Diagram("diagram is not checkerboard colourable".into())),
                _ => {}
            }
        }
    }
    let mut out = vec![false; d.n_edges()];
    for e in 0..d.n_edges() {
        let h = d.head(e);
        out[e] = colour[face_of[h.crossing][h.slot as usize]].ok_or_else(|| Error::Diagram("disconnected".into()))?;
    }
    Ok(out)
}

/// Labelling of a diagram: `labels[e]` is the passage label at the head of
/// edge `e`, and `order` lists edges by label.
#[derive(Debug, Clone)]
pub struct Labelling {
    pub labels: Vec<usize>,
    pub component_ranges: Vec<(usize, usize)>,
}

/// Label passages in the given component order; each component starts at
/// its first listed edge, or the one after it when parity requires.
pub fn label_passages(d: &PlanarDiagram, order: &[usize]) -> Result<Labelling> {
    let colours = edge_colours(d)?;
    let mut labels = vec![0usize; d.n_edges()];
    let mut next = 1usize;
    let mut ranges = Vec::new();
    // odd labels go to edges whose left face has colour `odd_colour`
    let odd_colour = colours[d.components[order[0]][0]];
    for &ci in order {
        let comp = &d.components[ci];
        let want_odd = next % 2 == 1;
        let shift = usize::from((colours[comp[0]] == odd_colour) != want_odd);
        let start = next;
        for k in 0..comp.len() {
            labels[comp[(k + shift) % comp.len()]] = next;
            next += 1;
        }
        ranges.push((start, next - 1));
    }
    Ok(Labelling { labels, component_ranges: ranges })
}

/// DT code with components in the given order.
pub fn encode(d: &PlanarDiagram, order: &[usize], conv: DtConvention) -> Result<DtCode> {
    if order.len() != d.components.len() {
        return Err(Error::Diagram("component order has wrong length".into()));
    }
    let lab = label_passages(d, order)?;
    let n = d.n_crossings();
    let mut partner = vec![0i64; 2 * n + 1];
    for c in &d.crossings {
        let under = lab.labels[c.slots[0]];
        let over = lab.labels[c.slots[c.over_in as usize]];
        let (odd, even, even_over) = if under % 2 == 1 {
            (under, over, true)
        } else {
            (over, under, false)
        };
        if odd % 2 == 0 || even % 2 == 1 {
            return Err(Error::Diagram("passage parity mismatch".into()));
        }
        let sign = if even_over { -1 } else { 1 };
        partner[odd] = sign * even as i64;
    }
    let code = DtCode {
        components: lab
            .component_ranges
            .iter()
            .map(|&(a, b)| (a..=b).filter(|l| l % 2 == 1).map(|l| partner[l]).collect())
            .collect(),
    };
    Ok(match conv {
        DtConvention::Standard => code,
        DtConvention::Paper => code.negated(),
    })
}

/// Realize a DT code as a planar diagram. The mirror image is an equally
/// valid answer; which one comes back is unspecified.
pub fn decode(code: &DtCode, conv: DtConvention) -> Result<PlanarDiagram> {
    if !code.is_valid() {
        return Err(Error::DtSyntax(format!("{code}")));
    }
    let code = code.convert(conv, DtConvention::Standard);
    let n = code.n_crossings();
    let total = 2 * n;
    // component label ranges from the odd-label counts
    let mut ranges = Vec::new();
    let mut start = 1;
    for c in &code.components {
        // a component with k odd labels starting at an odd label spans 2k
        // labels; one starting at an even label also spans 2k
        ranges.push((start, start + 2 * c.len() - 1));
        start += 2 * c.len();
    }
    // crossing per label, and whether the label passes over
    let mut crossing_of = vec![0usize; total + 1];
    let mut over = vec![false; total + 1];
    let mut k = 0;
    for (ci, comp) in code.components.iter().enumerate() {
        let (a, _) = ranges[ci];
        let odds = (a..).filter(|l| l % 2 == 1).take(comp.len());
        for (odd, &e) in odds.zip(comp) {
            let even = e.unsigned_abs() as usize;
            crossing_of[odd] = k;
            crossing_of[even] = k;
            over[even] = e < 0;
            over[odd] = e > 0;
            k += 1;
        }
    }
    let succ = |l: usize| -> usize {
        let &(a, b) = ranges.iter().find(|&&(a, b)| a <= l && l <= b).expect("label in range");
        if l == b { a } else { l + 1 }
    };
    let pred = |l: usize| -> usize {
        let &(a, b) = ranges.iter().find(|&&(a, b)| a <= l && l <= b).expect("label in range");
        if l == a { b } else { l - 1 }
    };
    // edge id: label of its tail passage minus one
    let edge_in = |l: usize| pred(l) - 1;
    let edge_out = |l: usize| l - 1;
    // per crossing: passages p (odd) and q (even)
    let mut pass = vec![(0usize, 0usize); n];
    for l in (1..=total).filter(|l| l % 2 == 1) {
        let c = crossing_of[l];
        pass[c].0 = l;
    }
    for l in (1..=total).filter(|l| l % 2 == 0) {
        pass[crossing_of[l]].1 = l;
    }
    // graph: per crossing a hub and rim [in_p, in_q, out_p, out_q]; each
    // edge subdivided once
    let rim = |c: usize, r: usize| 5 * c + 1 + r;
    let mut gedges = Vec::new();
    for c in 0..n {
        for r in 0..4 {
            gedges.push((5 * c, rim(c, r)));
            gedges.push((rim(c, r), rim(c, (r + 1) % 4)));
        }
    }
    let end_of_label = |l: usize, incoming: bool| -> usize {
        let c = crossing_of[l];
        let is_p = pass[c].0 == l;
        rim(c, match (is_p, incoming) {
            (true, true) => 0,
            (false, true) => 1,
            (true, false) => 2,
            (false, false) => 3,
        })
    };
    let base = 5 * n;
    for l in 1..=total {
        let mid = base + (l - 1);
        let from = end_of_label(l, false);
        let to = end_of_label(succ(l), true);
        gedges.push((from, mid));
        gedges.push((mid, to));
    }
    let rot = planarity::embed(base + total, &gedges)
        .ok_or_else(|| Error::DtUnrealizable(format!("{code}")))?;
    let mut crossings = Vec::with_capacity(n);
    for c in 0..n {
        let r = &rot[5 * c];
        let pos = |v: usize| r.iter().position(|&x| x == v).expect("spoke");
        // true when the cyclic order is in_p, in_q, out_p, out_q
        let forward = (pos(rim(c, 1)) + 4 - pos(rim(c, 0))) % 4 == 1;
        let (p, q) = pass[c];
        let (in_p, out_p, in_q, out_q) = (edge_in(p), edge_out(p), edge_in(q), edge_out(q));
        let ccw = if forward { [in_p, in_q, out_p, out_q] } else { [in_p, out_q, out_p, in_q] };
        let p_under = !over[p];
        let cr = if p_under {
            Crossing { slots: ccw, over_in: if forward { 1 } else { 3 } }
        } else {
            let k = ccw.iter().position(|&e| e == in_q).expect("in_q");
            let s = [ccw[k], ccw[(k + 1) % 4], ccw[(k + 2) % 4], ccw[(k + 3) % 4]];
            Crossing { slots: s, over_in: if forward { 3 } else { 1 } }
        };
        crossings.push(cr);
    }
    // each component starts with the edge arriving at its first passage
    let components = ranges
        .iter()
        .map(|&(a, b)| core::iter::once(b - 1).chain(a - 1..b - 1).collect())
        .collect();
    let d = PlanarDiagram::new(crossings, components)?;
    if !d.is_planar_connected() {
        return Err(Error::DtUnrealizable(format!("{code}")));
    }
    Ok(d)
}

/// Readable rendering like `[(4,6,2)]` without the prefix.
pub fn body(code: &DtCode) -> String {
    let s = format!("{code}");
    s.trim_start_matches("DT:").into()
}
