//! Periodic orbits on the Lorenz template.
//!
//! Each rotation of each word is a point where the orbit meets the branch
//! line. Points sit along the branch line in lexicographic order of their
//! infinite periodic expansions, `x < y`; the semiflow carries each point to
//! the point of its one-symbol shift.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::words::{Letter, XyWord};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchPoint {
    /// Index of the source word.
    pub owner: usize,
    /// The point reads the word rotated left by `shift`.
    pub shift: usize,
    /// One period of the expansion read from this point.
    pub key: Vec<Letter>,
}

impl BranchPoint {
    pub fn first(&self) -> Letter {
        self.key[0]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPlacement {
    pub words: Vec<XyWord>,
    /// Sorted left to right along the branch line.
    pub points: Vec<BranchPoint>,
    /// `successor[i]` is the position of the shift of point `i`.
    pub successor: Vec<usize>,
}

/// Order of `u^∞` and `v^∞`; the first `|u| + |v|` symbols decide.
pub fn cmp_periodic(u: &[Letter], v: &[Letter]) -> Ordering {
    let n = u.len() + v.len();
    (0..n).map(|k| u[k % u.len()]).cmp((0..n).map(|k| v[k % v.len()]))
}

/// Places every rotation of every word on the branch line.
pub fn ordered_shifts(words: &[XyWord]) -> Result<OrbitPlacement> {
    let mut seen = alloc::collections::BTreeSet::new();
    for w in words {
        if !w.is_hyperbolic() {
            return Err(Error::BoundaryWord(format!("{w}")));
        }
        if !w.is_primitive() {
            return Err(Error::NotPrimitive(format!("{w}")));
        }
        if !seen.insert(w.clone()) {
            return Err(Error::DuplicateWord(format!("{w}")));
        }
    }
    let mut points: Vec<BranchPoint> = words
        .iter()
        .enumerate()
        .flat_map(|(owner, w)| (0..w.len()).map(move |shift| BranchPoint { owner, shift, key: w.rotation(shift) }))
        .collect();
    points.sort_by(|a, b| cmp_periodic(&a.key, &b.key));
    let mut index = alloc::collections::BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        index.insert((p.owner, p.shift), i);
    }
    let successor = points
        .iter()
        .map(|p| index[&(p.owner, (p.shift + 1) % words[p.owner].len())])
        .collect();
    Ok(OrbitPlacement { words: words.to_vec(), points, successor })
}

impl OrbitPlacement {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of points in the `x` half of the branch line.
    pub fn x_count(&self) -> usize {
        self.points.iter().take_while(|p| p.first() == Letter::X).count()
    }

    /// Orbits as cycles of positions, ordered by leftmost point; each cycle
    /// starts at its leftmost point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut done = alloc::vec![false; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if done[s] {
                continue;
            }
            let mut c = Vec::new();
            let mut p = s;
            while !done[p] {
                done[p] = true;
                c.push(p);
                p = self.successor[p];
            }
            out.push(c);
        }
        out
    }
}

/// Pairs `i < j` with `π(i) > π(j)`: orbit crossings in the branch region.
pub fn lorenz_inversions(p: &OrbitPlacement) -> usize {
    let pi = &p.successor;
    // x and y blocks are each order preserving, so only mixed pairs count
    let k = p.x_count();
    let mut ys: Vec<usize> = pi[k..].to_vec();
    ys.sort_unstable();
    pi[..k].iter().map(|&a| ys.partition_point(|&b| b < a)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn w(s: &str) -> XyWord {
        s.parse().unwrap()
    }

    fn brute_inversions(pi: &[usize]) -> usize {
        let mut c = 0;
        for i in 0..pi.len() {
            for j in i + 1..pi.len() {
                if pi[i] > pi[j] {
                    c += 1;
                }
            }
        }
        c
    }

    #[test]
    fn single_words() {
        let p = ordered_shifts(&[w("xy")]).unwrap();
        assert_eq!(p.successor, vec![1, 0]);
        assert_eq!(lorenz_inversions(&p), 1);
        let p = ordered_shifts(&[w("xxy")]).unwrap();
        let keys: Vec<_> = p.points.iter().map(|b| b.shift).collect();
        // xxy < xyx < yxx
        assert_eq!(keys, vec![0, 1, 2]);
        assert_eq!(p.successor, vec![1, 2, 0]);
        assert_eq!(lorenz_inversions(&p), 2);
    }

    #[test]
    fn rejects_bad_words() {
        assert!(matches!(ordered_shifts(&[w("xxx")]), Err(Error::BoundaryWord(_))));
        assert!(matches!(ordered_shifts(&[w("xyxy")]), Err(Error::NotPrimitive(_))));
        assert!(matches!(ordered_shifts(&[w("xy"), w("yx")]), Err(Error::DuplicateWord(_))));
    }

    #[test]
    fn blocks_preserve_order() {
        let p = ordered_shifts(&[w("xxy"), w("xyy"), w("xxyxy"), w("xyxyy")]).unwrap();
        let k = p.x_count();
        assert!(p.successor[..k].windows(2).all(|s| s[0] < s[1]));
        assert!(p.successor[k..].windows(2).all(|s| s[0] < s[1]));
        assert_eq!(lorenz_inversions(&p), brute_inversions(&p.successor));
        assert_eq!(p.cycles().len(), 4);
    }
}
