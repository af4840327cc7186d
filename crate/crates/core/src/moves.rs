//! Pachner moves and simplification of ideal triangulations.
//!
//! Moves replace a small cluster of tetrahedra by another triangulation of
//! the same ball. Both sides are described by labelling the cluster's
//! vertices; faces with equal label sets are identified.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::triangulation::{compose, inverse, is_odd, Perm, Skeleton, Tet, Triangulation, EDGES, IDENTITY};

type Labels = [usize; 4];

fn face_labels(l: &Labels, f: usize) -> [usize; 3] {
    let mut out = [0; 3];
    let mut k = 0;
    for (v, &x) in l.iter().enumerate() {
        if v != f {
            out[k] = x;
            k += 1;
        }
    }
    out.sort_unstable();
    out
}

/// Map from the vertices of `from` to those of `to` carrying face `f` of
/// `from` onto face `g` of `to` label by label.
fn label_map(from: &Labels, f: usize, to: &Labels, g: usize) -> Perm {
    let mut p = IDENTITY;
    for v in 0..4 {
        p[v] = if v == f { g as u8 } else { to.iter().position(|&x| x == from[v]).expect("shared label") as u8 };
    }
    p
}

/// `Ok` names a face of a new tetrahedron, `Err` a face of an old one.
type Partner = core::result::Result<(usize, usize), (usize, usize)>;

/// For each face of each new tetrahedron, the matching new face, or else
/// the unique old face with the same labels.
fn partners(old: &[(usize, Labels)], new: &[Labels]) -> Option<Vec<[Partner; 4]>> {
    let mut out = vec![[Ok((0, 0)); 4]; new.len()];
    for n in 0..new.len() {
        for f in 0..4 {
            let key = face_labels(&new[n], f);
            let inner: Vec<(usize, usize)> = (0..new.len())
                .flat_map(|m| (0..4).map(move |g| (m, g)))
                .filter(|&(m, g)| (m, g) != (n, f) && face_labels(&new[m], g) == key)
                .collect();
            let outer: Vec<(usize, usize)> = old
                .iter()
                .enumerate()
                .flat_map(|(o, (_, l))| (0..4).map(move |g| (o, g, face_labels(l, g))))
                .filter(|x| x.2 == key)
                .map(|(o, g, _)| (o, g))
                .collect();
            out[n][f] = match (inner.as_slice(), outer.as_slice()) {
                ([x], []) => Ok(*x),
                ([], [x]) => Err(*x),
                _ => return None,
            };
        }
    }
    Some(out)
}

/// Whether a 3-2 move around an edge with embeddings `emb` leaves every
/// edge of valence at least three. Each edge from an endpoint of the
/// removed edge to the far triangle loses one embedding.
fn keeps_valence_three(sk: &Skeleton, emb: &[(usize, usize)]) -> bool {
    let mut loss: Vec<(usize, usize)> = Vec::new();
    for &(t, i) in emb {
        for j in (0..6).filter(|&j| j != i && j != 5 - i) {
            let c = sk.edge[t][j];
            match loss.iter_mut().find(|x| x.0 == c) {
                Some(x) => x.1 += 1,
                None => loss.push((c, 1)),
            }
        }
    }
    // every such edge appears in two of the three tetrahedra
    loss.iter().all(|&(c, k)| sk.edge_embeddings[c].len() >= 3 + k / 2)
}

impl Triangulation {
    /// Appends tetrahedra `new` in place of `old`, gluing every new face to
    /// the matching new or old face. The old tetrahedra are left detached
    /// for the caller to remove. Returns the indices of the new tetrahedra,
    /// or `None`, changing nothing, when some face has no unique match.
    fn replace(&mut self, old: &[(usize, Labels)], new: &[Labels]) -> Option<Vec<usize>> {
        let mut new = new.to_vec();
        let mut partner = partners(old, &new)?;
        // orient each new tetrahedron like the old one it borders
        for n in 0..new.len() {
            let (f, (o, g)) = (0..4).find_map(|f| partner[n][f].err().map(|x| (f, x)))?;
            if is_odd(label_map(&new[n], f, &old[o].1, g)) {
                let a = if f == 0 { 1 } else { 0 };
                let b = if f == 3 { 2 } else { 3 };
                new[n].swap(a, b);
            }
        }
        partner = partners(old, &new)?;
        let base = self.tets.len();
        let old_index = |t: usize| old.iter().position(|&(u, _)| u == t);
        let mut back = vec![[None; 4]; old.len()];
        for n in 0..new.len() {
            for f in 0..4 {
                if let Err((o, g)) = partner[n][f] {
                    back[o][g] = Some((n, f));
                }
            }
        }
        let mut glue = Vec::new();
        for n in 0..new.len() {
            for f in 0..4 {
                let (m, g, p) = match partner[n][f] {
                    Ok((m, g)) => (base + m, g, label_map(&new[n], f, &new[m], g)),
                    Err((o, g)) => {
                        let (t, lt) = old[o];
                        let phi = label_map(&new[n], f, &lt, g);
                        let (u, rho) = (self.tets[t].neighbor[g], self.tets[t].gluing[g]);
                        let gu = rho[g] as usize;
                        match old_index(u) {
                            None => (u, gu, compose(rho, phi)),
                            Some(ou) => {
                                let (m, fm) = back[ou][gu]?;
                                let psi = label_map(&new[m], fm, &old[ou].1, gu);
                                (base + m, fm, compose(inverse(psi), compose(rho, phi)))
                            }
                        }
                    }
                };
                if (m, g) == (base + n, f) {
                    return None;
                }
                if m < base || (m, g) > (base + n, f) {
                    glue.push((base + n, f, m, p));
                }
            }
        }
        let blank = Tet { neighbor: [0; 4], gluing: [IDENTITY; 4] };
        self.tets.resize(base + new.len(), blank);
        for (t, f, u, p) in glue {
            self.glue(t, f, u, p);
        }
        Some((base..base + new.len()).collect())
    }

    /// Replaces the two tetrahedra on either side of face `f` of `t` by
    /// three around a new edge. Returns the new and removed tetrahedra.
    pub fn two_three_move(&mut self, t: usize, f: usize) -> Option<(Vec<usize>, [usize; 2])> {
        let u = self.tets[t].neighbor[f];
        if u == t {
            return None;
        }
        let g = self.tets[t].gluing[f];
        let la: Labels = [0, 1, 2, 3];
        let mut lb = [4; 4];
        for v in (0..4).filter(|&v| v != f) {
            lb[g[v] as usize] = v;
        }
        let tri: Vec<usize> = (0..4).filter(|&v| v != f).collect();
        let new: Vec<Labels> = (0..3).map(|i| [f, 4, tri[i], tri[(i + 1) % 3]]).collect();
        let added = self.replace(&[(t, la), (u, lb)], &new)?;
        Some((added, [t, u]))
    }

    /// Replaces the three distinct tetrahedra around a valence-three edge
    /// class by two sharing a face. Returns the new and removed tetrahedra.
    pub fn three_two_move(&mut self, sk: &Skeleton, e: usize) -> Option<(Vec<usize>, [usize; 3])> {
        let emb = &sk.edge_embeddings[e];
        if emb.len() != 3 {
            return None;
        }
        self.three_two_at(emb[0].0, emb[0].1)
    }

    /// [`Self::three_two_move`] on the edge `EDGES[i0]` of tetrahedron `t0`.
    fn three_two_at(&mut self, t0: usize, i0: usize) -> Option<(Vec<usize>, [usize; 3])> {
        let (a, b) = EDGES[i0];
        let (c, d) = EDGES[5 - i0];
        // p = 0, q = 1; the far vertices are 2, 3, 4 going around
        let mut l0 = [0; 4];
        l0[a as usize] = 0;
        l0[b as usize] = 1;
        l0[c as usize] = 2;
        l0[d as usize] = 3;
        let step = |t: usize, l: &Labels, leave: usize, fresh: usize| -> (usize, Labels) {
            let f = l.iter().position(|&x| x == leave).expect("label present");
            let tet = self.tets[t];
            let (u, g) = (tet.neighbor[f], tet.gluing[f]);
            let mut lu = [fresh; 4];
            for v in (0..4).filter(|&v| v != f) {
                lu[g[v] as usize] = l[v];
            }
            (u, lu)
        };
        let (t1, l1) = step(t0, &l0, 2, 4);
        let (t2, l2) = step(t1, &l1, 3, 2);
        let (t3, l3) = step(t2, &l2, 4, 3);
        if t0 == t1 || t1 == t2 || t0 == t2 || t3 != t0 || l3 != l0 {
            return None;
        }
        let new = [[0, 2, 3, 4], [1, 2, 3, 4]];
        let added = self.replace(&[(t0, l0), (t1, l1), (t2, l2)], &new)?;
        Some((added, [t0, t1, t2]))
    }

    /// One round of 3-2 moves on the current skeleton. Tetrahedra touched
    /// by a move are not reused within the round.
    fn three_two_round(&mut self) -> bool {
        let sk = self.skeleton();
        let mut touched = vec![false; self.tets.len()];
        let mut gone = Vec::new();
        for e in 0..sk.n_edges {
            let emb = &sk.edge_embeddings[e];
            if emb.len() != 3 || emb.iter().any(|&(t, _)| touched[t]) {
                continue;
            }
            let near: Vec<usize> = emb.iter().flat_map(|&(t, _)| self.tets[t].neighbor).collect();
            if near.iter().any(|&t| touched[t]) || !keeps_valence_three(&sk, emb) {
                continue;
            }
            if let Some((added, removed)) = self.three_two_move(&sk, e) {
                touched.resize(self.tets.len(), true);
                for t in near.into_iter().chain(added) {
                    touched[t] = true;
                }
                gone.extend(removed);
            }
        }
        let moved = !gone.is_empty();
        self.remove_tets(&gone);
        moved
    }

    /// Random 4-4 moves on valence-four edges in disjoint neighbourhoods,
    /// each taken with probability one half.
    fn four_four_round<R: Rng>(&mut self, rng: &mut R) -> usize {
        let sk = self.skeleton();
        let mut touched = vec![false; self.tets.len()];
        let mut gone = Vec::new();
        let mut count = 0;
        for e in 0..sk.n_edges {
            let emb = &sk.edge_embeddings[e];
            if emb.len() != 4 || !rng.gen_bool(0.5) {
                continue;
            }
            let tets: Vec<usize> = emb.iter().map(|&(t, _)| t).collect();
            if (1..4).any(|k| tets[..k].contains(&tets[k])) {
                continue;
            }
            let near: Vec<usize> = tets.iter().flat_map(|&t| self.tets[t].neighbor).collect();
            if near.iter().any(|&t| touched[t]) {
                continue;
            }
            // a 2-3 move on a face containing the edge leaves it with
            // valence three, opposite the two tetrahedra it replaced
            let (t0, i0) = emb[0];
            let c = EDGES[5 - i0].0 as usize;
            let d = EDGES[5 - i0].1 as usize;
            let (x, w) = (self.tets[t0].neighbor[c], self.tets[t0].neighbor[d]);
            let Some(&(y, iy)) = emb.iter().find(|&&(t, _)| t != t0 && t != x && t != w) else {
                continue;
            };
            let snapshot = (self.tets.len(), [self.tets[t0], self.tets[x]]);
            let Some((added, removed)) = self.two_three_move(t0, c) else {
                continue;
            };
            match self.three_two_at(y, iy) {
                Some((added2, removed2)) => {
                    touched.resize(self.tets.len(), true);
                    for t in near.into_iter().chain(added).chain(added2) {
                        touched[t] = true;
                    }
                    gone.extend(removed);
                    gone.extend(removed2);
                    count += 1;
                }
                None => {
                    // undo: reattach the two originals and drop the new ones
                    self.tets.truncate(snapshot.0);
                    let [a, b] = snapshot.1;
                    self.tets[t0] = a;
                    self.tets[x] = b;
                    for (t, tet) in [(t0, a), (x, b)] {
                        for f in 0..4 {
                            self.glue(t, f, tet.neighbor[f], tet.gluing[f]);
                        }
                    }
                }
            }
        }
        self.remove_tets(&gone);
        count
    }

    /// Greedy simplification interleaved with random 4-4 moves; stops after
    /// `patience` consecutive rounds without losing a tetrahedron.
    pub fn simplify_randomly<R: Rng>(&mut self, rng: &mut R, patience: usize) {
        self.simplify();
        let mut stalls = 0;
        while stalls < patience {
            let before = self.len();
            if self.four_four_round(rng) == 0 {
                break;
            }
            self.simplify();
            if self.len() < before {
                stalls = 0;
            } else {
                stalls += 1;
            }
        }
    }

    /// 2-3 moves that give every edge valence at least three, favouring
    /// faces whose own edges can spare an embedding. Returns false if some
    /// edge is left below three.
    pub fn raise_low_valences(&mut self) -> bool {
        for _ in 0..4 * self.len() + 8 {
            let sk = self.skeleton();
            let Some(e) = (0..sk.n_edges).find(|&e| sk.edge_embeddings[e].len() < 3) else {
                return true;
            };
            let mut options = Vec::new();
            for &(t, i) in &sk.edge_embeddings[e] {
                let (a, b) = EDGES[i];
                for f in [a as usize, b as usize] {
                    if self.tets[t].neighbor[f] == t {
                        continue;
                    }
                    let spare = (0..6)
                        .filter(|&j| EDGES[j].0 as usize != f && EDGES[j].1 as usize != f)
                        .map(|j| sk.edge_embeddings[sk.edge[t][j]].len())
                        .min()
                        .unwrap_or(0);
                    options.push((spare, t, f));
                }
            }
            let Some(&(_, t, f)) = options.iter().max_by_key(|o| o.0) else {
                return false;
            };
            match self.two_three_move(t, f) {
                Some((_, removed)) => self.remove_tets(&removed),
                None => return false,
            }
        }
        false
    }

    /// Apply 3-2 and 2-0 moves until none applies, then raise edges of
    /// valence below three.
    pub fn simplify(&mut self) {
        loop {
            if self.three_two_round() {
                continue;
            }
            let sk = self.skeleton();
            let moved = (0..sk.n_edges)
                .filter(|&e| sk.edge_embeddings[e].len() == 2)
                .any(|e| self.two_zero_move(&sk, e));
            if !moved {
                break;
            }
        }
        self.raise_low_valences();
    }

    /// `moves` random 2-3 moves followed by [`Self::simplify`].
    pub fn randomize<R: Rng>(&mut self, rng: &mut R, moves: usize) {
        let mut gone = Vec::new();
        let mut touched = vec![false; self.tets.len()];
        for _ in 0..moves {
            let t = rng.gen_range(0..self.tets.len());
            let f = rng.gen_range(0..4);
            let u = self.tets[t].neighbor[f];
            if touched[t] || touched[u] {
                continue;
            }
            if let Some((added, removed)) = self.two_three_move(t, f) {
                touched.resize(self.tets.len(), true);
                for x in removed.into_iter().chain(added) {
                    touched[x] = true;
                }
                for x in removed {
                    for y in self.tets[x].neighbor {
                        touched[y] = true;
                    }
                }
                gone.extend(removed);
            }
        }
        self.remove_tets(&gone);
        self.simplify_randomly(rng, 4);
    }
}

#[cfg(test)]
mod tests {
    use crate::pd::fixtures;
    use crate::triangulation::triangulate;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn two_three_then_three_two() {
        for d in [fixtures::figure_eight(), fixtures::whitehead(), fixtures::borromean()] {
            let t = triangulate(&d).unwrap();
            let mut u = t.clone();
            let (_, removed) = u.two_three_move(0, 0).unwrap();
            u.remove_tets(&removed);
            u.check_ideal().unwrap();
            assert_eq!(u.len(), t.len() + 1);
            u.simplify();
            u.check_ideal().unwrap();
            assert!(u.len() <= t.len());
        }
    }

    #[test]
    fn four_four_preserves_ideal_structure() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let d = fixtures::from_braid(4, &[1, 3, -3, 3, -3, -1, 3, 1, -2, -2, -1, 1, -2, 1, -2, -1, -2, -2, -2, 1, -3, -3, -3, -3, 2, 1, 2, 2]).unwrap();
        let mut t = triangulate(&d).unwrap();
        let mut moved = 0;
        for _ in 0..20 {
            let n = t.len();
            moved += t.four_four_round(&mut rng);
            t.check_ideal().unwrap();
            assert_eq!(t.len(), n);
        }
        assert!(moved > 0);
    }

    #[test]
    fn randomize_keeps_cusps() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let d = fixtures::borromean();
        let mut t = triangulate(&d).unwrap();
        for _ in 0..10 {
            t.randomize(&mut rng, 20);
            t.check_ideal().unwrap();
            assert_eq!(t.skeleton().n_vertices, 3);
        }
    }
}
