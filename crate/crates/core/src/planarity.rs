//! Planar embedding of a biconnected simple graph by the
//! Demoucron–Malgrange–Pertuiset face-insertion algorithm.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

/// Rotation system: for each vertex, its neighbours in cyclic order. All
/// rotations share one orientation.
pub type Rotation = Vec<Vec<usize>>;

/// Returns `None` when the graph is not planar or not biconnected.
pub fn embed(n: usize, edges: &[(usize, usize)]) -> Option<Rotation> {
    let mut adj = vec![Vec::new(); n];
    for (i, &(a, b)) in edges.iter().enumerate() {
        if a == b {
            return None;
        }
        adj[a].push((b, i));
        adj[b].push((a, i));
    }
    let cycle = find_cycle(n, &adj)?;
    let mut in_h = vec![false; n];
    let mut edge_in_h = vec![false; edges.len()];
    for (k, &v) in cycle.iter().enumerate() {
        in_h[v] = true;
        let w = cycle[(k + 1) % cycle.len()];
        let e = adj[v].iter().find(|&&(x, _)| x == w)?.1;
        edge_in_h[e] = true;
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];
    let mut remaining = edges.len() - cycle.len();
    // face membership marks, rebuilt per round
    let mut mark = vec![usize::MAX; n];
    while remaining > 0 {
        let fragments = fragments(n, edges, &adj, &in_h, &edge_in_h);
        if fragments.is_empty() {
            return None;
        }
        // admissible faces per fragment
        let mut choice: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let mut admissible = Vec::new();
            for (k, face) in faces.iter().enumerate() {
                for &v in face {
                    mark[v] = k;
                }
                if frag.attachments.iter().all(|&a| mark[a] == k) {
                    admissible.push(k);
                }
                for &v in face {
                    mark[v] = usize::MAX;
                }
                if admissible.len() > 1 {
                    break;
                }
            }
            match admissible.len() {
                0 => return None,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, k) = choice?;
        let path = fragment_path(&fragments[fi], edges, &adj, &in_h, &edge_in_h)?;
        // mark path
        for w in path.windows(2) {
            let e = adj[w[0]].iter().find(|&&(x, e)| x == w[1] && !edge_in_h[e])?.1;
            edge_in_h[e] = true;
            remaining -= 1;
        }
        for &v in &path {
            in_h[v] = true;
        }
        // split face k along the path
        let face = faces.swap_remove(k);
        let (a, b) = (path[0], *path.last()?);
        let i = face.iter().position(|&v| v == a)?;
        let j = face.iter().position(|&v| v == b)?;
        let len = face.len();
        let interior = &path[1..path.len() - 1];
        let mut f1 = Vec::new();
        let mut x = i;
        loop {
            f1.push(face[x]);
            if x == j {
                break;
            }
            x = (x + 1) % len;
        }
        f1.extend(interior.iter().rev());
        let mut f2 = Vec::new();
        let mut x = j;
        loop {
            f2.push(face[x]);
            if x == i {
                break;
            }
            x = (x + 1) % len;
        }
        f2.extend(interior.iter());
        faces.push(f1);
        faces.push(f2);
    }
    // successor of u around v for every face passing u → v → w
    let mut succ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for face in &faces {
        let l = face.len();
        for k in 0..l {
            let (u, v, w) = (face[k], face[(k + 1) % l], face[(k + 2) % l]);
            succ[v].push((u, w));
        }
    }
    let mut rot = vec![Vec::new(); n];
    for v in 0..n {
        if succ[v].is_empty() {
            continue;
        }
        let start = succ[v][0].0;
        let mut cur = start;
        loop {
            rot[v].push(cur);
            cur = succ[v].iter().find(|&&(u, _)| u == cur)?.1;
            if cur == start {
                break;
            }
        }
        if rot[v].len() != adj[v].len() {
            return None;
        }
    }
    Some(rot)
}

fn find_cycle(n: usize, adj: &[Vec<(usize, usize)>]) -> Option<Vec<usize>> {
    // DFS until a back edge closes a cycle
    let start = (0..n).find(|&v| !adj[v].is_empty())?;
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut stack = vec![(start, 0usize)];
    depth[start] = 0;
    while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
        if *idx >= adj[v].len() {
            stack.pop();
            continue;
        }
        let (w, _) = adj[v][*idx];
        *idx += 1;
        if w == parent[v] {
            continue;
        }
        if depth[w] == usize::MAX {
            depth[w] = depth[v] + 1;
            parent[w] = v;
            stack.push((w, 0));
        } else if depth[w] < depth[v] {
            let mut cyc = vec![v];
            let mut x = v;
            while x != w {
                x = parent[x];
                cyc.push(x);
            }
            return Some(cyc);
        }
    }
    None
}

struct Fragment {
    /// Chord edge, or interior vertices of a component.
    chord: Option<usize>,
    vertices: Vec<usize>,
    attachments: Vec<usize>,
}

fn fragments(
    n: usize,
    edges: &[(usize, usize)],
    adj: &[Vec<(usize, usize)>],
    in_h: &[bool],
    edge_in_h: &[bool],
) -> Vec<Fragment> {
    let mut out = Vec::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        if !edge_in_h[i] && in_h[a] && in_h[b] {
            out.push(Fragment { chord: Some(i), vertices: Vec::new(), attachments: vec![a, b] });
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut stamp = vec![usize::MAX; n];
    for s in 0..n {
        if in_h[s] || comp[s] != usize::MAX || adj[s].is_empty() {
            continue;
        }
        let id = out.len();
        let mut verts = vec![s];
        let mut atts = Vec::new();
        comp[s] = id;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &adj[v] {
                if in_h[w] {
                    if stamp[w] != id {
                        stamp[w] = id;
                        atts.push(w);
                    }
                } else if comp[w] == usize::MAX {
                    comp[w] = id;
                    verts.push(w);
                    queue.push_back(w);
                }
            }
        }
        out.push(Fragment { chord: None, vertices: verts, attachments: atts });
    }
    out
}

/// A path through the fragment joining two distinct attachment vertices.
fn fragment_path(
    frag: &Fragment,
    edges: &[(usize, usize)],
    adj: &[Vec<(usize, usize)>],
    in_h: &[bool],
    edge_in_h: &[bool],
) -> Option<Vec<usize>> {
    if let Some(e) = frag.chord {
        let (a, b) = edges[e];
        return Some(vec![a, b]);
    }
    if frag.attachments.len() < 2 {
        return None;
    }
    let a = frag.attachments[0];
    // BFS from a through fragment interior to any other attachment
    let inside: alloc::collections::BTreeSet<usize> = frag.vertices.iter().copied().collect();
    let mut prev = alloc::collections::BTreeMap::new();
    let mut queue = VecDeque::new();
    for &(w, e) in &adj[a] {
        if !edge_in_h[e] && inside.contains(&w) && !prev.contains_key(&w) {
            prev.insert(w, a);
            queue.push_back(w);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &(w, _) in &adj[v] {
            if in_h[w] && w != a {
                let mut path = vec![w, v];
                let mut x = v;
                while let Some(&p) = prev.get(&x) {
                    path.push(p);
                    if p == a {
                        break;
                    }
                    x = p;
                }
                path.reverse();
                return Some(path);
            }
            if inside.contains(&w) && !prev.contains_key(&w) {
                prev.insert(w, v);
                queue.push_back(w);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn faces_of(rot: &Rotation) -> usize {
        let mut seen = alloc::collections::BTreeSet::new();
        let mut count = 0;
        for v in 0..rot.len() {
            for &w in &rot[v] {
                if seen.contains(&(v, w)) {
                    continue;
                }
                count += 1;
                let (mut a, mut b) = (v, w);
                while seen.insert((a, b)) {
                    // next dart: at b, the neighbour after a
                    let r = &rot[b];
                    let k = r.iter().position(|&x| x == a).unwrap();
                    let c = r[(k + r.len() - 1) % r.len()];
                    a = b;
                    b = c;
                }
            }
        }
        count
    }

    #[test]
    fn cube_and_k5() {
        let cube = [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (0, 4), (1, 5), (2, 6), (3, 7)];
        let rot = embed(8, &cube).unwrap();
        // Euler: V − E + F = 2
        assert_eq!(faces_of(&rot), 6);
        let mut k5 = Vec::new();
        for a in 0..5 {
            for b in a + 1..5 {
                k5.push((a, b));
            }
        }
        assert!(embed(5, &k5).is_none());
        let mut k33 = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                k33.push((a, b));
            }
        }
        assert!(embed(6, &k33).is_none());
    }
}
