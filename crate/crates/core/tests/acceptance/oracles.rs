//! Reference computations that share no code with the library.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use scinf::filler::ComplexJson;
use scinf::words::Letter;

type P3 = [i64; 3];

/// Breadth-first search in the integer lattice using unit steps along the
/// listed axes, out to `radius`.
pub fn lattice_bfs(axes: &[usize], radius: usize) -> HashMap<P3, usize> {
    let mut dist = HashMap::from([([0; 3], 0)]);
    let mut queue = VecDeque::from([[0i64; 3]]);
    while let Some(p) = queue.pop_front() {
        let d = dist[&p];
        if d == radius {
            continue;
        }
        for &a in axes {
            for s in [-1, 1] {
                let mut q = p;
                q[a] += s;
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(q) {
                    e.insert(d + 1);
                    queue.push_back(q);
                }
            }
        }
    }
    dist
}

/// `1 + max |a|_A` over `A` in `groups` and `a` in `<A>` with `|a| <= 2m`.
fn l_const(groups: &[Vec<usize>], m: usize) -> usize {
    let ball = lattice_bfs(&[0, 1, 2], 2 * m);
    let mut best = 0;
    for g in groups {
        let sub = lattice_bfs(g, 4 * m);
        for p in ball.keys() {
            if (0..3).all(|i| g.contains(&i) || p[i] == 0) {
                best = best.max(sub[p]);
            }
        }
    }
    best + 1
}

/// `(L1, M1, L2, M2)` for the standard presentation of Z^3 with all pairs
/// and the single triple of generators.
pub fn z3_constants(m: usize, w: usize) -> (usize, usize, usize, usize) {
    let pairs = [vec![0, 1], vec![0, 2], vec![1, 2]];
    let l1 = l_const(&pairs, m);
    let m1 = (l1 + m).max(m + w + 1);
    let l2 = l_const(&[vec![0, 1, 2]], m);
    let m2 = (l2 + m).max(m1 + w);
    (l1, m1, l2, m2)
}

pub fn z3_threshold(m: usize, w: usize) -> usize {
    let m1 = z3_constants(m, w).1;
    z3_constants(m1 + w, w).3
}

/// Free reduction by repeated deletion of the leftmost cancelling pair.
pub fn naive_reduce(mut v: Vec<Letter>) -> Vec<Letter> {
    loop {
        let hit = (1..v.len()).find(|&i| v[i - 1].gen == v[i].gen && v[i - 1].inverse != v[i].inverse);
        match hit {
            Some(i) => {
                v.drain(i - 1..=i);
            }
            None => return v,
        }
    }
}

#[derive(Debug)]
pub struct SphereStats {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
}

fn find(parent: &mut [usize], mut a: usize) -> usize {
    while parent[a] != a {
        parent[a] = parent[parent[a]];
        a = parent[a];
    }
    a
}

/// Faces lying in exactly one 3-cell must form a connected closed surface
/// of Euler characteristic 2 whose vertex links are single cycles.
pub fn boundary_sphere(k: &ComplexJson) -> Result<SphereStats, String> {
    let mut count = vec![0usize; k.faces.len()];
    for c in &k.cells {
        for &f in &c.faces {
            count[f] += 1;
        }
    }
    let bfaces: Vec<&Vec<usize>> = (0..k.faces.len())
        .filter(|&f| count[f] == 1)
        .map(|f| &k.faces[f].vertices)
        .collect();
    let mut edges: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut links: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for f in &bfaces {
        let n = f.len();
        for i in 0..n {
            let (a, b) = (f[i], f[(i + 1) % n]);
            *edges.entry((a.min(b), a.max(b))).or_default() += 1;
            links.entry(b).or_default().push((a, f[(i + 2) % n]));
        }
    }
    if let Some((e, c)) = edges.iter().find(|(_, &c)| c != 2) {
        return Err(format!("edge {e:?} lies on {c} boundary faces"));
    }
    for (v, link) in &links {
        let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(a, b) in link {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        if adj.values().any(|n| n.len() != 2) {
            return Err(format!("link of vertex {v} is not a cycle"));
        }
        let start = *adj.keys().next().unwrap();
        let (mut prev, mut cur, mut len) = (start, adj[&start][0], 1);
        while cur != start {
            let nx = if adj[&cur][0] == prev { adj[&cur][1] } else { adj[&cur][0] };
            prev = cur;
            cur = nx;
            len += 1;
        }
        if len != adj.len() {
            return Err(format!("link of vertex {v} has several cycles"));
        }
    }
    let verts: BTreeSet<usize> = links.keys().copied().collect();
    let mut parent: Vec<usize> = (0..k.vertices.len()).collect();
    for &(a, b) in edges.keys() {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let roots: BTreeSet<usize> = verts.iter().map(|&v| find(&mut parent, v)).collect();
    if roots.len() != 1 {
        return Err(format!("boundary has {} components", roots.len()));
    }
    let s = SphereStats {
        vertices: verts.len(),
        edges: edges.len(),
        faces: bfaces.len(),
    };
    let chi = s.vertices as i64 - s.edges as i64 + s.faces as i64;
    if chi != 2 {
        return Err(format!("euler characteristic {chi}"));
    }
    Ok(s)
}

/// Replays the elementary collapses and requires the survivors to be
/// exactly the closure of the diagram faces.
pub fn replay_collapse(k: &ComplexJson) -> Result<usize, String> {
    use scinf::filler::CollapseStep;
    let edge_of = |a: usize, b: usize| {
        k.edges
            .iter()
            .position(|&(u, v, _)| (u, v) == (a.min(b), a.max(b)))
    };
    let mut face_edges: Vec<BTreeSet<usize>> = Vec::new();
    for f in &k.faces {
        let n = f.vertices.len();
        let mut s = BTreeSet::new();
        for i in 0..n {
            s.insert(edge_of(f.vertices[i], f.vertices[(i + 1) % n]).ok_or("face uses a missing edge")?);
        }
        face_edges.push(s);
    }
    let mut cells: BTreeSet<usize> = (0..k.cells.len()).collect();
    let mut faces: BTreeSet<usize> = (0..k.faces.len()).collect();
    let mut edges: BTreeSet<usize> = (0..k.edges.len()).collect();
    let mut verts: BTreeSet<usize> = (0..k.vertices.len()).collect();
    for (i, step) in k.collapse_order.iter().enumerate() {
        let bad = || format!("step {i} is not an elementary collapse");
        match *step {
            CollapseStep::Cell { face, cell } => {
                let holders: Vec<usize> = cells.iter().copied().filter(|&c| k.cells[c].faces.contains(&face)).collect();
                if !faces.contains(&face) || holders != [cell] {
                    return Err(bad());
                }
                cells.remove(&cell);
                faces.remove(&face);
            }
            CollapseStep::Face { edge, face } => {
                let holders: Vec<usize> = faces.iter().copied().filter(|&f| face_edges[f].contains(&edge)).collect();
                let in_cell = cells.iter().any(|&c| k.cells[c].faces.contains(&face));
                if !edges.contains(&edge) || holders != [face] || in_cell {
                    return Err(bad());
                }
                faces.remove(&face);
                edges.remove(&edge);
            }
            CollapseStep::Edge { vertex, edge } => {
                let holders: Vec<usize> = edges
                    .iter()
                    .copied()
                    .filter(|&e| k.edges[e].0 == vertex || k.edges[e].1 == vertex)
                    .collect();
                let in_face = faces.iter().any(|&f| face_edges[f].contains(&edge));
                if !verts.contains(&vertex) || holders != [edge] || in_face {
                    return Err(bad());
                }
                edges.remove(&edge);
                verts.remove(&vertex);
            }
        }
    }
    let want_faces: BTreeSet<usize> = k.v_faces.iter().copied().collect();
    let want_edges: BTreeSet<usize> = want_faces.iter().flat_map(|&f| face_edges[f].iter().copied()).collect();
    let want_verts: BTreeSet<usize> = want_faces.iter().flat_map(|&f| k.faces[f].vertices.iter().copied()).collect();
    if !cells.is_empty() || faces != want_faces || edges != want_edges || verts != want_verts {
        return Err(format!(
            "collapse stops at {} cells, {} faces, {} edges, {} vertices",
            cells.len(),
            faces.len(),
            edges.len(),
            verts.len()
        ));
    }
    Ok(k.collapse_order.len())
}

/// Generator pairs with a commutator relator `a b a^-1 b^-1`, read off the
/// relator words up to rotation and inversion.
pub fn commuting_pairs(p: &scinf::presentations::Presentation) -> BTreeSet<(u32, u32)> {
    let mut out = BTreeSet::new();
    for r in p.relators() {
        let l = r.letters();
        if l.len() != 4 {
            continue;
        }
        let (a, b) = (l[0], l[1]);
        let shape = a.gen != b.gen
            && l[2].gen == a.gen
            && l[3].gen == b.gen
            && l[2].inverse != a.inverse
            && l[3].inverse != b.inverse;
        if shape {
            out.insert((a.gen.0.min(b.gen.0), a.gen.0.max(b.gen.0)));
        }
    }
    out
}
