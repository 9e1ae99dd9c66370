//! Re-checks a filling certificate from its JSON alone.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::Result;
use crate::filler::certificate::{CheckResult, ComplexJson, FillingCertificate, Verdict};
use crate::filler::complex::CollapseStep;
use crate::geometry::GroupOracle;
use crate::presentations::Presentation;
use crate::words::{Letter, Word};

const MAX_DETAILS: usize = 20;

struct Report(Vec<String>);

impl Report {
    fn fail(&mut self, s: String) {
        if self.0.len() < MAX_DETAILS {
            self.0.push(s);
        } else if self.0.len() == MAX_DETAILS {
            self.0.push("...".into());
        }
    }

    fn done(self) -> CheckResult {
        CheckResult {
            ok: self.0.is_empty(),
            details: self.0,
        }
    }
}

struct Shape {
    /// Undirected edge -> index into `edges`.
    edge_of: BTreeMap<(usize, usize), usize>,
    face_edges: Vec<Option<Vec<usize>>>,
}

fn shape(k: &ComplexJson) -> Shape {
    let mut edge_of = BTreeMap::new();
    for (i, &(a, b, _)) in k.edges.iter().enumerate() {
        edge_of.insert((a.min(b), a.max(b)), i);
    }
    let face_edges = k
        .faces
        .iter()
        .map(|f| {
            let c = &f.vertices;
            (0..c.len())
                .map(|i| {
                    let (a, b) = (c[i], c[(i + 1) % c.len()]);
                    edge_of.get(&(a.min(b), a.max(b))).copied()
                })
                .collect::<Option<Vec<_>>>()
        })
        .collect();
    Shape { edge_of, face_edges }
}

pub fn verify_filling(cert: &FillingCertificate) -> Result<Verdict> {
    let oracle = cert.group.build()?;
    Ok(verify_with(oracle.as_ref(), cert))
}

pub fn verify_with(o: &dyn GroupOracle, cert: &FillingCertificate) -> Verdict {
    let k = &cert.complex;
    let s = shape(k);
    let collapse = check_collapse(k, &s);
    let sphere = check_sphere(o.presentation(), cert, &s);
    let relators = check_relators(o.presentation(), k, &s);
    let (avoidance, min_d, nb, failing) = check_avoidance(o, cert);
    let pass = collapse.ok && sphere.ok && relators.ok && avoidance.ok;
    Verdict {
        collapse,
        sphere,
        relators,
        avoidance,
        min_boundary_distance: min_d,
        boundary_faces: nb,
        failing_faces: failing,
        pass,
    }
}

fn v_closure(k: &ComplexJson, s: &Shape) -> (BTreeSet<usize>, BTreeSet<usize>, BTreeSet<usize>) {
    let faces: BTreeSet<usize> = k.v_faces.iter().copied().collect();
    let mut edges = BTreeSet::new();
    let mut verts = BTreeSet::new();
    for &f in &faces {
        if let Some(Some(es)) = s.face_edges.get(f) {
            edges.extend(es.iter().copied());
        }
        if let Some(fc) = k.faces.get(f) {
            verts.extend(fc.vertices.iter().copied());
        }
    }
    (faces, edges, verts)
}

/// (a) Replays the collapse order and requires it to end exactly at `V`.
fn check_collapse(k: &ComplexJson, s: &Shape) -> CheckResult {
    let mut r = Report(vec![]);
    let nv = k.vertices.len();
    if s.face_edges.iter().any(Option::is_none) {
        r.fail("a face uses a missing edge".into());
        return r.done();
    }
    if k.edges.iter().any(|&(a, b, _)| a >= nv || b >= nv || a == b) {
        r.fail("malformed edge".into());
        return r.done();
    }
    let fe: Vec<&Vec<usize>> = s.face_edges.iter().map(|x| x.as_ref().unwrap()).collect();
    for (c, cell) in k.cells.iter().enumerate() {
        let mut count: BTreeMap<usize, usize> = BTreeMap::new();
        for &f in &cell.faces {
            match fe.get(f) {
                Some(es) => es.iter().for_each(|&e| *count.entry(e).or_default() += 1),
                None => r.fail(format!("cell {c} names missing face {f}")),
            }
        }
        if count.values().any(|&n| n != 2) {
            r.fail(format!("cell {c} is not a closed surface"));
        }
    }
    let mut cell_alive = vec![true; k.cells.len()];
    let mut face_alive = vec![true; k.faces.len()];
    let mut edge_alive = vec![true; k.edges.len()];
    let mut vert_alive = vec![true; nv];
    let mut cofaces_of: Vec<Vec<usize>> = vec![vec![]; k.faces.len()];
    for (c, cell) in k.cells.iter().enumerate() {
        for &f in &cell.faces {
            if f < cofaces_of.len() {
                cofaces_of[f].push(c);
            }
        }
    }
    let mut edge_faces: Vec<Vec<usize>> = vec![vec![]; k.edges.len()];
    for (f, es) in fe.iter().enumerate() {
        for &e in es.iter() {
            edge_faces[e].push(f);
        }
    }
    let mut edges_at: Vec<Vec<usize>> = vec![vec![]; nv];
    for (e, &(a, b, _)) in k.edges.iter().enumerate() {
        edges_at[a].push(e);
        edges_at[b].push(e);
    }
    for (i, step) in k.collapse_order.iter().enumerate() {
        let ok = match *step {
            CollapseStep::Cell { face, cell } => {
                let valid = cell < k.cells.len()
                    && face < k.faces.len()
                    && cell_alive[cell]
                    && face_alive[face]
                    && k.cells[cell].faces.contains(&face)
                    && cofaces_of[face].iter().filter(|&&c| cell_alive[c]).count() == 1;
                if valid {
                    cell_alive[cell] = false;
                    face_alive[face] = false;
                }
                valid
            }
            CollapseStep::Face { edge, face } => {
                let valid = face < k.faces.len()
                    && edge < k.edges.len()
                    && face_alive[face]
                    && edge_alive[edge]
                    && cofaces_of[face].iter().all(|&c| !cell_alive[c])
                    && fe[face].contains(&edge)
                    && edge_faces[edge].iter().filter(|&&f| face_alive[f]).count() == 1;
                if valid {
                    face_alive[face] = false;
                    edge_alive[edge] = false;
                }
                valid
            }
            CollapseStep::Edge { vertex, edge } => {
                let valid = edge < k.edges.len()
                    && vertex < nv
                    && edge_alive[edge]
                    && vert_alive[vertex]
                    && (k.edges[edge].0 == vertex || k.edges[edge].1 == vertex)
                    && edge_faces[edge].iter().all(|&f| !face_alive[f])
                    && edges_at[vertex].iter().filter(|&&e| edge_alive[e]).count() == 1;
                if valid {
                    edge_alive[edge] = false;
                    vert_alive[vertex] = false;
                }
                valid
            }
        };
        if !ok {
            r.fail(format!("collapse step {i} ({step:?}) is not elementary"));
            return r.done();
        }
    }
    let (vf, ve, vv) = v_closure(k, s);
    let rest = |alive: &[bool], keep: &BTreeSet<usize>| {
        (0..alive.len()).filter(|&i| alive[i] != keep.contains(&i)).count()
    };
    if cell_alive.iter().any(|&a| a) {
        r.fail("3-cells survive the collapse".into());
    }
    for (name, n) in [
        ("faces", rest(&face_alive, &vf)),
        ("edges", rest(&edge_alive, &ve)),
        ("vertices", rest(&vert_alive, &vv)),
    ] {
        if n > 0 {
            r.fail(format!("{n} {name} differ from the diagram after collapse"));
        }
    }
    r.done()
}

/// Reads the label of `a -> b`.
fn step_label(k: &ComplexJson, s: &Shape, p: &Presentation, a: usize, b: usize) -> Option<Letter> {
    let &e = s.edge_of.get(&(a.min(b), a.max(b)))?;
    let (u, _, ref t) = k.edges[e];
    let w = p.parse_letter_token(t).ok()?;
    if w.len() != 1 {
        return None;
    }
    let l = w.letters()[0];
    Some(if u == a { l } else { l.inv() })
}

/// (b) The free faces form a 2-sphere containing `V`, whose boundary is the
/// input loop read from the base vertex.
fn check_sphere(p: &Presentation, cert: &FillingCertificate, s: &Shape) -> CheckResult {
    let k = &cert.complex;
    let mut r = Report(vec![]);
    if s.face_edges.iter().any(Option::is_none) {
        r.fail("a face uses a missing edge".into());
        return r.done();
    }
    let mut deg = vec![0usize; k.faces.len()];
    for c in &k.cells {
        for &f in &c.faces {
            if f < deg.len() {
                deg[f] += 1;
            }
        }
    }
    if let Some(f) = deg.iter().position(|&d| d > 2 || d == 0) {
        r.fail(format!("face {f} lies in {} cells", deg[f]));
    }
    let bfaces: Vec<usize> = (0..k.faces.len()).filter(|&f| deg[f] == 1).collect();
    let bset: BTreeSet<usize> = bfaces.iter().copied().collect();
    let fe = |f: usize| s.face_edges[f].as_ref().unwrap();
    let mut edge_count: BTreeMap<usize, usize> = BTreeMap::new();
    let mut verts = BTreeSet::new();
    for &f in &bfaces {
        for &e in fe(f) {
            *edge_count.entry(e).or_default() += 1;
        }
        verts.extend(k.faces[f].vertices.iter().copied());
    }
    if edge_count.values().any(|&c| c != 2) {
        r.fail("boundary is not a closed surface".into());
    }
    // vertex links: boundary faces around each vertex form one cycle
    for &v in &verts {
        let around: Vec<usize> = bfaces
            .iter()
            .copied()
            .filter(|&f| k.faces[f].vertices.contains(&v))
            .collect();
        let mut seen = BTreeSet::from([around[0]]);
        let mut stack = vec![around[0]];
        while let Some(f) = stack.pop() {
            for &g in &around {
                if !seen.contains(&g) && fe(f).iter().any(|e| fe(g).contains(e) && {
                    let (a, b, _) = k.edges[*e];
                    a == v || b == v
                }) {
                    seen.insert(g);
                    stack.push(g);
                }
            }
        }
        if seen.len() != around.len() {
            r.fail(format!("boundary is pinched at vertex {v}"));
        }
    }
    let mut by_edge: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &f in &bfaces {
        for &e in fe(f) {
            by_edge.entry(e).or_default().push(f);
        }
    }
    if let Some(&start) = bfaces.first() {
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(f) = stack.pop() {
            for e in fe(f) {
                for &g in &by_edge[e] {
                    if seen.insert(g) {
                        stack.push(g);
                    }
                }
            }
        }
        if seen.len() != bfaces.len() {
            r.fail("boundary is disconnected".into());
        }
    } else {
        r.fail("boundary is empty".into());
    }
    let chi = verts.len() as i64 - edge_count.len() as i64 + bfaces.len() as i64;
    if chi != 2 {
        r.fail(format!("boundary Euler characteristic {chi}"));
    }
    for &f in &k.v_faces {
        if !bset.contains(&f) {
            r.fail(format!("diagram face {f} is not on the boundary"));
        }
    }
    // ∂V
    let mut v_edges: BTreeMap<usize, usize> = BTreeMap::new();
    for &f in &k.v_faces {
        if f < k.faces.len() {
            for &e in fe(f) {
                *v_edges.entry(e).or_default() += 1;
            }
        }
    }
    let rim: BTreeSet<usize> = v_edges.iter().filter(|(_, &c)| c == 1).map(|(&e, _)| e).collect();
    let lv = &k.loop_vertices;
    let mut walked = BTreeSet::new();
    let mut letters = Vec::new();
    for i in 0..lv.len() {
        let (a, b) = (lv[i], lv[(i + 1) % lv.len()]);
        match s.edge_of.get(&(a.min(b), a.max(b))) {
            Some(&e) if rim.contains(&e) && walked.insert(e) => {
                letters.extend(step_label(k, s, p, a, b));
            }
            _ => {
                r.fail(format!("loop step {i} is not a fresh rim edge"));
                break;
            }
        }
    }
    if walked.len() != rim.len() {
        r.fail("diagram rim is not the loop".into());
    }
    if lv.first() != Some(&k.base_vertex) {
        r.fail("loop does not start at the base vertex".into());
    }
    match p.word_from_tokens(&cert.loop_word) {
        Ok(w) if Word::raw(letters) == w => {}
        _ => r.fail("rim does not read the loop word".into()),
    }
    r.done()
}

/// (c) Every face word is a relator and agrees with the edge labels.
fn check_relators(p: &Presentation, k: &ComplexJson, s: &Shape) -> CheckResult {
    let mut r = Report(vec![]);
    for (f, face) in k.faces.iter().enumerate() {
        let stored = match p.word_from_tokens(&face.word) {
            Ok(w) => w,
            Err(_) => {
                r.fail(format!("face {f} has an unparsable word"));
                continue;
            }
        };
        let c = &face.vertices;
        let read: Option<Vec<Letter>> = (0..c.len())
            .map(|i| step_label(k, s, p, c[i], c[(i + 1) % c.len()]))
            .collect();
        if read.map(Word::raw) != Some(stored.clone()) {
            r.fail(format!("face {f} word disagrees with its edges"));
        }
        if !p.relators().iter().any(|rel| stored.is_cyclic_conjugate_up_to_inverse(rel)) {
            r.fail(format!("face {f} reads `{}`, not a relator", p.format_word(&stored)));
        }
    }
    r.done()
}

/// (d) Images are a cellular map and `∂B - int V` stays outside `St^m`.
fn check_avoidance(
    o: &dyn GroupOracle,
    cert: &FillingCertificate,
) -> (CheckResult, Option<usize>, usize, Vec<usize>) {
    let p = o.presentation();
    let k = &cert.complex;
    let mut r = Report(vec![]);
    let images: Vec<Option<Word>> = k
        .vertices
        .iter()
        .map(|t| p.word_from_tokens(t).ok().map(|w| o.normal_form(&w)))
        .collect();
    for (v, img) in images.iter().enumerate() {
        if img.is_none() {
            r.fail(format!("vertex {v} has an unparsable image"));
        }
    }
    for (i, (a, b, t)) in k.edges.iter().enumerate() {
        let ok = match (images.get(*a), images.get(*b), p.parse_letter_token(t)) {
            (Some(Some(x)), Some(Some(y)), Ok(l)) if l.len() == 1 => o.mul_letter(x, l.letters()[0]) == *y,
            _ => false,
        };
        if !ok {
            r.fail(format!("edge {i} label does not match its endpoint images"));
        }
    }
    let base = p.word_from_tokens(&cert.base).map(|w| o.normal_form(&w));
    if images.get(k.base_vertex).cloned().flatten() != base.ok() {
        r.fail("base vertex image is not the declared base point".into());
    }
    let mut deg = vec![0usize; k.faces.len()];
    for c in &k.cells {
        for &f in &c.faces {
            if f < deg.len() {
                deg[f] += 1;
            }
        }
    }
    let v_faces: BTreeSet<usize> = k.v_faces.iter().copied().collect();
    let outer: Vec<usize> = (0..k.faces.len())
        .filter(|&f| deg[f] == 1 && !v_faces.contains(&f))
        .collect();
    let mut min_d: Option<usize> = None;
    let mut bad_vertices = BTreeSet::new();
    let mut failing = Vec::new();
    let mut dist: BTreeMap<usize, usize> = BTreeMap::new();
    for &f in &outer {
        let mut bad = false;
        for &v in &k.faces[f].vertices {
            let d = *dist
                .entry(v)
                .or_insert_with(|| images.get(v).cloned().flatten().map_or(0, |w| o.distance(&w)));
            min_d = Some(min_d.map_or(d, |m| m.min(d)));
            if d <= cert.m {
                bad = true;
                bad_vertices.insert(v);
            }
        }
        if bad {
            failing.push(f);
        }
    }
    for v in &bad_vertices {
        r.fail(format!("vertex {v} maps within distance {} of the identity", cert.m));
    }
    (r.done(), min_d, outer.len(), failing)
}
