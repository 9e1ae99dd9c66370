use std::collections::BTreeSet;


use crate::error::{Error, Result};
use crate::words::{Letter, Word};

/// Half-edge. `face` is the 2-cell on the dart's left; `None` is the outer
/// face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dart {
    pub origin: usize,
    pub label: Letter,
    pub twin: usize,
    pub face: Option<usize>,
    pub(crate) alive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceInfo {
    pub relator: usize,
    pub exponent: i8,
    /// `r^exponent`, as read along the factor's loop.
    pub word: Word,
    pub(crate) alive: bool,
}

/// Planar combinatorial map. Rotations are counter-clockwise; the face to
/// the left of `d` continues with `next(d)`, the cyclic predecessor of
/// `twin(d)` around its origin. The boundary walk keeps the outer face on
/// its left.
#[derive(Clone, Debug, PartialEq)]
pub struct VanKampenDiagram {
    pub(crate) darts: Vec<Dart>,
    pub(crate) rot: Vec<Vec<usize>>,
    pub(crate) vertex_alive: Vec<bool>,
    pub(crate) faces: Vec<FaceInfo>,
    pub(crate) boundary: Vec<usize>,
    pub(crate) base: usize,
    pub(crate) coords: Option<Vec<(f64, f64)>>,
    pub warnings: Vec<String>,
}

impl VanKampenDiagram {
    pub(crate) fn single_vertex() -> Self {
        VanKampenDiagram {
            darts: vec![],
            rot: vec![vec![]],
            vertex_alive: vec![true],
            faces: vec![],
            boundary: vec![],
            base: 0,
            coords: None,
            warnings: vec![],
        }
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rot[v]
    }

    pub fn faces(&self) -> &[FaceInfo] {
        &self.faces
    }

    pub fn boundary_darts(&self) -> &[usize] {
        &self.boundary
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn coords(&self) -> Option<&[(f64, f64)]> {
        self.coords.as_deref()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_alive.iter().filter(|&&a| a).count()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertex_alive.len()).filter(|&v| self.vertex_alive[v])
    }

    pub fn live_darts(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.darts.len()).filter(|&d| self.darts[d].alive)
    }

    pub fn edge_count(&self) -> usize {
        self.live_darts().count() / 2
    }

    pub fn head(&self, d: usize) -> usize {
        self.darts[self.darts[d].twin].origin
    }

    pub fn next(&self, d: usize) -> usize {
        let t = self.darts[d].twin;
        let r = &self.rot[self.darts[t].origin];
        let i = r.iter().position(|&x| x == t).expect("dart in rotation");
        r[(i + r.len() - 1) % r.len()]
    }

    /// Orbits of `next`, each starting at its least dart.
    pub fn face_orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.darts.len()];
        let mut out = Vec::new();
        for d in self.live_darts() {
            if seen[d] {
                continue;
            }
            let mut orbit = vec![];
            let mut e = d;
            while !seen[e] {
                seen[e] = true;
                orbit.push(e);
                e = self.next(e);
            }
            out.push(orbit);
        }
        out
    }

    /// `V - E + F`, counting the outer face once.
    pub fn euler_characteristic(&self) -> i64 {
        let f = self.face_orbits().len().max(1) as i64;
        self.vertex_count() as i64 - self.edge_count() as i64 + f
    }

    pub fn boundary_word(&self) -> Word {
        Word::raw(self.boundary.iter().map(|&d| self.darts[d].label).collect())
    }

    /// Inner faces as `(face id, darts in next-order starting at the least)`.
    pub fn inner_faces(&self) -> Vec<(usize, Vec<usize>)> {
        self.face_orbits()
            .into_iter()
            .filter_map(|o| self.darts[o[0]].face.map(|f| (f, o)))
            .collect()
    }

    pub fn face_word(&self, orbit: &[usize]) -> Word {
        Word::raw(orbit.iter().map(|&d| self.darts[d].label).collect())
    }

    pub fn boundary_vertices(&self) -> Vec<usize> {
        self.boundary.iter().map(|&d| self.darts[d].origin).collect()
    }

    /// True iff the boundary walk is a nonempty loop visiting no vertex
    /// twice.
    pub fn is_simple_boundary(&self) -> bool {
        if self.boundary.is_empty() {
            return false;
        }
        let vs = self.boundary_vertices();
        vs.iter().collect::<BTreeSet<_>>().len() == vs.len()
    }

    /// Checks every structural invariant. Used in audit mode and by tests.
    pub fn check(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Diagram(m));
        for d in self.live_darts() {
            let dart = &self.darts[d];
            let t = &self.darts[dart.twin];
            if !t.alive || t.twin != d || dart.twin == d {
                return bad(format!("dart {d} has a bad twin"));
            }
            if t.label != dart.label.inv() {
                return bad(format!("dart {d} twin label mismatch"));
            }
            if !self.vertex_alive[dart.origin] || !self.rot[dart.origin].contains(&d) {
                return bad(format!("dart {d} missing from rotation"));
            }
        }
        for v in self.vertices() {
            for &d in &self.rot[v] {
                if !self.darts[d].alive || self.darts[d].origin != v {
                    return bad(format!("rotation at {v} holds foreign dart {d}"));
                }
            }
        }
        let orbits = self.face_orbits();
        let mut outer = 0;
        for o in &orbits {
            let tag = self.darts[o[0]].face;
            if o.iter().any(|&d| self.darts[d].face != tag) {
                return bad("face orbit with mixed tags".into());
            }
            match tag {
                None => outer += 1,
                Some(f) => {
                    let info = &self.faces[f];
                    let w = self.face_word(o);
                    if !info.alive || !w.is_cyclic_conjugate_up_to_inverse(&info.word) {
                        return bad(format!("face {f} does not spell its relator"));
                    }
                }
            }
        }
        if !self.darts.iter().any(|d| d.alive) {
            if self.vertex_count() != 1 {
                return bad("empty diagram must be a single vertex".into());
            }
        } else if outer != 1 {
            return bad(format!("{outer} outer faces"));
        }
        if self.euler_characteristic() != 2 {
            return bad(format!("Euler characteristic {}", self.euler_characteristic()));
        }
        if let Some(&first) = self.boundary.first() {
            if self.darts[first].origin != self.base {
                return bad("boundary does not start at the base".into());
            }
            let mut e = first;
            for (i, &d) in self.boundary.iter().enumerate() {
                if e != d || self.darts[d].face.is_some() {
                    return bad(format!("boundary walk diverges at step {i}"));
                }
                e = self.next(d);
            }
            if e != first {
                return bad("boundary walk does not close".into());
            }
        }
        Ok(())
    }

    /// Renumbers live darts and vertices densely, preserving order.
    pub(crate) fn compact(&mut self) {
        let mut dmap = vec![usize::MAX; self.darts.len()];
        let mut k = 0;
        for d in 0..self.darts.len() {
            if self.darts[d].alive {
                dmap[d] = k;
                k += 1;
            }
        }
        let mut vmap = vec![usize::MAX; self.vertex_alive.len()];
        let mut k = 0;
        for v in 0..self.vertex_alive.len() {
            if self.vertex_alive[v] {
                vmap[v] = k;
                k += 1;
            }
        }
        let darts = self
            .darts
            .iter()
            .filter(|d| d.alive)
            .map(|d| Dart {
                origin: vmap[d.origin],
                label: d.label,
                twin: dmap[d.twin],
                face: d.face,
                alive: true,
            })
            .collect();
        let rot = (0..self.rot.len())
            .filter(|&v| self.vertex_alive[v])
            .map(|v| self.rot[v].iter().map(|&d| dmap[d]).collect())
            .collect();
        if let Some(c) = &self.coords {
            self.coords = Some(
                (0..c.len())
                    .filter(|&v| self.vertex_alive[v])
                    .map(|v| c[v])
                    .collect(),
            );
        }
        self.darts = darts;
        self.rot = rot;
        self.vertex_alive = vec![true; k];
        self.boundary = self.boundary.iter().map(|&d| dmap[d]).collect();
        self.base = vmap[self.base];
    }
}
