use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::GroupOracle;
use crate::words::{Letter, Word};

/// Structured vertex names used during assembly. Keys naming the same point
/// are merged by union-find.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VKey {
    /// Diagram vertex at height 0.
    Base(usize),
    /// Column over a diagram vertex for a run of equally assigned cells,
    /// identified by the dart of the run's first sector.
    Col { vertex: usize, run: usize, h: usize },
    /// z-strip of a double cube over `edge` at endpoint `end`.
    ZCol { edge: usize, end: usize, h: usize },
    /// Interior lattice point of an edge cube (`part` 0 or 1 for the two
    /// halves of a double cube).
    Ke { edge: usize, part: u8, a: usize, b: usize, end: usize },
    Adjust { face: usize, i: i64, j: i64, h: usize },
    VertexCube { vertex: usize, step: usize, p: usize, q: usize, r: usize },
    VertexPrism { vertex: usize, c: (i64, i64), h: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellKind {
    Prism,
    EdgeCube,
    DoubleCube,
    AdjustCube,
    VertexCube,
    VertexPrism,
}

/// 3-cells by kind, plus the number of face identifications.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellCounts {
    pub prisms: usize,
    pub edge_cubes: usize,
    pub double_cubes: usize,
    pub adjust_cubes: usize,
    pub vertex_cubes: usize,
    pub vertex_prisms: usize,
    pub folds: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "dim", rename_all = "snake_case")]
pub enum CollapseStep {
    /// Remove a 3-cell through one of its free 2-faces.
    Cell { face: usize, cell: usize },
    Face { edge: usize, face: usize },
    Edge { vertex: usize, edge: usize },
}

/// Raw 3-cell: a list of faces, each a cycle of raw vertex ids.
struct RawCell {
    kind: CellKind,
    faces: Vec<Vec<usize>>,
}

pub(crate) struct ComplexBuilder<'o> {
    oracle: &'o dyn GroupOracle,
    ids: HashMap<VKey, usize>,
    images: Vec<Word>,
    parent: Vec<usize>,
    cells: Vec<RawCell>,
}

impl<'o> ComplexBuilder<'o> {
    pub fn new(oracle: &'o dyn GroupOracle) -> Self {
        ComplexBuilder {
            oracle,
            ids: HashMap::new(),
            images: vec![],
            parent: vec![],
            cells: vec![],
        }
    }

    /// Interns `key` with image `image`; a repeated key must carry the same
    /// image.
    pub fn vertex(&mut self, key: VKey, image: &Word) -> Result<usize> {
        let nf = self.oracle.normal_form(image);
        if let Some(&id) = self.ids.get(&key) {
            if self.images[id] != nf {
                return Err(Error::filling("assembly", format!("image clash at {key:?}")));
            }
            return Ok(id);
        }
        let id = self.images.len();
        self.images.push(nf);
        self.parent.push(id);
        self.ids.insert(key, id);
        Ok(id)
    }

    pub fn lookup(&self, key: &VKey) -> Option<usize> {
        self.ids.get(key).copied()
    }

    pub fn image(&self, id: usize) -> &Word {
        &self.images[id]
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> Result<()> {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return Ok(());
        }
        if self.images[ra] != self.images[rb] {
            return Err(Error::filling("fold", "identified points have different images"));
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        Ok(())
    }

    /// Unit cube from `c[i][j][k]`.
    pub fn cube(&mut self, kind: CellKind, c: [[[usize; 2]; 2]; 2]) {
        let f = |a: [usize; 4]| a.to_vec();
        let faces = vec![
            f([c[0][0][0], c[0][1][0], c[0][1][1], c[0][0][1]]),
            f([c[1][0][0], c[1][1][0], c[1][1][1], c[1][0][1]]),
            f([c[0][0][0], c[1][0][0], c[1][0][1], c[0][0][1]]),
            f([c[0][1][0], c[1][1][0], c[1][1][1], c[0][1][1]]),
            f([c[0][0][0], c[1][0][0], c[1][1][0], c[0][1][0]]),
            f([c[0][0][1], c[1][0][1], c[1][1][1], c[0][1][1]]),
        ];
        self.cells.push(RawCell { kind, faces });
    }

    /// Prism over a polygon: bottom cycle and top cycle, index-aligned.
    pub fn prism(&mut self, bottom: &[usize], top: &[usize]) {
        let k = bottom.len();
        let mut faces = vec![bottom.to_vec(), top.to_vec()];
        for i in 0..k {
            let j = (i + 1) % k;
            faces.push(vec![bottom[i], bottom[j], top[j], top[i]]);
        }
        self.cells.push(RawCell {
            kind: CellKind::Prism,
            faces,
        });
    }

    /// Resolves identifications and produces the dense complex.
    pub fn finish(
        mut self,
        v_faces: &[Vec<usize>],
        loop_vertices: &[usize],
        base: usize,
        folds: usize,
    ) -> Result<Ball3Complex> {
        let mut counts = CellCounts {
            folds,
            ..CellCounts::default()
        };
        for c in &self.cells {
            *match c.kind {
                CellKind::Prism => &mut counts.prisms,
                CellKind::EdgeCube => &mut counts.edge_cubes,
                CellKind::DoubleCube => &mut counts.double_cubes,
                CellKind::AdjustCube => &mut counts.adjust_cubes,
                CellKind::VertexCube => &mut counts.vertex_cubes,
                CellKind::VertexPrism => &mut counts.vertex_prisms,
            } += 1;
        }
        let n = self.images.len();
        let roots: Vec<usize> = (0..n).map(|x| self.find(x)).collect();
        let mut dense = vec![usize::MAX; n];
        let mut images = Vec::new();
        for x in 0..n {
            if roots[x] == x {
                dense[x] = images.len();
                images.push(self.images[x].clone());
            }
        }
        let map = |x: usize| dense[roots[x]];
        let mut face_ids: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut faces: Vec<Vec<usize>> = Vec::new();
        let mut intern_face = |cyc: &[usize]| -> Result<usize> {
            let cyc: Vec<usize> = cyc.iter().map(|&x| map(x)).collect();
            if cyc.iter().collect::<BTreeSet<_>>().len() != cyc.len() {
                return Err(Error::filling("assembly", "degenerate face"));
            }
            let key = canonical_cycle(&cyc);
            Ok(*face_ids.entry(key).or_insert_with(|| {
                faces.push(cyc.clone());
                faces.len() - 1
            }))
        };
        let mut cells = Vec::new();
        for c in &self.cells {
            let fs = c
                .faces
                .iter()
                .map(|f| intern_face(f))
                .collect::<Result<Vec<_>>>()?;
            cells.push(Cell3 {
                kind: c.kind,
                faces: fs,
            });
        }
        let v_faces = v_faces
            .iter()
            .map(|f| intern_face(f))
            .collect::<Result<Vec<_>>>()?;
        let mut edge_ids: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut edges = Vec::new();
        for f in &faces {
            for i in 0..f.len() {
                let (a, b) = (f[i], f[(i + 1) % f.len()]);
                let key = (a.min(b), a.max(b));
                if edge_ids.contains_key(&key) {
                    continue;
                }
                let l = edge_letter(self.oracle, &images[key.0], &images[key.1]).ok_or_else(|| {
                    Error::filling("assembly", format!("edge {key:?} is not a generator step"))
                })?;
                edge_ids.insert(key, edges.len());
                edges.push((key.0, key.1, l));
            }
        }
        let mut complex = Ball3Complex {
            vertex_images: images,
            edges,
            faces,
            cells,
            v_faces,
            loop_vertices: loop_vertices.iter().map(|&x| map(x)).collect(),
            base_vertex: map(base),
            collapse_order: vec![],
            counts,
        };
        complex.collapse_order = greedy_collapse(&complex)?;
        Ok(complex)
    }
}

/// Rotation- and reflection-invariant key of a vertex cycle.
pub(crate) fn canonical_cycle(c: &[usize]) -> Vec<usize> {
    let n = c.len();
    let mut best: Option<Vec<usize>> = None;
    for rev in [false, true] {
        for s in 0..n {
            let v: Vec<usize> = (0..n)
                .map(|i| if rev { c[(s + n - i) % n] } else { c[(s + i) % n] })
                .collect();
            if best.as_ref().map_or(true, |b| v < *b) {
                best = Some(v);
            }
        }
    }
    best.unwrap_or_default()
}

/// The letter `l` with `a · l = b`, if any.
pub(crate) fn edge_letter(o: &dyn GroupOracle, a: &Word, b: &Word) -> Option<Letter> {
    o.presentation()
        .letters()
        .into_iter()
        .find(|&l| o.mul_letter(a, l) == *b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell3 {
    pub kind: CellKind,
    pub faces: Vec<usize>,
}

/// The assembled 3-ball: cells, faces and edges over vertex images, plus
/// the diagram subcomplex and a collapse order onto it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball3Complex {
    pub vertex_images: Vec<Word>,
    /// `(u, v, l)` with `u < v` and `image(v) = image(u) · l`.
    pub edges: Vec<(usize, usize, Letter)>,
    pub faces: Vec<Vec<usize>>,
    pub cells: Vec<Cell3>,
    pub v_faces: Vec<usize>,
    pub loop_vertices: Vec<usize>,
    pub base_vertex: usize,
    pub collapse_order: Vec<CollapseStep>,
    pub counts: CellCounts,
}

impl Ball3Complex {
    pub fn edge_index(&self) -> BTreeMap<(usize, usize), usize> {
        self.edges
            .iter()
            .enumerate()
            .map(|(i, &(a, b, _))| ((a, b), i))
            .collect()
    }

    pub fn face_edges(&self, f: usize, idx: &BTreeMap<(usize, usize), usize>) -> Vec<usize> {
        let c = &self.faces[f];
        (0..c.len())
            .map(|i| {
                let (a, b) = (c[i], c[(i + 1) % c.len()]);
                idx[&(a.min(b), a.max(b))]
            })
            .collect()
    }

    /// Word read around face `f` starting at its first vertex.
    pub fn face_word(&self, f: usize, idx: &BTreeMap<(usize, usize), usize>) -> Word {
        let c = &self.faces[f];
        Word::raw(
            (0..c.len())
                .map(|i| {
                    let (a, b) = (c[i], c[(i + 1) % c.len()]);
                    let (_, _, l) = self.edges[idx[&(a.min(b), a.max(b))]];
                    if a < b {
                        l
                    } else {
                        l.inv()
                    }
                })
                .collect(),
        )
    }
}

/// Collapses 3-cells (latest first), then 2-cells, then edges, never
/// touching the diagram subcomplex.
fn greedy_collapse(k: &Ball3Complex) -> Result<Vec<CollapseStep>> {
    let idx = k.edge_index();
    let v_faces: BTreeSet<usize> = k.v_faces.iter().copied().collect();
    let mut v_edges = BTreeSet::new();
    let mut v_verts = BTreeSet::new();
    for &f in &v_faces {
        for e in k.face_edges(f, &idx) {
            v_edges.insert(e);
            v_verts.insert(k.edges[e].0);
            v_verts.insert(k.edges[e].1);
        }
    }
    let mut steps = Vec::new();

    let mut face_cofaces: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k.faces.len()];
    for (c, cell) in k.cells.iter().enumerate() {
        for &f in &cell.faces {
            face_cofaces[f].insert(c);
        }
    }
    let mut face_alive = vec![true; k.faces.len()];
    let mut cell_alive = vec![true; k.cells.len()];
    loop {
        let mut progress = false;
        for c in (0..k.cells.len()).rev() {
            if !cell_alive[c] {
                continue;
            }
            let free = k.cells[c].faces.iter().copied().find(|&f| {
                face_alive[f] && !v_faces.contains(&f) && face_cofaces[f].len() == 1
            });
            if let Some(f) = free {
                cell_alive[c] = false;
                face_alive[f] = false;
                for &g in &k.cells[c].faces {
                    face_cofaces[g].remove(&c);
                }
                steps.push(CollapseStep::Cell { face: f, cell: c });
                progress = true;
            }
        }
        if !progress {
            break;
        }
    }
    if cell_alive.iter().any(|&a| a) {
        return Err(Error::filling("collapse", "3-cells remain with no free face"));
    }

    let mut edge_cofaces: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k.edges.len()];
    for f in 0..k.faces.len() {
        if face_alive[f] {
            for e in k.face_edges(f, &idx) {
                edge_cofaces[e].insert(f);
            }
        }
    }
    loop {
        let mut progress = false;
        for f in (0..k.faces.len()).rev() {
            if !face_alive[f] || v_faces.contains(&f) {
                continue;
            }
            let es = k.face_edges(f, &idx);
            if let Some(&e) = es
                .iter()
                .find(|&&e| !v_edges.contains(&e) && edge_cofaces[e].len() == 1)
            {
                face_alive[f] = false;
                for g in es {
                    edge_cofaces[g].remove(&f);
                }
                edge_cofaces[e].clear();
                edge_cofaces[e].insert(usize::MAX);
                steps.push(CollapseStep::Face { edge: e, face: f });
                progress = true;
            }
        }
        if !progress {
            break;
        }
    }
    if (0..k.faces.len()).any(|f| face_alive[f] && !v_faces.contains(&f)) {
        return Err(Error::filling("collapse", "2-cells remain with no free edge"));
    }

    // edges still present: never removed and not in V
    let removed: BTreeSet<usize> = steps
        .iter()
        .filter_map(|s| match s {
            CollapseStep::Face { edge, .. } => Some(*edge),
            _ => None,
        })
        .collect();
    let mut edge_alive: Vec<bool> = (0..k.edges.len()).map(|e| !removed.contains(&e)).collect();
    let mut vert_deg = vec![0usize; k.vertex_images.len()];
    for e in 0..k.edges.len() {
        if edge_alive[e] {
            vert_deg[k.edges[e].0] += 1;
            vert_deg[k.edges[e].1] += 1;
        }
    }
    let mut vert_alive = vec![true; k.vertex_images.len()];
    loop {
        let mut progress = false;
        for e in (0..k.edges.len()).rev() {
            if !edge_alive[e] || v_edges.contains(&e) {
                continue;
            }
            let (a, b, _) = k.edges[e];
            let free = [b, a]
                .into_iter()
                .find(|&x| !v_verts.contains(&x) && vert_deg[x] == 1);
            if let Some(x) = free {
                edge_alive[e] = false;
                vert_alive[x] = false;
                vert_deg[a] -= 1;
                vert_deg[b] -= 1;
                steps.push(CollapseStep::Edge { vertex: x, edge: e });
                progress = true;
            }
        }
        if !progress {
            break;
        }
    }
    if (0..k.edges.len()).any(|e| edge_alive[e] && !v_edges.contains(&e))
        || (0..k.vertex_images.len()).any(|x| vert_alive[x] && !v_verts.contains(&x))
    {
        return Err(Error::filling("collapse", "1-cells remain outside the diagram"));
    }
    Ok(steps)
}
