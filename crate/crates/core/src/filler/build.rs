use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::filler::complex::{Ball3Complex, CellKind, ComplexBuilder, VKey};
use crate::filler::context::{CayleyComplexContext, CellAssignment};
use crate::vankampen::DiagramEmbedding;
use crate::words::{Letter, Word};

/// Free square `[0,N]^2` at a vertex, spanned by two directions.
/// `grid[i][j]` is the point `dirs.0^i dirs.1^j`.
#[derive(Clone, Debug)]
pub(crate) struct Front {
    pub dirs: (Letter, Letter),
    pub grid: Vec<Vec<usize>>,
}

pub(crate) struct Assembler<'c, 'a> {
    pub ctx: &'c CayleyComplexContext<'a>,
    pub emb: &'c DiagramEmbedding,
    pub letters: &'c BTreeMap<usize, Letter>,
    pub n: usize,
    pub b: ComplexBuilder<'a>,
    run: HashMap<usize, usize>,
    /// Fronts at a junction dart, counter-clockwise around its origin.
    pub junctions: BTreeMap<usize, Vec<Front>>,
    pub folds: usize,
    pub adjusts: usize,
    pub notes: Vec<String>,
}

pub(crate) fn power(w: &Word, parts: &[(Letter, i64)]) -> Word {
    let mut out = w.clone();
    for &(l, k) in parts {
        out = out.concat_raw(&Word::power(l, k));
    }
    out
}

impl<'c, 'a> Assembler<'c, 'a> {
    pub fn new(
        ctx: &'c CayleyComplexContext<'a>,
        emb: &'c DiagramEmbedding,
        assign: &'c CellAssignment,
        n: usize,
    ) -> Result<Self> {
        let mut a = Assembler {
            ctx,
            emb,
            letters: &assign.letters,
            n,
            b: ComplexBuilder::new(ctx.oracle),
            run: HashMap::new(),
            junctions: BTreeMap::new(),
            folds: 0,
            adjusts: 0,
            notes: vec![],
        };
        for (f, _) in emb.diagram.inner_faces() {
            if !a.letters.contains_key(&f) {
                return Err(Error::filling("assign", format!("cell {f} has no letter")));
            }
        }
        a.compute_runs();
        Ok(a)
    }

    pub fn sector_letter(&self, dart: usize) -> Option<Letter> {
        self.emb.diagram.darts()[dart].face.map(|f| self.letters[&f])
    }

    pub fn pred(&self, dart: usize) -> usize {
        let d = &self.emb.diagram;
        let r = d.rotation(d.darts()[dart].origin);
        let i = r.iter().position(|&x| x == dart).expect("dart in rotation");
        r[(i + r.len() - 1) % r.len()]
    }

    /// Runs: maximal arcs of consecutive equally assigned sectors around a
    /// vertex, named by the dart of their first sector.
    fn compute_runs(&mut self) {
        let d = &self.emb.diagram;
        for v in d.vertices() {
            let r = d.rotation(v).to_vec();
            let k = r.len();
            if k == 0 {
                continue;
            }
            let l: Vec<Option<Letter>> = r.iter().map(|&x| self.sector_letter(x)).collect();
            let start = (0..k).find(|&i| l[i].is_none() || l[i] != l[(i + k - 1) % k]);
            let start = match start {
                Some(s) => s,
                None => {
                    for &x in &r {
                        self.run.insert(x, r[0]);
                    }
                    continue;
                }
            };
            let mut cur = r[start];
            for s in 0..k {
                let i = (start + s) % k;
                if l[i].is_none() || l[i] != l[(i + k - 1) % k] {
                    cur = r[i];
                }
                self.run.insert(r[i], cur);
            }
        }
    }

    pub fn image(&self, v: usize) -> &Word {
        self.emb.image(v)
    }

    /// Column point at height `h` over `v` for the sector `dart`.
    pub fn col(&mut self, dart: usize, h: usize) -> Result<usize> {
        let v = self.emb.diagram.darts()[dart].origin;
        if h == 0 {
            let img = self.image(v).clone();
            return self.b.vertex(VKey::Base(v), &img);
        }
        let x = self
            .sector_letter(dart)
            .ok_or_else(|| Error::filling("assembly", "column over the outer face"))?;
        let img = power(self.image(v), &[(x, h as i64)]);
        let key = VKey::Col {
            vertex: v,
            run: self.run[&dart],
            h,
        };
        self.b.vertex(key, &img)
    }

    pub fn prisms(&mut self) -> Result<Vec<Vec<usize>>> {
        let mut v_faces = Vec::new();
        for (_, orbit) in self.emb.diagram.inner_faces() {
            let mut layers = Vec::with_capacity(self.n + 1);
            for h in 0..=self.n {
                layers.push(orbit.iter().map(|&e| self.col(e, h)).collect::<Result<Vec<_>>>()?);
            }
            for h in 0..self.n {
                self.b.prism(&layers[h], &layers[h + 1]);
            }
            v_faces.push(layers[0].clone());
        }
        Ok(v_faces)
    }

    /// Interior edges between differently assigned cells, as their least
    /// dart `v -> w` with `C1` on its left.
    fn junction_edges(&self) -> Vec<usize> {
        let d = &self.emb.diagram;
        d.live_darts()
            .filter(|&e| {
                let t = d.darts()[e].twin;
                e < t && {
                    let (x, y) = (self.sector_letter(e), self.sector_letter(t));
                    x.is_some() && y.is_some() && x != y
                }
            })
            .collect()
    }

    pub fn edges(&mut self) -> Result<()> {
        let comm = self.ctx.oracle.presentation().commutation_graph();
        for e in self.junction_edges() {
            let d = &self.emb.diagram;
            let t = d.darts()[e].twin;
            let s = d.darts()[e].label;
            let (x, y) = (self.sector_letter(e).unwrap(), self.sector_letter(t).unwrap());
            if !comm.commutes(x.gen, s.gen) || !comm.commutes(y.gen, s.gen) {
                return Err(Error::filling("edge", format!("assigned letters do not commute with edge {e}")));
            }
            // (C1, C2) sector darts at each endpoint
            let sectors = [(e, self.pred(e)), (self.pred(t), t)];
            let ends = [d.darts()[e].origin, d.darts()[t].origin];
            if x == y.inv() {
                let z = self
                    .ctx
                    .strip_direction(x, s)
                    .ok_or_else(|| Error::filling("edge", format!("no strip direction for edge {e}")))?;
                self.double_cube(e, ends, sectors, x, y, z)?;
            } else {
                if !comm.commutes(x.gen, y.gen) || x.gen == y.gen {
                    return Err(Error::filling("edge", format!("letters on edge {e} span no plane")));
                }
                self.edge_cube(e, ends, sectors, x, y)?;
            }
        }
        Ok(())
    }

    /// Vertex of a `[0,N]^2 x [0,1]` block: `a` along `p`, `b` along `q`;
    /// the axes are given by `axis_a(h)` and `axis_b(h)`.
    #[allow(clippy::too_many_arguments)]
    fn block_point(
        &mut self,
        edge: usize,
        part: u8,
        end: usize,
        v: usize,
        (p, q): (Letter, Letter),
        (a, b): (usize, usize),
        axis_a: &dyn Fn(&mut Self, usize) -> Result<usize>,
        axis_b: &dyn Fn(&mut Self, usize) -> Result<usize>,
    ) -> Result<usize> {
        if b == 0 {
            return axis_a(self, a);
        }
        if a == 0 {
            return axis_b(self, b);
        }
        let img = power(self.image(v), &[(p, a as i64), (q, b as i64)]);
        self.b.vertex(VKey::Ke { edge, part, a, b, end }, &img)
    }

    fn zcol(&mut self, edge: usize, end: usize, v: usize, z: Letter, h: usize) -> Result<usize> {
        if h == 0 {
            let img = self.image(v).clone();
            return self.b.vertex(VKey::Base(v), &img);
        }
        let img = power(self.image(v), &[(z, h as i64)]);
        self.b.vertex(VKey::ZCol { edge, end, h }, &img)
    }

    /// Grid of one block end: `g[a][b]`.
    #[allow(clippy::too_many_arguments)]
    fn block_grid(
        &mut self,
        edge: usize,
        part: u8,
        end: usize,
        v: usize,
        dirs: (Letter, Letter),
        axis_a: &dyn Fn(&mut Self, usize) -> Result<usize>,
        axis_b: &dyn Fn(&mut Self, usize) -> Result<usize>,
    ) -> Result<Vec<Vec<usize>>> {
        let n = self.n;
        let mut g = vec![vec![0; n + 1]; n + 1];
        for a in 0..=n {
            for b in 0..=n {
                g[a][b] = self.block_point(edge, part, end, v, dirs, (a, b), axis_a, axis_b)?;
            }
        }
        Ok(g)
    }

    fn block_cubes(&mut self, kind: CellKind, g: &[Vec<Vec<usize>>; 2]) {
        for a in 0..self.n {
            for b in 0..self.n {
                let c = |i: usize, j: usize, k: usize| g[k][a + i][b + j];
                self.b.cube(
                    kind,
                    [
                        [[c(0, 0, 0), c(0, 0, 1)], [c(0, 1, 0), c(0, 1, 1)]],
                        [[c(1, 0, 0), c(1, 0, 1)], [c(1, 1, 0), c(1, 1, 1)]],
                    ],
                );
            }
        }
    }

    fn push_front(&mut self, dart: usize, f: Front) {
        self.junctions.entry(dart).or_default().push(f);
    }

    fn edge_cube(
        &mut self,
        e: usize,
        ends: [usize; 2],
        sectors: [(usize, usize); 2],
        x: Letter,
        y: Letter,
    ) -> Result<()> {
        let mut g: [Vec<Vec<usize>>; 2] = [vec![], vec![]];
        for c in 0..2 {
            let (s1, s2) = sectors[c];
            g[c] = self.block_grid(
                e,
                0,
                c,
                ends[c],
                (x, y),
                &move |me: &mut Self, h| me.col(s1, h),
                &move |me: &mut Self, h| me.col(s2, h),
            )?;
        }
        self.block_cubes(CellKind::EdgeCube, &g);
        let t = self.emb.diagram.darts()[e].twin;
        self.push_front(e, Front { dirs: (y, x), grid: transpose(&g[0]) });
        self.push_front(t, Front { dirs: (x, y), grid: g[1].clone() });
        Ok(())
    }

    fn double_cube(
        &mut self,
        e: usize,
        ends: [usize; 2],
        sectors: [(usize, usize); 2],
        x: Letter,
        y: Letter,
        z: Letter,
    ) -> Result<()> {
        let mut g0: [Vec<Vec<usize>>; 2] = [vec![], vec![]];
        let mut g1: [Vec<Vec<usize>>; 2] = [vec![], vec![]];
        for c in 0..2 {
            let (s1, s2) = sectors[c];
            let v = ends[c];
            g0[c] = self.block_grid(
                e,
                0,
                c,
                v,
                (x, z),
                &move |me: &mut Self, h| me.col(s1, h),
                &move |me: &mut Self, h| me.zcol(e, c, v, z, h),
            )?;
            g1[c] = self.block_grid(
                e,
                1,
                c,
                v,
                (z, y),
                &move |me: &mut Self, h| me.zcol(e, c, v, z, h),
                &move |me: &mut Self, h| me.col(s2, h),
            )?;
        }
        self.block_cubes(CellKind::DoubleCube, &g0);
        self.block_cubes(CellKind::DoubleCube, &g1);
        let t = self.emb.diagram.darts()[e].twin;
        self.push_front(e, Front { dirs: (y, z), grid: transpose(&g1[0]) });
        self.push_front(e, Front { dirs: (z, x), grid: transpose(&g0[0]) });
        self.push_front(t, Front { dirs: (x, z), grid: g0[1].clone() });
        self.push_front(t, Front { dirs: (z, y), grid: g1[1].clone() });
        Ok(())
    }

    pub fn finish(self, v_faces: Vec<Vec<usize>>) -> Result<(Ball3Complex, Vec<String>)> {
        let d = &self.emb.diagram;
        let mut b = self.b;
        let base_img = self.emb.image(d.base()).clone();
        let base = b.vertex(VKey::Base(d.base()), &base_img)?;
        let loop_vertices: Vec<usize> = d
            .boundary_vertices()
            .into_iter()
            .map(|v| b.lookup(&VKey::Base(v)).expect("boundary vertex interned"))
            .collect();
        let k = b.finish(&v_faces, &loop_vertices, base, self.folds)?;
        Ok((k, self.notes))
    }
}

pub(crate) fn transpose(g: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = g.len();
    (0..n).map(|i| (0..n).map(|j| g[j][i]).collect()).collect()
}
