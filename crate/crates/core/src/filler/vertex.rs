use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::filler::build::{power, Assembler, Front};
use crate::filler::complex::{CellKind, VKey};
use crate::geometry::line_hit;
use crate::words::Letter;

impl<'c, 'a> Assembler<'c, 'a> {
    /// Fronts around `v` in counter-clockwise order, starting after the
    /// outer sector at boundary vertices.
    fn ring(&self, v: usize) -> Vec<Front> {
        let r = self.emb.diagram.rotation(v);
        let k = r.len();
        let start = (0..k)
            .find(|&i| self.sector_letter(r[i]).is_none())
            .map(|i| (i + 1) % k)
            .unwrap_or(0);
        (0..k)
            .flat_map(|s| self.junctions.get(&r[(start + s) % k]).cloned().unwrap_or_default())
            .collect()
    }

    pub fn process_vertices(&mut self) -> Result<()> {
        let d = &self.emb.diagram;
        let boundary: BTreeSet<usize> = d.boundary_vertices().into_iter().collect();
        let vs: Vec<usize> = d.vertices().collect();
        for v in vs {
            let ring = self.ring(v);
            if boundary.contains(&v) {
                for f in ring {
                    self.adjust(v, &f)?;
                }
            } else {
                self.close_ring(v, ring)?;
            }
        }
        Ok(())
    }

    fn close_ring(&mut self, v: usize, mut ring: Vec<Front>) -> Result<()> {
        let mut step = 0;
        while !ring.is_empty() {
            let k = ring.len();
            if let Some(i) = (0..k).find(|&i| ring[i].dirs.0 == ring[(i + 1) % k].dirs.1) {
                let j = (i + 1) % k;
                for a in 0..=self.n {
                    for b in 0..=self.n {
                        self.b.union(ring[i].grid[a][b], ring[j].grid[b][a])?;
                    }
                }
                self.folds += 1;
                let (hi, lo) = (i.max(j), i.min(j));
                ring.remove(hi);
                ring.remove(lo);
                continue;
            }
            let cube = (0..k).find(|&i| {
                let (y1, y2) = ring[i].dirs;
                let y3 = ring[(i + 1) % k].dirs.1;
                y1.gen != y2.gen && y2.gen != y3.gen && y1.gen != y3.gen
            });
            if let Some(i) = cube {
                let j = (i + 1) % k;
                let f = self.vertex_cube(v, step, &ring[i], &ring[j])?;
                step += 1;
                ring[i] = f;
                ring.remove(j);
                continue;
            }
            return self.vertex_prism(v, &ring);
        }
        Ok(())
    }

    /// `[0,N]^3` with axes `p = y2`, `q = y1`, `r = y3`, glued to
    /// `f1 = (y1, y2)` at `r = 0` and `f2 = (y2, y3)` at `q = 0`. Returns
    /// the new front `(y1, y3)` at `p = 0`.
    fn vertex_cube(&mut self, v: usize, step: usize, f1: &Front, f2: &Front) -> Result<Front> {
        let n = self.n;
        let (y1, y2) = f1.dirs;
        let y3 = f2.dirs.1;
        let mut id = vec![vec![vec![0usize; n + 1]; n + 1]; n + 1];
        for p in 0..=n {
            for q in 0..=n {
                for r in 0..=n {
                    id[p][q][r] = if r == 0 {
                        f1.grid[q][p]
                    } else if q == 0 {
                        f2.grid[p][r]
                    } else {
                        let img = power(self.image(v), &[(y2, p as i64), (y1, q as i64), (y3, r as i64)]);
                        self.b.vertex(VKey::VertexCube { vertex: v, step, p, q, r }, &img)?
                    };
                }
            }
        }
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    let c = |i: usize, j: usize, k: usize| id[p + i][q + j][r + k];
                    self.b.cube(
                        CellKind::VertexCube,
                        [
                            [[c(0, 0, 0), c(0, 0, 1)], [c(0, 1, 0), c(0, 1, 1)]],
                            [[c(1, 0, 0), c(1, 0, 1)], [c(1, 1, 0), c(1, 1, 1)]],
                        ],
                    );
                }
            }
        }
        Ok(Front {
            dirs: (y1, y3),
            grid: (0..=n).map(|q| (0..=n).map(|r| id[0][q][r]).collect()).collect(),
        })
    }

    /// Four fronts tiling a plane around `v`, thickened by `[0,N]` in a
    /// spare direction of `T`.
    fn vertex_prism(&mut self, v: usize, ring: &[Front]) -> Result<()> {
        let gens: BTreeSet<_> = ring.iter().flat_map(|f| [f.dirs.0.gen, f.dirs.1.gen]).collect();
        if ring.len() != 4 || gens.len() != 2 {
            return Err(Error::filling(
                "vertex",
                format!("fronts at vertex {v} neither fold, span a cube nor tile a plane"),
            ));
        }
        let gens: Vec<_> = gens.into_iter().collect();
        let z = self
            .ctx
            .spare_t(&gens)
            .map(Letter::pos)
            .ok_or_else(|| Error::filling("vertex", "no spare direction in T"))?;
        let coord = |l: Letter, k: usize| {
            let mut c = (0i64, 0i64);
            let s = l.sign() * k as i64;
            if l.gen == gens[0] {
                c.0 = s
            } else {
                c.1 = s
            }
            c
        };
        let n = self.n;
        for f in ring {
            let (d0, d1) = f.dirs;
            let mut layers = vec![f.grid.clone()];
            for h in 1..=n {
                let mut g = vec![vec![0; n + 1]; n + 1];
                for a in 0..=n {
                    for b in 0..=n {
                        let (u, w) = (coord(d0, a), coord(d1, b));
                        let img = power(self.image(v), &[(d0, a as i64), (d1, b as i64), (z, h as i64)]);
                        let key = VKey::VertexPrism {
                            vertex: v,
                            c: (u.0 + w.0, u.1 + w.1),
                            h,
                        };
                        g[a][b] = self.b.vertex(key, &img)?;
                    }
                }
                layers.push(g);
            }
            for h in 0..n {
                for a in 0..n {
                    for b in 0..n {
                        let c = |i: usize, j: usize, k: usize| layers[h + k][a + i][b + j];
                        self.b.cube(
                            CellKind::VertexPrism,
                            [
                                [[c(0, 0, 0), c(0, 0, 1)], [c(0, 1, 0), c(0, 1, 1)]],
                                [[c(1, 0, 0), c(1, 0, 1)], [c(1, 1, 0), c(1, 1, 1)]],
                            ],
                        );
                    }
                }
            }
        }
        Ok(())
    }

    /// A boundary front touching the ball is pushed off by a block
    /// `[-L1, N+L1]^2 x [0,J]` unless one of its axis lines meets the
    /// `M1` ball.
    fn adjust(&mut self, v: usize, f: &Front) -> Result<()> {
        let o = self.ctx.oracle;
        let m = self.ctx.m;
        let (x, y) = f.dirs;
        let z = match self.ctx.spare_t(&[x.gen, y.gen]) {
            Some(z) => Letter::pos(z),
            None => return Ok(()),
        };
        let q = self.image(v).clone();
        let m1 = self.ctx.m1();
        if [x, y, z].iter().any(|&l| line_hit(o, &q, l, m1).is_some()) {
            return Ok(());
        }
        let touches = f
            .grid
            .iter()
            .flatten()
            .any(|&id| o.distance(self.b.image(id)) <= m);
        if !touches {
            return Ok(());
        }
        let n = self.n as i64;
        let l = self.ctx.l1() as i64;
        let range = -l..=n + l;
        let clear = |j: i64| {
            range.clone().all(|a| {
                range
                    .clone()
                    .all(|b| o.distance(&power(&q, &[(x, a), (y, b), (z, j)])) > m)
            })
        };
        let bound = (o.distance(&q) + m) as i64 + 2 * (n + l) + 2;
        let jmax = (1..=bound)
            .find(|&j| clear(j))
            .ok_or_else(|| Error::filling("adjust", format!("no clearing height at vertex {v}")))?;
        let tag = self.adjusts;
        self.adjusts += 1;
        let side = (2 * l + n + 1) as usize;
        let mut layers = Vec::new();
        for h in 0..=jmax {
            let mut g = vec![vec![0usize; side]; side];
            for (ia, a) in range.clone().enumerate() {
                for (ib, b) in range.clone().enumerate() {
                    g[ia][ib] = if h == 0 && (0..=n).contains(&a) && (0..=n).contains(&b) {
                        f.grid[a as usize][b as usize]
                    } else {
                        let img = power(&q, &[(x, a), (y, b), (z, h)]);
                        let key = VKey::Adjust {
                            face: tag,
                            i: a,
                            j: b,
                            h: h as usize,
                        };
                        self.b.vertex(key, &img)?
                    };
                }
            }
            layers.push(g);
        }
        for h in 0..jmax as usize {
            for a in 0..side - 1 {
                for b in 0..side - 1 {
                    let c = |i: usize, j: usize, k: usize| layers[h + k][a + i][b + j];
                    self.b.cube(
                        CellKind::AdjustCube,
                        [
                            [[c(0, 0, 0), c(0, 0, 1)], [c(0, 1, 0), c(0, 1, 1)]],
                            [[c(1, 0, 0), c(1, 0, 1)], [c(1, 1, 0), c(1, 1, 1)]],
                        ],
                    );
                }
            }
        }
        self.notes.push(format!("adjusted front at vertex {v} by height {jmax}"));
        Ok(())
    }
}
