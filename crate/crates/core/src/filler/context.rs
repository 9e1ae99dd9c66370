use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{ray_hit, ray_last_hit, BallMembers, GroupOracle, LemmaConstants};
use crate::hypothesis::{all_relators, check_hypothesis, HypothesisCertificate, TSpec};
use crate::vankampen::DiagramEmbedding;
use crate::words::{GeneratorId, Letter};

/// Everything the filler needs about the ambient complex for one ball
/// radius `m`.
pub struct CayleyComplexContext<'a> {
    pub oracle: &'a dyn GroupOracle,
    pub t: TSpec,
    pub certificate: HypothesisCertificate,
    pub constants: LemmaConstants<'a>,
    pub m: usize,
    /// Longest relator length.
    pub w: usize,
    pub(crate) ball: BallMembers,
}

impl<'a> CayleyComplexContext<'a> {
    pub fn new(oracle: &'a dyn GroupOracle, t: TSpec, m: usize) -> Result<Self> {
        let p = oracle.presentation();
        let certificate = check_hypothesis(p, &t, &all_relators(p))
            .map_err(|f| Error::InvalidInput(format!("hypothesis fails: {}", f.describe(p))))?;
        let w = p.relators().iter().map(|r| r.len()).max().unwrap_or(0);
        Ok(CayleyComplexContext {
            oracle,
            constants: LemmaConstants::new(oracle, &t.members, w),
            ball: BallMembers::new(oracle, m)?,
            t,
            certificate,
            m,
            w,
        })
    }

    pub fn m1(&self) -> usize {
        self.constants.m1(self.m)
    }

    pub fn l1(&self) -> usize {
        self.constants.l1(self.m)
    }

    pub fn threshold(&self) -> usize {
        self.constants.threshold(self.m)
    }

    /// Direction of the strip between cells assigned `x` and `x^-1` across
    /// an edge labelled `s`.
    pub fn strip_direction(&self, x: Letter, s: Letter) -> Option<Letter> {
        let comm = self.oracle.presentation().commutation_graph();
        let mut ms = self.t.members.clone();
        ms.sort();
        ms.into_iter()
            .find(|&g| g != x.gen && g != s.gen && comm.commutes(g, s.gen))
            .map(Letter::pos)
    }

    /// Least member of `T` outside `avoid`.
    pub fn spare_t(&self, avoid: &[GeneratorId]) -> Option<GeneratorId> {
        let mut ms = self.t.members.clone();
        ms.sort();
        ms.into_iter().find(|g| !avoid.contains(g))
    }
}

/// Per-cell direction letters, keyed by diagram face id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellAssignment {
    pub letters: BTreeMap<usize, Letter>,
    /// Boundary vertex whose ray decided the sign, for boundary cells.
    pub anchors: BTreeMap<usize, usize>,
}

/// Rejects loops with a vertex within the threshold radius.
pub fn check_far(ctx: &CayleyComplexContext<'_>, emb: &DiagramEmbedding) -> Result<()> {
    let th = ctx.threshold();
    for v in emb.diagram.boundary_vertices() {
        let d = ctx.oracle.distance(emb.image(v));
        if d <= th {
            return Err(Error::InvalidInput(format!(
                "loop vertex {v} at distance {d}, threshold is {th}"
            )));
        }
    }
    Ok(())
}

/// Assigns `t_r` to each cell, negated for a boundary cell whose ray from
/// its first boundary vertex enters the `M1 + W` ball.
pub fn assign_cells(ctx: &CayleyComplexContext<'_>, emb: &DiagramEmbedding) -> Result<CellAssignment> {
    let d = &emb.diagram;
    let on_boundary: BTreeSet<usize> = d.boundary_vertices().into_iter().collect();
    let radius = ctx.m1() + ctx.w;
    let mut out = CellAssignment {
        letters: BTreeMap::new(),
        anchors: BTreeMap::new(),
    };
    for (f, orbit) in d.inner_faces() {
        let rel = d.faces()[f].relator;
        let t = *ctx
            .certificate
            .t_assignment
            .get(&rel)
            .ok_or_else(|| Error::filling("assign", format!("no t for relator {rel}")))?;
        let mut x = Letter::pos(t);
        if let Some(v) = orbit
            .iter()
            .map(|&e| d.darts()[e].origin)
            .find(|v| on_boundary.contains(v))
        {
            if ray_hit(ctx.oracle, emb.image(v), x, radius).is_some() {
                x = x.inv();
            }
            out.anchors.insert(f, v);
        }
        out.letters.insert(f, x);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightReport {
    /// Least height above which every prism clears the ball.
    pub n_cells: usize,
    pub t_max: i64,
    pub n: usize,
}

/// `N = max(max_C N_C, 1 + max T_of)`. `T_of` runs over all vertices, with
/// `x` an assigned or strip direction and `y` any `T` letter on another
/// generator.
pub fn compute_n(
    ctx: &CayleyComplexContext<'_>,
    emb: &DiagramEmbedding,
    assign: &CellAssignment,
) -> HeightReport {
    let d = &emb.diagram;
    let mut n_cells = 0usize;
    for (f, orbit) in d.inner_faces() {
        let x = assign.letters[&f];
        for &e in &orbit {
            let v = d.darts()[e].origin;
            if let Some(h) = ray_last_hit(ctx.oracle, emb.image(v), x, ctx.m) {
                n_cells = n_cells.max(h as usize + 1);
            }
        }
    }
    let letters: Vec<Letter> = ctx
        .t
        .members
        .iter()
        .flat_map(|&g| [Letter::pos(g), Letter::neg(g)])
        .collect();
    let mut dirs: BTreeSet<Letter> = assign.letters.values().copied().collect();
    for e in d.live_darts() {
        let t = d.darts()[e].twin;
        if let (Some(f), Some(g)) = (d.darts()[e].face, d.darts()[t].face) {
            let (x, y) = (assign.letters[&f], assign.letters[&g]);
            if x == y.inv() {
                dirs.extend(ctx.strip_direction(x, d.darts()[e].label));
            }
        }
    }
    let mut t_max = 1i64;
    for v in d.vertices() {
        for &x in &dirs {
            for &y in &letters {
                if x.gen != y.gen {
                    t_max = t_max.max(ctx.ball.t_of(ctx.oracle, emb.image(v), x, y));
                }
            }
        }
    }
    HeightReport {
        n_cells,
        t_max,
        n: n_cells.max(1 + t_max as usize),
    }
}
