use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentations::Presentation;
use crate::vankampen::map::{Dart, FaceInfo, VanKampenDiagram};
use crate::words::{Letter, Word};

/// `b r^e b^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub conj: Word,
    pub relator: usize,
    pub exponent: i8,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConjugateProduct {
    pub factors: Vec<Factor>,
}

impl ConjugateProduct {
    pub fn new(factors: Vec<Factor>) -> Self {
        ConjugateProduct { factors }
    }

    /// The unreduced product word.
    pub fn word(&self, p: &Presentation) -> Word {
        let mut letters = Vec::new();
        for f in &self.factors {
            letters.extend_from_slice(f.conj.letters());
            letters.extend_from_slice(factor_loop(p, f).letters());
            letters.extend_from_slice(f.conj.invert().letters());
        }
        Word::raw(letters)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub conj: Vec<String>,
    pub relator: usize,
    pub exponent: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductJson {
    pub factors: Vec<FactorJson>,
}

impl ProductJson {
    pub fn resolve(&self, p: &Presentation) -> Result<ConjugateProduct> {
        let factors = self
            .factors
            .iter()
            .map(|f| {
                Ok(Factor {
                    conj: p.word_from_tokens(&f.conj)?,
                    relator: f.relator,
                    exponent: f.exponent,
                })
            })
            .collect::<Result<_>>()?;
        Ok(ConjugateProduct { factors })
    }
}

fn factor_loop(p: &Presentation, f: &Factor) -> Word {
    let r = &p.relators()[f.relator];
    if f.exponent < 0 {
        r.invert()
    } else {
        r.clone()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuildOptions {
    /// Re-check every invariant after each fold.
    pub audit: bool,
}

struct Builder {
    d: VanKampenDiagram,
}

impl Builder {
    fn add_vertex(&mut self) -> usize {
        self.d.rot.push(vec![]);
        self.d.vertex_alive.push(true);
        self.d.rot.len() - 1
    }

    /// Edge `from -> to` labelled `l`; returns `(forward, backward)` darts.
    /// Rotations are filled in by the caller.
    fn add_edge(&mut self, from: usize, to: usize, l: Letter, face_left_of_back: Option<usize>) -> (usize, usize) {
        let a = self.d.darts.len();
        self.d.darts.push(Dart {
            origin: from,
            label: l,
            twin: a + 1,
            face: None,
            alive: true,
        });
        self.d.darts.push(Dart {
            origin: to,
            label: l.inv(),
            twin: a,
            face: face_left_of_back,
            alive: true,
        });
        (a, a + 1)
    }
}

/// Wedge of lollipops at the base, in factor order, then boundary folding
/// until the boundary word is freely reduced.
pub fn build_diagram(
    p: &Presentation,
    prod: &ConjugateProduct,
    opts: BuildOptions,
) -> Result<VanKampenDiagram> {
    if prod.factors.is_empty() {
        return Err(Error::Diagram("conjugate product has no factors".into()));
    }
    p.check_diagram_ready()?;
    let mut b = Builder {
        d: VanKampenDiagram::single_vertex(),
    };
    let base = 0;
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (fi, f) in prod.factors.iter().enumerate() {
        if f.relator >= p.relators().len() || !matches!(f.exponent, 1 | -1) {
            return Err(Error::Diagram(format!("factor {fi} is malformed")));
        }
        let lp = factor_loop(p, f);
        b.d.faces.push(FaceInfo {
            relator: f.relator,
            exponent: f.exponent,
            word: lp.clone(),
            alive: true,
        });
        // stem
        let mut stem = Vec::new();
        let mut at = base;
        for &l in f.conj.iter() {
            let v = b.add_vertex();
            stem.push(b.add_edge(at, v, l, None));
            at = v;
        }
        let junction = at;
        // loop: interior on the left of the backward darts
        let n = lp.len();
        let mut ring = Vec::with_capacity(n);
        let mut prev = junction;
        for (j, &l) in lp.iter().enumerate() {
            let v = if j + 1 == n { junction } else { b.add_vertex() };
            ring.push(b.add_edge(prev, v, l, Some(fi)));
            prev = v;
        }
        for j in 0..n.saturating_sub(1) {
            let (_, back) = ring[j];
            let (fwd, _) = ring[j + 1];
            let v = b.d.darts[fwd].origin;
            b.d.rot[v] = vec![fwd, back];
        }
        for j in 0..stem.len().saturating_sub(1) {
            let (_, back) = stem[j];
            let (fwd, _) = stem[j + 1];
            let v = b.d.darts[fwd].origin;
            b.d.rot[v] = vec![fwd, back];
        }
        let g1 = ring[0].0;
        let gn_back = ring[n - 1].1;
        let block = if let (Some(&(f1, _)), Some(&(_, fk_back))) = (stem.first(), stem.last()) {
            b.d.rot[junction] = vec![g1, fk_back, gn_back];
            vec![f1]
        } else {
            vec![gn_back, g1]
        };
        blocks.push(block);
        let mut walk: Vec<usize> = stem.iter().map(|e| e.0).collect();
        walk.extend(ring.iter().map(|e| e.0));
        walk.extend(stem.iter().rev().map(|e| e.1));
        b.d.boundary.extend(walk);
    }
    b.d.rot[base] = blocks.into_iter().rev().flatten().collect();
    if opts.audit {
        b.d.check()?;
    }
    while let Some(i) = first_foldable(&b.d) {
        fold_at(&mut b.d, i)?;
        if opts.audit {
            b.d.check()?;
        }
    }
    b.d.compact();
    b.d.check()?;
    Ok(b.d)
}

fn first_foldable(d: &VanKampenDiagram) -> Option<usize> {
    d.boundary
        .windows(2)
        .position(|w| d.darts[w[0]].label.cancels(d.darts[w[1]].label))
}

fn remove_from_rot(d: &mut VanKampenDiagram, v: usize, dart: usize) {
    d.rot[v].retain(|&x| x != dart);
}

fn kill_dart(d: &mut VanKampenDiagram, x: usize) {
    let o = d.darts[x].origin;
    remove_from_rot(d, o, x);
    d.darts[x].alive = false;
}

/// Folds `boundary[i]` with `boundary[i + 1]`.
fn fold_at(d: &mut VanKampenDiagram, i: usize) -> Result<()> {
    let d1 = d.boundary[i];
    let d2 = d.boundary[i + 1];
    let p = d.darts[d1].origin;
    let u = d.head(d1);
    let q = d.head(d2);
    let t1 = d.darts[d1].twin;
    let t2 = d.darts[d2].twin;
    if d2 == t1 {
        // spur
        kill_dart(d, d1);
        kill_dart(d, d2);
        d.vertex_alive[u] = false;
        d.rot[u].clear();
    } else if u == p || u == q {
        return Err(Error::Diagram("fold across a loop edge".into()));
    } else if p != q {
        kill_dart(d, d2);
        d.darts[t1].twin = t2;
        d.darts[t2].twin = t1;
        let rq = std::mem::take(&mut d.rot[q]);
        let k = rq.iter().position(|&x| x == t2).expect("twin at q");
        let spliced: Vec<usize> = rq[k..].iter().chain(&rq[..k]).copied().collect();
        let pos = d.rot[p].iter().position(|&x| x == d1).expect("d1 at p");
        d.rot[p].splice(pos..=pos, spliced.iter().copied());
        d.darts[d1].alive = false;
        for &x in &spliced {
            d.darts[x].origin = p;
        }
        d.vertex_alive[q] = false;
        if d.base == q {
            d.base = p;
        }
        if let Some(c) = d.coords.as_mut() {
            c[q] = c[p];
        }
    } else {
        // d1 d2 bound a sphere; drop everything on its inner side
        let inside = enclosed(d, &[t1, t2], &[d1, d2]);
        let faces: BTreeSet<usize> = inside.iter().filter_map(|&x| d.darts[x].face).collect();
        for &x in &inside {
            kill_dart(d, x);
        }
        for v in 0..d.rot.len() {
            if d.vertex_alive[v] && v != p && v != u && d.rot[v].is_empty() {
                d.vertex_alive[v] = false;
            }
        }
        for &f in &faces {
            d.faces[f].alive = false;
        }
        d.warnings.push(format!(
            "removed a cancelling sphere carrying {} face(s): {:?}",
            faces.len(),
            faces
        ));
        kill_dart(d, d1);
        kill_dart(d, d2);
        if !d.rot[u].is_empty() {
            return Err(Error::Diagram("sphere removal left darts at the apex".into()));
        }
        d.vertex_alive[u] = false;
    }
    d.boundary.drain(i..=i + 1);
    if d.boundary.is_empty() {
        // all edges gone; the base stays as the single vertex
        if let Some(v) = d.vertices().find(|&v| !d.rot[v].is_empty()) {
            return Err(Error::Diagram(format!("stray vertex {v} after final fold")));
        }
        let keep = d.base;
        for v in 0..d.vertex_alive.len() {
            d.vertex_alive[v] = v == keep;
        }
    }
    Ok(())
}

/// Darts reachable from `seeds` by `next` and `twin` without touching
/// `walls`.
fn enclosed(d: &VanKampenDiagram, seeds: &[usize], walls: &[usize]) -> BTreeSet<usize> {
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    let mut stack: Vec<usize> = seeds.to_vec();
    while let Some(x) = stack.pop() {
        if walls.contains(&x) || !seen.insert(x) {
            continue;
        }
        stack.push(d.next(x));
        stack.push(d.darts[x].twin);
    }
    seen
}
