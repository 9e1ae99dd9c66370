use crate::error::{Error, Result};
use crate::presentations::Presentation;
use crate::vankampen::map::{Dart, FaceInfo, VanKampenDiagram};
use crate::words::{Letter, Word};

/// Straight-line planar drawing: vertex positions and labelled edges.
#[derive(Clone, Debug, Default)]
pub struct PlanarDrawing {
    pub coords: Vec<(f64, f64)>,
    /// `(from, to, label)`.
    pub edges: Vec<(usize, usize, Letter)>,
}

impl PlanarDrawing {
    pub fn vertex(&mut self, x: f64, y: f64) -> usize {
        self.coords.push((x, y));
        self.coords.len() - 1
    }

    pub fn edge(&mut self, from: usize, to: usize, l: Letter) {
        self.edges.push((from, to, l));
    }
}

fn signed_area(coords: &[(f64, f64)], cycle: &[usize]) -> f64 {
    let n = cycle.len();
    (0..n)
        .map(|i| {
            let (a, b) = (coords[cycle[i]], coords[cycle[(i + 1) % n]]);
            a.0 * b.1 - b.0 * a.1
        })
        .sum::<f64>()
        / 2.0
}

/// Builds a diagram from a drawing of a disk. Each bounded face must spell a
/// relator of `p` up to rotation and inversion. The boundary walk starts at
/// `base`.
pub fn from_drawing(p: &Presentation, drawing: &PlanarDrawing, base: usize) -> Result<VanKampenDiagram> {
    let nv = drawing.coords.len();
    let mut darts = Vec::new();
    for &(a, b, l) in &drawing.edges {
        if a >= nv || b >= nv || a == b {
            return Err(Error::Diagram("bad drawing edge".into()));
        }
        let k = darts.len();
        darts.push(Dart {
            origin: a,
            label: l,
            twin: k + 1,
            face: None,
            alive: true,
        });
        darts.push(Dart {
            origin: b,
            label: l.inv(),
            twin: k,
            face: None,
            alive: true,
        });
    }
    let mut rot = vec![Vec::new(); nv];
    for (i, d) in darts.iter().enumerate() {
        rot[d.origin].push(i);
    }
    let angle = |d: usize| {
        let (o, h) = (darts[d].origin, darts[darts[d].twin].origin);
        let (a, b) = (drawing.coords[o], drawing.coords[h]);
        (b.1 - a.1).atan2(b.0 - a.0)
    };
    for r in rot.iter_mut() {
        r.sort_by(|&a, &b| angle(a).total_cmp(&angle(b)));
    }
    let mut d = VanKampenDiagram {
        darts,
        rot,
        vertex_alive: vec![true; nv],
        faces: vec![],
        boundary: vec![],
        base,
        coords: Some(drawing.coords.clone()),
        warnings: vec![],
    };
    let orbits = d.face_orbits();
    let mut outer = None;
    for (k, o) in orbits.iter().enumerate() {
        let cyc: Vec<usize> = o.iter().map(|&x| d.darts[x].origin).collect();
        if signed_area(&drawing.coords, &cyc) < 0.0 {
            if outer.replace(k).is_some() {
                return Err(Error::Diagram("drawing is not a connected disk".into()));
            }
        }
    }
    let outer = outer.ok_or_else(|| Error::Diagram("no outer face".into()))?;
    for (k, o) in orbits.iter().enumerate() {
        if k == outer {
            continue;
        }
        let w = d.face_word(o);
        let ri = p
            .relators()
            .iter()
            .position(|r| w.is_cyclic_conjugate_up_to_inverse(r))
            .ok_or_else(|| Error::Diagram(format!("face `{}` is not a relator", p.format_word(&w))))?;
        let r = &p.relators()[ri];
        // the loop orientation is opposite to the inner face walk
        let exponent = if w.invert().is_rotation_of(r) { 1 } else { -1 };
        let f = d.faces.len();
        d.faces.push(FaceInfo {
            relator: ri,
            exponent,
            word: if exponent > 0 { r.clone() } else { r.invert() },
            alive: true,
        });
        for &x in o {
            d.darts[x].face = Some(f);
        }
    }
    let start = orbits[outer]
        .iter()
        .position(|&x| d.darts[x].origin == base)
        .ok_or_else(|| Error::Diagram("base is not on the boundary".into()))?;
    let o = &orbits[outer];
    d.boundary = o[start..].iter().chain(&o[..start]).copied().collect();
    d.check()?;
    Ok(d)
}

/// Rectangular grid with column letters `h[i]` and row letters `v[j]`
/// (rows bottom to top). Returns the diagram and its boundary word, read
/// from the lower-left corner as `h.. v.. h^-1.. v^-1..`.
pub fn labeled_grid(p: &Presentation, h: &[Letter], v: &[Letter]) -> Result<VanKampenDiagram> {
    let (nx, ny) = (h.len(), v.len());
    if nx == 0 || ny == 0 {
        return Err(Error::Diagram("empty grid".into()));
    }
    // mirrored so that the clockwise boundary walk reads h then v
    let mut dr = PlanarDrawing::default();
    let id = |i: usize, j: usize| j * (nx + 1) + i;
    for j in 0..=ny {
        for i in 0..=nx {
            dr.vertex(j as f64, i as f64);
        }
    }
    for j in 0..=ny {
        for i in 0..nx {
            dr.edge(id(i, j), id(i + 1, j), h[i]);
        }
    }
    for j in 0..ny {
        for i in 0..=nx {
            dr.edge(id(i, j), id(i, j + 1), v[j]);
        }
    }
    from_drawing(p, &dr, id(0, 0))
}

/// `nx x ny` grid of `[x, y]` squares.
pub fn grid_diagram(p: &Presentation, x: Letter, y: Letter, nx: usize, ny: usize) -> Result<VanKampenDiagram> {
    labeled_grid(p, &vec![x; nx], &vec![y; ny])
}

/// Parses a rectilinear loop `h_1..h_a v_1..v_b h_a^-1..h_1^-1 ...` into
/// grid letters when it is the boundary of a labelled grid.
pub fn grid_letters_of_loop(w: &Word) -> Option<(Vec<Letter>, Vec<Letter>)> {
    let l = w.letters();
    let n = l.len();
    if n < 4 || n % 2 != 0 {
        return None;
    }
    for a in 1..n / 2 {
        let b = n / 2 - a;
        let h = &l[..a];
        let v = &l[a..a + b];
        let back_h: Vec<Letter> = h.iter().rev().map(|x| x.inv()).collect();
        let back_v: Vec<Letter> = v.iter().rev().map(|x| x.inv()).collect();
        if l[a + b..2 * a + b] == back_h[..] && l[2 * a + b..] == back_v[..] {
            return Some((h.to_vec(), v.to_vec()));
        }
    }
    None
}
