use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentations::Presentation;
use crate::vankampen::map::{Dart, FaceInfo, VanKampenDiagram};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DartJson {
    pub origin: usize,
    pub label: String,
    pub twin: usize,
    pub face: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FaceJson {
    pub id: usize,
    pub relator: usize,
    pub exponent: i8,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub presentation: String,
    pub vertices: usize,
    pub base: usize,
    pub darts: Vec<DartJson>,
    pub rotation: Vec<Vec<usize>>,
    pub faces: Vec<FaceJson>,
    pub boundary: Vec<usize>,
    pub boundary_word: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub coords: Option<Vec<(f64, f64)>>,
    pub warnings: Vec<String>,
}

/// Expects a compacted diagram (as returned by the builders).
pub fn to_json(p: &Presentation, d: &VanKampenDiagram) -> DiagramJson {
    DiagramJson {
        presentation: p.name().to_string(),
        vertices: d.rot.len(),
        base: d.base,
        darts: d
            .darts
            .iter()
            .map(|x| DartJson {
                origin: x.origin,
                label: p.format_letter(x.label),
                twin: x.twin,
                face: x.face,
            })
            .collect(),
        rotation: d.rot.clone(),
        faces: d
            .faces
            .iter()
            .enumerate()
            .filter(|(_, f)| f.alive)
            .map(|(id, f)| FaceJson {
                id,
                relator: f.relator,
                exponent: f.exponent,
            })
            .collect(),
        boundary: d.boundary.clone(),
        boundary_word: p.word_tokens(&d.boundary_word()),
        coords: d.coords.clone(),
        warnings: d.warnings.clone(),
    }
}

pub fn from_json(p: &Presentation, j: &DiagramJson) -> Result<VanKampenDiagram> {
    let mut darts = Vec::with_capacity(j.darts.len());
    for x in &j.darts {
        let w = p.parse_letter_token(&x.label)?;
        if w.len() != 1 || x.origin >= j.vertices || x.twin >= j.darts.len() {
            return Err(Error::Diagram("malformed dart".into()));
        }
        darts.push(Dart {
            origin: x.origin,
            label: w.letters()[0],
            twin: x.twin,
            face: x.face,
            alive: true,
        });
    }
    let nf = j.faces.iter().map(|f| f.id + 1).max().unwrap_or(0);
    let mut faces: Vec<FaceInfo> = (0..nf)
        .map(|_| FaceInfo {
            relator: 0,
            exponent: 1,
            word: Default::default(),
            alive: false,
        })
        .collect();
    for f in &j.faces {
        let r = p
            .relators()
            .get(f.relator)
            .ok_or_else(|| Error::Diagram(format!("relator {} out of range", f.relator)))?;
        faces[f.id] = FaceInfo {
            relator: f.relator,
            exponent: f.exponent,
            word: if f.exponent < 0 { r.invert() } else { r.clone() },
            alive: true,
        };
    }
    let d = VanKampenDiagram {
        darts,
        rot: j.rotation.clone(),
        vertex_alive: vec![true; j.vertices],
        faces,
        boundary: j.boundary.clone(),
        base: j.base,
        coords: j.coords.clone(),
        warnings: j.warnings.clone(),
    };
    if d.rot.len() != j.vertices || d.base >= j.vertices {
        return Err(Error::Diagram("malformed rotation".into()));
    }
    d.check()?;
    Ok(d)
}

/// Positions: stored drawing coordinates, otherwise boundary on a circle
/// and interior vertices at barycenters of their neighbours.
pub fn layout(d: &VanKampenDiagram) -> Vec<(f64, f64)> {
    if let Some(c) = &d.coords {
        return c.clone();
    }
    let n = d.rot.len();
    let mut pos = vec![(0.0, 0.0); n];
    let bv = d.boundary_vertices();
    let mut fixed = vec![false; n];
    let mut seen = BTreeSet::new();
    let ring: Vec<usize> = bv.into_iter().filter(|v| seen.insert(*v)).collect();
    for (k, &v) in ring.iter().enumerate() {
        let t = std::f64::consts::TAU * k as f64 / ring.len().max(1) as f64;
        pos[v] = (t.cos() * 10.0, -t.sin() * 10.0);
        fixed[v] = true;
    }
    for _ in 0..300 {
        for v in 0..n {
            if fixed[v] || d.rot[v].is_empty() {
                continue;
            }
            let k = d.rot[v].len() as f64;
            let s = d.rot[v].iter().fold((0.0, 0.0), |acc, &x| {
                let h = pos[d.head(x)];
                (acc.0 + h.0, acc.1 + h.1)
            });
            pos[v] = (s.0 / k, s.1 / k);
        }
    }
    pos
}

pub fn to_svg(p: &Presentation, d: &VanKampenDiagram) -> String {
    let pos = layout(d);
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for &(x, y) in &pos {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    if pos.is_empty() {
        (x0, y0, x1, y1) = (0.0, 0.0, 1.0, 1.0);
    }
    let scale = 60.0;
    let pad = 30.0;
    let tx = |x: f64| (x - x0) * scale + pad;
    let ty = |y: f64| (y1 - y) * scale + pad;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}">"#,
        (x1 - x0) * scale + 2.0 * pad,
        (y1 - y0) * scale + 2.0 * pad
    );
    for (_, orbit) in d.inner_faces() {
        let pts: Vec<String> = orbit
            .iter()
            .map(|&e| {
                let q = pos[d.darts[e].origin];
                format!("{:.1},{:.1}", tx(q.0), ty(q.1))
            })
            .collect();
        let _ = writeln!(s, r##"<polygon points="{}" fill="#dde8f5" stroke="none"/>"##, pts.join(" "));
    }
    for e in d.live_darts() {
        let dart = &d.darts[e];
        if dart.label.inverse {
            continue;
        }
        let (a, b) = (pos[dart.origin], pos[d.head(e)]);
        let _ = writeln!(
            s,
            r#"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="black"/>"#,
            tx(a.0),
            ty(a.1),
            tx(b.0),
            ty(b.1)
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" font-size="12">{}</text>"#,
            tx((a.0 + b.0) / 2.0) + 3.0,
            ty((a.1 + b.1) / 2.0) - 3.0,
            p.gen_name(dart.label.gen)
        );
    }
    let b = pos[d.base];
    let _ = writeln!(s, r#"<circle cx="{:.1}" cy="{:.1}" r="4" fill="red"/>"#, tx(b.0), ty(b.1));
    s.push_str("</svg>\n");
    s
}

pub fn to_dot(p: &Presentation, d: &VanKampenDiagram) -> String {
    let mut s = String::from("digraph vankampen {\n");
    for v in d.vertices() {
        let _ = writeln!(s, "  v{v};");
    }
    for e in d.live_darts() {
        let dart = &d.darts[e];
        if dart.label.inverse {
            continue;
        }
        let _ = writeln!(
            s,
            "  v{} -> v{} [label=\"{}\"];",
            dart.origin,
            d.head(e),
            p.gen_name(dart.label.gen)
        );
    }
    s.push_str("}\n");
    s
}
