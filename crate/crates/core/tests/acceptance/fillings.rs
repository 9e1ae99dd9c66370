use std::sync::Mutex;

use scinf::filler::{fill, verify_filling, CayleyComplexContext, FillingCertificate, Verdict, DEFAULT_MAX_CELLS};
use scinf::geometry::{FreeAbelian, GroupOracle, Raag};
use scinf::hypothesis::TSpec;
use scinf::vankampen::{from_drawing, labeled_grid, PlanarDrawing, VanKampenDiagram};
use scinf::words::{Letter, Word};

use crate::criteria::scinf;
use crate::{oracles, Outcome};

/// Certificates produced by criteria 7 and 8, for criterion 9.
static PRODUCED: Mutex<Vec<(String, FillingCertificate)>> = Mutex::new(Vec::new());

const GRID_ARGS: [&str; 9] = ["fill", "--group", "z3", "--loop", "x^3 y^3 x^-3 y^-3", "--base", "x^40", "--m", "1"];

fn letter(o: &dyn GroupOracle, n: &str) -> Letter {
    Letter::pos(o.presentation().gen(n).unwrap())
}

fn flags(v: &Verdict) -> [bool; 4] {
    [v.collapse.ok, v.sphere.ok, v.relators.ok, v.avoidance.ok]
}

fn filled(o: &dyn GroupOracle, d: &VanKampenDiagram, base: &Word) -> Result<FillingCertificate, String> {
    let t = TSpec::from_names(o.presentation(), &["x", "y", "z"]).map_err(|e| e.to_string())?;
    let ctx = CayleyComplexContext::new(o, t, 1).map_err(|e| e.to_string())?;
    let c = fill(&ctx, d, base, DEFAULT_MAX_CELLS).map_err(|e| e.to_string())?;
    let again = verify_filling(&c).map_err(|e| e.to_string())?;
    if !c.verdict.pass || again != c.verdict {
        return Err(format!("verdict {:?}", flags(&again)));
    }
    Ok(c)
}

pub fn end_to_end() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("out.json");
    let ps = path.to_str().unwrap();
    let mut args = GRID_ARGS.to_vec();
    args.extend(["--cert", ps]);
    let (code, _, err) = scinf(&args);
    if code != 0 {
        return Err(format!("fill exited {code}: {err}"));
    }
    let (code, _, err) = scinf(&["verify", "--cert", ps]);
    if code != 0 {
        return Err(format!("verify exited {code}: {err}"));
    }
    let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    let cert: FillingCertificate = serde_json::from_str(&text).map_err(|e| e.to_string())?;

    // a vertex away from the diagram, moved to distance 1 from the identity
    let mut moved = cert.clone();
    let v = (0..moved.complex.vertices.len())
        .max_by_key(|&v| moved.complex.vertices[v].iter().filter(|t| *t == "z").count())
        .unwrap();
    moved.complex.vertices[v] = vec!["y".into()];
    let f1 = flags(&verify_filling(&moved).map_err(|e| e.to_string())?);
    if f1 != [true, true, true, false] {
        return Err(format!("moved vertex flips {f1:?}"));
    }

    let mut relabeled = cert.clone();
    let f = relabeled.complex.v_faces[0];
    let w = &mut relabeled.complex.faces[f].word;
    w[0] = if w[0] == "z" { "y".into() } else { "z".into() };
    let f2 = flags(&verify_filling(&relabeled).map_err(|e| e.to_string())?);
    if f2 != [true, true, false, true] {
        return Err(format!("relabeled face flips {f2:?}"));
    }
    let summary = format!(
        "pass with N={} and {} prisms, min boundary distance {:?}; mutations flip only avoidance, only relators",
        cert.n, cert.counts.prisms, cert.verdict.min_boundary_distance
    );
    PRODUCED.lock().unwrap().push(("grid 3x3".into(), cert));
    Ok(summary)
}

fn hexagon(o: &FreeAbelian) -> Result<VanKampenDiagram, String> {
    let (x, y, w) = (letter(o, "x"), letter(o, "y"), letter(o, "w"));
    let mut dr = PlanarDrawing::default();
    let c = dr.vertex(0.0, 0.0);
    let vx = dr.vertex(2.0, 0.0);
    let vy = dr.vertex(-1.0, 2.0);
    let vw = dr.vertex(-1.0, -2.0);
    let vxy = dr.vertex(1.0, 2.0);
    let vyw = dr.vertex(-2.0, 0.0);
    let vwx = dr.vertex(1.0, -2.0);
    for (a, b, l) in [
        (c, vx, x),
        (c, vy, y),
        (c, vw, w),
        (vx, vxy, y),
        (vy, vxy, x),
        (vy, vyw, w),
        (vw, vyw, y),
        (vw, vwx, x),
        (vx, vwx, w),
    ] {
        dr.edge(a, b, l);
    }
    from_drawing(o.presentation(), &dr, vx).map_err(|e| e.to_string())
}

pub fn mixed() -> Outcome {
    let o = Raag::f2_z3();
    let (a, x, y) = (letter(&o, "a"), letter(&o, "x"), letter(&o, "y"));
    let d = labeled_grid(o.presentation(), &[a], &[y, x]).map_err(|e| e.to_string())?;
    let two = filled(&o, &d, &Word::power(a, 40))?;
    if two.counts.edge_cubes == 0 {
        return Err("two-cell instance has no edge cube".into());
    }

    let z4 = FreeAbelian::standard(4);
    let hex = filled(&z4, &hexagon(&z4)?, &z4.element(&[0, 0, 40, 0]))?;
    if hex.counts.folds + hex.counts.vertex_prisms == 0 {
        return Err("vertex-cycle instance has neither fold nor vertex prism".into());
    }
    let s = format!(
        "two-cell: {} edge cubes; vertex cycle: {} folds, {} vertex cubes, {} vertex prisms; both pass",
        two.counts.edge_cubes, hex.counts.folds, hex.counts.vertex_cubes, hex.counts.vertex_prisms
    );
    let mut out = PRODUCED.lock().unwrap();
    out.push(("two-cell".into(), two));
    out.push(("vertex cycle".into(), hex));
    Ok(s)
}

pub fn sphere() -> Outcome {
    let certs = PRODUCED.lock().unwrap();
    if certs.len() < 3 {
        return Err(format!("only {} certificates from criteria 7 and 8", certs.len()));
    }
    let mut parts = Vec::new();
    for (name, c) in certs.iter() {
        let s = oracles::boundary_sphere(&c.complex).map_err(|e| format!("{name}: {e}"))?;
        let steps = oracles::replay_collapse(&c.complex).map_err(|e| format!("{name}: {e}"))?;
        if !(c.verdict.sphere.ok && c.verdict.collapse.ok) {
            return Err(format!("{name}: verifier disagrees"));
        }
        parts.push(format!("{name} V={} E={} F={} collapse {steps} steps", s.vertices, s.edges, s.faces));
    }
    Ok(parts.join("; "))
}

pub fn determinism() -> Outcome {
    let runs: [&[&str]; 3] = [
        &["check", "--preset", "gervais3", "--t", "c12,c34,c13"],
        &["constants", "--group", "z3", "--m", "1..10", "--json"],
        &GRID_ARGS,
    ];
    let mut bytes = 0;
    for args in runs {
        let a = scinf(args);
        let b = scinf(args);
        if a.0 != 0 || a != b {
            return Err(format!("`{}` differs between runs", args.join(" ")));
        }
        bytes += a.1.len();
    }
    Ok(format!("three artifacts, {bytes} bytes, identical across runs"))
}
