//! Filling far loops by 3-balls in the Cayley 3-complex.

pub mod build;
pub mod certificate;
pub mod complex;
pub mod context;
pub mod verify;
mod vertex;

pub use certificate::{AssignmentJson, CheckResult, ComplexJson, FillingCertificate, Verdict};
pub use complex::{Ball3Complex, Cell3, CellCounts, CellKind, CollapseStep};
pub use context::{assign_cells, check_far, compute_n, CayleyComplexContext, CellAssignment, HeightReport};
pub use verify::{verify_filling, verify_with};

use crate::error::{Error, Result};
use crate::vankampen::{embed, DiagramEmbedding, VanKampenDiagram};
use crate::words::Word;

pub const DEFAULT_MAX_CELLS: usize = 2_000_000;

/// Assembles the ball over an embedded diagram for a given assignment and
/// height. Does not check that the loop is far.
pub fn build_ball(
    ctx: &CayleyComplexContext<'_>,
    emb: &DiagramEmbedding,
    assign: &CellAssignment,
    n: usize,
) -> Result<(Ball3Complex, Vec<String>)> {
    let mut a = build::Assembler::new(ctx, emb, assign, n)?;
    let v_faces = a.prisms()?;
    a.edges()?;
    a.process_vertices()?;
    a.finish(v_faces)
}

/// Upper bound on the number of 3-cells `build_ball` can create.
pub fn estimate_cells(d: &VanKampenDiagram, n: usize) -> usize {
    let f = d.inner_faces().len();
    let e = d.edge_count();
    let deg: usize = d.vertices().map(|v| d.rotation(v).len()).sum();
    f * n + 2 * e * n * n + deg * n * n * n
}

/// Builds, serializes and independently re-checks a filling.
pub fn certify(
    ctx: &CayleyComplexContext<'_>,
    emb: &DiagramEmbedding,
    assign: &CellAssignment,
    n: usize,
) -> Result<FillingCertificate> {
    let o = ctx.oracle;
    let p = o.presentation();
    let (k, notes) = build_ball(ctx, emb, assign, n)?;
    let complex = ComplexJson::from_complex(o, &k);
    let mut cert = FillingCertificate {
        group: o.spec(),
        m: ctx.m,
        threshold: ctx.threshold(),
        n,
        loop_word: p.word_tokens(&emb.diagram.boundary_word()),
        base: p.word_tokens(&emb.base_image),
        t: ctx.t.members.iter().map(|&g| p.gen_name(g).to_string()).collect(),
        assignment: assign
            .letters
            .iter()
            .map(|(&face, &l)| AssignmentJson {
                face,
                letter: p.format_letter(l),
                anchor: assign.anchors.get(&face).copied(),
            })
            .collect(),
        counts: k.counts.clone(),
        notes,
        complex,
        verdict: placeholder_verdict(),
    };
    cert.verdict = verify_with(o, &cert);
    Ok(cert)
}

fn placeholder_verdict() -> Verdict {
    let none = CheckResult {
        ok: false,
        details: vec!["not checked".into()],
    };
    Verdict {
        collapse: none.clone(),
        sphere: none.clone(),
        relators: none.clone(),
        avoidance: none,
        min_boundary_distance: None,
        boundary_faces: 0,
        failing_faces: vec![],
        pass: false,
    }
}

/// Fills the loop bounded by `diagram`, based at `base`. The loop must be
/// simple and beyond the threshold radius.
pub fn fill(
    ctx: &CayleyComplexContext<'_>,
    diagram: &VanKampenDiagram,
    base: &Word,
    max_cells: usize,
) -> Result<FillingCertificate> {
    if !diagram.is_simple_boundary() {
        return Err(Error::InvalidInput(format!(
            "loop `{}` is not simple",
            ctx.oracle.presentation().format_word(&diagram.boundary_word())
        )));
    }
    let emb = embed(ctx.oracle, diagram, base)?;
    check_far(ctx, &emb)?;
    let assign = assign_cells(ctx, &emb)?;
    let h = compute_n(ctx, &emb, &assign);
    let est = estimate_cells(diagram, h.n);
    if est > max_cells {
        return Err(Error::CellCap {
            estimate: est,
            cap: max_cells,
            n: h.n,
        });
    }
    certify(ctx, &emb, &assign, h.n)
}
