use serde::{Deserialize, Serialize};

use crate::filler::complex::{Ball3Complex, CellCounts, CellKind, CollapseStep};
use crate::geometry::{GroupOracle, GroupSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceCellJson {
    pub vertices: Vec<usize>,
    pub word: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellJson {
    pub kind: CellKind,
    pub faces: Vec<usize>,
}

/// The complex with vertex images, in generator-name tokens.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: Vec<Vec<String>>,
    /// `(u, v, l)` with `image(v) = image(u) · l`.
    pub edges: Vec<(usize, usize, String)>,
    pub faces: Vec<FaceCellJson>,
    pub cells: Vec<CellJson>,
    pub v_faces: Vec<usize>,
    pub loop_vertices: Vec<usize>,
    pub base_vertex: usize,
    pub collapse_order: Vec<CollapseStep>,
}

impl ComplexJson {
    pub fn from_complex(o: &dyn GroupOracle, k: &Ball3Complex) -> Self {
        let p = o.presentation();
        let idx = k.edge_index();
        ComplexJson {
            vertices: k.vertex_images.iter().map(|w| p.word_tokens(w)).collect(),
            edges: k
                .edges
                .iter()
                .map(|&(a, b, l)| (a, b, p.format_letter(l)))
                .collect(),
            faces: (0..k.faces.len())
                .map(|f| FaceCellJson {
                    vertices: k.faces[f].clone(),
                    word: p.word_tokens(&k.face_word(f, &idx)),
                })
                .collect(),
            cells: k
                .cells
                .iter()
                .map(|c| CellJson {
                    kind: c.kind,
                    faces: c.faces.clone(),
                })
                .collect(),
            v_faces: k.v_faces.clone(),
            loop_vertices: k.loop_vertices.clone(),
            base_vertex: k.base_vertex,
            collapse_order: k.collapse_order.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub ok: bool,
    /// Failure descriptions, capped.
    pub details: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub collapse: CheckResult,
    pub sphere: CheckResult,
    pub relators: CheckResult,
    pub avoidance: CheckResult,
    /// Least distance from the identity over `∂B - int V`.
    pub min_boundary_distance: Option<usize>,
    /// Boundary faces outside the diagram, and how many touch the ball.
    pub boundary_faces: usize,
    pub failing_faces: Vec<usize>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssignmentJson {
    pub face: usize,
    pub letter: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FillingCertificate {
    pub group: GroupSpec,
    pub m: usize,
    pub threshold: usize,
    pub n: usize,
    pub loop_word: Vec<String>,
    pub base: Vec<String>,
    pub t: Vec<String>,
    pub assignment: Vec<AssignmentJson>,
    pub counts: CellCounts,
    pub notes: Vec<String>,
    pub complex: ComplexJson,
    pub verdict: Verdict,
}
