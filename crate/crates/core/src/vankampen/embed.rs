use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::geometry::GroupOracle;
use crate::vankampen::map::VanKampenDiagram;
use crate::words::Word;

/// Vertex images of a diagram in the Cayley graph, the base vertex sent to
/// `base`.
#[derive(Clone, Debug)]
pub struct DiagramEmbedding {
    pub diagram: VanKampenDiagram,
    pub base_image: Word,
    /// Indexed by diagram vertex; `None` for removed vertices.
    pub vertex_images: Vec<Option<Word>>,
}

impl DiagramEmbedding {
    pub fn image(&self, v: usize) -> &Word {
        self.vertex_images[v].as_ref().expect("live vertex")
    }
}

pub fn embed(oracle: &dyn GroupOracle, diagram: &VanKampenDiagram, base: &Word) -> Result<DiagramEmbedding> {
    let p = oracle.presentation();
    let n = p.generator_count();
    for d in diagram.live_darts() {
        if diagram.darts[d].label.gen.index() >= n {
            return Err(Error::Embedding(format!("dart {d} uses an unknown generator")));
        }
    }
    for (f, orbit) in diagram.inner_faces() {
        let w = diagram.face_word(&orbit);
        if !p.relators().iter().any(|r| w.is_cyclic_conjugate_up_to_inverse(r)) {
            return Err(Error::Embedding(format!(
                "face {f} reads `{}`, not a relator of {}",
                p.format_word(&w),
                p.name()
            )));
        }
    }
    let mut images: Vec<Option<Word>> = vec![None; diagram.rot.len()];
    images[diagram.base] = Some(oracle.normal_form(base));
    let mut queue = VecDeque::from([diagram.base]);
    while let Some(v) = queue.pop_front() {
        let iv = images[v].clone().expect("visited");
        for &d in &diagram.rot[v] {
            let h = diagram.head(d);
            let ih = oracle.mul_letter(&iv, diagram.darts[d].label);
            match &images[h] {
                None => {
                    images[h] = Some(ih);
                    queue.push_back(h);
                }
                Some(existing) if *existing != ih => {
                    return Err(Error::Embedding(format!("inconsistent image at vertex {h}")));
                }
                Some(_) => {}
            }
        }
    }
    if diagram.vertices().any(|v| images[v].is_none()) {
        return Err(Error::Embedding("diagram is disconnected".into()));
    }
    Ok(DiagramEmbedding {
        diagram: diagram.clone(),
        base_image: oracle.normal_form(base),
        vertex_images: images,
    })
}
