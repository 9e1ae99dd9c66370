//! Van Kampen diagrams as planar combinatorial maps.

pub mod build;
pub mod embed;
pub mod export;
pub mod map;
pub mod planar;

pub use build::{build_diagram, BuildOptions, ConjugateProduct, Factor, FactorJson, ProductJson};
pub use embed::{embed, DiagramEmbedding};
pub use map::{Dart, FaceInfo, VanKampenDiagram};
pub use planar::{from_drawing, grid_diagram, grid_letters_of_loop, labeled_grid, PlanarDrawing};
