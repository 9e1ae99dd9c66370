//! Cayley-graph geometry over word-problem oracles.

pub mod ball;
pub mod constants;
pub mod oracle;
pub mod probes;

pub use ball::{ball, Ball, DEFAULT_BALL_CAP};
pub use constants::{
    half_plane_hit, half_space_hit, line_hit, ray_hit, ray_last_hit, t_of, translate,
    ConstantsRow, LemmaConstants,
};
pub use oracle::{FreeAbelian, GroupOracle, GroupSpec, Raag, RaagGraphJson};
pub use probes::{probe_lemma, BallMembers, ProbeReport};
