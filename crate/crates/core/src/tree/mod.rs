//! Finite tree models: automorphisms of tree balls with vertex-ball
//! fixators and `P_k`-closures, and the orbit census of a focal action on a
//! truncated coset tree.

mod ball;
mod focal;

pub use ball::{
    ball_aut_group, ball_aut_group_with, ball_fixator, pk_closure, PkClosure, TreeBall,
    MAX_BALL_VERTICES,
};
pub use focal::{
    focal_orbit_census, focal_orbit_census_with, CensusRow, CosetTreeSlab, FocalCensus,
    DEFAULT_SLAB_CAP,
};
