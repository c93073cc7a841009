//! Good ball decompositions of base manifolds and their colored graphs.

pub mod complex;
pub mod decomp;
pub mod graph;

pub use complex::{ComplexError, Simplex, SimplicialComplex};
pub use decomp::{
    extract_base_graph, predicted_genus, rpn_decomposition, s2xs1_decomposition, sphere_decomposition,
    star_decomposition, validate_ball_likeness, BallCheck, BaseKind, Collapse, GoodBallDecomposition, NotSimple,
    Stratum, StratumComponent,
};
pub use graph::BaseGraph;
