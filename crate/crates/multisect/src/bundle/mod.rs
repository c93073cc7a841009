//! Diagram generators for surface bundles over spheres and for bundles over the circle.

pub mod circle;
pub mod panel;
pub mod scheme;
pub mod sphere;

pub use circle::{circle_bundle_diagram, Monodromy};
pub use panel::{arc_system, arc_system_punctured, assemble, parallel_arc, Arc, Assembly, Panel, PanelSpec, Tube};
pub use scheme::{
    cycles, format_perm, parse_perm, scheme_for, scheme_n, scheme_single_cycle, scheme_stack, Perm, Scheme,
    SchemeError, SchemeFailure,
};
pub use sphere::{assemble_graph_of_fibers, sphere_base_bundle_diagram, twisted_w_m};

use crate::surface::{MapError, RouteError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BundleError {
    #[error("base graph is not simple")]
    NotSimple,
    #[error("base graph is disconnected")]
    Disconnected,
    #[error("{0}")]
    Precondition(String),
    #[error("scheme does not fit the fiber: {0}")]
    SchemeMismatch(String),
    #[error("no face of the fiber is fixed by the monodromy")]
    NoCurveFreeFace,
    #[error("monodromy is not an automorphism of the fiber diagram: {0}")]
    MonodromyNotAutomorphism(String),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Route(#[from] RouteError),
}
