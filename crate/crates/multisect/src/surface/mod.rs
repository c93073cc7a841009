//! Oriented surfaces as combinatorial maps, curves on them and operations on both.

pub mod curve;
pub mod cut;
pub mod homology;
pub mod iso;
pub mod map;
pub mod route;

pub use curve::{disjoint, intersection_count, Curve, CurveError, IntersectionError};
pub use cut::{are_parallel, check_cut_system, cut_along, is_cut_system, refine, BoundedComponent, CutError, Hole, RefineTarget, Side};
pub use map::{compact, CombinatorialMap, Dart, MapError, RawMap};
pub use route::{overlay, Overlay, Route, RouteError};
pub use homology::{h1_class_vector, rank_gf2, H1Basis};
pub use iso::{canonical_numbering, canonical_numberings, labeled_isomorphic};
