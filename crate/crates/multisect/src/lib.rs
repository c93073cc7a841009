//! Multisection diagrams of closed manifolds.

pub mod surface;
pub mod diagram;
pub mod goodball;
pub mod bundle;
pub mod fixtures;
pub mod io;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/overview.md")]
    struct Overview;
    #[doc = include_str!("../../../book/src/surfaces.md")]
    struct Surfaces;
    #[doc = include_str!("../../../book/src/diagrams.md")]
    struct Diagrams;
    #[doc = include_str!("../../../book/src/slides.md")]
    struct Slides;
    #[doc = include_str!("../../../book/src/goodball.md")]
    struct Goodball;
    #[doc = include_str!("../../../book/src/bundles.md")]
    struct Bundles;
    #[doc = include_str!("../../../book/src/formats.md")]
    struct Formats;
}
