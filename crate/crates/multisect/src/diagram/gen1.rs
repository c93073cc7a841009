//! Genus-1 diagrams of spheres: `k` parallel curves dual to `n - k` parallel curves.

use thiserror::Error;

use super::MultisectionDiagram;
use crate::surface::{overlay, CombinatorialMap, RawMap, Route};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gen1Error {
    #[error("need 0 < k < n, got n={n} k={k}")]
    KOutOfRange { n: usize, k: usize },
}

/// The diagram together with its curve-free monogon, used as the gluing face.
pub(crate) fn gen1_with_face(n: usize, k: usize) -> Result<(MultisectionDiagram, usize), Gen1Error> {
    if k == 0 || k >= n {
        return Err(Gen1Error::KOutOfRange { n, k });
    }
    let torus = CombinatorialMap::standard(1);
    let routes: Vec<Route> = (0..n).map(|i| Route::new(vec![if i < k { 0 } else { 1 }])).collect();
    let ov = overlay(&torus, &[], &routes).expect("grid routes are valid");
    let mut raw = RawMap::from_map(&ov.map);
    let (_, far) = raw.add_pendant(ov.map.rot_inv(0));
    let (inner, _) = raw.add_loop(far);
    let map = raw.build().expect("refined torus");
    let face = map.face(inner);
    let families = ov.routes.into_iter().map(|c| vec![c]).collect();
    let d = MultisectionDiagram::new(map, families).with_meta("source", format!("gen1-sphere n={n} k={k}"));
    Ok((d, face))
}

/// Torus with `k` parallel curves (families `1..=k`) each meeting `n - k` parallel
/// curves (families `k+1..=n`) once.
pub fn gen1_sphere_diagram(n: usize, k: usize) -> Result<MultisectionDiagram, Gen1Error> {
    gen1_with_face(n, k).map(|(d, _)| d)
}
