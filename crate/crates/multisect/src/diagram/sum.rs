//! Connected sum and stabilization.

use thiserror::Error;

use super::gen1::{gen1_with_face, Gen1Error};
use super::MultisectionDiagram;
use crate::surface::{Curve, RawMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SumError {
    #[error("diagrams have {0} and {1} families")]
    MismatchedN(usize, usize),
    #[error("face {0} is missing or meets a curve")]
    FaceNotCurveFree(usize),
    #[error(transparent)]
    Gen1(#[from] Gen1Error),
}

fn is_trivial(d: &MultisectionDiagram) -> bool {
    d.genus() == 0 && d.families.iter().all(Vec::is_empty)
}

/// Join two diagrams by a tube between faces `f1` of `d1` and `f2` of `d2`, realized as
/// an edge between the two faces. Darts of `d1` keep their numbers, darts of `d2` are
/// shifted past them.
pub fn connected_sum(d1: &MultisectionDiagram, d2: &MultisectionDiagram, f1: usize, f2: usize) -> Result<MultisectionDiagram, SumError> {
    if d1.n() != d2.n() {
        return Err(SumError::MismatchedN(d1.n(), d2.n()));
    }
    if !d1.face_is_curve_free(f1) {
        return Err(SumError::FaceNotCurveFree(f1));
    }
    if !d2.face_is_curve_free(f2) {
        return Err(SumError::FaceNotCurveFree(f2));
    }
    if is_trivial(d2) {
        return Ok(d1.clone());
    }
    if is_trivial(d1) {
        return Ok(d2.clone());
    }
    let (m1, m2) = (&d1.map, &d2.map);
    let off = m1.num_darts();
    let mut raw = RawMap::from_map(m1);
    raw.alpha.extend(m2.alpha_slice().iter().map(|&d| d + off));
    raw.rot.extend(m2.rot_slice().iter().map(|&d| d + off));
    let c1 = *m1.face_darts(f1).iter().min().unwrap();
    let c2 = *m2.face_darts(f2).iter().min().unwrap();
    raw.insert_edge(m1.rot_inv(c1), m2.rot_inv(c2) + off);
    let map = raw.build().expect("bridged maps are connected");
    let mut families = d1.families.clone();
    let mut labels = d1.labels.clone();
    for i in 0..d1.n() {
        families[i].extend(d2.families[i].iter().map(|c| Curve::new(c.darts.iter().map(|&d| d + off).collect())));
        labels[i].extend(d2.labels[i].iter().cloned());
    }
    Ok(MultisectionDiagram { map, families, labels, meta: d1.meta.clone() })
}

/// Connected sum with the genus-1 sphere diagram whose first `k` families share a curve class.
pub fn stabilize(d: &MultisectionDiagram, k: usize, face: usize) -> Result<MultisectionDiagram, SumError> {
    let (g, gf) = gen1_with_face(d.n(), k)?;
    connected_sum(d, &g, face, gf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::gen1_sphere_diagram;

    #[test]
    fn sum_with_empty_is_identity() {
        let d = gen1_sphere_diagram(3, 1).unwrap();
        let e = MultisectionDiagram::empty(3);
        let f = (0..d.map.num_faces()).find(|&f| d.face_is_curve_free(f)).unwrap();
        let s = connected_sum(&d, &e, f, 0).unwrap();
        assert!(s.isomorphic(&d, false));
    }

    #[test]
    fn genus_adds() {
        let a = gen1_sphere_diagram(3, 1).unwrap();
        let b = gen1_sphere_diagram(3, 2).unwrap();
        let fa = (0..a.map.num_faces()).find(|&f| a.face_is_curve_free(f)).unwrap();
        let fb = (0..b.map.num_faces()).find(|&f| b.face_is_curve_free(f)).unwrap();
        let s = connected_sum(&a, &b, fa, fb).unwrap();
        assert_eq!(s.genus(), 2);
        assert!(s.is_valid(), "{:?}", s.validate().failures());
        assert_eq!(s.families[0].len(), 2);
    }

    #[test]
    fn stabilize_empty_gives_gen1() {
        let e = MultisectionDiagram::empty(4);
        let s = stabilize(&e, 1, 0).unwrap();
        assert!(s.isomorphic(&gen1_sphere_diagram(4, 1).unwrap(), false));
    }

    #[test]
    fn errors() {
        let a = gen1_sphere_diagram(3, 1).unwrap();
        let b = gen1_sphere_diagram(4, 1).unwrap();
        assert_eq!(connected_sum(&a, &b, 0, 0).unwrap_err(), SumError::MismatchedN(3, 4));
        let curvy = (0..a.map.num_faces()).find(|&f| !a.face_is_curve_free(f)).unwrap();
        assert_eq!(stabilize(&a, 1, curvy).unwrap_err(), SumError::FaceNotCurveFree(curvy));
    }
}
