//! Cutting a surface along disjoint curves, and the tests built on it.

use std::collections::HashSet;

use thiserror::Error;

use super::curve::{Curve, CurveError};
use super::map::{compact, CombinatorialMap, Dart, MapError, RawMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// The side the curve's faces lie on (right of its darts).
    Right,
    Left,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hole {
    pub face: usize,
    pub curve: usize,
    pub side: Side,
}

/// One component of a cut surface. Holes are faces of `map`, so `map` itself is the
/// capped surface.
#[derive(Debug, Clone)]
pub struct BoundedComponent {
    pub map: CombinatorialMap,
    pub holes: Vec<Hole>,
    /// Tracked curves landing in this component, by input index.
    pub tracked: Vec<(usize, Curve)>,
}

impl BoundedComponent {
    pub fn capped_genus(&self) -> usize {
        self.map.genus()
    }

    pub fn hole_count(&self) -> usize {
        self.holes.len()
    }

    /// Euler characteristic of the bordered surface.
    pub fn euler(&self) -> i64 {
        self.map.euler() - self.holes.len() as i64
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CutError {
    #[error("curve {0}: {1}")]
    InvalidCurve(usize, CurveError),
    #[error("curves {0} and {1} are not disjoint")]
    CurvesNotDisjoint(usize, usize),
    #[error("tracked curve {0} meets the cut locus")]
    TrackedHitsCutLocus(usize),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// Cut `m` along pairwise vertex-disjoint simple curves. Components come ordered by
/// their least surviving original dart.
pub fn cut_along(m: &CombinatorialMap, curves: &[Curve], tracked: &[Curve]) -> Result<Vec<BoundedComponent>, CutError> {
    let mut owner = vec![usize::MAX; m.num_vertices()];
    for (i, c) in curves.iter().enumerate() {
        c.check(m).map_err(|e| CutError::InvalidCurve(i, e))?;
        for v in c.vertices(m) {
            if owner[v] != usize::MAX {
                return Err(CutError::CurvesNotDisjoint(owner[v], i));
            }
            owner[v] = i;
        }
    }
    for (t, c) in tracked.iter().enumerate() {
        if c.darts.iter().any(|&d| d >= m.num_darts() || owner[m.vertex(d)] != usize::MAX) {
            return Err(CutError::TrackedHitsCutLocus(t));
        }
    }

    let mut raw = RawMap::from_map(m);
    let mut hole_darts = Vec::new();
    for (ci, c) in curves.iter().enumerate() {
        let k = c.len();
        let q: Vec<Dart> = (0..k).map(|_| raw.new_edge().0).collect();
        for i in 0..k {
            let cur = c.darts[i];
            let nxt = c.darts[(i + 1) % k];
            let big_q = raw.alpha[q[i]];
            let q_next = q[(i + 1) % k];
            // left vertex: q_next, the darts strictly left of the curve, Q_i
            let first_left = m.rot(nxt);
            if first_left == m.alpha(cur) {
                raw.set_cycle(&[q_next, big_q]);
            } else {
                raw.rot[q_next] = first_left;
                raw.rot[m.rot_inv(m.alpha(cur))] = big_q;
                raw.rot[big_q] = q_next;
            }
            raw.rot[nxt] = m.alpha(cur);
        }
        hole_darts.push((m.alpha(c.darts[0]), ci, Side::Right));
        hole_darts.push((q[0], ci, Side::Left));
    }
    let cut = raw.clone().build_multi()?;

    let mut out = Vec::with_capacity(cut.components());
    for comp in 0..cut.components() {
        let keep: Vec<bool> = (0..cut.num_darts()).map(|d| cut.component(d) == comp).collect();
        let (sub, new_id) = compact(&raw, &keep);
        let map = sub.build()?;
        let holes = hole_darts
            .iter()
            .filter(|h| keep[h.0])
            .map(|&(d, curve, side)| Hole { face: map.face(new_id[d]), curve, side })
            .collect();
        let tracked = tracked
            .iter()
            .enumerate()
            .filter(|(_, c)| keep[c.darts[0]])
            .map(|(t, c)| (t, Curve::new(c.darts.iter().map(|&d| new_id[d]).collect())))
            .collect();
        out.push(BoundedComponent { map, holes, tracked });
    }
    Ok(out)
}

/// Why a curve set fails to be a cut system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CutSystemReason {
    WrongCount { expected: usize, found: usize },
    InvalidCurve(usize),
    NotDisjoint(usize, usize),
    Disconnects(usize),
    NotPlanar(usize),
}

/// `Ok` iff cutting along `curves` leaves one connected planar surface with `2g` holes.
pub fn check_cut_system(m: &CombinatorialMap, curves: &[Curve]) -> Result<(), CutSystemReason> {
    let g = m.genus();
    if curves.len() != g {
        return Err(CutSystemReason::WrongCount { expected: g, found: curves.len() });
    }
    let comps = match cut_along(m, curves, &[]) {
        Ok(c) => c,
        Err(CutError::InvalidCurve(i, _)) => return Err(CutSystemReason::InvalidCurve(i)),
        Err(CutError::CurvesNotDisjoint(i, j)) => return Err(CutSystemReason::NotDisjoint(i, j)),
        Err(_) => unreachable!("cut without tracked curves"),
    };
    if comps.len() != 1 {
        return Err(CutSystemReason::Disconnects(comps.len()));
    }
    if comps[0].capped_genus() != 0 {
        return Err(CutSystemReason::NotPlanar(comps[0].capped_genus()));
    }
    Ok(())
}

pub fn is_cut_system(m: &CombinatorialMap, curves: &[Curve]) -> bool {
    check_cut_system(m, curves).is_ok()
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParallelError {
    #[error("curves are not disjoint")]
    NotDisjoint,
    #[error(transparent)]
    Cut(#[from] CutError),
}

/// Whether two disjoint curves cobound an annulus. A curve is parallel to itself.
pub fn are_parallel(m: &CombinatorialMap, c1: &Curve, c2: &Curve) -> Result<bool, ParallelError> {
    let e1: HashSet<Dart> = c1.edges(m).into_iter().collect();
    let e2: HashSet<Dart> = c2.edges(m).into_iter().collect();
    if e1 == e2 {
        return Ok(true);
    }
    let comps = match cut_along(m, &[c1.clone(), c2.clone()], &[]) {
        Err(CutError::CurvesNotDisjoint(..)) => return Err(ParallelError::NotDisjoint),
        r => r?,
    };
    Ok(comps.iter().any(|c| {
        c.capped_genus() == 0 && c.holes.len() == 2 && c.holes[0].curve != c.holes[1].curve
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RefineTarget {
    /// Add a loop bounding an empty monogon inside this face.
    Face(usize),
    /// Subdivide the edge of this dart.
    Edge(Dart),
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("refine target does not exist")]
pub struct TargetMissing;

/// Refine the cell structure without changing the surface. Original darts keep their
/// numbers; curves are re-expressed on the new map.
pub fn refine(m: &CombinatorialMap, curves: &[Curve], target: RefineTarget) -> Result<(CombinatorialMap, Vec<Curve>), TargetMissing> {
    let mut raw = RawMap::from_map(m);
    let mut pieces: Vec<Vec<Dart>> = (0..m.num_darts()).map(|d| vec![d]).collect();
    match target {
        RefineTarget::Face(f) if f < m.num_faces() => {
            let d = m.face_darts(f)[0];
            raw.add_loop(m.rot_inv(d));
        }
        RefineTarget::Edge(d) if d < m.num_darts() => {
            let e = m.alpha(d);
            let (p, q) = raw.subdivide(d);
            pieces[d].push(p);
            pieces[e].push(q);
        }
        _ => return Err(TargetMissing),
    }
    let map = raw.build().expect("refinement keeps the map valid");
    let curves = curves
        .iter()
        .map(|c| Curve::new(c.darts.iter().flat_map(|&d| pieces[d].iter().copied()).collect()))
        .collect();
    Ok((map, curves))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::curve::intersection_count;
    use crate::surface::route::{overlay, Route};

    #[test]
    fn torus_cut_along_meridian() {
        let m = CombinatorialMap::standard(1);
        let comps = cut_along(&m, &[Curve::new(vec![0])], &[]).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].capped_genus(), 0);
        assert_eq!(comps[0].hole_count(), 2);
        assert_ne!(comps[0].holes[0].face, comps[0].holes[1].face);
    }

    #[test]
    fn genus_two_cut_along_both_meridians() {
        let m = CombinatorialMap::standard(2);
        let cs = [Curve::new(vec![0]), Curve::new(vec![4])];
        // one-vertex map: curves share the vertex, so spread them first
        assert!(matches!(cut_along(&m, &cs, &[]), Err(CutError::CurvesNotDisjoint(0, 1))));
        let ov = overlay(&m, &[], &[Route::new(vec![1]), Route::new(vec![5])]).unwrap();
        let comps = cut_along(&ov.map, &ov.routes, &[]).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].capped_genus(), 0);
        assert_eq!(comps[0].hole_count(), 4);
        assert!(is_cut_system(&ov.map, &ov.routes));
        assert_eq!(are_parallel(&ov.map, &ov.routes[0], &ov.routes[1]), Ok(false));
    }

    #[test]
    fn torus_cut_along_parallel_meridians() {
        let m = CombinatorialMap::standard(1);
        let ov = overlay(&m, &[], &[Route::new(vec![1]), Route::new(vec![1])]).unwrap();
        let comps = cut_along(&ov.map, &ov.routes, &[]).unwrap();
        assert_eq!(comps.len(), 2);
        for c in &comps {
            assert_eq!((c.capped_genus(), c.hole_count()), (0, 2));
        }
        assert_eq!(are_parallel(&ov.map, &ov.routes[0], &ov.routes[1]), Ok(true));
        assert!(!is_cut_system(&ov.map, &ov.routes));
    }

    #[test]
    fn face_boundary_is_not_a_cut_system() {
        let m = CombinatorialMap::standard(1);
        let (m2, _) = refine(&m, &[], RefineTarget::Face(0)).unwrap();
        let loop_dart = m2.num_darts() - 2;
        let c = Curve::new(vec![loop_dart]);
        assert_eq!(check_cut_system(&m2, &[c]), Err(CutSystemReason::Disconnects(2)));
        assert!(is_cut_system(&m, &[Curve::new(vec![0])]));
    }

    #[test]
    fn refine_edge_keeps_intersections() {
        let m = CombinatorialMap::standard(1);
        let cs = vec![Curve::new(vec![0]), Curve::new(vec![1])];
        let (m2, cs2) = refine(&m, &cs, RefineTarget::Edge(0)).unwrap();
        assert_eq!(m2.genus(), 1);
        assert_eq!(intersection_count(&m2, &cs2[0], &cs2[1]), Ok(1));
        assert_eq!(refine(&m, &cs, RefineTarget::Face(7)).unwrap_err(), TargetMissing);
    }

    #[test]
    fn tracked_curve_survives() {
        let m = CombinatorialMap::standard(1);
        let ov = overlay(&m, &[], &[Route::new(vec![1]), Route::new(vec![1])]).unwrap();
        let comps = cut_along(&ov.map, &ov.routes[..1], &ov.routes[1..]).unwrap();
        assert_eq!(comps.len(), 1);
        let (t, c) = &comps[0].tracked[0];
        assert_eq!(*t, 0);
        c.check(&comps[0].map).unwrap();
    }
}
