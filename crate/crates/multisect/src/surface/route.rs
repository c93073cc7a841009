//! Drawing new curves onto a map.
//!
//! A [`Route`] is a closed curve given only by the sequence of edges it crosses:
//! crossing via dart `c` goes from `face(c)` to `face(alpha(c))`. [`overlay`]
//! orders parallel strands so that they cross only where their itineraries force it,
//! splits edges at the crossing points, draws each face's chords as straight
//! segments in a disk model of the face and returns the refined map with every
//! route turned into an edge curve.

use std::cmp::Ordering;
use std::f64::consts::PI;

use thiserror::Error;

use super::curve::Curve;
use super::map::{CombinatorialMap, Dart, MapError, RawMap};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Route {
    pub crossings: Vec<Dart>,
}

impl Route {
    pub fn new(crossings: Vec<Dart>) -> Self {
        Route { crossings }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RouteError {
    #[error("route {0} is empty")]
    Empty(usize),
    #[error("route {route}: dart {dart} is out of range")]
    OutOfRange { route: usize, dart: Dart },
    #[error("route {route} leaves the face it entered at step {index}")]
    FaceMismatch { route: usize, index: usize },
    #[error("route {route} crosses back over the same edge at step {index}")]
    UTurn { route: usize, index: usize },
    #[error("degenerate chord arrangement in a face")]
    Degenerate,
    #[error(transparent)]
    Map(#[from] MapError),
}

/// Result of [`overlay`].
#[derive(Debug, Clone)]
pub struct Overlay {
    pub map: CombinatorialMap,
    /// Input edge curves re-expressed on the refined map.
    pub curves: Vec<Curve>,
    /// One curve per input route.
    pub routes: Vec<Curve>,
    /// For every old dart, the new darts it was split into, in order.
    pub pieces: Vec<Vec<Dart>>,
}

/// A straight chord of a face disk between two boundary positions.
pub(crate) struct Chord {
    pub start_dart: Dart,
    pub end_dart: Dart,
    pub s0: f64,
    pub s1: f64,
}

fn disk_point(s: f64, len: f64) -> (f64, f64) {
    let th = -2.0 * PI * s / len;
    (th.cos(), th.sin())
}

/// Lay out chords in a disk whose boundary has perimeter parameter `len`, adding
/// crossing vertices to `raw`. `start_dart`/`end_dart` already sit at the chord's
/// end vertices; their alpha is set here. Returns the forward darts of every chord.
pub(crate) fn wire_chords(raw: &mut RawMap, chords: &[Chord], len: f64) -> Result<Vec<Vec<Dart>>, RouteError> {
    let pts: Vec<_> = chords
        .iter()
        .map(|c| (disk_point(c.s0, len), disk_point(c.s1, len)))
        .collect();
    // crossings[a] = list of (lambda along a, crossing id)
    let mut along: Vec<Vec<(f64, usize)>> = vec![Vec::new(); chords.len()];
    let mut cross_pairs: Vec<(usize, usize)> = Vec::new();
    for a in 0..chords.len() {
        let (lo, hi) = if chords[a].s0 < chords[a].s1 {
            (chords[a].s0, chords[a].s1)
        } else {
            (chords[a].s1, chords[a].s0)
        };
        let inside = |x: f64| lo < x && x < hi;
        for b in a + 1..chords.len() {
            if inside(chords[b].s0) == inside(chords[b].s1) {
                continue;
            }
            let ((ax, ay), (bx, by)) = pts[a];
            let ((cx, cy), (dx, dy)) = pts[b];
            let (ux, uy) = (bx - ax, by - ay);
            let (vx, vy) = (dx - cx, dy - cy);
            let den = ux * vy - uy * vx;
            if den.abs() < 1e-15 {
                return Err(RouteError::Degenerate);
            }
            let la = ((cx - ax) * vy - (cy - ay) * vx) / den;
            let lb = ((cx - ax) * uy - (cy - ay) * ux) / den;
            let id = cross_pairs.len();
            cross_pairs.push((a, b));
            along[a].push((la, id));
            along[b].push((lb, id));
        }
    }
    // darts of each crossing: (dart, direction angle)
    let mut at_cross: Vec<Vec<(Dart, f64)>> = vec![Vec::new(); cross_pairs.len()];
    let mut forward = Vec::with_capacity(chords.len());
    for (a, ch) in chords.iter().enumerate() {
        let list = &mut along[a];
        list.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        for w in list.windows(2) {
            if (w[1].0 - w[0].0).abs() < 1e-12 {
                return Err(RouteError::Degenerate);
            }
        }
        let ((ax, ay), (bx, by)) = pts[a];
        let ang_f = (by - ay).atan2(bx - ax);
        let ang_b = (ay - by).atan2(ax - bx);
        let mut fw = vec![ch.start_dart];
        let mut prev = ch.start_dart;
        for &(_, x) in list.iter() {
            let (back, next) = raw.new_edge_pair_free();
            raw.alpha[prev] = back;
            raw.alpha[back] = prev;
            at_cross[x].push((back, ang_b));
            at_cross[x].push((next, ang_f));
            fw.push(next);
            prev = next;
        }
        raw.alpha[prev] = ch.end_dart;
        raw.alpha[ch.end_dart] = prev;
        forward.push(fw);
    }
    for darts in &mut at_cross {
        darts.sort_by(|x, y| x.1.partial_cmp(&y.1).unwrap());
        let ds: Vec<Dart> = darts.iter().map(|x| x.0).collect();
        raw.set_cycle(&ds);
    }
    Ok(forward)
}

impl RawMap {
    /// Two fresh unpaired darts.
    fn new_edge_pair_free(&mut self) -> (Dart, Dart) {
        (self.new_dart(), self.new_dart())
    }
}

struct FaceIndex {
    pos: Vec<usize>,
    len: Vec<usize>,
}

impl FaceIndex {
    fn new(m: &CombinatorialMap) -> Self {
        let mut pos = vec![0; m.num_darts()];
        let mut len = vec![0; m.num_faces()];
        for f in 0..m.num_faces() {
            let ds = m.face_darts(f);
            len[f] = ds.len();
            for (i, &d) in ds.iter().enumerate() {
                pos[d] = i;
            }
        }
        FaceIndex { pos, len }
    }
}

fn validate_routes(m: &CombinatorialMap, routes: &[Route]) -> Result<(), RouteError> {
    for (r, route) in routes.iter().enumerate() {
        let cs = &route.crossings;
        if cs.is_empty() {
            return Err(RouteError::Empty(r));
        }
        for &d in cs {
            if d >= m.num_darts() {
                return Err(RouteError::OutOfRange { route: r, dart: d });
            }
        }
        for i in 0..cs.len() {
            let c = cs[i];
            let next = cs[(i + 1) % cs.len()];
            if m.face(m.alpha(c)) != m.face(next) {
                return Err(RouteError::FaceMismatch { route: r, index: i });
            }
            if next == m.alpha(c) {
                return Err(RouteError::UTurn { route: r, index: i });
            }
        }
    }
    Ok(())
}

struct Strands<'a> {
    m: &'a CombinatorialMap,
    routes: &'a [Route],
    faces: &'a FaceIndex,
}

impl Strands<'_> {
    /// k-th crossing after occurrence (r, i), walking in the direction that crosses `c0`.
    fn step(&self, r: usize, i: usize, forward: bool, k: usize) -> Dart {
        let cs = &self.routes[r].crossings;
        let n = cs.len();
        if forward {
            cs[(i + k) % n]
        } else {
            self.m.alpha(cs[(i + n - k % n) % n])
        }
    }

    /// Left-to-right order of two strands crossing edge `c0` (left = smaller position along `c0`).
    fn compare(&self, c0: Dart, a: (usize, usize), b: (usize, usize)) -> Ordering {
        // Walk in the travel direction of the lesser strand. Every edge of a shared
        // stretch then consults the same end of it, so the strands swap at most once.
        let lead = a.min(b);
        let dir = if self.routes[lead.0].crossings[lead.1] == c0 { c0 } else { self.m.alpha(c0) };
        if let Some(o) = self.diverge(dir, a, b) {
            return if dir == c0 { o } else { o.reverse() };
        }
        let fa = self.routes[a.0].crossings[a.1] == c0;
        let fb = self.routes[b.0].crossings[b.1] == c0;
        // parallel forever: keep the lower route on its own left
        if a.0 == b.0 {
            return a.1.cmp(&b.1);
        }
        if a.0 < b.0 {
            if fa { Ordering::Less } else { Ordering::Greater }
        } else if fb {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    /// Order along `c0` decided where the strands part, walking across `c0`.
    fn diverge(&self, c0: Dart, a: (usize, usize), b: (usize, usize)) -> Option<Ordering> {
        let fa = self.routes[a.0].crossings[a.1] == c0;
        let fb = self.routes[b.0].crossings[b.1] == c0;
        let lim = self.routes[a.0].crossings.len() + self.routes[b.0].crossings.len() + 2;
        let mut prev = c0;
        for k in 1..=lim {
            let x = self.step(a.0, a.1, fa, k);
            let y = self.step(b.0, b.1, fb, k);
            if x != y {
                let entry = self.m.alpha(prev);
                let f = self.m.face(entry);
                let len = self.faces.len[f];
                let off = |d: Dart| (self.faces.pos[d] + len - self.faces.pos[entry]) % len;
                return Some(off(x).cmp(&off(y)));
            }
            prev = x;
        }
        None
    }
}

fn jitter(j: usize, c0: Dart) -> f64 {
    let x = (j as f64 + 1.0) * 0.618_033_988_75 + c0 as f64 * 0.754_877_666_2;
    0.4 * (x.fract() - 0.5)
}

/// Draw `routes` onto `m`, keeping the edge curves `curves`.
pub fn overlay(m: &CombinatorialMap, curves: &[Curve], routes: &[Route]) -> Result<Overlay, RouteError> {
    validate_routes(m, routes)?;
    let faces = FaceIndex::new(m);
    let n = m.num_darts();

    // occurrences per canonical edge dart
    let mut occ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (r, route) in routes.iter().enumerate() {
        for (i, &c) in route.crossings.iter().enumerate() {
            occ[m.edge(c)].push((r, i));
        }
    }
    let strands = Strands { m, routes, faces: &faces };
    for c0 in 0..n {
        if occ[c0].len() > 1 {
            let mut list = std::mem::take(&mut occ[c0]);
            list.sort_by(|&a, &b| strands.compare(c0, a, b));
            occ[c0] = list;
        }
    }

    let mut raw = RawMap::from_map(m);
    let mut pieces: Vec<Vec<Dart>> = (0..n).map(|d| vec![d]).collect();
    // per occurrence: t along its own crossing dart, dart ending the previous chord,
    // dart starting the next chord
    let mut t_of: Vec<Vec<f64>> = routes.iter().map(|r| vec![0.0; r.crossings.len()]).collect();
    let mut prev_end: Vec<Vec<Dart>> = routes.iter().map(|r| vec![0; r.crossings.len()]).collect();
    let mut next_start: Vec<Vec<Dart>> = routes.iter().map(|r| vec![0; r.crossings.len()]).collect();

    for c0 in 0..n {
        let list = &occ[c0];
        if list.is_empty() {
            continue;
        }
        let k = list.len();
        let back_orig = m.alpha(c0);
        let mut fw = vec![c0];
        let mut bw_new = Vec::with_capacity(k);
        for (j, &(r, i)) in list.iter().enumerate() {
            let t = (j as f64 + 1.0 + jitter(j, c0)) / (k as f64 + 1.0);
            let c = routes[r].crossings[i];
            t_of[r][i] = if c == c0 { t } else { 1.0 - t };
            let b_prev = raw.new_dart(); // toward tail, pairs with fw[j]
            let f_next = raw.new_dart(); // toward head
            let left = raw.new_dart();
            let right = raw.new_dart();
            raw.alpha[fw[j]] = b_prev;
            raw.alpha[b_prev] = fw[j];
            raw.set_cycle(&[f_next, left, b_prev, right]);
            if c == c0 {
                prev_end[r][i] = right;
                next_start[r][i] = left;
            } else {
                prev_end[r][i] = left;
                next_start[r][i] = right;
            }
            fw.push(f_next);
            bw_new.push(b_prev);
        }
        let last = *fw.last().unwrap();
        raw.alpha[last] = back_orig;
        raw.alpha[back_orig] = last;
        let mut bw = vec![back_orig];
        bw.extend(bw_new.iter().rev());
        pieces[c0] = fw;
        pieces[back_orig] = bw;
    }

    // chords grouped by face
    let mut by_face: Vec<Vec<(usize, usize)>> = vec![Vec::new(); m.num_faces()];
    for (r, route) in routes.iter().enumerate() {
        for i in 0..route.crossings.len() {
            by_face[m.face(m.alpha(route.crossings[i]))].push((r, i));
        }
    }
    let mut chord_darts: Vec<Vec<Vec<Dart>>> = routes.iter().map(|r| vec![Vec::new(); r.crossings.len()]).collect();
    for (f, list) in by_face.iter().enumerate() {
        if list.is_empty() {
            continue;
        }
        let chords: Vec<Chord> = list
            .iter()
            .map(|&(r, i)| {
                let cs = &routes[r].crossings;
                let j = (i + 1) % cs.len();
                let entry = m.alpha(cs[i]);
                Chord {
                    start_dart: next_start[r][i],
                    end_dart: prev_end[r][j],
                    s0: faces.pos[entry] as f64 + (1.0 - t_of[r][i]),
                    s1: faces.pos[cs[j]] as f64 + t_of[r][j],
                }
            })
            .collect();
        let wired = wire_chords(&mut raw, &chords, faces.len[f] as f64)?;
        for (&(r, i), w) in list.iter().zip(wired) {
            chord_darts[r][i] = w;
        }
    }

    let map = raw.build()?;
    let curves = curves
        .iter()
        .map(|c| Curve::new(c.darts.iter().flat_map(|&d| pieces[d].iter().copied()).collect()))
        .collect();
    let routes = chord_darts.into_iter().map(|ch| Curve::new(ch.concat())).collect();
    Ok(Overlay { map, curves, routes, pieces })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::curve::intersection_count;

    #[test]
    fn meridian_and_longitude_on_torus() {
        let m = CombinatorialMap::standard(1);
        // dart 0 = a, 1 = b; crossing a gives a curve meeting a once
        let ov = overlay(&m, &[], &[Route::new(vec![0]), Route::new(vec![1])]).unwrap();
        assert_eq!(ov.map.genus(), 1);
        for c in &ov.routes {
            c.check(&ov.map).unwrap();
        }
        assert_eq!(intersection_count(&ov.map, &ov.routes[0], &ov.routes[1]), Ok(1));
    }

    #[test]
    fn parallel_routes_stay_disjoint() {
        let m = CombinatorialMap::standard(1);
        let routes: Vec<Route> = (0..3).map(|_| Route::new(vec![0])).chain((0..2).map(|_| Route::new(vec![1]))).collect();
        let ov = overlay(&m, &[], &routes).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                if i == j {
                    continue;
                }
                let k = intersection_count(&ov.map, &ov.routes[i], &ov.routes[j]).unwrap();
                let expect = usize::from((i < 3) != (j < 3));
                assert_eq!(k, expect, "{i} {j}");
            }
        }
    }

    #[test]
    fn existing_curve_is_crossed() {
        let m = CombinatorialMap::standard(1);
        let a = Curve::new(vec![0]);
        let ov = overlay(&m, &[a], &[Route::new(vec![0])]).unwrap();
        ov.curves[0].check(&ov.map).unwrap();
        assert_eq!(intersection_count(&ov.map, &ov.curves[0], &ov.routes[0]), Ok(1));
    }

    #[test]
    fn bad_routes_rejected() {
        let m = CombinatorialMap::standard(0);
        // the sphere loop has different faces on its two sides
        assert!(matches!(overlay(&m, &[], &[Route::new(vec![0])]), Err(RouteError::FaceMismatch { .. })));
        assert!(matches!(overlay(&m, &[], &[Route::new(vec![0, 1])]), Err(RouteError::UTurn { .. })));
    }
}
