//! Central surfaces built from punctured copies of a fiber joined by tubes.
//!
//! Each panel is a copy of the fiber map with a hub: a pendant edge into one face ending
//! at a vertex that carries one loop per puncture, each loop bounding a monogon. A tube
//! joins two monogons by a seam edge, turning them into one square face.

use crate::surface::{CombinatorialMap, Dart, MapError, RawMap, Route};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PanelSpec {
    /// Copy the fiber with reversed orientation.
    pub mirrored: bool,
    pub holes: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Panel {
    /// Fiber dart `d` is dart `offset + d` of the assembled map.
    pub offset: usize,
    pub mirrored: bool,
    /// Per hole, `(x, X)`: crossing `x` enters the hub face from the hole, `X` leaves it.
    pub holes: Vec<(Dart, Dart)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tube {
    /// `(panel, hole)` at either end.
    pub ends: [(usize, usize); 2],
    /// Seam dart at the first end's hub; crossing it once is the tube's meridian.
    pub seam: Dart,
}

#[derive(Debug, Clone)]
pub struct Assembly {
    pub map: CombinatorialMap,
    pub fiber_darts: usize,
    pub panels: Vec<Panel>,
    pub tubes: Vec<Tube>,
}

/// Copy `fiber` once per panel, put a hub with the requested holes into the face of
/// `hub_dart`, and join holes pairwise by tubes.
pub fn assemble(
    fiber: &CombinatorialMap,
    hub_dart: Dart,
    panels: &[PanelSpec],
    tubes: &[[(usize, usize); 2]],
) -> Result<Assembly, MapError> {
    let nd = fiber.num_darts();
    let mut raw = RawMap::default();
    for (p, spec) in panels.iter().enumerate() {
        let off = p * nd;
        raw.alpha.extend(fiber.alpha_slice().iter().map(|&d| d + off));
        if spec.mirrored {
            raw.rot.extend((0..nd).map(|d| fiber.rot_inv(d) + off));
        } else {
            raw.rot.extend(fiber.rot_slice().iter().map(|&d| d + off));
        }
    }
    let mut placed = Vec::new();
    for (p, spec) in panels.iter().enumerate() {
        let off = p * nd;
        // the same corner of the hub face in either orientation
        let corner = if spec.mirrored { hub_dart + off } else { fiber.rot_inv(hub_dart) + off };
        let (_, hub) = raw.add_pendant(corner);
        let mut prev = hub;
        let mut holes = Vec::new();
        for _ in 0..spec.holes {
            // mirrored hubs list their holes in the opposite rotational order
            let (x, big) = raw.add_loop(if spec.mirrored { hub } else { prev });
            holes.push((x, big));
            prev = x;
        }
        placed.push(Panel { offset: off, mirrored: spec.mirrored, holes });
    }
    let mut made = Vec::new();
    for &[a, b] in tubes {
        let (s, _) = raw.insert_edge(placed[a.0].holes[a.1].1, placed[b.0].holes[b.1].1);
        made.push(Tube { ends: [a, b], seam: s });
    }
    Ok(Assembly { map: raw.build()?, fiber_darts: nd, panels: placed, tubes: made })
}

impl Assembly {
    /// Fiber crossings lifted to panel `p`.
    pub fn lift(&self, p: usize, crossings: &[Dart]) -> Vec<Dart> {
        crossings.iter().map(|&d| d + self.panels[p].offset).collect()
    }

    /// `mid` given on the fiber, as a crossing sequence valid in panel `p`'s orientation.
    pub fn oriented(&self, p: usize, mid: &[Dart]) -> Vec<Dart> {
        if self.panels[p].mirrored { mid.iter().rev().copied().collect() } else { mid.to_vec() }
    }

    /// Closed route running along an arc on panel `a` from hole `ha.0` to hole `ha.1`,
    /// through the tube to panel `b`, back along the image arc from hole `hb.1` to
    /// `hb.0`, and through the other tube home. `mid` is the arc's crossing sequence on
    /// the fiber, and `psi` carries fiber darts of `a` to fiber darts of `b`.
    pub fn doubled_route(
        &self,
        (a, ha): (usize, (usize, usize)),
        (b, hb): (usize, (usize, usize)),
        mid: &[Dart],
        psi: impl Fn(Dart) -> Dart,
    ) -> Route {
        let on_a = self.oriented(a, mid);
        let on_b: Vec<Dart> = on_a.iter().rev().map(|&d| psi(d)).collect();
        let (pa, pb) = (&self.panels[a], &self.panels[b]);
        let mut c = vec![pa.holes[ha.0].0];
        c.extend(self.lift(a, &on_a));
        c.push(pa.holes[ha.1].1);
        c.push(pb.holes[hb.1].0);
        c.extend(self.lift(b, &on_b));
        c.push(pb.holes[hb.0].1);
        Route::new(c)
    }
}

/// Crossing sequences on `fiber` that start and end in the face of `hub_dart`, one per
/// edge outside a tree-cotree pair: cutting the once-punctured surface along them (the
/// puncture in that face) leaves a disk. Faces are reached by breadth-first search from
/// the hub face, the primal tree is grown greedily; both scan darts in ascending order.
pub fn arc_system(fiber: &CombinatorialMap, hub_dart: Dart) -> Vec<Vec<Dart>> {
    let nd = fiber.num_darts();
    let root = fiber.face(hub_dart);
    let mut parent: Vec<Option<Dart>> = vec![None; fiber.num_faces()];
    let mut reached = vec![false; fiber.num_faces()];
    let mut in_tree = vec![false; nd];
    reached[root] = true;
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(f) = queue.pop_front() {
        for d in 0..nd {
            if fiber.face(d) != f || in_tree[d] {
                continue;
            }
            let g = fiber.face(fiber.alpha(d));
            if !reached[g] {
                reached[g] = true;
                parent[g] = Some(d);
                in_tree[d] = true;
                in_tree[fiber.alpha(d)] = true;
                queue.push_back(g);
            }
        }
    }
    let mut uf: Vec<usize> = (0..fiber.num_vertices()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut arcs = Vec::new();
    let path_down = |f: usize| {
        let mut path = Vec::new();
        let mut g = f;
        while let Some(d) = parent[g] {
            path.push(d);
            g = fiber.face(d);
        }
        path.reverse();
        path
    };
    for d in 0..nd {
        let e = fiber.alpha(d);
        if d > e || in_tree[d] {
            continue;
        }
        let (u, v) = (find(&mut uf, fiber.vertex(d)), find(&mut uf, fiber.vertex(e)));
        if u != v {
            uf[u] = v;
            continue;
        }
        let mut arc = path_down(fiber.face(d));
        arc.push(d);
        arc.extend(path_down(fiber.face(e)).iter().rev().map(|&c| fiber.alpha(c)));
        arcs.push(arc);
    }
    arcs
}

/// A curve pushed off to one side, as a loop of crossings starting and ending at the
/// corner just before `hub_dart`. The side is whichever contains that corner.
pub fn parallel_arc(m: &CombinatorialMap, curve: &[Dart], hub_dart: Dart) -> Option<Vec<Dart>> {
    let corner = m.rot_inv(hub_dart);
    let reversed: Vec<Dart> = curve.iter().rev().map(|&d| m.alpha(d)).collect();
    for c in [curve.to_vec(), reversed] {
        // sweep counterclockwise from where the curve arrives to where it leaves
        let mut route = Vec::new();
        let mut start = None;
        for i in 0..c.len() {
            let (arrive, leave) = (m.alpha(c[i]), c[(i + 1) % c.len()]);
            let mut y = arrive;
            loop {
                if y == corner {
                    start = Some(route.len());
                }
                y = m.rot(y);
                if y == leave {
                    break;
                }
                route.push(y);
            }
        }
        if let Some(s) = start {
            if !route.is_empty() {
                let len = route.len();
                route.rotate_left(s % len);
                return Some(route);
            }
        }
    }
    None
}

/// An arc between holes of a punctured panel, by fiber crossings between its ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub mid: Vec<Dart>,
}

/// Arcs cutting a genus-`g` panel with `holes` punctures into a disk: a chain through
/// the holes in order, then the loops of [`arc_system`] at hole 0. There are
/// `2g + holes - 1` of them.
pub fn arc_system_punctured(fiber: &CombinatorialMap, hub_dart: Dart, holes: usize) -> Vec<Arc> {
    let mut out: Vec<Arc> = (1..holes).map(|h| Arc { from: h - 1, to: h, mid: Vec::new() }).collect();
    if holes > 0 {
        out.extend(arc_system(fiber, hub_dart).into_iter().map(|mid| Arc { from: 0, to: 0, mid }));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{check_cut_system, overlay};

    fn double(g: usize, holes: usize) -> (Assembly, Vec<Route>) {
        let f = CombinatorialMap::standard(g);
        let specs = [PanelSpec { mirrored: false, holes }, PanelSpec { mirrored: true, holes }];
        let tubes: Vec<_> = (0..holes).map(|h| [(0, h), (1, h)]).collect();
        let asm = assemble(&f, 0, &specs, &tubes).unwrap();
        let routes = arc_system_punctured(&f, 0, holes)
            .iter()
            .map(|a| asm.doubled_route((0, (a.from, a.to)), (1, (a.from, a.to)), &a.mid, |d| d))
            .collect();
        (asm, routes)
    }

    #[test]
    fn arc_counts() {
        assert!(arc_system(&CombinatorialMap::standard(0), 0).is_empty());
        assert_eq!(arc_system(&CombinatorialMap::standard(1), 0).len(), 2);
        assert_eq!(arc_system_punctured(&CombinatorialMap::standard(2), 0, 3).len(), 6);
    }

    #[test]
    fn doubled_arcs_cut_the_double() {
        for (g, holes) in [(1, 1), (0, 3), (2, 3), (1, 2)] {
            let (asm, routes) = double(g, holes);
            assert_eq!(asm.map.genus(), 2 * g + holes - 1);
            let o = overlay(&asm.map, &[], &routes).unwrap();
            assert_eq!(check_cut_system(&o.map, &o.routes), Ok(()), "g={g} holes={holes}");
        }
    }

    #[test]
    fn tube_meridian_is_a_route() {
        let (asm, _) = double(1, 1);
        let o = overlay(&asm.map, &[], &[Route::new(vec![asm.tubes[0].seam])]).unwrap();
        assert_eq!(o.routes[0].len(), 1);
    }
}
