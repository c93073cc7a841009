//! Handleslides: replace a curve by its band sum with another curve of its family.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use thiserror::Error;

use super::MultisectionDiagram;
use crate::surface::{are_parallel, cut_along, disjoint, overlay, CombinatorialMap, Curve, Dart, RawMap, Route, RouteError, Side};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Band {
    /// Band through the faces, crossing the fewest curves of other families.
    Auto,
    /// As `Auto`, leaving the sliding curve and reaching the other curve on the given
    /// sides (relative to each curve's stored direction).
    Sided(Side, Side),
    /// Dart path from a vertex of the sliding curve to a vertex of the other curve.
    Darts(Vec<Dart>),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SlideError {
    #[error("curves are not two distinct members of one family")]
    NotSameFamily,
    #[error("the two curves intersect")]
    CurvesIntersect,
    #[error("curves are not parallel")]
    NotParallel,
    #[error("the annulus between the old and new curve meets the family")]
    AnnulusBlocked,
    #[error("band blocked: {0}")]
    BandBlocked(String),
    #[error(transparent)]
    Route(#[from] RouteError),
}

fn blocked(msg: &str) -> SlideError {
    SlideError::BandBlocked(msg.to_string())
}

/// Darts `y` whose preceding corner touches `curve`, on `side` of it if given.
fn corners(m: &CombinatorialMap, curve: &Curve, side: Option<Side>) -> HashSet<Dart> {
    let n = curve.darts.len();
    let mut out = HashSet::new();
    for i in 0..n {
        let (arrive, leave) = (m.alpha(curve.darts[i]), curve.darts[(i + 1) % n]);
        // counterclockwise from arrive to leave lies on the right
        let mut y = m.rot(arrive);
        let mut right = true;
        loop {
            if side.is_none_or(|s| s == if right { Side::Right } else { Side::Left }) {
                out.insert(y);
            }
            if y == leave {
                right = false;
            }
            if y == arrive {
                break;
            }
            y = m.rot(y);
        }
    }
    out
}

/// Thread a band from `c` to `over` through faces, crossing as few curves of other
/// families as possible and then as few edges as possible; ties go to smaller darts. The
/// band's faces get new edges and its crossings new vertices; returns the refined
/// diagram and the band as a dart path in it.
fn auto_band(
    d: &MultisectionDiagram,
    family: usize,
    c: usize,
    over: usize,
    sides: Option<(Side, Side)>,
) -> Option<(MultisectionDiagram, Vec<Dart>)> {
    let m = &d.map;
    let fam = &d.families[family];
    let own: HashSet<Dart> = fam.iter().flat_map(|x| x.edges(m)).collect();
    let others: HashSet<Dart> = d
        .families
        .iter()
        .enumerate()
        .filter(|&(f, _)| f != family)
        .flat_map(|(_, cs)| cs.iter().flat_map(|x| x.edges(m)))
        .collect();
    let cv = corners(m, &fam[c], sides.map(|s| s.0));
    let ov = corners(m, &fam[over], sides.map(|s| s.1));
    // a face's first dart following an allowed corner
    let corner = |f: usize, set: &HashSet<Dart>| m.face_darts(f).into_iter().filter(|y| set.contains(y)).min();

    let nf = m.num_faces();
    let mut best: Vec<Option<(usize, usize)>> = vec![None; nf];
    let mut parent: Vec<Option<Dart>> = vec![None; nf];
    let mut heap = BinaryHeap::new();
    for f in (0..nf).filter(|&f| corner(f, &cv).is_some()) {
        best[f] = Some((0, 0));
        heap.push(Reverse((0, 0, f)));
    }
    let mut end = None;
    while let Some(Reverse((cost, len, f))) = heap.pop() {
        if best[f] != Some((cost, len)) {
            continue;
        }
        if corner(f, &ov).is_some() {
            end = Some(f);
            break;
        }
        let mut ds = m.face_darts(f);
        ds.sort_unstable();
        for x in ds {
            if own.contains(&m.edge(x)) {
                continue;
            }
            let g = m.face(m.alpha(x));
            let step = (cost + usize::from(others.contains(&m.edge(x))), len + 1);
            if best[g].is_none_or(|b| step < b) {
                best[g] = Some(step);
                parent[g] = Some(x);
                heap.push(Reverse((step.0, step.1, g)));
            }
        }
    }
    let end = end?;
    let mut crossings = Vec::new();
    let mut f = end;
    while let Some(x) = parent[f] {
        crossings.push(x);
        f = m.face(x);
    }
    crossings.reverse();
    let (start_face, start) = (f, corner(f, &cv)?);
    let finish = corner(end, &ov)?;
    if start_face == end && crossings.is_empty() && m.vertex(start) == m.vertex(finish) {
        return None;
    }

    let mut raw = RawMap::from_map(m);
    let mut pieces: Vec<Vec<Dart>> = (0..m.num_darts()).map(|x| vec![x]).collect();
    let mut path = Vec::new();
    let mut from = m.rot_inv(start);
    for &x in &crossings {
        let (p, q) = raw.subdivide(x);
        pieces[x].push(p);
        pieces[m.alpha(x)].push(q);
        path.push(raw.insert_edge(from, q).0);
        from = p;
    }
    path.push(raw.insert_edge(from, m.rot_inv(finish)).0);
    let map = raw.build().ok()?;
    let expand = |x: &Curve| Curve::new(x.darts.iter().flat_map(|&y| pieces[y].iter().copied()).collect());
    let families = d.families.iter().map(|cs| cs.iter().map(expand).collect()).collect();
    Some((MultisectionDiagram { map, families, labels: d.labels.clone(), meta: d.meta.clone() }, path))
}

/// Slide curve `c` of family `family` (0-based) over curve `over` of the same family.
pub fn handleslide(d: &MultisectionDiagram, family: usize, c: usize, over: usize, band: &Band) -> Result<MultisectionDiagram, SlideError> {
    handleslide_traced(d, family, c, over, band).map(|(d, _)| d)
}

/// As [`handleslide`], also returning the replaced curve drawn on the new map.
pub fn handleslide_traced(
    d: &MultisectionDiagram,
    family: usize,
    c: usize,
    over: usize,
    band: &Band,
) -> Result<(MultisectionDiagram, Curve), SlideError> {
    let fam = d.families.get(family).ok_or(SlideError::NotSameFamily)?;
    if c == over || c >= fam.len() || over >= fam.len() {
        return Err(SlideError::NotSameFamily);
    }
    let m = &d.map;
    let (cc, oc) = (&fam[c], &fam[over]);
    if !disjoint(m, cc, oc) {
        return Err(SlideError::CurvesIntersect);
    }
    // family curves other than c and over block the band entirely; c and over only
    // in the band's interior
    let mut forbidden_v = HashSet::new();
    let mut forbidden_e = HashSet::new();
    for x in fam {
        forbidden_v.extend(x.vertices(m));
        forbidden_e.extend(x.edges(m));
    }
    let path = match band {
        Band::Auto | Band::Sided(..) => {
            let sides = if let Band::Sided(a, b) = band { Some((*a, *b)) } else { None };
            let (refined, path) = auto_band(d, family, c, over, sides).ok_or_else(|| blocked("no admissible band"))?;
            return handleslide_traced(&refined, family, c, over, &Band::Darts(path));
        }
        Band::Darts(p) => p.clone(),
    };
    if path.is_empty() || path.iter().any(|&x| x >= m.num_darts()) {
        return Err(blocked("empty or out-of-range path"));
    }
    let cv: HashSet<usize> = cc.vertices(m).into_iter().collect();
    let ov: HashSet<usize> = oc.vertices(m).into_iter().collect();
    if !cv.contains(&m.vertex(path[0])) || !ov.contains(&m.head(*path.last().unwrap())) {
        return Err(blocked("path does not join the two curves"));
    }
    let mut seen_v = HashSet::new();
    for (i, &x) in path.iter().enumerate() {
        if i > 0 && m.vertex(x) != m.head(path[i - 1]) {
            return Err(blocked("path is not a walk"));
        }
        if forbidden_e.contains(&m.edge(x)) {
            return Err(blocked("path uses an edge of the family"));
        }
        if i > 0 && forbidden_v.contains(&m.vertex(x)) {
            return Err(blocked("path meets the family in its interior"));
        }
        if !seen_v.insert(m.vertex(x)) {
            return Err(blocked("path is not embedded"));
        }
    }

    // G = c + band + over
    let mut in_g = vec![false; m.num_darts()];
    for &x in cc.darts.iter().chain(&oc.darts).chain(&path) {
        in_g[x] = true;
        in_g[m.alpha(x)] = true;
    }
    let g_vertex: HashSet<usize> = cc.vertices(m).into_iter().chain(oc.vertices(m)).chain(path.iter().map(|&x| m.vertex(x))).collect();

    // split edges running between two vertices of G so the walk never turns back on itself
    let mut raw = RawMap::from_map(m);
    let mut pieces: Vec<Vec<Dart>> = (0..m.num_darts()).map(|x| vec![x]).collect();
    for e in 0..m.num_darts() {
        if m.edge(e) == e && !in_g[e] && g_vertex.contains(&m.vertex(e)) && g_vertex.contains(&m.head(e)) {
            let (p, q) = raw.subdivide(e);
            pieces[e].push(p);
            pieces[m.alpha(e)].push(q);
        }
    }
    in_g.resize(raw.len(), false);
    let mut m1 = raw.clone().build().expect("subdivision keeps the map valid");

    let walk = |m1: &CombinatorialMap, in_g: &[bool]| {
        let mut crossings = Vec::new();
        let mut w = path[0];
        let mut visited_back = false;
        loop {
            if w == m1.alpha(path[0]) {
                visited_back = true;
            }
            let mut y = m1.rot(m1.alpha(w));
            while !in_g[y] {
                crossings.push(y);
                y = m1.rot(y);
            }
            w = y;
            if w == path[0] {
                break;
            }
        }
        (crossings, visited_back)
    };
    let (mut crossings, both_sides) = walk(&m1, &in_g);
    if !both_sides {
        return Err(blocked("band does not join the curves' neighbourhoods"));
    }
    if crossings.is_empty() {
        raw.add_pendant(m.alpha(path[0]));
        in_g.resize(raw.len(), false);
        m1 = raw.build().expect("pendant keeps the map valid");
        crossings = walk(&m1, &in_g).0;
    }

    let expand = |x: &Curve| Curve::new(x.darts.iter().flat_map(|&y| pieces[y].iter().copied()).collect());
    let mut others = Vec::new();
    for (f, cs) in d.families.iter().enumerate() {
        for (j, x) in cs.iter().enumerate() {
            if (f, j) != (family, c) {
                others.push(expand(x));
            }
        }
    }
    others.push(expand(cc));
    let ov = overlay(&m1, &others, &[Route::new(crossings)])?;
    let mut kept = ov.curves;
    let old = kept.pop().unwrap();
    let mut it = kept.into_iter();
    let mut new_c = ov.routes.into_iter();
    let families = d
        .families
        .iter()
        .enumerate()
        .map(|(f, cs)| {
            (0..cs.len())
                .map(|j| if (f, j) == (family, c) { new_c.next().unwrap() } else { it.next().unwrap() })
                .collect()
        })
        .collect();
    Ok((MultisectionDiagram { map: ov.map, families, labels: d.labels.clone(), meta: d.meta.clone() }, old))
}

/// Isotope curve `c` of `family` onto a parallel copy of curve `onto.1` of family
/// `onto.0`, drawn right beside it. This clears bigons the annulus between them may hold
/// with other families' curves.
pub fn push_onto(d: &MultisectionDiagram, family: usize, c: usize, onto: (usize, usize)) -> Result<MultisectionDiagram, SlideError> {
    let fam = d.families.get(family).ok_or(SlideError::NotSameFamily)?;
    let target = d.families.get(onto.0).and_then(|f| f.get(onto.1)).ok_or(SlideError::NotParallel)?;
    if c >= fam.len() || onto.0 == family {
        return Err(SlideError::NotSameFamily);
    }
    let m = &d.map;
    let x = &fam[c];
    if !disjoint(m, x, target) || !are_parallel(m, x, target).unwrap_or(false) {
        return Err(SlideError::NotParallel);
    }
    // split chords of the target so the pushed copy never turns back on itself
    let on_t: HashSet<usize> = target.vertices(m).into_iter().collect();
    let in_t: HashSet<Dart> = target.edges(m).into_iter().collect();
    let mut raw = RawMap::from_map(m);
    let mut pieces: Vec<Vec<Dart>> = (0..m.num_darts()).map(|x| vec![x]).collect();
    for e in 0..m.num_darts() {
        if m.edge(e) == e && !in_t.contains(&e) && on_t.contains(&m.vertex(e)) && on_t.contains(&m.head(e)) {
            let (p, q) = raw.subdivide(e);
            pieces[e].push(p);
            pieces[m.alpha(e)].push(q);
        }
    }
    let m1 = raw.build().expect("subdivision keeps the map valid");
    let expand = |x: &Curve| Curve::new(x.darts.iter().flat_map(|&y| pieces[y].iter().copied()).collect());
    let t1 = expand(target);
    let reversed = Curve::new(t1.darts.iter().rev().map(|&y| m1.alpha(y)).collect());
    for side in [t1.clone(), reversed] {
        let n = side.darts.len();
        let mut crossings = Vec::new();
        for i in 0..n {
            let (arrive, leave) = (m1.alpha(side.darts[i]), side.darts[(i + 1) % n]);
            let mut y = m1.rot(arrive);
            while y != leave {
                crossings.push(y);
                y = m1.rot(y);
            }
        }
        if crossings.is_empty() {
            continue;
        }
        let mut others = Vec::new();
        for (f, cs) in d.families.iter().enumerate() {
            for (j, y) in cs.iter().enumerate() {
                if (f, j) != (family, c) {
                    others.push(expand(y));
                }
            }
        }
        others.push(expand(x));
        let ov = overlay(&m1, &others, &[Route::new(crossings)])?;
        let mut kept = ov.curves;
        let old = kept.pop().unwrap();
        let new = ov.routes.into_iter().next().unwrap();
        let mut it = kept.into_iter();
        let families: Vec<Vec<Curve>> = d
            .families
            .iter()
            .enumerate()
            .map(|(f, cs)| (0..cs.len()).map(|j| if (f, j) == (family, c) { new.clone() } else { it.next().unwrap() }).collect())
            .collect();
        // the old and new curve must cobound an annulus missing the rest of the family
        let mut cut = vec![old, new];
        cut.extend(families[family].iter().enumerate().filter(|&(j, _)| j != c).map(|(_, y)| y.clone()));
        let Ok(comps) = cut_along(&ov.map, &cut, &[]) else { continue };
        let annulus = comps.iter().any(|k| {
            k.capped_genus() == 0 && k.holes.len() == 2 && k.holes.iter().all(|h| h.curve < 2) && k.holes[0].curve != k.holes[1].curve
        });
        if annulus {
            return Ok(MultisectionDiagram { map: ov.map, families, labels: d.labels.clone(), meta: d.meta.clone() });
        }
    }
    Err(SlideError::AnnulusBlocked)
}

/// One line of a slide script.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlideStep {
    /// 1-based family.
    pub family: usize,
    pub curve: String,
    pub over: String,
    pub band: Band,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScriptStep {
    Slide(SlideStep),
    /// Isotope `curve` of `family` onto curve `onto.1` of family `onto.0`, all 1-based.
    Push { family: usize, curve: String, onto: (usize, String) },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SlideScript {
    pub steps: Vec<ScriptStep>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScriptError {
    #[error("line {0}: {1}")]
    Parse(usize, String),
    #[error("step {0}: no curve {1} in family {2}")]
    UnknownCurve(usize, String, usize),
    #[error("step {0}: {1}")]
    Slide(usize, SlideError),
}

fn resolve(d: &MultisectionDiagram, family: usize, key: &str) -> Option<usize> {
    let labels = d.labels.get(family)?;
    if let Some(i) = labels.iter().position(|l| l == key) {
        return Some(i);
    }
    key.parse().ok().filter(|&i| i < labels.len())
}

fn parse_band(v: &str) -> Option<Band> {
    if v == "auto" {
        return Some(Band::Auto);
    }
    if let Some(sides) = v.strip_prefix("auto:") {
        let side = |ch: char| match ch {
            'l' => Some(Side::Left),
            'r' => Some(Side::Right),
            _ => None,
        };
        let cs: Vec<Option<Side>> = sides.chars().map(side).collect();
        return match cs[..] {
            [Some(a), Some(b)] => Some(Band::Sided(a, b)),
            _ => None,
        };
    }
    v.split(',').map(str::parse).collect::<Result<Vec<Dart>, _>>().ok().map(Band::Darts)
}

impl SlideScript {
    /// One step per line:
    ///
    /// ```text
    /// slide family=<i> curve=<c> over=<c> [band=auto|auto:<l|r><l|r>|d1,d2,...]
    /// push family=<i> curve=<c> onto=<j>:<c>
    /// ```
    ///
    /// A curve `<c>` is a label or an index counting from 0 within its family; families
    /// count from 1. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, ScriptError> {
        let mut steps = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let ln = ln + 1;
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let err = |s: String| ScriptError::Parse(ln, s);
            let mut words = line.split_whitespace();
            let verb = words.next().unwrap();
            if verb != "slide" && verb != "push" {
                return Err(err(format!("expected `slide` or `push`, found `{verb}`")));
            }
            let (mut family, mut curve, mut over, mut onto, mut band) = (None, None, None, None, Band::Auto);
            for w in words {
                let (k, v) = w.split_once('=').ok_or_else(|| err(format!("bad field `{w}`")))?;
                match (verb, k) {
                    (_, "family") => family = Some(v.parse::<usize>().map_err(|_| err(format!("bad family `{v}`")))?),
                    (_, "curve") => curve = Some(v.to_string()),
                    ("slide", "over") => over = Some(v.to_string()),
                    ("slide", "band") => band = parse_band(v).ok_or_else(|| err(format!("bad band `{v}`")))?,
                    ("push", "onto") => {
                        let target = v.split_once(':').and_then(|(f, c)| Some((f.parse::<usize>().ok().filter(|&f| f > 0)?, c.to_string())));
                        onto = Some(target.ok_or_else(|| err(format!("bad target `{v}`")))?);
                    }
                    _ => return Err(err(format!("unknown field `{k}`"))),
                }
            }
            let family = family.filter(|&f| f > 0).ok_or_else(|| err("need family>=1".into()))?;
            let curve = curve.ok_or_else(|| err("need curve".into()))?;
            steps.push(match verb {
                "slide" => ScriptStep::Slide(SlideStep { family, curve, over: over.ok_or_else(|| err("need over".into()))?, band }),
                _ => ScriptStep::Push { family, curve, onto: onto.ok_or_else(|| err("need onto".into()))? },
            });
        }
        Ok(SlideScript { steps })
    }

    /// Run the steps in order. Bands are searched on the canonical numbering of `d`, so
    /// the result does not depend on how `d` was numbered.
    pub fn apply(&self, d: &MultisectionDiagram) -> Result<MultisectionDiagram, ScriptError> {
        let mut cur = crate::io::parse(&crate::io::serialize(d)).expect("written diagrams read back");
        for (i, s) in self.steps.iter().enumerate() {
            let find = |cur: &MultisectionDiagram, fam: usize, key: &str| {
                resolve(cur, fam - 1, key).ok_or_else(|| ScriptError::UnknownCurve(i + 1, key.to_string(), fam))
            };
            cur = match s {
                ScriptStep::Slide(s) => {
                    let (c, o) = (find(&cur, s.family, &s.curve)?, find(&cur, s.family, &s.over)?);
                    handleslide(&cur, s.family - 1, c, o, &s.band)
                }
                ScriptStep::Push { family, curve, onto } => {
                    let (c, o) = (find(&cur, *family, curve)?, find(&cur, onto.0, &onto.1)?);
                    push_onto(&cur, family - 1, c, (onto.0 - 1, o))
                }
            }
            .map_err(|e| ScriptError::Slide(i + 1, e))?;
        }
        Ok(cur)
    }
}
