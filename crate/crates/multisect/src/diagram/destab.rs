//! Detecting and undoing stabilizations.
//!
//! A witness is a group `A` of parallel curves and a group `B` of parallel curves,
//! one curve per family between them, with every `A`-curve meeting every `B`-curve
//! once. A regular neighbourhood of `A ∪ B` is a punctured torus; destabilizing
//! removes it and caps the hole with a disk.

use std::collections::{BTreeSet, HashMap, VecDeque};

use thiserror::Error;

use super::{gen1_sphere_diagram, CurveRef, MultisectionDiagram};
use crate::surface::route::{wire_chords, Chord};
use crate::surface::{are_parallel, compact, intersection_count, labeled_isomorphic, CombinatorialMap, Curve, Dart, H1Basis, RawMap};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct StabilizationWitness {
    /// The group holding the lowest family, sorted by family.
    pub a: Vec<CurveRef>,
    pub b: Vec<CurveRef>,
    /// Closed walk along `A ∪ B` with the rest of the surface on its right: the
    /// separating curve pushed onto the curves. Empty when nothing is left over.
    pub boundary: Vec<Dart>,
}

impl StabilizationWitness {
    pub fn k(&self) -> usize {
        self.a.len()
    }

    pub fn curves(&self) -> impl Iterator<Item = CurveRef> + '_ {
        self.a.iter().chain(&self.b).copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DestabError {
    #[error("witness does not match the diagram: {0}")]
    WitnessStale(String),
    #[error("not cleanly separated: {0}")]
    NotCleanlySeparated(String),
}

/// The complement of `A ∪ B`, split into regions.
struct Layout {
    in_g: Vec<bool>,
    g_vertex: Vec<bool>,
    /// Region of each face.
    region: Vec<usize>,
    /// The region that is not a disk, if any.
    outer: Option<usize>,
    /// Walk along `A ∪ B` bounding `outer`.
    boundary: Vec<Dart>,
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

fn layout(m: &CombinatorialMap, g_curves: &[&Curve]) -> Result<Layout, String> {
    let n = m.num_darts();
    let mut in_g = vec![false; n];
    let mut g_vertex = vec![false; m.num_vertices()];
    for c in g_curves {
        for &d in &c.darts {
            in_g[d] = true;
            in_g[m.alpha(d)] = true;
            g_vertex[m.vertex(d)] = true;
        }
    }
    // faces of the graph A ∪ B
    let rot_g = |x: Dart| {
        let mut y = m.rot(x);
        while !in_g[y] {
            y = m.rot(y);
        }
        y
    };
    let mut seen = vec![false; n];
    let mut g_faces = Vec::new();
    for d in 0..n {
        if !in_g[d] || seen[d] {
            continue;
        }
        let mut walk = Vec::new();
        let mut w = d;
        while !seen[w] {
            seen[w] = true;
            walk.push(w);
            w = rot_g(m.alpha(w));
        }
        g_faces.push(walk);
    }

    let nf = m.num_faces();
    let mut parent: Vec<usize> = (0..nf).collect();
    for d in 0..n {
        if !in_g[d] {
            let (a, b) = (find(&mut parent, m.face(d)), find(&mut parent, m.face(m.alpha(d))));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut id = vec![usize::MAX; nf];
    let mut region = vec![0; nf];
    let mut count = 0;
    for f in 0..nf {
        let r = find(&mut parent, f);
        if id[r] == usize::MAX {
            id[r] = count;
            count += 1;
        }
        region[f] = id[r];
    }
    let mut chi = vec![0i64; count];
    for f in 0..nf {
        chi[region[f]] += 1;
    }
    for d in 0..n {
        if !in_g[d] && m.edge(d) == d {
            chi[region[m.face(d)]] -= 1;
        }
    }
    for v in 0..m.num_vertices() {
        if !g_vertex[v] {
            chi[region[m.face(m.vertex_darts(v)[0])]] += 1;
        }
    }
    let mut bounds = vec![Vec::new(); count];
    for (i, w) in g_faces.iter().enumerate() {
        bounds[region[m.face(w[0])]].push(i);
    }
    if g_faces.len() != count || bounds.iter().any(|b| b.len() != 1) {
        return Err("a complementary region has several boundary walks".into());
    }
    let non_disks: Vec<usize> = (0..count).filter(|&r| chi[r] != 1).collect();
    let vg = g_vertex.iter().filter(|&&x| x).count() as i64;
    let eg = (0..n).filter(|&d| in_g[d] && m.edge(d) == d).count() as i64;
    let (outer, boundary) = match non_disks.as_slice() {
        [] if vg - eg + count as i64 == 0 => (None, Vec::new()),
        [o] if vg - eg + count as i64 - 1 == -1 => (Some(*o), g_faces[bounds[*o][0]].clone()),
        _ => return Err("neighbourhood of the curves is not a punctured torus".into()),
    };
    Ok(Layout { in_g, g_vertex, region, outer, boundary })
}

/// Families, disjointness and intersection pattern of a candidate.
fn check_shape(d: &MultisectionDiagram, a: &[CurveRef], b: &[CurveRef]) -> Result<(), String> {
    if a.is_empty() || b.is_empty() {
        return Err("both groups must be non-empty".into());
    }
    let mut fams = BTreeSet::new();
    for &(f, c) in a.iter().chain(b) {
        if f >= d.n() || c >= d.families[f].len() {
            return Err(format!("no curve {c} in family {}", f + 1));
        }
        if !fams.insert(f) {
            return Err(format!("family {} used twice", f + 1));
        }
    }
    if fams.len() != d.n() {
        return Err("groups do not cover every family".into());
    }
    let m = &d.map;
    for &x in a {
        for &y in b {
            if intersection_count(m, d.curve(x), d.curve(y)) != Ok(1) {
                return Err(format!("curves {x:?} and {y:?} do not meet once"));
            }
        }
    }
    for g in [a, b] {
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                if are_parallel(m, d.curve(g[i]), d.curve(g[j])) != Ok(true) {
                    return Err(format!("curves {:?} and {:?} are not parallel", g[i], g[j]));
                }
            }
        }
    }
    Ok(())
}

/// Other curves avoid `A ∪ B` and live in the outer region.
fn others_clear(d: &MultisectionDiagram, w: &[CurveRef], lay: &Layout) -> Result<(), String> {
    let m = &d.map;
    for r in d.curve_refs() {
        if w.contains(&r) {
            continue;
        }
        for &x in &d.curve(r).darts {
            if lay.g_vertex[m.vertex(x)] {
                return Err(format!("curve {r:?} meets the witness"));
            }
            if Some(lay.region[m.face(x)]) != lay.outer {
                return Err(format!("curve {r:?} lies inside the witness neighbourhood"));
            }
        }
    }
    Ok(())
}

fn candidates(d: &MultisectionDiagram) -> Vec<(Vec<CurveRef>, Vec<CurveRef>)> {
    let m = &d.map;
    let refs = d.curve_refs();
    let basis = H1Basis::new(m);
    let class: Vec<Vec<bool>> = refs.iter().map(|&r| basis.class(m, d.curve(r))).collect();
    let k = refs.len();
    let mut par = vec![vec![false; k]; k];
    let mut once = vec![vec![false; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            if refs[i].0 == refs[j].0 {
                continue;
            }
            let (ci, cj) = (d.curve(refs[i]), d.curve(refs[j]));
            match intersection_count(m, ci, cj) {
                Ok(0) if class[i] == class[j] && class[i].iter().any(|&x| x) => {
                    let p = are_parallel(m, ci, cj) == Ok(true);
                    par[i][j] = p;
                    par[j][i] = p;
                }
                Ok(1) => {
                    once[i][j] = true;
                    once[j][i] = true;
                }
                _ => {}
            }
        }
    }
    let mut out = BTreeSet::new();
    for i in 0..k {
        for j in i + 1..k {
            if !once[i][j] {
                continue;
            }
            let group = |s: usize| -> Vec<usize> {
                let mut g: Vec<usize> = std::iter::once(s).chain((0..k).filter(|&t| par[s][t])).collect();
                g.sort_by_key(|&t| refs[t]);
                g
            };
            let (ga, gb) = (group(i), group(j));
            let mut fams: Vec<usize> = ga.iter().chain(&gb).map(|&t| refs[t].0).collect();
            fams.sort_unstable();
            fams.dedup();
            if fams.len() != d.n() || ga.len() + gb.len() != d.n() {
                continue;
            }
            if !ga.iter().all(|&x| gb.iter().all(|&y| once[x][y])) {
                continue;
            }
            if !ga.iter().all(|&x| ga.iter().all(|&y| x == y || par[x][y])) || !gb.iter().all(|&x| gb.iter().all(|&y| x == y || par[x][y])) {
                continue;
            }
            let ra: Vec<CurveRef> = ga.iter().map(|&t| refs[t]).collect();
            let rb: Vec<CurveRef> = gb.iter().map(|&t| refs[t]).collect();
            if ra[0].0 < rb[0].0 {
                out.insert((ra, rb));
            } else {
                out.insert((rb, ra));
            }
        }
    }
    out.into_iter().collect()
}

fn search(d: &MultisectionDiagram, relaxed: bool) -> Vec<StabilizationWitness> {
    let mut out = Vec::new();
    for (a, b) in candidates(d) {
        let w: Vec<CurveRef> = a.iter().chain(&b).copied().collect();
        let gs: Vec<&Curve> = w.iter().map(|&r| d.curve(r)).collect();
        let Ok(lay) = layout(&d.map, &gs) else { continue };
        if !relaxed && others_clear(d, &w, &lay).is_err() {
            continue;
        }
        let wit = StabilizationWitness { a, b, boundary: lay.boundary };
        if relaxed && rebuild(d, &wit.curves().collect::<Vec<_>>(), &layout(&d.map, &gs).unwrap()).is_err() {
            continue;
        }
        out.push(wit);
    }
    out.sort();
    out
}

/// All witnesses whose curves are disjoint from every other curve.
pub fn find_stabilizations(d: &MultisectionDiagram) -> Vec<StabilizationWitness> {
    search(d, false)
}

/// Witnesses that other curves may still cross; see [`destabilize_relaxed`].
pub fn find_stabilizations_relaxed(d: &MultisectionDiagram) -> Vec<StabilizationWitness> {
    search(d, true)
}

fn prepare(d: &MultisectionDiagram, w: &StabilizationWitness) -> Result<(Vec<CurveRef>, Layout), DestabError> {
    check_shape(d, &w.a, &w.b).map_err(DestabError::WitnessStale)?;
    let refs: Vec<CurveRef> = w.curves().collect();
    let gs: Vec<&Curve> = refs.iter().map(|&r| d.curve(r)).collect();
    let lay = layout(&d.map, &gs).map_err(DestabError::NotCleanlySeparated)?;
    Ok((refs, lay))
}

/// Split off the genus-1 summand given by a cleanly separated witness.
pub fn destabilize(d: &MultisectionDiagram, w: &StabilizationWitness) -> Result<MultisectionDiagram, DestabError> {
    let (refs, lay) = prepare(d, w)?;
    others_clear(d, &refs, &lay).map_err(DestabError::NotCleanlySeparated)?;
    if let Some(r) = split_at_bridge(d, &refs, w.k()) {
        return Ok(r);
    }
    rebuild(d, &refs, &lay)
}

/// Destabilize even when other curves cross `A ∪ B`: each such crossing stretch is
/// replaced by a chord across the capping disk, which amounts to sliding the curve
/// off the witness first.
pub fn destabilize_relaxed(d: &MultisectionDiagram, w: &StabilizationWitness) -> Result<MultisectionDiagram, DestabError> {
    let (refs, lay) = prepare(d, w)?;
    if let Some(r) = split_at_bridge(d, &refs, w.k()) {
        return Ok(r);
    }
    rebuild(d, &refs, &lay)
}

fn drop_curves(d: &MultisectionDiagram, refs: &[CurveRef], map: CombinatorialMap, mut remap: impl FnMut(CurveRef, &Curve) -> Curve) -> MultisectionDiagram {
    let mut families = Vec::new();
    let mut labels = Vec::new();
    for (f, cs) in d.families.iter().enumerate() {
        let mut fc = Vec::new();
        let mut fl = Vec::new();
        for (j, c) in cs.iter().enumerate() {
            if !refs.contains(&(f, j)) {
                fc.push(remap((f, j), c));
                fl.push(d.labels[f][j].clone());
            }
        }
        families.push(fc);
        labels.push(fl);
    }
    MultisectionDiagram { map, families, labels, meta: d.meta.clone() }
}

/// If a curve-free edge cuts off a copy of the genus-1 sphere diagram carrying exactly
/// the witness, delete it. This exactly undoes [`super::stabilize`].
fn split_at_bridge(d: &MultisectionDiagram, refs: &[CurveRef], k: usize) -> Option<MultisectionDiagram> {
    let m = &d.map;
    let labels = d.dart_labels();
    let a_fams: Vec<usize> = refs[..k].iter().map(|r| r.0).collect();
    let group = |l: u32| match l {
        0 => 0,
        l if a_fams.contains(&(l as usize - 1)) => 1,
        _ => 2,
    };
    let model = gen1_sphere_diagram(d.n(), k).ok()?;
    let model_labels: Vec<u32> = model.dart_labels().into_iter().map(|l| if l == 0 { 0 } else if (l as usize) <= k { 1 } else { 2 }).collect();
    let mut witness_v = vec![false; m.num_vertices()];
    let mut other_v = vec![false; m.num_vertices()];
    for r in d.curve_refs() {
        for v in d.curve(r).vertices(m) {
            if refs.contains(&r) {
                witness_v[v] = true;
            } else {
                other_v[v] = true;
            }
        }
    }
    for e in 0..m.num_darts() {
        if m.edge(e) != e || labels[e] != 0 || m.face(e) != m.face(m.alpha(e)) {
            continue;
        }
        // vertices reachable from the tail without crossing e
        let mut seen = vec![false; m.num_vertices()];
        let start = m.vertex(e);
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for x in m.vertex_darts(v) {
                if m.edge(x) == e {
                    continue;
                }
                let h = m.head(x);
                if !seen[h] {
                    seen[h] = true;
                    queue.push_back(h);
                }
            }
        }
        if seen[m.head(e)] {
            continue;
        }
        // far side: the one holding the witness
        for far_is_tail in [true, false] {
            let on_far = |v: usize| seen[v] == far_is_tail;
            let holds = (0..m.num_vertices()).all(|v| (!witness_v[v] || on_far(v)) && (!other_v[v] || !on_far(v)));
            if !holds {
                continue;
            }
            let mut raw = RawMap::from_map(m);
            for x in [e, m.alpha(e)] {
                let p = m.rot_inv(x);
                if p != x {
                    raw.rot[p] = m.rot(x);
                }
            }
            let keep_far: Vec<bool> = (0..m.num_darts()).map(|x| m.edge(x) != e && on_far(m.vertex(x))).collect();
            let (far, far_id) = compact(&raw, &keep_far);
            let Ok(far) = far.build() else { continue };
            let mut far_labels = vec![0; far.num_darts()];
            for x in 0..m.num_darts() {
                if keep_far[x] {
                    far_labels[far_id[x]] = group(labels[x]);
                }
            }
            if !labeled_isomorphic(&far, &far_labels, &model.map, &model_labels, false) {
                continue;
            }
            let keep: Vec<bool> = (0..m.num_darts()).map(|x| m.edge(x) != e && !on_far(m.vertex(x))).collect();
            if !keep.iter().any(|&k| k) {
                let mut out = MultisectionDiagram::empty(d.n());
                out.meta = d.meta.clone();
                return Some(out);
            }
            let (near, new_id) = compact(&raw, &keep);
            let map = near.build().ok()?;
            return Some(drop_curves(d, refs, map, |_, c| Curve::new(c.darts.iter().map(|&x| new_id[x]).collect())));
        }
    }
    None
}

/// Remove the neighbourhood of the witness and cap the outer region with a disk.
fn rebuild(d: &MultisectionDiagram, refs: &[CurveRef], lay: &Layout) -> Result<MultisectionDiagram, DestabError> {
    let m = &d.map;
    let bad = |s: &str| DestabError::NotCleanlySeparated(s.to_string());
    let Some(outer) = lay.outer else {
        if d.curve_refs().len() != refs.len() {
            return Err(bad("curves remain inside a genus-1 diagram"));
        }
        let mut out = MultisectionDiagram::empty(d.n());
        out.meta = d.meta.clone();
        return Ok(out);
    };
    let walk = &lay.boundary;
    let len = walk.len();
    let in_outer = |x: Dart| !lay.in_g[x] && lay.region[m.face(x)] == outer;

    let mut raw = RawMap::from_map(m);
    let mut corner_of: HashMap<Dart, usize> = HashMap::new();
    let mut corner_darts: Vec<Vec<Dart>> = Vec::with_capacity(len);
    let edges: Vec<(Dart, Dart)> = (0..len).map(|_| raw.new_edge()).collect();
    for i in 0..len {
        let mut ys = Vec::new();
        let mut y = m.rot(m.alpha(walk[i]));
        while !lay.in_g[y] {
            corner_of.insert(y, i);
            ys.push(y);
            y = m.rot(y);
        }
        corner_darts.push(ys);
    }

    // stretches of other curves that leave the outer region become chords
    struct Gap {
        from: usize,
        to: usize,
    }
    let mut gaps: Vec<Gap> = Vec::new();
    let mut plans: Vec<(CurveRef, Vec<(Vec<Dart>, Option<usize>)>)> = Vec::new();
    for r in d.curve_refs() {
        if refs.contains(&r) {
            continue;
        }
        let c = d.curve(r);
        let k = c.len();
        let kept: Vec<bool> = c.darts.iter().map(|&x| in_outer(x)).collect();
        if !kept.iter().any(|&x| x) {
            return Err(bad("a curve lies inside the witness neighbourhood"));
        }
        let starts_run = |j: usize| kept[j] && (!kept[(j + k - 1) % k] || lay.g_vertex[m.vertex(c.darts[j])]);
        let Some(first) = (0..k).find(|&j| starts_run(j)) else {
            plans.push((r, vec![(c.darts.clone(), None)]));
            continue;
        };
        let mut runs = Vec::new();
        let mut j = first;
        loop {
            let mut run = vec![c.darts[j]];
            let mut t = (j + 1) % k;
            while kept[t] && !starts_run(t) {
                run.push(c.darts[t]);
                t = (t + 1) % k;
            }
            let end = *run.last().unwrap();
            let mut nxt = t;
            while !starts_run(nxt) {
                nxt = (nxt + 1) % k;
            }
            let (Some(&from), Some(&to)) = (corner_of.get(&m.alpha(end)), corner_of.get(&c.darts[nxt])) else {
                return Err(bad("a curve leaves the outer region away from the boundary"));
            };
            if from == to {
                return Err(bad("a curve returns to the corner it left"));
            }
            gaps.push(Gap { from, to });
            runs.push((run, Some(gaps.len() - 1)));
            j = nxt;
            if j == first {
                break;
            }
        }
        plans.push((r, runs));
    }

    // chord endpoints around each corner, fanned out so parallel chords nest
    let pos = |i: usize| (len - 1 - i) as f64;
    let fl = len as f64;
    let mut at_corner: Vec<Vec<(f64, isize, usize, bool)>> = vec![Vec::new(); len];
    for (g, gap) in gaps.iter().enumerate() {
        for (here, there, is_start) in [(gap.from, gap.to, true), (gap.to, gap.from, false)] {
            let dist = (pos(there) - pos(here)).rem_euclid(fl);
            let tie = if here < there { g as isize } else { -(g as isize) };
            at_corner[here].push((-dist, tie, g, is_start));
        }
    }
    let mut chord_start = vec![0; gaps.len()];
    let mut chord_end = vec![0; gaps.len()];
    let mut s_start = vec![0.0; gaps.len()];
    let mut s_end = vec![0.0; gaps.len()];
    for i in 0..len {
        let list = &mut at_corner[i];
        list.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
        let mut cycle = vec![edges[i].1];
        cycle.extend(&corner_darts[i]);
        cycle.push(edges[(i + 1) % len].0);
        let cnt = list.len() as f64;
        for (j, &(_, _, g, is_start)) in list.iter().enumerate() {
            let x = raw.new_dart();
            cycle.push(x);
            let s = (pos(i) - 0.3 + 0.6 * (j as f64 + 1.0) / (cnt + 1.0)).rem_euclid(fl);
            if is_start {
                chord_start[g] = x;
                s_start[g] = s;
            } else {
                chord_end[g] = x;
                s_end[g] = s;
            }
        }
        raw.set_cycle(&cycle);
    }
    let chords: Vec<Chord> = (0..gaps.len())
        .map(|g| Chord { start_dart: chord_start[g], end_dart: chord_end[g], s0: s_start[g], s1: s_end[g] })
        .collect();
    let wired = wire_chords(&mut raw, &chords, fl).map_err(|_| bad("degenerate chords"))?;

    let keep: Vec<bool> = (0..raw.len()).map(|x| x >= m.num_darts() || in_outer(x)).collect();
    let (sub, new_id) = compact(&raw, &keep);
    let map = sub.build().map_err(|_| bad("outer region is not connected"))?;
    let mut new_curves: HashMap<CurveRef, Curve> = HashMap::new();
    for (r, runs) in plans {
        let mut ds = Vec::new();
        for (run, gap) in runs {
            ds.extend(run.iter().map(|&x| new_id[x]));
            if let Some(g) = gap {
                ds.extend(wired[g].iter().map(|&x| new_id[x]));
            }
        }
        new_curves.insert(r, Curve::new(ds));
    }
    Ok(drop_curves(d, refs, map, |r, _| new_curves.remove(&r).unwrap()))
}
