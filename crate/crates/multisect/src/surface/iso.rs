//! Isomorphism of labeled maps and canonical dart numbering.
//!
//! Darts carry a small integer label (for diagrams: the family of the curve using
//! the dart's edge, 0 if none). Both routines fix one dart and propagate along alpha
//! and rot, which determines the whole bijection on a connected map.

use std::cmp::Ordering;
use std::collections::HashMap;

use super::map::{CombinatorialMap, Dart};

/// Extend `start1 -> start2` to a label-preserving isomorphism if one exists.
/// With `permute`, labels may be renamed by any bijection fixing 0.
fn propagate(
    m1: &CombinatorialMap,
    l1: &[u32],
    m2: &CombinatorialMap,
    l2: &[u32],
    start1: Dart,
    start2: Dart,
    permute: bool,
) -> bool {
    let n = m1.num_darts();
    let mut f = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut fwd: HashMap<u32, u32> = HashMap::new();
    let mut bwd: HashMap<u32, u32> = HashMap::new();
    let mut label_ok = |a: u32, b: u32| -> bool {
        if !permute || a == 0 || b == 0 {
            return a == b;
        }
        match (fwd.get(&a), bwd.get(&b)) {
            (Some(&x), _) => x == b,
            (None, Some(_)) => false,
            (None, None) => {
                fwd.insert(a, b);
                bwd.insert(b, a);
                true
            }
        }
    };
    let mut stack = vec![(start1, start2)];
    while let Some((x, y)) = stack.pop() {
        if f[x] != usize::MAX {
            if f[x] != y {
                return false;
            }
            continue;
        }
        if used[y] || !label_ok(l1[x], l2[y]) {
            return false;
        }
        f[x] = y;
        used[y] = true;
        stack.push((m1.alpha(x), m2.alpha(y)));
        stack.push((m1.rot(x), m2.rot(y)));
    }
    true
}

fn profile(m: &CombinatorialMap, labels: &[u32]) -> (usize, usize, usize, Vec<usize>, Vec<usize>) {
    let mut degs: Vec<usize> = (0..m.num_vertices()).map(|v| m.degree(v)).collect();
    degs.sort_unstable();
    let mut fl: Vec<usize> = (0..m.num_faces()).map(|f| m.face_darts(f).len()).collect();
    fl.sort_unstable();
    let mut counts = HashMap::new();
    for &l in labels {
        *counts.entry(l).or_insert(0usize) += 1;
    }
    let mut sizes: Vec<usize> = counts.into_values().collect();
    sizes.sort_unstable();
    degs.extend(sizes);
    (m.num_darts(), m.num_vertices(), m.num_faces(), degs, fl)
}

/// Whether a label-preserving isomorphism `m1 -> m2` exists. Both maps must be connected.
pub fn labeled_isomorphic(m1: &CombinatorialMap, l1: &[u32], m2: &CombinatorialMap, l2: &[u32], permute: bool) -> bool {
    if profile(m1, l1) != profile(m2, l2) {
        return false;
    }
    if !permute {
        let mut a = l1.to_vec();
        let mut b = l2.to_vec();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return false;
        }
    }
    let start = 0;
    let deg = m1.degree(m1.vertex(start));
    (0..m2.num_darts())
        .filter(|&d| m2.degree(m2.vertex(d)) == deg)
        .any(|d| propagate(m1, l1, m2, l2, start, d, permute))
}

/// Breadth-first numbering from `start`, compared against the best code so far.
/// Returns the numbering and code unless the code is larger than `best`; the flag says
/// whether it ties.
fn numbering_from(m: &CombinatorialMap, labels: &[u32], start: Dart, best: Option<&[usize]>) -> Option<(Vec<usize>, Vec<usize>, bool)> {
    let n = m.num_darts();
    let mut num = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    num[start] = 0;
    order.push(start);
    let mut code = Vec::with_capacity(3 * n);
    let mut decided = best.is_none();
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        for y in [m.alpha(x), m.rot(x)] {
            if num[y] == usize::MAX {
                num[y] = order.len();
                order.push(y);
            }
        }
        code.push(num[m.alpha(x)]);
        code.push(num[m.rot(x)]);
        code.push(labels[x] as usize);
        if !decided {
            let b = best.unwrap();
            let k = code.len() - 3;
            match code[k..].cmp(&b[k..k + 3]) {
                Ordering::Less => decided = true,
                Ordering::Greater => return None,
                Ordering::Equal => {}
            }
        }
        i += 1;
    }
    Some((num, code, !decided))
}

/// Every renumbering `old -> new` of a connected labeled map reaching the smallest
/// code, in order of their start dart. Isomorphic labeled maps get identical
/// renumbered arrays from any of them; there is more than one exactly when the map has
/// label-preserving automorphisms.
pub fn canonical_numberings(m: &CombinatorialMap, labels: &[u32]) -> Vec<Vec<usize>> {
    let mut best: Option<Vec<usize>> = None;
    let mut ties = Vec::new();
    for s in 0..m.num_darts() {
        if let Some((num, code, tie)) = numbering_from(m, labels, s, best.as_deref()) {
            if !tie {
                ties.clear();
                best = Some(code);
            }
            ties.push(num);
        }
    }
    ties
}

/// A canonical renumbering `old -> new` of a connected labeled map: isomorphic
/// labeled maps get identical renumbered arrays.
pub fn canonical_numbering(m: &CombinatorialMap, labels: &[u32]) -> Vec<usize> {
    canonical_numberings(m, labels).swap_remove(0)
}
