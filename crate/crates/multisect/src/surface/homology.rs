//! Mod-2 homology classes of edge curves.
//!
//! A tree-cotree decomposition picks a dual spanning tree (breadth-first from the face
//! of dart 0, lowest dart first), then a primal spanning tree on the remaining edges.
//! Each of the `2g` leftover edges closes a dual cycle; a curve's class vector lists
//! its mod-2 intersection numbers with these cycles.

use std::collections::{BTreeSet, VecDeque};

use super::curve::Curve;
use super::map::{CombinatorialMap, Dart};

#[derive(Debug, Clone)]
pub struct H1Basis {
    /// For each leftover edge, the edges crossed by its dual cycle.
    cycles: Vec<BTreeSet<Dart>>,
}

impl H1Basis {
    pub fn new(m: &CombinatorialMap) -> Self {
        let nf = m.num_faces();
        let mut parent: Vec<Option<(usize, Dart)>> = vec![None; nf];
        let mut seen = vec![false; nf];
        let mut dual_tree = vec![false; m.num_darts()];
        let root = m.face(0);
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(f) = queue.pop_front() {
            let mut ds = m.face_darts(f);
            ds.sort_unstable();
            for d in ds {
                let g = m.face(m.alpha(d));
                if !seen[g] {
                    seen[g] = true;
                    parent[g] = Some((f, m.edge(d)));
                    dual_tree[m.edge(d)] = true;
                    queue.push_back(g);
                }
            }
        }

        let nv = m.num_vertices();
        let mut vseen = vec![false; nv];
        let mut primal_tree = vec![false; m.num_darts()];
        vseen[m.vertex(0)] = true;
        let mut queue = VecDeque::from([m.vertex(0)]);
        while let Some(v) = queue.pop_front() {
            let mut ds = m.vertex_darts(v);
            ds.sort_unstable();
            for d in ds {
                if dual_tree[m.edge(d)] {
                    continue;
                }
                let w = m.head(d);
                if !vseen[w] {
                    vseen[w] = true;
                    primal_tree[m.edge(d)] = true;
                    queue.push_back(w);
                }
            }
        }

        let root_path = |mut f: usize| {
            let mut set = BTreeSet::new();
            while let Some((p, e)) = parent[f] {
                set.insert(e);
                f = p;
            }
            set
        };
        let cycles = (0..m.num_darts())
            .filter(|&d| m.edge(d) == d && !dual_tree[d] && !primal_tree[d])
            .map(|x| {
                let a = root_path(m.face(x));
                let b = root_path(m.face(m.alpha(x)));
                let mut set: BTreeSet<Dart> = a.symmetric_difference(&b).copied().collect();
                set.insert(x);
                set
            })
            .collect();
        H1Basis { cycles }
    }

    pub fn dim(&self) -> usize {
        self.cycles.len()
    }

    pub fn class(&self, m: &CombinatorialMap, c: &Curve) -> Vec<bool> {
        self.cycles
            .iter()
            .map(|cyc| c.darts.iter().filter(|&&d| cyc.contains(&m.edge(d))).count() % 2 == 1)
            .collect()
    }
}

/// Class of `c` against the canonical basis of `m`.
pub fn h1_class_vector(m: &CombinatorialMap, c: &Curve) -> Vec<bool> {
    H1Basis::new(m).class(m, c)
}

/// Rank over GF(2).
pub fn rank_gf2(vectors: &[Vec<bool>]) -> usize {
    let mut rows: Vec<Vec<bool>> = vectors.to_vec();
    let width = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col]) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][col] {
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::cut::{refine, RefineTarget};

    #[test]
    fn torus_generators_independent() {
        let m = CombinatorialMap::standard(1);
        let b = H1Basis::new(&m);
        assert_eq!(b.dim(), 2);
        let a = b.class(&m, &Curve::new(vec![0]));
        let l = b.class(&m, &Curve::new(vec![1]));
        assert_eq!(rank_gf2(&[a, l]), 2);
    }

    #[test]
    fn face_boundary_is_zero() {
        let m = CombinatorialMap::standard(2);
        let (m2, _) = refine(&m, &[], RefineTarget::Face(0)).unwrap();
        let c = Curve::new(vec![m2.num_darts() - 2]);
        assert!(h1_class_vector(&m2, &c).iter().all(|&x| !x));
        assert_eq!(H1Basis::new(&m2).dim(), 4);
    }

    #[test]
    fn rank_of_dependent_vectors() {
        let v = vec![vec![true, false, true], vec![false, true, true], vec![true, true, false]];
        assert_eq!(rank_gf2(&v), 2);
    }
}
