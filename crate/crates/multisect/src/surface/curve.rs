//! Closed edge walks on a map and their pairwise intersections.

use std::collections::HashSet;

use thiserror::Error;

use super::map::{CombinatorialMap, Dart};

/// A closed walk: `head(darts[i]) == vertex(darts[i+1])`, cyclically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Curve {
    pub darts: Vec<Dart>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("curve is empty")]
    Empty,
    #[error("dart {0} is out of range")]
    OutOfRange(Dart),
    #[error("walk breaks between darts {0} and {1}")]
    NotClosed(Dart, Dart),
    #[error("edge of dart {0} traversed twice")]
    RepeatedEdge(Dart),
    #[error("vertex {0} visited twice")]
    RepeatedVertex(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntersectionError {
    #[error("curves share the edge of dart {0}")]
    SharedEdge(Dart),
    #[error("curves touch without crossing at vertex {0}")]
    Tangent(usize),
}

impl Curve {
    pub fn new(darts: Vec<Dart>) -> Self {
        Curve { darts }
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// Check the walk is closed and simple.
    pub fn check(&self, m: &CombinatorialMap) -> Result<(), CurveError> {
        if self.darts.is_empty() {
            return Err(CurveError::Empty);
        }
        let n = self.darts.len();
        for &d in &self.darts {
            if d >= m.num_darts() {
                return Err(CurveError::OutOfRange(d));
            }
        }
        let mut edges = HashSet::new();
        let mut verts = HashSet::new();
        for i in 0..n {
            let d = self.darts[i];
            let e = self.darts[(i + 1) % n];
            if m.head(d) != m.vertex(e) {
                return Err(CurveError::NotClosed(d, e));
            }
            if !edges.insert(m.edge(d)) {
                return Err(CurveError::RepeatedEdge(d));
            }
            if !verts.insert(m.vertex(d)) {
                return Err(CurveError::RepeatedVertex(m.vertex(d)));
            }
        }
        Ok(())
    }

    pub fn vertices(&self, m: &CombinatorialMap) -> Vec<usize> {
        self.darts.iter().map(|&d| m.vertex(d)).collect()
    }

    pub fn edges(&self, m: &CombinatorialMap) -> Vec<Dart> {
        self.darts.iter().map(|&d| m.edge(d)).collect()
    }

    /// The same curve traversed backwards.
    pub fn reversed(&self, m: &CombinatorialMap) -> Curve {
        Curve { darts: self.darts.iter().rev().map(|&d| m.alpha(d)).collect() }
    }

    /// Rotate and orient so that the least dart among the curve and its reverse comes first.
    pub fn normalized(&self, m: &CombinatorialMap) -> Curve {
        let min_fwd = *self.darts.iter().min().unwrap();
        let min_bwd = self.darts.iter().map(|&d| m.alpha(d)).min().unwrap();
        let c = if min_bwd < min_fwd { self.reversed(m) } else { self.clone() };
        let pos = c.darts.iter().position(|&d| d == min_fwd.min(min_bwd)).unwrap();
        let mut darts = c.darts[pos..].to_vec();
        darts.extend_from_slice(&c.darts[..pos]);
        Curve { darts }
    }

    /// For each visited vertex: (incoming dart reversed, outgoing dart).
    pub(crate) fn passes(&self, m: &CombinatorialMap) -> Vec<(usize, Dart, Dart)> {
        let n = self.darts.len();
        (0..n)
            .map(|i| {
                let out = self.darts[(i + 1) % n];
                (m.vertex(out), m.alpha(self.darts[i]), out)
            })
            .collect()
    }
}

/// Position of each dart of `v` in its counterclockwise order.
fn rot_position(m: &CombinatorialMap, v: usize, d: Dart) -> usize {
    m.vertex_darts(v).iter().position(|&x| x == d).unwrap()
}

/// Whether the strand (a1, a2) separates b1 from b2 in the rotation around their vertex.
pub(crate) fn strands_cross(m: &CombinatorialMap, v: usize, a: (Dart, Dart), b: (Dart, Dart)) -> bool {
    let k = m.degree(v);
    let pa1 = rot_position(m, v, a.0);
    let pa2 = rot_position(m, v, a.1);
    let rel = |p: usize| (p + k - pa1) % k;
    let span = rel(pa2);
    let inside = |p: usize| {
        let r = rel(p);
        r > 0 && r < span
    };
    inside(rot_position(m, v, b.0)) != inside(rot_position(m, v, b.1))
}

/// Number of shared vertices of two transverse curves.
pub fn intersection_count(m: &CombinatorialMap, c1: &Curve, c2: &Curve) -> Result<usize, IntersectionError> {
    let e1: HashSet<Dart> = c1.edges(m).into_iter().collect();
    for &d in &c2.darts {
        if e1.contains(&m.edge(d)) {
            return Err(IntersectionError::SharedEdge(d));
        }
    }
    let p2: Vec<_> = c2.passes(m);
    let mut count = 0;
    for (v, a_in, a_out) in c1.passes(m) {
        if let Some(&(_, b_in, b_out)) = p2.iter().find(|p| p.0 == v) {
            if !strands_cross(m, v, (a_in, a_out), (b_in, b_out)) {
                return Err(IntersectionError::Tangent(v));
            }
            count += 1;
        }
    }
    Ok(count)
}

/// Whether two curves share no vertex.
pub fn disjoint(m: &CombinatorialMap, c1: &Curve, c2: &Curve) -> bool {
    let v1: HashSet<usize> = c1.vertices(m).into_iter().collect();
    c2.darts.iter().all(|&d| !v1.contains(&m.vertex(d)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_generators_are_closed_walks() {
        let m = CombinatorialMap::standard(1);
        assert!(Curve::new(vec![0]).check(&m).is_ok());
        assert!(Curve::new(vec![1]).check(&m).is_ok());
        assert_eq!(Curve::new(vec![]).check(&m), Err(CurveError::Empty));
    }

    #[test]
    fn torus_generators_cross_once() {
        let m = CombinatorialMap::standard(1);
        let a = Curve::new(vec![0]);
        let b = Curve::new(vec![1]);
        assert_eq!(intersection_count(&m, &a, &b), Ok(1));
        assert_eq!(intersection_count(&m, &b, &a), Ok(1));
    }

    #[test]
    fn shared_edge_is_not_transverse() {
        let m = CombinatorialMap::standard(1);
        let a = Curve::new(vec![0]);
        let a2 = Curve::new(vec![2]);
        assert!(matches!(intersection_count(&m, &a, &a2), Err(IntersectionError::SharedEdge(_))));
    }

    #[test]
    fn normalized_is_stable_under_rotation() {
        let m = CombinatorialMap::standard(2);
        let c = Curve::new(vec![0]);
        assert_eq!(c.normalized(&m), c.reversed(&m).normalized(&m));
    }
}
