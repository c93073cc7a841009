//! The edge-colored graph of a good-ball decomposition.

use std::collections::BTreeMap;

/// Vertices are the points where all pieces meet; an edge of color `i` is an arc where
/// every piece but `i` meets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseGraph {
    pub vertices: usize,
    pub colors: usize,
    /// `(u, v, color)` with `u <= v`.
    pub edges: Vec<(usize, usize, usize)>,
}

impl BaseGraph {
    pub fn new(vertices: usize, colors: usize, mut edges: Vec<(usize, usize, usize)>) -> Self {
        for e in &mut edges {
            if e.0 > e.1 {
                std::mem::swap(&mut e.0, &mut e.1);
            }
        }
        edges.sort_unstable_by_key(|&(u, v, c)| (c, u, v));
        BaseGraph { vertices, colors, edges }
    }

    /// Each vertex meets exactly one edge end of each color, with no loops.
    pub fn is_simple(&self) -> bool {
        let mut ends: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for &(u, v, c) in &self.edges {
            if u == v {
                return false;
            }
            *ends.entry((u, c)).or_default() += 1;
            *ends.entry((v, c)).or_default() += 1;
        }
        (0..self.vertices).all(|v| (0..self.colors).all(|c| ends.get(&(v, c)) == Some(&1)))
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices == 0 {
            return false;
        }
        let mut seen = vec![false; self.vertices];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &(a, b, _) in &self.edges {
                for (x, y) in [(a, b), (b, a)] {
                    if x == u && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Genus of the central surface of the bundle with fiber genus `g` built over this graph:
    /// one fiber per vertex, joined by a tube per edge.
    pub fn predicted_genus(&self, fiber_genus: usize) -> usize {
        self.vertices * fiber_genus + self.edges.len() + 1 - self.vertices
    }
}
