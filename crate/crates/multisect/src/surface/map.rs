//! Rotation systems: darts, an edge involution `alpha` and a vertex rotation `rot`.
//!
//! Vertices are `rot`-orbits, edges are `alpha`-orbits and faces are orbits of
//! `rot ∘ alpha`, so `phi(d) = rot[alpha[d]]`. With this convention the face of a
//! dart lies on its right.

use std::fmt;

use thiserror::Error;

pub type Dart = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("alpha and rot have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("dart {0} is out of range")]
    OutOfRange(Dart),
    #[error("{0} is not a permutation")]
    NotPermutation(&'static str),
    #[error("alpha is not an involution at dart {0}")]
    AlphaNotInvolution(Dart),
    #[error("alpha fixes dart {0}")]
    AlphaFixedPoint(Dart),
    #[error("map has {0} components, a connected map was requested")]
    Disconnected(usize),
    #[error("map has no darts")]
    Empty,
}

#[derive(Clone, PartialEq, Eq)]
pub struct CombinatorialMap {
    alpha: Vec<Dart>,
    rot: Vec<Dart>,
    rot_inv: Vec<Dart>,
    vertex_of: Vec<usize>,
    face_of: Vec<usize>,
    vertex_start: Vec<Dart>,
    face_start: Vec<Dart>,
    component_of: Vec<usize>,
    components: usize,
}

impl fmt::Debug for CombinatorialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CombinatorialMap")
            .field("darts", &self.num_darts())
            .field("V", &self.num_vertices())
            .field("E", &self.num_edges())
            .field("F", &self.num_faces())
            .field("components", &self.components)
            .finish()
    }
}

fn check_perm(p: &[Dart], name: &'static str) -> Result<(), MapError> {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() {
            return Err(MapError::OutOfRange(x));
        }
        if seen[x] {
            return Err(MapError::NotPermutation(name));
        }
        seen[x] = true;
    }
    Ok(())
}

/// Label the orbits of `step`, numbering them by first appearance in dart order.
fn orbits(n: usize, step: impl Fn(Dart) -> Dart) -> (Vec<usize>, Vec<Dart>) {
    let mut of = vec![usize::MAX; n];
    let mut starts = Vec::new();
    for d in 0..n {
        if of[d] != usize::MAX {
            continue;
        }
        let id = starts.len();
        starts.push(d);
        let mut x = d;
        loop {
            of[x] = id;
            x = step(x);
            if x == d {
                break;
            }
        }
    }
    (of, starts)
}

impl CombinatorialMap {
    /// Build a connected map.
    pub fn new(alpha: Vec<Dart>, rot: Vec<Dart>) -> Result<Self, MapError> {
        let m = Self::new_multi(alpha, rot)?;
        if m.components != 1 {
            return Err(MapError::Disconnected(m.components));
        }
        Ok(m)
    }

    /// Build a map that may have several components (cut results).
    pub fn new_multi(alpha: Vec<Dart>, rot: Vec<Dart>) -> Result<Self, MapError> {
        if alpha.len() != rot.len() {
            return Err(MapError::LengthMismatch(alpha.len(), rot.len()));
        }
        if alpha.is_empty() {
            return Err(MapError::Empty);
        }
        check_perm(&alpha, "alpha")?;
        check_perm(&rot, "rot")?;
        for (d, &a) in alpha.iter().enumerate() {
            if a == d {
                return Err(MapError::AlphaFixedPoint(d));
            }
            if alpha[a] != d {
                return Err(MapError::AlphaNotInvolution(d));
            }
        }
        let n = alpha.len();
        let mut rot_inv = vec![0; n];
        for (d, &r) in rot.iter().enumerate() {
            rot_inv[r] = d;
        }
        let (vertex_of, vertex_start) = orbits(n, |d| rot[d]);
        let (face_of, face_start) = orbits(n, |d| rot[alpha[d]]);

        // components via union of vertex orbits along edges
        let mut parent: Vec<usize> = (0..vertex_start.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for d in 0..n {
            let a = find(&mut parent, vertex_of[d]);
            let b = find(&mut parent, vertex_of[alpha[d]]);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut comp_id = vec![usize::MAX; vertex_start.len()];
        let mut components = 0;
        let mut component_of = vec![0; n];
        for d in 0..n {
            let r = find(&mut parent, vertex_of[d]);
            if comp_id[r] == usize::MAX {
                comp_id[r] = components;
                components += 1;
            }
            component_of[d] = comp_id[r];
        }
        Ok(CombinatorialMap {
            alpha,
            rot,
            rot_inv,
            vertex_of,
            face_of,
            vertex_start,
            face_start,
            component_of,
            components,
        })
    }

    /// The one-vertex genus-`g` map with rotation `a1 b1 A1 B1 a2 ...`; for `g = 0`
    /// a single loop on the sphere.
    pub fn standard(g: usize) -> Self {
        if g == 0 {
            return Self::new(vec![1, 0], vec![1, 0]).unwrap();
        }
        // darts 4i..4i+3 are a, b, A, B of handle i
        let n = 4 * g;
        let mut alpha = vec![0; n];
        for i in 0..g {
            let (a, b) = (4 * i, 4 * i + 1);
            alpha[a] = a + 2;
            alpha[a + 2] = a;
            alpha[b] = b + 2;
            alpha[b + 2] = b;
        }
        let rot = (0..n).map(|d| (d + 1) % n).collect();
        Self::new(alpha, rot).unwrap()
    }

    pub fn num_darts(&self) -> usize {
        self.alpha.len()
    }
    pub fn num_vertices(&self) -> usize {
        self.vertex_start.len()
    }
    pub fn num_edges(&self) -> usize {
        self.alpha.len() / 2
    }
    pub fn num_faces(&self) -> usize {
        self.face_start.len()
    }
    pub fn components(&self) -> usize {
        self.components
    }
    pub fn euler(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.num_faces() as i64
    }
    /// Total genus, summed over components.
    pub fn genus(&self) -> usize {
        let g2 = 2 * self.components as i64 - self.euler();
        debug_assert!(g2 >= 0 && g2 % 2 == 0);
        (g2 / 2) as usize
    }

    pub fn alpha(&self, d: Dart) -> Dart {
        self.alpha[d]
    }
    pub fn rot(&self, d: Dart) -> Dart {
        self.rot[d]
    }
    pub fn rot_inv(&self, d: Dart) -> Dart {
        self.rot_inv[d]
    }
    /// Face successor.
    pub fn phi(&self, d: Dart) -> Dart {
        self.rot[self.alpha[d]]
    }
    pub fn alpha_slice(&self) -> &[Dart] {
        &self.alpha
    }
    pub fn rot_slice(&self) -> &[Dart] {
        &self.rot
    }

    /// Vertex at the tail of `d`.
    pub fn vertex(&self, d: Dart) -> usize {
        self.vertex_of[d]
    }
    pub fn head(&self, d: Dart) -> usize {
        self.vertex_of[self.alpha[d]]
    }
    /// Face on the right of `d`.
    pub fn face(&self, d: Dart) -> usize {
        self.face_of[d]
    }
    pub fn component(&self, d: Dart) -> usize {
        self.component_of[d]
    }
    /// Canonical edge representative (the smaller dart).
    pub fn edge(&self, d: Dart) -> Dart {
        d.min(self.alpha[d])
    }

    /// Darts leaving vertex `v`, counterclockwise from its least dart.
    pub fn vertex_darts(&self, v: usize) -> Vec<Dart> {
        let s = self.vertex_start[v];
        let mut out = vec![s];
        let mut x = self.rot[s];
        while x != s {
            out.push(x);
            x = self.rot[x];
        }
        out
    }

    /// Boundary darts of face `f` in `phi` order from its least dart.
    pub fn face_darts(&self, f: usize) -> Vec<Dart> {
        let s = self.face_start[f];
        let mut out = vec![s];
        let mut x = self.phi(s);
        while x != s {
            out.push(x);
            x = self.phi(x);
        }
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.vertex_darts(v).len()
    }

    /// Mirror image: same darts, reversed rotation.
    pub fn mirror(&self) -> Self {
        Self::new_multi(self.alpha.clone(), self.rot_inv.clone()).unwrap()
    }
}

/// Mutable alpha/rot arrays used while assembling maps.
#[derive(Debug, Clone, Default)]
pub struct RawMap {
    pub alpha: Vec<Dart>,
    pub rot: Vec<Dart>,
}

impl RawMap {
    pub fn from_map(m: &CombinatorialMap) -> Self {
        RawMap { alpha: m.alpha.clone(), rot: m.rot.clone() }
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    /// Fresh dart, initially its own rotation and unpaired.
    pub fn new_dart(&mut self) -> Dart {
        let d = self.alpha.len();
        self.alpha.push(d);
        self.rot.push(d);
        d
    }

    pub fn new_edge(&mut self) -> (Dart, Dart) {
        let a = self.new_dart();
        let b = self.new_dart();
        self.alpha[a] = b;
        self.alpha[b] = a;
        (a, b)
    }

    /// Make `darts` one vertex, counterclockwise in the given order.
    pub fn set_cycle(&mut self, darts: &[Dart]) {
        for i in 0..darts.len() {
            self.rot[darts[i]] = darts[(i + 1) % darts.len()];
        }
    }

    /// Insert `x` right after `after` in the rotation at `after`'s vertex.
    pub fn insert_after(&mut self, after: Dart, x: Dart) {
        let next = self.rot[after];
        self.rot[after] = x;
        self.rot[x] = next;
    }

    /// Add an edge between two corners, each given as the dart it follows.
    /// Returns the new darts at the first and second corner.
    pub fn insert_edge(&mut self, after1: Dart, after2: Dart) -> (Dart, Dart) {
        let (x, y) = self.new_edge();
        self.insert_after(after1, x);
        self.insert_after(after2, y);
        (x, y)
    }

    /// Pendant edge into the corner after `after`; returns (dart at old vertex, dart at new vertex).
    pub fn add_pendant(&mut self, after: Dart) -> (Dart, Dart) {
        let (x, y) = self.new_edge();
        self.insert_after(after, x);
        (x, y)
    }

    /// Loop bounding a monogon at the corner after `after`. Returns `(inner, outer)`:
    /// the monogon is the face of `inner`.
    pub fn add_loop(&mut self, after: Dart) -> (Dart, Dart) {
        let (x, big) = self.new_edge();
        self.insert_after(after, big);
        self.insert_after(big, x);
        (x, big)
    }

    /// Split the edge of `d` with a new degree-2 vertex. Returns `(p, q)` where `p`
    /// continues `d` to its old head and `q` continues `alpha(d)` to its old head.
    pub fn subdivide(&mut self, d: Dart) -> (Dart, Dart) {
        let e = self.alpha[d];
        let p = self.new_dart();
        let q = self.new_dart();
        self.alpha[d] = q;
        self.alpha[q] = d;
        self.alpha[p] = e;
        self.alpha[e] = p;
        self.set_cycle(&[p, q]);
        (p, q)
    }

    pub fn build(self) -> Result<CombinatorialMap, MapError> {
        CombinatorialMap::new(self.alpha, self.rot)
    }

    pub fn build_multi(self) -> Result<CombinatorialMap, MapError> {
        CombinatorialMap::new_multi(self.alpha, self.rot)
    }
}

/// Keep only darts with `keep[d]`, renumbered in increasing order. Returns the new
/// map arrays and the old-to-new index (usize::MAX for dropped darts).
pub fn compact(raw: &RawMap, keep: &[bool]) -> (RawMap, Vec<Dart>) {
    let mut new_id = vec![usize::MAX; raw.len()];
    let mut k = 0;
    for d in 0..raw.len() {
        if keep[d] {
            new_id[d] = k;
            k += 1;
        }
    }
    let mut out = RawMap { alpha: vec![0; k], rot: vec![0; k] };
    for d in 0..raw.len() {
        if keep[d] {
            out.alpha[new_id[d]] = new_id[raw.alpha[d]];
            out.rot[new_id[d]] = new_id[raw.rot[d]];
        }
    }
    (out, new_id)
}
