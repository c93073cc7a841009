//! Finite abstract simplicial complexes.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

pub type Simplex = Vec<usize>;

/// A face-closed set of simplices, each a sorted vertex list.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimplicialComplex {
    simplices: BTreeSet<Simplex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("line {0}: {1}")]
    Parse(usize, String),
    #[error("not a closed manifold: {0}")]
    NotClosedManifold(String),
}

fn faces_of(s: &[usize], out: &mut BTreeSet<Simplex>) {
    // all non-empty subsets
    let n = s.len();
    for mask in 1u64..(1 << n) {
        out.insert((0..n).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect());
    }
}

impl SimplicialComplex {
    /// The closure of the given simplices under taking faces.
    pub fn from_facets<I: IntoIterator<Item = Simplex>>(facets: I) -> Self {
        let mut simplices = BTreeSet::new();
        for mut s in facets {
            s.sort_unstable();
            s.dedup();
            if !s.is_empty() {
                faces_of(&s, &mut simplices);
            }
        }
        SimplicialComplex { simplices }
    }

    /// Boundary of the `n`-simplex on vertices `0..=n`.
    pub fn simplex_boundary(n: usize) -> Self {
        Self::from_facets((0..=n).map(|skip| (0..=n).filter(|&v| v != skip).collect()))
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.simplices.contains(s)
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().map(|s| s.len() - 1).max()
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.simplices.iter().filter(|s| s.len() == 1).map(|s| s[0]).collect()
    }

    pub fn count(&self, dim: usize) -> usize {
        self.simplices.iter().filter(|s| s.len() == dim + 1).count()
    }

    pub fn euler(&self) -> i64 {
        self.simplices.iter().map(|s| if s.len() % 2 == 1 { 1 } else { -1 }).sum()
    }

    /// Maximal simplices.
    pub fn facets(&self) -> Vec<Simplex> {
        let mut covered = BTreeSet::new();
        for s in &self.simplices {
            for i in 0..s.len() {
                if s.len() > 1 {
                    let mut f = s.clone();
                    f.remove(i);
                    covered.insert(f);
                }
            }
        }
        self.simplices.iter().filter(|s| !covered.contains(*s)).cloned().collect()
    }

    /// The subcomplex of simplices satisfying `keep`, which must be closed under faces.
    pub fn filter(&self, keep: impl Fn(&Simplex) -> bool) -> Self {
        SimplicialComplex { simplices: self.simplices.iter().filter(|s| keep(s)).cloned().collect() }
    }

    /// Connected components as subcomplexes, ordered by least vertex.
    pub fn components(&self) -> Vec<SimplicialComplex> {
        let verts = self.vertices();
        let index: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut parent: Vec<usize> = (0..verts.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for s in self.simplices.iter().filter(|s| s.len() == 2) {
            let (a, b) = (find(&mut parent, index[&s[0]]), find(&mut parent, index[&s[1]]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut comps: BTreeMap<usize, BTreeSet<Simplex>> = BTreeMap::new();
        for s in &self.simplices {
            let r = find(&mut parent, index[&s[0]]);
            comps.entry(r).or_default().insert(s.clone());
        }
        comps.into_values().map(|simplices| SimplicialComplex { simplices }).collect()
    }

    /// Barycentric subdivision. New vertex `i` stands for the `i`-th simplex of `self`
    /// in sorted order, returned alongside.
    pub fn barycentric_subdivision(&self) -> (SimplicialComplex, Vec<Simplex>) {
        let old: Vec<Simplex> = self.simplices.iter().cloned().collect();
        let id: BTreeMap<&Simplex, usize> = old.iter().enumerate().map(|(i, s)| (s, i)).collect();
        // maximal chains below each facet generate everything
        let mut facets = Vec::new();
        for f in self.facets() {
            let mut chains: Vec<Vec<Simplex>> = vec![vec![f.clone()]];
            for _ in 1..f.len() {
                let mut next = Vec::new();
                for ch in chains {
                    let last = ch.last().unwrap();
                    for i in 0..last.len() {
                        let mut smaller = last.clone();
                        smaller.remove(i);
                        let mut c2 = ch.clone();
                        c2.push(smaller);
                        next.push(c2);
                    }
                }
                chains = next;
            }
            for ch in chains {
                facets.push(ch.iter().map(|s| id[s]).collect());
            }
        }
        (Self::from_facets(facets), old)
    }

    /// Check that a pure complex is a closed manifold: every codimension-1 simplex lies
    /// in two facets and every vertex link has the Euler characteristic of a sphere.
    pub fn check_closed_manifold(&self) -> Result<(), ComplexError> {
        let d = self.dim().ok_or_else(|| ComplexError::NotClosedManifold("empty".into()))?;
        let facets = self.facets();
        if facets.iter().any(|f| f.len() != d + 1) {
            return Err(ComplexError::NotClosedManifold("not pure".into()));
        }
        let mut ridge = BTreeMap::new();
        for f in &facets {
            for i in 0..f.len() {
                let mut r = f.clone();
                r.remove(i);
                *ridge.entry(r).or_insert(0) += 1;
            }
        }
        if let Some((r, _)) = ridge.iter().find(|(_, &c)| c != 2) {
            return Err(ComplexError::NotClosedManifold(format!("ridge {r:?} is not in exactly two facets")));
        }
        let sphere = if d % 2 == 1 { 2 } else { 0 };
        for v in self.vertices() {
            let link = self.filter(|s| !s.contains(&v) && {
                let mut t = s.clone();
                t.push(v);
                t.sort_unstable();
                self.contains(&t)
            });
            if d > 0 && link.euler() != sphere {
                return Err(ComplexError::NotClosedManifold(format!("link of vertex {v} has Euler characteristic {}", link.euler())));
            }
        }
        Ok(())
    }

    /// One simplex per line as whitespace-separated vertices; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, ComplexError> {
        let mut facets = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let s: Result<Simplex, _> = line.split_whitespace().map(str::parse).collect();
            facets.push(s.map_err(|_| ComplexError::Parse(i + 1, format!("bad simplex `{line}`")))?);
        }
        Ok(Self::from_facets(facets))
    }

    /// Facets, one per line, in sorted order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for f in self.facets() {
            let words: Vec<String> = f.iter().map(|v| v.to_string()).collect();
            out.push_str(&words.join(" "));
            out.push('\n');
        }
        out
    }
}
