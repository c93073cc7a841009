//! Multisection diagrams: a surface with one cut system per piece, and the moves on them.

use std::collections::BTreeMap;

use crate::surface::cut::{are_parallel, check_cut_system, CutSystemReason};
use crate::surface::{intersection_count, labeled_isomorphic, CombinatorialMap, Curve, CurveError, IntersectionError};

pub mod destab;
pub mod gen1;
pub mod slide;
pub mod sum;

pub use destab::{destabilize, destabilize_relaxed, find_stabilizations, find_stabilizations_relaxed, DestabError, StabilizationWitness};
pub use gen1::{gen1_sphere_diagram, Gen1Error};
pub use slide::{handleslide, handleslide_traced, push_onto, Band, ScriptStep, SlideError, SlideScript, SlideStep};
pub use sum::{connected_sum, stabilize, SumError};

#[derive(Debug, Clone)]
pub struct MultisectionDiagram {
    pub map: CombinatorialMap,
    /// `families[i]` is the cut system of piece `i + 1`.
    pub families: Vec<Vec<Curve>>,
    /// Optional curve names, parallel to `families`; empty strings when unnamed.
    pub labels: Vec<Vec<String>>,
    pub meta: BTreeMap<String, String>,
}

/// Curve position: (family index from 0, curve index within the family).
pub type CurveRef = (usize, usize);

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub genus: usize,
    pub n: usize,
    pub family_sizes: Vec<usize>,
    pub bad_curves: Vec<(CurveRef, CurveError)>,
    /// Per family: `None` when the family is a cut system.
    pub cut_systems: Vec<Option<CutSystemReason>>,
    pub parallel_pairs: Vec<(CurveRef, CurveRef)>,
    pub not_transverse: Vec<(CurveRef, CurveRef, IntersectionError)>,
    /// Vertices used by more than two curves.
    pub crowded_vertices: Vec<usize>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.bad_curves.is_empty()
            && self.cut_systems.iter().all(Option::is_none)
            && self.parallel_pairs.is_empty()
            && self.not_transverse.is_empty()
            && self.crowded_vertices.is_empty()
    }

    /// Family of the first failure in [`failures`](Self::failures) order, if it has one.
    pub fn first_failing_family(&self) -> Option<usize> {
        self.bad_curves
            .first()
            .map(|(r, _)| r.0)
            .or_else(|| self.cut_systems.iter().position(Option::is_some))
            .or_else(|| self.parallel_pairs.first().map(|(a, _)| a.0))
            .or_else(|| self.not_transverse.first().map(|(a, _, _)| a.0))
    }

    /// Short human-readable list of failures.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for ((f, c), e) in &self.bad_curves {
            out.push(format!("family {} curve {}: {e}", f + 1, c));
        }
        for (f, r) in self.cut_systems.iter().enumerate() {
            if let Some(r) = r {
                out.push(format!("family {}: not a cut system ({r:?})", f + 1));
            }
        }
        for (a, b) in &self.parallel_pairs {
            out.push(format!("family {}: curves {} and {} are parallel", a.0 + 1, a.1, b.1));
        }
        for (a, b, e) in &self.not_transverse {
            out.push(format!("curves {}:{} and {}:{}: {e}", a.0 + 1, a.1, b.0 + 1, b.1));
        }
        for v in &self.crowded_vertices {
            out.push(format!("vertex {v} lies on more than two curves"));
        }
        out
    }
}

impl MultisectionDiagram {
    pub fn new(map: CombinatorialMap, families: Vec<Vec<Curve>>) -> Self {
        let labels = families.iter().map(|f| vec![String::new(); f.len()]).collect();
        MultisectionDiagram { map, families, labels, meta: BTreeMap::new() }
    }

    /// The genus-0 diagram with `n` empty families.
    pub fn empty(n: usize) -> Self {
        Self::new(CombinatorialMap::standard(0), vec![Vec::new(); n])
    }

    pub fn n(&self) -> usize {
        self.families.len()
    }

    pub fn genus(&self) -> usize {
        self.map.genus()
    }

    pub fn curve(&self, r: CurveRef) -> &Curve {
        &self.families[r.0][r.1]
    }

    pub fn curve_refs(&self) -> Vec<CurveRef> {
        self.families
            .iter()
            .enumerate()
            .flat_map(|(f, cs)| (0..cs.len()).map(move |c| (f, c)))
            .collect()
    }

    pub fn with_meta(mut self, key: &str, value: impl Into<String>) -> Self {
        self.meta.insert(key.to_string(), value.into());
        self
    }

    /// Per dart: 1 + the family of the curve through its edge, or 0.
    pub fn dart_labels(&self) -> Vec<u32> {
        let mut l = vec![0; self.map.num_darts()];
        for (f, cs) in self.families.iter().enumerate() {
            for c in cs {
                for &d in &c.darts {
                    l[d] = f as u32 + 1;
                    l[self.map.alpha(d)] = f as u32 + 1;
                }
            }
        }
        l
    }

    /// Whether no curve uses an edge of face `f`.
    pub fn face_is_curve_free(&self, f: usize) -> bool {
        let l = self.dart_labels();
        f < self.map.num_faces() && self.map.face_darts(f).iter().all(|&d| l[d] == 0)
    }

    pub fn validate(&self) -> ValidationReport {
        let m = &self.map;
        let mut rep = ValidationReport {
            genus: m.genus(),
            n: self.n(),
            family_sizes: self.families.iter().map(Vec::len).collect(),
            ..Default::default()
        };
        for r in self.curve_refs() {
            if let Err(e) = self.curve(r).check(m) {
                rep.bad_curves.push((r, e));
            }
        }
        if !rep.bad_curves.is_empty() {
            return rep;
        }
        rep.cut_systems = self.families.iter().map(|f| check_cut_system(m, f).err()).collect();
        for (f, cs) in self.families.iter().enumerate() {
            for i in 0..cs.len() {
                for j in i + 1..cs.len() {
                    if let Ok(true) = are_parallel(m, &cs[i], &cs[j]) {
                        rep.parallel_pairs.push(((f, i), (f, j)));
                    }
                }
            }
        }
        let refs = self.curve_refs();
        for (x, &a) in refs.iter().enumerate() {
            for &b in &refs[x + 1..] {
                if a.0 == b.0 {
                    continue;
                }
                if let Err(e) = intersection_count(m, self.curve(a), self.curve(b)) {
                    rep.not_transverse.push((a, b, e));
                }
            }
        }
        let mut uses = vec![0usize; m.num_vertices()];
        for r in &refs {
            for v in self.curve(*r).vertices(m) {
                uses[v] += 1;
            }
        }
        rep.crowded_vertices = (0..uses.len()).filter(|&v| uses[v] > 2).collect();
        rep
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// Isomorphism of maps carrying the same family edge sets. With `permute_families`,
    /// family indices may be relabeled.
    pub fn isomorphic(&self, other: &Self, permute_families: bool) -> bool {
        self.n() == other.n()
            && labeled_isomorphic(&self.map, &self.dart_labels(), &other.map, &other.dart_labels(), permute_families)
    }

    /// Pairwise intersection counts between curves of families `i < j`, as
    /// `blocks[(i, j)][a][b]`.
    pub fn intersection_matrix(&self) -> BTreeMap<(usize, usize), Vec<Vec<usize>>> {
        let mut out = BTreeMap::new();
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                let block = self.families[i]
                    .iter()
                    .map(|a| {
                        self.families[j]
                            .iter()
                            .map(|b| intersection_count(&self.map, a, b).unwrap_or(usize::MAX))
                            .collect()
                    })
                    .collect();
                out.insert((i, j), block);
            }
        }
        out
    }
}
