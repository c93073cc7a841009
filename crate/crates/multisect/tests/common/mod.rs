//! Generators and checks shared by the property suites and the acceptance run.
#![allow(dead_code)]

use multisect::bundle::sphere_base_bundle_diagram;
use multisect::diagram::{
    destabilize, find_stabilizations, gen1_sphere_diagram, handleslide_traced, stabilize, Band, MultisectionDiagram,
};
use multisect::fixtures::{cp2, s2s2};
use multisect::io::{parse, serialize};
use multisect::surface::{are_parallel, cut_along, is_cut_system, H1Basis, rank_gf2, CombinatorialMap, Curve};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub fn free_faces(d: &MultisectionDiagram) -> Vec<usize> {
    (0..d.map.num_faces()).filter(|&f| d.face_is_curve_free(f)).collect()
}

/// Recipe for a valid diagram: a base, then stabilizations `(k, face choice)`.
#[derive(Debug, Clone)]
pub struct Recipe {
    pub base: usize,
    pub n: usize,
    pub k: usize,
    pub stabs: Vec<(usize, usize)>,
}

pub const BASES: usize = 7;

impl Recipe {
    pub fn build(&self) -> MultisectionDiagram {
        let mut d = match self.base {
            0 => gen1_sphere_diagram(self.n, 1 + self.k % (self.n - 1)).unwrap(),
            1 => sphere_base_bundle_diagram(3 + self.k % 3, 0).unwrap(),
            2 => sphere_base_bundle_diagram(3, 1).unwrap(),
            3 => cp2(),
            4 => s2s2(),
            5 => MultisectionDiagram::empty(self.n),
            _ => gen1_sphere_diagram(3, 1 + self.k % 2).unwrap(),
        };
        for &(k, pick) in &self.stabs {
            let faces = free_faces(&d);
            if faces.is_empty() {
                continue;
            }
            let n = d.n();
            d = stabilize(&d, 1 + k % (n - 1), faces[pick % faces.len()]).unwrap();
        }
        d
    }
}

pub fn recipe() -> impl Strategy<Value = Recipe> {
    (0..BASES, 2usize..=5, 0usize..8, prop::collection::vec((0usize..8, 0usize..64), 0..3))
        .prop_map(|(base, n, k, stabs)| Recipe { base, n, k, stabs })
        .prop_filter("the empty diagram needs a stabilization", |r| r.base != 5 || !r.stabs.is_empty())
}

pub fn deterministic_runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(Config { cases, failure_persistence: None, ..Config::default() }, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

/// Cutting along any sub-collection of a family keeps the Euler characteristic.
pub fn check_euler_conserved(d: &MultisectionDiagram, f: usize, mask: u32) -> Result<(), TestCaseError> {
    let fam = &d.families[f % d.n()];
    let chosen: Vec<Curve> = fam.iter().enumerate().filter(|(i, _)| mask >> (i % 32) & 1 == 1).map(|(_, c)| c.clone()).collect();
    let comps = cut_along(&d.map, &chosen, &[]).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let total: i64 = comps.iter().map(|c| c.euler()).sum();
    prop_assert_eq!(total, d.map.euler());
    Ok(())
}

/// A cut system never holds two parallel curves.
pub fn check_cut_system_not_parallel(d: &MultisectionDiagram) -> Result<(), TestCaseError> {
    for fam in &d.families {
        if !is_cut_system(&d.map, fam) {
            continue;
        }
        for i in 0..fam.len() {
            for j in i + 1..fam.len() {
                prop_assert_eq!(are_parallel(&d.map, &fam[i], &fam[j]), Ok(false));
            }
        }
    }
    Ok(())
}

/// Handleslides keep genus, validity and the GF(2) span of the slid family. Returns
/// whether a slide was possible.
pub fn check_handleslide(d: &MultisectionDiagram, f: usize, c: usize, o: usize) -> Result<bool, TestCaseError> {
    let f = f % d.n();
    let len = d.families[f].len();
    let (c, o) = (c % len.max(1), o % len.max(1));
    if len < 2 || c == o {
        return Ok(false);
    }
    let Ok((e, old)) = handleslide_traced(d, f, c, o, &Band::Auto) else { return Ok(false) };
    prop_assert_eq!(e.genus(), d.genus());
    let r = e.validate();
    prop_assert!(r.is_valid(), "{:?}", r.failures());
    // the old family is the new one with curve c put back, so equal spans means adding
    // the old curve to the new family does not raise the rank
    let basis = H1Basis::new(&e.map);
    let mut classes: Vec<Vec<bool>> = e.families[f].iter().map(|x| basis.class(&e.map, x)).collect();
    prop_assert_eq!(rank_gf2(&classes), len);
    classes.push(basis.class(&e.map, &old));
    prop_assert_eq!(rank_gf2(&classes), len);
    Ok(true)
}

/// Relabel the darts of `d` by `perm` (old -> new).
pub fn relabel(d: &MultisectionDiagram, perm: &[usize]) -> MultisectionDiagram {
    let n = perm.len();
    let mut alpha = vec![0; n];
    let mut rot = vec![0; n];
    for x in 0..n {
        alpha[perm[x]] = perm[d.map.alpha(x)];
        rot[perm[x]] = perm[d.map.rot(x)];
    }
    let map = CombinatorialMap::new(alpha, rot).unwrap();
    let families = d.families.iter().map(|fam| fam.iter().map(|c| Curve::new(c.darts.iter().map(|&x| perm[x]).collect())).collect()).collect();
    MultisectionDiagram { map, families, labels: d.labels.clone(), meta: d.meta.clone() }
}

/// Text survives a round trip, and relabelling the darts does not change it.
pub fn check_round_trip(d: &MultisectionDiagram, shuffle: &[usize]) -> Result<(), TestCaseError> {
    let t = serialize(d);
    let e = parse(&t).map_err(|err| TestCaseError::fail(err.to_string()))?;
    prop_assert!(e.isomorphic(d, false));
    prop_assert_eq!(&serialize(&e), &t);
    let n = d.map.num_darts();
    let mut perm: Vec<usize> = (0..n).collect();
    for (i, &s) in shuffle.iter().enumerate() {
        perm.swap(i % n, s % n);
    }
    prop_assert_eq!(&serialize(&relabel(d, &perm)), &t);
    Ok(())
}

/// Stabilizing then destabilizing along some found witness gives `d` back.
pub fn check_stabilization_found(d: &MultisectionDiagram, k: usize, pick: usize) -> Result<(), TestCaseError> {
    let faces = free_faces(d);
    if faces.is_empty() {
        return Err(TestCaseError::reject("no curve-free face"));
    }
    let k = 1 + k % (d.n() - 1);
    let s = stabilize(d, k, faces[pick % faces.len()]).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(s.is_valid());
    let ws = find_stabilizations(&s);
    prop_assert!(!ws.is_empty(), "no witness found");
    let back = ws.iter().filter_map(|w| destabilize(&s, w).ok()).any(|b| b.isomorphic(d, false));
    prop_assert!(back, "no witness destabilizes back to the original");
    Ok(())
}
