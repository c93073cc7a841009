//! Bundles over the circle, cut into panels by a scheme.

use std::collections::BTreeSet;

use super::panel::{arc_system, assemble, parallel_arc, PanelSpec};
use super::scheme::{format_perm, Perm, Scheme};
use super::BundleError;
use crate::diagram::MultisectionDiagram;
use crate::surface::{intersection_count, overlay, Curve, Dart, Route};

/// Gluing data of a mapping torus: `phi` is a dart permutation of the fiber map carrying
/// family `k` onto family `sigma[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monodromy {
    pub sigma: Perm,
    pub phi: Vec<Dart>,
}

impl Monodromy {
    pub fn identity(fiber: &MultisectionDiagram) -> Self {
        Monodromy { sigma: (0..fiber.n()).collect(), phi: (0..fiber.map.num_darts()).collect() }
    }

    /// Checks that `phi` is a map automorphism moving the families as `sigma` says, and
    /// reports whether it reverses orientation.
    pub fn check(&self, fiber: &MultisectionDiagram) -> Result<bool, BundleError> {
        let m = &fiber.map;
        let bad = |s: String| Err(BundleError::MonodromyNotAutomorphism(s));
        let nd = m.num_darts();
        if self.phi.len() != nd || self.phi.iter().collect::<BTreeSet<_>>().len() != nd || self.phi.iter().any(|&d| d >= nd) {
            return bad("not a permutation of the darts".into());
        }
        if self.sigma.len() != fiber.n() {
            return bad(format!("sigma has {} entries for {} families", self.sigma.len(), fiber.n()));
        }
        let phi = |d: Dart| self.phi[d];
        if let Some(d) = (0..nd).find(|&d| phi(m.alpha(d)) != m.alpha(phi(d))) {
            return bad(format!("does not commute with alpha at dart {d}"));
        }
        let reverses = if (0..nd).all(|d| phi(m.rot(d)) == m.rot(phi(d))) {
            false
        } else if (0..nd).all(|d| phi(m.rot(d)) == m.rot_inv(phi(d))) {
            true
        } else {
            return bad("neither preserves nor reverses the rotation".into());
        };
        let edge_sets = |k: usize, f: &dyn Fn(Dart) -> Dart| -> BTreeSet<BTreeSet<Dart>> {
            fiber.families[k].iter().map(|c| c.darts.iter().map(|&d| m.edge(f(d))).collect()).collect()
        };
        for k in 0..fiber.n() {
            if edge_sets(k, &phi) != edge_sets(self.sigma[k], &|d| d) {
                return bad(format!("family {} does not land on family {}", k + 1, self.sigma[k] + 1));
            }
        }
        Ok(reverses)
    }

    fn fixes_face(&self, m: &crate::surface::CombinatorialMap, f: usize, reverses: bool) -> bool {
        m.face_darts(f).iter().all(|&d| {
            let e = self.phi[d];
            m.face(if reverses { m.alpha(e) } else { e }) == f
        })
    }

    /// Where the punctures go and the arcs cutting the punctured fiber to a disk. On a
    /// torus fiber the arcs follow two curves meeting once, outermost families first, with
    /// the punctures at a corner where they cross: the first corner counterclockwise from
    /// where the first curve leaves. Otherwise the punctures go into the
    /// smallest face fixed by `phi`, preferring faces no curve runs along, and the arcs
    /// come from a tree-cotree decomposition.
    fn arcs(&self, fiber: &MultisectionDiagram, reverses: bool) -> Option<(Dart, Vec<Vec<Dart>>)> {
        let m = &fiber.map;
        if m.genus() == 1 {
            let n = fiber.n();
            for a in 0..n {
                for b in (a + 1..n).rev() {
                    let (Some(ca), Some(cb)) = (fiber.families[a].first(), fiber.families[b].first()) else { continue };
                    if intersection_count(m, ca, cb) != Ok(1) {
                        continue;
                    }
                    // start in the corner from where `ca` leaves the crossing
                    let out = *ca.darts.iter().find(|&&x| cb.vertices(m).contains(&m.vertex(x)))?;
                    let corners = std::iter::successors(Some(m.rot(out)), |&h| Some(m.rot(h)));
                    for h in corners.take(m.degree(m.vertex(out))) {
                        if !self.fixes_face(m, m.face(h), reverses) {
                            continue;
                        }
                        if let (Some(x), Some(y)) = (parallel_arc(m, &ca.darts, h), parallel_arc(m, &cb.darts, h)) {
                            return Some((h, vec![x, y]));
                        }
                    }
                }
            }
        }
        let fixed: Vec<usize> = (0..m.num_faces()).filter(|&f| self.fixes_face(m, f, reverses)).collect();
        let f = fixed.iter().copied().find(|&f| fiber.face_is_curve_free(f)).or(fixed.first().copied())?;
        let h = *m.face_darts(f).iter().min().expect("faces are non-empty");
        Some((h, arc_system(m, h)))
    }
}

/// `(panel, hole)` ends of the tube of real column `l`. Holes run left then right on
/// mirrored panels and the other way round on the rest.
fn tube_ends(l: usize, cols: usize) -> [(usize, usize); 2] {
    let (a, b) = if l == 0 { (cols - 1, 0) } else { (l - 1, l) };
    [(a, (a % 2 == 1) as usize), (b, (b % 2 == 0) as usize)]
}

/// Multisection of the mapping torus of `mono` with fiber `fiber`, laid out by `scheme`.
/// Panel `q` sits between drawn columns `q` and `q + 1`, and the tube of real column `l`
/// joins panel `l - 1` to panel `l`, the wrap tube passing through `phi`.
pub fn circle_bundle_diagram(
    fiber: &MultisectionDiagram,
    mono: &Monodromy,
    scheme: &Scheme,
) -> Result<MultisectionDiagram, BundleError> {
    let mismatch = |s: String| Err(BundleError::SchemeMismatch(s));
    if scheme.rows() != fiber.n() {
        return mismatch(format!("{} rows for {} fiber families", scheme.rows(), fiber.n()));
    }
    if scheme.sigma != mono.sigma {
        return mismatch("scheme and monodromy permute the families differently".into());
    }
    if let Some(f) = scheme.validate().first() {
        return mismatch(format!("{f:?}"));
    }
    let reverses = mono.check(fiber)?;
    let cols = scheme.columns();
    if reverses != (cols % 2 == 1) {
        return mismatch(format!("{cols} panels cannot close up through a monodromy that {} orientation",
            if reverses { "reverses" } else { "preserves" }));
    }
    let (hub_dart, arcs) = mono.arcs(fiber, reverses).ok_or(BundleError::NoCurveFreeFace)?;
    let specs: Vec<PanelSpec> = (0..cols).map(|q| PanelSpec { mirrored: q % 2 == 1, holes: 2 }).collect();
    let tubes: Vec<_> = (0..cols).map(|l| tube_ends(l, cols)).collect();
    let asm = assemble(&fiber.map, hub_dart, &specs, &tubes)?;
    let g = fiber.map.genus();

    let mut curves: Vec<Curve> = Vec::new();
    let mut routes: Vec<Route> = Vec::new();
    // per family: (label, index into curves or routes, is_route)
    let mut layout: Vec<Vec<(String, usize, bool)>> = Vec::new();
    for j in 1..=scheme.n {
        let mut fam = Vec::new();
        for q in 0..cols {
            if scheme.missing(q) == j || scheme.missing(q + 1) == j {
                continue;
            }
            let k = scheme.row_of(j, q).expect("transverse column carries the piece");
            for (i, c) in fiber.families[k].iter().enumerate() {
                fam.push((format!("p{}.{}", q + 1, i + 1), curves.len(), false));
                curves.push(Curve::new(asm.lift(q, &c.darts)));
            }
        }
        for l in (0..cols).filter(|&l| scheme.missing(l) == j) {
            let [a, b] = tube_ends(l, cols);
            for (i, mid) in arcs.iter().enumerate() {
                let route = if l == 0 {
                    asm.doubled_route((a.0, (a.1, a.1)), (b.0, (b.1, b.1)), mid, |d| mono.phi[d])
                } else {
                    asm.doubled_route((a.0, (a.1, a.1)), (b.0, (b.1, b.1)), mid, |d| d)
                };
                fam.push((format!("c{l}.{}", i + 1), routes.len(), true));
                routes.push(route);
            }
        }
        let l = (0..cols).find(|&l| scheme.missing(l) != j).expect("a piece misses at most half the columns");
        fam.push(("m".to_string(), routes.len(), true));
        routes.push(Route::new(vec![asm.tubes[l].seam]));
        debug_assert_eq!(fam.len(), cols * g + 1);
        layout.push(fam);
    }
    let o = overlay(&asm.map, &curves, &routes)?;
    let families = layout
        .iter()
        .map(|fam| fam.iter().map(|&(_, i, r)| if r { o.routes[i].clone() } else { o.curves[i].clone() }).collect())
        .collect();
    let mut d = MultisectionDiagram::new(o.map, families);
    d.labels = layout.into_iter().map(|f| f.into_iter().map(|(s, _, _)| s).collect()).collect();
    Ok(d.with_meta("kind", "circle-bundle").with_meta("N", cols.to_string()).with_meta("sigma", format_perm(&scheme.sigma)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::scheme_for;
    use crate::fixtures::{cp2, cp2_reflection, cp2s1_alt_scheme, s2s2};

    fn check(d: &MultisectionDiagram, genus: usize) {
        let r = d.validate();
        assert!(r.is_valid(), "{:?}", r.failures());
        assert_eq!(d.genus(), genus);
        assert!(d.families.iter().all(|f| f.len() == genus));
    }

    #[test]
    fn product_with_identity() {
        let f = cp2();
        let mono = Monodromy::identity(&f);
        check(&circle_bundle_diagram(&f, &mono, &scheme_for(&mono.sigma).unwrap()).unwrap(), 7);
        let alt = circle_bundle_diagram(&f, &mono, &cp2s1_alt_scheme()).unwrap();
        check(&alt, 7);
        // the fourth piece is missing only from column 3: copies on panels 1, 2, 5 and 6
        let copies = alt.labels[3].iter().filter(|l| l.starts_with('p')).count();
        assert_eq!(copies, 4);
    }

    #[test]
    fn reflection_monodromy() {
        let f = cp2();
        let mono = cp2_reflection();
        let s = scheme_for(&mono.sigma).unwrap();
        assert_eq!(s.columns(), 5);
        check(&circle_bundle_diagram(&f, &mono, &s).unwrap(), 6);
    }

    #[test]
    fn genus_two_fiber() {
        let f = s2s2();
        let mono = Monodromy::identity(&f);
        check(&circle_bundle_diagram(&f, &mono, &scheme_for(&mono.sigma).unwrap()).unwrap(), 13);
    }

    #[test]
    fn mismatches_rejected() {
        let f = cp2();
        let id = Monodromy::identity(&f);
        let s = scheme_for(&cp2_reflection().sigma).unwrap();
        assert!(matches!(circle_bundle_diagram(&f, &id, &s), Err(BundleError::SchemeMismatch(_))));
        let mut bad = cp2_reflection();
        bad.sigma = vec![0, 1, 2];
        let s = scheme_for(&bad.sigma).unwrap();
        assert!(matches!(circle_bundle_diagram(&f, &bad, &s), Err(BundleError::MonodromyNotAutomorphism(_))));
    }
}
