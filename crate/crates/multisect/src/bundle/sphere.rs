//! Surface bundles over spheres and other bases with a simple colored graph.

use super::panel::{arc_system_punctured, assemble, Assembly, PanelSpec};
use super::BundleError;
use crate::diagram::MultisectionDiagram;
use crate::goodball::{extract_base_graph, sphere_decomposition, BaseGraph};
use crate::surface::{overlay, CombinatorialMap, Route};

/// One genus-`g` panel per graph vertex with a hole per color, and a tube per edge
/// joining the holes of its color. Panels alternate orientation along a bipartition
/// when there is one.
pub fn assemble_graph_of_fibers(graph: &BaseGraph, g: usize) -> Result<Assembly, BundleError> {
    if !graph.is_simple() {
        return Err(BundleError::NotSimple);
    }
    if !graph.is_connected() {
        return Err(BundleError::Disconnected);
    }
    let side = two_coloring(graph).unwrap_or_else(|| vec![false; graph.vertices]);
    let specs: Vec<PanelSpec> =
        side.iter().map(|&mirrored| PanelSpec { mirrored, holes: graph.colors }).collect();
    let tubes: Vec<_> = graph.edges.iter().map(|&(u, v, c)| [(u, c), (v, c)]).collect();
    Ok(assemble(&CombinatorialMap::standard(g), 0, &specs, &tubes)?)
}

fn two_coloring(graph: &BaseGraph) -> Option<Vec<bool>> {
    let mut side: Vec<Option<bool>> = vec![None; graph.vertices];
    side[0] = Some(false);
    let mut stack = vec![0];
    while let Some(u) = stack.pop() {
        let s = side[u]?;
        for &(a, b, _) in &graph.edges {
            for (x, y) in [(a, b), (b, a)] {
                if x != u {
                    continue;
                }
                match side[y] {
                    None => {
                        side[y] = Some(!s);
                        stack.push(y);
                    }
                    Some(t) if t == s => return None,
                    _ => {}
                }
            }
        }
    }
    side.into_iter().collect()
}

fn sphere_assembly(n: usize, g: usize) -> Result<Assembly, BundleError> {
    if n < 3 {
        return Err(BundleError::Precondition(format!("need at least 3 pieces, got {n}")));
    }
    let graph = extract_base_graph(&sphere_decomposition(n - 1)).map_err(|_| BundleError::NotSimple)?;
    assemble_graph_of_fibers(&graph, g)
}

/// Routes of family `i`: the meridian of tube `i`, then the arcs cutting the panel
/// punctured at the other holes, doubled across both panels.
fn sphere_family_routes(asm: &Assembly, g: usize, i: usize) -> Vec<Route> {
    let n = asm.tubes.len();
    let holes: Vec<usize> = (0..n).filter(|&j| j != i).collect();
    let fiber = CombinatorialMap::standard(g);
    let mut routes = vec![Route::new(vec![asm.tubes[i].seam])];
    for arc in arc_system_punctured(&fiber, 0, holes.len()) {
        let ends = (holes[arc.from], holes[arc.to]);
        routes.push(asm.doubled_route((0, ends), (1, ends), &arc.mid, |d| d));
    }
    routes
}

fn finish(asm: &Assembly, families: Vec<Vec<Route>>) -> Result<MultisectionDiagram, BundleError> {
    let flat: Vec<Route> = families.iter().flatten().cloned().collect();
    let o = overlay(&asm.map, &[], &flat)?;
    let mut curves = o.routes.into_iter();
    let fams: Vec<Vec<_>> = families.iter().map(|f| curves.by_ref().take(f.len()).collect()).collect();
    let mut d = MultisectionDiagram::new(o.map, fams);
    for labels in &mut d.labels {
        for (k, l) in labels.iter_mut().enumerate() {
            *l = if k == 0 { "m".to_string() } else { format!("a{k}") };
        }
    }
    Ok(d.with_meta("panels", asm.panels.len().to_string()))
}

/// Multisection of the trivial genus-`g` bundle over the `(n-1)`-sphere, with `n`
/// families of `2g + n - 1` curves.
pub fn sphere_base_bundle_diagram(n: usize, g: usize) -> Result<MultisectionDiagram, BundleError> {
    let asm = sphere_assembly(n, g)?;
    let families = (0..n).map(|i| sphere_family_routes(&asm, g, i)).collect();
    Ok(finish(&asm, families)?
        .with_meta("kind", "sphere-bundle")
        .with_meta("n", n.to_string())
        .with_meta("g", g.to_string()))
}

/// The 5-section of genus 4 in which the first family's curve through tubes 1 and 2
/// winds `2m` times around tube 1.
pub fn twisted_w_m(m: usize) -> Result<MultisectionDiagram, BundleError> {
    let asm = sphere_assembly(5, 0)?;
    let mut families: Vec<Vec<Route>> = (0..5).map(|i| sphere_family_routes(&asm, 0, i)).collect();
    // family 0's chain runs through holes 1, 2, 3, 4; its first arc joins holes 1 and 2
    let twisted = &mut families[0][1];
    let seam = asm.tubes[1].seam;
    twisted.crossings.extend(std::iter::repeat(seam).take(2 * m));
    Ok(finish(&asm, families)?.with_meta("kind", "w-twist").with_meta("m", m.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goodball::{rpn_decomposition, s2xs1_decomposition};
    use crate::surface::intersection_count;

    #[test]
    fn genus_matches_the_graph() {
        for (gbd, g) in [(sphere_decomposition(3), 0), (s2xs1_decomposition(), 1), (rpn_decomposition(3), 1)] {
            let graph = extract_base_graph(&gbd).unwrap();
            let asm = assemble_graph_of_fibers(&graph, g).unwrap();
            assert_eq!(asm.map.genus(), graph.predicted_genus(g));
        }
    }

    #[test]
    fn non_simple_graph_rejected() {
        let g = BaseGraph::new(1, 2, vec![(0, 0, 0), (0, 0, 1)]);
        assert_eq!(assemble_graph_of_fibers(&g, 0).unwrap_err(), BundleError::NotSimple);
    }

    #[test]
    fn sphere_bundles_are_valid() {
        for (n, g) in [(3, 0), (4, 0), (5, 0), (4, 1), (3, 2)] {
            let d = sphere_base_bundle_diagram(n, g).unwrap();
            let r = d.validate();
            assert!(r.is_valid(), "n={n} g={g}: {:?}", r.failures());
            assert_eq!(d.genus(), 2 * g + n - 1);
            assert!(d.families.iter().all(|f| f.len() == 2 * g + n - 1));
        }
    }

    #[test]
    fn winding_adds_intersections() {
        let base = twisted_w_m(0).unwrap();
        assert!(base.isomorphic(&sphere_base_bundle_diagram(5, 0).unwrap(), false));
        let total = |d: &MultisectionDiagram| -> usize {
            d.families[2].iter().map(|c| intersection_count(&d.map, &d.families[0][1], c).unwrap()).sum()
        };
        let t2 = twisted_w_m(2).unwrap();
        assert!(t2.is_valid());
        assert_eq!(total(&t2), total(&base) + 8);
        let meridian = |d: &MultisectionDiagram| intersection_count(&d.map, &d.families[1][0], &d.families[0][1]).unwrap();
        assert_eq!(meridian(&t2), meridian(&base));
        // a parallel copy of the untwisted curve, met once per turn and nowhere else
        assert_eq!(intersection_count(&t2.map, &t2.families[0][1], &t2.families[3][2]), Ok(4));
    }
}
