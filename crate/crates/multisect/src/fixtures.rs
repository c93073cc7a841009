//! Built-in fiber diagrams and schemes.

use crate::bundle::{parse_perm, Monodromy, Scheme};
use crate::diagram::{MultisectionDiagram, SlideScript};
use crate::surface::{overlay, CombinatorialMap, Curve, Route};

/// Genus-1 trisection of the complex projective plane on a three-vertex torus. Its three
/// curves have slopes `1/0`, `1/1` and `0/1`, each meeting the other two once.
pub fn cp2() -> MultisectionDiagram {
    // numbered as written by the diagram format, so the fixture file reads back exactly
    let mut alpha = vec![0; 12];
    for (a, b) in [(0, 1), (2, 4), (3, 6), (5, 7), (8, 10), (9, 11)] {
        alpha[a] = b;
        alpha[b] = a;
    }
    let mut rot = vec![0; 12];
    for cycle in [[0, 2, 5, 9], [1, 3, 7, 10], [4, 8, 11, 6]] {
        for i in 0..4 {
            rot[cycle[i]] = cycle[(i + 1) % 4];
        }
    }
    let map = CombinatorialMap::new(alpha, rot).expect("fixture map is valid");
    let families = [[0, 7], [2, 11], [6, 10]].map(|c| vec![Curve::new(c.to_vec())]).to_vec();
    let mut d = MultisectionDiagram::new(map, families);
    d.labels = vec![vec!["l".into()], vec!["d".into()], vec!["m".into()]];
    d.with_meta("kind", "fixture").with_meta("name", "cp2")
}

/// The reflection of [`cp2`] exchanging its first and third curves. It reverses
/// orientation.
pub fn cp2_reflection() -> Monodromy {
    let phi = vec![6, 3, 11, 1, 9, 8, 0, 10, 5, 4, 7, 2];
    Monodromy { sigma: parse_perm("(1,3)", 3).expect("valid cycle"), phi }
}

/// Genus-2 trisection of `S^2 x S^2`: meridian and longitude of opposite handles in the
/// first two families, curves running across both handles in the third. The second of
/// those needs a detour through `a1` to stay off the first.
pub fn s2s2() -> MultisectionDiagram {
    // on the standard map, crossing a_i or b_i gives the dual curves x_i, y_i
    let families: [&[&[usize]]; 3] = [&[&[0], &[5]], &[&[1], &[4]], &[&[0, 4], &[1, 7, 0]]];
    let routes: Vec<Route> = families.iter().flat_map(|f| f.iter().map(|c| Route::new(c.to_vec()))).collect();
    let o = overlay(&CombinatorialMap::standard(2), &[], &routes).expect("fixture routes are valid");
    let mut curves = o.routes.into_iter();
    let fams = families.iter().map(|f| curves.by_ref().take(f.len()).collect()).collect();
    let mut d = MultisectionDiagram::new(o.map, fams);
    d.labels = vec![vec!["x1".into(), "y2".into()], vec!["y1".into(), "x2".into()], vec!["x1+x2".into(), "x1+y1-y2".into()]];
    d.with_meta("kind", "fixture").with_meta("name", "s2s2")
}

/// Scheme for the product of the complex projective plane with the circle whose missing
/// pieces run `1, 2, 3, 4, 3, 2`.
pub const CP2S1_ALT_SCHEME: &str = "scheme n=4 N=6 sigma=id
X1 2@0 1@1-5 2@*
X2 3@0-1 2@2-4 3@5-*
X3 4@0-2 3@3 4@4-*
";

pub fn cp2s1_alt_scheme() -> Scheme {
    Scheme::parse(CP2S1_ALT_SCHEME).expect("fixture scheme parses")
}

/// Slides on the [`CP2S1_ALT_SCHEME`] diagram of the product with the identity exposing
/// two destabilizations. On each side of the middle, the orange (fourth) curve slides
/// along its neighbour in the outer panel and the green (first) along its neighbour in
/// the inner panel. The results are parallel to span arcs of blue and purple.
pub const CP2S1_SLIDES: &str = "# destabilization slides for the product of CP2 and the circle
slide family=4 curve=p2.1 over=p1.1 band=auto:rl
slide family=1 curve=p2.1 over=p3.1 band=auto:lr
slide family=4 curve=p5.1 over=p6.1 band=auto:lr
slide family=1 curve=p5.1 over=p4.1 band=auto:rl
";

pub fn cp2s1_slides() -> SlideScript {
    SlideScript::parse(CP2S1_SLIDES).expect("fixture script parses")
}
