//! Decompositions of a closed manifold into pieces whose multiple intersections are balls.

use std::collections::{BTreeMap, BTreeSet};

use super::complex::{ComplexError, Simplex, SimplicialComplex};
use super::graph::BaseGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseKind {
    Simplicial,
    /// The `m`-sphere.
    Sphere(usize),
    /// Real projective `n`-space.
    Rpn(usize),
    S2xS1,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StratumComponent {
    pub dim: usize,
    pub euler: i64,
    pub connected: bool,
    /// Cells, for simplicial decompositions.
    pub cells: Option<SimplicialComplex>,
}

impl StratumComponent {
    fn ball(dim: usize) -> Self {
        StratumComponent { dim, euler: 1, connected: true, cells: None }
    }
}

/// The components of the intersection of the pieces in `set`.
#[derive(Debug, Clone, PartialEq)]
pub struct Stratum {
    pub set: Vec<usize>,
    pub components: Vec<StratumComponent>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GoodBallDecomposition {
    pub base: BaseKind,
    pub dim: usize,
    pub pieces: usize,
    pub base_euler: i64,
    /// One entry per non-empty subset of pieces, ordered by size then lexicographically.
    pub strata: Vec<Stratum>,
    /// Incidence for closed forms; simplicial decompositions derive it from cells.
    graph: Option<BaseGraph>,
}

fn subsets(pieces: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> =
        (1u64..1 << pieces).map(|m| (0..pieces).filter(|i| m >> i & 1 == 1).collect()).collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    all
}

impl GoodBallDecomposition {
    /// Decomposition of a pure complex whose facets carry piece labels in `0..pieces`.
    /// A simplex belongs to every piece labeling a facet around it.
    pub fn from_labeled_facets(complex: &SimplicialComplex, labels: &BTreeMap<Simplex, usize>, pieces: usize) -> Self {
        let dim = complex.dim().unwrap_or(0);
        let mut around: BTreeMap<Simplex, u64> = BTreeMap::new();
        for (f, &l) in labels {
            let n = f.len();
            for mask in 1u64..1 << n {
                let s: Simplex = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                *around.entry(s).or_default() |= 1 << l;
            }
        }
        let strata = subsets(pieces)
            .into_iter()
            .map(|set| {
                let want: u64 = set.iter().map(|&i| 1 << i).sum();
                let sub = complex.filter(|s| around.get(s).is_some_and(|&m| m & want == want));
                let components = sub
                    .components()
                    .into_iter()
                    .map(|c| StratumComponent { dim: c.dim().unwrap_or(0), euler: c.euler(), connected: true, cells: Some(c) })
                    .collect();
                Stratum { set, components }
            })
            .collect();
        GoodBallDecomposition { base: BaseKind::Simplicial, dim, pieces, base_euler: complex.euler(), strata, graph: None }
    }

    pub fn stratum(&self, set: &[usize]) -> Option<&Stratum> {
        self.strata.iter().find(|s| s.set == set)
    }

    /// The stratum where every piece meets.
    pub fn full_intersection(&self) -> &Stratum {
        self.strata.last().expect("at least one piece")
    }

    /// Alternating sum of stratum Euler characteristics; equals `base_euler` for a
    /// genuine decomposition.
    pub fn inclusion_exclusion_euler(&self) -> i64 {
        self.strata
            .iter()
            .map(|s| {
                let e: i64 = s.components.iter().map(|c| c.euler).sum();
                if s.set.len() % 2 == 1 { e } else { -e }
            })
            .sum()
    }

    /// Expected dimension of the components of the stratum on `k` pieces.
    pub fn expected_dim(&self, k: usize) -> usize {
        (self.dim + 1).saturating_sub(k)
    }
}

/// Barycentric star decomposition: piece `i` is the union of the stars, in the second
/// subdivision, of the first-subdivision vertices that sit at barycenters of `i`-simplices.
pub fn star_decomposition(t: &SimplicialComplex) -> Result<GoodBallDecomposition, ComplexError> {
    t.check_closed_manifold()?;
    let d = t.dim().unwrap();
    let (t1, bary0) = t.barycentric_subdivision();
    let (t2, bary1) = t1.barycentric_subdivision();
    let mut labels = BTreeMap::new();
    for f in t2.facets() {
        // exactly one vertex of the flag is a vertex of the first subdivision
        let v = f.iter().map(|&x| &bary1[x]).find(|s| s.len() == 1).unwrap()[0];
        labels.insert(f, bary0[v].len() - 1);
    }
    Ok(GoodBallDecomposition::from_labeled_facets(&t2, &labels, d + 1))
}

/// `S^m` cut into `m + 1` pieces by the coordinate hyperplanes' sectors: each proper
/// intersection is one ball and all pieces meet in two points.
pub fn sphere_decomposition(m: usize) -> GoodBallDecomposition {
    assert!(m >= 1);
    let pieces = m + 1;
    let strata = subsets(pieces)
        .into_iter()
        .map(|set| {
            let k = set.len();
            let components = if k == pieces { vec![StratumComponent::ball(0); 2] } else { vec![StratumComponent::ball(m + 1 - k)] };
            Stratum { set, components }
        })
        .collect();
    let graph = BaseGraph::new(2, pieces, (0..pieces).map(|c| (0, 1, c)).collect());
    GoodBallDecomposition {
        base: BaseKind::Sphere(m),
        dim: m,
        pieces,
        base_euler: if m % 2 == 0 { 2 } else { 0 },
        strata,
        graph: Some(graph),
    }
}

/// Sign vectors in `{±1}^len` modulo global sign, as bit masks with bit 0 clear.
fn sign_classes(len: usize) -> Vec<u64> {
    (0..1u64 << len).filter(|s| s & 1 == 0).collect()
}

/// `RP^n` with `M_i = {|x_i| >= |x_j| for all j}`. Points of a stratum on pieces `I` are
/// labeled by the signs of `x_I` up to global sign.
pub fn rpn_decomposition(n: usize) -> GoodBallDecomposition {
    assert!(n >= 2);
    let pieces = n + 1;
    let strata = subsets(pieces)
        .into_iter()
        .map(|set| {
            let k = set.len();
            let count = 1usize << (k - 1);
            Stratum { set, components: vec![StratumComponent::ball(n + 1 - k); count] }
        })
        .collect();
    // a point is a sign class on all coordinates; the color-i interval through it frees x_i
    let points = sign_classes(pieces);
    let index: BTreeMap<u64, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let all = (1u64 << pieces) - 1;
    let normal = |s: u64| if s & 1 == 1 { s ^ all } else { s };
    let mut edges = BTreeSet::new();
    for &p in &points {
        for c in 0..pieces {
            let q = normal(p ^ (1 << c));
            let (u, v) = (index[&p], index[&q]);
            edges.insert((u.min(v), u.max(v), c));
        }
    }
    let graph = BaseGraph::new(points.len(), pieces, edges.into_iter().collect());
    GoodBallDecomposition {
        base: BaseKind::Rpn(n),
        dim: n,
        pieces,
        base_euler: if n % 2 == 0 { 1 } else { 0 },
        strata,
        graph: Some(graph),
    }
}

/// `S^2 x S^1`: the sphere is split into two disks, and each disk times the circle into
/// two balls, the splitting surfaces turning half a revolution out of phase.
pub fn s2xs1_decomposition() -> GoodBallDecomposition {
    let strata = subsets(4)
        .into_iter()
        .map(|set| {
            let k = set.len();
            let count = [1, 2, 4, 8][k - 1];
            Stratum { set, components: vec![StratumComponent::ball(4 - k); count] }
        })
        .collect();
    // the eight points sit at times 3, 9, 15, 21 on either pole of the dividing circle
    const P: [&str; 8] = ["3D", "3A", "9D", "9A", "15D", "15A", "21D", "21A"];
    let at = |name: &str| P.iter().position(|&p| p == name).unwrap();
    let arcs: [[(&str, &str); 4]; 4] = [
        [("9D", "15D"), ("9A", "15A"), ("21D", "21A"), ("3D", "3A")],
        [("9D", "9A"), ("15D", "15A"), ("21D", "3D"), ("21A", "3A")],
        [("3D", "3A"), ("9D", "9A"), ("15D", "21D"), ("15A", "21A")],
        [("3D", "9D"), ("3A", "9A"), ("15D", "15A"), ("21D", "21A")],
    ];
    let edges = arcs.iter().enumerate().flat_map(|(c, es)| es.iter().map(move |&(a, b)| (at(a), at(b), c))).collect();
    GoodBallDecomposition {
        base: BaseKind::S2xS1,
        dim: 3,
        pieces: 4,
        base_euler: 0,
        strata,
        graph: Some(BaseGraph::new(8, 4, edges)),
    }
}

/// Returned when some vertex lacks exactly one edge end of some color.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("base graph is not simple")]
pub struct NotSimple(pub BaseGraph);

/// Points of the full intersection and arcs of the strata missing one piece, colored by
/// the missing piece.
pub fn extract_base_graph(gbd: &GoodBallDecomposition) -> Result<BaseGraph, NotSimple> {
    let graph = match &gbd.graph {
        Some(g) => g.clone(),
        None => {
            let points: Vec<usize> = gbd
                .full_intersection()
                .components
                .iter()
                .map(|c| c.cells.as_ref().and_then(|s| s.vertices().first().copied()).unwrap_or(usize::MAX))
                .collect();
            let mut edges = Vec::new();
            for c in 0..gbd.pieces {
                let set: Vec<usize> = (0..gbd.pieces).filter(|&i| i != c).collect();
                let Some(st) = gbd.stratum(&set) else { continue };
                for comp in &st.components {
                    let Some(cells) = &comp.cells else { continue };
                    let ends: Vec<usize> = (0..points.len()).filter(|&p| cells.contains(&[points[p]])).collect();
                    match ends.as_slice() {
                        [u, v] => edges.push((*u, *v, c)),
                        [u] => edges.push((*u, *u, c)),
                        _ => {}
                    }
                }
            }
            BaseGraph::new(points.len(), gbd.pieces, edges)
        }
    };
    if graph.is_simple() { Ok(graph) } else { Err(NotSimple(graph)) }
}

pub fn predicted_genus(graph: &BaseGraph, fiber_genus: usize) -> usize {
    graph.predicted_genus(fiber_genus)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Collapse {
    /// Greedy elementary collapses reached a single vertex.
    Point,
    Inconclusive,
    /// No cells to collapse (closed-form data).
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallCheck {
    pub set: Vec<usize>,
    pub component: usize,
    pub dim: usize,
    pub expected_dim: usize,
    pub connected: bool,
    pub euler: i64,
    pub collapse: Collapse,
}

impl BallCheck {
    pub fn passes(&self) -> bool {
        self.dim == self.expected_dim && self.connected && self.euler == 1 && self.collapse != Collapse::Inconclusive
    }
}

/// Necessary conditions for every stratum component to be a ball: right dimension,
/// connected, Euler characteristic 1, and collapsible by greedy elementary collapses.
pub fn validate_ball_likeness(gbd: &GoodBallDecomposition) -> Vec<BallCheck> {
    let mut out = Vec::new();
    for st in &gbd.strata {
        for (i, c) in st.components.iter().enumerate() {
            let collapse = match &c.cells {
                Some(cells) if greedy_collapse(cells) => Collapse::Point,
                Some(_) => Collapse::Inconclusive,
                None => Collapse::NotApplicable,
            };
            out.push(BallCheck {
                set: st.set.clone(),
                component: i,
                dim: c.dim,
                expected_dim: gbd.expected_dim(st.set.len()),
                connected: c.connected,
                euler: c.euler,
                collapse,
            });
        }
    }
    out
}

/// Repeatedly remove the lexicographically least free face with its unique coface.
fn greedy_collapse(k: &SimplicialComplex) -> bool {
    let mut live: BTreeSet<Simplex> = k.simplices().cloned().collect();
    let mut cofaces: BTreeMap<Simplex, usize> = live.iter().map(|s| (s.clone(), 0)).collect();
    let facets_of = |s: &Simplex| -> Vec<Simplex> {
        if s.len() < 2 {
            return Vec::new();
        }
        (0..s.len()).map(|i| {
            let mut f = s.clone();
            f.remove(i);
            f
        }).collect()
    };
    for s in &live {
        for f in facets_of(s) {
            *cofaces.get_mut(&f).unwrap() += 1;
        }
    }
    let mut free: BTreeSet<Simplex> = cofaces.iter().filter(|(_, &c)| c == 1).map(|(s, _)| s.clone()).collect();
    while let Some(sigma) = free.pop_first() {
        if !live.contains(&sigma) || cofaces[&sigma] != 1 {
            continue;
        }
        let tau = live
            .iter()
            .find(|t| t.len() == sigma.len() + 1 && sigma.iter().all(|v| t.contains(v)))
            .cloned()
            .unwrap();
        for gone in [&tau, &sigma] {
            live.remove(gone);
            for f in facets_of(gone) {
                let c = cofaces.get_mut(&f).unwrap();
                *c -= 1;
                if *c == 1 && live.contains(&f) {
                    free.insert(f);
                }
            }
        }
    }
    live.len() == 1
}
