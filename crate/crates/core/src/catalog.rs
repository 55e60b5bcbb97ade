//! Catalog of the known Ricci-flat graphs of maximum degree four, generators
//! for the infinite families and their finite quotients, finite patches of
//! the infinite (primitive) graphs with margin-based certification, and the
//! small local configurations used as positive and negative fixtures.
//!
//! Every generator here is independently validated by the curvature engine
//! in the test suites; the catalog itself only builds adjacency.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;

use crate::curvature::{self, CurvatureError};
use crate::graph::{EdgeRef, Graph};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatalogError {
    UnknownName(String),
    BadSpec(String),
    ParamOutOfBounds { param: &'static str, min: usize, got: usize },
    UnsupportedMode { family: &'static str, mode: &'static str },
    GluingViolation { a: usize, b: usize, distance: usize },
    NoCertifiableEdge { radius: usize, margin: usize },
    Curvature(CurvatureError),
}

impl fmt::Display for CatalogError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogError::UnknownName(n) => write!(f, "unknown catalog name `{}`", n),
            CatalogError::BadSpec(s) => write!(f, "bad family spec: {}", s),
            CatalogError::ParamOutOfBounds { param, min, got } => {
                write!(f, "parameter {} = {} below minimum {}", param, got, min)
            }
            CatalogError::UnsupportedMode { family, mode } => {
                write!(f, "family {} does not support mode {}", family, mode)
            }
            CatalogError::GluingViolation { a, b, distance } => write!(
                f,
                "gluing would identify neighborhoods of vertices {} and {} at distance {}",
                a, b, distance
            ),
            CatalogError::NoCertifiableEdge { radius, margin } => write!(
                f,
                "patch radius {} leaves no edge with an interior {}-ball; enlarge the patch",
                radius, margin
            ),
            CatalogError::Curvature(e) => write!(f, "{}", e),
        }
    }
}

impl From<CurvatureError> for CatalogError {
    fn from(e: CurvatureError) -> Self {
        CatalogError::Curvature(e)
    }
}

fn build(name: &str, n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges)
        .expect("catalog adjacency is simple")
        .with_name(name)
}

/// Names accepted by [`named`].
pub const NAMED: &[&str] = &[
    "petersen",
    "dodecahedral",
    "half_dodecahedral",
    "triplex",
    "g1",
    "g2",
    "g3",
    "g4",
    "g5",
    "g6",
    "g7_icosidodecahedron",
    "g8",
    "figure32",
];

/// Family identifiers accepted by [`FamilySpec`].
pub const FAMILIES: &[&str] = &["c4_chain", "c4_grid_band", "c4c4_strip", "lattice4", "type_c"];

/// Builds a named Ricci-flat graph.
pub fn named(name: &str) -> Result<Graph, CatalogError> {
    match name {
        "petersen" => Ok(petersen()),
        "dodecahedral" => Ok(dodecahedral()),
        "half_dodecahedral" => Ok(half_dodecahedral()),
        "triplex" => Ok(triplex()),
        "g1" => Ok(g1()),
        "g2" => Ok(g2()),
        "g3" => Ok(g3()),
        "g4" => Ok(g4()),
        "g5" => Ok(g5()),
        "g6" => Ok(g6()),
        "g7_icosidodecahedron" => Ok(icosidodecahedron()),
        "g8" => Ok(g8()),
        "figure32" => Ok(figure32()),
        other => Err(CatalogError::UnknownName(other.to_string())),
    }
}

/// Petersen graph: outer 5-cycle, inner 5-star polygon, spokes.
fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, 5 + i));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    build("petersen", 10, &edges)
}

/// Dodecahedral graph in four concentric layers of five.
fn dodecahedral() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        let j = (i + 1) % 5;
        edges.push((i, j)); // outer pentagon
        edges.push((i, 5 + i)); // spoke
        edges.push((5 + i, 10 + i)); // middle ten-ring, alternating
        edges.push((5 + j, 10 + i));
        edges.push((10 + i, 15 + i)); // spoke
        edges.push((15 + i, 15 + j)); // inner pentagon
    }
    build("dodecahedral", 20, &edges)
}

/// Half of a dodecahedron: a central pentagon surrounded by five pentagons.
/// Inner pentagon 0..4, outer ten-cycle 5..14, spokes at even outer slots.
fn half_dodecahedral() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, 5 + 2 * i));
    }
    for j in 0..10 {
        edges.push((5 + j, 5 + (j + 1) % 10));
    }
    build("half_dodecahedral", 15, &edges)
}

/// The third cubic girth-five graph with vanishing curvature everywhere
/// (after the Petersen and dodecahedral graphs); twelve vertices. The
/// adjacency was pinned by exhaustive search over all cubic girth-five
/// graphs on twelve vertices; the uniqueness test below re-runs that search.
fn triplex() -> Graph {
    build(
        "triplex",
        12,
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 4),
            (1, 5),
            (2, 6),
            (2, 7),
            (3, 8),
            (3, 9),
            (4, 6),
            (4, 8),
            (5, 7),
            (5, 10),
            (6, 11),
            (7, 9),
            (8, 10),
            (9, 11),
            (10, 11),
        ],
    )
}

/// 13 vertices; one edge with endpoint degrees (3, 4) in a single
/// four-cycle, one triangle, mixed degrees 2..4.
fn g1() -> Graph {
    build(
        "g1",
        13,
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 4),
            (1, 5),
            (1, 6),
            (2, 4),
            (2, 9),
            (2, 10),
            (3, 7),
            (3, 8),
            (5, 6),
            (5, 7),
            (5, 12),
            (6, 8),
            (6, 11),
            (7, 9),
            (8, 10),
            (9, 10),
            (9, 12),
            (10, 11),
        ],
    )
}

/// 12 vertices; vertex-disjoint four-cycles, degrees 2..4.
fn g2() -> Graph {
    build(
        "g2",
        12,
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 4),
            (1, 5),
            (1, 6),
            (2, 4),
            (2, 9),
            (2, 10),
            (3, 7),
            (3, 8),
            (4, 11),
            (5, 7),
            (6, 8),
            (7, 9),
            (7, 11),
            (8, 10),
            (8, 11),
        ],
    )
}

/// 20 vertices; sixteen of degree four and four of degree three.
fn g3() -> Graph {
    build(
        "g3",
        20,
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 4),
            (1, 5),
            (1, 6),
            (2, 4),
            (2, 9),
            (2, 10),
            (3, 7),
            (3, 8),
            (4, 11),
            (4, 13),
            (5, 7),
            (5, 14),
            (5, 15),
            (6, 8),
            (6, 15),
            (6, 16),
            (7, 9),
            (7, 11),
            (8, 10),
            (8, 11),
            (9, 14),
            (9, 17),
            (10, 16),
            (10, 17),
            (11, 12),
            (12, 13),
            (12, 15),
            (12, 17),
            (13, 14),
            (13, 16),
            (14, 19),
            (15, 18),
            (16, 19),
            (17, 18),
            (18, 19),
        ],
    )
}

/// 20 vertices; the sibling of `g3` with the four-cycles glued through a
/// shared hub pair.
fn g4() -> Graph {
    build(
        "g4",
        20,
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 4),
            (1, 5),
            (1, 6),
            (2, 4),
            (2, 9),
            (2, 10),
            (3, 7),
            (3, 8),
            (4, 12),
            (4, 13),
            (5, 7),
            (5, 14),
            (5, 15),
            (6, 8),
            (6, 15),
            (6, 17),
            (7, 9),
            (7, 11),
            (8, 10),
            (8, 11),
            (9, 14),
            (9, 16),
            (10, 16),
            (10, 17),
            (11, 12),
            (11, 13),
            (12, 14),
            (12, 17),
            (13, 15),
            (13, 16),
            (14, 18),
            (15, 19),
            (16, 19),
            (17, 18),
            (18, 19),
        ],
    )
}

/// 12 vertices; two triangles, degrees 2 and 4.
fn g5() -> Graph {
    build(
        "g5",
        12,
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (1, 2),
            (1, 5),
            (1, 6),
            (2, 8),
            (2, 9),
            (3, 7),
            (4, 10),
            (5, 7),
            (6, 11),
            (7, 10),
            (7, 11),
            (8, 11),
            (9, 10),
            (10, 11),
        ],
    )
}

/// 15 vertices; one triangle, a band of four-cycles, degrees 2 and 4.
fn g6() -> Graph {
    build(
        "g6",
        15,
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (1, 2),
            (1, 5),
            (1, 6),
            (2, 8),
            (2, 9),
            (3, 7),
            (3, 10),
            (3, 11),
            (4, 10),
            (5, 7),
            (5, 12),
            (5, 14),
            (6, 12),
            (8, 11),
            (8, 13),
            (8, 14),
            (9, 13),
            (10, 12),
            (10, 13),
            (12, 13),
        ],
    )
}

/// Icosidodecahedron: the line graph of the dodecahedral graph. 30 vertices,
/// 4-regular, every edge on exactly one triangle and one pentagon.
fn icosidodecahedron() -> Graph {
    let dodeca = dodecahedral();
    let base_edges: Vec<(usize, usize)> = dodeca.edges().collect();
    let mut edges = Vec::new();
    for (i, &(a, b)) in base_edges.iter().enumerate() {
        for (j, &(c, d)) in base_edges.iter().enumerate().skip(i + 1) {
            if a == c || a == d || b == c || b == d {
                edges.push((i, j));
            }
        }
    }
    build("g7_icosidodecahedron", base_edges.len(), &edges)
}

/// 14 vertices; a single four-cycle, all other structure in five-cycles.
fn g8() -> Graph {
    build(
        "g8",
        14,
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (1, 5),
            (1, 6),
            (1, 7),
            (2, 5),
            (2, 10),
            (2, 11),
            (3, 8),
            (4, 9),
            (5, 12),
            (5, 13),
            (6, 8),
            (7, 9),
            (8, 10),
            (8, 12),
            (9, 11),
            (9, 13),
        ],
    )
}

/// 12 vertices; two pairs of four-cycles sharing an edge, not 4-regular.
fn figure32() -> Graph {
    build(
        "figure32",
        12,
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (1, 5),
            (1, 6),
            (1, 7),
            (2, 5),
            (2, 8),
            (2, 10),
            (3, 6),
            (3, 8),
            (3, 11),
            (4, 9),
            (5, 9),
            (5, 11),
            (6, 9),
            (6, 10),
            (7, 8),
            (8, 9),
        ],
    )
}

/// 20 vertices, 4-regular; the edge set decomposes into ten four-cycles and
/// every five-cycle carries the vertex-sharing C4 pattern.
fn type_c_graph() -> Graph {
    let mut edges = vec![(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)];
    // One four-cycle hung on each pentagon edge.
    edges.extend([(0, 5), (5, 6), (1, 6)]);
    edges.extend([(1, 7), (7, 8), (2, 8)]);
    edges.extend([(2, 9), (9, 10), (3, 10)]);
    edges.extend([(3, 11), (11, 12), (4, 12)]);
    edges.extend([(4, 13), (13, 14), (0, 14)]);
    // Outer closure.
    edges.extend([
        (7, 12),
        (9, 14),
        (14, 15),
        (7, 15),
        (12, 16),
        (15, 16),
        (6, 11),
        (6, 17),
        (17, 18),
        (11, 18),
        (9, 17),
        (15, 17),
        (5, 16),
        (5, 10),
        (8, 13),
        (8, 18),
        (18, 19),
        (13, 19),
        (16, 19),
        (10, 19),
    ]);
    build("type_c", 20, &edges)
}

/// Local edge neighborhoods used to pin exact transportation values. Each
/// returns the graph, the measured edge, and the idleness at which the value
/// is stated.
pub fn local_configuration(name: &str) -> Result<(Graph, EdgeRef, Rational), CatalogError> {
    let e01 = EdgeRef::new(0, 1);
    let quarter = Rational::new(1, 4);
    let fifth = Rational::new(1, 5);
    let g = |n: usize, edges: &[(usize, usize)]| build(name, n, edges);
    Ok(match name {
        // degrees (3,2), edge on one C4
        "deg32_one_c4" => (g(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4)]), e01, quarter),
        // degrees (4,2), edge on a triangle
        "deg42_c3" => (g(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2)]), e01, fifth),
        // degrees (4,2), edge on one C4, remaining neighbors at distance 3
        "deg42_one_c4" => (
            g(
                8,
                &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (2, 5), (5, 6), (6, 7), (3, 7), (4, 7)],
            ),
            e01,
            fifth,
        ),
        // degrees (3,3), edge on one C4
        "deg33_one_c4" => (g(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 4)]), e01, quarter),
        // degrees (3,4), edge on a triangle
        "deg34_c3" => (g(6, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (1, 5)]), e01, fifth),
        // degrees (3,4), edge on one C4 and nothing else nearby
        "deg34_one_c4" => {
            (g(7, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (1, 6), (2, 4)]), e01, fifth)
        }
        // degrees (3,4), edge on one C4 with one distance-2 pair
        "deg34_one_c4_near" => (
            g(8, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (1, 6), (2, 4), (3, 7), (7, 5)]),
            e01,
            fifth,
        ),
        // degrees (3,4), two C4s through the same hub, distance-2 pairs split
        "deg34_two_c4_hub" => (
            g(
                9,
                &[
                    (0, 1),
                    (0, 2),
                    (0, 3),
                    (1, 4),
                    (1, 5),
                    (1, 6),
                    (2, 4),
                    (3, 4),
                    (2, 7),
                    (7, 5),
                    (3, 8),
                    (8, 5),
                ],
            ),
            e01,
            fifth,
        ),
        // degrees (3,4), two C4s through the same hub, crossed pairs
        "deg34_two_c4_hub_crossed" => (
            g(
                9,
                &[
                    (0, 1),
                    (0, 2),
                    (0, 3),
                    (1, 4),
                    (1, 5),
                    (1, 6),
                    (2, 4),
                    (3, 4),
                    (2, 7),
                    (7, 5),
                    (3, 8),
                    (8, 6),
                ],
            ),
            e01,
            fifth,
        ),
        // degrees (3,4), edge on two parallel C4s
        "deg34_two_c4_parallel" => (
            g(7, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (1, 6), (2, 4), (3, 5)]),
            e01,
            fifth,
        ),
        // degrees (4,4), edge on a triangle
        "deg44_c3" => {
            (g(7, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 5), (1, 6)]), e01, fifth)
        }
        // degrees (4,4), edge on a triangle and a C4 simultaneously
        "deg44_c3_c4" => (
            g(7, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 5), (1, 6), (3, 5)]),
            e01,
            fifth,
        ),
        // degrees (4,4), edge on one C4
        "deg44_one_c4" => {
            (g(8, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (1, 6), (1, 7), (2, 5)]), e01, fifth)
        }
        // degrees (4,4), edge on two C4s
        "deg44_two_c4" => (
            g(8, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (1, 6), (1, 7), (2, 5), (3, 6)]),
            e01,
            fifth,
        ),
        other => return Err(CatalogError::UnknownName(other.to_string())),
    })
}

pub const LOCAL_CONFIGURATIONS: &[&str] = &[
    "deg32_one_c4",
    "deg42_c3",
    "deg42_one_c4",
    "deg33_one_c4",
    "deg34_c3",
    "deg34_one_c4",
    "deg34_one_c4_near",
    "deg34_two_c4_hub",
    "deg34_two_c4_hub_crossed",
    "deg34_two_c4_parallel",
    "deg44_c3",
    "deg44_c3_c4",
    "deg44_one_c4",
    "deg44_two_c4",
];

/// Small graphs embedding a forbidden configuration; used as negative
/// fixtures for the classifier and the exclusion checks.
pub fn excluded_configuration(name: &str) -> Result<Graph, CatalogError> {
    let g = |n: usize, edges: &[(usize, usize)]| build(name, n, edges);
    Ok(match name {
        // (4,4) edge inside two triangles
        "two_c3_shared" => {
            g(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 5)])
        }
        // (4,4) edge on a triangle and a four-cycle
        "c3_and_c4_shared" => {
            g(7, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 5), (1, 6), (3, 5)])
        }
        // (3,4) edge with the asymmetric one-C4 distance pattern
        "type5b_seed" => g(
            9,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 4),
                (1, 5),
                (1, 6),
                (2, 4),
                (3, 7),
                (7, 5),
                (2, 8),
                (8, 6),
            ],
        ),
        // C5 with four-cycles hung on two adjacent pentagon edges
        "type_a_c5" => g(
            9,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (0, 4),
                (0, 5),
                (5, 6),
                (1, 6),
                (1, 7),
                (7, 8),
                (2, 8),
            ],
        ),
        // C5 with four-cycles hung on two non-adjacent pentagon edges
        "type_b_c5" => g(
            9,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (0, 4),
                (0, 5),
                (5, 6),
                (1, 6),
                (2, 7),
                (7, 8),
                (3, 8),
            ],
        ),
        other => return Err(CatalogError::UnknownName(other.to_string())),
    })
}

pub const EXCLUDED_CONFIGURATIONS: &[&str] =
    &["type_a_c5", "type_b_c5", "two_c3_shared", "c3_and_c4_shared", "type5b_seed"];

/// A finite piece of an infinite primitive graph. Interior vertices carry
/// their complete neighbor list; `boundary` vertices may not.
#[derive(Debug, Clone)]
pub struct Patch {
    pub graph: Graph,
    pub boundary: Vec<usize>,
}

/// Certification margin: the supports of the two measures sit within
/// distance 2 of the edge, every transport-relevant shortest path stays
/// within distance 3 of a support vertex, so a full interior 6-ball around
/// an endpoint pins every distance the solve reads.
pub const PATCH_MARGIN: usize = 6;

/// Outcome of certifying a patch edge by edge.
#[derive(Debug, Clone)]
pub struct PatchCertificate {
    pub certified_edges: Vec<EdgeRef>,
    pub flat_on_certified: bool,
    /// First certified edge with nonzero curvature, if any.
    pub witness: Option<(EdgeRef, Rational)>,
}

/// Certifies every edge whose 6-ball is interior, then checks those edges
/// for vanishing curvature.
pub fn certify_patch(p: &Patch) -> Result<PatchCertificate, CatalogError> {
    let g = &p.graph;
    let is_boundary: Vec<bool> = {
        let mut b = vec![false; g.n()];
        for &v in &p.boundary {
            b[v] = true;
        }
        b
    };
    let mut certified = Vec::new();
    for (u, v) in g.edges() {
        let dist = g.distances_from(u);
        let ball_interior = (0..g.n()).all(|w| match dist[w] {
            Some(d) if d <= PATCH_MARGIN => !is_boundary[w],
            _ => true,
        });
        if ball_interior {
            certified.push(EdgeRef::new(u, v));
        }
    }
    if certified.is_empty() {
        return Err(CatalogError::NoCertifiableEdge {
            radius: patch_radius_hint(p),
            margin: PATCH_MARGIN,
        });
    }
    let mut witness = None;
    for &e in &certified {
        let r = curvature::lly_curvature(g, e)?;
        if !r.flat {
            witness = Some((e, r.k_star));
            break;
        }
    }
    Ok(PatchCertificate { certified_edges: certified, flat_on_certified: witness.is_none(), witness })
}

fn patch_radius_hint(p: &Patch) -> usize {
    // Largest distance from vertex 0 seen inside the patch.
    p.graph
        .distances_from(0)
        .into_iter()
        .flatten()
        .max()
        .unwrap_or(0)
}

/// Which family a [`FamilySpec`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Ring of four-cycles, degrees 2-4-2-4, consecutive cycles sharing a
    /// degree-4 hub. Quotient parameter `k`: number of cycles is `k + 2`.
    C4Chain,
    /// Ring of degree-4 hubs with every distance-2 chord subdivided by a
    /// degree-2 vertex; each chord closes one four-cycle.
    C4GridBand,
    /// Square lattice rolled up along a diagonal: quotient of the planar
    /// grid by the lattice spanned by (s, -s) and (m, m).
    C4C4Strip,
    /// Square lattice with straight torus gluing, length x width.
    Lattice4,
    /// The single 20-vertex 4-regular graph whose edge set splits into ten
    /// four-cycles meeting only at vertices.
    TypeC,
}

impl Family {
    pub fn id(&self) -> &'static str {
        match self {
            Family::C4Chain => "c4_chain",
            Family::C4GridBand => "c4_grid_band",
            Family::C4C4Strip => "c4c4_strip",
            Family::Lattice4 => "lattice4",
            Family::TypeC => "type_c",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyMode {
    Quotient,
    Patch { radius: usize },
}

/// Parameters selecting one member of an infinite Ricci-flat family, parsed
/// from the declarative form
/// `family=lattice4 length=6 width=6 glue=torus mode=quotient`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub k: Option<usize>,
    pub length: Option<usize>,
    pub width: Option<usize>,
    pub glue: Option<String>,
    pub mode: FamilyMode,
}

impl FamilySpec {
    pub fn parse(text: &str) -> Result<Self, CatalogError> {
        let mut kv: HashMap<&str, &str> = HashMap::new();
        for token in text.split_whitespace() {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| CatalogError::BadSpec(format!("expected key=value, got `{}`", token)))?;
            if kv.insert(key, value).is_some() {
                return Err(CatalogError::BadSpec(format!("duplicate key `{}`", key)));
            }
        }
        let family = match kv.remove("family") {
            Some("c4_chain") => Family::C4Chain,
            Some("c4_grid_band") => Family::C4GridBand,
            Some("c4c4_strip") => Family::C4C4Strip,
            Some("lattice4") => Family::Lattice4,
            Some("type_c") => Family::TypeC,
            Some(other) => return Err(CatalogError::UnknownName(other.to_string())),
            None => return Err(CatalogError::BadSpec("missing family=".to_string())),
        };
        let parse_num = |kv: &mut HashMap<&str, &str>, key: &'static str| -> Result<Option<usize>, CatalogError> {
            match kv.remove(key) {
                None => Ok(None),
                Some(v) => v
                    .parse::<usize>()
                    .map(Some)
                    .map_err(|_| CatalogError::BadSpec(format!("bad number for {}", key))),
            }
        };
        let mut kv = kv;
        let k = parse_num(&mut kv, "k")?;
        let length = parse_num(&mut kv, "length")?;
        let width = parse_num(&mut kv, "width")?;
        let radius = parse_num(&mut kv, "radius")?;
        let glue = kv.remove("glue").map(|s| s.to_string());
        let mode = match kv.remove("mode") {
            None | Some("quotient") => {
                if let Some(r) = radius {
                    FamilyMode::Patch { radius: r }
                } else {
                    FamilyMode::Quotient
                }
            }
            Some("patch") => FamilyMode::Patch {
                radius: radius
                    .ok_or_else(|| CatalogError::BadSpec("mode=patch requires radius=".to_string()))?,
            },
            Some(other) => return Err(CatalogError::BadSpec(format!("unknown mode `{}`", other))),
        };
        if let Some(stray) = kv.keys().next() {
            return Err(CatalogError::BadSpec(format!("unknown key `{}`", stray)));
        }
        Ok(FamilySpec { family, k, length, width, glue, mode })
    }
}

/// A generated family member: a closed finite quotient or a finite patch of
/// the infinite primitive graph.
#[derive(Debug, Clone)]
pub enum FamilyOutput {
    Quotient(Graph),
    Patch(Patch),
}

impl FamilyOutput {
    pub fn graph(&self) -> &Graph {
        match self {
            FamilyOutput::Quotient(g) => g,
            FamilyOutput::Patch(p) => &p.graph,
        }
    }
}

/// Builds one family member per `spec`.
pub fn family(spec: &FamilySpec) -> Result<FamilyOutput, CatalogError> {
    match (spec.family, spec.mode) {
        (Family::C4Chain, FamilyMode::Quotient) => {
            let k = spec.k.or(spec.length).unwrap_or(0);
            if k < 1 {
                return Err(CatalogError::ParamOutOfBounds { param: "k", min: 1, got: k });
            }
            Ok(FamilyOutput::Quotient(c4_chain_quotient(k + 2)?))
        }
        (Family::C4Chain, FamilyMode::Patch { radius }) => {
            Ok(FamilyOutput::Patch(c4_chain_patch(radius)))
        }
        (Family::C4GridBand, FamilyMode::Quotient) => {
            let m = spec.length.unwrap_or(0);
            if m < 6 {
                return Err(CatalogError::ParamOutOfBounds { param: "length", min: 6, got: m });
            }
            if spec.width.unwrap_or(1) != 1 {
                return Err(CatalogError::BadSpec(
                    "c4_grid_band quotients are generated at width=1; wider drawings are not materialized"
                        .to_string(),
                ));
            }
            Ok(FamilyOutput::Quotient(band_quotient(m)))
        }
        (Family::C4GridBand, FamilyMode::Patch { radius }) => {
            Ok(FamilyOutput::Patch(band_patch(radius)))
        }
        (Family::Lattice4, FamilyMode::Quotient) => {
            let l = spec.length.unwrap_or(0);
            let w = spec.width.unwrap_or(0);
            if l < 6 {
                return Err(CatalogError::ParamOutOfBounds { param: "length", min: 6, got: l });
            }
            if w < 6 {
                return Err(CatalogError::ParamOutOfBounds { param: "width", min: 6, got: w });
            }
            match spec.glue.as_deref() {
                None | Some("torus") => Ok(FamilyOutput::Quotient(lattice_torus(l, w))),
                Some(other) => Err(CatalogError::BadSpec(format!("unknown glue `{}`", other))),
            }
        }
        (Family::Lattice4, FamilyMode::Patch { radius }) => {
            Ok(FamilyOutput::Patch(lattice_patch(radius)))
        }
        (Family::C4C4Strip, FamilyMode::Quotient) => {
            let s = spec.length.unwrap_or(0);
            let m = spec.width.unwrap_or(0);
            if s < 3 {
                return Err(CatalogError::ParamOutOfBounds { param: "length", min: 3, got: s });
            }
            if m < 3 {
                return Err(CatalogError::ParamOutOfBounds { param: "width", min: 3, got: m });
            }
            match spec.glue.as_deref() {
                None | Some("diagonal") => Ok(FamilyOutput::Quotient(strip_quotient(s, m))),
                Some(other) => Err(CatalogError::BadSpec(format!("unknown glue `{}`", other))),
            }
        }
        (Family::C4C4Strip, FamilyMode::Patch { radius }) => {
            let s = spec.length.unwrap_or(0);
            if s < 3 {
                return Err(CatalogError::ParamOutOfBounds { param: "length", min: 3, got: s });
            }
            Ok(FamilyOutput::Patch(strip_patch(s, radius)))
        }
        (Family::TypeC, FamilyMode::Quotient) => Ok(FamilyOutput::Quotient(type_c_graph())),
        (Family::TypeC, FamilyMode::Patch { .. }) => {
            Err(CatalogError::UnsupportedMode { family: "type_c", mode: "patch" })
        }
    }
}

/// Ring of `m >= 3` four-cycles: hub `i` is vertex `3i`, the two degree-2
/// vertices between hubs `i` and `i+1` are `3i+1` and `3i+2`.
fn c4_chain_quotient(m: usize) -> Result<Graph, CatalogError> {
    debug_assert!(m >= 3);
    let mut edges = Vec::new();
    for i in 0..m {
        let hub = 3 * i;
        let next_hub = 3 * ((i + 1) % m);
        edges.push((hub, 3 * i + 1));
        edges.push((hub, 3 * i + 2));
        edges.push((3 * i + 1, next_hub));
        edges.push((3 * i + 2, next_hub));
    }
    let g = Graph::from_edges(3 * m, &edges).expect("chain quotient is simple");
    // Gluing legality: the closing identification merges the neighbor slots
    // of two hubs; they must sit at distance >= 3 in the open chain.
    let open = c4_chain_open(m + 1);
    let a = 0;
    let b = 3 * (m - 1);
    let d = open.distance(a, b).unwrap_or(usize::MAX);
    if d < 3 {
        return Err(CatalogError::GluingViolation { a, b, distance: d });
    }
    Ok(g.with_name(&format!("c4_chain[k={}]", m - 2)))
}

/// Open chain of four-cycles with `m` hubs (no closing).
fn c4_chain_open(m: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..m - 1 {
        edges.push((3 * i, 3 * i + 1));
        edges.push((3 * i, 3 * i + 2));
        edges.push((3 * i + 1, 3 * (i + 1)));
        edges.push((3 * i + 2, 3 * (i + 1)));
    }
    Graph::from_edges(3 * (m - 1) + 1, &edges).expect("open chain is simple")
}

/// Radius-`radius` ball of the infinite chain around a base edge.
fn c4_chain_patch(radius: usize) -> Patch {
    // Enough hubs on both sides that the segment ends lie outside the ball.
    let half = radius + 2;
    let m = 2 * half + 1;
    let g = c4_chain_open(m);
    let base_hub = 3 * half;
    ball_patch(&g, base_hub, g.neighbors(base_hub)[0], radius, "c4_chain")
}

/// Restricts `g` to the radius-`radius` ball around edge `(a, b)`; boundary
/// is the sphere at exactly `radius`.
fn ball_patch(g: &Graph, a: usize, b: usize, radius: usize, name: &str) -> Patch {
    let da = g.distances_from(a);
    let db = g.distances_from(b);
    let dist = |v: usize| -> Option<usize> {
        match (da[v], db[v]) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (Some(x), None) => Some(x),
            (None, Some(y)) => Some(y),
            (None, None) => None,
        }
    };
    let mut keep = Vec::new();
    for v in 0..g.n() {
        if let Some(d) = dist(v) {
            if d <= radius {
                keep.push(v);
            }
        }
    }
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in keep.iter().enumerate() {
        index[v] = i;
    }
    let mut edges = Vec::new();
    for &v in &keep {
        for &w in g.neighbors(v) {
            if v < w && index[w] != usize::MAX {
                edges.push((index[v], index[w]));
            }
        }
    }
    let graph = Graph::from_edges(keep.len(), &edges)
        .expect("ball restriction is simple")
        .with_name(&format!("{}[patch r={}]", name, radius));
    let boundary = keep
        .iter()
        .enumerate()
        .filter(|(_, &v)| dist(v) == Some(radius))
        .map(|(i, _)| i)
        .collect();
    Patch { graph, boundary }
}

/// Band quotient: hub ring of length `m` with all distance-2 chords
/// subdivided. Hub `i` is vertex `2i`, the subdivider of chord `(i, i+2)`
/// is vertex `2i+1`.
fn band_quotient(m: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..m {
        edges.push((2 * i, 2 * ((i + 1) % m)));
        edges.push((2 * i, 2 * i + 1));
        edges.push((2 * i + 1, 2 * ((i + 2) % m)));
    }
    Graph::from_edges(2 * m, &edges)
        .expect("band quotient is simple")
        .with_name(&format!("c4_grid_band[length={}]", m))
}

/// Open band on a hub path. The last subdivider slot is unused; the ball
/// restriction in `band_patch` drops unreachable ids.
fn band_open(hubs: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..hubs - 1 {
        edges.push((2 * i, 2 * (i + 1)));
    }
    for i in 0..hubs - 2 {
        edges.push((2 * i, 2 * i + 1));
        edges.push((2 * i + 1, 2 * (i + 2)));
    }
    let max_id = edges.iter().map(|&(a, b)| a.max(b)).max().unwrap_or(0);
    Graph::from_edges(max_id + 1, &edges).expect("open band is simple")
}

fn band_patch(radius: usize) -> Patch {
    let half = radius + 3;
    let hubs = 2 * half + 1;
    let g = band_open(hubs);
    let base = 2 * half;
    ball_patch(&g, base, 2 * (half + 1), radius, "c4_grid_band")
}

/// Straight torus gluing of the square lattice.
fn lattice_torus(l: usize, w: usize) -> Graph {
    let idx = |i: usize, j: usize| i * w + j;
    let mut edges = Vec::new();
    for i in 0..l {
        for j in 0..w {
            edges.push((idx(i, j), idx((i + 1) % l, j)));
            edges.push((idx(i, j), idx(i, (j + 1) % w)));
        }
    }
    Graph::from_edges(l * w, &edges)
        .expect("torus is simple")
        .with_name(&format!("lattice4[{}x{}]", l, w))
}

/// Radius-`radius` ball of the planar square lattice around a base edge.
fn lattice_patch(radius: usize) -> Patch {
    let r = radius as i64;
    // Vertices within L1 distance `radius` of (0,0) or (1,0).
    let mut coords = Vec::new();
    let mut index = HashMap::new();
    for x in -r..=(r + 1) {
        for y in -r..=r {
            let d = lattice_dist(x, y);
            if d <= radius {
                index.insert((x, y), coords.len());
                coords.push((x, y));
            }
        }
    }
    let mut edges = Vec::new();
    for (i, &(x, y)) in coords.iter().enumerate() {
        for (dx, dy) in [(1i64, 0i64), (0, 1)] {
            if let Some(&j) = index.get(&(x + dx, y + dy)) {
                edges.push((i, j));
            }
        }
    }
    let graph = Graph::from_edges(coords.len(), &edges)
        .expect("lattice ball is simple")
        .with_name(&format!("lattice4[patch r={}]", radius));
    let boundary = coords
        .iter()
        .enumerate()
        .filter(|(_, &(x, y))| lattice_dist(x, y) == radius)
        .map(|(i, _)| i)
        .collect();
    Patch { graph, boundary }
}

fn lattice_dist(x: i64, y: i64) -> usize {
    // Graph distance to the base edge {(0,0), (1,0)}.
    let d0 = x.abs() + y.abs();
    let d1 = (x - 1).abs() + y.abs();
    d0.min(d1) as usize
}

/// Diagonal quotient of the square lattice by (s, -s) and (m, m), realized
/// on coordinates a = (x+y) mod 2m, b = (x-y) mod 2s with a = b (mod 2).
fn strip_quotient(s: usize, m: usize) -> Graph {
    let (p, q) = (2 * m as i64, 2 * s as i64);
    let mut index = HashMap::new();
    let mut count = 0usize;
    for a in 0..p {
        for b in 0..q {
            if (a + b) % 2 == 0 {
                index.insert((a, b), count);
                count += 1;
            }
        }
    }
    let mut edges = Vec::new();
    for (&(a, b), &i) in index.iter() {
        for (da, db) in [(1i64, 1i64), (1, -1)] {
            let j = index[&((a + da).rem_euclid(p), (b + db).rem_euclid(q))];
            if i < j {
                edges.push((i, j));
            } else if i > j {
                edges.push((j, i));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Graph::from_edges(count, &edges)
        .expect("strip quotient is simple")
        .with_name(&format!("c4c4_strip[length={} width={}]", s, m))
}

/// Ball of the diagonal cylinder (quotient by (s, -s) only) around a base
/// edge.
fn strip_patch(s: usize, radius: usize) -> Patch {
    let q = 2 * s as i64;
    let r = radius as i64;
    let mut coords = Vec::new();
    let mut index = HashMap::new();
    for a in -(r + 1)..=(r + 2) {
        for b in 0..q {
            if (a.rem_euclid(2) + b.rem_euclid(2)) % 2 == 0 {
                index.insert((a, b), coords.len());
                coords.push((a, b));
            }
        }
    }
    let mut edges = Vec::new();
    for (i, &(a, b)) in coords.iter().enumerate() {
        for (da, db) in [(1i64, 1i64), (1, -1)] {
            if let Some(&j) = index.get(&(a + da, (b + db).rem_euclid(q))) {
                edges.push((i, j));
            }
        }
    }
    let full = Graph::from_edges(coords.len(), &edges).expect("cylinder piece is simple");
    // Base edge: (a,b) = (0,0) -> (1,1).
    let u = index[&(0, 0)];
    let v = index[&(1, 1)];
    let mut p = ball_patch(&full, u, v, radius, "c4c4_strip");
    p.graph = p.graph.clone().with_name(&format!("c4c4_strip[length={} patch r={}]", s, radius));
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_certificate;

    #[test]
    fn named_inventory() {
        assert_eq!(NAMED.len(), 13);
        for name in NAMED {
            let g = named(name).unwrap();
            assert!(g.n() >= 5);
            assert!(g.is_connected(), "{} disconnected", name);
            assert!(g.max_degree() <= 4, "{} exceeds degree 4", name);
        }
        assert!(named("nope").is_err());
    }

    #[test]
    fn petersen_shape() {
        let g = named("petersen").unwrap();
        assert_eq!((g.n(), g.edge_count()), (10, 15));
        assert!((0..10).all(|v| g.degree(v) == 3));
    }

    #[test]
    fn dodecahedral_shape() {
        let g = named("dodecahedral").unwrap();
        assert_eq!((g.n(), g.edge_count()), (20, 30));
        assert!((0..20).all(|v| g.degree(v) == 3));
    }

    #[test]
    fn icosidodecahedron_shape() {
        let g = named("g7_icosidodecahedron").unwrap();
        assert_eq!((g.n(), g.edge_count()), (30, 60));
        assert!((0..30).all(|v| g.degree(v) == 4));
    }

    #[test]
    fn named_graphs_pairwise_non_isomorphic() {
        let mut certs = Vec::new();
        for name in NAMED {
            let g = named(name).unwrap();
            certs.push((name, canonical_certificate(&g).unwrap()));
        }
        for i in 0..certs.len() {
            for j in (i + 1)..certs.len() {
                assert_ne!(certs[i].1, certs[j].1, "{} ~ {}", certs[i].0, certs[j].0);
            }
        }
    }

    #[test]
    fn triplex_is_the_unique_flat_cubic_girth5_graph_on_12_vertices() {
        // Backtracking enumeration of connected cubic girth-5 graphs on 12
        // vertices; exactly one is Ricci-flat and it is the stored triplex.
        use alloc::collections::BTreeMap;
        fn extend(
            n: usize,
            adj: &mut alloc::vec::Vec<alloc::vec::Vec<usize>>,
            v: usize,
            classes: &mut BTreeMap<alloc::vec::Vec<u8>, Graph>,
        ) {
            if v == n {
                let g = Graph::from_adjacency(adj.clone()).unwrap();
                if g.is_connected() {
                    let cert = crate::canon::canonical_certificate(&g).unwrap();
                    classes.entry(cert.0).or_insert(g);
                }
                return;
            }
            if adj[v].len() == 3 {
                extend(n, adj, v + 1, classes);
                return;
            }
            // Girth 5: the new edge may not close a cycle of length <= 4,
            // i.e. v and w must currently sit at distance >= 4.
            fn near(adj: &[alloc::vec::Vec<usize>], from: usize, to: usize) -> bool {
                let mut frontier = alloc::vec![from];
                let mut seen = alloc::vec![false; adj.len()];
                seen[from] = true;
                for _ in 0..3 {
                    let mut next = alloc::vec::Vec::new();
                    for &u in &frontier {
                        for &x in &adj[u] {
                            if x == to {
                                return true;
                            }
                            if !seen[x] {
                                seen[x] = true;
                                next.push(x);
                            }
                        }
                    }
                    frontier = next;
                }
                false
            }
            let start = adj[v].last().map_or(v + 1, |&w| w + 1);
            // Unused vertices are interchangeable: allow only the first
            // unused id as a new attachment target.
            let max_used = (0..n).rev().find(|&u| !adj[u].is_empty()).unwrap_or(0);
            for w in start..n.min(max_used + 2) {
                if adj[w].len() == 3 || near(adj, v, w) {
                    continue;
                }
                adj[v].push(w);
                adj[w].push(v);
                extend(n, adj, v, classes);
                adj[v].pop();
                adj[w].pop();
            }
        }
        let n = 12;
        let mut adj = alloc::vec![alloc::vec::Vec::new(); n];
        for w in 1..=3 {
            adj[0].push(w);
            adj[w].push(0);
        }
        let mut classes = alloc::collections::BTreeMap::new();
        extend(n, &mut adj, 1, &mut classes);
        let found: alloc::vec::Vec<Graph> = classes
            .into_values()
            .filter(|g| crate::curvature::is_ricci_flat(g).map(|r| r.flat).unwrap_or(false))
            .collect();
        assert_eq!(found.len(), 1);
        let triplex = named("triplex").unwrap();
        assert!(crate::canon::are_isomorphic(&found[0], &triplex).unwrap());
        assert_eq!((triplex.n(), triplex.edge_count()), (12, 18));
        assert!((0..12).all(|v| triplex.degree(v) == 3));
        for (u, v) in triplex.edges() {
            assert!(!crate::cycles::cycle_membership(&triplex, EdgeRef::new(u, v)).in_c3());
            assert!(!crate::cycles::cycle_membership(&triplex, EdgeRef::new(u, v)).in_c4());
        }
    }

    #[test]
    fn family_spec_parsing() {
        let s = FamilySpec::parse("family=lattice4 length=6 width=6 glue=torus mode=quotient")
            .unwrap();
        assert_eq!(s.family, Family::Lattice4);
        assert_eq!(s.mode, FamilyMode::Quotient);
        let s = FamilySpec::parse("family=c4_chain k=1").unwrap();
        assert_eq!(s.family, Family::C4Chain);
        let s = FamilySpec::parse("family=lattice4 mode=patch radius=10").unwrap();
        assert_eq!(s.mode, FamilyMode::Patch { radius: 10 });
        assert!(FamilySpec::parse("family=weird").is_err());
        assert!(FamilySpec::parse("length=6").is_err());
        assert!(FamilySpec::parse("family=lattice4 length=6 length=7").is_err());
    }

    #[test]
    fn chain_quotient_sizes() {
        let g = c4_chain_quotient(3).unwrap();
        assert_eq!(g.n(), 9);
        assert!(g.is_connected());
        let spec = FamilySpec::parse("family=c4_chain k=1 mode=quotient").unwrap();
        assert_eq!(family(&spec).unwrap().graph().n(), 9);
        let spec = FamilySpec::parse("family=c4_chain k=0 mode=quotient").unwrap();
        assert!(family(&spec).is_err());
    }

    #[test]
    fn lattice_bounds() {
        let spec = FamilySpec::parse("family=lattice4 length=5 width=6 mode=quotient").unwrap();
        assert!(matches!(
            family(&spec),
            Err(CatalogError::ParamOutOfBounds { param: "length", .. })
        ));
        let spec = FamilySpec::parse("family=lattice4 length=6 width=6 mode=quotient").unwrap();
        let g = family(&spec).unwrap();
        assert_eq!(g.graph().n(), 36);
        assert!((0..36).all(|v| g.graph().degree(v) == 4));
    }

    #[test]
    fn strip_quotient_shape() {
        let spec = FamilySpec::parse("family=c4c4_strip length=3 width=3 mode=quotient").unwrap();
        let g = family(&spec).unwrap();
        assert_eq!(g.graph().n(), 18);
        assert!(g.graph().is_connected());
        assert!((0..18).all(|v| g.graph().degree(v) == 4));
    }

    #[test]
    fn band_quotient_shape() {
        let g = band_quotient(6);
        assert_eq!(g.n(), 12);
        assert!(g.is_connected());
        let degs: Vec<usize> = (0..12).map(|v| g.degree(v)).collect();
        assert_eq!(degs.iter().filter(|&&d| d == 4).count(), 6);
        assert_eq!(degs.iter().filter(|&&d| d == 2).count(), 6);
    }

    #[test]
    fn patches_have_interior() {
        for spec_text in [
            "family=c4_chain mode=patch radius=10",
            "family=lattice4 mode=patch radius=8",
            "family=c4c4_strip length=4 mode=patch radius=8",
            "family=c4_grid_band mode=patch radius=10",
        ] {
            let spec = FamilySpec::parse(spec_text).unwrap();
            let out = family(&spec).unwrap();
            let FamilyOutput::Patch(p) = out else { panic!("expected patch") };
            assert!(!p.boundary.is_empty());
            assert!(p.graph.n() > p.boundary.len());
        }
    }

    #[test]
    fn tiny_patch_has_no_certifiable_edge() {
        let spec = FamilySpec::parse("family=c4_chain mode=patch radius=2").unwrap();
        let FamilyOutput::Patch(p) = family(&spec).unwrap() else { panic!() };
        assert!(matches!(certify_patch(&p), Err(CatalogError::NoCertifiableEdge { .. })));
    }
}
