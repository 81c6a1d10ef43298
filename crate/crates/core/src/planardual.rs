//! Plane graphs given by rotation systems, their faces and duals, and the
//! Alexander polynomial of the special alternating link of a plane bipartite
//! graph, computed through the dual alternating dimap.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphkit::{graphic_matrix, p_poly, spanning_trees, standard_orientation, Bigraph, Digraph, GraphError};
use crate::ormatroid::{f_poly, GenericVector, MatroidContext, MatroidError};
use crate::polyshape::IntPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanarError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error("malformed rotation system: {0}")]
    MalformedRotation(String),
    #[error("rotation system is not a plane embedding: V - E + F = {0}")]
    NotPlaneConsistent(i64),
    #[error("edge {0} joins two vertices of the same part")]
    NotBipartite(usize),
    #[error("edge {0} is a bridge, so its dual is a self-loop")]
    DegenerateDual(usize),
    #[error("duality identity failed: dimap gives {dimap}, graphic matrix gives {graphic}")]
    IdentityViolation { dimap: String, graphic: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum End {
    Tail,
    Head,
}

impl End {
    fn flip(self) -> Self {
        match self {
            End::Tail => End::Head,
            End::Head => End::Tail,
        }
    }

    fn index(self) -> usize {
        match self {
            End::Tail => 0,
            End::Head => 1,
        }
    }
}

/// One end of an edge, seen from the vertex at that end. As a dart it leaves
/// that vertex along the edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfEdge {
    pub edge: usize,
    pub end: End,
}

impl HalfEdge {
    pub fn new(edge: usize, end: End) -> Self {
        HalfEdge { edge, end }
    }

    fn twin(self) -> Self {
        HalfEdge { edge: self.edge, end: self.end.flip() }
    }
}

/// Connected digraph with a counterclockwise rotation of half-edges at every
/// vertex, checked against Euler's formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneGraph {
    digraph: Digraph,
    rotations: Vec<Vec<HalfEdge>>,
    /// position of each half-edge in its rotation, indexed [edge][end]
    slot: Vec<[usize; 2]>,
}

impl PlaneGraph {
    pub fn new(digraph: Digraph, rotations: Vec<Vec<HalfEdge>>) -> Result<Self, PlanarError> {
        let n = digraph.n_vertices();
        if rotations.len() != n {
            return Err(PlanarError::MalformedRotation(format!("{} rotations for {n} vertices", rotations.len())));
        }
        let mut slot = vec![[usize::MAX; 2]; digraph.n_edges()];
        for (v, rot) in rotations.iter().enumerate() {
            for (k, h) in rot.iter().enumerate() {
                if h.edge >= digraph.n_edges() {
                    return Err(PlanarError::MalformedRotation(format!("unknown edge {}", h.edge)));
                }
                let (tail, head) = digraph.edge(h.edge);
                let at = if h.end == End::Tail { tail } else { head };
                if at != v {
                    return Err(PlanarError::MalformedRotation(format!(
                        "half-edge {:?} listed at vertex {v} but belongs to {at}",
                        h
                    )));
                }
                let s = &mut slot[h.edge][h.end.index()];
                if *s != usize::MAX {
                    return Err(PlanarError::MalformedRotation(format!("half-edge {:?} repeated", h)));
                }
                *s = k;
            }
        }
        if let Some(e) = slot.iter().position(|s| s.contains(&usize::MAX)) {
            return Err(PlanarError::MalformedRotation(format!("edge {e} missing from the rotations")));
        }
        if !digraph.is_connected() {
            return Err(GraphError::Disconnected.into());
        }
        let pg = PlaneGraph { digraph, rotations, slot };
        let chi = pg.digraph.n_vertices() as i64 - pg.digraph.n_edges() as i64 + pg.faces().len() as i64;
        if chi != 2 {
            return Err(PlanarError::NotPlaneConsistent(chi));
        }
        Ok(pg)
    }

    /// Embedding of a straight-line drawing with distinct integer points and
    /// no two edges between the same pair of vertices.
    pub fn from_straight_line(points: &[(i64, i64)], edges: Vec<(usize, usize)>) -> Result<Self, PlanarError> {
        let digraph = Digraph::new(points.len(), edges)?;
        let mut rotations: Vec<Vec<HalfEdge>> = vec![Vec::new(); points.len()];
        for (e, &(u, v)) in digraph.edges().iter().enumerate() {
            rotations[u].push(HalfEdge::new(e, End::Tail));
            rotations[v].push(HalfEdge::new(e, End::Head));
        }
        for (v, rot) in rotations.iter_mut().enumerate() {
            let dir = |h: &HalfEdge| {
                let (a, b) = digraph.edge(h.edge);
                let w = if h.end == End::Tail { b } else { a };
                (points[w].0 - points[v].0, points[w].1 - points[v].1)
            };
            rot.sort_by(|x, y| ccw_angle_cmp(dir(x), dir(y)));
        }
        PlaneGraph::new(digraph, rotations)
    }

    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    pub fn rotations(&self) -> &[Vec<HalfEdge>] {
        &self.rotations
    }

    fn vertex_of(&self, h: HalfEdge) -> usize {
        let (t, hd) = self.digraph.edge(h.edge);
        if h.end == End::Tail {
            t
        } else {
            hd
        }
    }

    /// Boundary walks, each a cyclic list of darts with the face on their
    /// left. Every dart appears in exactly one walk.
    pub fn faces(&self) -> Vec<Vec<HalfEdge>> {
        let m = self.digraph.n_edges();
        if m == 0 {
            return vec![Vec::new()];
        }
        let mut used = vec![[false; 2]; m];
        let mut faces = Vec::new();
        for e in 0..m {
            for end in [End::Tail, End::Head] {
                if used[e][end.index()] {
                    continue;
                }
                let start = HalfEdge::new(e, end);
                let mut walk = Vec::new();
                let mut dart = start;
                loop {
                    used[dart.edge][dart.end.index()] = true;
                    walk.push(dart);
                    // arrive along the twin; leave by its clockwise neighbour
                    let arrive = dart.twin();
                    let rot = &self.rotations[self.vertex_of(arrive)];
                    let k = self.slot[arrive.edge][arrive.end.index()];
                    dart = rot[(k + rot.len() - 1) % rot.len()];
                    if dart == start {
                        break;
                    }
                }
                faces.push(walk);
            }
        }
        faces
    }

    /// Face index on the left of each dart, indexed [edge][end].
    fn face_of_darts(&self, faces: &[Vec<HalfEdge>]) -> Vec<[usize; 2]> {
        let mut f = vec![[0; 2]; self.digraph.n_edges()];
        for (i, walk) in faces.iter().enumerate() {
            for h in walk {
                f[h.edge][h.end.index()] = i;
            }
        }
        f
    }
}

/// Counterclockwise order of direction vectors starting from the positive
/// x-axis.
fn ccw_angle_cmp(a: (i64, i64), b: (i64, i64)) -> Ordering {
    let half = |p: (i64, i64)| if p.1 > 0 || (p.1 == 0 && p.0 > 0) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| {
        let cross = a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128;
        0.cmp(&cross)
    })
}

/// Dual plane digraph. Dual edge `i` crosses primal edge `edge_map[i]`.
#[derive(Debug, Clone)]
pub struct DualResult {
    pub dual: PlaneGraph,
    pub edge_map: Vec<usize>,
}

/// Planar dual with every dual edge crossing its primal edge so that the
/// first-part endpoint lies on its right: it runs from the face left of the
/// primal edge (directed first part to second) to the face on its right.
pub fn dual_with_orientation(p: &PlaneGraph, part1: &[usize]) -> Result<DualResult, PlanarError> {
    let g = p.digraph();
    let mut in1 = vec![false; g.n_vertices()];
    for &v in part1 {
        if v >= g.n_vertices() {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: g.n_vertices() }.into());
        }
        in1[v] = true;
    }
    // end of each edge sitting in the first part
    let mut source_end = Vec::with_capacity(g.n_edges());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        source_end.push(match (in1[u], in1[v]) {
            (true, false) => End::Tail,
            (false, true) => End::Head,
            _ => return Err(PlanarError::NotBipartite(e)),
        });
    }
    let faces = p.faces();
    let face_of = p.face_of_darts(&faces);
    let mut dual_edges = Vec::with_capacity(g.n_edges());
    for (e, &s) in source_end.iter().enumerate() {
        let left = face_of[e][s.index()];
        let right = face_of[e][s.flip().index()];
        if left == right {
            return Err(PlanarError::DegenerateDual(e));
        }
        dual_edges.push((left, right));
    }
    // walking a face boundary with the face on the left visits the crossing
    // dual edges counterclockwise around the dual vertex
    let rotations: Vec<Vec<HalfEdge>> = faces
        .iter()
        .map(|walk| {
            walk.iter()
                .map(|h| {
                    let end = if h.end == source_end[h.edge] { End::Tail } else { End::Head };
                    HalfEdge::new(h.edge, end)
                })
                .collect()
        })
        .collect();
    let dual = PlaneGraph::new(Digraph::new(faces.len(), dual_edges)?, rotations)?;
    Ok(DualResult { dual, edge_map: (0..g.n_edges()).collect() })
}

/// Around every vertex the edges alternate between outgoing and incoming.
pub fn is_alternating_dimap(p: &PlaneGraph) -> bool {
    p.rotations().iter().all(|rot| {
        rot.len() % 2 == 0 && (0..rot.len()).all(|k| rot[k].end != rot[(k + 1) % rot.len()].end)
    })
}

/// Alexander polynomial `Delta(-t)` of the special alternating link of a
/// plane bipartite graph, normalised to nonnegative coefficients with a
/// nonzero constant term. Computed as `P_D` of the dual alternating dimap
/// and checked against `f` of the standard-oriented graphic matrix.
pub fn alexander_poly(p: &PlaneGraph, part1: &[usize]) -> Result<IntPolynomial, PlanarError> {
    let dual = dual_with_orientation(p, part1)?;
    if !is_alternating_dimap(&dual.dual) {
        return Err(PlanarError::MalformedRotation("dual orientation is not an alternating dimap".into()));
    }
    let dimap = p_poly(dual.dual.digraph(), 0)?.strip_low_zeros();

    let bigraph = Bigraph::new(p.digraph().n_vertices(), part1, p.digraph().edges().to_vec())
        .map_err(|e| match e {
            GraphError::NotBipartite(i) => PlanarError::NotBipartite(i),
            other => other.into(),
        })?;
    let oriented = standard_orientation(&bigraph)?;
    let tree = spanning_trees(&oriented)?.into_iter().next().expect("connected graph has a tree");
    let ctx = MatroidContext::new(graphic_matrix(&oriented, &tree)?)?;
    let graphic = f_poly(&ctx, &GenericVector::LexOrder)?;
    if graphic != dimap {
        return Err(PlanarError::IdentityViolation { dimap: dimap.to_string(), graphic: graphic.to_string() });
    }
    Ok(dimap)
}

/// Plane cycle on `n` vertices drawn as a convex polygon.
pub fn plane_cycle(n: usize) -> PlaneGraph {
    let points: Vec<(i64, i64)> = (0..n)
        .map(|k| {
            let a = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            ((10_000.0 * a.cos()).round() as i64, (10_000.0 * a.sin()).round() as i64)
        })
        .collect();
    let edges = (0..n).map(|k| (k, (k + 1) % n)).collect();
    PlaneGraph::from_straight_line(&points, edges).expect("convex polygon")
}

/// `rows x cols` grid of unit squares' corners.
pub fn plane_grid(rows: usize, cols: usize) -> PlaneGraph {
    let id = |r: usize, c: usize| r * cols + c;
    let points: Vec<(i64, i64)> = (0..rows * cols).map(|v| ((v % cols) as i64, (v / cols) as i64)).collect();
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    PlaneGraph::from_straight_line(&points, edges).expect("grid drawing")
}

/// Two poles joined by internally disjoint paths with the given numbers of
/// edges (each at least 2). Shorter paths are drawn closer to the axis
/// through the poles, alternating above and below it.
pub fn plane_theta(path_lengths: &[usize]) -> PlaneGraph {
    let mut lengths = path_lengths.to_vec();
    lengths.sort_unstable();
    let span = *lengths.last().expect("at least one path") as i64;
    let width = 2 * span;
    let mut points = vec![(0, 0), (width, 0)];
    let mut edges = Vec::new();
    for (k, &len) in lengths.iter().enumerate() {
        assert!(len >= 2, "theta paths need an interior vertex");
        let level = (k / 2 + 1) as i64;
        let y = if k % 2 == 0 { level } else { -level };
        let xs: Vec<i64> = if len == 2 {
            vec![span]
        } else {
            (0..len as i64 - 1).map(|i| 1 + (width - 2) * i / (len as i64 - 2)).collect()
        };
        let mut prev = 0;
        for x in xs {
            points.push((x, y));
            let v = points.len() - 1;
            edges.push((prev, v));
            prev = v;
        }
        edges.push((prev, 1));
    }
    PlaneGraph::from_straight_line(&points, edges).expect("theta drawing")
}

/// First part of the two-colouring that puts vertex 0 first.
pub fn bipartition(p: &PlaneGraph) -> Result<Vec<usize>, PlanarError> {
    Bigraph::two_colour(p.digraph().n_vertices(), p.digraph().edges().to_vec())
        .map(|b| b.part1())
        .map_err(|e| match e {
            GraphError::NotBipartite(i) => PlanarError::NotBipartite(i),
            other => other.into(),
        })
}
