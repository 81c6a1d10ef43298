//! Directed multigraphs, spanning trees, and the matrices presenting their
//! graphic and cographic oriented matroids.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactnum::{det_rows, rat, Rational, RationalMatrix};
use crate::polyshape::IntPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {0} is a self-loop")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph has no vertices")]
    Empty,
    #[error("underlying graph is disconnected")]
    Disconnected,
    #[error("edge set {0:?} is not a spanning tree")]
    NotSpanningTree(Vec<usize>),
    #[error("digraph is not Eulerian")]
    NotEulerian,
    #[error("graph is not bipartite with respect to the given parts (edge {0})")]
    NotBipartite(usize),
    #[error("expected {expected} values, got {found}")]
    WrongLength { expected: usize, found: usize },
}

/// Directed multigraph on vertices `0..n`. The edge order is the ground-set
/// order of every matrix built from it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        for (i, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(i));
            }
        }
        Ok(Digraph { n, edges })
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn with_edge_reversed(&self, e: usize) -> Self {
        let mut g = self.clone();
        let (u, v) = g.edges[e];
        g.edges[e] = (v, u);
        g
    }

    /// New digraph whose edge `k` is edge `order[k]` of `self`.
    pub fn permute_edges(&self, order: &[usize]) -> Self {
        Digraph { n: self.n, edges: order.iter().map(|&i| self.edges[i]).collect() }
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.0 == v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.1 == v).count()
    }

    pub fn is_balanced(&self) -> bool {
        let mut net = vec![0i64; self.n];
        for &(u, v) in &self.edges {
            net[u] += 1;
            net[v] -= 1;
        }
        net.iter().all(|&x| x == 0)
    }

    /// Incident `(edge, neighbour)` pairs of each vertex, ignoring direction.
    fn undirected_adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((i, v));
            adj[v].push((i, u));
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        let all: Vec<usize> = (0..self.n_edges()).collect();
        connects_all(self.n, &self.edges, &all)
    }

    fn require_connected(&self) -> Result<(), GraphError> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(GraphError::Disconnected)
        }
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }
}

fn connects_all(n: usize, edges: &[(usize, usize)], subset: &[usize]) -> bool {
    let mut dsu = Dsu::new(n);
    let mut comps = n;
    for &i in subset {
        if dsu.union(edges[i].0, edges[i].1) {
            comps -= 1;
        }
    }
    comps == 1
}

#[derive(Clone)]
struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Edge set of a spanning tree, ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpanningTree {
    edge_indices: Vec<usize>,
}

impl SpanningTree {
    pub fn new(g: &Digraph, mut edge_indices: Vec<usize>) -> Result<Self, GraphError> {
        edge_indices.sort_unstable();
        edge_indices.dedup();
        let ok = edge_indices.len() + 1 == g.n_vertices()
            && edge_indices.iter().all(|&i| i < g.n_edges())
            && connects_all(g.n_vertices(), g.edges(), &edge_indices);
        if ok {
            Ok(SpanningTree { edge_indices })
        } else {
            Err(GraphError::NotSpanningTree(edge_indices))
        }
    }

    pub fn edge_indices(&self) -> &[usize] {
        &self.edge_indices
    }

    pub fn contains(&self, e: usize) -> bool {
        self.edge_indices.binary_search(&e).is_ok()
    }

    pub fn complement(&self, n_edges: usize) -> Vec<usize> {
        (0..n_edges).filter(|&e| !self.contains(e)).collect()
    }
}

/// All spanning trees in lexicographic order of their sorted edge lists.
/// Branches on each edge in turn (take it, or drop it if the rest still
/// connects the graph).
pub fn spanning_trees(g: &Digraph) -> Result<Vec<SpanningTree>, GraphError> {
    g.require_connected()?;
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    grow_trees(g, 0, Dsu::new(g.n_vertices()), &mut chosen, &mut out);
    Ok(out)
}

/// The lexicographically first spanning tree, found greedily.
pub fn first_spanning_tree(g: &Digraph) -> Result<SpanningTree, GraphError> {
    g.require_connected()?;
    let mut dsu = Dsu::new(g.n_vertices());
    let edge_indices = (0..g.n_edges()).filter(|&e| dsu.union(g.edges[e].0, g.edges[e].1)).collect();
    Ok(SpanningTree { edge_indices })
}

fn grow_trees(g: &Digraph, next: usize, dsu: Dsu, chosen: &mut Vec<usize>, out: &mut Vec<SpanningTree>) {
    if chosen.len() + 1 == g.n_vertices() {
        out.push(SpanningTree { edge_indices: chosen.clone() });
        return;
    }
    if next == g.n_edges() {
        return;
    }
    let (u, v) = g.edges[next];
    let mut with = dsu.clone();
    if with.union(u, v) {
        chosen.push(next);
        grow_trees(g, next + 1, with, chosen, out);
        chosen.pop();
    }
    // dropping `next` is only viable if chosen + later edges still span
    let mut rest: Vec<usize> = chosen.clone();
    rest.extend(next + 1..g.n_edges());
    if connects_all(g.n_vertices(), g.edges(), &rest) {
        grow_trees(g, next + 1, dsu, chosen, out);
    }
}

/// Number of spanning trees of the underlying undirected graph, as the
/// determinant of the reduced Laplacian.
pub fn kirchhoff_tree_count(g: &Digraph) -> BigInt {
    let n = g.n_vertices();
    let mut lap = vec![vec![Rational::zero(); n]; n];
    for &(u, v) in g.edges() {
        lap[u][u] += Rational::one();
        lap[v][v] += Rational::one();
        lap[u][v] -= Rational::one();
        lap[v][u] -= Rational::one();
    }
    let reduced: Vec<Vec<Rational>> = lap[1..].iter().map(|r| r[1..].to_vec()).collect();
    det_rows(&reduced).to_integer()
}

/// Signed incidence matrix: column `e` is `e_tail - e_head`.
pub fn incidence_matrix(g: &Digraph) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(g.n_vertices(), g.n_edges());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        m.set(u, e, rat(1));
        m.set(v, e, rat(-1));
    }
    m
}

/// A spanning tree hung from a root: parent vertex and parent edge of every
/// non-root vertex, plus depths.
struct RootedTree {
    parent: Vec<Option<(usize, usize)>>,
    depth: Vec<usize>,
}

impl RootedTree {
    fn new(g: &Digraph, t: &SpanningTree, root: usize) -> Self {
        let n = g.n_vertices();
        let mut adj = vec![Vec::new(); n];
        for &e in t.edge_indices() {
            let (u, v) = g.edge(e);
            adj[u].push((e, v));
            adj[v].push((e, u));
        }
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &(e, w) in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((u, e));
                    depth[w] = depth[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        RootedTree { parent, depth }
    }

    /// Tree edges on the path from `a` to `b`, each with +1 if traversed
    /// along its direction and -1 otherwise.
    fn signed_path(&self, g: &Digraph, mut a: usize, mut b: usize) -> Vec<(usize, i64)> {
        let mut up = Vec::new();
        let mut down = Vec::new();
        while a != b {
            if self.depth[a] >= self.depth[b] {
                let (p, e) = self.parent[a].expect("non-root");
                up.push((e, if g.edge(e).0 == a { 1 } else { -1 }));
                a = p;
            } else {
                let (p, e) = self.parent[b].expect("non-root");
                down.push((e, if g.edge(e).0 == p { 1 } else { -1 }));
                b = p;
            }
        }
        up.extend(down.into_iter().rev());
        up
    }
}

/// `[I | M]`: rows are the tree edges in ascending order; the column of a
/// non-tree edge `e` holds the signed tree path from the tail of `e` to its
/// head, so every column equals the incidence column re-expressed in the
/// tree basis.
pub fn graphic_matrix(g: &Digraph, t: &SpanningTree) -> Result<RationalMatrix, GraphError> {
    let t = SpanningTree::new(g, t.edge_indices.clone())?;
    let row_of = row_index(&t.edge_indices, g.n_edges());
    let rooted = RootedTree::new(g, &t, 0);
    let mut m = RationalMatrix::zeros(t.edge_indices.len(), g.n_edges());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if let Some(r) = row_of[e] {
            m.set(r, e, rat(1));
            continue;
        }
        for (d, s) in rooted.signed_path(g, u, v) {
            m.set(row_of[d].expect("tree edge"), e, rat(s));
        }
    }
    Ok(m)
}

/// `[K | I]`: rows are the non-tree edges in ascending order. The column of a
/// tree edge `d` has +1 for non-tree edges crossing the fundamental cut of
/// `d` in the opposite direction and -1 for those crossing it in the same
/// direction.
pub fn cographic_matrix(g: &Digraph, t: &SpanningTree) -> Result<RationalMatrix, GraphError> {
    let t = SpanningTree::new(g, t.edge_indices.clone())?;
    let cotree = t.complement(g.n_edges());
    let row_of = row_index(&cotree, g.n_edges());
    let mut m = RationalMatrix::zeros(cotree.len(), g.n_edges());
    for &e in &cotree {
        m.set(row_of[e].unwrap(), e, rat(1));
    }
    for &d in t.edge_indices() {
        let side = tail_side(g, &t, d);
        for &e in &cotree {
            let (u, v) = g.edge(e);
            if side[u] != side[v] {
                // d runs from the tail side to the other; e is opposite iff it
                // starts on the far side
                let s = if side[u] { -1 } else { 1 };
                m.set(row_of[e].unwrap(), d, rat(s));
            }
        }
    }
    Ok(m)
}

/// Vertices in the component of `T - d` holding the tail of `d`.
fn tail_side(g: &Digraph, t: &SpanningTree, d: usize) -> Vec<bool> {
    let n = g.n_vertices();
    let mut adj = vec![Vec::new(); n];
    for &e in t.edge_indices() {
        if e != d {
            let (u, v) = g.edge(e);
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut side = vec![false; n];
    let start = g.edge(d).0;
    side[start] = true;
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &w in &adj[u] {
            if !side[w] {
                side[w] = true;
                stack.push(w);
            }
        }
    }
    side
}

fn row_index(rows: &[usize], n: usize) -> Vec<Option<usize>> {
    let mut idx = vec![None; n];
    for (r, &e) in rows.iter().enumerate() {
        idx[e] = Some(r);
    }
    idx
}

/// Extends flow values on the non-tree edges to a circulation: a tree edge
/// `d` carries the opposite-direction cut flow minus the same-direction cut
/// flow.
pub fn extend_flow(g: &Digraph, t: &SpanningTree, cotree_flow: &[Rational]) -> Result<Vec<Rational>, GraphError> {
    let cotree = t.complement(g.n_edges());
    if cotree_flow.len() != cotree.len() {
        return Err(GraphError::WrongLength { expected: cotree.len(), found: cotree_flow.len() });
    }
    let mut flow = vec![Rational::zero(); g.n_edges()];
    for (&e, f) in cotree.iter().zip(cotree_flow) {
        flow[e] = f.clone();
    }
    for &d in t.edge_indices() {
        let side = tail_side(g, t, d);
        let mut f = Rational::zero();
        for (&e, fe) in cotree.iter().zip(cotree_flow) {
            let (u, v) = g.edge(e);
            if side[u] != side[v] {
                if side[u] {
                    f -= fe;
                } else {
                    f += fe;
                }
            }
        }
        flow[d] = f;
    }
    Ok(flow)
}

/// Outflow minus inflow at every vertex.
pub fn netflow(g: &Digraph, flow: &[Rational]) -> Vec<Rational> {
    let mut net = vec![Rational::zero(); g.n_vertices()];
    for (&(u, v), f) in g.edges().iter().zip(flow) {
        net[u] += f;
        net[v] -= f;
    }
    net
}

/// Edge indices in the order of an Eulerian circuit whose first edge leaves
/// `root`.
pub fn eulerian_tour_order(g: &Digraph, root: usize) -> Result<Vec<usize>, GraphError> {
    g.check_vertex(root)?;
    if !g.is_balanced() || !g.is_connected() || g.n_edges() == 0 {
        return Err(GraphError::NotEulerian);
    }
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); g.n_vertices()];
    // reversed so that pop() takes edges in ascending order
    for (e, &(u, _)) in g.edges().iter().enumerate().rev() {
        out_edges[u].push(e);
    }
    // Hierholzer: stack of (vertex, edge used to reach it)
    let mut stack: Vec<(usize, Option<usize>)> = vec![(root, None)];
    let mut circuit = Vec::with_capacity(g.n_edges());
    while let Some(&(v, via)) = stack.last() {
        if let Some(e) = out_edges[v].pop() {
            stack.push((g.edge(e).1, Some(e)));
        } else {
            stack.pop();
            if let Some(e) = via {
                circuit.push(e);
            }
        }
    }
    circuit.reverse();
    Ok(circuit)
}

/// True when consecutive edges chain head-to-tail and the last returns to
/// the tail of the first.
pub fn is_eulerian_tour(g: &Digraph, order: &[usize]) -> bool {
    let mut seen = vec![false; g.n_edges()];
    if order.len() != g.n_edges() {
        return false;
    }
    for &e in order {
        if e >= g.n_edges() || std::mem::replace(&mut seen[e], true) {
            return false;
        }
    }
    (0..order.len()).all(|k| g.edge(order[k]).1 == g.edge(order[(k + 1) % order.len()]).0)
}

/// Number of edges of `t` pointing away from `root`, i.e. the reversals
/// needed to make `t` an arborescence oriented towards `root`.
pub fn reversals_to_root(g: &Digraph, t: &SpanningTree, root: usize) -> usize {
    let rooted = RootedTree::new(g, t, root);
    (0..g.n_vertices())
        .filter_map(|v| rooted.parent[v])
        .filter(|&(p, e)| g.edge(e).0 == p)
        .count()
}

/// `P_D(t) = sum_k c_k(D, root) t^k`, where `c_k` counts spanning trees
/// needing exactly `k` reversals.
pub fn p_poly(g: &Digraph, root: usize) -> Result<IntPolynomial, GraphError> {
    g.check_vertex(root)?;
    g.require_connected()?;
    if !g.is_balanced() {
        return Err(GraphError::NotEulerian);
    }
    let mut counts = vec![0i64; g.n_vertices()];
    for t in spanning_trees(g)? {
        counts[reversals_to_root(g, &t, root)] += 1;
    }
    Ok(IntPolynomial::from_i64(&counts))
}

/// Undirected graph with a designated first part of a bipartition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bigraph {
    n: usize,
    part1: Vec<bool>,
    edges: Vec<(usize, usize)>,
}

impl Bigraph {
    pub fn new(n: usize, part1: &[usize], edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut mask = vec![false; n];
        for &v in part1 {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            mask[v] = true;
        }
        for (i, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if mask[u] == mask[v] {
                return Err(GraphError::NotBipartite(i));
            }
        }
        Ok(Bigraph { n, part1: mask, edges })
    }

    /// Two-colours a connected graph, putting vertex 0 in the first part.
    pub fn two_colour(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let g = Digraph::new(n, edges.clone())?;
        g.require_connected()?;
        let adj = g.undirected_adjacency();
        let mut colour = vec![None; n];
        colour[0] = Some(true);
        let mut queue = VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            for &(e, w) in &adj[u] {
                match colour[w] {
                    None => {
                        colour[w] = Some(!colour[u].unwrap());
                        queue.push_back(w);
                    }
                    Some(c) if c == colour[u].unwrap() => return Err(GraphError::NotBipartite(e)),
                    _ => {}
                }
            }
        }
        let part1: Vec<usize> = (0..n).filter(|&v| colour[v] == Some(true)).collect();
        Bigraph::new(n, &part1, edges)
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn in_part1(&self, v: usize) -> bool {
        self.part1[v]
    }

    pub fn part1(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.part1[v]).collect()
    }

    pub fn part2(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| !self.part1[v]).collect()
    }
}

/// Every edge directed from its first-part endpoint to the other one.
pub fn standard_orientation(g: &Bigraph) -> Result<Digraph, GraphError> {
    let edges = g
        .edges
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| match (g.part1[u], g.part1[v]) {
            (true, false) => Ok((u, v)),
            (false, true) => Ok((v, u)),
            _ => Err(GraphError::NotBipartite(i)),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Digraph::new(g.n, edges)
}

/// Integer levels with every head exactly one below its tail, normalised so
/// that the minimum level is 0; `None` when no such levels exist.
pub fn level_function(g: &Digraph) -> Result<Option<Vec<i64>>, GraphError> {
    g.require_connected()?;
    let adj = g.undirected_adjacency();
    let mut level: Vec<Option<i64>> = vec![None; g.n_vertices()];
    level[0] = Some(0);
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        let lu = level[u].unwrap();
        for &(e, w) in &adj[u] {
            let want = if g.edge(e).0 == u { lu - 1 } else { lu + 1 };
            match level[w] {
                None => {
                    level[w] = Some(want);
                    queue.push_back(w);
                }
                Some(l) if l != want => return Ok(None),
                _ => {}
            }
        }
    }
    let lv: Vec<i64> = level.into_iter().map(Option::unwrap).collect();
    let min = *lv.iter().min().unwrap();
    Ok(Some(lv.into_iter().map(|l| l - min).collect()))
}

pub fn is_semibalanced(g: &Digraph) -> Result<bool, GraphError> {
    Ok(level_function(g)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{flat_witness, ratio};
    use num_traits::Signed;
    use proptest::prelude::*;

    fn dg(n: usize, e: &[(usize, usize)]) -> Digraph {
        Digraph::new(n, e.to_vec()).unwrap()
    }

    /// The five-vertex, seven-edge digraph used in the matrix examples
    /// (vertices shifted to start at 0).
    fn sample() -> Digraph {
        dg(5, &[(0, 1), (0, 2), (2, 3), (0, 4), (1, 2), (3, 0), (3, 4)])
    }

    fn ip(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn k4() -> Digraph {
        dg(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(Digraph::new(2, vec![(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(Digraph::new(2, vec![(0, 2)]), Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 }));
        assert_eq!(Digraph::new(0, vec![]), Err(GraphError::Empty));
    }

    #[test]
    fn spanning_tree_examples() {
        assert_eq!(first_spanning_tree(&k4()).unwrap(), spanning_trees(&k4()).unwrap()[0]);
        let c4 = dg(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(spanning_trees(&c4).unwrap().len(), 4);
        let path = dg(3, &[(0, 1), (2, 1)]);
        let t = spanning_trees(&path).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].edge_indices(), &[0, 1]);
        assert_eq!(spanning_trees(&k4()).unwrap().len(), 16);
        assert_eq!(kirchhoff_tree_count(&k4()), BigInt::from(16));
        assert_eq!(spanning_trees(&dg(3, &[(0, 1)])), Err(GraphError::Disconnected));
    }

    #[test]
    fn incidence_examples() {
        let m = incidence_matrix(&dg(2, &[(0, 1)]));
        assert_eq!(m, RationalMatrix::from_i64(&[vec![1], vec![-1]]));
        let m = incidence_matrix(&sample());
        assert_eq!(
            m,
            RationalMatrix::from_i64(&[
                vec![1, 1, 0, 1, 0, -1, 0],
                vec![-1, 0, 0, 0, 1, 0, 0],
                vec![0, -1, 1, 0, -1, 0, 0],
                vec![0, 0, -1, 0, 0, 1, 1],
                vec![0, 0, 0, -1, 0, 0, -1],
            ])
        );
        let r = incidence_matrix(&sample().with_edge_reversed(4));
        for i in 0..5 {
            assert_eq!(r.get(i, 4), &-m.get(i, 4));
        }
    }

    #[test]
    fn graphic_matrix_examples() {
        let g = sample();
        let t = SpanningTree::new(&g, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(
            graphic_matrix(&g, &t).unwrap(),
            RationalMatrix::from_i64(&[
                vec![1, 0, 0, 0, -1, 0, 0],
                vec![0, 1, 0, 0, 1, -1, -1],
                vec![0, 0, 1, 0, 0, -1, -1],
                vec![0, 0, 0, 1, 0, 0, 1],
            ])
        );
        // standard C4: parts {0,2} -> {1,3}
        let c4 = dg(4, &[(0, 1), (2, 1), (2, 3), (0, 3)]);
        let t = SpanningTree::new(&c4, vec![0, 1, 2]).unwrap();
        let a = graphic_matrix(&c4, &t).unwrap();
        let col = a.column(3);
        assert!(col.iter().all(|x| x.abs() == rat(1)));
        assert_eq!(col.iter().fold(rat(0), |s, x| s + x), rat(1));

        let tree = dg(3, &[(0, 1), (2, 1)]);
        let t = SpanningTree::new(&tree, vec![0, 1]).unwrap();
        assert_eq!(graphic_matrix(&tree, &t).unwrap(), RationalMatrix::identity(2));

        assert!(matches!(
            graphic_matrix(&c4, &SpanningTree { edge_indices: vec![0, 1] }),
            Err(GraphError::NotSpanningTree(_))
        ));
    }

    #[test]
    fn cographic_matrix_examples() {
        let g = sample();
        let t = SpanningTree::new(&g, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(
            cographic_matrix(&g, &t).unwrap(),
            RationalMatrix::from_i64(&[
                vec![1, -1, 0, 0, 1, 0, 0],
                vec![0, 1, 1, 0, 0, 1, 0],
                vec![0, 1, 1, -1, 0, 0, 1],
            ])
        );
        let c3 = dg(3, &[(0, 1), (1, 2), (2, 0)]);
        let t = SpanningTree::new(&c3, vec![0, 1]).unwrap();
        assert_eq!(cographic_matrix(&c3, &t).unwrap(), RationalMatrix::from_i64(&[vec![1, 1, 1]]));
    }

    #[test]
    fn eulerian_tour_examples() {
        let c3 = dg(3, &[(1, 2), (0, 1), (2, 0)]);
        assert_eq!(eulerian_tour_order(&c3, 0).unwrap(), vec![1, 0, 2]);
        let two = dg(2, &[(0, 1), (1, 0)]);
        assert_eq!(eulerian_tour_order(&two, 0).unwrap(), vec![0, 1]);
        let bowtie = dg(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]);
        let order = eulerian_tour_order(&bowtie, 2).unwrap();
        assert!(is_eulerian_tour(&bowtie, &order));
        assert_eq!(bowtie.edge(order[0]).0, 2);
        assert_eq!(eulerian_tour_order(&dg(2, &[(0, 1)]), 0), Err(GraphError::NotEulerian));
    }

    #[test]
    fn p_poly_examples() {
        assert_eq!(p_poly(&dg(2, &[(0, 1), (1, 0)]), 0).unwrap(), ip(&[1, 1]));
        assert_eq!(p_poly(&dg(3, &[(0, 1), (1, 2), (2, 0)]), 0).unwrap(), ip(&[1, 1, 1]));
        assert_eq!(p_poly(&dg(2, &[(0, 1), (0, 1), (1, 0), (1, 0)]), 1).unwrap(), ip(&[2, 2]));
        assert_eq!(p_poly(&dg(2, &[(0, 1)]), 0), Err(GraphError::NotEulerian));
        assert_eq!(p_poly(&dg(3, &[(0, 1), (1, 0)]), 0), Err(GraphError::Disconnected));
    }

    #[test]
    fn orientation_examples() {
        let g = Bigraph::new(2, &[1], vec![(0, 1)]).unwrap();
        assert_eq!(standard_orientation(&g).unwrap().edges(), &[(1, 0)]);
        let c4 = Bigraph::two_colour(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let d = standard_orientation(&c4).unwrap();
        assert_eq!(d.edges(), &[(0, 1), (2, 1), (2, 3), (0, 3)]);
        assert!(matches!(Bigraph::two_colour(3, vec![(0, 1), (1, 2), (2, 0)]), Err(GraphError::NotBipartite(_))));
        assert!(matches!(Bigraph::new(3, &[0], vec![(0, 1), (1, 2), (2, 0)]), Err(GraphError::NotBipartite(_))));
    }

    #[test]
    fn semibalanced_examples() {
        let c4 = Bigraph::two_colour(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(is_semibalanced(&standard_orientation(&c4).unwrap()).unwrap());
        assert!(!is_semibalanced(&dg(3, &[(0, 1), (1, 2), (2, 0)])).unwrap());
        assert_eq!(level_function(&dg(3, &[(0, 1), (1, 2)])).unwrap(), Some(vec![2, 1, 0]));
        assert_eq!(is_semibalanced(&dg(3, &[(0, 1)])), Err(GraphError::Disconnected));
    }

    #[test]
    fn flatness_characterisations() {
        let g = sample();
        let t = SpanningTree::new(&g, vec![0, 1, 2, 3]).unwrap();
        // contains the triangle 0-1-2
        assert!(flat_witness(&graphic_matrix(&g, &t).unwrap()).is_none());
        assert!(flat_witness(&cographic_matrix(&g, &t).unwrap()).is_none());
        let c4 = standard_orientation(&Bigraph::two_colour(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()).unwrap();
        for t in spanning_trees(&c4).unwrap() {
            assert!(flat_witness(&graphic_matrix(&c4, &t).unwrap()).is_some());
        }
        let bowtie = dg(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]);
        for t in spanning_trees(&bowtie).unwrap() {
            assert!(flat_witness(&cographic_matrix(&bowtie, &t).unwrap()).is_some());
        }
    }

    #[test]
    fn flow_extension_sample() {
        let g = sample();
        let t = SpanningTree::new(&g, vec![0, 1, 2, 3]).unwrap();
        let flow = extend_flow(&g, &t, &[ratio(1, 2), rat(3), rat(-2)]).unwrap();
        assert!(netflow(&g, &flow).iter().all(Zero::is_zero));
    }

    /// Random connected multigraph: a random tree plus extra edges.
    pub(crate) fn connected_digraph() -> impl Strategy<Value = Digraph> {
        (2usize..=6).prop_flat_map(|n| {
            let tree = proptest::collection::vec((any::<prop::sample::Index>(), any::<bool>()), n - 1);
            let extra = proptest::collection::vec((0..n, 0..n), 0..=5);
            (Just(n), tree, extra).prop_map(|(n, tree, extra)| {
                let mut edges = Vec::new();
                for (k, (ix, flip)) in tree.into_iter().enumerate() {
                    let v = k + 1;
                    let u = ix.index(v);
                    edges.push(if flip { (v, u) } else { (u, v) });
                }
                edges.extend(extra.into_iter().filter(|(a, b)| a != b));
                Digraph::new(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn tree_count_matches_kirchhoff(g in connected_digraph()) {
            let trees = spanning_trees(&g).unwrap();
            prop_assert_eq!(BigInt::from(trees.len()), kirchhoff_tree_count(&g));
            let mut sorted = trees.clone();
            sorted.sort();
            sorted.dedup();
            prop_assert_eq!(sorted, trees);
        }

        #[test]
        fn matrices_agree_with_incidence(g in connected_digraph(), pick in any::<prop::sample::Index>()) {
            let trees = spanning_trees(&g).unwrap();
            let t = &trees[pick.index(trees.len())];
            let a = graphic_matrix(&g, t).unwrap();
            let b = cographic_matrix(&g, t).unwrap();
            // A expresses incidence columns in the tree basis
            let inc = incidence_matrix(&g);
            let tree_cols = inc.select_columns(t.edge_indices());
            prop_assert_eq!(&tree_cols.mul(&a).unwrap(), &inc);
            // K = -M^T
            let cotree = t.complement(g.n_edges());
            for (r, &e) in cotree.iter().enumerate() {
                for (c, &d) in t.edge_indices().iter().enumerate() {
                    prop_assert_eq!(b.get(r, d), &-a.get(c, e));
                }
            }
            // rows of B are circulations
            for r in 0..b.rows() {
                prop_assert!(inc.mul_vec(b.row(r)).unwrap().iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn flow_extension_is_feasible(g in connected_digraph(), vals in proptest::collection::vec(-5i64..=5, 12)) {
            let t = &spanning_trees(&g).unwrap()[0];
            let k = g.n_edges() + 1 - g.n_vertices();
            let f: Vec<Rational> = vals.iter().take(k).map(|&v| rat(v)).collect();
            prop_assume!(f.len() == k);
            let flow = extend_flow(&g, t, &f).unwrap();
            prop_assert!(netflow(&g, &flow).iter().all(Zero::is_zero));
        }
    }
}
