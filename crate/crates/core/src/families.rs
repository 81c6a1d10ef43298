//! Instance generators: exhaustive and random Eulerian digraphs, plane
//! bipartite graphs, totally positive matrices, semi-balanced digraphs and
//! random flat matrices.

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactnum::{rank, RationalMatrix};
use crate::graphkit::Digraph;
use crate::planardual::{plane_cycle, plane_grid, plane_theta, PlaneGraph};
use crate::totpos::{flat_maxpos_from_c, tp_from_network, FlatMaxPositive, GridNetwork};

/// Independent stream `index` of the generator seeded by `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Smallest edge multiset over all vertex relabellings.
pub fn canonical_form(g: &Digraph) -> Vec<(usize, usize)> {
    (0..g.n_vertices())
        .permutations(g.n_vertices())
        .map(|p| {
            let mut e: Vec<(usize, usize)> = g.edges().iter().map(|&(u, v)| (p[u], p[v])).collect();
            e.sort_unstable();
            e
        })
        .min()
        .unwrap_or_default()
}

/// Every connected balanced loopless multi-digraph with between 2 and
/// `max_edges` edges and no isolated vertices, one per isomorphism class.
pub fn eulerian_digraphs(max_edges: usize) -> Vec<Digraph> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for m in 2..=max_edges {
        // every vertex has in- and out-degree at least 1
        for n in 2..=m {
            let pairs: Vec<(usize, usize)> = (0..n).cartesian_product(0..n).filter(|(u, v)| u != v).collect();
            let mut chosen = Vec::with_capacity(m);
            let mut excess = vec![0i64; n];
            grow(&pairs, 0, m, &mut chosen, &mut excess, &mut |edges| {
                let Ok(g) = Digraph::new(n, edges.to_vec()) else { return };
                if (0..n).all(|v| g.out_degree(v) > 0) && g.is_connected() && seen.insert((n, canonical_form(&g))) {
                    out.push(g);
                }
            });
        }
    }
    out
}

fn grow(
    pairs: &[(usize, usize)],
    from: usize,
    m: usize,
    chosen: &mut Vec<(usize, usize)>,
    excess: &mut [i64],
    visit: &mut impl FnMut(&[(usize, usize)]),
) {
    let left = (m - chosen.len()) as i64;
    let unbalanced: i64 = excess.iter().filter(|x| **x > 0).sum();
    if unbalanced > left {
        return;
    }
    if left == 0 {
        visit(chosen);
        return;
    }
    for k in from..pairs.len() {
        let (u, v) = pairs[k];
        excess[u] += 1;
        excess[v] -= 1;
        chosen.push((u, v));
        grow(pairs, k, m, chosen, excess, visit);
        chosen.pop();
        excess[u] -= 1;
        excess[v] += 1;
    }
}

/// A connected Eulerian digraph built as a union of random directed cycles,
/// with at most `max_edges` edges.
pub fn random_eulerian_digraph<R: Rng + ?Sized>(rng: &mut R, max_edges: usize) -> Digraph {
    assert!(max_edges >= 2);
    loop {
        let n = rng.gen_range(2..=max_edges.min(6));
        let mut edges = Vec::new();
        loop {
            let len = rng.gen_range(2..=n);
            if edges.len() + len > max_edges {
                break;
            }
            let mut cycle: Vec<usize> = (0..n).collect();
            cycle.shuffle(rng);
            cycle.truncate(len);
            for k in 0..len {
                edges.push((cycle[k], cycle[(k + 1) % len]));
            }
            if rng.gen_bool(0.3) {
                break;
            }
        }
        if let Ok(g) = Digraph::new(n, edges) {
            if g.n_edges() > 0 && (0..n).all(|v| g.out_degree(v) > 0) && g.is_connected() {
                return g;
            }
        }
    }
}

/// Named plane bipartite graphs: even cycles, grids and theta graphs.
pub fn plane_bipartite_corpus() -> Vec<(String, PlaneGraph)> {
    let mut v: Vec<(String, PlaneGraph)> = (4..=10).step_by(2).map(|n| (format!("cycle-{n}"), plane_cycle(n))).collect();
    for (r, c) in [(2, 3), (2, 4), (2, 5), (3, 3)] {
        v.push((format!("grid-{r}x{c}"), plane_grid(r, c)));
    }
    for lengths in [&[2, 2, 2][..], &[2, 2, 4], &[3, 3, 3], &[3, 3, 5], &[2, 2, 2, 2], &[2, 4, 4], &[4, 4, 4]] {
        v.push((format!("theta-{}", lengths.iter().join("-")), plane_theta(lengths)));
    }
    v
}

/// A random network of shape `d x n` and the flat max-positive matrix it
/// yields (the top `d - 1` rows of the network give `C`).
pub fn tp_instance<R: Rng + ?Sized>(rng: &mut R, d: usize, n: usize) -> (GridNetwork, FlatMaxPositive) {
    let net = GridNetwork::random(d, n, rng);
    let c = match net.without_last_row() {
        Some(top) => tp_from_network(&top),
        None => RationalMatrix::zeros(0, n),
    };
    let fmp = flat_maxpos_from_c(&c).expect("network minors are positive");
    debug_assert_eq!(fmp.a, tp_from_network(&net));
    (net, fmp)
}

/// Shape drawn uniformly with `1 <= d <= max_d` and `d < n <= max_n`.
pub fn random_tp_instance<R: Rng + ?Sized>(rng: &mut R, max_d: usize, max_n: usize) -> (GridNetwork, FlatMaxPositive) {
    let d = rng.gen_range(1..=max_d.min(max_n - 1));
    let n = rng.gen_range(d + 1..=max_n);
    tp_instance(rng, d, n)
}

/// A connected digraph whose vertices sit on `levels` levels with every edge
/// rising by exactly one level; the levels are returned with the graph.
/// Two levels give standard orientations of bipartite graphs.
pub fn semibalanced_digraph<R: Rng + ?Sized>(rng: &mut R, n: usize, extra_edges: usize, levels: usize) -> (Digraph, Vec<i64>) {
    assert!(levels >= 2 && n >= levels);
    let mut level: Vec<i64> = (0..n).map(|v| (v % levels) as i64).collect();
    level.shuffle(rng);
    let pairs: Vec<(usize, usize)> =
        (0..n).cartesian_product(0..n).filter(|&(u, v)| level[v] == level[u] + 1).collect();
    loop {
        // random spanning structure first, then extra edges
        let mut edges = Vec::new();
        let mut joined = vec![false; n];
        joined[rng.gen_range(0..n)] = true;
        while joined.iter().any(|j| !j) {
            let &(u, v) = pairs.choose(rng).expect("adjacent levels are populated");
            if joined[u] != joined[v] {
                joined[u] = true;
                joined[v] = true;
                edges.push((u, v));
            }
        }
        for _ in 0..extra_edges {
            edges.push(*pairs.choose(rng).expect("nonempty"));
        }
        let g = Digraph::new(n, edges).expect("valid edges");
        if g.is_connected() {
            return (g, level);
        }
    }
}

/// `d x n` integer matrix of rank `d` whose last row is all ones.
pub fn random_flat_matrix<R: Rng + ?Sized>(rng: &mut R, d: usize, n: usize) -> RationalMatrix {
    loop {
        let mut rows: Vec<Vec<i64>> = (0..d - 1).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        rows.push(vec![1; n]);
        let m = RationalMatrix::from_i64(&rows);
        if rank(&m) == d {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphkit::{kirchhoff_tree_count, level_function};
    use crate::planardual::bipartition;

    #[test]
    fn exhaustive_small_counts() {
        // two vertices: the 2-cycle; three edges: the directed triangle
        let g3 = eulerian_digraphs(3);
        assert_eq!(g3.len(), 2);
        let g4 = eulerian_digraphs(4);
        // + doubled 2-cycle, two 2-cycles sharing a vertex, directed 4-cycle
        assert_eq!(g4.len(), 5);
        for g in eulerian_digraphs(5) {
            assert!(g.is_balanced() && g.is_connected());
        }
    }

    #[test]
    fn exhaustive_matches_unpruned_enumeration() {
        let mut naive = BTreeSet::new();
        for m in 2..=5 {
            for n in 2..=m {
                let pairs: Vec<(usize, usize)> = (0..n).cartesian_product(0..n).filter(|(u, v)| u != v).collect();
                for edges in pairs.iter().copied().combinations_with_replacement(m) {
                    let g = Digraph::new(n, edges).unwrap();
                    if g.is_balanced() && g.is_connected() && (0..n).all(|v| g.out_degree(v) > 0) {
                        naive.insert((n, canonical_form(&g)));
                    }
                }
            }
        }
        let fast: BTreeSet<_> = eulerian_digraphs(5).iter().map(|g| (g.n_vertices(), canonical_form(g))).collect();
        assert_eq!(fast, naive);
    }

    #[test]
    fn random_eulerian_is_valid() {
        let mut rng = trial_rng(7, 0);
        for _ in 0..50 {
            let g = random_eulerian_digraph(&mut rng, 10);
            assert!(g.is_balanced() && g.is_connected() && g.n_edges() <= 10);
        }
    }

    #[test]
    fn corpus_is_bipartite_and_sized() {
        let c = plane_bipartite_corpus();
        assert!(c.len() >= 15);
        for (_, p) in &c {
            assert!(bipartition(p).is_ok());
            assert!(kirchhoff_tree_count(p.digraph()) > 0.into());
        }
    }

    #[test]
    fn semibalanced_has_level_function() {
        let mut rng = trial_rng(1, 2);
        for levels in 2..4 {
            let (g, _) = semibalanced_digraph(&mut rng, 6, 3, levels);
            assert!(level_function(&g).unwrap().is_some());
        }
    }

    #[test]
    fn streams_are_reproducible() {
        let a: Vec<u32> = (0..4).map(|_| trial_rng(5, 3).gen()).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
        assert_ne!(trial_rng(5, 3).gen::<u64>(), trial_rng(5, 4).gen::<u64>());
        let mut rng = trial_rng(0, 0);
        let m = random_flat_matrix(&mut rng, 3, 6);
        assert_eq!(rank(&m), 3);
    }
}
