//! Random and exhaustive graph generators.

use std::collections::BTreeSet;

use rand::Rng;

use super::Graph;
use crate::error::{Error, Result};

/// Uniform random labelled tree on `n` vertices (decoded from a random
/// Prüfer sequence).
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Graph> {
    if n <= 2 {
        return Graph::path(n);
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let leaf = leaves
            .pop_first()
            .expect("a Prüfer sequence always leaves a leaf");
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.insert(c);
        }
    }
    let last: Vec<usize> = leaves.into_iter().collect();
    edges.push((last[0], last[1]));
    Graph::new(n, edges)
}

/// Random connected graph: a random spanning tree plus each remaining pair
/// independently with probability `extra_edge_prob`.
pub fn random_connected<R: Rng + ?Sized>(
    n: usize,
    extra_edge_prob: f64,
    rng: &mut R,
) -> Result<Graph> {
    if !(0.0..=1.0).contains(&extra_edge_prob) {
        return Err(Error::InvalidArgument(format!(
            "edge probability {extra_edge_prob} outside [0, 1]"
        )));
    }
    let tree = random_tree(n, rng)?;
    let mut edges: Vec<_> = tree.edges().collect();
    for u in 0..n {
        for v in u + 1..n {
            if !tree.has_edge(u, v) && rng.random_bool(extra_edge_prob) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..=p.len() {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out
}

/// Connected graphs on exactly `n` vertices, one per isomorphism class.
///
/// Brute force over all edge subsets and vertex permutations, so only
/// practical for `n ≤ 6`.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > 6 {
        return Err(Error::InvalidArgument(format!(
            "enumeration supports 1..=6 vertices, got {n}"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let index = |u: usize, v: usize| {
        pairs
            .iter()
            .position(|&p| p == (u.min(v), u.max(v)))
            .unwrap()
    };
    let perms = permutations(n);
    let relabel: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| pairs.iter().map(|&(u, v)| index(p[u], p[v])).collect())
        .collect();

    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let canonical = relabel
            .iter()
            .map(|map| {
                map.iter()
                    .enumerate()
                    .filter(|&(bit, _)| mask >> bit & 1 == 1)
                    .fold(0u32, |acc, (_, &to)| acc | 1 << to)
            })
            .min()
            .unwrap();
        if canonical != mask {
            continue;
        }
        let g = Graph::new(
            n,
            pairs
                .iter()
                .enumerate()
                .filter(|&(bit, _)| mask >> bit & 1 == 1)
                .map(|(_, &e)| e),
        )?;
        if g.is_connected() {
            out.push(g);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn trees_are_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..12 {
            for _ in 0..20 {
                let t = random_tree(n, &mut rng).unwrap();
                assert_eq!(t.edge_count(), n - 1);
                assert!(t.is_connected());
            }
        }
    }

    #[test]
    fn random_connected_is_connected() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..8 {
            let g = random_connected(n, 0.4, &mut rng).unwrap();
            assert!(g.is_connected());
        }
        assert_eq!(random_connected(5, 1.0, &mut rng).unwrap().edge_count(), 10);
        assert!(random_connected(3, 1.5, &mut rng).is_err());
    }

    #[test]
    fn connected_graph_counts() {
        let counts: Vec<usize> = (1..=5)
            .map(|n| connected_graphs(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21]);
        assert!(connected_graphs(0).is_err());
    }
}
