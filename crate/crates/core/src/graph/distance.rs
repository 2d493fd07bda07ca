use std::collections::VecDeque;

use super::Graph;
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::Gaussian;
use crate::spectral::{jacobi_eigenvalues, DEFAULT_TOL};

fn bfs(g: &Graph, source: usize) -> Result<Vec<u64>> {
    let mut dist = vec![u64::MAX; g.vertex_count()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if dist[v] == u64::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    match dist.iter().position(|&d| d == u64::MAX) {
        Some(to) => Err(Error::Disconnected { from: source, to }),
        None => Ok(dist),
    }
}

/// Shortest-path distance matrix `𝒟(G)`, one BFS per vertex.
pub fn distance_matrix(g: &Graph) -> Result<ExactMatrix> {
    let n = g.vertex_count();
    let mut data = Vec::with_capacity(n * n);
    for s in 0..n {
        data.extend(bfs(g, s)?.into_iter().map(|d| Gaussian::real(d as i64)));
    }
    ExactMatrix::from_vec(n, n, data)
}

/// Row sums of `𝒟(G)`.
pub fn transmissions(g: &Graph) -> Result<Vec<u64>> {
    (0..g.vertex_count())
        .map(|s| Ok(bfs(g, s)?.iter().sum()))
        .collect()
}

pub fn is_transmission_regular(g: &Graph) -> Result<bool> {
    let t = transmissions(g)?;
    Ok(t.iter().all(|&x| x == t[0]))
}

/// `W(G)`: distances summed over unordered pairs.
pub fn wiener_index(g: &Graph) -> Result<u64> {
    Ok(transmissions(g)?.iter().sum::<u64>() / 2)
}

/// Largest eigenvalue of `𝒟(G)`.
pub fn distance_spectral_radius(g: &Graph) -> Result<f64> {
    Ok(jacobi_eigenvalues(&distance_matrix(g)?, DEFAULT_TOL)?.max())
}
