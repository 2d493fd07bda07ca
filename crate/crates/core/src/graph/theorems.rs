use serde::Serialize;

use super::{
    distance_matrix, distance_spectral_radius, is_transmission_regular, wiener_index, Graph,
};
use crate::error::{dim_err, Result};
use crate::spectral::{inertia_default, InertiaTriple};

/// `𝒟(G1□G2) = 𝒟(G1)⊘𝒟(G2)`, compared entrywise.
pub fn distance_cartesian_check(g1: &Graph, g2: &Graph) -> Result<bool> {
    let direct = distance_matrix(&g1.cartesian_product(g2))?;
    let formula = distance_matrix(g1)?.cartesian(&distance_matrix(g2)?)?;
    Ok(direct == formula)
}

/// `(n/m)·W(G1) + (m/n)·W(G2)` with `m = |V(G1)|`, `n = |V(G2)|`.
pub fn spectral_radius_lower_bound(g1: &Graph, g2: &Graph) -> Result<f64> {
    let (m, n) = (g1.vertex_count() as f64, g2.vertex_count() as f64);
    Ok(n / m * wiener_index(g1)? as f64 + m / n * wiener_index(g2)? as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralBoundReport {
    pub rho: f64,
    /// `(n/m)W(G1) + (m/n)W(G2)`.
    pub stated_bound: f64,
    /// Average row sum of `𝒟(G1□G2)`: `2(n/m)W(G1) + 2(m/n)W(G2)`.
    pub row_sum_bound: f64,
    pub both_regular: bool,
    pub stated_holds: bool,
    pub row_sum_holds: bool,
    /// `|ρ − row_sum_bound| ≤ 1e-7`.
    pub row_sum_tight: bool,
}

impl SpectralBoundReport {
    /// Both bounds hold, and the row-sum bound is attained when both
    /// factors are transmission regular.
    pub fn consistent(&self) -> bool {
        self.stated_holds && self.row_sum_holds && (!self.both_regular || self.row_sum_tight)
    }
}

pub const BOUND_SLACK: f64 = 1e-9;
pub const EQUALITY_TOL: f64 = 1e-7;

pub fn spectral_radius_bound_check(g1: &Graph, g2: &Graph) -> Result<SpectralBoundReport> {
    let rho = distance_spectral_radius(&g1.cartesian_product(g2))?;
    let stated_bound = spectral_radius_lower_bound(g1, g2)?;
    let row_sum_bound = 2.0 * stated_bound;
    Ok(SpectralBoundReport {
        rho,
        stated_bound,
        row_sum_bound,
        both_regular: is_transmission_regular(g1)? && is_transmission_regular(g2)?,
        stated_holds: rho >= stated_bound - BOUND_SLACK,
        row_sum_holds: rho >= row_sum_bound - BOUND_SLACK,
        row_sum_tight: (rho - row_sum_bound).abs() <= EQUALITY_TOL,
    })
}

/// Inertia of `𝒟(G□H)` and the prediction
/// `(n₊, (m−1)(n−1) + n₀, n₋)` from `𝒟(Gu*Hv)`, with `u`, `v` the last
/// vertices of each graph.
pub fn inertia_product_check(g: &Graph, h: &Graph) -> Result<(InertiaTriple, InertiaTriple)> {
    inertia_product_check_at(g, g.vertex_count() - 1, h, h.vertex_count() - 1)
}

pub fn inertia_product_check_at(
    g: &Graph,
    u: usize,
    h: &Graph,
    v: usize,
) -> Result<(InertiaTriple, InertiaTriple)> {
    let (m, n) = (g.vertex_count(), h.vertex_count());
    let actual = inertia_default(&distance_matrix(&g.cartesian_product(h))?)?;
    let glued = inertia_default(&distance_matrix(&g.identify_vertices(u, h, v)?)?)?;
    let predicted = InertiaTriple::new(
        glued.n_plus,
        (m - 1) * (n - 1) + glued.n_zero,
        glued.n_minus,
    );
    Ok((actual, predicted))
}

/// For `|V(G1)| = |V(G2)|`: `W(G1) ≥ W(G2)` implies `W(H□G1) ≥ W(H□G2)`,
/// with equality exactly when `W(G1) = W(G2)`. Product Wiener indices come
/// from `n²W(H) + m²W(G)` and must agree with the built products.
pub fn wiener_monotonicity_check(h: &Graph, g1: &Graph, g2: &Graph) -> Result<bool> {
    if g1.vertex_count() != g2.vertex_count() {
        return dim_err(format!(
            "compared graphs need equal orders, got {} and {}",
            g1.vertex_count(),
            g2.vertex_count()
        ));
    }
    let (m, n) = (h.vertex_count() as u64, g1.vertex_count() as u64);
    let wh = wiener_index(h)?;
    let (w1, w2) = (wiener_index(g1)?, wiener_index(g2)?);
    let p1 = n * n * wh + m * m * w1;
    let p2 = n * n * wh + m * m * w2;
    if p1 != wiener_index(&h.cartesian_product(g1))?
        || p2 != wiener_index(&h.cartesian_product(g2))?
    {
        return Ok(false);
    }
    let forward = |a: u64, b: u64, pa: u64, pb: u64| a < b || pa >= pb;
    Ok(forward(w1, w2, p1, p2) && forward(w2, w1, p2, p1) && ((p1 == p2) == (w1 == w2)))
}
