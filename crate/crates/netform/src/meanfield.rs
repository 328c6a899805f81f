//! Mean-field quantities of the occupation dynamics.
//!
//! For a symmetric point `x` on the simplex (ordered masses summing to one):
//!
//! ```text
//! H(x)   = sum over ordered ij with x_ij > 0 of  a_ij p_ij x_ij^2 / (x_i x_j)
//! y_ij   = a_ij p_ij x_ij / (x_i x_j)                (edge efficiency)
//! N_i(x) = sum_k (x_ik / x_i) y_ik                   (vertex efficiency)
//! p(x)   = sum_{i,j,k} (x_ij x_ik / x_i) (y_ij - y_ik)^2
//! F(x)_ij = x_ij (y_ij - H(x)),  F_ij = 0 where x_ij = 0
//! G(x)_ij = y_ij (y_ij - N_i - N_j + H(x))           (support edges only)
//! ```
//!
//! `H` is a Lyapunov function for `dx/dt = F(x)`: its derivative along the
//! flow is the dissipation `p(x) >= 0`, which also equals
//! `2 sum_ij x_ij (y_ij - N_i)^2`; both routes are computed and compared.
//!
//! Public maps are keyed by unordered edge; the factor-two double counting
//! of ordered sums is applied internally. Quantities dividing by `x_i` or
//! `x_ij` exist only on positive support, and callers get explicit undefined
//! sets or a `BoundaryPoint` error instead of NaNs, since `F` and `H` are
//! discontinuous where a vertex's positively weighted occupation vanishes.

use crate::error::{Error, Result};
use crate::model::WeightedGame;
use crate::scalar::Real;
use crate::simplex::SimplexPoint;

/// Evaluation on raw coordinate slices, shared by the public operations, the
/// ODE integrator, and finite-difference probes (which may pass slightly
/// off-simplex coordinates: terms enter `H` only where the mass is strictly
/// positive, and `F_ij = 0` only where the mass is exactly zero).
pub mod raw {
    use super::*;

    /// Expected payoff `H`.
    pub fn expected_payoff<T: Real>(game: &WeightedGame<T>, xe: &[T], xv: &[T]) -> T {
        let two = T::of(2.0);
        let mut h = T::zero();
        for idx in 0..game.edge_count() {
            let m = xe[idx];
            let ap = game.ap(idx);
            if m > T::zero() && ap > T::zero() {
                let e = game.edge(idx);
                h += two * ap * m * m / (xv[e.i() as usize] * xv[e.j() as usize]);
            }
        }
        h
    }

    /// Edge efficiency `y_ij` for one edge with nonzero mass.
    pub fn edge_efficiency<T: Real>(game: &WeightedGame<T>, xe: &[T], xv: &[T], idx: usize) -> T {
        let e = game.edge(idx);
        game.ap(idx) * xe[idx] / (xv[e.i() as usize] * xv[e.j() as usize])
    }

    /// The ODE field per unordered edge.
    pub fn field<T: Real>(game: &WeightedGame<T>, xe: &[T], xv: &[T]) -> Vec<T> {
        let h = expected_payoff(game, xe, xv);
        (0..game.edge_count())
            .map(|idx| {
                let m = xe[idx];
                if m == T::zero() {
                    T::zero()
                } else {
                    m * (edge_efficiency(game, xe, xv, idx) - h)
                }
            })
            .collect()
    }

    /// Vertex efficiency `N_v`, assuming `xv[v] > 0`.
    pub fn vertex_efficiency<T: Real>(game: &WeightedGame<T>, xe: &[T], xv: &[T], v: u32) -> T {
        let mut n = T::zero();
        for &(_, idx) in game.neighbors(v) {
            if xe[idx] > T::zero() {
                n += xe[idx] / xv[v as usize] * edge_efficiency(game, xe, xv, idx);
            }
        }
        n
    }

    /// Dissipation by both routes: the pairwise-difference form and
    /// `2 sum_ij x_ij (y_ij - N_i)^2`. They agree analytically; both values
    /// are returned so callers can assert the identity numerically.
    pub fn dissipation_pair<T: Real>(game: &WeightedGame<T>, xe: &[T], xv: &[T]) -> (T, T) {
        let two = T::of(2.0);
        let mut by_pairs = T::zero();
        let mut by_vertex = T::zero();
        for v in 0..game.vertex_count() {
            if xv[v as usize] <= T::zero() {
                continue;
            }
            let nbrs = game.neighbors(v);
            let n_v = vertex_efficiency(game, xe, xv, v);
            for (a, &(_, ei)) in nbrs.iter().enumerate() {
                if xe[ei] <= T::zero() {
                    continue;
                }
                let yi = edge_efficiency(game, xe, xv, ei);
                let d = yi - n_v;
                by_vertex += two * xe[ei] * d * d;
                for &(_, ej) in &nbrs[a + 1..] {
                    if xe[ej] <= T::zero() {
                        continue;
                    }
                    let yj = edge_efficiency(game, xe, xv, ej);
                    let diff = yi - yj;
                    // Ordered neighbor pairs (j,k) and (k,j) both count.
                    by_pairs += two * xe[ei] * xe[ej] / xv[v as usize] * diff * diff;
                }
            }
        }
        (by_pairs, by_vertex)
    }
}

/// Edge and vertex efficiencies, defined on positive support only.
#[derive(Clone, Debug, PartialEq)]
pub struct Efficiencies<T> {
    /// `y_ij` per edge; `None` off the support.
    pub edge: Vec<Option<T>>,
    /// `N_i` per vertex; `None` where `x_i = 0`.
    pub vertex: Vec<Option<T>>,
    /// Vertices with `x_i = 0`, for which `N_i` is undefined.
    pub undefined_vertices: Vec<u32>,
}

/// Everything the mean-field evaluation produces at an interior point.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldValues<T> {
    pub h: T,
    /// `y_ij` on the support, per edge.
    pub y: Vec<Option<T>>,
    /// `N_i` per vertex.
    pub n: Vec<Option<T>>,
    pub p: T,
    /// `F_ij` per unordered edge (`F_ij = F_ji`).
    pub f: Vec<T>,
    /// `G_ij` on the support, per edge.
    pub g: Vec<Option<T>>,
}

/// Expected payoff `H(x)`; defined on all of the simplex.
pub fn expected_payoff<T: Real>(game: &WeightedGame<T>, x: &SimplexPoint<T>) -> T {
    raw::expected_payoff(game, x.edge_mass(), x.vertex_mass())
}

/// Edge efficiencies `y` and vertex efficiencies `N`. Off-support entries
/// are `None`; vertices with zero mass are listed in `undefined_vertices`.
pub fn efficiencies<T: Real>(game: &WeightedGame<T>, x: &SimplexPoint<T>) -> Efficiencies<T> {
    let (xe, xv) = (x.edge_mass(), x.vertex_mass());
    let edge = (0..game.edge_count())
        .map(|idx| (xe[idx] > T::zero()).then(|| raw::edge_efficiency(game, xe, xv, idx)))
        .collect();
    let mut undefined = Vec::new();
    let vertex = (0..game.vertex_count())
        .map(|v| {
            if xv[v as usize] > T::zero() {
                Some(raw::vertex_efficiency(game, xe, xv, v))
            } else {
                undefined.push(v);
                None
            }
        })
        .collect();
    Efficiencies {
        edge,
        vertex,
        undefined_vertices: undefined,
    }
}

/// Dissipation `p(x)`, the derivative of `H` along the flow. Errors with
/// `BoundaryPoint` where the formulas are stated only off the boundary.
pub fn dissipation<T: Real>(game: &WeightedGame<T>, x: &SimplexPoint<T>) -> Result<T> {
    let (a, b) = dissipation_pair(game, x)?;
    debug_assert!(
        (a - b).abs() <= T::of(1e-10) * (T::one() + a.abs()),
        "dissipation routes disagree: {a:?} vs {b:?}"
    );
    Ok(a)
}

/// Both dissipation routes (pairwise form, vertex-efficiency form).
pub fn dissipation_pair<T: Real>(game: &WeightedGame<T>, x: &SimplexPoint<T>) -> Result<(T, T)> {
    if let Some(v) = x.boundary_vertex(game) {
        return Err(Error::BoundaryPoint(v));
    }
    Ok(raw::dissipation_pair(game, x.edge_mass(), x.vertex_mass()))
}

/// The ODE vector field per unordered edge; defined on all of the simplex.
pub fn vector_field<T: Real>(game: &WeightedGame<T>, x: &SimplexPoint<T>) -> Vec<T> {
    raw::field(game, x.edge_mass(), x.vertex_mass())
}

/// Ordered L1 norm of the field, `sum over ordered ij of |F_ij|`.
pub fn field_l1<T: Real>(game: &WeightedGame<T>, x: &SimplexPoint<T>) -> T {
    let f = vector_field(game, x);
    T::of(2.0) * f.into_iter().map(|v| v.abs()).sum()
}

/// The efficiency field `G` on support edges.
pub fn efficiency_field<T: Real>(
    game: &WeightedGame<T>,
    x: &SimplexPoint<T>,
) -> Result<Vec<Option<T>>> {
    if let Some(v) = x.boundary_vertex(game) {
        return Err(Error::BoundaryPoint(v));
    }
    let (xe, xv) = (x.edge_mass(), x.vertex_mass());
    let h = raw::expected_payoff(game, xe, xv);
    Ok((0..game.edge_count())
        .map(|idx| {
            (xe[idx] > T::zero()).then(|| {
                let e = game.edge(idx);
                let y = raw::edge_efficiency(game, xe, xv, idx);
                let ni = raw::vertex_efficiency(game, xe, xv, e.i());
                let nj = raw::vertex_efficiency(game, xe, xv, e.j());
                y * (y - ni - nj + h)
            })
        })
        .collect())
}

/// Evaluate every mean-field quantity at an interior point.
pub fn evaluate<T: Real>(game: &WeightedGame<T>, x: &SimplexPoint<T>) -> Result<FieldValues<T>> {
    if let Some(v) = x.boundary_vertex(game) {
        return Err(Error::BoundaryPoint(v));
    }
    let eff = efficiencies(game, x);
    let h = expected_payoff(game, x);
    let (p, _) = dissipation_pair(game, x)?;
    let f = vector_field(game, x);
    let g = efficiency_field(game, x)?;
    Ok(FieldValues {
        h,
        y: eff.edge,
        n: eff.vertex,
        p,
        f,
        g,
    })
}
