//! Occupation measures: points on the simplex of symmetric edge masses.
//!
//! A point stores one mass per unordered edge; the underlying object is the
//! symmetric matrix `x_ij = x_ji`, so "the masses sum to one" means the
//! ordered sum `2 * sum_e x_e = 1`. Vertex masses `x_i = sum_{j ~ i} x_ij`
//! are derived once at construction.
//!
//! A coordinate counts as zero iff it is exactly `0.0`; simulation
//! occupations are strictly positive on every edge, and the ODE integrator's
//! clamping produces exact zeros, so no epsilon semantics are needed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::WeightedGame;
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq)]
pub struct SimplexPoint<T> {
    edge_mass: Vec<T>,
    vertex_mass: Vec<T>,
}

/// Vertex masses implied by unordered edge masses.
pub fn vertex_masses<T: Real>(game: &WeightedGame<T>, edge_mass: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); game.vertex_count() as usize];
    for (idx, e) in game.edges().iter().enumerate() {
        out[e.i() as usize] += edge_mass[idx];
        out[e.j() as usize] += edge_mass[idx];
    }
    out
}

impl<T: Real> SimplexPoint<T> {
    /// Validate nonnegativity and ordered-sum one (within
    /// [`Real::unit_sum_tol`]); masses are taken as given, not renormalized.
    pub fn new(game: &WeightedGame<T>, edge_mass: Vec<T>) -> Result<Self> {
        if edge_mass.len() != game.edge_count() {
            return Err(Error::InvalidPoint(format!(
                "expected {} edge masses, got {}",
                game.edge_count(),
                edge_mass.len()
            )));
        }
        let mut sum = T::zero();
        for (idx, &m) in edge_mass.iter().enumerate() {
            if !m.is_finite() || m < T::zero() {
                let e = game.edge(idx);
                return Err(Error::InvalidPoint(format!(
                    "mass on edge {e} is {m:?}, must be finite and nonnegative"
                )));
            }
            sum += m;
        }
        let ordered = T::of(2.0) * sum;
        if (ordered - T::one()).abs() > T::unit_sum_tol() {
            return Err(Error::InvalidPoint(format!(
                "ordered masses sum to {ordered:?}, expected 1"
            )));
        }
        Ok(Self::new_unchecked(game, edge_mass))
    }

    /// Scale nonnegative weights so the ordered sum is one.
    pub fn normalized(game: &WeightedGame<T>, weights: Vec<T>) -> Result<Self> {
        if weights.len() != game.edge_count() {
            return Err(Error::InvalidPoint(format!(
                "expected {} edge weights, got {}",
                game.edge_count(),
                weights.len()
            )));
        }
        let mut sum = T::zero();
        for &w in &weights {
            if !w.is_finite() || w < T::zero() {
                return Err(Error::InvalidPoint(format!("weight {w:?} invalid")));
            }
            sum += w;
        }
        if sum <= T::zero() {
            return Err(Error::AllWeightsZero);
        }
        let scale = T::of(2.0) * sum;
        let edge_mass = weights.into_iter().map(|w| w / scale).collect();
        Ok(Self::new_unchecked(game, edge_mass))
    }

    /// Equal mass on every edge.
    pub fn uniform(game: &WeightedGame<T>) -> Self {
        let m = T::one() / (T::of(2.0) * T::of(game.edge_count() as f64));
        Self::new_unchecked(game, vec![m; game.edge_count()])
    }

    pub(crate) fn new_unchecked(game: &WeightedGame<T>, edge_mass: Vec<T>) -> Self {
        let vertex_mass = vertex_masses(game, &edge_mass);
        SimplexPoint {
            edge_mass,
            vertex_mass,
        }
    }

    pub fn edge_mass(&self) -> &[T] {
        &self.edge_mass
    }

    pub fn value(&self, edge_index: usize) -> T {
        self.edge_mass[edge_index]
    }

    pub fn vertex_mass(&self) -> &[T] {
        &self.vertex_mass
    }

    /// Ordered-pair total, `2 * sum_e x_e`.
    pub fn ordered_sum(&self) -> T {
        let s: T = self.edge_mass.iter().copied().sum();
        T::of(2.0) * s
    }

    /// Ordered occupation mass on positively weighted edges
    /// (`sum over ordered ij with a_ij p_ij > 0 of x_ij`).
    pub fn live_mass(&self, game: &WeightedGame<T>) -> T {
        let s: T = self
            .edge_mass
            .iter()
            .zip(game.ap_values())
            .filter(|&(_, &ap)| ap > T::zero())
            .map(|(&m, _)| m)
            .sum();
        T::of(2.0) * s
    }

    /// Boundary predicate: some vertex that owns a positively weighted edge
    /// has zero occupation across all of its positively weighted edges.
    /// Returns the first such vertex.
    pub fn boundary_vertex(&self, game: &WeightedGame<T>) -> Option<u32> {
        'vertex: for v in 0..game.vertex_count() {
            let mut has_live_edge = false;
            for &(_, idx) in game.neighbors(v) {
                if game.ap(idx) > T::zero() {
                    has_live_edge = true;
                    if self.edge_mass[idx] > T::zero() {
                        continue 'vertex;
                    }
                }
            }
            if has_live_edge {
                return Some(v);
            }
        }
        None
    }

    pub fn is_boundary(&self, game: &WeightedGame<T>) -> bool {
        self.boundary_vertex(game).is_some()
    }

    /// Edge indices with strictly positive mass.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.edge_mass
            .iter()
            .enumerate()
            .filter(|&(_, &m)| m > T::zero())
            .map(|(idx, _)| idx)
    }

    pub fn to_config(&self, game: &WeightedGame<T>) -> PointConfig {
        PointConfig {
            x: game
                .edges()
                .iter()
                .zip(&self.edge_mass)
                .map(|(e, &m)| PointEntry {
                    i: e.i(),
                    j: e.j(),
                    x: m.to_f64_lossy(),
                })
                .collect(),
        }
    }
}

/// File-facing simplex point: one entry per edge, `x` is the unordered mass
/// (so the entries of a valid point sum to 1/2). Edges omitted from the file
/// get mass zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointConfig {
    pub x: Vec<PointEntry>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointEntry {
    pub i: u32,
    pub j: u32,
    pub x: f64,
}

impl PointConfig {
    /// Build against a game. Accepts an ordered-sum error up to 1e-9 for
    /// hand-written files, then renormalizes exactly.
    pub fn build<T: Real>(&self, game: &WeightedGame<T>) -> Result<SimplexPoint<T>> {
        let mut mass = vec![T::zero(); game.edge_count()];
        for entry in &self.x {
            let idx = game
                .edge_index(entry.i, entry.j)
                .ok_or(Error::UnknownEdge(entry.i, entry.j))?;
            let v = T::of(entry.x);
            if !v.is_finite() || v < T::zero() {
                return Err(Error::InvalidPoint(format!(
                    "mass on edge {}-{} is {}",
                    entry.i, entry.j, entry.x
                )));
            }
            mass[idx] = v;
        }
        let ordered: T = T::of(2.0) * mass.iter().copied().sum();
        if (ordered - T::one()).abs() > T::of(1e-9).max(T::unit_sum_tol()) {
            return Err(Error::InvalidPoint(format!(
                "ordered masses sum to {ordered:?}, expected 1"
            )));
        }
        SimplexPoint::normalized(game, mass)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{EdgeSpec, NatureDistribution};

    fn path3() -> WeightedGame<f64> {
        WeightedGame::build(
            3,
            vec![
                EdgeSpec {
                    i: 0,
                    j: 1,
                    affinity: 1.0,
                    init_weight: 1.0,
                },
                EdgeSpec {
                    i: 1,
                    j: 2,
                    affinity: 2.0,
                    init_weight: 1.0,
                },
            ],
            NatureDistribution::full(3).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn uniform_is_normalized() {
        let g = path3();
        let x = SimplexPoint::uniform(&g);
        assert_eq!(x.ordered_sum(), 1.0);
        assert_eq!(x.vertex_mass(), &[0.25, 0.5, 0.25]);
    }

    #[test]
    fn rejects_negative_and_unnormalized() {
        let g = path3();
        assert!(SimplexPoint::new(&g, vec![0.5, -0.25]).is_err());
        assert!(SimplexPoint::new(&g, vec![0.5, 0.5]).is_err());
        assert!(SimplexPoint::new(&g, vec![0.25, 0.25]).is_ok());
    }

    #[test]
    fn boundary_predicate_uses_positive_weights_only() {
        let g = path3();
        // All mass on edge {1,2}: vertex 0 has a live edge with zero mass.
        let x = SimplexPoint::new(&g, vec![0.0, 0.5]).unwrap();
        assert_eq!(x.boundary_vertex(&g), Some(0));
        let y = SimplexPoint::uniform(&g);
        assert!(!y.is_boundary(&g));
    }

    #[test]
    fn point_config_round_trip() {
        let g = path3();
        let x = SimplexPoint::new(&g, vec![0.125, 0.375]).unwrap();
        let cfg = x.to_config(&g);
        let json = serde_json::to_string(&cfg).unwrap();
        let back: PointConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(cfg, back);
        let y = back.build(&g).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn point_config_rejects_unknown_edge_and_bad_sum() {
        let g = path3();
        let bad_edge = PointConfig {
            x: vec![PointEntry {
                i: 0,
                j: 2,
                x: 0.5,
            }],
        };
        assert!(matches!(
            bad_edge.build::<f64>(&g),
            Err(Error::UnknownEdge(0, 2))
        ));
        let bad_sum = PointConfig {
            x: vec![PointEntry {
                i: 0,
                j: 1,
                x: 0.3,
            }],
        };
        assert!(bad_sum.build::<f64>(&g).is_err());
    }
}
