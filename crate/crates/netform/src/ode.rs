//! Deterministic integration of `dx/dt = F(x)` on the simplex.
//!
//! Fixed-step Euler or classic RK4. The exact flow is tangent to the simplex
//! (ordered masses keep summing to one) and preserves nonnegativity, so the
//! integrator only has to undo discretization error: after every step,
//! negative masses are clamped to zero and the point is renormalized. The
//! pre-renormalization drift is the step-quality gauge; a step size whose
//! drift reaches [`Real::drift_tol`] is rejected outright.
//!
//! The expected payoff is nondecreasing along exact trajectories; the
//! integrator records it at every step so callers can check monotonicity up
//! to the per-step discretization tolerance.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::meanfield::raw;
use crate::model::WeightedGame;
use crate::scalar::Real;
use crate::simplex::{vertex_masses, SimplexPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OdeMethod {
    Euler,
    Rk4,
}

impl std::str::FromStr for OdeMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "euler" => Ok(OdeMethod::Euler),
            "rk4" => Ok(OdeMethod::Rk4),
            other => Err(format!("unknown method `{other}` (expected euler|rk4)")),
        }
    }
}

/// One integrated path, sampled at every accepted step (t = 0 included).
#[derive(Clone, Debug, PartialEq)]
pub struct OdeTrajectory<T> {
    pub times: Vec<T>,
    pub points: Vec<SimplexPoint<T>>,
    /// `H` at each sample.
    pub payoff: Vec<T>,
}

impl<T: Real> OdeTrajectory<T> {
    pub fn final_point(&self) -> &SimplexPoint<T> {
        self.points.last().expect("trajectory holds t = 0")
    }

    /// Largest per-step decrease of `H` (zero if monotone).
    pub fn max_payoff_drop(&self) -> T {
        self.payoff
            .windows(2)
            .map(|w| (w[0] - w[1]).max(T::zero()))
            .fold(T::zero(), T::max)
    }
}

fn derivative<T: Real>(game: &WeightedGame<T>, xe: &[T]) -> Vec<T> {
    let xv = vertex_masses(game, xe);
    raw::field(game, xe, &xv)
}

/// Integrate from `x0` for `duration` with a fixed `step_size`.
pub fn integrate<T: Real>(
    game: &WeightedGame<T>,
    x0: &SimplexPoint<T>,
    duration: T,
    step_size: T,
    method: OdeMethod,
) -> Result<OdeTrajectory<T>> {
    if x0.edge_mass().len() != game.edge_count() {
        return Err(Error::InvalidStart(format!(
            "point has {} coordinates, game has {} edges",
            x0.edge_mass().len(),
            game.edge_count()
        )));
    }
    if !(duration >= T::zero()) || !duration.is_finite() {
        return Err(Error::InvalidStart(format!("duration {duration:?}")));
    }
    if !(step_size > T::zero()) || !step_size.is_finite() {
        return Err(Error::InvalidStart(format!("step size {step_size:?}")));
    }

    let mut xe: Vec<T> = x0.edge_mass().to_vec();
    let mut t = T::zero();
    let mut times = vec![t];
    let mut points = vec![x0.clone()];
    let xv0 = vertex_masses(game, &xe);
    let mut payoff = vec![raw::expected_payoff(game, &xe, &xv0)];

    let two = T::of(2.0);
    let six = T::of(6.0);
    while t < duration {
        let h = step_size.min(duration - t);
        let next: Vec<T> = match method {
            OdeMethod::Euler => {
                let k1 = derivative(game, &xe);
                xe.iter().zip(&k1).map(|(&x, &k)| x + h * k).collect()
            }
            OdeMethod::Rk4 => {
                let k1 = derivative(game, &xe);
                let mid1: Vec<T> = xe
                    .iter()
                    .zip(&k1)
                    .map(|(&x, &k)| x + h / two * k)
                    .collect();
                let k2 = derivative(game, &mid1);
                let mid2: Vec<T> = xe
                    .iter()
                    .zip(&k2)
                    .map(|(&x, &k)| x + h / two * k)
                    .collect();
                let k3 = derivative(game, &mid2);
                let end: Vec<T> = xe.iter().zip(&k3).map(|(&x, &k)| x + h * k).collect();
                let k4 = derivative(game, &end);
                (0..xe.len())
                    .map(|i| xe[i] + h / six * (k1[i] + two * k2[i] + two * k3[i] + k4[i]))
                    .collect()
            }
        };

        // Clamp, measure drift, renormalize to ordered-sum one.
        let mut clamped = next;
        for m in &mut clamped {
            if *m < T::zero() {
                *m = T::zero();
            }
        }
        let ordered: T = two * clamped.iter().copied().sum();
        let drift = (ordered - T::one()).abs();
        if drift >= T::drift_tol() {
            return Err(Error::StepSizeTooLarge {
                drift: drift.to_f64_lossy(),
                limit: T::drift_tol().to_f64_lossy(),
            });
        }
        for m in &mut clamped {
            *m = *m / ordered;
        }

        t = t + h;
        xe = clamped;
        let xv = vertex_masses(game, &xe);
        times.push(t);
        payoff.push(raw::expected_payoff(game, &xe, &xv));
        points.push(SimplexPoint::new_unchecked(game, xe.clone()));
    }

    Ok(OdeTrajectory {
        times,
        points,
        payoff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{EdgeSpec, NatureDistribution};

    fn path3_weights_1_2() -> WeightedGame<f64> {
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
    fn zero_duration_returns_start_only() {
        let g = path3_weights_1_2();
        let x0 = SimplexPoint::uniform(&g);
        let traj = integrate(&g, &x0, 0.0, 1e-3, OdeMethod::Rk4).unwrap();
        assert_eq!(traj.points.len(), 1);
        assert_eq!(traj.points[0], x0);
    }

    #[test]
    fn path_uniform_start_selects_heavier_edge() {
        // Reduced dynamics: the heavier edge absorbs all mass, the lighter
        // one dies out, so x_{12} -> 1/2 (vertex 0 falls out of use).
        let g = path3_weights_1_2();
        let x0 = SimplexPoint::uniform(&g);
        let traj = integrate(&g, &x0, 50.0, 1e-3, OdeMethod::Rk4).unwrap();
        let end = traj.final_point();
        assert!((end.value(1) - 0.5).abs() < 1e-3, "x_12 = {}", end.value(1));
        assert!(end.value(0) < 1e-3);
        assert!(traj.max_payoff_drop() <= 1e-7);
    }

    #[test]
    fn euler_also_converges_on_path() {
        let g = path3_weights_1_2();
        let x0 = SimplexPoint::uniform(&g);
        let traj = integrate(&g, &x0, 50.0, 1e-3, OdeMethod::Euler).unwrap();
        assert!((traj.final_point().value(1) - 0.5).abs() < 1e-2);
    }

    #[test]
    fn oversized_step_is_rejected() {
        let g = path3_weights_1_2();
        let x0 = SimplexPoint::uniform(&g);
        match integrate(&g, &x0, 10.0, 0.9, OdeMethod::Euler) {
            Err(Error::StepSizeTooLarge { .. }) => {}
            other => panic!("expected StepSizeTooLarge, got {other:?}"),
        }
    }

    #[test]
    fn invalid_start_parameters() {
        let g = path3_weights_1_2();
        let x0 = SimplexPoint::uniform(&g);
        assert!(matches!(
            integrate(&g, &x0, -1.0, 1e-3, OdeMethod::Rk4),
            Err(Error::InvalidStart(_))
        ));
        assert!(matches!(
            integrate(&g, &x0, 1.0, 0.0, OdeMethod::Rk4),
            Err(Error::InvalidStart(_))
        ));
    }
}
