//! Feasibility search over the neck parameters, in the order the estimates
//! suggest: fix `eps` small enough that the rescaled boundary profile keeps
//! curvature above 1, shrink `delta` until the far boundary conditions and
//! the curvature path hold, then grow `t0` geometrically until the grid
//! Ricci report passes.

use serde::Serialize;

use super::curvature::{boundary_check, ricci_positivity_report, BoundaryCheck, GridReport};
use super::fixture::ProfileG1;
use super::params::{neck_params, NeckParams};
use super::renorm::{eta_profile, path_min, PathReport};
use super::NeckError;

#[derive(Debug, Clone, Serialize)]
pub struct SearchBox {
    pub t0_init: f64,
    pub t0_max: f64,
    pub t0_factor: f64,
    pub eps_init: f64,
    pub delta_init: f64,
    pub delta_min: f64,
    pub coarse_grid: (usize, usize),
    pub final_grid: (usize, usize),
}

impl Default for SearchBox {
    fn default() -> Self {
        SearchBox {
            t0_init: 10.0,
            t0_max: 1e30,
            t0_factor: 2.0,
            eps_init: 0.25,
            delta_init: 0.25,
            delta_min: 1e-3,
            coarse_grid: (128, 48),
            final_grid: (512, 128),
        }
    }
}

#[allow(clippy::large_enum_variant)]
pub enum SearchOutcome {
    Found {
        params: NeckParams,
        report: GridReport,
        boundary: BoundaryCheck,
        path: PathReport,
        eps: f64,
        delta: f64,
        trial_count: usize,
    },
    Infeasible {
        reason: String,
        closest: Option<GridReport>,
        trial_count: usize,
    },
}

/// Search `(eps, delta, t0)` for parameters satisfying every neck condition
/// for the given boundary profile and target radius `rho`, which must lie in
/// the window `(r^{(n-1)/n}, R)`.
pub fn parameter_search(
    g1: &ProfileG1,
    rho: f64,
    search: &SearchBox,
) -> Result<SearchOutcome, NeckError> {
    let window_lo = g1.r.powf((g1.n as f64 - 1.0) / g1.n as f64);
    if !(rho > window_lo && rho < g1.big_r) {
        return Err(NeckError::HypothesisViolation(format!(
            "rho = {rho} outside the window ({window_lo}, {})",
            g1.big_r
        )));
    }
    let prof = eta_profile(g1, rho)?;

    // Fix eps: halve from the cap until the rescaled boundary profile keeps
    // curvature above 1, i.e. (rho/r)^{2 eps} < min K(g1).
    let scale_base = rho / g1.r;
    let mut eps = search.eps_init;
    while scale_base.powf(2.0 * eps) >= g1.k_min {
        eps *= 0.5;
        if eps < 1e-6 {
            return Ok(SearchOutcome::Infeasible {
                reason: format!(
                    "no eps keeps the rescaled boundary curvature above 1 (min K = {})",
                    g1.k_min
                ),
                closest: None,
                trial_count: 0,
            });
        }
    }

    let mut trial_count = 0usize;
    let mut closest: Option<GridReport> = None;
    let mut closest_neg = f64::NEG_INFINITY;
    let mut delta = search.delta_init;
    while delta >= search.delta_min {
        // The perturbed path exponent for this (eps, delta).
        let alpha = prof.alpha_tilde * (1.0 + delta) / (1.0 - eps);
        let path = path_min(&prof, alpha, 128, 96)?;
        if !path.pass {
            delta *= 0.5;
            continue;
        }

        let mut t0 = search.t0_init;
        while t0 <= search.t0_max {
            trial_count += 1;
            let params = match neck_params(&prof, t0, eps, delta) {
                Ok(p) => p,
                Err(NeckError::TooLong(_)) => break,
                Err(e) => return Err(e),
            };
            let boundary = boundary_check(&params)?;
            if boundary.pass {
                let coarse =
                    ricci_positivity_report(&params, search.coarse_grid.0, search.coarse_grid.1)?;
                let worst = coarse
                    .minima
                    .iter()
                    .take(4)
                    .map(|m| m.min)
                    .fold(f64::INFINITY, f64::min);
                if worst > closest_neg {
                    closest_neg = worst;
                    closest = Some(coarse.clone());
                }
                if coarse.pass {
                    let report =
                        ricci_positivity_report(&params, search.final_grid.0, search.final_grid.1)?;
                    if report.pass {
                        return Ok(SearchOutcome::Found {
                            params,
                            report,
                            boundary,
                            path,
                            eps,
                            delta,
                            trial_count,
                        });
                    }
                }
            }
            t0 *= search.t0_factor;
        }
        delta *= 0.5;
    }

    Ok(SearchOutcome::Infeasible {
        reason: "search box exhausted before all conditions passed".into(),
        closest,
        trial_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_window_enforced() {
        let g1 = crate::neck_builder::test_support::standard_g1();
        assert!(matches!(
            parameter_search(g1, 0.15, &SearchBox::default()),
            Err(NeckError::HypothesisViolation(_))
        ));
        assert!(matches!(
            parameter_search(g1, 0.6, &SearchBox::default()),
            Err(NeckError::HypothesisViolation(_))
        ));
    }

    #[test]
    fn exhausted_box_reports_infeasible() {
        let g1 = crate::neck_builder::test_support::standard_g1();
        let tiny = SearchBox {
            t0_max: 12.0,
            delta_min: 0.2,
            coarse_grid: (64, 32),
            ..SearchBox::default()
        };
        match parameter_search(g1, 0.4, &tiny).unwrap() {
            SearchOutcome::Infeasible { reason, .. } => {
                assert!(reason.contains("exhausted"));
            }
            SearchOutcome::Found { params, .. } => {
                panic!("tiny box should not succeed (t0 = {})", params.t0)
            }
        }
    }
}
