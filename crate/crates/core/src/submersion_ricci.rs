//! Ricci tensor of doubly warped Riemannian submersion metrics
//! `dt^2 + h^2(t) (horizontal) + f^2(t) (vertical)` over the generalized
//! Hopf fibrations, with all base/fiber/total-space Ricci tensors replaced
//! by their Einstein constants, plus the special 3-sphere case in its
//! left-invariant frame and the boundary convexity test.

use serde::Serialize;
use thiserror::Error;

use crate::chart_calculus::MetricChart;
use crate::profile::{ProfileError, ScalarProfile};

#[derive(Debug, Error)]
pub enum FibrationError {
    #[error("octonionic projective spaces only exist for n <= 2, got n = {0}")]
    InvalidFibration(usize),
    #[error("projective index must be at least 1, got {0}")]
    BadIndex(usize),
    #[error(transparent)]
    Profile(#[from] ProfileError),
}

/// Ground algebra of a projective space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Algebra {
    R,
    C,
    H,
    O,
}

impl Algebra {
    pub fn real_dim(self) -> usize {
        match self {
            Algebra::R => 1,
            Algebra::C => 2,
            Algebra::H => 4,
            Algebra::O => 8,
        }
    }

    pub fn parse(s: &str) -> Option<Algebra> {
        match s {
            "R" | "r" => Some(Algebra::R),
            "C" | "c" => Some(Algebra::C),
            "H" | "h" => Some(Algebra::H),
            "O" | "o" => Some(Algebra::O),
            _ => None,
        }
    }
}

/// Dimensions and Einstein constants of the Hopf fibration
/// `S^{dn-1} -> P^{n-1}` with fiber `S^{d-1}`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FibrationData {
    pub algebra: Algebra,
    pub n: usize,
    pub d: usize,
    pub dim_total: usize,
    pub dim_base: usize,
    pub dim_fiber: usize,
    pub ric_total: f64,
    pub ric_base: f64,
    pub ric_fiber: f64,
    /// `d = 1` collapses the fiber to S^0; the metric degenerates to a plain
    /// warped product and the fiber Einstein constant is meaningless.
    pub degenerate_fiber: bool,
}

/// Hopf fibration data for the projective space `P^n` over the given
/// algebra, i.e. the sphere `S^{dn-1}` fibered over `P^{n-1}`.
pub fn hopf_data(algebra: Algebra, n: usize) -> Result<FibrationData, FibrationError> {
    if n < 1 {
        return Err(FibrationError::BadIndex(n));
    }
    if algebra == Algebra::O && n > 2 {
        return Err(FibrationError::InvalidFibration(n));
    }
    let d = algebra.real_dim();
    let dn = d * n;
    Ok(FibrationData {
        algebra,
        n,
        d,
        dim_total: dn - 1,
        dim_base: d * (n - 1),
        dim_fiber: d - 1,
        ric_total: (dn - 2) as f64,
        ric_base: ((n as f64) - 2.0) * d as f64 + 4.0 * (d as f64 - 1.0),
        ric_fiber: d as f64 - 2.0,
        degenerate_fiber: d == 1,
    })
}

/// Ricci components of the doubly warped metric in the orthonormal frame
/// `(d_t, X_i horizontal, V_j vertical)`. The fiber entry is absent in the
/// degenerate `d = 1` case.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RicciComponents {
    pub tt: f64,
    pub xx: f64,
    pub vv: Option<f64>,
    pub xv: f64,
    pub xt: f64,
    pub vt: f64,
    pub dim_base: usize,
    pub dim_fiber: usize,
}

impl RicciComponents {
    pub fn diagonal_min(&self) -> f64 {
        self.tt.min(self.xx).min(self.vv.unwrap_or(f64::INFINITY))
    }
}

/// The doubly warped submersion Ricci tensor with Einstein constants:
/// with `m = dim_base`, `n = dim_fiber`,
///
/// ```text
/// Ric(T,T) = -m h''/h - n f''/f
/// Ric(X,X) = ric_base (h^2 - f^2)/h^4 - h''/h - (m-1)(h'/h)^2
///            - n f'h'/(fh) + ric_total f^2/h^4
/// Ric(V,V) = (ric_fiber - (n-1) f'^2)/f^2 - f''/f - m f'h'/(fh)
///            + (ric_total - ric_fiber) f^2/h^4
/// ```
///
/// and all off-diagonals vanish (the Hopf total space is Einstein). For
/// `d = 1` the fiber terms are dropped and the metric is a plain warped
/// product over the base.
pub fn doubly_warped_ricci(
    fib: &FibrationData,
    f: &ScalarProfile,
    h: &ScalarProfile,
    t: f64,
) -> Result<RicciComponents, FibrationError> {
    let hj = h.jet_positive(t)?;
    let m = fib.dim_base as f64;
    let (hh, hp, hpp) = (hj.v, hj.d1, hj.d2);

    if fib.degenerate_fiber {
        let tt = -m * hpp / hh;
        let xx = fib.ric_base / (hh * hh) - hpp / hh - (m - 1.0) * (hp / hh) * (hp / hh);
        return Ok(RicciComponents {
            tt,
            xx,
            vv: None,
            xv: 0.0,
            xt: 0.0,
            vt: 0.0,
            dim_base: fib.dim_base,
            dim_fiber: 0,
        });
    }

    let fj = f.jet_positive(t)?;
    let n = fib.dim_fiber as f64;
    let (ff, fp, fpp) = (fj.v, fj.d1, fj.d2);
    let ratio = ff * ff / (hh * hh * hh * hh);

    let tt = -m * hpp / hh - n * fpp / ff;
    let xx = fib.ric_base * (hh * hh - ff * ff) / (hh * hh * hh * hh)
        - hpp / hh
        - (m - 1.0) * (hp / hh) * (hp / hh)
        - n * fp * hp / (ff * hh)
        + fib.ric_total * ratio;
    let vv = (fib.ric_fiber - (n - 1.0) * fp * fp) / (ff * ff) - fpp / ff - m * fp * hp / (ff * hh)
        + (fib.ric_total - fib.ric_fiber) * ratio;

    Ok(RicciComponents {
        tt,
        xx,
        vv: Some(vv),
        xv: 0.0,
        xt: 0.0,
        vt: 0.0,
        dim_base: fib.dim_base,
        dim_fiber: fib.dim_fiber,
    })
}

/// Ricci tensor of `dt^2 + h^2(t)(dx^2 + dy^2) + f^2(t) dz^2` on `I x S^3`
/// in the left-invariant frame, written out directly (the `X, Y` directions
/// are horizontal, `Z` spans the circle fiber):
///
/// ```text
/// Ric(T,T) = -2 h''/h - f''/f
/// Ric(X,X) = 4 (h^2 - f^2)/h^4 - h''/h - (h'/h)^2 - f'h'/(fh) + 2 f^2/h^4
/// Ric(Z,Z) = -f''/f - 2 f'h'/(fh) + 2 f^2/h^4
/// ```
pub fn perelman_s3_ricci(
    f: &ScalarProfile,
    h: &ScalarProfile,
    t: f64,
) -> Result<RicciComponents, FibrationError> {
    let fj = f.jet_positive(t)?;
    let hj = h.jet_positive(t)?;
    let (ff, fp, fpp) = (fj.v, fj.d1, fj.d2);
    let (hh, hp, hpp) = (hj.v, hj.d1, hj.d2);
    let h4 = hh * hh * hh * hh;
    let tt = -2.0 * hpp / hh - fpp / ff;
    let xx =
        4.0 * (hh * hh - ff * ff) / h4 - hpp / hh - (hp / hh) * (hp / hh) - fp * hp / (ff * hh)
            + 2.0 * ff * ff / h4;
    let zz = -fpp / ff - 2.0 * fp * hp / (ff * hh) + 2.0 * ff * ff / h4;
    Ok(RicciComponents {
        tt,
        xx,
        vv: Some(zz),
        xv: 0.0,
        xt: 0.0,
        vt: 0.0,
        dim_base: 2,
        dim_fiber: 1,
    })
}

/// Boundary second fundamental form of the doubly warped metric at `t1`
/// (outward normal `+d_t`): `h'/h` on horizontal directions, `f'/f` on
/// vertical ones. The boundary is convex iff both are positive.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundaryConvexity {
    pub ii_horizontal: f64,
    pub ii_vertical: f64,
    pub convex: bool,
}

pub fn boundary_convexity(
    f: &ScalarProfile,
    h: &ScalarProfile,
    t1: f64,
) -> Result<BoundaryConvexity, FibrationError> {
    let fj = f.jet_positive(t1)?;
    let hj = h.jet_positive(t1)?;
    let ii_h = hj.d1 / hj.v;
    let ii_v = fj.d1 / fj.v;
    Ok(BoundaryConvexity {
        ii_horizontal: ii_h,
        ii_vertical: ii_v,
        convex: ii_h > 0.0 && ii_v > 0.0,
    })
}

/// Coordinate chart of the `d = 2, n = 2` doubly warped Hopf metric on
/// `I x S^3` in Euler angles `(t, theta, phi, psi)`:
///
/// ```text
/// g = dt^2 + (h^2/4)(dth^2 + sin^2 th dphi^2) + (f^2/4)(dpsi + cos th dphi)^2
/// ```
///
/// using left-invariant one-forms normalized so the unit round metric is
/// `sigma_x^2 + sigma_y^2 + sigma_z^2`. Used to hold the closed forms up to
/// the finite-difference oracle.
pub fn hopf_chart_c2(f: &ScalarProfile, h: &ScalarProfile, t_window: (f64, f64)) -> MetricChart {
    let f = f.clone();
    let h = h.clone();
    MetricChart::new(
        4,
        vec![
            t_window,
            (0.3, std::f64::consts::PI - 0.3),
            (0.0, 6.0),
            (0.0, 6.0),
        ],
        move |p: &[f64]| {
            let (t, th) = (p[0], p[1]);
            let fv = f.value(t).unwrap_or(f64::NAN);
            let hv = h.value(t).unwrap_or(f64::NAN);
            let (f2, h2) = (fv * fv / 4.0, hv * hv / 4.0);
            let c = th.cos();
            let mut g = nalgebra::DMatrix::zeros(4, 4);
            g[(0, 0)] = 1.0;
            g[(1, 1)] = h2;
            g[(2, 2)] = h2 * th.sin() * th.sin() + f2 * c * c;
            g[(3, 3)] = f2;
            g[(2, 3)] = f2 * c;
            g[(3, 2)] = f2 * c;
            g
        },
    )
}

/// Orthonormal frame vectors of [`hopf_chart_c2`]: `(T, X1, X2, V)` as
/// coordinate coefficient vectors. The metric components are independent of
/// `phi` and `psi`, and these vectors stay orthonormal at every point.
pub fn hopf_frame_c2(f: &ScalarProfile, h: &ScalarProfile, t: f64, theta: f64) -> [[f64; 4]; 4] {
    let fv = f.value(t).unwrap();
    let hv = h.value(t).unwrap();
    let s = theta.sin();
    let c = theta.cos();
    [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 2.0 / hv, 0.0, 0.0],
        [0.0, 0.0, -2.0 / (hv * s), 2.0 * c / (hv * s)],
        [0.0, 0.0, 0.0, 2.0 / fv],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart_calculus::{ricci_contract, riemann_ricci_fd};
    use crate::numeric::linspace;
    use crate::profile::Jet2;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn hopf_tables() {
        let c2 = hopf_data(Algebra::C, 2).unwrap();
        assert_eq!(
            (c2.d, c2.dim_total, c2.dim_base, c2.dim_fiber),
            (2, 3, 2, 1)
        );
        assert_eq!(c2.ric_total, 2.0);
        assert_eq!(c2.ric_base, 4.0);
        assert_eq!(c2.ric_fiber, 0.0);

        let o2 = hopf_data(Algebra::O, 2).unwrap();
        assert_eq!(o2.dim_total, 15);
        assert_eq!(o2.ric_base, 28.0);
        assert_eq!(o2.ric_fiber, 6.0);
        assert_eq!(o2.dim_total, o2.dim_base + o2.dim_fiber);

        let r = hopf_data(Algebra::R, 5).unwrap();
        assert_eq!(r.dim_fiber, 0);
        assert_eq!(r.ric_fiber, -1.0);
        assert!(r.degenerate_fiber);

        assert!(matches!(
            hopf_data(Algebra::O, 3),
            Err(FibrationError::InvalidFibration(3))
        ));
        assert!(hopf_data(Algebra::C, 0).is_err());
    }

    #[test]
    fn constant_curvature_limit_and_cap_value() {
        // f = sin, h = const: the radial Ricci collapses to dim_fiber.
        let fib = hopf_data(Algebra::C, 2).unwrap();
        let f = ScalarProfile::sin(1.5);
        let h = ScalarProfile::constant(0.2, (0.0, 1.5));
        let r = doubly_warped_ricci(&fib, &f, &h, 0.1).unwrap();
        assert!((r.tt - 1.0).abs() < 1e-13); // d - 1

        // f = h = 1: only the Einstein constant of the total space survives.
        let one = ScalarProfile::constant(1.0, (0.0, 1.0));
        let r = doubly_warped_ricci(&fib, &one, &one, 0.5).unwrap();
        assert!((r.xx - fib.ric_total).abs() < 1e-13);
        assert_eq!((r.xt, r.vt, r.xv), (0.0, 0.0, 0.0));
    }

    #[test]
    fn perelman_constant_pattern() {
        let one = ScalarProfile::constant(1.0, (0.0, 1.0));
        let r = perelman_s3_ricci(&one, &one, 0.5).unwrap();
        assert!(r.tt.abs() < 1e-15);
        assert!((r.xx - 2.0).abs() < 1e-15);
        assert!((r.vv.unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn perelman_finite_at_perelman_choice() {
        let f = ScalarProfile::from_fn(
            |t| Jet2 {
                v: t.sin() * t.cos(),
                d1: (2.0 * t).cos(),
                d2: -2.0 * (2.0 * t).sin(),
            },
            (0.0, 0.7),
            16,
        );
        let h = ScalarProfile::cosh_over(100.0, 0.7);
        let r = perelman_s3_ricci(&f, &h, 0.5).unwrap();
        assert!(r.tt.is_finite() && r.xx.is_finite() && r.vv.unwrap().is_finite());
    }

    /// The (C, 2) specialization of the general formula coincides with the
    /// left-invariant-frame computation.
    #[test]
    fn specialization_identity() {
        let fib = hopf_data(Algebra::C, 2).unwrap();
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..10 {
            let (af, bf, cf) = (
                rng.gen_range(0.4..1.6),
                rng.gen_range(0.2..1.2),
                rng.gen_range(0.0..3.0),
            );
            let (ah, bh, ch) = (
                rng.gen_range(0.4..1.6),
                rng.gen_range(0.2..1.2),
                rng.gen_range(0.0..3.0),
            );
            let f = ScalarProfile::from_fn(
                move |t| Jet2 {
                    v: af + bf * (t + cf).sin() * 0.5,
                    d1: bf * (t + cf).cos() * 0.5,
                    d2: -bf * (t + cf).sin() * 0.5,
                },
                (0.0, 3.0),
                16,
            );
            let h = ScalarProfile::from_fn(
                move |t| Jet2 {
                    v: ah + bh * (t + ch).cos() * 0.5,
                    d1: -bh * (t + ch).sin() * 0.5,
                    d2: -bh * (t + ch).cos() * 0.5,
                },
                (0.0, 3.0),
                16,
            );
            let t = rng.gen_range(0.2..2.8);
            let a = doubly_warped_ricci(&fib, &f, &h, t).unwrap();
            let b = perelman_s3_ricci(&f, &h, t).unwrap();
            assert!((a.tt - b.tt).abs() < 1e-12);
            assert!((a.xx - b.xx).abs() < 1e-12);
            assert!((a.vv.unwrap() - b.vv.unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn boundary_convexity_cases() {
        let f = ScalarProfile::sin(3.0);
        let h = ScalarProfile::from_fn(
            |t| Jet2 {
                v: t.cosh(),
                d1: t.sinh(),
                d2: t.cosh(),
            },
            (0.0, 3.0),
            16,
        );
        assert!(boundary_convexity(&f, &h, 0.8).unwrap().convex);

        let h_const = ScalarProfile::constant(0.1, (0.0, 3.0));
        let b = boundary_convexity(&f, &h_const, 0.8).unwrap();
        assert!(!b.convex && b.ii_horizontal == 0.0);

        let b = boundary_convexity(&f, &h, 2.0).unwrap(); // f' < 0 past pi/2
        assert!(!b.convex && b.ii_vertical < 0.0);
    }

    /// Mean value theorem obstruction for d = 1: any even profile that turns
    /// convex at the boundary must have h'' > 0 somewhere, and there the
    /// radial Ricci of the warped product is negative.
    #[test]
    fn real_projective_obstruction_witness() {
        let fib = hopf_data(Algebra::R, 4).unwrap();
        let h = ScalarProfile::cosh_over(10.0, 1.0);
        let f = ScalarProfile::sin(1.0);
        assert!(h.jet(0.0).unwrap().d1.abs() < 1e-15);
        assert!(h.jet(0.9).unwrap().d1 > 0.0);
        // Find a sample with h'' > 0 (mean value theorem guarantees one).
        let witness = linspace(0.05, 0.9, 64)
            .into_iter()
            .find(|&t| h.jet(t).unwrap().d2 > 0.0)
            .expect("no convexity witness");
        let r = doubly_warped_ricci(&fib, &f, &h, witness).unwrap();
        assert!(r.tt < 0.0);
        assert!(r.vv.is_none());
    }

    /// Hold the closed-form components against the finite-difference oracle
    /// on the 4-dimensional Euler-angle chart.
    #[test]
    fn hopf_chart_matches_oracle() {
        let fib = hopf_data(Algebra::C, 2).unwrap();
        let f = ScalarProfile::from_fn(
            |t| Jet2 {
                v: 0.8 + 0.3 * t.sin(),
                d1: 0.3 * t.cos(),
                d2: -0.3 * t.sin(),
            },
            (0.0, 3.0),
            16,
        );
        let h = ScalarProfile::from_fn(
            |t| Jet2 {
                v: 1.1 + 0.2 * (1.3 * t).cos(),
                d1: -0.26 * (1.3 * t).sin(),
                d2: -0.338 * (1.3 * t).cos(),
            },
            (0.0, 3.0),
            16,
        );
        let chart = hopf_chart_c2(&f, &h, (0.2, 2.8));
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..3 {
            let t = rng.gen_range(0.6..2.4);
            let th = rng.gen_range(0.8..2.2);
            let point = [t, th, rng.gen_range(1.0..5.0), 3.0];
            let c = riemann_ricci_fd(&chart, &point, 2e-3).unwrap();
            let frame = hopf_frame_c2(&f, &h, t, th);
            let want = doubly_warped_ricci(&fib, &f, &h, t).unwrap();
            let got_tt = ricci_contract(&c, &frame[0], &frame[0]);
            let got_x1 = ricci_contract(&c, &frame[1], &frame[1]);
            let got_x2 = ricci_contract(&c, &frame[2], &frame[2]);
            let got_vv = ricci_contract(&c, &frame[3], &frame[3]);
            let tol = |w: f64| 1e-4 * w.abs().max(1e-2);
            assert!(
                (got_tt - want.tt).abs() < tol(want.tt),
                "{got_tt} vs {}",
                want.tt
            );
            assert!(
                (got_x1 - want.xx).abs() < tol(want.xx),
                "{got_x1} vs {}",
                want.xx
            );
            assert!(
                (got_x2 - want.xx).abs() < tol(want.xx),
                "{got_x2} vs {}",
                want.xx
            );
            let vv = want.vv.unwrap();
            assert!((got_vv - vv).abs() < tol(vv), "{got_vv} vs {vv}");
            // Off-diagonals vanish.
            for (i, j) in [(0, 1), (0, 3), (1, 3), (2, 3), (0, 2), (1, 2)] {
                let od = ricci_contract(&c, &frame[i], &frame[j]);
                assert!(
                    od.abs() < 1e-6_f64.max(1e-4 * want.xx.abs()),
                    "off ({i},{j}) = {od}"
                );
            }
        }
    }
}
