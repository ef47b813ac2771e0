//! Scalar profiles: once- or twice-differentiable real functions on an
//! interval, queryable for value and first two derivatives. These carry the
//! warping functions that define every metric in the crate.

use std::sync::Arc;

use thiserror::Error;

use crate::numeric::hermite;

/// Value and first two derivatives of a scalar function at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
}

#[derive(Debug, Error)]
pub enum ProfileError {
    #[error("point {0} outside profile domain [{1}, {2}]")]
    OutOfDomain(f64, f64, f64),
    #[error("requested derivative order {requested} exceeds smoothness order {available}")]
    Capability { requested: u32, available: u32 },
    #[error("profile value {0} is not positive at t = {1}")]
    Pole(f64, f64),
}

type EvalFn = dyn Fn(f64) -> Jet2 + Send + Sync;

/// A scalar function on a closed interval with evaluable value, first and
/// second derivative. `smoothness_order` records how many derivatives are
/// trustworthy (analytic constructors set it high; sampled profiles set 2).
#[derive(Clone)]
pub struct ScalarProfile {
    eval: Arc<EvalFn>,
    domain: (f64, f64),
    smoothness_order: u32,
    positive_interior: bool,
}

impl ScalarProfile {
    pub fn from_fn<F>(f: F, domain: (f64, f64), smoothness_order: u32) -> Self
    where
        F: Fn(f64) -> Jet2 + Send + Sync + 'static,
    {
        ScalarProfile {
            eval: Arc::new(f),
            domain,
            smoothness_order,
            positive_interior: false,
        }
    }

    pub fn flagged_positive(mut self) -> Self {
        self.positive_interior = true;
        self
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn smoothness_order(&self) -> u32 {
        self.smoothness_order
    }

    pub fn contains(&self, t: f64) -> bool {
        let eps = 1e-12 * (1.0 + self.domain.1.abs().max(self.domain.0.abs()));
        t >= self.domain.0 - eps && t <= self.domain.1 + eps
    }

    /// Evaluate value and derivatives. Errors outside the domain.
    pub fn jet(&self, t: f64) -> Result<Jet2, ProfileError> {
        if !self.contains(t) {
            return Err(ProfileError::OutOfDomain(t, self.domain.0, self.domain.1));
        }
        Ok((self.eval)(t))
    }

    /// Evaluate, additionally requiring a strictly positive value.
    pub fn jet_positive(&self, t: f64) -> Result<Jet2, ProfileError> {
        let j = self.jet(t)?;
        if j.v <= 0.0 {
            return Err(ProfileError::Pole(j.v, t));
        }
        Ok(j)
    }

    pub fn value(&self, t: f64) -> Result<f64, ProfileError> {
        Ok(self.jet(t)?.v)
    }

    /// `f(t) = sin t` on `[0, hi]`.
    pub fn sin(hi: f64) -> Self {
        ScalarProfile::from_fn(
            |t| Jet2 {
                v: t.sin(),
                d1: t.cos(),
                d2: -t.sin(),
            },
            (0.0, hi),
            16,
        )
    }

    /// Constant profile.
    pub fn constant(c: f64, domain: (f64, f64)) -> Self {
        ScalarProfile::from_fn(
            move |_| Jet2 {
                v: c,
                d1: 0.0,
                d2: 0.0,
            },
            domain,
            16,
        )
    }

    /// `h(t) = cosh(t / n) / n` on `[0, hi]`.
    pub fn cosh_over(n: f64, hi: f64) -> Self {
        ScalarProfile::from_fn(
            move |t| Jet2 {
                v: (t / n).cosh() / n,
                d1: (t / n).sinh() / (n * n),
                d2: (t / n).cosh() / (n * n * n),
            },
            (0.0, hi),
            16,
        )
    }

    /// Pointwise scaling `c * f`.
    pub fn scaled(&self, c: f64) -> Self {
        let inner = self.eval.clone();
        ScalarProfile {
            eval: Arc::new(move |t| {
                let j = inner(t);
                Jet2 {
                    v: c * j.v,
                    d1: c * j.d1,
                    d2: c * j.d2,
                }
            }),
            domain: self.domain,
            smoothness_order: self.smoothness_order,
            positive_interior: self.positive_interior && c > 0.0,
        }
    }

    /// Pointwise sum `f + g` on the intersection of domains.
    pub fn sum(&self, other: &ScalarProfile) -> Self {
        let a = self.eval.clone();
        let b = other.eval.clone();
        let domain = (
            self.domain.0.max(other.domain.0),
            self.domain.1.min(other.domain.1),
        );
        ScalarProfile {
            eval: Arc::new(move |t| {
                let (x, y) = (a(t), b(t));
                Jet2 {
                    v: x.v + y.v,
                    d1: x.d1 + y.d1,
                    d2: x.d2 + y.d2,
                }
            }),
            domain,
            smoothness_order: self.smoothness_order.min(other.smoothness_order),
            positive_interior: false,
        }
    }

    /// Build a profile from dense samples `(t_i, f_i, f'_i)` on a uniform
    /// grid, with the second derivative supplied analytically as a closure of
    /// `(t, f, f')`. Between nodes the value interpolates `(f, f')` cubically
    /// and the slope interpolates `(f', f'')` cubically, so value and slope
    /// stay mutually consistent to interpolation order.
    pub fn from_uniform_samples(
        t0: f64,
        dt: f64,
        values: Vec<f64>,
        slopes: Vec<f64>,
        d2: Arc<dyn Fn(f64, f64, f64) -> f64 + Send + Sync>,
    ) -> Self {
        assert_eq!(values.len(), slopes.len());
        assert!(values.len() >= 2);
        let n = values.len();
        let hi = t0 + dt * ((n - 1) as f64);
        let second: Vec<f64> = (0..n)
            .map(|i| d2(t0 + dt * i as f64, values[i], slopes[i]))
            .collect();
        ScalarProfile::from_fn(
            move |t| {
                let mut i = ((t - t0) / dt).floor() as isize;
                i = i.clamp(0, (n - 2) as isize);
                let i = i as usize;
                let (x0, x1) = (t0 + dt * i as f64, t0 + dt * (i + 1) as f64);
                let (v, _) = hermite(
                    x0,
                    values[i],
                    slopes[i],
                    x1,
                    values[i + 1],
                    slopes[i + 1],
                    t,
                );
                let (d1, _) = hermite(
                    x0,
                    slopes[i],
                    second[i],
                    x1,
                    slopes[i + 1],
                    second[i + 1],
                    t,
                );
                Jet2 {
                    v,
                    d1,
                    d2: d2(t, v, d1),
                }
            },
            (t0, hi),
            2,
        )
    }

    /// Cross-check supplied first and second derivatives against central
    /// differences of the value at `n` interior points. Returns the largest
    /// relative defect observed.
    pub fn fd_consistency_defect(&self, n: usize) -> f64 {
        let (a, b) = self.domain;
        let h = (b - a) * 1e-5;
        let mut worst: f64 = 0.0;
        for i in 1..=n {
            let t = a + (b - a) * (i as f64) / ((n + 1) as f64);
            if t - 2.0 * h < a || t + 2.0 * h > b {
                continue;
            }
            let j = (self.eval)(t);
            let vp = |s: f64| (self.eval)(s).v;
            let d1_fd = (-vp(t + 2.0 * h) + 8.0 * vp(t + h) - 8.0 * vp(t - h) + vp(t - 2.0 * h))
                / (12.0 * h);
            let d2_fd = (-vp(t + 2.0 * h) + 16.0 * vp(t + h) - 30.0 * j.v + 16.0 * vp(t - h)
                - vp(t - 2.0 * h))
                / (12.0 * h * h);
            let scale1 = 1.0_f64.max(j.d1.abs());
            let scale2 = 1.0_f64.max(j.d2.abs());
            worst = worst
                .max((d1_fd - j.d1).abs() / scale1)
                .max((d2_fd - j.d2).abs() / scale2);
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sin_profile_jets() {
        let f = ScalarProfile::sin(3.0);
        let j = f.jet(1.0).unwrap();
        assert!((j.v - 1.0_f64.sin()).abs() < 1e-15);
        assert!((j.d1 - 1.0_f64.cos()).abs() < 1e-15);
        assert!((j.d2 + 1.0_f64.sin()).abs() < 1e-15);
        assert!(f.jet(4.0).is_err());
    }

    #[test]
    fn cosh_profile_consistent_with_fd() {
        let h = ScalarProfile::cosh_over(100.0, 2.0);
        assert!(h.fd_consistency_defect(13) < 1e-5);
    }

    #[test]
    fn sampled_profile_tracks_sin() {
        // Sample sin on a fine grid and compare the interpolant against the
        // closed form away from the nodes.
        let n = 2048usize;
        let dt = 1.5 / ((n - 1) as f64);
        let values: Vec<f64> = (0..n).map(|i| (dt * i as f64).sin()).collect();
        let slopes: Vec<f64> = (0..n).map(|i| (dt * i as f64).cos()).collect();
        let p =
            ScalarProfile::from_uniform_samples(0.0, dt, values, slopes, Arc::new(|_, v, _| -v));
        for &t in &[0.1234, 0.5, 1.0001, 1.4321] {
            let j = p.jet(t).unwrap();
            assert!((j.v - t.sin()).abs() < 1e-11);
            assert!((j.d1 - t.cos()).abs() < 1e-9);
        }
    }
}
