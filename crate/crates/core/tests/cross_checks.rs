//! Cross-module integration checks: the closed-form kernels against the
//! finite-difference oracle at higher point counts, the asymptotic envelope
//! report on a real neck, and the renormalization round trip through the
//! shooting fixture.

use std::sync::OnceLock;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use ricci_forge::chart_calculus::{riemann_ricci_fd, sectional_fd};
use ricci_forge::neck_builder::{
    asymptotic_bound_check, eta_profile, fixture_g1, neck_params, neck_warp, ProfileG1,
};
use ricci_forge::warped_forms::{necksectional, random_smooth_warp, warp_chart, warped_sectional};

fn fixture() -> &'static ProfileG1 {
    static G1: OnceLock<ProfileG1> = OnceLock::new();
    G1.get_or_init(|| fixture_g1(4, 0.1, 0.5, 2.0).expect("standard fixture"))
}

/// Fifty interior points per warp, tolerance 1e-5 relative, on a small
/// corpus of randomized warps.
#[test]
fn warp_kernels_match_oracle_densely() {
    let mut rng = StdRng::seed_from_u64(99);
    for _ in 0..2 {
        let w = random_smooth_warp(&mut rng);
        let chart = warp_chart(&w, (0.4, std::f64::consts::PI - 0.4));
        for _ in 0..50 {
            let t = rng.gen_range(0.9..2.6);
            let x = rng.gen_range(-0.8..0.8);
            let th = rng.gen_range(0.8..2.2);
            let c = riemann_ricci_fd(&chart, &[t, x, th, 1.0], 2e-3).unwrap();
            let s = necksectional(&w, t, x).unwrap();
            let (av, bv) = ((w.a)(t, x).v, (w.b)(t, x).v);
            let e_t = [1.0, 0.0, 0.0, 0.0];
            let e_x = [0.0, 1.0 / av, 0.0, 0.0];
            let e_th = [0.0, 0.0, 1.0 / bv, 0.0];
            let e_ph = [0.0, 0.0, 0.0, 1.0 / (bv * th.sin())];
            for (want, got) in [
                (s.k_tx.unwrap(), sectional_fd(&c, &e_t, &e_x).unwrap()),
                (s.k_tsigma.unwrap(), sectional_fd(&c, &e_t, &e_th).unwrap()),
                (s.k_xsigma, sectional_fd(&c, &e_x, &e_th).unwrap()),
                (s.k_sigmasigma, sectional_fd(&c, &e_th, &e_ph).unwrap()),
            ] {
                assert!(
                    (want - got).abs() <= 1e-5 * want.abs().max(1.0),
                    "{want} vs {got} at ({t}, {x})"
                );
            }
        }
    }
}

/// The neck metric's closed forms against the oracle on the scaled chart
/// (the scale factor rides through the finite differences untouched).
#[test]
fn scaled_neck_chart_matches_oracle() {
    let prof = eta_profile(fixture(), 0.4).unwrap();
    let p = neck_params(&prof, 6.0, 0.2, 0.25).unwrap();
    let w = neck_warp(&p, 1.0);
    let chart = warp_chart(&w, (0.5, std::f64::consts::PI - 0.5)).scaled(7.0);
    let (t, x, th) = (8.0, 0.4, 1.2);
    let c = riemann_ricci_fd(&chart, &[t, x, th, 1.0], 2e-3).unwrap();
    let s = necksectional(&w, t, x).unwrap();
    let (av, bv) = ((w.a)(t, x).v, (w.b)(t, x).v);
    let e_x = [0.0, 1.0 / av, 0.0, 0.0];
    let e_th = [0.0, 0.0, 1.0 / bv, 0.0];
    // Frames renormalize by 1/7, curvature scales by 1/49.
    let got = sectional_fd(&c, &e_x, &e_th).unwrap();
    let want = s.k_xsigma / 49.0;
    assert!(
        (want - got).abs() <= 1e-4 * want.abs().max(1e-8),
        "{want} vs {got}"
    );
}

/// Envelope constants stay finite and the two pointwise sign conditions
/// hold for small eps and delta on the fixture neck.
#[test]
fn asymptotic_envelope_report() {
    let prof = eta_profile(fixture(), 0.4).unwrap();
    let p = neck_params(&prof, 12.0, 0.05, 0.05).unwrap();
    let rep = asymptotic_bound_check(&p, 128, 48).unwrap();
    assert!(rep.pass, "{rep:?}");
    assert!(rep.coefficient_max < 0.0);
    assert!(rep.c_n_ramp_min > 0.0);
    for c in [
        rep.c1_log_derivative,
        rep.c1_eta_derivative,
        rep.c2_log_second,
        rep.c2_eta_second,
        rep.c_u_time,
    ] {
        assert!(c.is_finite() && c > 0.0);
    }
}

/// Rebuilding the fixture's curvature through the renormalized speed
/// profile reproduces the original warped-product values.
#[test]
fn fixture_renormalization_round_trip() {
    let g1 = fixture();
    let prof = eta_profile(g1, 0.4).unwrap();
    let d = g1.diameter();
    for &x in &[-1.3_f64, -0.7, 0.2, 0.8, 1.4] {
        let aj = prof.a1_profile.jet(x).unwrap();
        let r = g1.r;
        let k_x = 1.0 / (aj.v * aj.v) - aj.d1 * x.tan() / (aj.v * aj.v * aj.v);
        let k_s = (1.0 - (r * x.sin() / aj.v).powi(2)) / (r * r * x.cos() * x.cos());
        let target = r * x.cos();
        let (lo, hi) = if x < 0.0 {
            (0.0, 0.5 * d)
        } else {
            (0.5 * d, d)
        };
        let phi = ricci_forge::numeric::bisect(|p| g1.f1.value(p).unwrap() - target, lo, hi, 1e-13);
        let (kx0, ks0) = warped_sectional(&g1.f1, phi).unwrap();
        assert!(
            (k_x - kx0).abs() <= 1e-6 * kx0.abs().max(1.0),
            "{k_x} vs {kx0}"
        );
        assert!(
            (k_s - ks0).abs() <= 1e-6 * ks0.abs().max(1.0),
            "{k_s} vs {ks0}"
        );
    }
}
