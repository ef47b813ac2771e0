//! Property tests for the algebraic invariants that hold for all inputs,
//! not just the worked examples.

use proptest::prelude::*;

use ricci_forge::glue_assembler::{glue_check, BoundaryData, BoundaryShape, GlueMode};
use ricci_forge::warped_forms::{
    scale_second_fundamental, scale_sectional, SectionalSet, SliceSecondFundamental,
};

fn sectional_strategy() -> impl Strategy<Value = SectionalSet> {
    (
        -10.0..10.0f64,
        -10.0..10.0f64,
        -10.0..10.0f64,
        -10.0..10.0f64,
        -10.0..10.0f64,
    )
        .prop_map(|(a, b, c, d, e)| SectionalSet {
            k_tx: Some(a),
            k_tsigma: Some(b),
            k_xsigma: c,
            k_sigmasigma: d,
            ric_tx: e,
            slice_k_xsigma: c + a * b,
            slice_k_sigmasigma: d + b * b,
        })
}

proptest! {
    /// Composing two rescalings equals rescaling by the product, and the
    /// unit scale is the identity.
    #[test]
    fn scaling_is_multiplicative(s in sectional_strategy(),
                                 k1 in 0.1..4.0f64, k2 in 0.1..4.0f64) {
        let one = scale_sectional(1.0, &s).unwrap();
        prop_assert_eq!(one.k_xsigma, s.k_xsigma);
        let a = scale_sectional(k2, &scale_sectional(k1, &s).unwrap()).unwrap();
        let b = scale_sectional(k1 * k2, &s).unwrap();
        prop_assert!((a.k_xsigma - b.k_xsigma).abs() <= 1e-12 * b.k_xsigma.abs().max(1e-12));
        prop_assert!((a.ric_tx - b.ric_tx).abs() <= 1e-12 * b.ric_tx.abs().max(1e-12));
    }

    #[test]
    fn second_fundamental_scaling_linear(xx in -5.0..5.0f64, ss in -5.0..5.0f64,
                                         k in 0.1..8.0f64) {
        let ii = SliceSecondFundamental { ii_xx: xx, ii_sigma: ss };
        let scaled = scale_second_fundamental(k, &ii).unwrap();
        prop_assert!((scaled.ii_xx * k - xx).abs() <= 1e-12 * xx.abs().max(1e-12));
        prop_assert!((scaled.ii_sigma * k - ss).abs() <= 1e-12 * ss.abs().max(1e-12));
    }

    /// The strict gluing verdict does not depend on the order of the sides.
    #[test]
    fn strict_glue_symmetric(radius in 0.05..2.0f64,
                             ii1 in prop::collection::vec(-3.0..3.0f64, 4),
                             ii2 in prop::collection::vec(-3.0..3.0f64, 4)) {
        let b1 = BoundaryData {
            shape: BoundaryShape::Round { radius },
            principal_curvatures: ii1,
            dim: 4,
        };
        let b2 = BoundaryData {
            shape: BoundaryShape::Round { radius },
            principal_curvatures: ii2,
            dim: 4,
        };
        let r12 = glue_check(&b1, &b2, GlueMode::Strict).unwrap();
        let r21 = glue_check(&b2, &b1, GlueMode::Strict).unwrap();
        prop_assert_eq!(r12.pass, r21.pass);
        prop_assert!((r12.min_sum - r21.min_sum).abs() <= 1e-15);
    }
}
