//! Numerical verification toolkit for explicit Ricci-positive metric
//! constructions: closed-form curvature kernels for warped products and
//! doubly warped Riemannian submersions, a finite-difference curvature
//! oracle to certify them against, and the gluing/scaling arithmetic that
//! assembles core metrics, necks, and docking stations.

pub mod chart_calculus;
pub mod core_verifier;
pub mod exec;
pub mod glue_assembler;
pub mod neck_builder;
pub mod numeric;
pub mod profile;
pub mod submersion_ricci;
pub mod warped_forms;
