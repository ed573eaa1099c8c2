//! Drinfeld center.

pub mod coupling;
pub mod deligne;
pub mod functors;
pub mod half_braiding;
pub mod report;
pub mod transforms;
pub mod tube;

pub use coupling::{coupling_gamma, coupling_morphism, CouplingIdempotent, Image};
pub use deligne::{DelMorphism, DelignePair};
pub use functors::{functor_g, functor_g_morphism, GImage};
pub use half_braiding::{
    average, center_hom_dim, center_morphism_residual, functor_f, functor_f_morphism, gamma_pair,
    verify_center_object, CenterCheck, CenterObject, HalfBraiding,
};
pub use report::{invertibility_report, test_pairs, Defects, FactorizationReport, SamplingPolicy};
pub use transforms::{
    center_side, default_bases, deligne_side, transform_b, transform_d, transform_p, transform_q,
    CenterSide, DeligneSide,
};
pub use tube::{center_simples, tube_algebra, TubeAlgebra, TubeIndex};
