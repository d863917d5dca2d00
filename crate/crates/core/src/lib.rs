//! Curve and surface modeling with normalized B-bases of extended Chebyshev
//! spaces spanned by solutions of constant-coefficient linear ODEs.
//!
//! The crate is layered bottom-up:
//!
//! * [`numkernel`] small dense linear algebra and condition numbers,
//! * [`ecspace`] characteristic polynomials, ordinary and normalized B-bases,
//!   basis transformation and critical lengths,
//! * [`bcurve`] B-curves with subdivision, order elevation and interpolation,
//! * [`bsurface`] tensor-product B-surfaces, curvature fields and meshes.

pub mod bcurve;
pub mod bsurface;
pub mod ecspace;
pub mod numkernel;

pub use bcurve::{BCurve, CurveError, InterpolationProblem, SampledCurve};
pub use bsurface::{
    BSurface, Direction, FieldKind, ScalarField, SeparableSurfaceSpec, SurfaceError, TriangleMesh,
};
pub use ecspace::{
    CharacteristicPolynomial, CharacteristicZero, EcSpace, OrdinaryBasisFunction, Phase,
    SpaceError, SpaceOptions, TransformationMatrix,
};
pub use numkernel::{ConditionReport, DenseMatrix, LuFactors, NumError};
