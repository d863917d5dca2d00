//! Tensor-product B-surfaces in `R^3`, their directional order elevation
//! and subdivision, exact representation of separable ordinary surfaces,
//! curvature fields and triangle meshes.

mod fields;
mod mesh;
mod surface;

use thiserror::Error;

use crate::bcurve::CurveError;
use crate::ecspace::SpaceError;

pub use fields::{curvature_field, FieldKind, ScalarField, SurfaceGeometry};
pub use mesh::{color_map, tessellate, TriangleMesh};
pub use surface::{
    elevate_order_surface, isoparametric_lines, represent_ordinary_surface, subdivide_surface,
    BSurface, Direction, Point3, SeparableSurfaceSpec, SeparableTerm,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SurfaceError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("control net is {rows}x{cols}, spaces require {expected_rows}x{expected_cols}")]
    NetShape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("coefficient vector of length {actual}, expected {expected}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("degenerate surface point at ({u0}, {u1})")]
    DegeneratePoint { u0: f64, u1: f64 },
    #[error("grid {0}x{1} is too small, need at least 2x2")]
    GridTooSmall(usize, usize),
    #[error("need at least one line with two samples")]
    InvalidLines,
    #[error("unknown field kind '{0}'")]
    UnknownField(String),
}
